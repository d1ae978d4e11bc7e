#pragma once

#include "diffkit/diffpoly.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace diffkit {

/// Parsed expression, independent of any field. Grammar:
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := '-' unary | power
///   power   := primary ('^' '-'? integer)?
///   primary := integer | name | 'd'k '(' expr ')' | 'D[' k,..,k '](' expr ')' | '(' expr ')'
/// Names are `x<i>` (differential indeterminates) and field generators such
/// as `u<j>` or tower variables `t<k>`.
struct Expr {
  enum class Kind { Number, Name, Var, Deriv, Neg, Add, Sub, Mul, Div, Pow };
  Kind kind = Kind::Number;
  Rational value;                    // Number
  std::string name;                  // Name
  unsigned var = 0;                  // Var, 1-based
  std::size_t k = 0;                 // Deriv d<k> (1-based); 0 for the D[..] form
  std::vector<unsigned> derivation;  // Deriv D[..] exponents
  long exponent = 0;                 // Pow
  std::shared_ptr<const Expr> a, b;
  std::size_t line = 1, column = 1;
};
using ExprPtr = std::shared_ptr<const Expr>;

/// Throws SyntaxError with the 1-based line and column of the offending token.
ExprPtr parse_expr(std::string_view text);

/// Largest i with x_i in the expression (0 if none).
unsigned max_variable(const Expr& e);

/// Evaluates in a field; x_i is rejected. Throws ArityError for a derivation
/// index above m and UndefinedGenerator for unknown names.
DiffScalar to_scalar(const Expr& e, const CtxPtr& ctx);
/// Division is allowed by constants only. Throws ArityError for x_i with i > n.
DiffPoly to_diffpoly(const Expr& e, const CtxPtr& ctx, unsigned n);

DiffScalar parse_scalar(std::string_view text, const CtxPtr& ctx);
DiffPoly parse_diffpoly(std::string_view text, const CtxPtr& ctx, unsigned n);

/// A single derivative symbol such as `x2`, `d1(x1)`, `d1(d2(x1))`, `D[2,1](x3)`.
RankedVar parse_symbol(std::string_view text, std::size_t m, unsigned n);

/// Splits on ';' and newlines at parenthesis depth zero, dropping blanks.
std::vector<std::string> split_list(std::string_view text);

}  // namespace diffkit

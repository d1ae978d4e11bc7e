#include "diffkit/parse.hpp"

#include "diffkit/errors.hpp"

#include <cctype>

namespace diffkit {

namespace {

class Parser {
public:
  explicit Parser(std::string_view text) : s_(text) {}

  ExprPtr parse() {
    skip();
    if (at_end()) fail("empty expression");
    ExprPtr e = expr();
    skip();
    if (!at_end()) fail(std::string("unexpected '") + s_[pos_] + "'");
    return e;
  }

private:
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, line_, col_); }

  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }

  void advance() {
    if (s_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }

  bool accept(char c) {
    skip();
    if (peek() != c) return false;
    advance();
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  std::shared_ptr<Expr> node(Expr::Kind kind) {
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->line = line_;
    e->column = col_;
    return e;
  }

  std::shared_ptr<Expr> binary(Expr::Kind kind, ExprPtr a, ExprPtr b, std::size_t line, std::size_t col) {
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->a = std::move(a);
    e->b = std::move(b);
    e->line = line;
    e->column = col;
    return e;
  }

  Integer integer() {
    skip();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an integer");
    std::string digits;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      digits += peek();
      advance();
    }
    return Integer(digits);
  }

  unsigned small_integer() {
    const std::size_t line = line_, col = col_;
    Integer v = integer();
    if (!v.fits_uint_p() || v.get_ui() > 1000000u) throw SyntaxError("integer too large here", line, col);
    return static_cast<unsigned>(v.get_ui());
  }

  ExprPtr expr() {
    ExprPtr lhs = term();
    for (;;) {
      skip();
      const std::size_t line = line_, col = col_;
      if (accept('+')) lhs = binary(Expr::Kind::Add, lhs, term(), line, col);
      else if (accept('-')) lhs = binary(Expr::Kind::Sub, lhs, term(), line, col);
      else return lhs;
    }
  }

  ExprPtr term() {
    ExprPtr lhs = unary();
    for (;;) {
      skip();
      const std::size_t line = line_, col = col_;
      if (accept('*')) lhs = binary(Expr::Kind::Mul, lhs, unary(), line, col);
      else if (accept('/')) lhs = binary(Expr::Kind::Div, lhs, unary(), line, col);
      else return lhs;
    }
  }

  ExprPtr unary() {
    skip();
    if (peek() == '-') {
      auto e = node(Expr::Kind::Neg);
      advance();
      e->a = unary();
      return e;
    }
    return power();
  }

  ExprPtr power() {
    ExprPtr base = primary();
    skip();
    if (peek() != '^') return base;
    auto e = node(Expr::Kind::Pow);
    advance();
    skip();
    bool negative = false;
    if (peek() == '-') {
      negative = true;
      advance();
    }
    e->exponent = static_cast<long>(small_integer()) * (negative ? -1 : 1);
    e->a = std::move(base);
    return e;
  }

  ExprPtr primary() {
    skip();
    if (at_end()) fail("unexpected end of input");
    const char c = peek();
    if (c == '(') {
      advance();
      ExprPtr e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      auto e = node(Expr::Kind::Number);
      e->value = Rational(integer());
      return e;
    }
    if (c == 'D') {
      auto e = node(Expr::Kind::Deriv);
      advance();
      expect('[');
      do e->derivation.push_back(small_integer());
      while (accept(','));
      expect(']');
      expect('(');
      e->a = expr();
      expect(')');
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      auto e = node(Expr::Kind::Name);
      std::string letters;
      while (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_') {
        letters += peek();
        advance();
      }
      std::string digits;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        digits += peek();
        advance();
      }
      if (letters == "d" && !digits.empty()) {
        skip();
        if (peek() != '(') fail("expected '(' after d" + digits);
        advance();
        e->kind = Expr::Kind::Deriv;
        e->k = std::stoul(digits);
        if (e->k == 0) throw SyntaxError("derivations are numbered from 1", e->line, e->column);
        e->a = expr();
        expect(')');
        return e;
      }
      if (letters == "x" && !digits.empty()) {
        e->kind = Expr::Kind::Var;
        if (digits.size() > 6 || std::stoul(digits) == 0)
          throw SyntaxError("bad variable index x" + digits, e->line, e->column);
        e->var = static_cast<unsigned>(std::stoul(digits));
        return e;
      }
      e->name = letters + digits;
      return e;
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0, line_ = 1, col_ = 1;
};

std::string where(const Expr& e) {
  return " at line " + std::to_string(e.line) + ", column " + std::to_string(e.column);
}

MultiIndex derivation_of(const Expr& e, std::size_t m) {
  if (e.k) {
    if (e.k > m)
      throw Error(ErrorKind::ArityError, "d" + std::to_string(e.k) + " used with m = " + std::to_string(m) + where(e));
    return MultiIndex::unit(m, e.k - 1);
  }
  if (e.derivation.size() != m)
    throw Error(ErrorKind::ArityError, "D[..] has " + std::to_string(e.derivation.size()) + " entries, m = " +
                                           std::to_string(m) + where(e));
  return MultiIndex(e.derivation);
}

DiffScalar generator_value(const Expr& e, const CtxPtr& ctx) {
  if (auto g = ctx->generator(e.name)) return *g;
  throw Error(ErrorKind::UndefinedGenerator, "unknown name '" + e.name + "' in " + ctx->describe() + where(e));
}

template <class T>
T derive_by(const T& value, const MultiIndex& xi) {
  T out = value;
  for (std::size_t k = 0; k < xi.size(); ++k)
    for (unsigned j = 0; j < xi[k]; ++j) out = out.derive(k);
  return out;
}

}  // namespace

ExprPtr parse_expr(std::string_view text) { return Parser(text).parse(); }

unsigned max_variable(const Expr& e) {
  unsigned best = e.kind == Expr::Kind::Var ? e.var : 0;
  if (e.a) best = std::max(best, max_variable(*e.a));
  if (e.b) best = std::max(best, max_variable(*e.b));
  return best;
}

DiffScalar to_scalar(const Expr& e, const CtxPtr& ctx) {
  switch (e.kind) {
    case Expr::Kind::Number: return ctx->constant(e.value);
    case Expr::Kind::Name: return generator_value(e, ctx);
    case Expr::Kind::Var:
      throw Error(ErrorKind::Usage, "x" + std::to_string(e.var) + " is not a scalar" + where(e));
    case Expr::Kind::Deriv: return derive_by(to_scalar(*e.a, ctx), derivation_of(e, ctx->m()));
    case Expr::Kind::Neg: return -to_scalar(*e.a, ctx);
    case Expr::Kind::Add: return to_scalar(*e.a, ctx) + to_scalar(*e.b, ctx);
    case Expr::Kind::Sub: return to_scalar(*e.a, ctx) - to_scalar(*e.b, ctx);
    case Expr::Kind::Mul: return to_scalar(*e.a, ctx) * to_scalar(*e.b, ctx);
    case Expr::Kind::Div: {
      DiffScalar d = to_scalar(*e.b, ctx);
      if (d.zero_test() == ZeroTest::Zero) throw Error(ErrorKind::DivisionByZero, "division by zero" + where(e));
      return to_scalar(*e.a, ctx) / d;
    }
    case Expr::Kind::Pow: return to_scalar(*e.a, ctx).pow(e.exponent);
  }
  throw Error(ErrorKind::Usage, "malformed expression");
}

DiffPoly to_diffpoly(const Expr& e, const CtxPtr& ctx, unsigned n) {
  switch (e.kind) {
    case Expr::Kind::Number: return DiffPoly::constant(ctx, n, e.value);
    case Expr::Kind::Name: return DiffPoly::constant(ctx, n, generator_value(e, ctx));
    case Expr::Kind::Var:
      if (e.var > n)
        throw Error(ErrorKind::ArityError, "x" + std::to_string(e.var) + " used with n = " + std::to_string(n) +
                                               where(e));
      return DiffPoly::var(ctx, n, RankedVar(MultiIndex(ctx->m()), e.var));
    case Expr::Kind::Deriv: return to_diffpoly(*e.a, ctx, n).derive(derivation_of(e, ctx->m()));
    case Expr::Kind::Neg: return -to_diffpoly(*e.a, ctx, n);
    case Expr::Kind::Add: return to_diffpoly(*e.a, ctx, n) + to_diffpoly(*e.b, ctx, n);
    case Expr::Kind::Sub: return to_diffpoly(*e.a, ctx, n) - to_diffpoly(*e.b, ctx, n);
    case Expr::Kind::Mul: return to_diffpoly(*e.a, ctx, n) * to_diffpoly(*e.b, ctx, n);
    case Expr::Kind::Div: {
      const DiffPoly d = to_diffpoly(*e.b, ctx, n);
      if (!d.is_constant() || d.is_zero())
        throw SyntaxError(d.is_zero() ? "division by zero" : "division by a non-constant polynomial", e.line,
                          e.column);
      return to_diffpoly(*e.a, ctx, n) * d.constant_term().inverse();
    }
    case Expr::Kind::Pow: {
      const DiffPoly base = to_diffpoly(*e.a, ctx, n);
      if (e.exponent >= 0) return base.pow(static_cast<unsigned>(e.exponent));
      // Negative powers are fine on nonzero coefficients.
      if (!base.is_constant() || base.is_zero())
        throw SyntaxError("negative power of a non-constant polynomial", e.line, e.column);
      return DiffPoly::constant(ctx, n, base.constant_term().pow(e.exponent));
    }
  }
  throw Error(ErrorKind::Usage, "malformed expression");
}

DiffScalar parse_scalar(std::string_view text, const CtxPtr& ctx) { return to_scalar(*parse_expr(text), ctx); }

DiffPoly parse_diffpoly(std::string_view text, const CtxPtr& ctx, unsigned n) {
  return to_diffpoly(*parse_expr(text), ctx, n);
}

RankedVar parse_symbol(std::string_view text, std::size_t m, unsigned n) {
  ExprPtr e = parse_expr(text);
  MultiIndex xi(m);
  const Expr* cur = e.get();
  while (cur->kind == Expr::Kind::Deriv) {
    xi = xi + derivation_of(*cur, m);
    cur = cur->a.get();
  }
  if (cur->kind != Expr::Kind::Var)
    throw SyntaxError("expected a derivative symbol like d1(x1)", cur->line, cur->column);
  if (cur->var > n)
    throw Error(ErrorKind::ArityError, "x" + std::to_string(cur->var) + " used with n = " + std::to_string(n) +
                                           where(*cur));
  return RankedVar(xi, cur->var);
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  auto flush = [&] {
    const auto b = cur.find_first_not_of(" \t\r\n");
    if (b != std::string::npos) out.push_back(cur.substr(b, cur.find_last_not_of(" \t\r\n") - b + 1));
    cur.clear();
  };
  for (char c : text) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (depth == 0 && (c == ';' || c == '\n')) flush();
    else cur += c;
  }
  flush();
  return out;
}

}  // namespace diffkit

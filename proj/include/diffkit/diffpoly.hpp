#pragma once

#include "diffkit/mindex.hpp"
#include "diffkit/scalars.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace diffkit {

/// Power product of derivative symbols, factors sorted descending by the
/// orderly ranking, exponents positive.
struct Monomial {
  std::vector<std::pair<RankedVar, unsigned>> factors;

  bool is_one() const noexcept { return factors.empty(); }
  unsigned degree_in(const RankedVar& v) const;
  Monomial operator*(const Monomial& o) const;
  bool operator==(const Monomial&) const = default;
};

/// Pure lex on factors with variables ordered by the orderly ranking. The
/// leading term therefore carries the leader.
struct MonomialGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

struct VarGreater {
  bool operator()(const RankedVar& a, const RankedVar& b) const { return orderly_cmp(a, b) > 0; }
};
using VarSet = std::set<RankedVar, VarGreater>;

/// Element of K{x_1..x_n}: sparse map from monomials to nonzero coefficients,
/// iterated leading term first.
class DiffPoly {
public:
  using Terms = std::map<Monomial, DiffScalar, MonomialGreater>;

  DiffPoly() = default;
  /// Zero. Tower contexts must have opted into to-precision semantics.
  DiffPoly(CtxPtr ctx, unsigned n);

  static DiffPoly constant(CtxPtr ctx, unsigned n, const DiffScalar& c);
  static DiffPoly constant(CtxPtr ctx, unsigned n, const Rational& c);
  static DiffPoly var(CtxPtr ctx, unsigned n, const RankedVar& v, unsigned exponent = 1);

  const CtxPtr& ctx() const noexcept { return ctx_; }
  unsigned n() const noexcept { return n_; }
  std::size_t m() const noexcept { return ctx_->m(); }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  /// The coefficient of the empty monomial.
  DiffScalar constant_term() const;

  /// max |xi| over the symbols present; -1 for nonzero constants. Throws
  /// ConstantPolynomial on zero, whose order is undefined.
  int order() const;
  VarSet variables() const;
  unsigned degree_in(const RankedVar& v) const;
  /// Coefficient of v^k when *this is read as a polynomial in v.
  DiffPoly coeff_in(const RankedVar& v, unsigned k) const;
  /// Formal partial derivative with respect to the symbol v.
  DiffPoly partial(const RankedVar& v) const;

  DiffPoly operator-() const;
  DiffPoly operator+(const DiffPoly& o) const;
  DiffPoly operator-(const DiffPoly& o) const;
  DiffPoly operator*(const DiffPoly& o) const;
  DiffPoly operator*(const DiffScalar& c) const;
  DiffPoly& operator+=(const DiffPoly& o);
  DiffPoly& operator-=(const DiffPoly& o) { return *this += -o; }
  DiffPoly& operator*=(const DiffPoly& o) { return *this = *this * o; }
  DiffPoly pow(unsigned k) const;
  void add_term(const Monomial& mono, const DiffScalar& c);

  /// delta_k (0-based): Leibniz on products, ctx.derive on coefficients,
  /// delta_k(delta^xi x_i) = delta^{xi+e_k} x_i.
  DiffPoly derive(std::size_t k) const;
  /// delta^xi applied to *this.
  DiffPoly derive(const MultiIndex& xi) const;

  /// Substitutes each symbol and coefficient; T needs + and *.
  template <class T, class VarFn, class CoefFn>
  T evaluate(VarFn&& var, CoefFn&& coef, T zero) const {
    T acc = zero;
    for (const auto& [mono, c] : terms_) {
      T prod = coef(c);
      for (const auto& [v, e] : mono.factors) {
        T x = var(v);
        for (unsigned k = 0; k < e; ++k) prod = prod * x;
      }
      acc = acc + prod;
    }
    return acc;
  }

  /// Replaces symbols by polynomials.
  DiffPoly substitute(const std::map<RankedVar, DiffPoly, VarGreater>& images) const;

  bool operator==(const DiffPoly& o) const;

  /// Terms leading first, factors of a monomial ascending: `x1*d1(x1) - 1`.
  std::string to_string() const;

private:
  void check_compatible(const DiffPoly& o) const;
  CtxPtr ctx_;
  unsigned n_ = 0;
  Terms terms_;
};

/// Leader, degree, separant and initial of a nonconstant differential polynomial.
struct Anatomy {
  RankedVar leader;
  unsigned degree = 0;
  DiffPoly separant;
  DiffPoly initial;
};

/// Throws ConstantPolynomial when f has no symbol.
Anatomy anatomy(const DiffPoly& f);
RankedVar leader(const DiffPoly& f);

/// (leader, degree) with the zero/constant polynomials below everything;
/// negative, zero, positive like strcmp.
int compare_rank(const DiffPoly& a, const DiffPoly& b);

/// No proper derivative of v_f occurs in g.
bool is_weakly_reduced(const DiffPoly& g, const DiffPoly& f);
/// Weakly reduced and deg_{v_f}(g) < d_f.
bool is_reduced(const DiffPoly& g, const DiffPoly& f);

/// Printed form of a scalar used as a coefficient in front of a monomial.
std::string coefficient_text(const DiffScalar& c, bool leading, bool bare);

}  // namespace diffkit

#pragma once

#include "diffkit/mindex.hpp"
#include "diffkit/scalars.hpp"

#include <map>
#include <string>
#include <vector>

namespace diffkit {

/// Truncated power series in t_1..t_k over a differential field B.
///
/// Coefficients are known for |alpha| <= precision() <= truncation(). An exact
/// series is a polynomial whose every coefficient (including beyond the
/// truncation) is known; arithmetic that drops terms clears the flag.
class TruncSeries {
public:
  using Coeffs = std::map<MultiIndex, DiffScalar, GradedLess>;

  TruncSeries() = default;
  /// The zero series (exact).
  TruncSeries(CtxPtr ctx, std::size_t nvars, unsigned truncation);

  static TruncSeries constant(CtxPtr ctx, std::size_t nvars, unsigned truncation, const DiffScalar& c);
  static TruncSeries variable(CtxPtr ctx, std::size_t nvars, unsigned truncation, std::size_t k);
  static TruncSeries monomial(CtxPtr ctx, std::size_t nvars, unsigned truncation, const MultiIndex& alpha,
                              const DiffScalar& c);
  /// Entries with |alpha| > precision are dropped; zeros are dropped.
  static TruncSeries from_coeffs(CtxPtr ctx, std::size_t nvars, unsigned truncation, Coeffs coeffs,
                                 int precision, bool exact);

  const CtxPtr& ctx() const noexcept { return ctx_; }
  std::size_t nvars() const noexcept { return nvars_; }
  unsigned truncation() const noexcept { return truncation_; }
  /// -1 when no coefficient is known.
  int precision() const noexcept { return precision_; }
  bool exact() const noexcept { return exact_; }
  const Coeffs& coeffs() const noexcept { return coeffs_; }
  DiffScalar coeff(const MultiIndex& alpha) const;
  DiffScalar ev0() const;

  ZeroTest zero_test() const;
  /// Agreement up to the shared precision.
  Comparison compare(const TruncSeries& o) const;
  /// Like compare, but only up to total degree `upto`.
  bool agrees_to(const TruncSeries& o, int upto) const;

  TruncSeries operator-() const;
  TruncSeries operator+(const TruncSeries& o) const;
  TruncSeries operator-(const TruncSeries& o) const;
  TruncSeries operator*(const TruncSeries& o) const;
  TruncSeries operator*(const DiffScalar& c) const;
  TruncSeries& operator+=(const TruncSeries& o) { return *this = *this + o; }
  TruncSeries& operator*=(const TruncSeries& o) { return *this = *this * o; }
  TruncSeries pow(unsigned k) const;
  /// Throws NotAUnit if the constant coefficient is zero, PrecisionLoss if it
  /// is only zero to precision.
  TruncSeries invert() const;

  /// d/dt_{i+1}.
  TruncSeries ddt(std::size_t i) const;
  /// delta_i of `family` (defaults to the series context) on each coefficient.
  TruncSeries coeff_delta(std::size_t i) const;
  TruncSeries coeff_delta(std::size_t i, const DiffFieldCtx& family) const;
  TruncSeries combined_delta(std::size_t i) const;
  TruncSeries combined_delta(std::size_t i, const DiffFieldCtx& family) const;

  /// Multiplication by t^gamma and its exact inverse (every stored index must
  /// dominate gamma).
  TruncSeries shift_up(const MultiIndex& gamma) const;
  TruncSeries shift_down(const MultiIndex& gamma) const;
  /// Lower precision to `p`, dropping coefficients above it.
  TruncSeries truncated(int p) const;
  /// Same coefficients, viewed in another context over the same field.
  TruncSeries in(const CtxPtr& target) const;

  /// Canonical form, terms by (|alpha|, lex alpha): `1 + 1*t1 + 1/2*t1^2`.
  std::string to_string(const std::vector<std::string>& names = {}) const;

private:
  void require_compatible(const TruncSeries& o) const;
  CtxPtr ctx_;
  std::size_t nvars_ = 0;
  unsigned truncation_ = 0;
  int precision_ = 0;
  bool exact_ = true;
  Coeffs coeffs_;
};

/// Payload of a tower scalar: num / (t^shift * den), all over the base level.
/// After normalization den is 1 whenever the denominator is a monomial times a
/// unit; otherwise the fraction is kept formally.
struct SeriesFraction {
  TruncSeries num;
  TruncSeries den;
  MultiIndex shift;
};

}  // namespace diffkit

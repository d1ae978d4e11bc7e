#pragma once

#include "diffkit/diffpoly.hpp"
#include "diffkit/series.hpp"

#include <optional>
#include <string>
#include <vector>

namespace diffkit {

/// Square matrix over a differential field, row-major.
class MatrixK {
public:
  MatrixK() = default;
  MatrixK(CtxPtr ctx, std::size_t n);  // zero
  MatrixK(CtxPtr ctx, std::vector<std::vector<DiffScalar>> rows);
  static MatrixK identity(CtxPtr ctx, std::size_t n);

  const CtxPtr& ctx() const noexcept { return ctx_; }
  std::size_t size() const noexcept { return n_; }
  const DiffScalar& operator()(std::size_t r, std::size_t c) const { return e_[r * n_ + c]; }
  DiffScalar& operator()(std::size_t r, std::size_t c) { return e_[r * n_ + c]; }

  MatrixK operator+(const MatrixK& o) const;
  MatrixK operator-(const MatrixK& o) const;
  MatrixK operator*(const MatrixK& o) const;
  MatrixK operator*(const Rational& q) const;
  /// delta_i entrywise (0-based i).
  MatrixK derive(std::size_t i) const;
  bool is_zero() const;
  bool operator==(const MatrixK& o) const { return (*this - o).is_zero(); }
  /// `[[a, b], [c, d]]`.
  std::string to_string() const;

private:
  void check_same(const MatrixK& o) const;
  CtxPtr ctx_;
  std::size_t n_ = 0;
  std::vector<DiffScalar> e_;
};

struct IntegrabilityViolation {
  std::size_t i = 0, j = 0;  // 1-based, i < j
  MatrixK residual;         // delta_i A_j - delta_j A_i - [A_i, A_j]
};

/// First pair i < j whose residual is nonzero. Throws DimensionMismatch when
/// the system does not have one matrix per derivation of a common size.
std::optional<IntegrabilityViolation> integrability_check(const std::vector<MatrixK>& A);

using SeriesMatrix = std::vector<std::vector<TruncSeries>>;

/// Z with Z(0) = I and (delta_i + d/dt_i) Z = A_i Z to precision N - 1, from
/// Z_{alpha+e_i} = (A_i Z_alpha - delta_i Z_alpha) / (alpha_i + 1). Every
/// admissible last step is compared; IntegrabilityError on disagreement or
/// when integrability_check fails.
SeriesMatrix pv_fundamental_solution(const std::vector<MatrixK>& A, unsigned N);

/// (delta_i + d/dt_i) Z - A_i Z.
SeriesMatrix pv_residual(const std::vector<MatrixK>& A, const SeriesMatrix& Z, std::size_t i);

/// Determinant by cofactor expansion over the series ring.
TruncSeries determinant(const SeriesMatrix& Z);

/// Zero test of each inequation Q evaluated at a series point; a point
/// respects Q != 0 when its entry is NonZero.
std::vector<ZeroTest> inequation_check(const std::vector<DiffPoly>& Q, const std::vector<TruncSeries>& point);

}  // namespace diffkit

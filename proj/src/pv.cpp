#include "diffkit/pv.hpp"

#include "diffkit/errors.hpp"
#include "diffkit/taylor.hpp"

#include <map>

namespace diffkit {

MatrixK::MatrixK(CtxPtr ctx, std::size_t n) : ctx_(std::move(ctx)), n_(n), e_(n * n, ctx_->zero()) {}

MatrixK::MatrixK(CtxPtr ctx, std::vector<std::vector<DiffScalar>> rows) : ctx_(std::move(ctx)), n_(rows.size()) {
  e_.reserve(n_ * n_);
  for (const auto& row : rows) {
    if (row.size() != n_) throw Error(ErrorKind::DimensionMismatch, "matrix must be square");
    for (const auto& x : row) e_.push_back(ctx_->embed(x));
  }
}

MatrixK MatrixK::identity(CtxPtr ctx, std::size_t n) {
  MatrixK out(std::move(ctx), n);
  for (std::size_t k = 0; k < n; ++k) out(k, k) = out.ctx_->one();
  return out;
}

void MatrixK::check_same(const MatrixK& o) const {
  if (n_ != o.n_) throw Error(ErrorKind::DimensionMismatch, "matrix sizes differ");
}

MatrixK MatrixK::operator+(const MatrixK& o) const {
  check_same(o);
  MatrixK out(*this);
  for (std::size_t k = 0; k < e_.size(); ++k) out.e_[k] = e_[k] + o.e_[k];
  return out;
}

MatrixK MatrixK::operator-(const MatrixK& o) const {
  check_same(o);
  MatrixK out(*this);
  for (std::size_t k = 0; k < e_.size(); ++k) out.e_[k] = e_[k] - o.e_[k];
  return out;
}

MatrixK MatrixK::operator*(const MatrixK& o) const {
  check_same(o);
  MatrixK out(ctx_, n_);
  for (std::size_t r = 0; r < n_; ++r)
    for (std::size_t c = 0; c < n_; ++c) {
      DiffScalar acc = ctx_->zero();
      for (std::size_t k = 0; k < n_; ++k) acc += (*this)(r, k) * o(k, c);
      out(r, c) = acc;
    }
  return out;
}

MatrixK MatrixK::operator*(const Rational& q) const {
  MatrixK out(*this);
  for (auto& x : out.e_) x = x * q;
  return out;
}

MatrixK MatrixK::derive(std::size_t i) const {
  MatrixK out(*this);
  for (auto& x : out.e_) x = x.derive(i);
  return out;
}

bool MatrixK::is_zero() const {
  for (const auto& x : e_)
    if (x.zero_test() != ZeroTest::Zero) return false;
  return true;
}

std::string MatrixK::to_string() const {
  std::string out = "[";
  for (std::size_t r = 0; r < n_; ++r) {
    out += r ? ", [" : "[";
    for (std::size_t c = 0; c < n_; ++c) out += (c ? ", " : "") + (*this)(r, c).to_string();
    out += "]";
  }
  return out + "]";
}

namespace {

void check_system(const std::vector<MatrixK>& A) {
  if (A.empty()) throw Error(ErrorKind::DimensionMismatch, "a linear system needs at least one matrix");
  const std::size_t m = A.front().ctx()->m();
  if (A.size() != m)
    throw Error(ErrorKind::DimensionMismatch, "expected " + std::to_string(m) + " matrices, one per derivation");
  for (const auto& a : A)
    if (a.size() != A.front().size() || a.size() == 0)
      throw Error(ErrorKind::DimensionMismatch, "system matrices must share one nonzero size");
}

}  // namespace

std::optional<IntegrabilityViolation> integrability_check(const std::vector<MatrixK>& A) {
  check_system(A);
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = i + 1; j < A.size(); ++j) {
      MatrixK res = A[j].derive(i) - A[i].derive(j) - (A[i] * A[j] - A[j] * A[i]);
      if (!res.is_zero()) return IntegrabilityViolation{i + 1, j + 1, std::move(res)};
    }
  return std::nullopt;
}

SeriesMatrix pv_fundamental_solution(const std::vector<MatrixK>& A, unsigned N) {
  if (auto v = integrability_check(A))
    throw Error(ErrorKind::IntegrabilityError, "integrability fails for (" + std::to_string(v->i) + "," +
                                                   std::to_string(v->j) + "): residual " + v->residual.to_string());
  const CtxPtr& K = A.front().ctx();
  const std::size_t m = K->m();
  const std::size_t n = A.front().size();

  std::map<MultiIndex, MatrixK, GradedLess> Z;
  for (const auto& alpha : indices_up_to(m, N)) {
    if (alpha.is_zero()) {
      Z.emplace(alpha, MatrixK::identity(K, n));
      continue;
    }
    std::optional<MatrixK> value;
    for (std::size_t i = 0; i < m; ++i) {
      if (alpha[i] == 0) continue;
      const MultiIndex beta = alpha - MultiIndex::unit(m, i);
      const MatrixK& zb = Z.at(beta);
      MatrixK cand = (A[i] * zb - zb.derive(i)) * Rational(1, beta[i] + 1);
      if (!value) value = std::move(cand);
      else if (!(*value == cand))
        throw Error(ErrorKind::IntegrabilityError, "coefficient paths disagree at t^" + to_string(RankedVar(alpha, 1)));
    }
    Z.emplace(alpha, std::move(*value));
  }

  SeriesMatrix out(n, std::vector<TruncSeries>(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      TruncSeries::Coeffs coeffs;
      for (const auto& [alpha, zm] : Z) coeffs.emplace(alpha, zm(r, c));
      out[r][c] = TruncSeries::from_coeffs(K, m, N, std::move(coeffs), static_cast<int>(N), false);
    }
  return out;
}

SeriesMatrix pv_residual(const std::vector<MatrixK>& A, const SeriesMatrix& Z, std::size_t i) {
  const std::size_t n = Z.size();
  const TruncSeries& z00 = Z.at(0).at(0);
  SeriesMatrix out(n, std::vector<TruncSeries>(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      TruncSeries acc = Z[r][c].combined_delta(i);
      for (std::size_t k = 0; k < n; ++k)
        acc = acc - TruncSeries::constant(z00.ctx(), z00.nvars(), z00.truncation(), A.at(i)(r, k)) * Z[k][c];
      out[r][c] = acc;
    }
  return out;
}

TruncSeries determinant(const SeriesMatrix& Z) {
  const std::size_t n = Z.size();
  if (n == 1) return Z[0][0];
  const TruncSeries& z00 = Z.at(0).at(0);
  TruncSeries acc(z00.ctx(), z00.nvars(), z00.truncation());
  for (std::size_t c = 0; c < n; ++c) {
    SeriesMatrix minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<TruncSeries> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(Z[r][k]);
      minor.push_back(std::move(row));
    }
    TruncSeries term = Z[0][c] * determinant(minor);
    acc = c % 2 ? acc - term : acc + term;
  }
  return acc;
}

std::vector<ZeroTest> inequation_check(const std::vector<DiffPoly>& Q, const std::vector<TruncSeries>& point) {
  std::vector<ZeroTest> out;
  for (const auto& q : Q) out.push_back(substitute_series(q, point).zero_test());
  return out;
}

}  // namespace diffkit

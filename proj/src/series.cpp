#include "diffkit/series.hpp"

#include "diffkit/errors.hpp"

#include <algorithm>
#include <limits>

namespace diffkit {

namespace {

constexpr int kInfinite = std::numeric_limits<int>::max() / 4;

int effective(const TruncSeries& f) { return f.exact() ? kInfinite : f.precision(); }

// Lowest total degree of a stored coefficient; an empty series is zero as far
// as it is known.
int valuation(const TruncSeries& f) {
  if (f.coeffs().empty()) return f.exact() ? kInfinite : f.precision() + 1;
  return static_cast<int>(f.coeffs().begin()->first.order());
}

void put(TruncSeries::Coeffs& out, const MultiIndex& a, DiffScalar c) {
  auto it = out.find(a);
  if (it == out.end()) {
    if (c.zero_test() != ZeroTest::Zero) out.emplace(a, std::move(c));
    return;
  }
  it->second += c;
  if (it->second.zero_test() == ZeroTest::Zero) out.erase(it);
}

}  // namespace

TruncSeries::TruncSeries(CtxPtr ctx, std::size_t nvars, unsigned truncation)
    : ctx_(std::move(ctx)), nvars_(nvars), truncation_(truncation),
      precision_(static_cast<int>(truncation)), exact_(true) {
  if (!ctx_) throw Error(ErrorKind::Usage, "series without a coefficient context");
}

TruncSeries TruncSeries::constant(CtxPtr ctx, std::size_t nvars, unsigned truncation, const DiffScalar& c) {
  return monomial(std::move(ctx), nvars, truncation, MultiIndex(nvars), c);
}

TruncSeries TruncSeries::variable(CtxPtr ctx, std::size_t nvars, unsigned truncation, std::size_t k) {
  auto one = ctx->one();
  return monomial(std::move(ctx), nvars, truncation, MultiIndex::unit(nvars, k), one);
}

TruncSeries TruncSeries::monomial(CtxPtr ctx, std::size_t nvars, unsigned truncation, const MultiIndex& alpha,
                                  const DiffScalar& c) {
  if (alpha.size() != nvars) throw Error(ErrorKind::DimensionMismatch, "monomial index has wrong length");
  TruncSeries out(ctx, nvars, truncation);
  if (alpha.order() > truncation) {
    out.exact_ = false;
    return out;
  }
  DiffScalar v = ctx->embed(c);
  if (v.zero_test() != ZeroTest::Zero) out.coeffs_.emplace(alpha, std::move(v));
  return out;
}

TruncSeries TruncSeries::from_coeffs(CtxPtr ctx, std::size_t nvars, unsigned truncation, Coeffs coeffs,
                                     int precision, bool exact) {
  TruncSeries out(std::move(ctx), nvars, truncation);
  out.precision_ = std::min(precision, static_cast<int>(truncation));
  out.exact_ = exact;
  for (auto& [a, c] : coeffs) {
    if (a.size() != nvars) throw Error(ErrorKind::DimensionMismatch, "series index has wrong length");
    if (static_cast<int>(a.order()) > out.precision_) {
      if (c.zero_test() != ZeroTest::Zero) out.exact_ = false;
      continue;
    }
    if (c.zero_test() != ZeroTest::Zero) out.coeffs_.emplace(a, std::move(c));
  }
  if (out.exact_) out.precision_ = static_cast<int>(truncation);
  return out;
}

DiffScalar TruncSeries::coeff(const MultiIndex& alpha) const {
  auto it = coeffs_.find(alpha);
  return it == coeffs_.end() ? ctx_->zero() : it->second;
}

DiffScalar TruncSeries::ev0() const { return coeff(MultiIndex(nvars_)); }

ZeroTest TruncSeries::zero_test() const {
  bool approximate = !exact_;
  for (const auto& [a, c] : coeffs_) {
    ZeroTest z = c.zero_test();
    if (z == ZeroTest::NonZero) return ZeroTest::NonZero;
    if (z == ZeroTest::ZeroToPrecision) approximate = true;
  }
  return approximate ? ZeroTest::ZeroToPrecision : ZeroTest::Zero;
}

Comparison TruncSeries::compare(const TruncSeries& o) const {
  switch ((*this - o).zero_test()) {
    case ZeroTest::Zero: return Comparison::Equal;
    case ZeroTest::NonZero: return Comparison::Unequal;
    default: return Comparison::EqualToPrecision;
  }
}

bool TruncSeries::agrees_to(const TruncSeries& o, int upto) const {
  require_compatible(o);
  if (upto > std::min(effective(*this), effective(o))) return false;
  const TruncSeries d = *this - o;
  for (const auto& [a, c] : d.coeffs_) {
    if (static_cast<int>(a.order()) > upto) break;
    if (c.zero_test() == ZeroTest::NonZero) return false;
  }
  return true;
}

void TruncSeries::require_compatible(const TruncSeries& o) const {
  if (nvars_ != o.nvars_ || truncation_ != o.truncation_)
    throw Error(ErrorKind::DimensionMismatch, "series with different variables or truncation");
  if (ctx_ != o.ctx_ && !ctx_->same_field(*o.ctx_))
    throw Error(ErrorKind::Usage, "series over different coefficient fields");
}

TruncSeries TruncSeries::operator-() const {
  TruncSeries out(*this);
  for (auto& [a, c] : out.coeffs_) c = -c;
  return out;
}

TruncSeries TruncSeries::operator+(const TruncSeries& o) const {
  require_compatible(o);
  TruncSeries out(*this);
  out.exact_ = exact_ && o.exact_;
  out.precision_ = out.exact_ ? static_cast<int>(truncation_) : std::min(effective(*this), effective(o));
  if (!out.exact_) {
    for (auto it = out.coeffs_.begin(); it != out.coeffs_.end();) {
      if (static_cast<int>(it->first.order()) > out.precision_) it = out.coeffs_.erase(it);
      else ++it;
    }
  }
  for (const auto& [a, c] : o.coeffs_) {
    if (static_cast<int>(a.order()) > out.precision_) break;
    put(out.coeffs_, a, c.ctx() == ctx_ ? c : c.in(ctx_));
  }
  return out;
}

TruncSeries TruncSeries::operator-(const TruncSeries& o) const { return *this + (-o); }

TruncSeries TruncSeries::operator*(const TruncSeries& o) const {
  require_compatible(o);
  const int n = static_cast<int>(truncation_);
  int prec = std::min({n, effective(*this) + valuation(o), effective(o) + valuation(*this)});
  bool exact = exact_ && o.exact_;
  TruncSeries out(ctx_, nvars_, truncation_);
  for (const auto& [a, ca] : coeffs_) {
    const int da = static_cast<int>(a.order());
    for (const auto& [b, cb] : o.coeffs_) {
      const int d = da + static_cast<int>(b.order());
      if (d > prec) {
        if (d > n) exact = false;
        break;  // o's coefficients are sorted by total degree
      }
      put(out.coeffs_, a + b, ca * cb);
    }
  }
  out.exact_ = exact;
  out.precision_ = exact ? n : prec;
  return out;
}

TruncSeries TruncSeries::operator*(const DiffScalar& c) const {
  const DiffScalar k = ctx_->embed(c);
  TruncSeries out(ctx_, nvars_, truncation_);
  out.exact_ = exact_;
  out.precision_ = precision_;
  if (k.zero_test() == ZeroTest::Zero) return out;
  for (const auto& [a, x] : coeffs_) put(out.coeffs_, a, x * k);
  return out;
}

TruncSeries TruncSeries::pow(unsigned k) const {
  TruncSeries result = constant(ctx_, nvars_, truncation_, ctx_->one());
  TruncSeries base = *this;
  while (k) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k) base = base * base;
  }
  return result;
}

TruncSeries TruncSeries::invert() const {
  const DiffScalar c0 = ev0();
  switch (c0.zero_test()) {
    case ZeroTest::Zero: throw Error(ErrorKind::NotAUnit, "series with zero constant coefficient is not a unit");
    case ZeroTest::ZeroToPrecision:
      throw Error(ErrorKind::PrecisionLoss, "constant coefficient is only known to be zero to precision");
    default: break;
  }
  const DiffScalar inv0 = c0.inverse();
  if (coeffs_.size() == 1 && exact_) return constant(ctx_, nvars_, truncation_, inv0);
  const int prec = exact_ ? static_cast<int>(truncation_) : precision_;
  TruncSeries out(ctx_, nvars_, truncation_);
  out.exact_ = false;
  out.precision_ = prec;
  out.coeffs_.emplace(MultiIndex(nvars_), inv0);
  // g_alpha = -(1/c0) sum_{0 < beta <= alpha} f_beta g_{alpha-beta}, in graded order.
  for (const auto& alpha : indices_up_to(nvars_, static_cast<unsigned>(std::max(prec, 0)))) {
    if (alpha.is_zero()) continue;
    DiffScalar acc = ctx_->zero();
    for (const auto& [beta, fb] : coeffs_) {
      if (beta.order() > alpha.order()) break;
      if (beta.is_zero() || !beta.leq(alpha)) continue;
      auto it = out.coeffs_.find(alpha - beta);
      if (it != out.coeffs_.end()) acc += fb * it->second;
    }
    if (acc.zero_test() != ZeroTest::Zero) put(out.coeffs_, alpha, -(acc * inv0));
  }
  return out;
}

TruncSeries TruncSeries::ddt(std::size_t i) const {
  if (i >= nvars_) throw Error(ErrorKind::ArityError, "d/dt index out of range");
  TruncSeries out(ctx_, nvars_, truncation_);
  out.exact_ = exact_;
  out.precision_ = exact_ ? static_cast<int>(truncation_) : precision_ - 1;
  for (const auto& [a, c] : coeffs_) {
    if (a[i] == 0) continue;
    MultiIndex b = a;
    b[i] -= 1;
    put(out.coeffs_, b, c * Rational(a[i]));
  }
  return out;
}

TruncSeries TruncSeries::coeff_delta(std::size_t i) const { return coeff_delta(i, *ctx_); }

TruncSeries TruncSeries::coeff_delta(std::size_t i, const DiffFieldCtx& family) const {
  if (i >= family.m()) throw Error(ErrorKind::ArityError, "derivation index out of range");
  TruncSeries out(ctx_, nvars_, truncation_);
  out.exact_ = exact_;
  out.precision_ = precision_;
  for (const auto& [a, c] : coeffs_) put(out.coeffs_, a, family.derive(i, c));
  return out;
}

TruncSeries TruncSeries::combined_delta(std::size_t i) const { return coeff_delta(i) + ddt(i); }

TruncSeries TruncSeries::combined_delta(std::size_t i, const DiffFieldCtx& family) const {
  return coeff_delta(i, family) + ddt(i);
}

TruncSeries TruncSeries::shift_up(const MultiIndex& gamma) const {
  if (gamma.size() != nvars_) throw Error(ErrorKind::DimensionMismatch, "shift has wrong length");
  const int n = static_cast<int>(truncation_);
  const int g = static_cast<int>(gamma.order());
  TruncSeries out(ctx_, nvars_, truncation_);
  bool exact = exact_;
  int prec = exact_ ? n : std::min(n, precision_ + g);
  for (const auto& [a, c] : coeffs_) {
    if (static_cast<int>(a.order()) + g > n) {
      exact = false;
      prec = std::min(prec, n);
      continue;
    }
    out.coeffs_.emplace(a + gamma, c);
  }
  out.exact_ = exact;
  out.precision_ = exact ? n : prec;
  return out;
}

TruncSeries TruncSeries::shift_down(const MultiIndex& gamma) const {
  if (gamma.size() != nvars_) throw Error(ErrorKind::DimensionMismatch, "shift has wrong length");
  TruncSeries out(ctx_, nvars_, truncation_);
  out.exact_ = exact_;
  out.precision_ = exact_ ? static_cast<int>(truncation_) : precision_ - static_cast<int>(gamma.order());
  for (const auto& [a, c] : coeffs_) {
    if (!gamma.leq(a)) throw Error(ErrorKind::Usage, "shift_down by a monomial that does not divide");
    out.coeffs_.emplace(a - gamma, c);
  }
  return out;
}

TruncSeries TruncSeries::truncated(int p) const {
  TruncSeries out(ctx_, nvars_, truncation_);
  out.precision_ = std::min(p, effective(*this));
  out.exact_ = false;
  for (const auto& [a, c] : coeffs_) {
    if (static_cast<int>(a.order()) > out.precision_) break;
    out.coeffs_.emplace(a, c);
  }
  if (exact_ && (coeffs_.empty() || static_cast<int>(coeffs_.rbegin()->first.order()) <= out.precision_)) {
    out.exact_ = true;
    out.precision_ = static_cast<int>(truncation_);
  }
  return out;
}

TruncSeries TruncSeries::in(const CtxPtr& target) const {
  TruncSeries out(target, nvars_, truncation_);
  out.exact_ = exact_;
  out.precision_ = precision_;
  for (const auto& [a, c] : coeffs_) out.coeffs_.emplace(a, c.in(target));
  return out;
}

namespace {

std::string monomial_text(const MultiIndex& a, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] == 0) continue;
    if (!out.empty()) out += "*";
    out += k < names.size() ? names[k] : "t" + std::to_string(k + 1);
    if (a[k] > 1) out += "^" + std::to_string(a[k]);
  }
  return out;
}

bool is_atomic(const std::string& s) {
  // A single signed rational or a bare product of factors needs no parentheses.
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char ch = s[i];
    if (ch == '(') ++depth;
    else if (ch == ')') --depth;
    else if (depth == 0 && (ch == '+' || ch == '/' || (ch == '-' && i > 0)) ) return false;
  }
  return true;
}

}  // namespace

std::string TruncSeries::to_string(const std::vector<std::string>& names) const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (const auto& [a, c] : coeffs_) {
    std::string coef;
    bool negative = false;
    if (auto q = c.as_rational()) {
      negative = sgn(*q) < 0;
      coef = diffkit::to_string(negative ? Rational(-*q) : *q);
    } else {
      coef = c.to_string();
      if (!a.is_zero() && !is_atomic(coef)) coef = "(" + coef + ")";
    }
    std::string term = a.is_zero() ? coef : coef + "*" + monomial_text(a, names);
    if (out.empty()) out = negative ? "-" + term : term;
    else out += (negative ? " - " : " + ") + term;
  }
  return out;
}

}  // namespace diffkit

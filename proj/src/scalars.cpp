#include "diffkit/scalars.hpp"

#include "diffkit/errors.hpp"
#include "diffkit/series.hpp"

#include <algorithm>

namespace diffkit {

namespace {

using FracPtr = std::shared_ptr<const SeriesFraction>;

bool is_exact_one(const TruncSeries& s) {
  if (!s.exact() || s.coeffs().size() != 1) return false;
  const auto& [a, c] = *s.coeffs().begin();
  if (!a.is_zero()) return false;
  auto q = c.as_rational();
  return q && *q == 1;
}

MultiIndex max_index(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex out = a;
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = std::max(a[k], b[k]);
  return out;
}

// Brings num/(t^shift den) to canonical form: a monomial-times-unit
// denominator is absorbed into shift, and the common monomial with num cancels.
DiffScalar normalize_fraction(const CtxPtr& ctx, TruncSeries num, TruncSeries den, MultiIndex shift) {
  const CtxPtr& base = ctx->base();
  const std::size_t m = ctx->m();
  const unsigned n = ctx->truncation();

  if (!is_exact_one(den)) {
    // Lowest-degree non-vanishing coefficients of den.
    const MultiIndex* gamma = nullptr;
    unsigned lowest = 0;
    bool unique = true;
    for (const auto& [a, c] : den.coeffs()) {
      if (c.zero_test() != ZeroTest::NonZero) continue;
      if (!gamma) {
        gamma = &a;
        lowest = a.order();
      } else if (a.order() == lowest) {
        unique = false;
        break;
      } else {
        break;
      }
    }
    if (!gamma) {
      if (den.zero_test() == ZeroTest::Zero)
        throw Error(ErrorKind::DivisionByZero, "division by zero in series fraction field");
      throw Error(ErrorKind::PrecisionLoss, "denominator is zero to the available precision");
    }
    bool monomial_unit = unique;
    if (monomial_unit) {
      for (const auto& [a, c] : den.coeffs())
        if (!gamma->leq(a) && c.zero_test() == ZeroTest::NonZero) monomial_unit = false;
    }
    if (monomial_unit) {
      MultiIndex g = *gamma;
      TruncSeries::Coeffs kept;
      for (const auto& [a, c] : den.coeffs())
        if (g.leq(a)) kept.emplace(a, c);
      TruncSeries trimmed = TruncSeries::from_coeffs(base, m, n, std::move(kept), den.precision(), den.exact());
      TruncSeries unit = trimmed.shift_down(g);
      num = num * unit.invert();
      den = TruncSeries::constant(base, m, n, base->one());
      shift = shift + g;
    } else {
      // Keep the formal fraction; pull out the common monomial only.
      MultiIndex g = den.coeffs().begin()->first;
      for (const auto& [a, c] : den.coeffs())
        for (std::size_t k = 0; k < m; ++k) g[k] = std::min(g[k], a[k]);
      if (!g.is_zero()) {
        den = den.shift_down(g);
        shift = shift + g;
      }
    }
  }

  if (num.coeffs().empty()) {
    TruncSeries zero = TruncSeries::from_coeffs(base, m, n, {}, num.precision(), num.exact());
    return DiffScalar(ctx, std::make_shared<const SeriesFraction>(
                               SeriesFraction{std::move(zero), TruncSeries::constant(base, m, n, base->one()),
                                              MultiIndex(m)}));
  }
  MultiIndex common = shift;
  for (const auto& [a, c] : num.coeffs())
    for (std::size_t k = 0; k < m; ++k) common[k] = std::min(common[k], a[k]);
  if (!common.is_zero()) {
    num = num.shift_down(common);
    shift = shift - common;
  }
  return DiffScalar(ctx, std::make_shared<const SeriesFraction>(
                             SeriesFraction{std::move(num), std::move(den), std::move(shift)}));
}

DiffScalar tower_from_series(const CtxPtr& ctx, TruncSeries num) {
  const CtxPtr& base = ctx->base();
  return normalize_fraction(ctx, std::move(num), TruncSeries::constant(base, ctx->m(), ctx->truncation(), base->one()),
                            MultiIndex(ctx->m()));
}

TruncSeries times_den(const TruncSeries& s, const SeriesFraction& f, const MultiIndex& extra) {
  TruncSeries out = is_exact_one(f.den) ? s : s * f.den;
  return extra.is_zero() ? out : out.shift_up(extra);
}

DiffScalar tower_add(const CtxPtr& ctx, const SeriesFraction& a, const SeriesFraction& b) {
  const MultiIndex s = max_index(a.shift, b.shift);
  TruncSeries num = times_den(a.num, b, s - a.shift) + times_den(b.num, a, s - b.shift);
  TruncSeries den = is_exact_one(a.den) ? b.den : (is_exact_one(b.den) ? a.den : a.den * b.den);
  return normalize_fraction(ctx, std::move(num), std::move(den), s);
}

DiffScalar tower_mul(const CtxPtr& ctx, const SeriesFraction& a, const SeriesFraction& b) {
  TruncSeries den = is_exact_one(a.den) ? b.den : (is_exact_one(b.den) ? a.den : a.den * b.den);
  return normalize_fraction(ctx, a.num * b.num, std::move(den), a.shift + b.shift);
}

DiffScalar tower_inverse(const CtxPtr& ctx, const SeriesFraction& a) {
  if (a.num.zero_test() == ZeroTest::Zero) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  TruncSeries num = a.shift.is_zero() ? a.den : a.den.shift_up(a.shift);
  return normalize_fraction(ctx, std::move(num), a.num, MultiIndex(ctx->m()));
}

// delta_i = (base delta_i on coefficients) + d/dt_i on num/(t^s den).
DiffScalar tower_derive(const CtxPtr& ctx, std::size_t i, const SeriesFraction& a) {
  const CtxPtr& base = ctx->base();
  const std::size_t m = ctx->m();
  const unsigned n = ctx->truncation();
  const TruncSeries dnum = a.num.combined_delta(i, *base);
  const bool unit_den = is_exact_one(a.den);
  if (a.shift[i] == 0) {
    if (unit_den) return normalize_fraction(ctx, dnum, a.den, a.shift);
    TruncSeries top = dnum * a.den - a.num * a.den.combined_delta(i, *base);
    return normalize_fraction(ctx, std::move(top), a.den * a.den, a.shift);
  }
  // d(F/G) with G = t^s den: [dF den t_i - F (s_i den + t_i d(den))] / (t^{s+e_i} den^2).
  const MultiIndex ei = MultiIndex::unit(m, i);
  const TruncSeries si = TruncSeries::constant(base, m, n, base->constant(Rational(a.shift[i])));
  if (unit_den) {
    TruncSeries top = dnum.shift_up(ei) - a.num * si;
    return normalize_fraction(ctx, std::move(top), a.den, a.shift + ei);
  }
  TruncSeries top = (dnum * a.den).shift_up(ei) - a.num * (a.den * si + a.den.combined_delta(i, *base).shift_up(ei));
  return normalize_fraction(ctx, std::move(top), a.den * a.den, a.shift + ei);
}

std::string tower_to_string(const DiffFieldCtx& ctx, const SeriesFraction& a) {
  std::string num = a.num.to_string(ctx.level_names());
  const bool unit_den = is_exact_one(a.den);
  if (unit_den && a.shift.is_zero()) return num;
  std::string mono;
  for (std::size_t k = 0; k < a.shift.size(); ++k) {
    if (a.shift[k] == 0) continue;
    if (!mono.empty()) mono += "*";
    mono += ctx.level_names()[k];
    if (a.shift[k] > 1) mono += "^" + std::to_string(a.shift[k]);
  }
  std::string den;
  if (unit_den) {
    den = mono.find('*') == std::string::npos ? mono : "(" + mono + ")";
  } else {
    den = "(" + a.den.to_string(ctx.level_names()) + ")";
    if (!mono.empty()) den = "(" + den + "*" + mono + ")";
  }
  return "(" + num + ")/" + den;
}

}  // namespace

// ---------------------------------------------------------------- DiffScalar

DiffScalar::DiffScalar(CtxPtr ctx, Rational q) : ctx_(std::move(ctx)) {
  if (!ctx_) throw Error(ErrorKind::Usage, "scalar without a context");
  if (ctx_->kind() == FieldKind::Rationals) v_ = std::move(q);
  else *this = ctx_->constant(q);
}

DiffScalar::DiffScalar(CtxPtr ctx, RatFun f) : ctx_(std::move(ctx)) {
  if (!ctx_ || ctx_->kind() != FieldKind::RationalFunctions)
    throw Error(ErrorKind::Usage, "rational-function payload needs a rational-function context");
  if (f.nvars() != ctx_->num_params())
    throw Error(ErrorKind::DimensionMismatch, "rational function over the wrong number of parameters");
  v_ = std::move(f);
}

DiffScalar::DiffScalar(CtxPtr ctx, std::shared_ptr<const SeriesFraction> s) : ctx_(std::move(ctx)) {
  if (!ctx_ || ctx_->kind() != FieldKind::SeriesFraction)
    throw Error(ErrorKind::Usage, "series payload needs a tower context");
  v_ = std::move(s);
}

FieldKind DiffScalar::kind() const { return ctx_->kind(); }

const SeriesFraction* DiffScalar::series() const {
  auto p = std::get_if<FracPtr>(&v_);
  return p ? p->get() : nullptr;
}

ZeroTest DiffScalar::zero_test() const {
  if (auto q = rational()) return sgn(*q) == 0 ? ZeroTest::Zero : ZeroTest::NonZero;
  if (auto f = ratfun()) return f->is_zero() ? ZeroTest::Zero : ZeroTest::NonZero;
  if (auto s = series()) return s->num.zero_test();
  throw Error(ErrorKind::Usage, "zero test on an empty scalar");
}

bool DiffScalar::is_zero() const {
  switch (zero_test()) {
    case ZeroTest::Zero: return true;
    case ZeroTest::NonZero: return false;
    default:
      if (ctx_->to_precision_semantics()) return true;
      throw Error(ErrorKind::PrecisionSemanticsRequired,
                  "tower scalar is zero only to precision; opt into to-precision semantics");
  }
}

bool DiffScalar::is_one() const {
  auto q = as_rational();
  return q && *q == 1;
}

std::optional<Rational> DiffScalar::as_rational() const {
  if (auto q = rational()) return *q;
  if (auto f = ratfun()) {
    if (f->is_constant()) return f->num().constant_term();
    return std::nullopt;
  }
  if (auto s = series()) {
    if (!s->shift.is_zero() || !is_exact_one(s->den) || !s->num.exact()) return std::nullopt;
    if (s->num.coeffs().empty()) return Rational(0);
    if (s->num.coeffs().size() != 1 || !s->num.coeffs().begin()->first.is_zero()) return std::nullopt;
    return s->num.coeffs().begin()->second.as_rational();
  }
  return std::nullopt;
}

namespace {

// Common context for a binary operation: identical or same field keeps the
// left context; otherwise lift the scalar from the smaller field.
std::pair<DiffScalar, DiffScalar> align(const DiffScalar& a, const DiffScalar& b) {
  if (!a.valid() || !b.valid()) throw Error(ErrorKind::Usage, "arithmetic on an empty scalar");
  if (a.ctx() == b.ctx() || a.ctx()->same_field(*b.ctx())) return {a, b};
  if (a.ctx()->contains_field(*b.ctx())) return {a, a.ctx()->embed(b)};
  if (b.ctx()->contains_field(*a.ctx())) return {b.ctx()->embed(a), b};
  throw Error(ErrorKind::Usage, "scalars over unrelated fields: " + a.ctx()->describe() + " and " +
                                    b.ctx()->describe());
}

}  // namespace

DiffScalar DiffScalar::operator-() const {
  if (auto q = rational()) return DiffScalar(ctx_, Rational(-*q));
  if (auto f = ratfun()) return DiffScalar(ctx_, -*f);
  const auto* s = series();
  return DiffScalar(ctx_, std::make_shared<const SeriesFraction>(SeriesFraction{-s->num, s->den, s->shift}));
}

DiffScalar DiffScalar::operator+(const DiffScalar& o) const {
  auto [a, b] = align(*this, o);
  if (auto q = a.rational()) return DiffScalar(a.ctx_, Rational(*q + *b.rational()));
  if (auto f = a.ratfun()) return DiffScalar(a.ctx_, *f + *b.ratfun());
  return tower_add(a.ctx_, *a.series(), *b.series());
}

DiffScalar DiffScalar::operator-(const DiffScalar& o) const { return *this + (-o); }

DiffScalar DiffScalar::operator*(const DiffScalar& o) const {
  auto [a, b] = align(*this, o);
  if (auto q = a.rational()) return DiffScalar(a.ctx_, Rational(*q * *b.rational()));
  if (auto f = a.ratfun()) return DiffScalar(a.ctx_, *f * *b.ratfun());
  return tower_mul(a.ctx_, *a.series(), *b.series());
}

DiffScalar DiffScalar::operator*(const Rational& q) const {
  if (auto r = rational()) return DiffScalar(ctx_, Rational(*r * q));
  if (auto f = ratfun()) {
    if (sgn(q) == 0) return ctx_->zero();
    return DiffScalar(ctx_, *f * q);
  }
  return *this * ctx_->constant(q);
}

DiffScalar DiffScalar::inverse() const {
  if (auto q = rational()) {
    if (sgn(*q) == 0) throw Error(ErrorKind::DivisionByZero, "division by zero");
    return DiffScalar(ctx_, Rational(1 / *q));
  }
  if (auto f = ratfun()) return DiffScalar(ctx_, f->inverse());
  return tower_inverse(ctx_, *series());
}

DiffScalar DiffScalar::operator/(const DiffScalar& o) const {
  auto [a, b] = align(*this, o);
  return a * b.inverse();
}

DiffScalar DiffScalar::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  DiffScalar result = ctx_->one(), base = *this;
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

DiffScalar DiffScalar::derive(std::size_t i) const { return ctx_->derive(i, *this); }

Comparison DiffScalar::compare(const DiffScalar& o) const {
  switch ((*this - o).zero_test()) {
    case ZeroTest::Zero: return Comparison::Equal;
    case ZeroTest::NonZero: return Comparison::Unequal;
    default: return Comparison::EqualToPrecision;
  }
}

bool DiffScalar::operator==(const DiffScalar& o) const { return (*this - o).is_zero(); }

DiffScalar DiffScalar::in(const CtxPtr& target) const {
  if (ctx_ == target) return *this;
  return target->embed(*this);
}

std::string DiffScalar::to_string() const {
  if (auto q = rational()) return diffkit::to_string(*q);
  if (auto f = ratfun()) return f->to_string();
  if (auto s = series()) return tower_to_string(*ctx_, *s);
  return "<empty>";
}

// -------------------------------------------------------------- DiffFieldCtx

CtxPtr DiffFieldCtx::rationals(std::size_t m) {
  auto ctx = std::make_shared<DiffFieldCtx>(Private{});
  ctx->kind_ = FieldKind::Rationals;
  ctx->m_ = m;
  return ctx;
}

CtxPtr DiffFieldCtx::rational_functions(std::size_t p, std::size_t m, Table table) {
  if (table.size() != p) throw Error(ErrorKind::DimensionMismatch, "derivation table needs one row per parameter");
  for (const auto& row : table) {
    if (row.size() != m) throw Error(ErrorKind::DimensionMismatch, "derivation table needs one column per derivation");
    for (const auto& f : row)
      if (f.nvars() != p) throw Error(ErrorKind::DimensionMismatch, "derivation image over the wrong parameters");
  }
  auto ctx = std::make_shared<DiffFieldCtx>(Private{});
  ctx->kind_ = FieldKind::RationalFunctions;
  ctx->m_ = m;
  ctx->p_ = p;
  ctx->columns_.assign(m, std::vector<RatFun>(p, RatFun(p)));
  for (std::size_t j = 0; j < p; ++j)
    for (std::size_t i = 0; i < m; ++i) ctx->columns_[i][j] = table[j][i];
  ctx->table_ = std::move(table);
  if (auto w = validate_commutation(*ctx)) throw CommutationError(w->i, w->j, w->generator, w->value.to_string());
  return ctx;
}

CtxPtr DiffFieldCtx::partials(std::size_t p, std::size_t m) {
  Table table(p, std::vector<RatFun>(m, RatFun(p)));
  for (std::size_t j = 0; j < p && j < m; ++j) table[j][j] = RatFun(p, 1);
  return rational_functions(p, m, std::move(table));
}

CtxPtr DiffFieldCtx::tower(CtxPtr base, std::vector<std::string> names, unsigned truncation,
                           bool to_precision_semantics) {
  if (!base) throw Error(ErrorKind::Usage, "tower without a base field");
  if (names.size() != base->m())
    throw Error(ErrorKind::DimensionMismatch, "a tower level needs one variable per derivation");
  auto ctx = std::make_shared<DiffFieldCtx>(Private{});
  ctx->kind_ = FieldKind::SeriesFraction;
  ctx->m_ = base->m();
  ctx->p_ = base->num_params();
  ctx->base_ = std::move(base);
  ctx->truncation_ = truncation;
  ctx->names_ = std::move(names);
  ctx->to_precision_ = to_precision_semantics;
  if (auto w = validate_commutation(*ctx)) throw CommutationError(w->i, w->j, w->generator, w->value.to_string());
  return ctx;
}

CtxPtr DiffFieldCtx::with_derivations(Table table) const {
  if (kind_ != FieldKind::RationalFunctions)
    throw Error(ErrorKind::Usage, "only rational-function fields take a new derivation table");
  const std::size_t m = table.empty() ? m_ : table.front().size();
  return rational_functions(p_, m, std::move(table));
}

CtxPtr DiffFieldCtx::with_precision_semantics() const {
  auto ctx = std::make_shared<DiffFieldCtx>(*this);
  ctx->to_precision_ = true;
  return ctx;
}

std::size_t DiffFieldCtx::depth() const noexcept {
  return kind_ == FieldKind::SeriesFraction ? 1 + base_->depth() : 0;
}

bool DiffFieldCtx::same_field(const DiffFieldCtx& o) const {
  if (this == &o) return true;
  if (kind_ != o.kind_) return false;
  switch (kind_) {
    case FieldKind::Rationals: return true;
    case FieldKind::RationalFunctions: return p_ == o.p_;
    case FieldKind::SeriesFraction:
      return truncation_ == o.truncation_ && names_ == o.names_ && base_->same_field(*o.base_);
  }
  return false;
}

bool DiffFieldCtx::contains_field(const DiffFieldCtx& sub) const {
  if (same_field(sub) || sub.kind_ == FieldKind::Rationals) return true;
  return kind_ == FieldKind::SeriesFraction && base_->contains_field(sub);
}

DiffScalar DiffFieldCtx::zero() const { return constant(Rational(0)); }
DiffScalar DiffFieldCtx::one() const { return constant(Rational(1)); }

DiffScalar DiffFieldCtx::constant(const Rational& q) const {
  auto self = shared_from_this();
  switch (kind_) {
    case FieldKind::Rationals: return DiffScalar(self, q);
    case FieldKind::RationalFunctions: return DiffScalar(self, RatFun(p_, q));
    case FieldKind::SeriesFraction: {
      TruncSeries num = TruncSeries::constant(base_, m_, truncation_, base_->constant(q));
      TruncSeries den = TruncSeries::constant(base_, m_, truncation_, base_->one());
      return DiffScalar(self, std::make_shared<const SeriesFraction>(
                                  SeriesFraction{std::move(num), std::move(den), MultiIndex(m_)}));
    }
  }
  throw Error(ErrorKind::Usage, "unknown field kind");
}

DiffScalar DiffFieldCtx::param(std::size_t j) const {
  if (j >= p_) throw Error(ErrorKind::UndefinedGenerator, "parameter u" + std::to_string(j + 1) + " is not defined");
  if (kind_ == FieldKind::RationalFunctions) return DiffScalar(shared_from_this(), RatFun::variable(p_, j));
  return embed(base_->param(j));
}

DiffScalar DiffFieldCtx::level_var(std::size_t k) const {
  if (kind_ != FieldKind::SeriesFraction || k >= m_)
    throw Error(ErrorKind::UndefinedGenerator, "not a tower level variable");
  return tower_from_series(shared_from_this(), TruncSeries::variable(base_, m_, truncation_, k));
}

std::optional<DiffScalar> DiffFieldCtx::generator(const std::string& name) const {
  if (kind_ == FieldKind::SeriesFraction) {
    for (std::size_t k = 0; k < names_.size(); ++k)
      if (names_[k] == name) return level_var(k);
    if (auto g = base_->generator(name)) return embed(*g);
    return std::nullopt;
  }
  if (kind_ == FieldKind::RationalFunctions && name.size() > 1 && name[0] == 'u') {
    try {
      std::size_t pos = 0;
      unsigned long j = std::stoul(name.substr(1), &pos);
      if (pos + 1 == name.size() && j >= 1 && j <= p_) return param(j - 1);
    } catch (const std::exception&) {
    }
  }
  return std::nullopt;
}

DiffScalar DiffFieldCtx::embed(const DiffScalar& a) const {
  auto self = shared_from_this();
  if (!a.valid()) throw Error(ErrorKind::Usage, "embedding an empty scalar");
  if (a.ctx().get() == this) return a;
  if (same_field(*a.ctx())) {
    if (auto q = a.rational()) return DiffScalar(self, *q);
    if (auto f = a.ratfun()) return DiffScalar(self, *f);
    const auto* s = a.series();
    return DiffScalar(self, std::make_shared<const SeriesFraction>(
                                SeriesFraction{s->num.in(base_), s->den.in(base_), s->shift}));
  }
  if (auto q = a.as_rational()) return constant(*q);
  if (kind_ == FieldKind::SeriesFraction && base_->contains_field(*a.ctx())) {
    TruncSeries num = TruncSeries::constant(base_, m_, truncation_, base_->embed(a));
    TruncSeries den = TruncSeries::constant(base_, m_, truncation_, base_->one());
    return DiffScalar(self, std::make_shared<const SeriesFraction>(
                                SeriesFraction{std::move(num), std::move(den), MultiIndex(m_)}));
  }
  throw Error(ErrorKind::Usage, "cannot embed " + a.ctx()->describe() + " into " + describe());
}

DiffScalar DiffFieldCtx::derive(std::size_t i, const DiffScalar& a) const {
  if (i >= m_) throw Error(ErrorKind::ArityError, "derivation index " + std::to_string(i + 1) + " exceeds m");
  switch (kind_) {
    case FieldKind::Rationals: return a.ctx()->zero();
    case FieldKind::RationalFunctions: {
      const RatFun* f = a.ratfun();
      if (!f) {
        if (a.as_rational()) return a.ctx()->zero();
        throw Error(ErrorKind::Usage, "derivation applied to a scalar of another field");
      }
      return DiffScalar(a.ctx(), f->derive(columns_[i]));
    }
    case FieldKind::SeriesFraction: {
      const SeriesFraction* s = a.series();
      if (!s) {
        if (a.as_rational()) return a.ctx()->zero();
        throw Error(ErrorKind::Usage, "derivation applied to a scalar of another field");
      }
      DiffScalar out = tower_derive(shared_from_this(), i, *s);
      return a.ctx().get() == this ? out : a.ctx()->embed(out);
    }
  }
  throw Error(ErrorKind::Usage, "unknown field kind");
}

std::vector<std::pair<std::string, DiffScalar>> DiffFieldCtx::generators() const {
  std::vector<std::pair<std::string, DiffScalar>> out;
  if (kind_ == FieldKind::RationalFunctions)
    for (std::size_t j = 0; j < p_; ++j) out.emplace_back("u" + std::to_string(j + 1), param(j));
  if (kind_ == FieldKind::SeriesFraction)
    for (std::size_t k = 0; k < m_; ++k) out.emplace_back(names_[k], level_var(k));
  return out;
}

std::string DiffFieldCtx::describe() const {
  switch (kind_) {
    case FieldKind::Rationals: return "Q";
    case FieldKind::RationalFunctions: {
      std::string s = "Q(";
      for (std::size_t j = 0; j < p_; ++j) s += (j ? ",u" : "u") + std::to_string(j + 1);
      return s + ")";
    }
    case FieldKind::SeriesFraction: {
      std::string s = base_->describe() + "((";
      for (std::size_t k = 0; k < names_.size(); ++k) s += (k ? "," : "") + names_[k];
      return s + "))";
    }
  }
  return "?";
}

// ------------------------------------------------------------------ helpers

CtxPtr make_rational_fn_field(std::size_t p, std::size_t m, const std::vector<std::vector<DiffScalar>>& images) {
  DiffFieldCtx::Table table(p, std::vector<RatFun>(m, RatFun(p)));
  if (images.size() != p) throw Error(ErrorKind::DimensionMismatch, "derivation table needs one row per parameter");
  for (std::size_t j = 0; j < p; ++j) {
    if (images[j].size() != m)
      throw Error(ErrorKind::DimensionMismatch, "derivation table needs one column per derivation");
    for (std::size_t i = 0; i < m; ++i) {
      const DiffScalar& s = images[j][i];
      if (const RatFun* f = s.ratfun()) {
        if (f->nvars() != p) throw Error(ErrorKind::DimensionMismatch, "image over the wrong parameters");
        table[j][i] = *f;
      } else if (auto q = s.as_rational()) {
        table[j][i] = RatFun(p, *q);
      } else {
        throw Error(ErrorKind::Usage, "derivation images must lie in Q(u)");
      }
    }
  }
  return DiffFieldCtx::rational_functions(p, m, std::move(table));
}

std::optional<CommutationWitness> validate_commutation(const DiffFieldCtx& ctx) {
  for (std::size_t i = 0; i < ctx.m(); ++i)
    for (std::size_t j = i + 1; j < ctx.m(); ++j)
      for (const auto& [name, g] : ctx.generators()) {
        DiffScalar bracket = ctx.derive(i, ctx.derive(j, g)) - ctx.derive(j, ctx.derive(i, g));
        if (bracket.zero_test() == ZeroTest::NonZero) return CommutationWitness{i + 1, j + 1, name, bracket};
      }
  if (ctx.kind() == FieldKind::SeriesFraction) return validate_commutation(*ctx.base());
  return std::nullopt;
}

CtxPtr make_tower(CtxPtr base, std::vector<std::string> level_vars, unsigned truncation) {
  return DiffFieldCtx::tower(std::move(base), std::move(level_vars), truncation);
}

}  // namespace diffkit

#include "diffkit/taylor.hpp"

#include "diffkit/errors.hpp"

namespace diffkit {

// ------------------------------------------------------------------ PointMap

PointMap::PointMap(CtxPtr source, CtxPtr target) : source_(std::move(source)), target_(std::move(target)) {
  if (!source_ || !target_) throw Error(ErrorKind::Usage, "point map needs a source and a target field");
  if (source_->m() != target_->m())
    throw Error(ErrorKind::DimensionMismatch, "source and target need the same number of derivations");
  params_.resize(source_->num_params());
  identity_ = target_->contains_field(*source_);
}

PointMap& PointMap::set_param(std::size_t j, const DiffScalar& image) {
  if (source_->kind() != FieldKind::RationalFunctions || j >= params_.size())
    throw Error(ErrorKind::UndefinedGenerator, "parameter u" + std::to_string(j + 1) + " is not in the source field");
  params_[j] = target_->embed(image);
  identity_ = false;
  return *this;
}

PointMap& PointMap::set_jet(const RankedVar& v, const DiffScalar& value) {
  jets_.insert_or_assign(v, target_->embed(value));
  return *this;
}

PointMap& PointMap::set_jet_rule(std::function<std::optional<DiffScalar>(const RankedVar&)> rule) {
  rule_ = std::move(rule);
  return *this;
}

PointMap& PointMap::add_relation(const DiffPoly& r) {
  relations_.push_back(r);
  return *this;
}

DiffScalar PointMap::apply(const DiffScalar& a) const {
  if (auto q = a.as_rational()) return target_->constant(*q);
  const RatFun* f = a.ratfun();
  if (identity_ && (!f || std::none_of(params_.begin(), params_.end(), [](const auto& p) { return p.has_value(); })))
    return target_->embed(a);
  if (!f) throw Error(ErrorKind::UndefinedGenerator, "no image for scalars of " + a.ctx()->describe());
  std::vector<DiffScalar> point;
  point.reserve(params_.size());
  for (std::size_t j = 0; j < params_.size(); ++j) {
    if (params_[j]) point.push_back(*params_[j]);
    else if (target_->contains_field(*source_)) point.push_back(target_->param(j));
    else throw Error(ErrorKind::UndefinedGenerator, "no image for u" + std::to_string(j + 1));
  }
  auto lift = [&](const Rational& q) { return target_->constant(q); };
  const DiffScalar den = f->den().evaluate(point, lift, target_->zero());
  if (den.zero_test() != ZeroTest::NonZero)
    throw Error(ErrorKind::PoleError, "denominator " + f->den().to_string() + " vanishes at the point");
  return f->num().evaluate(point, lift, target_->zero()) / den;
}

DiffScalar PointMap::jet(const RankedVar& v) const {
  auto it = jets_.find(v);
  if (it != jets_.end()) return it->second;
  if (rule_)
    if (auto val = rule_(v)) return target_->embed(*val);
  throw Error(ErrorKind::UndefinedGenerator, "no value for " + to_string(v));
}

DiffScalar PointMap::apply(const DiffPoly& f) const {
  return f.evaluate([&](const RankedVar& v) { return jet(v); }, [&](const DiffScalar& c) { return apply(c); },
                    target_->zero());
}

std::optional<DiffPoly> PointMap::check_relations() const {
  for (const auto& r : relations_)
    if (apply(r).zero_test() == ZeroTest::NonZero) return r;
  return std::nullopt;
}

// ------------------------------------------------------------------- Taylor

namespace {

using IndexMap = std::map<MultiIndex, DiffScalar, GradedLess>;

// delta^alpha a for |alpha| <= N, each derived from its predecessor along the
// first nonzero coordinate.
template <class T, class Derive>
std::map<MultiIndex, T, GradedLess> derivative_table(const T& a, std::size_t m, unsigned N, Derive derive) {
  std::map<MultiIndex, T, GradedLess> table;
  for (const auto& alpha : indices_up_to(m, N)) {
    if (alpha.is_zero()) {
      table.emplace(alpha, a);
      continue;
    }
    std::size_t k = 0;
    while (alpha[k] == 0) ++k;
    table.emplace(alpha, derive(table.at(alpha - MultiIndex::unit(m, k)), k));
  }
  return table;
}

Rational inv_factorial(const MultiIndex& a) { return Rational(Integer(1), mi_factorial(a)); }

TruncSeries series_of(const CtxPtr& ctx, std::size_t m, unsigned N, TruncSeries::Coeffs coeffs) {
  return TruncSeries::from_coeffs(ctx, m, N, std::move(coeffs), static_cast<int>(N), false);
}

template <class T, class Derive>
TruncSeries taylor_impl(const PointMap& phi, const T& a, unsigned N, Derive derive) {
  const std::size_t m = phi.source()->m();
  TruncSeries::Coeffs coeffs;
  for (const auto& [alpha, d] : derivative_table(a, m, N, derive))
    coeffs.emplace(alpha, phi.apply(d) * inv_factorial(alpha));
  return series_of(phi.target(), m, N, std::move(coeffs));
}

// b_alpha from the values c_beta = phi(delta^beta a).
TruncSeries twist(const CtxPtr& target, const DiffFieldCtx& omega, std::size_t m, unsigned N, const IndexMap& values) {
  std::map<MultiIndex, IndexMap, GradedLess> omega_derivs;
  for (const auto& [beta, c] : values)
    omega_derivs.emplace(beta, derivative_table(c, m, N - beta.order(),
                                                [&](const DiffScalar& x, std::size_t k) { return omega.derive(k, x); }));
  TruncSeries::Coeffs coeffs;
  for (const auto& alpha : indices_up_to(m, N)) {
    DiffScalar acc = target->zero();
    for (const auto& [beta, table] : omega_derivs) {
      if (beta.order() > alpha.order()) break;
      if (!beta.leq(alpha)) continue;
      const MultiIndex gamma = alpha - beta;
      Rational w(mi_binom(alpha, beta));
      if (gamma.order() % 2) w = -w;
      acc += table.at(gamma) * w;
    }
    coeffs.emplace(alpha, acc * inv_factorial(alpha));
  }
  return series_of(target, m, N, std::move(coeffs));
}

template <class T, class Derive>
TruncSeries twisted_impl(const PointMap& phi, const T& a, unsigned N, const DiffFieldCtx* omega, Derive derive) {
  const std::size_t m = phi.source()->m();
  const DiffFieldCtx& om = omega ? *omega : *phi.target();
  if (om.m() != m) throw Error(ErrorKind::DimensionMismatch, "Omega needs one derivation per t variable");
  IndexMap values;
  for (const auto& [beta, d] : derivative_table(a, m, N, derive)) values.emplace(beta, phi.apply(d));
  return twist(phi.target(), om, m, N, values);
}

auto scalar_derive = [](const DiffScalar& x, std::size_t k) { return x.derive(k); };
auto poly_derive = [](const DiffPoly& f, std::size_t k) { return f.derive(k); };

}  // namespace

TruncSeries taylor(const PointMap& phi, const DiffScalar& a, unsigned N) {
  return taylor_impl(phi, phi.source()->embed(a), N, scalar_derive);
}

TruncSeries taylor(const PointMap& phi, const DiffPoly& a, unsigned N) { return taylor_impl(phi, a, N, poly_derive); }

TruncSeries twisted_taylor(const PointMap& phi, const DiffScalar& a, unsigned N, const DiffFieldCtx* omega) {
  return twisted_impl(phi, phi.source()->embed(a), N, omega, scalar_derive);
}

TruncSeries twisted_taylor(const PointMap& phi, const DiffPoly& a, unsigned N, const DiffFieldCtx* omega) {
  return twisted_impl(phi, a, N, omega, poly_derive);
}

TruncSeries taylor_ev(int sign, const TruncSeries& f, const DiffFieldCtx* family) {
  if (sign != 1 && sign != -1) throw Error(ErrorKind::Usage, "taylor_ev sign must be +1 or -1");
  const DiffFieldCtx& fam = family ? *family : *f.ctx();
  const std::size_t m = f.nvars();
  if (fam.m() != m) throw Error(ErrorKind::DimensionMismatch, "family needs one derivation per t variable");
  const int p = f.exact() ? static_cast<int>(f.truncation()) : f.precision();
  if (p < 0) return f;
  auto step = [&](const TruncSeries& g, std::size_t k) {
    TruncSeries d = g.coeff_delta(k, fam);
    return (sign > 0 ? d : -d) + g.ddt(k);
  };
  TruncSeries::Coeffs coeffs;
  for (const auto& [alpha, g] : derivative_table(f, m, static_cast<unsigned>(p), step))
    coeffs.emplace(alpha, g.ev0() * inv_factorial(alpha));
  return TruncSeries::from_coeffs(f.ctx(), m, f.truncation(), std::move(coeffs), p, false);
}

// -------------------------------------------------------------- series_solve

std::map<RankedVar, DiffScalar, VarGreater> solve_jets(const CharSet& lambda,
                                                       const std::map<RankedVar, DiffScalar, VarGreater>& init,
                                                       unsigned N) {
  if (!lambda.is_explicit()) throw Error(ErrorKind::NotExplicit, "series_solve needs every element to read v_f - g");
  const CtxPtr& K = lambda.ctx();
  const std::size_t m = K->m();
  const auto& an = lambda.anatomies();
  const auto coords = gamma_set(lambda.n(), N, m);

  // g_f = v_f - f, and its derivatives by need.
  std::vector<std::map<MultiIndex, DiffPoly, GradedLess>> tails(lambda.size());
  for (std::size_t k = 0; k < lambda.size(); ++k)
    tails[k].emplace(MultiIndex(m), DiffPoly::var(K, lambda.n(), an[k].leader) - lambda.elems()[k]);
  auto tail = [&](std::size_t k, const MultiIndex& eta) -> const DiffPoly& {
    auto& memo = tails[k];
    for (const auto& step : indices_up_to(m, eta.order())) {
      if (!step.leq(eta) || memo.count(step)) continue;
      std::size_t j = 0;
      while (step[j] == 0) ++j;
      memo.emplace(step, memo.at(step - MultiIndex::unit(m, j)).derive(j));
    }
    return memo.at(eta);
  };

  for (const auto& [v, val] : init) {
    if (v.m() != m || v.var < 1 || v.var > lambda.n())
      throw Error(ErrorKind::ArityError, "initial value for an unknown symbol " + to_string(v));
    for (const auto& a : an)
      if (v.is_derivative_of(a.leader))
        throw Error(ErrorKind::Usage, "initial value given for " + to_string(v) + ", which the system determines");
  }

  std::map<RankedVar, DiffScalar, VarGreater> values;
  auto lookup = [&](const RankedVar& w) -> DiffScalar {
    auto it = values.find(w);
    if (it == values.end()) throw Error(ErrorKind::MissingInitial, "no value for " + to_string(w));
    return it->second;
  };
  for (const auto& v : coords) {
    std::optional<DiffScalar> value;
    std::string first_source;
    for (std::size_t k = 0; k < an.size(); ++k) {
      if (!v.is_derivative_of(an[k].leader)) continue;
      const MultiIndex eta = v.index - an[k].leader.index;
      DiffScalar cand = tail(k, eta).evaluate(lookup, [](const DiffScalar& c) { return c; }, K->zero());
      if (!value) {
        value = cand;
      } else if (value->compare(cand) == Comparison::Unequal) {
        throw InconsistentSystem(to_string(v), value->to_string(), cand.to_string());
      }
    }
    if (!value) {
      auto it = init.find(v);
      if (it == init.end()) throw Error(ErrorKind::MissingInitial, "missing initial value for " + to_string(v));
      value = K->embed(it->second);
    }
    values.emplace(v, *value);
  }
  return values;
}

std::vector<TruncSeries> series_solve(const CharSet& lambda, const std::map<RankedVar, DiffScalar, VarGreater>& init,
                                      unsigned N) {
  const auto values = solve_jets(lambda, init, N);
  const CtxPtr& K = lambda.ctx();
  const std::size_t m = K->m();
  std::vector<TruncSeries> out;
  for (unsigned i = 1; i <= lambda.n(); ++i) {
    IndexMap jets;
    for (const auto& beta : indices_up_to(m, N)) jets.emplace(beta, values.at(RankedVar(beta, i)));
    out.push_back(twist(K, *K, m, N, jets));
  }
  return out;
}

TruncSeries substitute_series(const DiffPoly& f, const std::vector<TruncSeries>& solution) {
  if (solution.size() != f.n()) throw Error(ErrorKind::DimensionMismatch, "one series per variable expected");
  const CtxPtr& K = solution.front().ctx();
  const std::size_t m = solution.front().nvars();
  const unsigned N = solution.front().truncation();
  std::map<RankedVar, TruncSeries, VarGreater> cache;
  std::function<TruncSeries(const RankedVar&)> image = [&](const RankedVar& v) -> TruncSeries {
    auto it = cache.find(v);
    if (it != cache.end()) return it->second;
    TruncSeries s;
    if (v.index.is_zero()) {
      s = solution.at(v.var - 1);
    } else {
      std::size_t k = 0;
      while (v.index[k] == 0) ++k;
      s = image(RankedVar(v.index - MultiIndex::unit(m, k), v.var)).combined_delta(k);
    }
    cache.emplace(v, s);
    return s;
  };
  return f.evaluate(image, [&](const DiffScalar& c) { return TruncSeries::constant(K, m, N, K->embed(c)); },
                    TruncSeries(K, m, N));
}

}  // namespace diffkit

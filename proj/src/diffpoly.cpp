#include "diffkit/diffpoly.hpp"

#include "diffkit/errors.hpp"

namespace diffkit {

// ------------------------------------------------------------------ Monomial

unsigned Monomial::degree_in(const RankedVar& v) const {
  for (const auto& [w, e] : factors)
    if (w == v) return e;
  return 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial out;
  out.factors.reserve(factors.size() + o.factors.size());
  auto a = factors.begin(), b = o.factors.begin();
  while (a != factors.end() && b != o.factors.end()) {
    auto c = orderly_cmp(a->first, b->first);
    if (c > 0) out.factors.push_back(*a++);
    else if (c < 0) out.factors.push_back(*b++);
    else {
      out.factors.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  out.factors.insert(out.factors.end(), a, factors.end());
  out.factors.insert(out.factors.end(), b, o.factors.end());
  return out;
}

bool MonomialGreater::operator()(const Monomial& a, const Monomial& b) const {
  const std::size_t k = std::min(a.factors.size(), b.factors.size());
  for (std::size_t i = 0; i < k; ++i) {
    auto c = orderly_cmp(a.factors[i].first, b.factors[i].first);
    if (c != 0) return c > 0;
    if (a.factors[i].second != b.factors[i].second) return a.factors[i].second > b.factors[i].second;
  }
  return a.factors.size() > b.factors.size();
}

namespace {

Monomial single(const RankedVar& v, unsigned e) {
  Monomial m;
  if (e) m.factors.emplace_back(v, e);
  return m;
}

// Monomial with the exponent of v lowered by one (v must occur).
Monomial lower(const Monomial& mono, const RankedVar& v) {
  Monomial out;
  for (const auto& [w, e] : mono.factors) {
    if (w == v) {
      if (e > 1) out.factors.emplace_back(w, e - 1);
    } else {
      out.factors.emplace_back(w, e);
    }
  }
  return out;
}

}  // namespace

// ------------------------------------------------------------------ DiffPoly

DiffPoly::DiffPoly(CtxPtr ctx, unsigned n) : ctx_(std::move(ctx)), n_(n) {
  if (!ctx_) throw Error(ErrorKind::Usage, "differential polynomial without a coefficient field");
  if (!ctx_->exact() && !ctx_->to_precision_semantics())
    throw Error(ErrorKind::PrecisionSemanticsRequired,
                "differential polynomials over a tower need to-precision semantics");
}

DiffPoly DiffPoly::constant(CtxPtr ctx, unsigned n, const DiffScalar& c) {
  DiffPoly out(ctx, n);
  out.add_term(Monomial{}, ctx->embed(c));
  return out;
}

DiffPoly DiffPoly::constant(CtxPtr ctx, unsigned n, const Rational& c) {
  auto k = ctx->constant(c);
  return constant(std::move(ctx), n, k);
}

DiffPoly DiffPoly::var(CtxPtr ctx, unsigned n, const RankedVar& v, unsigned exponent) {
  if (v.var < 1 || v.var > n) throw Error(ErrorKind::ArityError, "variable index out of range");
  if (v.m() != ctx->m()) throw Error(ErrorKind::ArityError, "derivative index has the wrong number of derivations");
  DiffPoly out(ctx, n);
  out.add_term(single(v, exponent), ctx->one());
  return out;
}

bool DiffPoly::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

DiffScalar DiffPoly::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? ctx_->zero() : it->second;
}

int DiffPoly::order() const {
  if (is_zero()) throw Error(ErrorKind::ConstantPolynomial, "the zero polynomial has no order");
  int best = -1;
  for (const auto& [mono, c] : terms_)
    for (const auto& [v, e] : mono.factors) best = std::max(best, static_cast<int>(v.order()));
  return best;
}

VarSet DiffPoly::variables() const {
  VarSet out;
  for (const auto& [mono, c] : terms_)
    for (const auto& [v, e] : mono.factors) out.insert(v);
  return out;
}

unsigned DiffPoly::degree_in(const RankedVar& v) const {
  unsigned d = 0;
  for (const auto& [mono, c] : terms_) d = std::max(d, mono.degree_in(v));
  return d;
}

DiffPoly DiffPoly::coeff_in(const RankedVar& v, unsigned k) const {
  DiffPoly out(ctx_, n_);
  for (const auto& [mono, c] : terms_) {
    if (mono.degree_in(v) != k) continue;
    Monomial rest;
    for (const auto& f : mono.factors)
      if (!(f.first == v)) rest.factors.push_back(f);
    out.add_term(rest, c);
  }
  return out;
}

DiffPoly DiffPoly::partial(const RankedVar& v) const {
  DiffPoly out(ctx_, n_);
  for (const auto& [mono, c] : terms_) {
    unsigned e = mono.degree_in(v);
    if (e == 0) continue;
    out.add_term(lower(mono, v), c * Rational(e));
  }
  return out;
}

void DiffPoly::check_compatible(const DiffPoly& o) const {
  if (n_ != o.n_) throw Error(ErrorKind::DimensionMismatch, "differential polynomials in different variable counts");
  if (ctx_ != o.ctx_ && !ctx_->same_field(*o.ctx_) && !ctx_->contains_field(*o.ctx_))
    throw Error(ErrorKind::Usage, "differential polynomials over different fields");
}

void DiffPoly::add_term(const Monomial& mono, const DiffScalar& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(mono);
  if (it == terms_.end()) {
    terms_.emplace(mono, c.ctx() == ctx_ ? c : ctx_->embed(c));
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

DiffPoly DiffPoly::operator-() const {
  DiffPoly out(*this);
  for (auto& [mono, c] : out.terms_) c = -c;
  return out;
}

DiffPoly& DiffPoly::operator+=(const DiffPoly& o) {
  check_compatible(o);
  for (const auto& [mono, c] : o.terms_) add_term(mono, c);
  return *this;
}

DiffPoly DiffPoly::operator+(const DiffPoly& o) const {
  DiffPoly out(*this);
  out += o;
  return out;
}

DiffPoly DiffPoly::operator-(const DiffPoly& o) const { return *this + (-o); }

DiffPoly DiffPoly::operator*(const DiffPoly& o) const {
  check_compatible(o);
  DiffPoly out(ctx_, n_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) out.add_term(ma * mb, ca * cb);
  return out;
}

DiffPoly DiffPoly::operator*(const DiffScalar& c) const {
  DiffPoly out(ctx_, n_);
  if (c.is_zero()) return out;
  for (const auto& [mono, x] : terms_) out.add_term(mono, x * c);
  return out;
}

DiffPoly DiffPoly::pow(unsigned k) const {
  DiffPoly result = constant(ctx_, n_, Rational(1)), base = *this;
  while (k) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k) base = base * base;
  }
  return result;
}

DiffPoly DiffPoly::derive(std::size_t k) const {
  if (k >= m()) throw Error(ErrorKind::ArityError, "derivation index out of range");
  const MultiIndex ek = MultiIndex::unit(m(), k);
  DiffPoly out(ctx_, n_);
  for (const auto& [mono, c] : terms_) {
    out.add_term(mono, ctx_->derive(k, c));
    for (const auto& [v, e] : mono.factors) {
      Monomial dm = lower(mono, v) * single(v.shifted(ek), 1);
      out.add_term(dm, c * Rational(e));
    }
  }
  return out;
}

DiffPoly DiffPoly::derive(const MultiIndex& xi) const {
  if (xi.size() != m()) throw Error(ErrorKind::ArityError, "derivative multi-index has the wrong length");
  DiffPoly out = *this;
  for (std::size_t k = 0; k < xi.size(); ++k)
    for (unsigned j = 0; j < xi[k]; ++j) out = out.derive(k);
  return out;
}

DiffPoly DiffPoly::substitute(const std::map<RankedVar, DiffPoly, VarGreater>& images) const {
  DiffPoly zero(ctx_, n_);
  return evaluate(
      [&](const RankedVar& v) {
        auto it = images.find(v);
        return it == images.end() ? var(ctx_, n_, v) : it->second;
      },
      [&](const DiffScalar& c) { return constant(ctx_, n_, c); }, zero);
}

bool DiffPoly::operator==(const DiffPoly& o) const { return (*this - o).is_zero(); }

std::string coefficient_text(const DiffScalar& c, bool leading, bool bare) {
  // Returns sign-prefixed text: the caller glues it after the previous term.
  if (auto q = c.as_rational()) {
    const bool neg = sgn(*q) < 0;
    const Rational a = neg ? Rational(-*q) : *q;
    std::string body = bare ? to_string(a) : (a == 1 ? "" : to_string(a) + "*");
    if (leading) return (neg ? "-" : "") + body;
    return (neg ? " - " : " + ") + body;
  }
  std::string s = c.to_string();
  bool atomic = true;
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char ch = s[i];
    if (ch == '(') ++depth;
    else if (ch == ')') --depth;
    else if (depth == 0 && (ch == '+' || ch == '/' || (ch == '-' && i > 0))) atomic = false;
  }
  if (atomic && s[0] == '-') {
    std::string body = s.substr(1) + (bare ? "" : "*");
    return (leading ? "-" : " - ") + body;
  }
  std::string body = atomic ? s : "(" + s + ")";
  if (!bare) body += "*";
  return (leading ? "" : " + ") + body;
}

std::string DiffPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool leading = true;
  for (const auto& [mono, c] : terms_) {
    std::string m;
    for (auto it = mono.factors.rbegin(); it != mono.factors.rend(); ++it) {
      if (!m.empty()) m += "*";
      m += diffkit::to_string(it->first);
      if (it->second > 1) m += "^" + std::to_string(it->second);
    }
    out += coefficient_text(c, leading, mono.is_one()) + m;
    leading = false;
  }
  return out;
}

// ------------------------------------------------------------------ anatomy

RankedVar leader(const DiffPoly& f) {
  for (const auto& [mono, c] : f.terms())
    if (!mono.is_one()) return mono.factors.front().first;
  throw Error(ErrorKind::ConstantPolynomial, "a constant has no leader");
}

Anatomy anatomy(const DiffPoly& f) {
  Anatomy a;
  a.leader = leader(f);
  a.degree = f.degree_in(a.leader);
  a.separant = f.partial(a.leader);
  a.initial = f.coeff_in(a.leader, a.degree);
  return a;
}

int compare_rank(const DiffPoly& a, const DiffPoly& b) {
  const bool ca = a.is_constant(), cb = b.is_constant();
  if (ca || cb) return ca == cb ? 0 : (ca ? -1 : 1);
  const RankedVar la = leader(a), lb = leader(b);
  auto c = orderly_cmp(la, lb);
  if (c != 0) return c < 0 ? -1 : 1;
  const unsigned da = a.degree_in(la), db = b.degree_in(lb);
  return da == db ? 0 : (da < db ? -1 : 1);
}

bool is_weakly_reduced(const DiffPoly& g, const DiffPoly& f) {
  const RankedVar v = leader(f);
  for (const auto& w : g.variables())
    if (w.is_proper_derivative_of(v)) return false;
  return true;
}

bool is_reduced(const DiffPoly& g, const DiffPoly& f) {
  if (!is_weakly_reduced(g, f)) return false;
  const Anatomy a = anatomy(f);
  return g.degree_in(a.leader) < a.degree;
}

}  // namespace diffkit

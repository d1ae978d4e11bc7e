#include "diffkit/groebner.hpp"

#include "diffkit/diffpoly.hpp"
#include "diffkit/errors.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace diffkit {

// ------------------------------------------------------------------- AlgRing

AlgRing::AlgRing(CtxPtr coeffs, std::vector<std::string> names, std::vector<bool> eliminate)
    : coeffs_(std::move(coeffs)), names_(std::move(names)), block_(std::move(eliminate)) {
  if (!coeffs_) throw Error(ErrorKind::Usage, "polynomial ring without a coefficient field");
  if (!block_.empty() && block_.size() != names_.size())
    throw Error(ErrorKind::DimensionMismatch, "elimination block must flag every variable");
  if (std::none_of(block_.begin(), block_.end(), [](bool b) { return b; })) block_.clear();
}

std::optional<std::size_t> AlgRing::index_of(const std::string& name) const {
  for (std::size_t k = 0; k < names_.size(); ++k)
    if (names_[k] == name) return k;
  return std::nullopt;
}

namespace {

// Graded reverse lex restricted to the variables with flag == want (all when
// flags is empty); the smallest variable is index 0.
int grevlex(const Exponents& a, const Exponents& b, const std::vector<bool>& flags, bool want) {
  unsigned da = 0, db = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!flags.empty() && flags[k] != want) continue;
    da += a[k];
    db += b[k];
  }
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!flags.empty() && flags[k] != want) continue;
    if (a[k] != b[k]) return a[k] > b[k] ? -1 : 1;
  }
  return 0;
}

bool divides(const Exponents& a, const Exponents& b) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] > b[k]) return false;
  return true;
}

Exponents lcm(const Exponents& a, const Exponents& b) {
  Exponents out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = std::max(a[k], b[k]);
  return out;
}

bool coprime(const Exponents& a, const Exponents& b) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] && b[k]) return false;
  return true;
}

Exponents minus(const Exponents& a, const Exponents& b) {
  Exponents out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] - b[k];
  return out;
}

unsigned degree(const Exponents& a) { return std::accumulate(a.begin(), a.end(), 0u); }

}  // namespace

int AlgRing::compare(const Exponents& a, const Exponents& b) const {
  if (block_.empty()) return grevlex(a, b, block_, true);
  if (int c = grevlex(a, b, block_, true)) return c;
  return grevlex(a, b, block_, false);
}

RingPtr AlgRing::with_block(std::vector<bool> eliminate) const {
  return std::make_shared<const AlgRing>(coeffs_, names_, std::move(eliminate));
}

RingPtr AlgRing::with_extra_variable(const std::string& name) const {
  auto names = names_;
  names.push_back(name);
  std::vector<bool> block(names.size(), false);
  block.back() = true;
  return std::make_shared<const AlgRing>(coeffs_, std::move(names), std::move(block));
}

bool AlgRing::same_as(const AlgRing& o) const {
  return this == &o || (names_ == o.names_ && block_ == o.block_ && coeffs_->same_field(*o.coeffs_));
}

// ------------------------------------------------------------------- AlgPoly

AlgPoly::AlgPoly(RingPtr ring) : ring_(std::move(ring)) {
  if (!ring_) throw Error(ErrorKind::Usage, "polynomial without a ring");
  const auto& k = ring_->coeffs();
  if (!k->exact() && !k->to_precision_semantics())
    throw Error(ErrorKind::PrecisionSemanticsRequired, "Groebner computations over a tower need to-precision semantics");
}

AlgPoly AlgPoly::constant(RingPtr ring, const DiffScalar& c) {
  return monomial(ring, Exponents(ring->nvars(), 0), c);
}

AlgPoly AlgPoly::variable(RingPtr ring, std::size_t k) {
  Exponents e(ring->nvars(), 0);
  if (k >= e.size()) throw Error(ErrorKind::ArityError, "ring variable out of range");
  e[k] = 1;
  auto one = ring->coeffs()->one();
  return monomial(std::move(ring), std::move(e), one);
}

AlgPoly AlgPoly::monomial(RingPtr ring, Exponents e, const DiffScalar& c) {
  AlgPoly out(ring);
  if (e.size() != ring->nvars()) throw Error(ErrorKind::DimensionMismatch, "exponent vector has wrong length");
  DiffScalar k = ring->coeffs()->embed(c);
  if (!k.is_zero()) {
    unsigned d = degree(e);
    out.terms_.push_back({std::move(e), d, std::move(k)});
  }
  return out;
}

AlgPoly AlgPoly::from_terms(RingPtr ring, std::vector<Term> terms) {
  AlgPoly out(std::move(ring));
  for (auto& t : terms) {
    if (t.e.size() != out.ring_->nvars()) throw Error(ErrorKind::DimensionMismatch, "exponent vector has wrong length");
    t.deg = degree(t.e);
    t.c = out.ring_->coeffs()->embed(t.c);
  }
  out.terms_ = std::move(terms);
  out.sort_terms();
  return out;
}

void AlgPoly::sort_terms() {
  const AlgRing& r = *ring_;
  std::sort(terms_.begin(), terms_.end(), [&](const Term& a, const Term& b) { return r.compare(a.e, b.e) > 0; });
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().e == t.e) merged.back().c += t.c;
    else merged.push_back(std::move(t));
  }
  terms_.clear();
  for (auto& t : merged)
    if (!t.c.is_zero()) terms_.push_back(std::move(t));
}

bool AlgPoly::is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].deg == 0); }

unsigned AlgPoly::total_degree() const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.deg);
  return d;
}

bool AlgPoly::uses_variable(std::size_t k) const {
  return std::any_of(terms_.begin(), terms_.end(), [k](const Term& t) { return t.e[k] != 0; });
}

AlgPoly AlgPoly::operator-() const {
  AlgPoly out(*this);
  for (auto& t : out.terms_) t.c = -t.c;
  return out;
}

AlgPoly AlgPoly::operator+(const AlgPoly& o) const {
  if (!ring_->same_as(*o.ring_)) throw Error(ErrorKind::Usage, "adding polynomials of different rings");
  const AlgRing& r = *ring_;
  AlgPoly out(ring_);
  out.terms_.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin(), b = o.terms_.begin();
  while (a != terms_.end() && b != o.terms_.end()) {
    int c = r.compare(a->e, b->e);
    if (c > 0) out.terms_.push_back(*a++);
    else if (c < 0) out.terms_.push_back(*b++);
    else {
      DiffScalar s = a->c + b->c;
      if (!s.is_zero()) out.terms_.push_back({a->e, a->deg, std::move(s)});
      ++a;
      ++b;
    }
  }
  out.terms_.insert(out.terms_.end(), a, terms_.end());
  out.terms_.insert(out.terms_.end(), b, o.terms_.end());
  return out;
}

AlgPoly AlgPoly::operator-(const AlgPoly& o) const { return *this + (-o); }

AlgPoly AlgPoly::operator*(const AlgPoly& o) const {
  if (!ring_->same_as(*o.ring_)) throw Error(ErrorKind::Usage, "multiplying polynomials of different rings");
  std::vector<Term> prods;
  prods.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) {
      Exponents e(a.e.size());
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = a.e[k] + b.e[k];
      prods.push_back({std::move(e), a.deg + b.deg, a.c * b.c});
    }
  AlgPoly out(ring_);
  out.terms_ = std::move(prods);
  out.sort_terms();
  return out;
}

AlgPoly AlgPoly::operator*(const DiffScalar& c) const {
  AlgPoly out(ring_);
  if (c.is_zero()) return out;
  out.terms_ = terms_;
  for (auto& t : out.terms_) t.c = t.c * c;
  return out;
}

AlgPoly AlgPoly::pow(unsigned k) const {
  AlgPoly result = constant(ring_, ring_->coeffs()->one()), base = *this;
  while (k) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k) base = base * base;
  }
  return result;
}

AlgPoly AlgPoly::monic() const {
  if (terms_.empty() || terms_[0].c.is_one()) return *this;
  return *this * terms_[0].c.inverse();
}

AlgPoly AlgPoly::drop_leading() const {
  AlgPoly out(ring_);
  if (!terms_.empty()) out.terms_.assign(terms_.begin() + 1, terms_.end());
  return out;
}

AlgPoly AlgPoly::minus_scaled(const DiffScalar& c, const Exponents& shift, const AlgPoly& g) const {
  const AlgRing& r = *ring_;
  const unsigned ds = degree(shift);
  AlgPoly out(ring_);
  out.terms_.reserve(terms_.size() + g.terms_.size());
  auto a = terms_.begin();
  for (const auto& gt : g.terms_) {
    Exponents e(shift.size());
    for (std::size_t k = 0; k < e.size(); ++k) e[k] = gt.e[k] + shift[k];
    while (a != terms_.end() && r.compare(a->e, e) > 0) out.terms_.push_back(*a++);
    DiffScalar v = -(c * gt.c);
    if (a != terms_.end() && a->e == e) {
      v = a->c + v;
      ++a;
    }
    if (!v.is_zero()) out.terms_.push_back({std::move(e), gt.deg + ds, std::move(v)});
  }
  out.terms_.insert(out.terms_.end(), a, terms_.end());
  return out;
}

AlgPoly AlgPoly::remap(RingPtr target, const std::vector<std::optional<std::size_t>>& map) const {
  std::vector<Term> ts;
  ts.reserve(terms_.size());
  for (const auto& t : terms_) {
    Exponents e(target->nvars(), 0);
    for (std::size_t k = 0; k < t.e.size(); ++k) {
      if (!t.e[k]) continue;
      if (k >= map.size() || !map[k]) throw Error(ErrorKind::Usage, "remapping drops a used variable");
      e[*map[k]] += t.e[k];
    }
    ts.push_back({std::move(e), t.deg, t.c});
  }
  return from_terms(std::move(target), std::move(ts));
}

AlgPoly AlgPoly::reorder(RingPtr target) const {
  if (target->names() != ring_->names()) throw Error(ErrorKind::Usage, "reorder needs the same variables");
  AlgPoly out(std::move(target));
  out.terms_ = terms_;
  out.sort_terms();
  return out;
}

bool AlgPoly::operator==(const AlgPoly& o) const { return (*this - o.reorder(ring_)).is_zero(); }

std::string AlgPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool leading = true;
  for (const auto& t : terms_) {
    std::string m;
    for (std::size_t k = t.e.size(); k-- > 0;) {
      if (!t.e[k]) continue;
      if (!m.empty()) m += "*";
      m += ring_->names()[k];
      if (t.e[k] > 1) m += "^" + std::to_string(t.e[k]);
    }
    out += coefficient_text(t.c, leading, t.deg == 0) + m;
    leading = false;
  }
  return out;
}

// ------------------------------------------------------------------ AlgIdeal

GroebnerLimits& default_limits() {
  static GroebnerLimits limits;
  return limits;
}

AlgIdeal::AlgIdeal(RingPtr ring, std::vector<AlgPoly> gens) : ring_(std::move(ring)) {
  for (auto& g : gens) {
    if (!g.ring()->same_as(*ring_)) throw Error(ErrorKind::Usage, "generator from a different ring");
    if (g.is_zero()) continue;
    gens_.push_back(g.monic());
  }
}

bool AlgIdeal::is_unit() const {
  return std::any_of(gens_.begin(), gens_.end(), [](const AlgPoly& g) { return g.is_constant() && !g.is_zero(); });
}

std::vector<std::string> AlgIdeal::to_strings() const {
  std::vector<std::string> out;
  for (const auto& g : gens_) out.push_back(g.to_string());
  return out;
}

namespace {

struct Pair {
  std::size_t i, j;
  Exponents lcm;
  unsigned sugar;
};

AlgPoly reduce_full(const AlgPoly& f, const std::vector<const AlgPoly*>& basis) {
  AlgPoly p = f;
  std::vector<AlgPoly::Term> rem;
  while (!p.is_zero()) {
    const AlgPoly::Term& t = p.leading();
    const AlgPoly* div = nullptr;
    for (const AlgPoly* g : basis)
      if (divides(g->leading().e, t.e)) {
        div = g;
        break;
      }
    if (div) {
      DiffScalar c = t.c / div->leading().c;
      p = p.minus_scaled(c, minus(t.e, div->leading().e), *div);
    } else {
      rem.push_back(t);
      p = p.drop_leading();
    }
  }
  return AlgPoly::from_terms(f.ring(), std::move(rem));  // already ordered
}

}  // namespace

AlgIdeal buchberger(const AlgIdeal& ideal, const GroebnerLimits& limits) {
  const RingPtr& ring = ideal.ring();
  const AlgRing& r = *ring;
  std::vector<AlgPoly> polys;
  std::vector<unsigned> sugar;
  std::vector<std::size_t> active;
  std::vector<Pair> pairs;

  auto unit = [&]() {
    AlgIdeal out(ring, {AlgPoly::constant(ring, ring->coeffs()->one())});
    out.groebner_ = true;
    return out;
  };

  // Gebauer-Moeller update for the new element h.
  auto update = [&](std::size_t h) {
    const Exponents& lh = polys[h].leading().e;
    std::deque<Pair> c;
    for (std::size_t g : active) {
      Exponents l = lcm(lh, polys[g].leading().e);
      unsigned s = std::max(sugar[h] + degree(l) - polys[h].leading().deg,
                            sugar[g] + degree(l) - polys[g].leading().deg);
      c.push_back({g, h, std::move(l), s});
    }
    std::vector<Pair> d;
    while (!c.empty()) {
      Pair p = std::move(c.front());
      c.pop_front();
      bool keep = coprime(lh, polys[p.i].leading().e);
      if (!keep) {
        keep = true;
        for (const auto& q : c)
          if (divides(q.lcm, p.lcm)) keep = false;
        for (const auto& q : d)
          if (keep && divides(q.lcm, p.lcm)) keep = false;
      }
      if (keep) d.push_back(std::move(p));
    }
    std::vector<Pair> next;
    for (auto& p : pairs) {
      const bool drop = divides(lh, p.lcm) && lcm(polys[p.i].leading().e, lh) != p.lcm &&
                        lcm(polys[p.j].leading().e, lh) != p.lcm;
      if (!drop) next.push_back(std::move(p));
    }
    for (auto& p : d)
      if (!coprime(lh, polys[p.i].leading().e)) next.push_back(std::move(p));
    pairs = std::move(next);
    std::vector<std::size_t> kept;
    for (std::size_t g : active)
      if (!divides(lh, polys[g].leading().e)) kept.push_back(g);
    kept.push_back(h);
    active = std::move(kept);
    if (pairs.size() > limits.max_pairs)
      throw Error(ErrorKind::ResourceLimit, "Groebner pair queue exceeded " + std::to_string(limits.max_pairs));
  };

  auto add = [&](AlgPoly p, unsigned s) {
    if (p.total_degree() > limits.max_degree)
      throw Error(ErrorKind::ResourceLimit, "Groebner basis element exceeded degree " +
                                                std::to_string(limits.max_degree));
    polys.push_back(p.monic());
    sugar.push_back(s);
    if (polys.size() > limits.max_basis)
      throw Error(ErrorKind::ResourceLimit, "Groebner basis exceeded " + std::to_string(limits.max_basis) +
                                                " elements");
    update(polys.size() - 1);
  };

  auto current = [&]() {
    std::vector<const AlgPoly*> basis;
    for (std::size_t g : active) basis.push_back(&polys[g]);
    return basis;
  };

  for (const auto& g : ideal.gens()) {
    if (g.is_zero()) continue;
    AlgPoly h = reduce_full(g, current());
    if (h.is_zero()) continue;
    if (h.is_constant()) return unit();
    add(std::move(h), g.total_degree());
  }

  while (!pairs.empty()) {
    auto best = pairs.begin();
    for (auto it = pairs.begin(); it != pairs.end(); ++it)
      if (it->sugar < best->sugar || (it->sugar == best->sugar && r.compare(it->lcm, best->lcm) < 0)) best = it;
    Pair p = std::move(*best);
    pairs.erase(best);
    const AlgPoly& fi = polys[p.i];
    const AlgPoly& fj = polys[p.j];
    AlgPoly s = (fi * AlgPoly::monomial(ring, minus(p.lcm, fi.leading().e), ring->coeffs()->one()))
                    .minus_scaled(ring->coeffs()->one(), minus(p.lcm, fj.leading().e), fj);
    AlgPoly h = reduce_full(s, current());
    if (h.is_zero()) continue;
    if (h.is_constant()) return unit();
    add(std::move(h), p.sugar);
  }

  // Active elements form a minimal basis; tail-reduce each against the rest.
  std::vector<AlgPoly> basis;
  for (std::size_t g : active) basis.push_back(polys[g]);
  std::vector<AlgPoly> reduced;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    std::vector<const AlgPoly*> others;
    for (std::size_t j = 0; j < basis.size(); ++j)
      if (j != k) others.push_back(&basis[j]);
    reduced.push_back(reduce_full(basis[k], others).monic());
  }
  std::sort(reduced.begin(), reduced.end(),
            [&](const AlgPoly& a, const AlgPoly& b) { return r.compare(a.leading().e, b.leading().e) < 0; });
  AlgIdeal out(ring, std::move(reduced));
  out.groebner_ = true;
  return out;
}

AlgPoly normal_form(const AlgPoly& f, const AlgIdeal& basis) {
  std::vector<const AlgPoly*> ptrs;
  for (const auto& g : basis.gens()) ptrs.push_back(&g);
  return reduce_full(f.ring()->same_as(*basis.ring()) ? f : f.reorder(basis.ring()), ptrs);
}

bool ideal_member(const AlgPoly& f, const AlgIdeal& ideal, const GroebnerLimits& limits) {
  if (f.is_zero()) return true;
  const AlgIdeal gb = ideal.is_groebner() ? ideal : buchberger(ideal, limits);
  return normal_form(f, gb).is_zero();
}

namespace {

std::vector<std::optional<std::size_t>> identity_map(std::size_t n) {
  std::vector<std::optional<std::size_t>> map(n);
  for (std::size_t k = 0; k < n; ++k) map[k] = k;
  return map;
}

}  // namespace

bool radical_member(const AlgPoly& f, const AlgIdeal& ideal, const GroebnerLimits& limits) {
  if (f.is_zero()) return true;
  const RingPtr ext = ideal.ring()->with_extra_variable("_z");
  const auto map = identity_map(ideal.ring()->nvars());
  std::vector<AlgPoly> gens;
  for (const auto& g : ideal.gens()) gens.push_back(g.remap(ext, map));
  const AlgPoly z = AlgPoly::variable(ext, ext->nvars() - 1);
  gens.push_back(AlgPoly::constant(ext, ext->coeffs()->one()) - z * f.remap(ext, map));
  return buchberger(AlgIdeal(ext, std::move(gens)), limits).is_unit();
}

AlgIdeal eliminate(const AlgIdeal& ideal, const std::vector<std::size_t>& keep, const GroebnerLimits& limits) {
  const RingPtr& ring = ideal.ring();
  const std::size_t nv = ring->nvars();
  std::vector<bool> drop(nv, true);
  for (std::size_t k : keep) {
    if (k >= nv) throw Error(ErrorKind::ArityError, "kept variable out of range");
    drop[k] = false;
  }
  std::vector<std::string> names;
  std::vector<std::optional<std::size_t>> map(nv);
  for (std::size_t k = 0; k < nv; ++k)
    if (!drop[k]) {
      map[k] = names.size();
      names.push_back(ring->names()[k]);
    }
  const RingPtr sub = std::make_shared<const AlgRing>(ring->coeffs(), std::move(names));
  const RingPtr blocked = ring->with_block(drop);
  std::vector<AlgPoly> gens;
  for (const auto& g : ideal.gens()) gens.push_back(g.reorder(blocked));
  const AlgIdeal gb = buchberger(AlgIdeal(blocked, std::move(gens)), limits);
  std::vector<AlgPoly> kept;
  for (const auto& g : gb.gens()) {
    bool uses_dropped = false;
    for (std::size_t k = 0; k < nv; ++k) uses_dropped = uses_dropped || (drop[k] && g.uses_variable(k));
    if (!uses_dropped) kept.push_back(g.remap(sub, map));
  }
  return buchberger(AlgIdeal(sub, std::move(kept)), limits);
}

AlgIdeal saturate(const AlgIdeal& ideal, const AlgPoly& h, const GroebnerLimits& limits) {
  if (h.is_zero()) throw Error(ErrorKind::DivisionByZero, "saturation by zero");
  if (h.is_constant()) return buchberger(ideal, limits);
  const RingPtr& ring = ideal.ring();
  const RingPtr ext = ring->with_extra_variable("_z");
  const auto map = identity_map(ring->nvars());
  std::vector<AlgPoly> gens;
  for (const auto& g : ideal.gens()) gens.push_back(g.remap(ext, map));
  const AlgPoly z = AlgPoly::variable(ext, ext->nvars() - 1);
  gens.push_back(AlgPoly::constant(ext, ext->coeffs()->one()) - z * h.remap(ext, map));
  const AlgIdeal gb = buchberger(AlgIdeal(ext, std::move(gens)), limits);
  std::vector<std::optional<std::size_t>> back(ext->nvars());
  for (std::size_t k = 0; k < ring->nvars(); ++k) back[k] = k;
  std::vector<AlgPoly> kept;
  for (const auto& g : gb.gens())
    if (!g.uses_variable(ext->nvars() - 1)) kept.push_back(g.remap(ring, back));
  return buchberger(AlgIdeal(ring, std::move(kept)), limits);
}

bool ideal_contains(const AlgIdeal& super, const AlgIdeal& sub, const GroebnerLimits& limits) {
  const AlgIdeal gb = super.is_groebner() ? super : buchberger(super, limits);
  for (const auto& g : sub.gens())
    if (!normal_form(g, gb).is_zero()) return false;
  return true;
}

bool ideal_equal(const AlgIdeal& a, const AlgIdeal& b, const GroebnerLimits& limits) {
  return ideal_contains(a, b, limits) && ideal_contains(b, a, limits);
}

}  // namespace diffkit

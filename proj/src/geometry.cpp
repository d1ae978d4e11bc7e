#include "diffkit/geometry.hpp"

#include "diffkit/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace diffkit {

// ------------------------------------------------------------------- jets

std::optional<std::size_t> JetRing::index_of(const RankedVar& v) const {
  if (v.m() != m || v.var < 1 || v.var > n) return std::nullopt;
  auto it = std::lower_bound(coords.begin(), coords.end(), v,
                             [](const RankedVar& a, const RankedVar& b) { return orderly_cmp(a, b) < 0; });
  if (it == coords.end() || !(*it == v)) return std::nullopt;
  return static_cast<std::size_t>(it - coords.begin());
}

namespace {

JetRing make_jets(CtxPtr coeffs, const std::vector<std::string>& bases, unsigned r) {
  JetRing J;
  J.n = static_cast<unsigned>(bases.size());
  J.r = r;
  J.m = coeffs->m();
  J.coords = gamma_set(J.n, r, J.m);
  std::vector<std::string> names;
  names.reserve(J.coords.size());
  for (const auto& v : J.coords) names.push_back(derivative_name(bases[v.var - 1], v.index));
  J.ring = std::make_shared<const AlgRing>(std::move(coeffs), std::move(names));
  return J;
}

Rational inv_factorial(const MultiIndex& xi) { return Rational(Integer(1), mi_factorial(xi)); }

// delta^xi c for |xi| <= r.
std::map<MultiIndex, DiffScalar, GradedLess> scalar_jets(const DiffScalar& c, std::size_t m, unsigned r) {
  std::map<MultiIndex, DiffScalar, GradedLess> out;
  for (const auto& xi : indices_up_to(m, r)) {
    if (xi.is_zero()) {
      out.emplace(xi, c);
      continue;
    }
    std::size_t k = 0;
    while (xi[k] == 0) ++k;
    out.emplace(xi, out.at(xi - MultiIndex::unit(m, k)).derive(k));
  }
  return out;
}

// Polynomials in eps_1..eps_m modulo total degree r+1, with coefficients in
// the jet ring. Absent keys are zero.
class EpsPoly {
public:
  EpsPoly(const RingPtr& ring, std::size_t m, unsigned r) : ring_(ring), m_(m), r_(r) {}

  void add(const MultiIndex& xi, const AlgPoly& p) {
    if (p.is_zero()) return;
    auto it = c_.find(xi);
    if (it == c_.end()) {
      c_.emplace(xi, p);
    } else {
      it->second += p;
      if (it->second.is_zero()) c_.erase(it);
    }
  }

  EpsPoly operator*(const EpsPoly& o) const {
    EpsPoly out(ring_, m_, r_);
    for (const auto& [a, pa] : c_)
      for (const auto& [b, pb] : o.c_) {
        if (a.order() + b.order() > r_) break;  // GradedLess iterates by order
        out.add(a + b, pa * pb);
      }
    return out;
  }

  EpsPoly& operator+=(const EpsPoly& o) {
    for (const auto& [xi, p] : o.c_) add(xi, p);
    return *this;
  }

  AlgPoly coefficient(const MultiIndex& xi) const {
    auto it = c_.find(xi);
    return it == c_.end() ? AlgPoly(ring_) : it->second;
  }

private:
  RingPtr ring_;
  std::size_t m_;
  unsigned r_;
  std::map<MultiIndex, AlgPoly, GradedLess> c_;
};

AlgPoly partial(const AlgPoly& f, std::size_t k) {
  std::vector<AlgPoly::Term> terms;
  for (const auto& t : f.terms()) {
    if (t.e[k] == 0) continue;
    AlgPoly::Term d = t;
    d.c = t.c * Rational(t.e[k]);
    --d.e[k];
    --d.deg;
    terms.push_back(std::move(d));
  }
  return AlgPoly::from_terms(f.ring(), std::move(terms));
}

AlgPoly map_coefficients(const AlgPoly& f, std::size_t k) {
  std::vector<AlgPoly::Term> terms;
  for (const auto& t : f.terms()) terms.push_back({t.e, t.deg, t.c.derive(k)});
  return AlgPoly::from_terms(f.ring(), std::move(terms));
}

// Base ring variable k becomes the order-zero jet variable of x_{k+1}.
std::vector<std::optional<std::size_t>> base_embedding(const JetRing& J) {
  std::vector<std::optional<std::size_t>> map(J.n);
  for (unsigned i = 0; i < J.n; ++i) map[i] = J.index_of(RankedVar(MultiIndex(J.m), i + 1));
  return map;
}

}  // namespace

JetRing jet_ring(CtxPtr coeffs, unsigned n, unsigned r, char letter) {
  std::vector<std::string> bases;
  for (unsigned i = 1; i <= n; ++i) bases.push_back(std::string(1, letter) + std::to_string(i));
  return make_jets(std::move(coeffs), bases, r);
}

AlgPoly to_pol(const DiffPoly& f, const JetRing& jets) {
  std::vector<AlgPoly::Term> terms;
  for (const auto& [mono, c] : f.terms()) {
    AlgPoly::Term t{Exponents(jets.coords.size(), 0), 0, c};
    for (const auto& [v, e] : mono.factors) {
      auto idx = jets.index_of(v);
      if (!idx) throw Error(ErrorKind::OrderExceeded, to_string(v) + " is outside the jet ring of order " +
                                                          std::to_string(jets.r));
      t.e[*idx] += e;
      t.deg += e;
    }
    terms.push_back(std::move(t));
  }
  return AlgPoly::from_terms(jets.ring, std::move(terms));
}

DiffScalar evaluate(const AlgPoly& f, const std::vector<DiffScalar>& point) {
  if (point.size() != f.ring()->nvars())
    throw Error(ErrorKind::DimensionMismatch, "point has " + std::to_string(point.size()) + " coordinates, ring has " +
                                                  std::to_string(f.ring()->nvars()));
  DiffScalar acc = f.ring()->coeffs()->zero();
  for (const auto& t : f.terms()) {
    DiffScalar prod = t.c;
    for (std::size_t k = 0; k < t.e.size(); ++k)
      if (t.e[k]) prod = prod * point[k].pow(t.e[k]);
    acc = acc + prod;
  }
  return acc;
}

AlgIdeal prolongation_tau(const AlgIdeal& X, unsigned r) {
  const RingPtr& base = X.ring();
  const CtxPtr& K = base->coeffs();
  const std::size_t m = K->m();
  const JetRing J = make_jets(K, base->names(), r);
  const auto indices = indices_up_to(m, r);

  std::vector<EpsPoly> images;
  for (unsigned i = 1; i <= J.n; ++i) {
    EpsPoly e(J.ring, m, r);
    for (const auto& xi : indices)
      e.add(xi, AlgPoly::variable(J.ring, *J.index_of(RankedVar(xi, i))) * K->constant(inv_factorial(xi)));
    images.push_back(std::move(e));
  }
  auto scalar_image = [&](const DiffScalar& c) {
    EpsPoly e(J.ring, m, r);
    for (const auto& [xi, d] : scalar_jets(c, m, r)) e.add(xi, AlgPoly::constant(J.ring, d * inv_factorial(xi)));
    return e;
  };

  std::vector<AlgPoly> gens;
  for (const auto& f : X.gens()) {
    std::map<std::pair<std::size_t, unsigned>, EpsPoly> powers;
    std::function<const EpsPoly&(std::size_t, unsigned)> power = [&](std::size_t k, unsigned e) -> const EpsPoly& {
      auto key = std::make_pair(k, e);
      auto it = powers.find(key);
      if (it != powers.end()) return it->second;
      EpsPoly p = e == 1 ? images[k] : power(k, e - 1) * images[k];
      return powers.emplace(key, std::move(p)).first->second;
    };
    EpsPoly total(J.ring, m, r);
    for (const auto& t : f.terms()) {
      EpsPoly prod = scalar_image(t.c);
      for (std::size_t k = 0; k < t.e.size(); ++k)
        if (t.e[k]) prod = prod * power(k, t.e[k]);
      total += prod;
    }
    for (const auto& xi : indices) gens.push_back(total.coefficient(xi) * K->constant(Rational(mi_factorial(xi))));
  }
  return AlgIdeal(J.ring, std::move(gens));
}

AlgIdeal prolongation_explicit_r1(const AlgIdeal& X) {
  const RingPtr& base = X.ring();
  const CtxPtr& K = base->coeffs();
  const std::size_t m = K->m();
  const JetRing J = make_jets(K, base->names(), 1);
  const auto embed = base_embedding(J);
  std::vector<AlgPoly> gens;
  for (const auto& f : X.gens()) {
    gens.push_back(f.remap(J.ring, embed));
    for (std::size_t k = 0; k < m; ++k) {
      AlgPoly g = map_coefficients(f, k).remap(J.ring, embed);
      for (unsigned i = 0; i < J.n; ++i) {
        const auto y = *J.index_of(RankedVar(MultiIndex::unit(m, k), i + 1));
        g += partial(f, i).remap(J.ring, embed) * AlgPoly::variable(J.ring, y);
      }
      gens.push_back(std::move(g));
    }
  }
  return AlgIdeal(J.ring, std::move(gens));
}

std::vector<DiffScalar> nabla(const std::vector<DiffScalar>& point, unsigned r) {
  if (point.empty()) return {};
  const std::size_t m = point.front().ctx()->m();
  std::vector<std::map<MultiIndex, DiffScalar, GradedLess>> jets;
  for (const auto& a : point) jets.push_back(scalar_jets(a, m, r));
  std::vector<DiffScalar> out;
  for (const auto& v : gamma_set(static_cast<unsigned>(point.size()), r, m)) out.push_back(jets[v.var - 1].at(v.index));
  return out;
}

bool nabla_check(const AlgIdeal& X, const std::vector<DiffScalar>& witness, unsigned r) {
  for (const auto& f : X.gens())
    if (evaluate(f, witness).zero_test() != ZeroTest::Zero)
      throw Error(ErrorKind::WitnessNotOnX, "witness does not satisfy " + f.to_string());
  const AlgIdeal tau = prolongation_tau(X, r);
  const auto jets = nabla(witness, r);
  return std::all_of(tau.gens().begin(), tau.gens().end(),
                     [&](const AlgPoly& g) { return evaluate(g, jets).zero_test() == ZeroTest::Zero; });
}

AlgIdeal jet_ideal(const CharSet& lambda, unsigned r, const GroebnerLimits& limits) {
  const JetRing J = jet_ring(lambda.ctx(), lambda.n(), r);
  std::vector<AlgPoly> gens;
  for (const auto& f : prolong_set(lambda, r)) gens.push_back(to_pol(f, J));
  return saturate(AlgIdeal(J.ring, std::move(gens)), to_pol(lambda.H(), J), limits);
}

// ------------------------------------------------------------ kernel bounds

namespace {

std::string describe(const Integer& y) {
  std::string s = y.get_str();
  if (s.size() <= 24) return s;
  return "with " + std::to_string(s.size()) + " digits";
}

struct AckermannEval {
  const AckermannLimits& limits;
  unsigned long steps = 0;

  void tick() {
    if (++steps > limits.max_steps)
      throw Error(ErrorKind::ResourceLimit, "Ackermann evaluation exceeded " + std::to_string(limits.max_steps) +
                                                " steps");
  }

  void check_size(const Integer& v) const {
    if (mpz_sizeinbase(v.get_mpz_t(), 2) > limits.max_bits)
      throw Error(ErrorKind::ResourceLimit, "Ackermann value exceeds 2^" + std::to_string(limits.max_bits));
  }

  unsigned long small(const Integer& y) const {
    if (!y.fits_ulong_p() || y.get_ui() > limits.max_steps)
      throw Error(ErrorKind::ResourceLimit, "Ackermann argument " + describe(y) + " is too large to iterate");
    return y.get_ui();
  }

  // Levels 0..2 are additions the iteration would take y steps for.
  Integer operator()(unsigned long x, const Integer& y) {
    tick();
    if (x == 0) return y + 1;
    if (x == 1) return y + 2;
    if (x == 2) return 2 * y + 3;
    Integer v = (*this)(x - 1, Integer(1));
    for (unsigned long k = 0, end = small(y); k < end; ++k) {
      v = (*this)(x - 1, v);
      check_size(v);
    }
    return v;
  }
};

}  // namespace

Integer ackermann(unsigned long x, const Integer& y, const AckermannLimits& limits) {
  if (y < 0) throw Error(ErrorKind::Usage, "Ackermann is defined on natural numbers");
  AckermannEval eval{limits};
  return eval(x, y);
}

Integer kernel_bound(const Integer& r, std::size_t m, unsigned n, const AckermannLimits& limits) {
  if (m < 1 || n < 1) throw Error(ErrorKind::Usage, "kernel_bound needs m >= 1 and n >= 1");
  if (r < 0) throw Error(ErrorKind::Usage, "kernel_bound needs r >= 0");
  AckermannEval eval{limits};
  auto first = [&](const Integer& rr) {
    Integer c = 0;
    for (unsigned long k = 0, end = eval.small(rr); k < end; ++k) c = eval(m - 1, c);
    return c;
  };
  Integer c = first(r);
  for (unsigned k = 1; k < n; ++k) c = first(c);
  return c;
}

Integer jet_count(unsigned n, const Integer& r, std::size_t m) {
  Integer top = r + static_cast<unsigned long>(m);
  Integer b;
  mpz_bin_ui(b.get_mpz_t(), top.get_mpz_t(), m);
  return b * n;
}

AlphaBeta alpha_beta(unsigned n, std::size_t m, const AckermannLimits& limits) {
  AlphaBeta out;
  out.C = kernel_bound(Integer(1), m, n, limits);
  out.alpha = jet_count(n, out.C, m);
  out.beta = jet_count(n, out.C - 1, m);
  return out;
}

// ------------------------------------------------------------ axiom check

AxiomReport axiom_check(const AlgIdeal& W, unsigned n, const GroebnerLimits& limits) {
  const RingPtr& ring = W.ring();
  const CtxPtr& K = ring->coeffs();
  const std::size_t m = K->m();
  const AlphaBeta ab = alpha_beta(n, m);
  const unsigned C = static_cast<unsigned>(ab.C.get_ui());
  const JetRing frame = jet_ring(K, n, C);
  if (ring->names() != frame.ring->names())
    throw Error(ErrorKind::DimensionMismatch, "W must live on Gamma_" + std::to_string(n) + "(" + std::to_string(C) +
                                                  ") with " + std::to_string(frame.coords.size()) + " coordinates");
  const std::size_t beta = ab.beta.get_ui();
  const std::size_t small = n * (m + 1);

  AxiomReport rep;
  std::vector<std::size_t> keep(beta);
  for (std::size_t k = 0; k < beta; ++k) keep[k] = k;
  rep.pi = eliminate(W, keep, limits);

  // pi(W) as a variety in plain variables z_1..z_beta.
  std::vector<std::string> znames;
  for (std::size_t j = 1; j <= beta; ++j) znames.push_back("z" + std::to_string(j));
  auto zring = std::make_shared<const AlgRing>(K, znames);
  std::vector<std::optional<std::size_t>> ident(beta);
  for (std::size_t k = 0; k < beta; ++k) ident[k] = k;
  std::vector<AlgPoly> zgens;
  for (const auto& g : rep.pi.gens()) zgens.push_back(g.remap(zring, ident));
  rep.tau = prolongation_tau(AlgIdeal(zring, std::move(zgens)), 1);

  // phi: z_j -> x^{xi_j}_{i_j}, d_k(z_j) -> x^{xi_j + e_k}_{i_j}.
  const JetRing zjets = make_jets(K, znames, 1);
  std::vector<std::optional<std::size_t>> phi(zjets.coords.size());
  for (std::size_t k = 0; k < zjets.coords.size(); ++k) {
    const RankedVar& zv = zjets.coords[k];
    const RankedVar& base = frame.coords[zv.var - 1];
    phi[k] = frame.index_of(base.shifted(zv.index));
  }
  rep.holds = true;
  for (const auto& g : rep.tau.gens()) {
    if (!radical_member(g.remap(ring, phi), W, limits)) {
      rep.holds = false;
      rep.failing_generator = g.to_string();
      break;
    }
  }

  std::vector<std::size_t> keep_psi(std::min(small, frame.coords.size()));
  for (std::size_t k = 0; k < keep_psi.size(); ++k) keep_psi[k] = k;
  rep.psi = eliminate(W, keep_psi, limits);
  return rep;
}

}  // namespace diffkit

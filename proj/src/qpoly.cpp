#include "diffkit/qpoly.hpp"

#include "diffkit/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <unordered_map>

namespace diffkit {

namespace {

// Descending graded-lex.
bool term_greater(const QPoly::Term& a, const QPoly::Term& b) {
  if (a.deg != b.deg) return a.deg > b.deg;
  return a.e > b.e;
}

bool same_monomial(const QPoly::Term& a, const QPoly::Term& b) {
  return a.deg == b.deg && a.e == b.e;
}

unsigned degree_of(const QPoly::Exponents& e) {
  unsigned d = 0;
  for (auto v : e) d += v;
  return d;
}

void check_vars(const QPoly& a, const QPoly& b) {
  if (a.nvars() != b.nvars())
    throw Error(ErrorKind::Usage, "polynomials over different numbers of parameters");
}

// Arithmetic modulo the Mersenne prime 2^61 - 1, for the coprimality filter.
constexpr std::uint64_t kPrime = (std::uint64_t(1) << 61) - 1;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % kPrime);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  for (; e; e >>= 1, a = mul_mod(a, a))
    if (e & 1) r = mul_mod(r, a);
  return r;
}

std::uint64_t inv_mod(std::uint64_t a) { return pow_mod(a, kPrime - 2); }

std::optional<std::uint64_t> rational_mod(const Rational& q) {
  const std::uint64_t den = mpz_fdiv_ui(q.get_den_mpz_t(), kPrime);
  if (den == 0) return std::nullopt;
  return mul_mod(mpz_fdiv_ui(q.get_num_mpz_t(), kPrime), inv_mod(den));
}

using ModPoly = std::vector<std::uint64_t>;  // dense in the main variable, trimmed

void trim(ModPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// f with every variable but j specialized to pt, reduced mod p; nullopt when a
// denominator vanishes.
std::optional<ModPoly> specialize(const QPoly& f, std::size_t j, const std::vector<std::uint64_t>& pt) {
  ModPoly out(f.degree_in(j) + 1, 0);
  for (const auto& t : f.terms()) {
    auto c = rational_mod(t.c);
    if (!c) return std::nullopt;
    std::uint64_t v = *c;
    for (std::size_t k = 0; k < pt.size(); ++k)
      if (k != j && t.e[k]) v = mul_mod(v, pow_mod(pt[k], t.e[k]));
    out[t.e[j]] = (out[t.e[j]] + v) % kPrime;
  }
  return out;
}

std::size_t mod_gcd_degree(ModPoly a, ModPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    const std::uint64_t inv = inv_mod(b.back());
    while (a.size() >= b.size()) {
      const std::uint64_t q = mul_mod(a.back(), inv);
      const std::size_t shift = a.size() - b.size();
      for (std::size_t k = 0; k < b.size(); ++k)
        a[k + shift] = (a[k + shift] + kPrime - mul_mod(q, b[k])) % kPrime;
      trim(a);
    }
    std::swap(a, b);
  }
  return a.empty() ? 0 : a.size() - 1;
}

// Whether b divides a in F_p[x] (b nonzero).
bool mod_divides(ModPoly a, ModPoly b) {
  trim(a);
  trim(b);
  const std::uint64_t inv = inv_mod(b.back());
  while (a.size() >= b.size()) {
    const std::uint64_t q = mul_mod(a.back(), inv);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t k = 0; k < b.size(); ++k) a[k + shift] = (a[k + shift] + kPrime - mul_mod(q, b[k])) % kPrime;
    trim(a);
  }
  return a.empty();
}

std::vector<std::uint64_t> fixed_point(std::size_t nvars) {
  std::vector<std::uint64_t> pt(nvars);
  for (std::size_t k = 0; k < nvars; ++k) pt[k] = 1000003 + 7919 * k * k + 104729 * k;
  return pt;
}

// Necessary condition for d | f: the images with all but u_j fixed divide.
bool may_divide(const QPoly& f, const QPoly& d) {
  std::size_t j = 0;
  while (j < d.nvars() && d.degree_in(j) == 0) ++j;
  if (j == d.nvars()) return true;
  const auto pt = fixed_point(d.nvars());
  auto sf = specialize(f, j, pt), sd = specialize(d, j, pt);
  if (!sf || !sd) return true;
  trim(*sd);
  if (sd->empty()) return true;
  return mod_divides(*sf, *sd);
}

}  // namespace

QPoly::QPoly(std::size_t nvars, const Rational& c) : nvars_(nvars) {
  if (c != 0) terms_.push_back({Exponents(nvars, 0), 0, c});
}

QPoly QPoly::variable(std::size_t nvars, std::size_t j) {
  QPoly out(nvars);
  Exponents e(nvars, 0);
  e.at(j) = 1;
  out.terms_.push_back({std::move(e), 1, Rational(1)});
  return out;
}

QPoly QPoly::monomial(const Exponents& e, const Rational& c) {
  QPoly out(e.size());
  if (c != 0) out.terms_.push_back({e, degree_of(e), c});
  return out;
}

QPoly QPoly::from_terms(std::size_t nvars, std::vector<Term> terms) {
  QPoly out(nvars);
  for (auto& t : terms) t.deg = degree_of(t.e);
  out.terms_ = std::move(terms);
  out.normalize();
  return out;
}

bool QPoly::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().deg == 0);
}

bool QPoly::is_one() const noexcept {
  return terms_.size() == 1 && terms_.front().deg == 0 && terms_.front().c == 1;
}

Rational QPoly::constant_term() const {
  if (!terms_.empty() && terms_.back().deg == 0) return terms_.back().c;
  return 0;
}

unsigned QPoly::degree_in(std::size_t j) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.e[j]);
  return d;
}

unsigned QPoly::total_degree() const { return terms_.empty() ? 0 : terms_.front().deg; }

void QPoly::normalize() {
  std::sort(terms_.begin(), terms_.end(), term_greater);
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && same_monomial(out.back(), t)) {
      out.back().c += t.c;
    } else {
      if (!out.empty() && out.back().c == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().c == 0) out.pop_back();
  terms_ = std::move(out);
}

QPoly QPoly::operator-() const {
  QPoly out(*this);
  for (auto& t : out.terms_) t.c = -t.c;
  return out;
}

QPoly QPoly::operator+(const QPoly& o) const {
  check_vars(*this, o);
  QPoly out(nvars_);
  out.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && term_greater(terms_[i], o.terms_[j]))) {
      out.terms_.push_back(terms_[i++]);
    } else if (i == terms_.size() || term_greater(o.terms_[j], terms_[i])) {
      out.terms_.push_back(o.terms_[j++]);
    } else {
      Rational c = terms_[i].c + o.terms_[j].c;
      if (c != 0) out.terms_.push_back({terms_[i].e, terms_[i].deg, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

QPoly QPoly::operator-(const QPoly& o) const { return *this + (-o); }

QPoly QPoly::operator*(const QPoly& o) const {
  check_vars(*this, o);
  QPoly out(nvars_);
  if (is_zero() || o.is_zero()) return out;
  if (nvars_ <= 3 && total_degree() + o.total_degree() < 0xffff) {
    // (deg, e_1, e_2, e_3) in 16-bit fields: integer order is the term order
    // and packing is additive, so products never touch exponent vectors.
    auto pack = [&](const Term& t) {
      std::uint64_t key = t.deg;
      for (std::size_t k = 0; k < 3; ++k) key = (key << 16) | (k < nvars_ ? t.e[k] : 0);
      return key;
    };
    std::vector<std::uint64_t> ka, kb;
    for (const auto& t : terms_) ka.push_back(pack(t));
    for (const auto& t : o.terms_) kb.push_back(pack(t));
    std::unordered_map<std::uint64_t, Rational> acc;
    acc.reserve(terms_.size() + o.terms_.size());
    Rational prod;
    for (std::size_t i = 0; i < terms_.size(); ++i)
      for (std::size_t j = 0; j < o.terms_.size(); ++j) {
        mpq_mul(prod.get_mpq_t(), terms_[i].c.get_mpq_t(), o.terms_[j].c.get_mpq_t());
        auto [it, fresh] = acc.try_emplace(ka[i] + kb[j]);
        if (fresh)
          mpq_swap(it->second.get_mpq_t(), prod.get_mpq_t());
        else
          it->second += prod;
      }
    std::vector<std::pair<std::uint64_t, Rational*>> keys;
    keys.reserve(acc.size());
    for (auto& [k, c] : acc)
      if (c != 0) keys.emplace_back(k, &c);
    std::sort(keys.begin(), keys.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
    out.terms_.reserve(keys.size());
    for (const auto& [k, c] : keys) {
      Term t{Exponents(nvars_), static_cast<unsigned>(k >> 48), Rational()};
      for (std::size_t v = 0; v < nvars_; ++v) t.e[v] = static_cast<unsigned>((k >> (32 - 16 * v)) & 0xffff);
      mpq_swap(t.c.get_mpq_t(), c->get_mpq_t());
      out.terms_.push_back(std::move(t));
    }
    return out;
  }
  out.terms_.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) {
      Exponents e(nvars_);
      for (std::size_t k = 0; k < nvars_; ++k) e[k] = a.e[k] + b.e[k];
      out.terms_.push_back({std::move(e), a.deg + b.deg, a.c * b.c});
    }
  }
  out.normalize();
  return out;
}

QPoly QPoly::operator*(const Rational& c) const {
  if (c == 0) return QPoly(nvars_);
  QPoly out(*this);
  for (auto& t : out.terms_) t.c *= c;
  return out;
}

QPoly QPoly::pow(unsigned k) const {
  QPoly out(nvars_, 1);
  QPoly base = *this;
  while (k) {
    if (k & 1) out *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return out;
}

QPoly QPoly::partial(std::size_t j) const {
  QPoly out(nvars_);
  for (const auto& t : terms_) {
    if (t.e[j] == 0) continue;
    Term d = t;
    d.c *= t.e[j];
    d.e[j] -= 1;
    d.deg -= 1;
    out.terms_.push_back(std::move(d));
  }
  // Lowering the same exponent keeps relative order among the survivors.
  out.normalize();
  return out;
}

std::optional<QPoly> QPoly::divide_exact(const QPoly& d) const {
  check_vars(*this, d);
  if (d.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
  if (d.is_constant()) return *this * (Rational(1) / d.terms_.front().c);
  if (is_zero()) return QPoly(nvars_);
  for (std::size_t k = 0; k < nvars_; ++k)
    if (d.degree_in(k) > degree_in(k)) return std::nullopt;
  if (!may_divide(*this, d)) return std::nullopt;

  auto greater = [](const Exponents& a, const Exponents& b) {
    const unsigned da = degree_of(a), db = degree_of(b);
    return da != db ? da > db : a > b;
  };
  std::map<Exponents, Rational, decltype(greater)> r(greater);
  for (const auto& t : terms_) r.emplace(t.e, t.c);
  const Term& ld = d.terms_.front();
  std::vector<Term> q;
  Exponents e(nvars_);
  while (!r.empty()) {
    auto lead = r.begin();
    for (std::size_t k = 0; k < nvars_; ++k) {
      if (lead->first[k] < ld.e[k]) return std::nullopt;
      e[k] = lead->first[k] - ld.e[k];
    }
    const Rational c = lead->second / ld.c;
    q.push_back({e, degree_of(e), c});
    for (const auto& t : d.terms_) {
      Exponents f(nvars_);
      for (std::size_t k = 0; k < nvars_; ++k) f[k] = t.e[k] + e[k];
      auto [it, fresh] = r.try_emplace(std::move(f), 0);
      it->second -= c * t.c;
      if (it->second == 0) r.erase(it);
    }
  }
  return from_terms(nvars_, std::move(q));
}

QPoly QPoly::monic() const {
  if (is_zero()) return *this;
  return *this * (Rational(1) / leading_coeff());
}

bool QPoly::operator==(const QPoly& o) const {
  if (nvars_ != o.nvars_ || terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].e != o.terms_[i].e || terms_[i].c != o.terms_[i].c) return false;
  return true;
}

std::string QPoly::to_string(const std::function<std::string(std::size_t)>& names) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    const bool neg = t.c < 0;
    Rational mag = abs(t.c);
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (std::size_t j = 0; j < nvars_; ++j) {
      if (t.e[j] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names(j);
      if (t.e[j] > 1) mono += "^" + std::to_string(t.e[j]);
    }
    if (mono.empty()) {
      out += diffkit::to_string(mag);
    } else if (mag == 1) {
      out += mono;
    } else {
      out += diffkit::to_string(mag) + "*" + mono;
    }
  }
  return out;
}

std::string QPoly::to_string() const {
  return to_string([](std::size_t j) { return "u" + std::to_string(j + 1); });
}

// ---------------------------------------------------------------------------
// gcd via primitive polynomial remainder sequences, recursive in the variables.

namespace {

using Univariate = std::vector<QPoly>;  // coefficient of u_j^k at index k

Univariate to_univariate(const QPoly& f, std::size_t j) {
  Univariate out(f.degree_in(j) + 1, QPoly(f.nvars()));
  std::vector<std::vector<QPoly::Term>> buckets(out.size());
  for (const auto& t : f.terms()) {
    QPoly::Term s = t;
    const unsigned k = s.e[j];
    s.e[j] = 0;
    s.deg -= k;
    buckets[k].push_back(std::move(s));
  }
  for (std::size_t k = 0; k < out.size(); ++k) {
    QPoly c(f.nvars());
    for (auto& t : buckets[k]) c += QPoly::monomial(t.e, t.c);
    out[k] = std::move(c);
  }
  return out;
}

QPoly from_univariate(const Univariate& u, std::size_t nvars, std::size_t j) {
  QPoly out(nvars);
  QPoly x = QPoly::variable(nvars, j);
  QPoly xp(nvars, 1);
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (!u[k].is_zero()) out += u[k] * xp;
    if (k + 1 < u.size()) xp *= x;
  }
  return out;
}

void trim(Univariate& u) {
  while (!u.empty() && u.back().is_zero()) u.pop_back();
}

QPoly content(const Univariate& u) {
  QPoly g(u.empty() ? 0 : u.front().nvars());
  for (const auto& c : u) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

// Scales u to integer coefficients with gcd 1. Without this the remainder
// sequence over Q grows its numbers exponentially.
void clear_numeric_content(Univariate& u) {
  Integer num = 0, den = 1;
  for (const auto& k : u)
    for (const auto& t : k.terms()) {
      mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.c.get_num_mpz_t());
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.c.get_den_mpz_t());
    }
  if (num == 0 || (num == 1 && den == 1)) return;
  Rational s(den, num);
  s.canonicalize();
  for (auto& k : u) k = k * s;
}

Univariate primitive(Univariate u) {
  QPoly c = content(u);
  if (!c.is_zero() && !c.is_one())
    for (auto& k : u)
      if (!k.is_zero()) k = *k.divide_exact(c);
  clear_numeric_content(u);
  return u;
}

// Pseudo-remainder of a by b (deg a >= deg b >= 1).
Univariate prem(Univariate a, const Univariate& b) {
  const std::size_t db = b.size() - 1;
  const QPoly& lb = b.back();
  int e = static_cast<int>(a.size()) - static_cast<int>(db);
  while (!a.empty() && a.size() - 1 >= db) {
    const std::size_t shift = a.size() - 1 - db;
    QPoly la = a.back();
    for (auto& c : a) c *= lb;
    for (std::size_t k = 0; k <= db; ++k) a[k + shift] -= la * b[k];
    trim(a);
    --e;
  }
  if (e > 0) {
    QPoly s = lb.pow(static_cast<unsigned>(e));
    for (auto& c : a) c *= s;
  }
  return a;
}

std::vector<bool> used_vars(const QPoly& f) {
  std::vector<bool> used(f.nvars(), false);
  for (const auto& t : f.terms())
    for (std::size_t j = 0; j < f.nvars(); ++j)
      if (t.e[j]) used[j] = true;
  return used;
}

QPoly content_in(const QPoly& f, std::size_t j) { return content(to_univariate(f, j)); }

// True only when gcd(a, b) certainly does not involve u_j: some specialization
// keeps the leading coefficient of a in u_j and has coprime images. The leading
// coefficient of a common factor divides that of a, so the factor's degree in
// u_j survives specialization.
bool coprime_in(const QPoly& a, const QPoly& b, std::size_t j) {
  std::uint64_t seed = 0x9e3779b97f4a7c15ull ^ (a.terms().size() * 31 + b.terms().size());
  for (int attempt = 0; attempt < 2; ++attempt) {
    std::vector<std::uint64_t> pt(a.nvars());
    for (auto& x : pt) {
      seed += 0x9e3779b97f4a7c15ull;
      std::uint64_t z = seed;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
      x = (z ^ (z >> 31)) % kPrime;
    }
    auto sa = specialize(a, j, pt), sb = specialize(b, j, pt);
    if (!sa || !sb || sa->back() == 0) continue;
    return mod_gcd_degree(*sa, *sb) == 0;
  }
  return false;
}


// Heuristic gcd over Z: evaluate one variable at a large integer xi, take the
// gcd of the images recursively and read the answer back xi-adically. With
// xi >= 2 min(|f|, |g|) + 2 (max-norms) a reconstruction dividing both inputs
// is the gcd, so every returned value is exact; nullopt sends the caller to
// the remainder sequence.

Integer max_norm(const QPoly& f) {
  Integer n = 0;
  for (const auto& t : f.terms())
    if (abs(t.c.get_num()) > n) n = abs(t.c.get_num());
  return n;
}

Integer integer_content(const QPoly& f) {
  Integer g = 0;
  for (const auto& t : f.terms()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_num_mpz_t());
  return g;
}

// Integer coefficients with gcd 1.
QPoly integer_primitive(const QPoly& f) {
  Univariate u{f};
  clear_numeric_content(u);
  return u.front();
}

QPoly substitute_integer(const QPoly& f, std::size_t j, const Integer& xi) {
  std::vector<Integer> powers{Integer(1)};
  std::vector<QPoly::Term> terms;
  terms.reserve(f.terms().size());
  for (const auto& t : f.terms()) {
    while (powers.size() <= t.e[j]) powers.push_back(powers.back() * xi);
    QPoly::Term s = t;
    s.c *= powers[t.e[j]];
    s.e[j] = 0;
    terms.push_back(std::move(s));
  }
  return QPoly::from_terms(f.nvars(), std::move(terms));
}

QPoly reconstruct(const QPoly& h, std::size_t j, const Integer& xi) {
  const Integer half = xi / 2;
  std::vector<QPoly::Term> terms;
  for (const auto& t : h.terms()) {
    Integer c = t.c.get_num();
    for (unsigned k = 0; c != 0; ++k) {
      Integer r;
      mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), xi.get_mpz_t());
      if (r > half) r -= xi;
      if (r != 0) {
        QPoly::Term s{t.e, 0, Rational(r)};
        s.e[j] = k;
        terms.push_back(std::move(s));
      }
      c = (c - r) / xi;
    }
  }
  return QPoly::from_terms(h.nvars(), std::move(terms));
}

std::optional<QPoly> heuristic_gcd(const QPoly& f0, const QPoly& g0) {
  const std::size_t nv = f0.nvars();
  const Integer cf = integer_content(f0), cg = integer_content(g0);
  Integer c;
  mpz_gcd(c.get_mpz_t(), cf.get_mpz_t(), cg.get_mpz_t());
  if (f0.is_constant() || g0.is_constant()) return QPoly(nv, Rational(c));
  const QPoly f = f0 * Rational(Integer(1), cf), g = g0 * Rational(Integer(1), cg);

  const auto uf = used_vars(f), ug = used_vars(g);
  std::size_t j = 0;
  while (!uf[j] && !ug[j]) ++j;

  Integer xi = 2 * std::min(max_norm(f), max_norm(g)) + 2;
  for (int attempt = 0; attempt < 4; ++attempt, xi = xi * 73794 / 27011 + 1) {
    const QPoly ff = substitute_integer(f, j, xi), gg = substitute_integer(g, j, xi);
    if (ff.is_zero() || gg.is_zero()) continue;
    auto h = heuristic_gcd(ff, gg);
    if (!h) continue;
    QPoly H = reconstruct(*h, j, xi);
    if (H.is_zero()) continue;
    H = integer_primitive(H);
    if (f.divide_exact(H) && g.divide_exact(H)) return H * Rational(c);
  }
  return std::nullopt;
}

}  // namespace

QPoly gcd(const QPoly& a, const QPoly& b) {
  check_vars(a, b);
  const std::size_t nv = a.nvars();
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return QPoly(nv, 1);
  if (a == b) return a.monic();

  const auto ua = used_vars(a), ub = used_vars(b);
  // A variable present on one side only cannot occur in the gcd.
  for (std::size_t j = 0; j < nv; ++j) {
    if (ua[j] && !ub[j]) return gcd(content_in(a, j), b);
    if (ub[j] && !ua[j]) return gcd(a, content_in(b, j));
  }

  if (a.terms().size() <= b.terms().size()) {
    if (auto q = b.divide_exact(a)) return a.monic();
  } else {
    if (auto q = a.divide_exact(b)) return b.monic();
  }

  std::size_t j = nv;
  unsigned best = ~0u;
  for (std::size_t k = 0; k < nv; ++k) {
    if (!ua[k]) continue;
    const unsigned d = std::max(a.degree_in(k), b.degree_in(k));
    if (d < best) {
      best = d;
      j = k;
    }
  }

  // A nonconstant gcd has positive degree in some variable.
  bool coprime = true;
  for (std::size_t k = 0; k < nv && coprime; ++k)
    if (ua[k]) coprime = coprime_in(a, b, k);
  if (coprime) return QPoly(nv, 1);
  if (coprime_in(a, b, j)) return gcd(content_in(a, j), content_in(b, j));
  if (auto h = heuristic_gcd(integer_primitive(a), integer_primitive(b))) return h->monic();

  Univariate A = to_univariate(a, j), B = to_univariate(b, j);
  const QPoly ca = content(A), cb = content(B);
  const QPoly c = gcd(ca, cb);
  A = primitive(std::move(A));
  B = primitive(std::move(B));
  if (A.size() < B.size()) std::swap(A, B);
  Univariate g;
  while (true) {
    if (B.size() == 1) {
      g = Univariate{QPoly(nv, 1)};
      break;
    }
    Univariate r = prem(A, B);
    if (r.empty()) {
      g = B;
      break;
    }
    A = std::move(B);
    B = primitive(std::move(r));
  }
  return (c * from_univariate(g, nv, j)).monic();
}

}  // namespace diffkit

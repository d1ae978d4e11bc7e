#include "diffkit/charset.hpp"

#include "diffkit/errors.hpp"

#include <algorithm>
#include <map>

namespace diffkit {

CharSet::CharSet(std::vector<DiffPoly> elems) : elems_(std::move(elems)) {
  if (elems_.empty()) throw Error(ErrorKind::Usage, "a characteristic set needs at least one element");
  ctx_ = elems_.front().ctx();
  n_ = elems_.front().n();
  for (const auto& f : elems_) {
    if (f.is_constant()) throw Error(ErrorKind::ConstantPolynomial, "autoreduced sets contain no constants");
    if (f.n() != n_) throw Error(ErrorKind::DimensionMismatch, "elements over different variable counts");
  }
  std::stable_sort(elems_.begin(), elems_.end(),
                   [](const DiffPoly& a, const DiffPoly& b) { return compare_rank(a, b) < 0; });
  for (std::size_t i = 0; i < elems_.size(); ++i)
    for (std::size_t j = 0; j < elems_.size(); ++j)
      if (i != j && !is_reduced(elems_[i], elems_[j]))
        throw Error(ErrorKind::NotAutoreduced,
                    elems_[i].to_string() + " is not reduced with respect to " + elems_[j].to_string());
  h_ = DiffPoly::constant(ctx_, n_, Rational(1));
  for (const auto& f : elems_) {
    anatomy_.push_back(anatomy(f));
    h_ = h_ * anatomy_.back().initial * anatomy_.back().separant;
  }
}

int CharSet::order() const {
  int best = -1;
  for (const auto& f : elems_) best = std::max(best, f.order());
  return best;
}

bool CharSet::is_explicit() const {
  for (const auto& a : anatomy_) {
    if (a.degree != 1) return false;
    auto s = a.separant.is_constant() ? std::optional<DiffScalar>(a.separant.constant_term()) : std::nullopt;
    if (!s || !s->is_one()) return false;
  }
  return true;
}

namespace {

// Multiplies every recorded multiplier and the premultiplier by s.
void scale(DivisionResult& d, const DiffPoly& s) {
  if (s.is_constant() && s.constant_term().is_one()) return;
  d.premultiplier = d.premultiplier * s;
  for (auto& t : d.certificate) t.multiplier = t.multiplier * s;
}

// Pseudo-divides r by h in the variable w (h has degree dh > 0 in w with
// leading coefficient lc_h) until deg_w(r) < dh.
void pseudo_reduce(DivisionResult& d, const DiffPoly& h, const RankedVar& w, unsigned dh, const DiffPoly& lc_h,
                   const MultiIndex& theta, std::size_t element, bool separant) {
  const CtxPtr& ctx = h.ctx();
  for (unsigned deg = d.remainder.degree_in(w); deg >= dh; deg = d.remainder.degree_in(w)) {
    DiffPoly lc = d.remainder.coeff_in(w, deg);
    const DiffPoly q = lc * DiffPoly::var(ctx, h.n(), w, deg - dh);
    scale(d, lc_h);
    if (!(lc_h.is_constant() && lc_h.constant_term().is_one())) d.factors.emplace_back(element, separant);
    d.remainder = lc_h * d.remainder - q * h;
    d.certificate.push_back({q, theta, element});
  }
}

}  // namespace

DivisionResult diff_divide(const DiffPoly& g, const CharSet& lambda) {
  DivisionResult d;
  d.premultiplier = DiffPoly::constant(g.ctx(), g.n(), Rational(1));
  d.remainder = g;
  const auto& elems = lambda.elems();
  const auto& an = lambda.anatomies();
  const std::size_t m = g.m();

  for (;;) {
    if (d.remainder.is_zero()) break;
    // Highest symbol of r that is a proper derivative of some leader.
    bool found = false;
    RankedVar w;
    std::size_t fi = 0;
    for (const auto& v : d.remainder.variables()) {  // descending
      for (std::size_t k = elems.size(); k-- > 0;) {  // highest rank first
        if (v.is_proper_derivative_of(an[k].leader)) {
          found = true;
          w = v;
          fi = k;
          break;
        }
      }
      if (found) break;
    }
    if (found) {
      const MultiIndex theta = w.index - an[fi].leader.index;
      const DiffPoly h = elems[fi].derive(theta);
      // delta^theta f is linear in w with coefficient S_f.
      pseudo_reduce(d, h, w, 1, an[fi].separant, theta, fi, true);
      continue;
    }
    bool reduced_all = true;
    for (std::size_t k = elems.size(); k-- > 0;) {
      if (d.remainder.degree_in(an[k].leader) >= an[k].degree) {
        pseudo_reduce(d, elems[k], an[k].leader, an[k].degree, an[k].initial, MultiIndex(m), k, false);
        reduced_all = false;
        break;
      }
    }
    if (reduced_all) break;
  }
  return d;
}

DiffPoly expand_certificate(const DivisionResult& d, const CharSet& lambda) {
  DiffPoly sum(d.remainder.ctx(), d.remainder.n());
  for (const auto& t : d.certificate) sum += t.multiplier * lambda.elems()[t.element].derive(t.theta);
  return sum;
}

std::vector<DiffPoly> prolong_set(const CharSet& lambda, unsigned r) {
  std::vector<DiffPoly> out;
  const std::size_t m = lambda.ctx()->m();
  for (const auto& f : lambda.elems()) {
    const int o = f.order();
    if (o > static_cast<int>(r))
      throw Error(ErrorKind::OrderExceeded, f.to_string() + " has order " + std::to_string(o) + " > " +
                                                std::to_string(r));
    std::map<MultiIndex, DiffPoly, GradedLess> memo;
    for (const auto& xi : indices_up_to(m, r - static_cast<unsigned>(std::max(o, 0)))) {
      DiffPoly p;
      if (xi.is_zero()) {
        p = f;
      } else {
        std::size_t k = 0;
        while (xi[k] == 0) ++k;
        p = memo.at(xi - MultiIndex::unit(m, k)).derive(k);
      }
      memo.emplace(xi, p);
      if (std::none_of(out.begin(), out.end(), [&](const DiffPoly& q) { return q == p; })) out.push_back(p);
    }
  }
  return out;
}

StructureSplit structure_split(const CharSet& lambda, unsigned r, unsigned s) {
  if (s < r) throw Error(ErrorKind::OrderExceeded, "structure split needs s >= r");
  if (lambda.order() > static_cast<int>(r)) throw Error(ErrorKind::OrderExceeded, "set has order above r");
  StructureSplit out;
  for (const auto& v : gamma_set(lambda.n(), s, lambda.ctx()->m())) {
    if (v.order() <= r) continue;
    bool above = false;
    for (const auto& a : lambda.anatomies()) above = above || v.is_derivative_of(a.leader);
    (above ? out.theta2 : out.theta1).push_back(v);
  }
  return out;
}

}  // namespace diffkit

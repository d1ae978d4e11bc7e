#pragma once

#include "diffkit/diffpoly.hpp"

#include <vector>

namespace diffkit {

/// An autoreduced set, sorted by nondecreasing rank, with its anatomy cached.
/// Minimality as a characteristic set of some prime ideal is the caller's promise.
class CharSet {
public:
  /// Throws ConstantPolynomial for a constant element and NotAutoreduced when
  /// some element is not reduced with respect to another.
  explicit CharSet(std::vector<DiffPoly> elems);

  const std::vector<DiffPoly>& elems() const noexcept { return elems_; }
  const std::vector<Anatomy>& anatomies() const noexcept { return anatomy_; }
  std::size_t size() const noexcept { return elems_.size(); }
  bool empty() const noexcept { return elems_.empty(); }
  const CtxPtr& ctx() const noexcept { return ctx_; }
  unsigned n() const noexcept { return n_; }
  /// prod_f I_f * S_f.
  const DiffPoly& H() const noexcept { return h_; }
  /// Highest order of an element (-1 for the empty set).
  int order() const;
  /// Every element reads v_f - g with g below v_f in rank.
  bool is_explicit() const;

private:
  std::vector<DiffPoly> elems_;
  std::vector<Anatomy> anatomy_;
  CtxPtr ctx_;
  unsigned n_ = 0;
  DiffPoly h_;
};

/// One summand multiplier * delta^theta(elems[element]) of a certificate.
struct CertificateTerm {
  DiffPoly multiplier;
  MultiIndex theta;
  std::size_t element = 0;
};

/// premultiplier * g - remainder = sum of the certificate terms.
struct DivisionResult {
  DiffPoly premultiplier;
  /// The factors multiplied in, in order: (element, true for a separant).
  std::vector<std::pair<std::size_t, bool>> factors;
  DiffPoly remainder;
  std::vector<CertificateTerm> certificate;
};

/// Ritt-Kolchin reduction: proper derivatives of leaders are removed first,
/// highest first, then the degree in each leader is lowered, highest-rank
/// element first.
DivisionResult diff_divide(const DiffPoly& g, const CharSet& lambda);

/// Expands the certificate sum; equals premultiplier * g - remainder.
DiffPoly expand_certificate(const DivisionResult& d, const CharSet& lambda);

/// All delta^xi f, f in lambda, of order <= r (deduplicated). Throws
/// OrderExceeded if an element already has order > r.
std::vector<DiffPoly> prolong_set(const CharSet& lambda, unsigned r);

struct StructureSplit {
  std::vector<RankedVar> theta1;  // not a derivative of any leader
  std::vector<RankedVar> theta2;
};

/// Partitions the symbols of order in (r, s] by whether they lie above a leader.
StructureSplit structure_split(const CharSet& lambda, unsigned r, unsigned s);

}  // namespace diffkit

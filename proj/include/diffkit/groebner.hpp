#pragma once

#include "diffkit/scalars.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace diffkit {

using Exponents = std::vector<unsigned>;

/// Polynomial ring K[y_0..y_{k-1}] with a monomial order. Variables are listed
/// ascending: a higher index is a larger variable. Without an elimination
/// block the order is grevlex; with one, monomials compare by grevlex on the
/// block variables first and grevlex on the rest second.
class AlgRing {
public:
  AlgRing(CtxPtr coeffs, std::vector<std::string> names, std::vector<bool> eliminate = {});

  const CtxPtr& coeffs() const noexcept { return coeffs_; }
  std::size_t nvars() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::vector<bool>& block() const noexcept { return block_; }
  bool is_block_order() const noexcept { return !block_.empty(); }
  std::optional<std::size_t> index_of(const std::string& name) const;

  /// Negative, zero, positive as a is below, equal to, above b.
  int compare(const Exponents& a, const Exponents& b) const;

  /// The same variables and field with a different order.
  std::shared_ptr<const AlgRing> with_block(std::vector<bool> eliminate) const;
  /// Appends a variable that is eliminated before everything else.
  std::shared_ptr<const AlgRing> with_extra_variable(const std::string& name) const;

  bool same_as(const AlgRing& o) const;

private:
  CtxPtr coeffs_;
  std::vector<std::string> names_;
  std::vector<bool> block_;
};
using RingPtr = std::shared_ptr<const AlgRing>;

class AlgPoly {
public:
  struct Term {
    Exponents e;
    unsigned deg = 0;
    DiffScalar c;
  };

  AlgPoly() = default;
  explicit AlgPoly(RingPtr ring);
  static AlgPoly constant(RingPtr ring, const DiffScalar& c);
  static AlgPoly variable(RingPtr ring, std::size_t k);
  static AlgPoly monomial(RingPtr ring, Exponents e, const DiffScalar& c);
  /// Unordered terms are summed and sorted.
  static AlgPoly from_terms(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring() const noexcept { return ring_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  const Term& leading() const { return terms_.front(); }
  unsigned total_degree() const;
  bool uses_variable(std::size_t k) const;

  AlgPoly operator-() const;
  AlgPoly operator+(const AlgPoly& o) const;
  AlgPoly operator-(const AlgPoly& o) const;
  AlgPoly operator*(const AlgPoly& o) const;
  AlgPoly operator*(const DiffScalar& c) const;
  AlgPoly& operator+=(const AlgPoly& o) { return *this = *this + o; }
  AlgPoly pow(unsigned k) const;
  /// Leading coefficient 1 (zero stays zero).
  AlgPoly monic() const;

  /// Everything but the leading term.
  AlgPoly drop_leading() const;
  /// this - c * y^shift * g, the reduction step.
  AlgPoly minus_scaled(const DiffScalar& c, const Exponents& shift, const AlgPoly& g) const;

  /// The same polynomial in another ring; `map[k]` is the target index of
  /// variable k (every used variable must be mapped).
  AlgPoly remap(RingPtr target, const std::vector<std::optional<std::size_t>>& map) const;
  /// Reinterprets in a ring with the same variables and a different order.
  AlgPoly reorder(RingPtr target) const;

  bool operator==(const AlgPoly& o) const;
  std::string to_string() const;

private:
  void sort_terms();
  RingPtr ring_;
  std::vector<Term> terms_;
};

struct GroebnerLimits {
  std::size_t max_basis = 4000;
  unsigned max_degree = 60;
  std::size_t max_pairs = 200000;
};

/// Process-wide defaults, adjustable by the CLI.
GroebnerLimits& default_limits();

class AlgIdeal {
public:
  AlgIdeal() = default;
  AlgIdeal(RingPtr ring, std::vector<AlgPoly> gens);

  const RingPtr& ring() const noexcept { return ring_; }
  const std::vector<AlgPoly>& gens() const noexcept { return gens_; }
  bool is_groebner() const noexcept { return groebner_; }
  bool is_unit() const;
  bool is_zero() const noexcept { return gens_.empty(); }

  std::vector<std::string> to_strings() const;

private:
  friend AlgIdeal buchberger(const AlgIdeal&, const GroebnerLimits&);
  RingPtr ring_;
  std::vector<AlgPoly> gens_;
  bool groebner_ = false;
};

/// Reduced Groebner basis for the ring's order. Throws ResourceLimit.
AlgIdeal buchberger(const AlgIdeal& ideal, const GroebnerLimits& limits = default_limits());

/// Normal form with respect to a Groebner basis.
AlgPoly normal_form(const AlgPoly& f, const AlgIdeal& basis);

bool ideal_member(const AlgPoly& f, const AlgIdeal& ideal, const GroebnerLimits& limits = default_limits());
/// f^k in I for some k, via 1 in I + (1 - z f).
bool radical_member(const AlgPoly& f, const AlgIdeal& ideal, const GroebnerLimits& limits = default_limits());
/// I meet K[keep], presented in the subring on the kept variables (same relative order).
AlgIdeal eliminate(const AlgIdeal& ideal, const std::vector<std::size_t>& keep,
                   const GroebnerLimits& limits = default_limits());
/// I : h^infinity.
AlgIdeal saturate(const AlgIdeal& ideal, const AlgPoly& h, const GroebnerLimits& limits = default_limits());

/// Every generator of `sub` lies in `super`.
bool ideal_contains(const AlgIdeal& super, const AlgIdeal& sub, const GroebnerLimits& limits = default_limits());
bool ideal_equal(const AlgIdeal& a, const AlgIdeal& b, const GroebnerLimits& limits = default_limits());

}  // namespace diffkit

#pragma once

#include "diffkit/rational.hpp"

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace diffkit {

/// Exponent vector (xi_1, ..., xi_m) of a derivative operator delta^xi.
class MultiIndex {
public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t m) : e_(m, 0) {}
  MultiIndex(std::initializer_list<unsigned> e) : e_(e) {}
  explicit MultiIndex(std::vector<unsigned> e) : e_(std::move(e)) {}

  static MultiIndex unit(std::size_t m, std::size_t k);

  std::size_t size() const noexcept { return e_.size(); }
  unsigned operator[](std::size_t k) const { return e_[k]; }
  unsigned& operator[](std::size_t k) { return e_[k]; }
  const std::vector<unsigned>& exponents() const noexcept { return e_; }

  unsigned order() const noexcept;
  bool is_zero() const noexcept;

  /// Product order: every entry of *this is <= the matching entry of other.
  bool leq(const MultiIndex& other) const;

  MultiIndex operator+(const MultiIndex& other) const;
  /// Requires other.leq(*this).
  MultiIndex operator-(const MultiIndex& other) const;

  /// Lexicographic on the entries.
  auto operator<=>(const MultiIndex&) const = default;
  bool operator==(const MultiIndex&) const = default;

private:
  std::vector<unsigned> e_;
};

/// (|a|, a_1, ..., a_m) lexicographically; the printing order for series terms.
struct GradedLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

/// All multi-indices of length m with total order <= r, ascending by GradedLess.
std::vector<MultiIndex> indices_up_to(std::size_t m, unsigned r);

/// The derivative symbol delta^xi x_i; var is 1-based.
struct RankedVar {
  MultiIndex index;
  unsigned var = 1;

  RankedVar() = default;
  RankedVar(MultiIndex xi, unsigned i) : index(std::move(xi)), var(i) {}

  unsigned order() const noexcept { return index.order(); }
  std::size_t m() const noexcept { return index.size(); }

  /// The product order <=: same variable and index below componentwise.
  bool is_derivative_of(const RankedVar& base) const;
  bool is_proper_derivative_of(const RankedVar& base) const;

  RankedVar shifted(const MultiIndex& by) const { return {index + by, var}; }

  bool operator==(const RankedVar&) const = default;
};

/// The canonical orderly ranking: (|xi|, i, xi_1, ..., xi_m) lexicographically.
/// Throws Usage if the two symbols live over a different number of derivations.
std::strong_ordering orderly_cmp(const RankedVar& a, const RankedVar& b);

inline std::strong_ordering operator<=>(const RankedVar& a, const RankedVar& b) {
  return orderly_cmp(a, b);
}

/// Gamma_n(r) sorted ascending by the orderly ranking; its size is n*binom(r+m, m).
std::vector<RankedVar> gamma_set(unsigned n, unsigned r, std::size_t m);

/// prod_k binom(a_k, b_k); zero when b is not below a.
Integer mi_binom(const MultiIndex& a, const MultiIndex& b);
/// prod_k a_k!
Integer mi_factorial(const MultiIndex& a);

/// `base`, `d1(base)` or `D[2,1](base)` for delta^xi applied to a named symbol.
std::string derivative_name(const std::string& base, const MultiIndex& xi);
/// `x2`, `d1(x2)` or `D[2,1](x2)`; `letter` replaces the leading `x`.
std::string to_string(const RankedVar& v, char letter = 'x');

}  // namespace diffkit

#pragma once

#include "diffkit/rational.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace diffkit {

/// Sparse polynomial in Q[u_1, ..., u_p]. Terms are kept sorted descending in
/// graded-lex order (u_1 most significant), which is also the normalization
/// order: `monic()` scales the graded-lex leading coefficient to 1.
class QPoly {
public:
  using Exponents = std::vector<unsigned>;
  struct Term {
    Exponents e;
    unsigned deg = 0;
    Rational c;
  };

  QPoly() = default;
  explicit QPoly(std::size_t nvars) : nvars_(nvars) {}
  QPoly(std::size_t nvars, const Rational& c);

  static QPoly variable(std::size_t nvars, std::size_t j);
  static QPoly monomial(const Exponents& e, const Rational& c);
  /// Sums unordered terms (the `deg` fields are recomputed).
  static QPoly from_terms(std::size_t nvars, std::vector<Term> terms);

  std::size_t nvars() const noexcept { return nvars_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  bool is_one() const noexcept;
  Rational constant_term() const;
  const Rational& leading_coeff() const { return terms_.front().c; }
  unsigned degree_in(std::size_t j) const;
  unsigned total_degree() const;

  QPoly operator-() const;
  QPoly operator+(const QPoly& o) const;
  QPoly operator-(const QPoly& o) const;
  QPoly operator*(const QPoly& o) const;
  QPoly operator*(const Rational& c) const;
  QPoly& operator+=(const QPoly& o) { return *this = *this + o; }
  QPoly& operator-=(const QPoly& o) { return *this = *this - o; }
  QPoly& operator*=(const QPoly& o) { return *this = *this * o; }
  QPoly pow(unsigned k) const;

  QPoly partial(std::size_t j) const;
  /// Quotient if `d` divides *this exactly.
  std::optional<QPoly> divide_exact(const QPoly& d) const;
  QPoly monic() const;

  bool operator==(const QPoly& o) const;

  /// Evaluate at point[j] for u_{j+1}; T needs +, * and construction from Rational
  /// through `lift`.
  template <class T, class Lift>
  T evaluate(const std::vector<T>& point, Lift lift, T zero) const {
    std::vector<std::vector<T>> powers(nvars_);
    T acc = zero;
    for (const auto& t : terms_) {
      T prod = lift(t.c);
      for (std::size_t j = 0; j < nvars_; ++j) {
        if (t.e[j] == 0) continue;
        auto& pw = powers[j];
        if (pw.empty()) pw.push_back(point[j]);
        while (pw.size() < t.e[j]) pw.push_back(pw.back() * point[j]);
        prod = prod * pw[t.e[j] - 1];
      }
      acc = acc + prod;
    }
    return acc;
  }

  /// `names(j)` gives the printed name of u_{j+1}.
  std::string to_string(const std::function<std::string(std::size_t)>& names) const;
  std::string to_string() const;

private:
  void normalize();  // sort, merge, drop zeros
  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

/// Monic gcd in Q[u] (zero only when both inputs are zero).
QPoly gcd(const QPoly& a, const QPoly& b);

}  // namespace diffkit

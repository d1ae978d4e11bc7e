#pragma once

#include "diffkit/qpoly.hpp"

#include <string>
#include <vector>

namespace diffkit {

/// Element of Q(u_1, ..., u_p) as a reduced fraction num/den with monic den.
/// Zero is 0/1. Equality is structural, hence exact.
class RatFun {
public:
  RatFun() = default;
  explicit RatFun(std::size_t nvars) : num_(nvars), den_(nvars, 1) {}
  RatFun(std::size_t nvars, const Rational& c) : num_(nvars, c), den_(nvars, 1) {}
  explicit RatFun(QPoly num) : num_(std::move(num)), den_(num_.nvars(), 1) {}
  /// Reduces; throws DivisionByZero for a zero denominator.
  RatFun(QPoly num, QPoly den);

  static RatFun variable(std::size_t nvars, std::size_t j) {
    return RatFun(QPoly::variable(nvars, j));
  }

  std::size_t nvars() const noexcept { return num_.nvars(); }
  const QPoly& num() const noexcept { return num_; }
  const QPoly& den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_polynomial() const noexcept { return den_.is_one(); }
  bool is_constant() const noexcept { return num_.is_constant() && den_.is_one(); }

  RatFun operator-() const;
  RatFun operator+(const RatFun& o) const;
  RatFun operator-(const RatFun& o) const;
  RatFun operator*(const RatFun& o) const;
  RatFun operator/(const RatFun& o) const;
  /// Scaling keeps the fraction reduced, so no gcd is needed.
  RatFun operator*(const Rational& q) const;
  RatFun inverse() const;

  /// The derivation sum_j images[j] * d/du_j.
  RatFun derive(const std::vector<RatFun>& images) const;

  bool operator==(const RatFun& o) const { return num_ == o.num_ && den_ == o.den_; }

  std::string to_string() const;

private:
  QPoly num_, den_;
};

}  // namespace diffkit

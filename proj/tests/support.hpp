#pragma once

#include "diffkit/diffpoly.hpp"
#include "diffkit/series.hpp"

#include <algorithm>
#include <random>

namespace diffkit::testing {

/// Fixed-seed source so every run sees the same samples.
class Rng {
public:
  explicit Rng(std::uint64_t seed = 20261014) : gen_(seed) {}
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  bool coin() { return uniform(0, 1) == 1; }

private:
  std::mt19937_64 gen_;
};

inline Rational random_rational(Rng& rng) {
  int num = 0;
  while (num == 0) num = rng.uniform(-4, 4);
  Rational q(Integer(num), Integer(rng.uniform(1, 3)));
  q.canonicalize();
  return q;
}

/// Sum of up to `terms` monomials of degree <= max_deg in the parameters.
inline DiffScalar random_poly(const CtxPtr& K, Rng& rng, int terms = 3, int max_deg = 2) {
  DiffScalar acc = K->zero();
  const int p = static_cast<int>(K->num_params());
  const int count = rng.uniform(1, terms);
  for (int k = 0; k < count; ++k) {
    DiffScalar mono = K->constant(random_rational(rng));
    for (int j = 0; j < p; ++j) mono = mono * K->param(j).pow(rng.uniform(0, max_deg));
    acc = acc + mono;
  }
  return acc.is_zero() ? K->one() : acc;
}

/// A polynomial, or a quotient by a small denominator with nonzero constant term.
inline DiffScalar random_element(const CtxPtr& K, Rng& rng) {
  DiffScalar num = random_poly(K, rng);
  if (K->num_params() == 0 || rng.uniform(0, 2) != 0) return num;
  DiffScalar den = K->one() + random_poly(K, rng, 2, 1) * K->param(rng.uniform(0, int(K->num_params()) - 1));
  if (den.is_zero()) return num;
  return num / den;
}

inline TruncSeries random_series(const CtxPtr& K, std::size_t m, unsigned N, Rng& rng, int density = 2) {
  TruncSeries::Coeffs coeffs;
  for (const auto& alpha : indices_up_to(m, N)) {
    if (rng.uniform(0, density) != 0) continue;
    coeffs.emplace(alpha, random_poly(K, rng, 2, 1));
  }
  return TruncSeries::from_coeffs(K, m, N, std::move(coeffs), static_cast<int>(N), false);
}

/// Coefficientwise agreement as far as both series are known.
inline bool same(const TruncSeries& a, const TruncSeries& b) {
  const int p = std::min(a.precision(), b.precision());
  return p >= 0 && a.agrees_to(b, p);
}

/// Random polynomial in the symbols of order <= max_order of x_1..x_n.
inline DiffPoly random_diffpoly(const CtxPtr& K, unsigned n, unsigned max_order, Rng& rng, int terms = 3) {
  const auto symbols = gamma_set(n, max_order, K->m());
  DiffPoly f(K, n);
  const int count = rng.uniform(1, terms);
  for (int k = 0; k < count; ++k) {
    DiffPoly mono = DiffPoly::constant(K, n, K->num_params() ? random_poly(K, rng, 1, 1) : K->constant(random_rational(rng)));
    const int factors = rng.uniform(0, 2);
    for (int j = 0; j < factors; ++j)
      mono = mono * DiffPoly::var(K, n, symbols[rng.uniform(0, int(symbols.size()) - 1)]);
    f += mono;
  }
  return f;
}

}  // namespace diffkit::testing

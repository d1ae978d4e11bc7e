#pragma once

#include "diffkit/charset.hpp"
#include "diffkit/groebner.hpp"

#include <optional>
#include <string>
#include <vector>

namespace diffkit {

/// K[Gamma_n(r)]: one algebraic variable per symbol delta^xi x_i of order <= r,
/// listed in the orderly ranking and named by derivative notation.
struct JetRing {
  RingPtr ring;
  std::vector<RankedVar> coords;
  unsigned n = 0;
  unsigned r = 0;
  std::size_t m = 0;

  std::optional<std::size_t> index_of(const RankedVar& v) const;
};

/// Names are `<letter><i>`, `d<k>(<letter><i>)`, `D[..](<letter><i>)`.
JetRing jet_ring(CtxPtr coeffs, unsigned n, unsigned r, char letter = 'x');

/// The ^pol reading of f: each delta^xi x_i becomes a jet variable. Throws
/// OrderExceeded for a symbol outside the ring.
AlgPoly to_pol(const DiffPoly& f, const JetRing& jets);

/// Value of an algebraic polynomial at a point (one scalar per variable).
DiffScalar evaluate(const AlgPoly& f, const std::vector<DiffScalar>& point);

/// tau_r X by the exponential substitution c -> sum delta^xi(c)/xi! eps^xi,
/// y_i -> sum y_i^xi/xi! eps^xi over eps^{r+1} = 0. The output variables are
/// the derivative names of X's variables over Gamma(r), ordered by the
/// orderly ranking; each eps-coefficient is scaled by xi! before becoming a
/// generator.
AlgIdeal prolongation_tau(const AlgIdeal& X, unsigned r);

/// tau_1 X by the explicit equations f and sum_i df/dy_i * y_i^{e_k} + f^{delta_k}.
AlgIdeal prolongation_explicit_r1(const AlgIdeal& X);

/// The jet tuple (delta^xi a_i) in the variable order of tau_r X.
std::vector<DiffScalar> nabla(const std::vector<DiffScalar>& point, unsigned r);

/// Whether nabla_r(witness) kills every generator of tau_r X. Throws
/// WitnessNotOnX when the witness is not a point of X.
bool nabla_check(const AlgIdeal& X, const std::vector<DiffScalar>& witness, unsigned r);

/// (Lambda^(r))^pol : (H_Lambda^pol)^infinity in K[Gamma_n(r)].
AlgIdeal jet_ideal(const CharSet& lambda, unsigned r, const GroebnerLimits& limits = default_limits());

/// Guard on Ackermann evaluation: results above 2^max_bits raise ResourceLimit.
struct AckermannLimits {
  unsigned long max_bits = 1u << 16;
  unsigned long max_steps = 1u << 22;
};

/// A(0,y)=y+1, A(x,0)=A(x-1,1), A(x,y)=A(x-1,A(x,y-1)).
Integer ackermann(unsigned long x, const Integer& y, const AckermannLimits& limits = {});

/// C^n_{r,m}: C^1_{0,m}=0, C^1_{r,m}=A(m-1, C^1_{r-1,m}), C^n_{r,m}=C^1_{C^{n-1}_{r,m},m}.
Integer kernel_bound(const Integer& r, std::size_t m, unsigned n, const AckermannLimits& limits = {});

/// |Gamma_n(r)| = n binom(r+m, m).
Integer jet_count(unsigned n, const Integer& r, std::size_t m);

struct AlphaBeta {
  Integer C;  // C^n_{1,m}
  Integer alpha;
  Integer beta;
};
/// alpha = n binom(C+m, m), beta = n binom(C-1+m, m) with C = C^n_{1,m}.
AlphaBeta alpha_beta(unsigned n, std::size_t m, const AckermannLimits& limits = {});

struct AxiomReport {
  bool holds = false;
  /// A tau generator whose pullback is not in the radical of I(W).
  std::optional<std::string> failing_generator;
  AlgIdeal pi;   // I(pi(W)) on the first beta coordinates
  AlgIdeal tau;  // tau_1 of pi(W), variables z_j and d_k(z_j)
  AlgIdeal psi;  // I(psi(W)) on Gamma_n(1)
};

/// W must live in jet_ring(K, n, C^n_{1,m}); throws DimensionMismatch otherwise.
/// Decides phi(W) in tau(pi(W)) by radical membership, assuming the given
/// generators present I(W) up to radical.
AxiomReport axiom_check(const AlgIdeal& W, unsigned n, const GroebnerLimits& limits = default_limits());

}  // namespace diffkit

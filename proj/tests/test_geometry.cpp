#include "support.hpp"

#include "diffkit/charset.hpp"
#include "diffkit/errors.hpp"
#include "diffkit/geometry.hpp"
#include "diffkit/parse.hpp"

#include <doctest.h>

using namespace diffkit;
using namespace diffkit::testing;

namespace {

AlgIdeal variety(const CtxPtr& K, unsigned n, const std::vector<std::string>& gens) {
  const JetRing base = jet_ring(K, n, 0);
  std::vector<AlgPoly> out;
  for (const auto& g : gens) out.push_back(to_pol(parse_diffpoly(g, K, n), base));
  return AlgIdeal(base.ring, out);
}

// Reads a DiffPoly into the ring of an ideal whose variables carry derivative names.
AlgPoly in_ring(const RingPtr& R, const std::string& text, const CtxPtr& K, unsigned n) {
  const DiffPoly f = parse_diffpoly(text, K, n);
  return f.evaluate<AlgPoly>(
      [&](const RankedVar& v) { return AlgPoly::variable(R, *R->index_of(to_string(v))); },
      [&](const DiffScalar& c) { return AlgPoly::constant(R, c); }, AlgPoly(R));
}

// Direct Ackermann for tiny arguments.
long ack(long x, long y) {
  if (x == 0) return y + 1;
  if (y == 0) return ack(x - 1, 1);
  return ack(x - 1, ack(x, y - 1));
}

}  // namespace

TEST_SUITE("geometry") {
  TEST_CASE("jet rings") {
    const JetRing J = jet_ring(DiffFieldCtx::rationals(2), 2, 1);
    CHECK(J.coords.size() == 6);
    CHECK(J.ring->names().front() == "x1");
    CHECK(J.index_of(RankedVar({1, 0}, 2)).has_value());
    CHECK_FALSE(J.index_of(RankedVar({2, 0}, 1)).has_value());
    CHECK_THROWS_AS(to_pol(parse_diffpoly("D[2,0](x1)", J.ring->coeffs(), 2), J), Error);
  }

  TEST_CASE("prolongation of the circle") {
    const CtxPtr Q = DiffFieldCtx::rationals(1);
    const AlgIdeal tau = prolongation_tau(variety(Q, 2, {"x1^2 + x2^2 - 1"}), 1);
    const RingPtr& R = tau.ring();
    const AlgIdeal want(R, {in_ring(R, "x1^2 + x2^2 - 1", Q, 2), in_ring(R, "2*x1*d1(x1) + 2*x2*d1(x2)", Q, 2)});
    CHECK(ideal_equal(tau, want));
  }

  TEST_CASE("prolongation sees the coefficient derivation") {
    const CtxPtr U = DiffFieldCtx::partials(1, 1);
    const AlgIdeal tau = prolongation_tau(variety(U, 1, {"x1 - u1"}), 1);
    const RingPtr& R = tau.ring();
    CHECK(ideal_equal(tau, AlgIdeal(R, {in_ring(R, "x1 - u1", U, 1), in_ring(R, "d1(x1) - 1", U, 1)})));
    const AlgIdeal affine = prolongation_tau(variety(U, 2, {}), 2);
    CHECK(affine.is_zero());
    CHECK(affine.ring()->nvars() == 6);
  }

  TEST_CASE("tau_r agrees with the explicit first prolongation") {
    const CtxPtr U = DiffFieldCtx::partials(2, 2);
    const AlgIdeal X = variety(U, 2, {"x1*x2 - u1", "x2^2 - u2"});
    CHECK(ideal_equal(prolongation_tau(X, 1), prolongation_explicit_r1(X)));
  }

  TEST_CASE("nabla examples") {
    const CtxPtr U = DiffFieldCtx::partials(1, 1);
    const AlgIdeal X = variety(U, 1, {"x1 - u1^2"});
    const DiffScalar u = U->param(0);
    CHECK(nabla_check(X, {u * u}, 2));
    const std::vector<DiffScalar> jets = nabla({u * u}, 2);
    REQUIRE(jets.size() == 3);
    CHECK(jets[1] == u * U->constant(2));
    CHECK(jets[2] == U->constant(2));
    CHECK(nabla_check(variety(U, 1, {"x1"}), {U->zero()}, 3));
    try {
      (void)nabla_check(X, {u}, 1);
      FAIL("expected WitnessNotOnX");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::WitnessNotOnX);
    }
  }

  TEST_CASE("jet ideal examples") {
    const CtxPtr Q = DiffFieldCtx::rationals(1);
    const CharSet hyper({parse_diffpoly("x1*d1(x1) - 1", Q, 1)});
    const JetRing J = jet_ring(Q, 1, 1);
    const AlgIdeal got = jet_ideal(hyper, 1);
    const AlgIdeal want(J.ring, {to_pol(parse_diffpoly("x1*d1(x1) - 1", Q, 1), J)});
    CHECK(ideal_equal(got, want));

    const CharSet lambda({parse_diffpoly("d1(x1)^2 - 4*x1", Q, 1)});
    for (unsigned r = 1; r <= 2; ++r) {
      const JetRing Jr = jet_ring(Q, 1, r);
      const AlgIdeal I = jet_ideal(lambda, r);
      std::vector<AlgPoly> gens;
      for (const auto& f : prolong_set(lambda, r)) gens.push_back(to_pol(f, Jr));
      CHECK(ideal_contains(I, AlgIdeal(Jr.ring, gens)));
      CHECK(ideal_equal(saturate(I, to_pol(lambda.H(), Jr)), I));
    }
  }

  TEST_CASE("Ackermann and kernel bounds") {
    for (long x = 0; x <= 3; ++x)
      for (long y = 0; y <= 4; ++y) CHECK(ackermann(x, Integer(y)) == ack(x, y));
    CHECK(kernel_bound(1, 2, 2) == 4);
    CHECK(kernel_bound(5, 3, 1) == 93);
    CHECK(kernel_bound(0, 3, 1) == 0);
    for (std::size_t m = 1; m <= 3; ++m)
      for (unsigned n = 1; n <= 2; ++n)
        for (unsigned r = 0; r < 3; ++r) CHECK(kernel_bound(r, m, n) <= kernel_bound(r + 1, m, n));
    try {
      (void)kernel_bound(2, 5, 2);
      FAIL("expected ResourceLimit");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ResourceLimit);
    }
  }

  TEST_CASE("alpha and beta") {
    for (unsigned n = 1; n <= 4; ++n) {
      const AlphaBeta ab = alpha_beta(n, 1);
      CHECK(ab.alpha == 2 * n);
      CHECK(ab.beta == n);
    }
    const AlphaBeta ab = alpha_beta(2, 2);
    CHECK(ab.C == 4);
    CHECK(ab.beta == Integer(gamma_set(2, 3, 2).size()));
    CHECK(jet_count(2, 1, 2) == 6);
  }

  TEST_CASE("ordinary axiom frame") {
    const CtxPtr Q = DiffFieldCtx::rationals(1);
    const JetRing J = jet_ring(Q, 1, 1);
    const AlgPoly x0 = AlgPoly::variable(J.ring, 0), x1 = AlgPoly::variable(J.ring, 1);
    const AlgIdeal W(J.ring, {x1 - x0 * x0});
    const AxiomReport rep = axiom_check(W, 1);
    // With alpha = 2 and beta = 1, psi is the identity on Gamma_1(1).
    CHECK(ideal_equal(rep.psi, W));
    CHECK(rep.holds);
    CHECK_THROWS_AS(axiom_check(AlgIdeal(jet_ring(Q, 1, 2).ring, {}), 1), Error);
  }
}

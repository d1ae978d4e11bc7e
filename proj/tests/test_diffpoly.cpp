#include "support.hpp"

#include "diffkit/charset.hpp"
#include "diffkit/errors.hpp"
#include "diffkit/geometry.hpp"
#include "diffkit/parse.hpp"

#include <doctest.h>

#include <algorithm>

using namespace diffkit;
using namespace diffkit::testing;

namespace {

DiffPoly P(const std::string& s, const CtxPtr& K, unsigned n = 1) { return parse_diffpoly(s, K, n); }

CharSet charset(const std::vector<std::string>& elems, const CtxPtr& K, unsigned n = 1) {
  std::vector<DiffPoly> out;
  for (const auto& e : elems) out.push_back(P(e, K, n));
  return CharSet(out);
}

bool contains(const std::vector<DiffPoly>& set, const DiffPoly& f) {
  return std::any_of(set.begin(), set.end(), [&](const DiffPoly& g) { return g == f; });
}

}  // namespace

TEST_SUITE("diffpoly") {
  TEST_CASE("derivative examples") {
    const CtxPtr Q = DiffFieldCtx::rationals(1);
    const CtxPtr U = DiffFieldCtx::partials(1, 1);
    CHECK(P("x1^2", Q).derive(0) == P("2*x1*d1(x1)", Q));
    CHECK(P("u1*x1", U).derive(0) == P("x1 + u1*d1(x1)", U));
    CHECK(P("x1", Q).derive(MultiIndex{3}) == P("D[3](x1)", Q));
    const CtxPtr Q2 = DiffFieldCtx::rationals(2);
    CHECK(P("x1", Q2).derive(0).derive(1) == P("D[1,1](x1)", Q2));
  }

  TEST_CASE("Leibniz and commutation on random polynomials") {
    Rng rng(21);
    const CtxPtr K = DiffFieldCtx::partials(2, 2);
    for (int k = 0; k < 60; ++k) {
      const DiffPoly f = random_diffpoly(K, 2, 2, rng), g = random_diffpoly(K, 2, 2, rng);
      CHECK((f * g).derive(0) == f.derive(0) * g + f * g.derive(0));
      CHECK(f.derive(0).derive(1) == f.derive(1).derive(0));
    }
  }

  TEST_CASE("anatomy examples") {
    const CtxPtr Q = DiffFieldCtx::rationals(1);
    const RankedVar dx({1}, 1);
    const Anatomy a = anatomy(P("d1(x1) - x1", Q));
    CHECK(a.leader == dx);
    CHECK(a.degree == 1);
    CHECK(a.separant == P("1", Q));
    CHECK(a.initial == P("1", Q));
    const Anatomy b = anatomy(P("x1*d1(x1) - 1", Q));
    CHECK(b.leader == dx);
    CHECK(b.separant == P("x1", Q));
    CHECK(b.initial == P("x1", Q));
    const Anatomy c = anatomy(P("d1(x1)^3 + x1", Q));
    CHECK(c.degree == 3);
    CHECK(c.separant == P("3*d1(x1)^2", Q));
    CHECK(c.initial == P("1", Q));
    CHECK_THROWS_AS(anatomy(P("7", Q)), Error);
  }

  TEST_CASE("separant and initial rank below f") {
    Rng rng(22);
    const CtxPtr K = DiffFieldCtx::partials(1, 2);
    for (int k = 0; k < 100; ++k) {
      const DiffPoly f = random_diffpoly(K, 2, 2, rng, 4);
      if (f.is_constant()) continue;
      const Anatomy a = anatomy(f);
      CHECK(compare_rank(a.separant, f) < 0);
      CHECK(compare_rank(a.initial, f) < 0);
    }
  }

  TEST_CASE("reducedness examples") {
    const CtxPtr Q = DiffFieldCtx::rationals(1);
    CHECK(is_reduced(P("x1", Q), P("d1(x1) - x1", Q)));
    CHECK(is_weakly_reduced(P("d1(x1)^2", Q), P("x1*d1(x1) - 1", Q)));
    CHECK_FALSE(is_reduced(P("d1(x1)^2", Q), P("x1*d1(x1) - 1", Q)));
    CHECK_FALSE(is_weakly_reduced(P("D[2](x1)", Q), P("d1(x1) - x1", Q)));
  }

  TEST_CASE("division examples") {
    const CtxPtr Q = DiffFieldCtx::rationals(1);
    const CharSet linear = charset({"d1(x1) - x1"}, Q);
    const DivisionResult a = diff_divide(P("D[2](x1)", Q), linear);
    CHECK(a.premultiplier == P("1", Q));
    CHECK(a.remainder == P("x1", Q));

    const CharSet hyper = charset({"x1*d1(x1) - 1"}, Q);
    const DivisionResult b = diff_divide(P("D[2](x1)", Q), hyper);
    CHECK(b.premultiplier == P("x1^3", Q));
    CHECK(b.remainder == P("-1", Q));
    // Oracle: x^3 * D2 x + 1 lies in the algebraic ideal of the prolongation.
    const JetRing J = jet_ring(Q, 1, 2);
    std::vector<AlgPoly> gens;
    for (const auto& f : prolong_set(hyper, 2)) gens.push_back(to_pol(f, J));
    CHECK(ideal_member(to_pol(P("x1^3*D[2](x1) + 1", Q), J), AlgIdeal(J.ring, gens)));

    const DivisionResult c = diff_divide(P("x1^2", Q), linear);
    CHECK(c.premultiplier == P("1", Q));
    CHECK(c.remainder == P("x1^2", Q));
    CHECK(c.certificate.empty());
  }

  TEST_CASE("division invariants on random inputs") {
    Rng rng(23);
    const CtxPtr Q = DiffFieldCtx::rationals(1);
    const std::vector<CharSet> sets = {charset({"d1(x1) - x1"}, Q), charset({"x1*d1(x1) - 1"}, Q),
                                       charset({"d1(x1)^2 - 4*x1"}, Q),
                                       charset({"d1(x1) - x2", "d1(x2) + x1"}, Q, 2)};
    for (const auto& lambda : sets)
      for (int k = 0; k < 15; ++k) {
        const DiffPoly g = random_diffpoly(Q, lambda.n(), 3, rng, 3);
        const DivisionResult d = diff_divide(g, lambda);
        CHECK(d.premultiplier * g - d.remainder == expand_certificate(d, lambda));
        for (const auto& f : lambda.elems()) CHECK(is_reduced(d.remainder, f));
        // Dividing a remainder again changes nothing.
        const DivisionResult again = diff_divide(d.remainder, lambda);
        CHECK(again.premultiplier == DiffPoly::constant(Q, lambda.n(), Rational(1)));
        CHECK(again.remainder == d.remainder);
      }
  }

  TEST_CASE("autoreduced sets") {
    const CtxPtr Q = DiffFieldCtx::rationals(1);
    CHECK_THROWS_AS(charset({"d1(x1) - x1", "D[2](x1)"}, Q), Error);
    CHECK_THROWS_AS(charset({"3"}, Q), Error);
    CHECK(charset({"d1(x1) - x1"}, Q).is_explicit());
    CHECK_FALSE(charset({"x1*d1(x1) - 1"}, Q).is_explicit());
  }

  TEST_CASE("prolongation examples") {
    const CtxPtr Q = DiffFieldCtx::rationals(1);
    const auto p = prolong_set(charset({"d1(x1) - x1"}, Q), 2);
    CHECK(p.size() == 2);
    CHECK(contains(p, P("d1(x1) - x1", Q)));
    CHECK(contains(p, P("D[2](x1) - d1(x1)", Q)));
    CHECK(prolong_set(charset({"d1(x1) - x1"}, Q), 1).size() == 1);

    const CtxPtr Q2 = DiffFieldCtx::rationals(2);
    const auto p2 = prolong_set(charset({"d1(x1) - x1"}, Q2), 2);
    CHECK(p2.size() == 3);
    CHECK(contains(p2, P("D[2,0](x1) - d1(x1)", Q2)));
    CHECK(contains(p2, P("D[1,1](x1) - d2(x1)", Q2)));
    try {
      (void)prolong_set(charset({"D[2](x1) - x1"}, Q), 1);
      FAIL("expected OrderExceeded");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::OrderExceeded);
    }
  }

  TEST_CASE("structure split examples") {
    const CtxPtr Q = DiffFieldCtx::rationals(1);
    const StructureSplit a = structure_split(charset({"d1(x1) - x1"}, Q), 1, 3);
    CHECK(a.theta1.empty());
    CHECK(a.theta2 == std::vector<RankedVar>{RankedVar({2}, 1), RankedVar({3}, 1)});

    const CtxPtr Q2 = DiffFieldCtx::rationals(2);
    const StructureSplit b = structure_split(charset({"d1(x1) - x1"}, Q2), 1, 2);
    CHECK(b.theta1 == std::vector<RankedVar>{RankedVar({0, 2}, 1)});
    CHECK(b.theta2.size() == 2);

    const StructureSplit c = structure_split(charset({"d1(x1) - x1"}, Q, 2), 1, 2);
    CHECK(c.theta1 == std::vector<RankedVar>{RankedVar({2}, 2)});
  }

  TEST_CASE("printing") {
    const CtxPtr Q = DiffFieldCtx::rationals(1);
    CHECK(P("x1*d1(x1) - 1", Q).to_string() == "x1*d1(x1) - 1");
    CHECK(P("0", Q).to_string() == "0");
    CHECK_THROWS_AS((void)P("0", Q).order(), Error);
    CHECK(P("5", Q).order() == -1);
  }
}

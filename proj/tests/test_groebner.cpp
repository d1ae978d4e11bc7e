#include "support.hpp"

#include "diffkit/errors.hpp"
#include "diffkit/groebner.hpp"

#include <doctest.h>

#include <map>

using namespace diffkit;
using namespace diffkit::testing;

namespace {

struct Ring2 {
  CtxPtr Q = DiffFieldCtx::rationals(1);
  RingPtr R = std::make_shared<AlgRing>(Q, std::vector<std::string>{"x", "y"});
  AlgPoly x = AlgPoly::variable(R, 0), y = AlgPoly::variable(R, 1);
  AlgPoly k(long c) const { return AlgPoly::constant(R, Q->constant(Rational(c))); }
  AlgIdeal I(std::vector<AlgPoly> gens) const { return AlgIdeal(R, std::move(gens)); }
};

std::vector<Exponents> monomials_up_to(std::size_t nvars, unsigned d) {
  std::vector<Exponents> out{Exponents(nvars, 0)};
  for (std::size_t v = 0; v < nvars; ++v) {
    std::vector<Exponents> next;
    for (const auto& e : out)
      for (unsigned k = 0; k <= d; ++k) {
        Exponents f = e;
        f[v] = k;
        unsigned s = 0;
        for (unsigned x : f) s += x;
        if (s <= d) next.push_back(f);
      }
    out = std::move(next);
  }
  return out;
}

// f = sum_i q_i g_i with deg q_i <= d, decided by Gaussian elimination on the
// coefficient matrix. Finding a solution proves membership.
bool member_by_linear_algebra(const AlgPoly& f, const AlgIdeal& I, unsigned d) {
  const std::size_t nv = I.ring()->nvars();
  const auto mults = monomials_up_to(nv, d);
  std::map<Exponents, std::size_t> row_of;
  auto row = [&](const Exponents& e) { return row_of.emplace(e, row_of.size()).first->second; };
  std::vector<std::map<std::size_t, Rational>> cols;
  for (const auto& g : I.gens())
    for (const auto& m : mults) {
      std::map<std::size_t, Rational> col;
      for (const auto& t : g.terms()) {
        Exponents e = t.e;
        for (std::size_t v = 0; v < nv; ++v) e[v] += m[v];
        col[row(e)] += *t.c.as_rational();
      }
      cols.push_back(std::move(col));
    }
  std::map<std::size_t, Rational> rhs;
  for (const auto& t : f.terms()) rhs[row(t.e)] += *t.c.as_rational();
  const std::size_t rows = row_of.size(), ncols = cols.size();
  std::vector<std::vector<Rational>> M(rows, std::vector<Rational>(ncols + 1, 0));
  for (std::size_t c = 0; c < ncols; ++c)
    for (const auto& [r, v] : cols[c]) M[r][c] = v;
  for (const auto& [r, v] : rhs) M[r][ncols] = v;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < ncols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && M[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(M[p], M[rank]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || M[r][c] == 0) continue;
      const Rational s = M[r][c] / M[rank][c];
      for (std::size_t k = c; k <= ncols; ++k) M[r][k] -= s * M[rank][k];
    }
    ++rank;
  }
  for (std::size_t r = rank; r < rows; ++r)
    if (M[r][ncols] != 0) return false;
  return true;
}

}  // namespace

TEST_SUITE("groebner") {
  TEST_CASE("basis of (x^2, xy)") {
    Ring2 r;
    const AlgIdeal G = buchberger(r.I({r.x * r.x, r.x * r.y}));
    CHECK(G.is_groebner());
    CHECK(G.gens().size() == 2);
    CHECK(ideal_member(r.x * r.x * r.y + r.x * r.y * r.y, G));
    CHECK_FALSE(ideal_member(r.x, G));
  }

  TEST_CASE("membership examples") {
    Ring2 r;
    CHECK(ideal_member(r.x * r.x, r.I({r.x})));
    CHECK_FALSE(ideal_member(r.x, r.I({r.x * r.x})));
    CHECK(radical_member(r.x, r.I({r.x * r.x})));
    CHECK(buchberger(r.I({r.x, r.k(1) - r.x})).is_unit());
    CHECK(ideal_member(r.k(1), r.I({r.x, r.k(1) - r.x})));
  }

  TEST_CASE("elimination") {
    Ring2 r;
    // (y - x^2, y^2 - 1) meets Q[x] in (x^4 - 1).
    const AlgIdeal E = eliminate(r.I({r.y - r.x * r.x, r.y * r.y - r.k(1)}), {0});
    REQUIRE(E.gens().size() == 1);
    CHECK(E.gens()[0].to_string() == "x^4 - 1");
    CHECK(eliminate(r.I({r.y - r.x}), {1}).is_zero());
  }

  TEST_CASE("saturation") {
    Ring2 r;
    CHECK(ideal_equal(saturate(r.I({r.x * r.y}), r.y), r.I({r.x})));
    const AlgIdeal I = r.I({r.x * r.x - r.y, r.x * r.y});
    CHECK(ideal_equal(saturate(I, r.k(1)), I));
    // Saturating twice changes nothing, and the result contains I.
    const AlgIdeal S = saturate(I, r.x);
    CHECK(ideal_contains(S, I));
    CHECK(ideal_equal(saturate(S, r.x), S));
  }

  TEST_CASE("membership agrees with a linear-algebra oracle") {
    Ring2 r;
    const std::vector<AlgIdeal> ideals = {
        r.I({r.x * r.x, r.x * r.y}),
        r.I({r.x * r.x + r.y * r.y - r.k(1), r.x - r.y}),
        r.I({r.x * r.y - r.k(1), r.y * r.y - r.x}),
    };
    Rng rng(51);
    int members = 0;
    for (const auto& I : ideals)
      for (int k = 0; k < 20; ++k) {
        // Half of the samples are planted combinations of the generators.
        AlgPoly f(r.R);
        auto rand_poly = [&] {
          AlgPoly p(r.R);
          for (const auto& e : monomials_up_to(2, 2))
            if (rng.coin()) p += AlgPoly::monomial(r.R, e, r.Q->constant(random_rational(rng)));
          return p;
        };
        if (rng.coin())
          for (const auto& g : I.gens()) f += rand_poly() * g;
        else
          f = rand_poly();
        const bool gb = ideal_member(f, I);
        if (gb) ++members;
        // A degree-4 certificate exists for every member in these toy ideals.
        CHECK(gb == member_by_linear_algebra(f, I, 4));
      }
    CHECK(members > 0);
  }

  TEST_CASE("monomial orders") {
    Ring2 r;
    CHECK(r.R->compare({0, 1}, {1, 0}) > 0);
    CHECK(r.R->compare({2, 0}, {0, 1}) > 0);
    const RingPtr block = r.R->with_block({false, true});
    CHECK(block->compare({0, 1}, {5, 0}) > 0);
  }

  TEST_CASE("resource limits") {
    Ring2 r;
    GroebnerLimits tiny;
    tiny.max_pairs = 1;
    tiny.max_basis = 2;
    try {
      (void)buchberger(r.I({r.x * r.x * r.y - r.k(1), r.x * r.y * r.y - r.x, r.x * r.x * r.x - r.y}), tiny);
      FAIL("expected ResourceLimit");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ResourceLimit);
    }
  }
}

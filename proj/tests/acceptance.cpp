// One PASS/FAIL line per acceptance criterion; exit status 0 iff all pass.

#include "corpus.hpp"
#include "support.hpp"

#include "diffkit/cli.hpp"
#include "diffkit/errors.hpp"
#include "diffkit/geometry.hpp"
#include "diffkit/parse.hpp"
#include "diffkit/pv.hpp"
#include "diffkit/taylor.hpp"

#include <json.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace diffkit;
using namespace diffkit::testing;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

class Checker {
public:
  void require(bool cond, const std::string& what) {
    ++checks_;
    if (!cond && out_.ok) {
      out_.ok = false;
      out_.detail = what;
    }
  }
  Outcome finish(const std::string& summary) {
    if (out_.ok) out_.detail = summary + " (" + std::to_string(checks_) + " checks)";
    return out_;
  }

private:
  Outcome out_;
  int checks_ = 0;
};

// Coefficientwise equality through total degree `upto`; both sides must know
// their coefficients that far.
bool equal(const TruncSeries& a, const TruncSeries& b, int upto) { return a.agrees_to(b, upto); }

DiffPoly var(const CtxPtr& K, unsigned n, std::initializer_list<unsigned> xi, unsigned i = 1) {
  return DiffPoly::var(K, n, RankedVar(MultiIndex(xi), i));
}

AlgIdeal ideal_from(const JetRing& J, const std::vector<DiffPoly>& gens) {
  std::vector<AlgPoly> out;
  for (const auto& g : gens) out.push_back(to_pol(g, J));
  return AlgIdeal(J.ring, std::move(out));
}

// ---------------------------------------------------------------- 1
Outcome twisted_laws() {
  Checker c;
  const auto start = std::chrono::steady_clock::now();
  const CtxPtr A = DiffFieldCtx::partials(2, 2);
  // Omega = {2 d/du2, d/du1 - d/du2}: constant coefficients, so commuting.
  const CtxPtr B = A->with_derivations({{RatFun(2, 0), RatFun(2, 1)}, {RatFun(2, 2), RatFun(2, -1)}});
  const unsigned N = 6;
  Rng rng(1);
  int elements = 0;
  while (elements < 100) {
    PointMap phi(A, B);
    phi.set_param(0, random_poly(A, rng, 2, 1).in(B));
    phi.set_param(1, random_poly(A, rng, 2, 1).in(B));
    for (int k = 0; k < 10; ++k) {
      const DiffScalar a = random_element(A, rng), b = random_element(A, rng);
      TruncSeries ta, tb;
      try {
        ta = twisted_taylor(phi, a, N);
        tb = twisted_taylor(phi, b, N);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::PoleError) continue;
        throw;
      }
      elements += 2;
      c.require(equal(twisted_taylor(phi, a + b, N), ta + tb, N), "additivity fails on " + a.to_string());
      c.require(equal(twisted_taylor(phi, a * b, N), ta * tb, N), "multiplicativity fails on " + a.to_string());
      c.require(ta.ev0() == phi.apply(a), "ev0 differs from phi on " + a.to_string());
      for (std::size_t i = 0; i < 2; ++i)
        c.require(equal(ta.combined_delta(i), twisted_taylor(phi, a.derive(i), N), N - 1),
                  "intertwining fails for delta_" + std::to_string(i + 1) + " on " + a.to_string());
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.require(secs < 60.0, "took " + std::to_string(secs) + " s");
  std::ostringstream s;
  s.precision(3);
  s << elements << " elements at N=6 in " << secs << " s";
  return c.finish(s.str());
}

// ---------------------------------------------------------------- 2
Outcome composition_and_inverse() {
  Checker c;
  Rng rng(2);
  const RatFun v = RatFun::variable(2, 1), one(2, 1), zero(2, 0);
  struct Case {
    std::size_t m;
    DiffFieldCtx::Table delta, omega;
  };
  // Rows are parameters u, v; columns derivations.
  const std::vector<Case> cases = {
      {1, {{one}, {zero}}, {{zero}, {v}}},                                    // d/du and v d/dv
      {2, {{one, zero}, {zero, one}}, {{zero, one}, {RatFun(2, 2), -one}}},  // partials and {2d/dv, d/du - d/dv}
  };
  int series = 0;
  for (const auto& cs : cases) {
    const CtxPtr D = DiffFieldCtx::rational_functions(2, cs.m, cs.delta);
    const CtxPtr O = D->with_derivations(cs.omega);
    DiffFieldCtx::Table sum = cs.delta;
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t i = 0; i < cs.m; ++i) sum[j][i] = cs.delta[j][i] + cs.omega[j][i];
    const CtxPtr S = D->with_derivations(sum);
    for (int k = 0; k < 10; ++k) {
      const TruncSeries f = random_series(D, cs.m, 5, rng);
      const TruncSeries lhs = taylor_ev(1, f, S.get());
      const TruncSeries rhs = taylor_ev(1, taylor_ev(1, f, O.get()), D.get());
      c.require(equal(lhs, rhs, 5), "composition law fails for m=" + std::to_string(cs.m) + " on " + f.to_string());
      ++series;
    }
  }
  const CtxPtr K = DiffFieldCtx::partials(2, 2);
  for (int k = 0; k < 50; ++k) {
    const TruncSeries f = random_series(K, 2, 6, rng);
    c.require(equal(taylor_ev(1, taylor_ev(-1, f)), f, 6), "T(+) after T(-) is not the identity on " + f.to_string());
    c.require(equal(taylor_ev(-1, taylor_ev(1, f)), f, 6), "T(-) after T(+) is not the identity on " + f.to_string());
  }
  return c.finish(std::to_string(series) + " composition samples at N=5, 50 inverse samples at N=6");
}

// ---------------------------------------------------------------- 3
Outcome worked_value() {
  Checker c;
  const CtxPtr K = DiffFieldCtx::partials(1, 1);
  const DiffScalar u = K->param(0);
  PointMap phi(K, K);
  phi.set_param(0, u * u);
  const TruncSeries t = twisted_taylor(phi, u, 6);
  c.require(t.to_string() == "u1^2 + (-2*u1 + 1)*t1 + 1*t1^2", "got " + t.to_string());
  c.require(t.coeff(MultiIndex{1}) == K->one() - u * Rational(2), "b_1 != 1 - 2u");
  // Oracle: the intertwining identity (d/du + d/dt) T*(u) = T*(delta u) = 1.
  c.require(equal(t.combined_delta(0), twisted_taylor(phi, K->one(), 6), 5), "intertwining oracle fails");
  return c.finish(t.to_string());
}

// ---------------------------------------------------------------- 4
Outcome kernel_bounds() {
  Checker c;
  for (unsigned r = 0; r <= 10; ++r)
    for (unsigned n = 1; n <= 5; ++n) c.require(kernel_bound(r, 1, n) == r, "C_{r,1}^n != r");
  for (unsigned r = 0; r <= 6; ++r)
    for (unsigned n = 1; n <= 4; ++n) {
      Integer expect = Integer(r) << n;
      c.require(kernel_bound(r, 2, n) == expect, "C_{r,2}^n != 2^n r at r=" + std::to_string(r));
    }
  for (unsigned r = 0; r <= 5; ++r) {
    Integer expect = 3 * ((Integer(1) << r) - 1);
    c.require(kernel_bound(r, 3, 1) == expect, "C_{r,3}^1 != 3(2^r-1) at r=" + std::to_string(r));
  }
  c.require(kernel_bound(5, 3, 1) == 93, "C_{5,3}^1 != 93");
  for (std::size_t m = 1; m <= 6; ++m) c.require(kernel_bound(0, m, 1) == 0, "C_{0,m}^1 != 0");
  return c.finish("closed forms for m = 1, 2, 3 and C_{0,m}^1 = 0");
}

// ---------------------------------------------------------------- 5
Outcome alpha_beta_consistency() {
  Checker c;
  for (std::size_t m = 1; m <= 3; ++m)
    for (unsigned n = 1; n <= 4; ++n)
      for (unsigned r = 0; r <= 4; ++r)
        c.require(jet_count(n, r, m) == gamma_set(n, r, m).size(), "alpha(n,r) disagrees with enumeration");
  for (unsigned n = 1; n <= 4; ++n) {
    const AlphaBeta ab = alpha_beta(n, 1);
    c.require(ab.alpha == 2 * n && ab.beta == n, "ordinary case alpha=2n, beta=n fails");
  }
  for (unsigned n = 1; n <= 2; ++n)
    for (std::size_t m = 1; m <= 3; ++m) {
      const AlphaBeta ab = alpha_beta(n, m);
      const unsigned C = static_cast<unsigned>(ab.C.get_ui());
      c.require(ab.alpha == gamma_set(n, C, m).size(), "alpha != |Gamma_n(C)|");
      c.require(ab.beta == gamma_set(n, C - 1, m).size(), "beta != |Gamma_n(C-1)|");
    }
  const AlphaBeta m2 = alpha_beta(1, 2);
  c.require(m2.C == 2 && m2.alpha == 6 && m2.beta == 3, "m=2, n=1 frame is not (2, 6, 3)");
  return c.finish("enumeration for m<=3, n<=4, r<=4 and the ordinary frame");
}

// ---------------------------------------------------------------- 6
bool residual_zero(const std::vector<MatrixK>& A, const SeriesMatrix& Z, unsigned N) {
  for (std::size_t i = 0; i < A.size(); ++i)
    for (const auto& row : pv_residual(A, Z, i))
      for (const auto& s : row)
        if (!s.coeffs().empty() || s.precision() < static_cast<int>(N) - 1) return false;
  return true;
}

Outcome pv_residuals() {
  Checker c;
  const unsigned N = 8;
  const CtxPtr Q1 = DiffFieldCtx::rationals(1), Q2 = DiffFieldCtx::rationals(2);
  auto q = [](const CtxPtr& K, long a, long b = 1) {
    Rational r{Integer(a), Integer(b)};
    r.canonicalize();
    return K->constant(r);
  };
  const std::vector<std::vector<MatrixK>> systems = {
      {MatrixK(Q1, {{q(Q1, 1)}})},
      {MatrixK(Q1, {{q(Q1, 0), q(Q1, 1)}, {q(Q1, 0), q(Q1, 0)}})},
      {MatrixK(Q2, {{q(Q2, 1), q(Q2, 0)}, {q(Q2, 0), q(Q2, 2)}}),
       MatrixK(Q2, {{q(Q2, 3), q(Q2, 0)}, {q(Q2, 0), q(Q2, 1, 2)}})},
  };
  for (const auto& A : systems) {
    c.require(!integrability_check(A), "integrable test system rejected");
    const SeriesMatrix Z = pv_fundamental_solution(A, N);
    c.require(residual_zero(A, Z, N), "nonzero residual for a test system");
    c.require(determinant(Z).ev0().is_one(), "ev0(det Z) != 1");
  }
  const SeriesMatrix e = pv_fundamental_solution(systems[0], N);
  for (unsigned k = 0; k <= N; ++k)
    c.require(e[0][0].coeff(MultiIndex{k}) == Q1->constant(Rational(Integer(1), factorial(k))), "Z != exp(t)");
  const SeriesMatrix nil = pv_fundamental_solution(systems[1], N);
  c.require(nil[0][1].to_string() == "1*t1" && nil[0][0].to_string() == "1", "nilpotent Z != [[1,t],[0,1]]");

  const std::vector<MatrixK> sl2 = {MatrixK(Q2, {{q(Q2, 0), q(Q2, 1)}, {q(Q2, 0), q(Q2, 0)}}),
                                    MatrixK(Q2, {{q(Q2, 0), q(Q2, 0)}, {q(Q2, 1), q(Q2, 0)}})};
  const auto v = integrability_check(sl2);
  c.require(v && v->i == 1 && v->j == 2, "sl2 pair not rejected");
  if (v) c.require(v->residual == MatrixK(Q2, {{q(Q2, -1), q(Q2, 0)}, {q(Q2, 0), q(Q2, 1)}}), "wrong residual");
  return c.finish("3 systems at N=8; sl2 residual " + (v ? v->residual.to_string() : std::string("-")));
}

// ---------------------------------------------------------------- 7
Outcome prolongation_cross_validation() {
  Checker c;
  struct Variety {
    CtxPtr K;
    unsigned n;
    std::vector<std::string> gens;
    std::vector<std::string> witness;  // empty: no witness
  };
  const CtxPtr Q = DiffFieldCtx::rationals(1);
  const CtxPtr U = DiffFieldCtx::partials(1, 1);
  const CtxPtr U2 = DiffFieldCtx::partials(2, 2);
  const CtxPtr W = DiffFieldCtx::rational_functions(1, 1, {{RatFun::variable(1, 0)}});  // delta u = u
  const std::vector<Variety> suite = {
      {Q, 2, {"x1^2 + x2^2 - 1"}, {}},
      {U, 1, {"x1 - u1"}, {"u1"}},
      {U, 1, {"x1 - u1^2"}, {"u1^2"}},
      {U, 2, {"x1^2 + x2^2 - 1"}, {"2*u1/(u1^2 + 1)", "(1 - u1^2)/(u1^2 + 1)"}},
      {U, 2, {"x1*x2 - u1", "x2^2 - 1"}, {"u1", "1"}},
      {W, 1, {"x1^2 - u1^2"}, {"-u1"}},
      {U2, 2, {"x1^2 - u1*x2", "x2 - u2"}, {}},
      {U2, 1, {"x1 - u1*u2"}, {"u1*u2"}},
      {Q, 1, {"x1"}, {"0"}},
      {U, 2, {}, {"u1", "3"}},
  };
  int witnesses = 0;
  for (const auto& var : suite) {
    const JetRing base = jet_ring(var.K, var.n, 0);
    std::vector<AlgPoly> gens;
    for (const auto& g : var.gens) gens.push_back(to_pol(parse_diffpoly(g, var.K, var.n), base));
    const AlgIdeal X(base.ring, gens);
    const std::string name = var.gens.empty() ? "affine space" : var.gens.front();
    c.require(ideal_equal(prolongation_tau(X, 1), prolongation_explicit_r1(X)), "tau_1 differs on " + name);
    if (var.witness.empty()) continue;
    std::vector<DiffScalar> point;
    for (const auto& w : var.witness) point.push_back(parse_scalar(w, var.K));
    for (unsigned r = 1; r <= 3; ++r, ++witnesses)
      c.require(nabla_check(X, point, r), "nabla_" + std::to_string(r) + " misses tau_r on " + name);
  }
  return c.finish(std::to_string(suite.size()) + " varieties, " + std::to_string(witnesses) + " witness checks");
}

// ---------------------------------------------------------------- 8
Outcome jet_ideal_check() {
  Checker c;
  const CtxPtr Q = DiffFieldCtx::rationals(1);
  const CharSet lambda({var(Q, 1, {1}) - var(Q, 1, {0})});
  for (unsigned r = 1; r <= 4; ++r) {
    const JetRing J = jet_ring(Q, 1, r);
    std::vector<DiffPoly> expect;
    for (unsigned k = 1; k <= r; ++k) expect.push_back(var(Q, 1, {k}) - var(Q, 1, {k - 1}));
    const AlgIdeal got = jet_ideal(lambda, r);
    const AlgIdeal want = ideal_from(J, expect);
    c.require(ideal_contains(got, want) && ideal_contains(want, got), "jet ideal mismatch at r=" + std::to_string(r));
  }
  return c.finish("r = 1..4 by mutual membership");
}

// ---------------------------------------------------------------- 9
Outcome division_certificates() {
  Checker c;
  const CtxPtr Q = DiffFieldCtx::rationals(1);
  const CtxPtr U2 = DiffFieldCtx::partials(2, 2);
  struct Case {
    CtxPtr K;
    unsigned n;
    std::vector<std::string> lambda;
    std::string g;
  };
  const std::vector<Case> suite = {
      {Q, 1, {"d1(x1) - x1"}, "D[2](x1)"},
      {Q, 1, {"d1(x1) - x1"}, "d1(x1)^2 + x1"},
      {Q, 1, {"d1(x1) - x1"}, "x1*D[3](x1) - 1"},
      {Q, 1, {"x1*d1(x1) - 1"}, "D[2](x1)"},
      {Q, 1, {"x1*d1(x1) - 1"}, "d1(x1)^2"},
      {Q, 1, {"x1*d1(x1) - 1"}, "x1^2*d1(x1) - x1"},
      {Q, 1, {"d1(x1)^3 + x1"}, "D[2](x1)"},
      {Q, 1, {"d1(x1)^2 - 4*x1"}, "D[2](x1) - 2"},
      {Q, 1, {"x1^2 - 2"}, "x1^3 + d1(x1)"},
      {Q, 1, {"x1"}, "x1^2"},
      {Q, 2, {"d1(x1) - x2", "d1(x2) + x1"}, "D[2](x1) + x1"},
      {Q, 2, {"d1(x1) - x2", "d1(x2) + x1"}, "D[2](x2)*x1 + x2"},
      {U2, 1, {"d1(x1) - u1*x1"}, "D[1,1](x1)"},
      {U2, 1, {"d1(x1) - u1*x1"}, "d2(x1)*d1(x1) - u1"},
      {U2, 1, {"d1(x1) - u1*x1", "d2(x1) - u2*x1"}, "D[1,1](x1) - u1*u2*x1"},
  };
  int nonmember = 0;
  for (const auto& cs : suite) {
    std::vector<DiffPoly> elems;
    for (const auto& f : cs.lambda) elems.push_back(parse_diffpoly(f, cs.K, cs.n));
    const CharSet lambda(elems);
    const DiffPoly g = parse_diffpoly(cs.g, cs.K, cs.n);
    const DivisionResult d = diff_divide(g, lambda);
    const unsigned s = static_cast<unsigned>(std::max({g.is_constant() ? 0 : g.order(), lambda.order(), 0}));
    const JetRing J = jet_ring(cs.K, cs.n, s);
    const AlgIdeal prolonged = ideal_from(J, prolong_set(lambda, s));
    c.require(ideal_member(to_pol(d.premultiplier * g - d.remainder, J), prolonged),
              "certificate not in (Lambda^(s)) for g = " + cs.g);
    c.require(d.premultiplier * g - d.remainder == expand_certificate(d, lambda), "certificate expansion differs");
    for (const auto& f : lambda.elems())
      c.require(is_reduced(d.remainder, f), "remainder not reduced for g = " + cs.g);
    // Each suite set is a characteristic set of a prime ideal, so a nonzero
    // reduced remainder means g is outside [Lambda] : H^infinity.
    const bool member = ideal_member(to_pol(g, J), jet_ideal(lambda, s));
    c.require(member == d.remainder.is_zero(), "remainder does not decide membership for g = " + cs.g);
    nonmember += !member;
  }
  return c.finish(std::to_string(suite.size()) + " divisions, " + std::to_string(nonmember) +
                  " certified non-members");
}

// ---------------------------------------------------------------- 10
Outcome series_solve_check() {
  Checker c;
  const CtxPtr Q = DiffFieldCtx::rationals(1);
  const CharSet lambda({var(Q, 1, {1}) - var(Q, 1, {0})});
  std::map<RankedVar, DiffScalar, VarGreater> init;
  init.emplace(RankedVar(MultiIndex{0}, 1), Q->one());
  const auto sol = series_solve(lambda, init, 10);
  for (unsigned k = 0; k <= 10; ++k)
    c.require(sol[0].coeff(MultiIndex{k}) == Q->constant(Rational(Integer(1), factorial(k))),
              "coefficient " + std::to_string(k) + " is not 1/k!");
  c.require(substitute_series(lambda.elems()[0], sol).coeffs().empty(), "solution does not satisfy the system");

  // delta_1 u = 1, delta_2 u = 0.
  const CtxPtr K = DiffFieldCtx::rational_functions(1, 2, {{RatFun(1, 1), RatFun(1, 0)}});
  const DiffPoly x = var(K, 1, {0, 0});
  const CharSet bad({var(K, 1, {1, 0}) - x, var(K, 1, {0, 1}) - DiffPoly::constant(K, 1, K->param(0)) * x});
  std::map<RankedVar, DiffScalar, VarGreater> init2;
  init2.emplace(RankedVar(MultiIndex{0, 0}, 1), K->one());
  std::string witness, values;
  try {
    series_solve(bad, init2, 3);
  } catch (const InconsistentSystem& e) {
    witness = e.witness();
    values = e.first_value() + " vs " + e.second_value();
  }
  c.require(witness == "D[1,1](x1)", "expected InconsistentSystem at D[1,1](x1), got '" + witness + "'");
  const bool pair = values == "u1 + 1 vs u1" || values == "u1 vs u1 + 1";
  c.require(pair, "paths should give u*x and x + u*x at x=1, got " + values);
  return c.finish("e^t to order 10; witness " + witness + " with " + values);
}

// ---------------------------------------------------------------- 11
Outcome axiom_frames() {
  Checker c;
  const CtxPtr Q = DiffFieldCtx::rationals(1);
  const JetRing J = jet_ring(Q, 1, 1);
  const AlgPoly x0 = AlgPoly::variable(J.ring, 0), x1 = AlgPoly::variable(J.ring, 1);
  const AxiomReport line = axiom_check(AlgIdeal(J.ring, {x1 - x0}), 1);
  c.require(line.holds && !line.failing_generator, "V(x1 - x0) should hold");
  c.require(line.pi.is_zero(), "pi(V(x1 - x0)) should be the whole line");
  const AxiomReport axis = axiom_check(AlgIdeal(J.ring, {x0}), 1);
  c.require(!axis.holds, "V(x0) should fail");
  c.require(axis.failing_generator && *axis.failing_generator == "d1(z1)", "failing generator should be d1(z1)");
  const AxiomReport point = axiom_check(AlgIdeal(J.ring, {x0, x1}), 1);
  c.require(point.holds, "V(x0, x1) should hold");
  return c.finish("true / false (failing " + axis.failing_generator.value_or("-") + ") / true");
}

// ---------------------------------------------------------------- 12
Outcome cli_check() {
  Checker c;
  int corpus = 0;
  for (const auto& e : parse_corpus()) {
    const CtxPtr K = e.params ? DiffFieldCtx::partials(e.params, e.m) : DiffFieldCtx::rationals(e.m);
    const unsigned n = std::max(1u, max_variable(*parse_expr(e.text)));
    const DiffPoly once = parse_diffpoly(e.text, K, n);
    const std::string printed = once.to_string();
    const DiffPoly twice = parse_diffpoly(printed, K, n);
    c.require(twice == once, "round trip changes " + e.text);
    c.require(twice.to_string() == printed, "printing is not a fixpoint on " + e.text);
    ++corpus;
  }
  c.require(corpus >= 50, "corpus has fewer than 50 expressions");

  using Args = std::vector<std::string>;
  const Args solve = {"--m", "1", "solve", "--system", "d1(x1)-x1", "--init", "x1=1", "--N", "6"};
  const Args bound = {"--m", "2", "bound", "--r", "1", "--n", "2"};
  const Args pv = {"--m", "1", "pv", "--A", "[[0,1],[0,0]]", "--N", "3"};

  const CliResult rs = run_cli(solve);
  c.require(rs.code == 0, "solve example failed: " + rs.out);
  if (rs.code == 0) {
    const auto j = nlohmann::json::parse(rs.out);
    std::vector<std::string> values;
    for (const auto& co : j["series"][0]["coeffs"]) values.push_back(co["value"]);
    c.require(values == std::vector<std::string>{"1", "1", "1/2", "1/6", "1/24", "1/120", "1/720"},
              "solve coefficients differ");
    c.require(j["precision"] == 6, "solve precision is not 6");
  }
  const CliResult rb = run_cli(bound);
  c.require(rb.code == 0 && rb.out == "4\n", "bound example printed " + rb.out);
  const CliResult rp = run_cli(pv);
  c.require(rp.code == 0, "pv example failed: " + rp.out);
  if (rp.code == 0) {
    const auto j = nlohmann::json::parse(rp.out);
    c.require(j["Z"] == nlohmann::json::parse(R"([["1","1*t1"],["0","1"]])"), "pv Z differs: " + j["Z"].dump());
  }
  for (const auto& args : {solve, bound, pv}) c.require(run_cli(args).out == run_cli(args).out, "output not stable");

  c.require(run_cli({"--m", "1", "reduce", "--system", "d1(x1", "--g", "x1"}).code == 2, "syntax error exit != 2");
  c.require(run_cli({"--m", "2", "solve", "--system", "d3(x1)"}).code == 2, "arity error exit != 2");
  c.require(run_cli({"--m", "5", "bound", "--r", "2", "--n", "2"}).code == 3, "resource limit exit != 3");
  c.require(run_cli({"--m", "1", "frobnicate"}).code == 2, "unknown command exit != 2");
  const CliResult err = run_cli({"--m", "1", "reduce", "--system", "d1(x1", "--g", "x1"});
  const auto ej = nlohmann::json::parse(err.out);
  c.require(ej["error"]["kind"] == "SyntaxError", "error object lacks kind SyntaxError");
  return c.finish(std::to_string(corpus) + "-expression corpus; examples, determinism and exit codes");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"twisted Taylor laws", twisted_laws},
      {"composition and inverse laws", composition_and_inverse},
      {"worked twisted Taylor value", worked_value},
      {"kernel bounds", kernel_bounds},
      {"alpha/beta consistency", alpha_beta_consistency},
      {"PV residuals", pv_residuals},
      {"prolongation cross-validation", prolongation_cross_validation},
      {"jet ideal", jet_ideal_check},
      {"division certificates", division_certificates},
      {"series solve", series_solve_check},
      {"axiom check frames", axiom_frames},
      {"CLI", cli_check},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.ok;
    std::cout << (o.ok ? "PASS" : "FAIL") << " " << (k + 1) << " " << criteria[k].first << ": " << o.detail
              << std::endl;
  }
  return failed == 0 ? 0 : 1;
}

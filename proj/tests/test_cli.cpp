#include "corpus.hpp"

#include "diffkit/cli.hpp"
#include "diffkit/errors.hpp"
#include "diffkit/parse.hpp"

#include <doctest.h>
#include <json.hpp>

using namespace diffkit;
using namespace diffkit::testing;

TEST_SUITE("parse") {
  TEST_CASE("grammar examples") {
    const CtxPtr Q = DiffFieldCtx::rationals(1);
    const DiffPoly f = parse_diffpoly("d1(x1) - x1", Q, 1);
    CHECK(f == DiffPoly::var(Q, 1, RankedVar({1}, 1)) - DiffPoly::var(Q, 1, RankedVar({0}, 1)));
    const CtxPtr U = DiffFieldCtx::partials(2, 2);
    const DiffPoly g = parse_diffpoly("D[2,1](x2)^3 + u1*x1", U, 2);
    CHECK(g == DiffPoly::var(U, 2, RankedVar({2, 1}, 2), 3) +
                   DiffPoly::var(U, 2, RankedVar({0, 0}, 1)) * U->param(0));
    CHECK(parse_symbol("d1(d2(x1))", 2, 1) == RankedVar({1, 1}, 1));
  }

  TEST_CASE("syntax errors carry a position") {
    try {
      (void)parse_expr("x1 +\n  * x2");
      FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
      CHECK(e.line() == 2);
      CHECK(e.column() == 3);
    }
    CHECK_THROWS_AS(parse_expr("d1(x1"), SyntaxError);
    CHECK_THROWS_AS(parse_diffpoly("x1/x2", DiffFieldCtx::rationals(1), 2), SyntaxError);
  }

  TEST_CASE("arity errors") {
    auto kind = [](auto&& f) {
      try {
        f();
      } catch (const Error& e) {
        return e.kind();
      }
      return ErrorKind::Usage;
    };
    const CtxPtr Q2 = DiffFieldCtx::rationals(2);
    CHECK(kind([&] { (void)parse_diffpoly("d3(x1)", Q2, 1); }) == ErrorKind::ArityError);
    CHECK(kind([&] { (void)parse_diffpoly("D[1](x1)", Q2, 1); }) == ErrorKind::ArityError);
    CHECK(kind([&] { (void)parse_diffpoly("x3", Q2, 2); }) == ErrorKind::ArityError);
    CHECK(kind([&] { (void)parse_scalar("u4", DiffFieldCtx::partials(1, 2)); }) == ErrorKind::UndefinedGenerator);
  }

  TEST_CASE("list splitting") {
    CHECK(split_list("a; b\nc") == std::vector<std::string>{"a", "b", "c"});
    CHECK(split_list("f(a;b); c") == std::vector<std::string>{"f(a;b)", "c"});
    CHECK(split_list(" ;\n ").empty());
  }

  TEST_CASE("printing round trips the corpus") {
    for (const auto& e : parse_corpus()) {
      CAPTURE(e.text);
      const CtxPtr K = e.params ? DiffFieldCtx::partials(e.params, e.m) : DiffFieldCtx::rationals(e.m);
      const unsigned n = std::max(1u, max_variable(*parse_expr(e.text)));
      const DiffPoly f = parse_diffpoly(e.text, K, n);
      CHECK(parse_diffpoly(f.to_string(), K, n) == f);
    }
  }
}

TEST_SUITE("cli") {
  using Args = std::vector<std::string>;

  TEST_CASE("bound") {
    const CliResult r = run_cli({"--m", "2", "bound", "--r", "1", "--n", "2"});
    CHECK(r.code == 0);
    CHECK(r.out == "4\n");
  }

  TEST_CASE("solve") {
    const CliResult r = run_cli({"--m", "1", "solve", "--system", "d1(x1)-x1", "--init", "x1=1", "--N", "6"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["series"][0]["coeffs"][6]["value"] == "1/720");
  }

  TEST_CASE("pv") {
    const CliResult r = run_cli({"--m", "1", "pv", "--A", "[[0,1],[0,0]]", "--N", "3"});
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["Z"][0][1] == "1*t1");
  }

  TEST_CASE("errors are JSON with a kind") {
    const CliResult syntax = run_cli({"--m", "1", "reduce", "--system", "d1(x1", "--g", "x1"});
    CHECK(syntax.code == 2);
    CHECK(nlohmann::json::parse(syntax.out)["error"]["kind"] == "SyntaxError");
    const CliResult arity = run_cli({"--m", "2", "solve", "--system", "d3(x1)"});
    CHECK(arity.code == 2);
    CHECK(nlohmann::json::parse(arity.out)["error"]["kind"] == "ArityError");
    CHECK(run_cli({"--m", "5", "bound", "--r", "2", "--n", "2"}).code == 3);
    CHECK(run_cli({"--m", "1", "frobnicate"}).code == 2);
    CHECK(run_cli({"--help"}).code == 0);
  }

  TEST_CASE("output is deterministic") {
    const Args a = {"--m", "1", "reduce", "--system", "x1*d1(x1) - 1", "--g", "D[2](x1)"};
    const CliResult first = run_cli(a);
    CHECK(first.code == 0);
    CHECK(run_cli(a).out == first.out);
  }
}

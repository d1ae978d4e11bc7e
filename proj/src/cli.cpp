#include "diffkit/cli.hpp"

#include "diffkit/errors.hpp"
#include "diffkit/geometry.hpp"
#include "diffkit/parse.hpp"
#include "diffkit/pv.hpp"
#include "diffkit/taylor.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace diffkit {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::size_t m = 1;
  unsigned n = 0;
  unsigned N = 6;
  std::string field = "rational";
  std::string deriv_table;
  bool text = false;
  std::string file;
  std::size_t max_basis = 0;
  unsigned max_degree = 0;

  unsigned r = 1;
  std::string expr, g;
  std::vector<std::string> map, jets, system, init, matrices, ideal;
  bool explicit_r1 = false;
  bool alpha_beta = false;
};

struct Ambient {
  CtxPtr K;
  std::size_t m = 1;
  unsigned N = 6;
};

std::vector<std::string> flatten(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& s : items)
    for (auto& part : split_list(s)) out.push_back(std::move(part));
  return out;
}

std::pair<std::string, std::string> split_assignment(const std::string& s) {
  const auto eq = s.find('=');
  if (eq == std::string::npos) throw Error(ErrorKind::Usage, "expected lhs=rhs, got '" + s + "'");
  auto trim = [](std::string t) {
    const auto b = t.find_first_not_of(" \t");
    if (b == std::string::npos) return std::string();
    return t.substr(b, t.find_last_not_of(" \t") - b + 1);
  };
  return {trim(s.substr(0, eq)), trim(s.substr(eq + 1))};
}

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw Error(ErrorKind::Usage, "matrix and table entries must be strings or integers");
}

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::SyntaxError, "invalid JSON in " + what + ": " + e.what());
  }
}

Ambient build_ambient(const Options& o) {
  if (o.m < 1) throw Error(ErrorKind::Usage, "--m must be at least 1");
  Ambient a;
  a.m = o.m;
  a.N = o.N;
  if (o.field == "rational") {
    a.K = DiffFieldCtx::rationals(o.m);
  } else if (o.field.rfind("ratfn:", 0) == 0) {
    const std::size_t p = std::stoul(o.field.substr(6));
    if (p < 1) throw Error(ErrorKind::Usage, "ratfn needs at least one parameter");
    if (o.deriv_table.empty()) {
      a.K = DiffFieldCtx::partials(p, o.m);
    } else {
      const Json t = parse_json(o.deriv_table, "--deriv-table");
      if (!t.is_array() || t.size() != p)
        throw Error(ErrorKind::DimensionMismatch, "--deriv-table needs one row per parameter");
      const CtxPtr scratch = DiffFieldCtx::partials(p, o.m);
      DiffFieldCtx::Table table;
      for (const auto& row : t) {
        if (!row.is_array() || row.size() != o.m)
          throw Error(ErrorKind::DimensionMismatch, "--deriv-table rows need one entry per derivation");
        std::vector<RatFun> images;
        for (const auto& cell : row) {
          const DiffScalar s = parse_scalar(scalar_text(cell), scratch);
          if (auto q = s.as_rational()) images.emplace_back(p, *q);
          else images.push_back(*s.ratfun());
        }
        table.push_back(std::move(images));
      }
      a.K = DiffFieldCtx::rational_functions(p, o.m, std::move(table));
    }
  } else if (o.field.rfind("tower:", 0) == 0) {
    const std::size_t depth = std::stoul(o.field.substr(6));
    if (depth < 1 || depth * o.m > 9) throw Error(ErrorKind::Usage, "tower depth must give between 1 and 9 variables");
    CtxPtr K = DiffFieldCtx::rationals(o.m);
    for (std::size_t level = 0; level < depth; ++level) {
      std::vector<std::string> names;
      for (std::size_t i = 0; i < o.m; ++i) names.push_back("t" + std::to_string(level * o.m + i + 1));
      K = DiffFieldCtx::tower(K, std::move(names), o.N, true);
    }
    a.K = K;
  } else {
    throw Error(ErrorKind::Usage, "unknown --field '" + o.field + "'");
  }
  return a;
}

unsigned infer_n(const Options& o, const std::vector<std::string>& texts) {
  unsigned n = o.n;
  for (const auto& t : texts) n = std::max(n, max_variable(*parse_expr(t)));
  return std::max(n, 1u);
}

std::vector<std::string> lhs_texts(const std::vector<std::string>& assignments) {
  std::vector<std::string> out;
  for (const auto& s : assignments) out.push_back(split_assignment(s).first);
  return out;
}

Json alpha_json(const MultiIndex& a) {
  Json j = Json::array();
  for (unsigned e : a.exponents()) j.push_back(e);
  return j;
}

Json coeff_list(const TruncSeries& s) {
  Json coeffs = Json::array();
  const int p = s.exact() ? static_cast<int>(s.truncation()) : s.precision();
  if (p < 0) return coeffs;
  for (const auto& alpha : indices_up_to(s.nvars(), static_cast<unsigned>(p)))
    coeffs.push_back({{"alpha", alpha_json(alpha)}, {"value", s.coeff(alpha).to_string()}});
  return coeffs;
}

int series_precision(const TruncSeries& s) { return s.exact() ? static_cast<int>(s.truncation()) : s.precision(); }

Json strings(const std::vector<std::string>& v) { return Json(v); }

std::string join_lines(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += s + "\n";
  return out;
}

// ------------------------------------------------------------- commands

std::string cmd_gamma(const Options& o, const Ambient& a, bool text) {
  const unsigned n = std::max(o.n, 1u);
  std::vector<std::string> names;
  for (const auto& v : gamma_set(n, o.r, a.m)) names.push_back(to_string(v));
  if (text) return join_lines(names);
  return Json{{"gamma", names}, {"size", names.size()}}.dump(2) + "\n";
}

std::string cmd_bound(const Options& o, const Ambient& a, bool text) {
  const unsigned n = std::max(o.n, 1u);
  if (o.alpha_beta) {
    const AlphaBeta ab = alpha_beta(n, a.m);
    if (text) return ab.C.get_str() + " " + ab.alpha.get_str() + " " + ab.beta.get_str() + "\n";
    return Json{{"C", ab.C.get_str()}, {"alpha", ab.alpha.get_str()}, {"beta", ab.beta.get_str()}}.dump(2) + "\n";
  }
  return kernel_bound(Integer(o.r), a.m, n).get_str() + "\n";
}

std::string series_output(const TruncSeries& s, bool text) {
  if (text) return s.to_string() + "\n";
  return Json{{"series", s.to_string()}, {"coeffs", coeff_list(s)}, {"precision", series_precision(s)}}.dump(2) +
         "\n";
}

std::string cmd_taylor(const Options& o, const Ambient& a, bool text, bool twisted) {
  if (o.expr.empty()) throw Error(ErrorKind::Usage, "--expr is required");
  const auto maps = flatten(o.map);
  const auto jets = flatten(o.jets);
  std::vector<std::string> texts{o.expr};
  for (const auto& s : lhs_texts(jets)) texts.push_back(s);
  const unsigned n = infer_n(o, texts);
  PointMap phi(a.K, a.K);
  for (const auto& s : maps) {
    auto [lhs, rhs] = split_assignment(s);
    if (lhs.size() < 2 || lhs[0] != 'u' || lhs.find_first_not_of("0123456789", 1) != std::string::npos)
      throw Error(ErrorKind::Usage, "--map entries read u<j>=<scalar>, got '" + s + "'");
    const std::size_t j = std::stoul(lhs.substr(1));
    if (j == 0) throw Error(ErrorKind::UndefinedGenerator, "parameters are numbered from 1");
    phi.set_param(j - 1, parse_scalar(rhs, a.K));
  }
  for (const auto& s : jets) {
    auto [lhs, rhs] = split_assignment(s);
    phi.set_jet(parse_symbol(lhs, a.m, n), parse_scalar(rhs, a.K));
  }
  const ExprPtr e = parse_expr(o.expr);
  TruncSeries out;
  if (max_variable(*e) == 0) {
    const DiffScalar x = to_scalar(*e, a.K);
    out = twisted ? twisted_taylor(phi, x, a.N) : taylor(phi, x, a.N);
  } else {
    const DiffPoly f = to_diffpoly(*e, a.K, n);
    out = twisted ? twisted_taylor(phi, f, a.N) : taylor(phi, f, a.N);
  }
  return series_output(out, text);
}

std::vector<DiffPoly> parse_system(const std::vector<std::string>& system, const CtxPtr& K, unsigned n) {
  std::vector<DiffPoly> out;
  for (const auto& s : system) out.push_back(parse_diffpoly(s, K, n));
  if (out.empty()) throw Error(ErrorKind::Usage, "--system is required");
  return out;
}

std::string cmd_solve(const Options& o, const Ambient& a, bool text) {
  const auto system = flatten(o.system);
  const auto init = flatten(o.init);
  std::vector<std::string> texts = system;
  for (const auto& s : lhs_texts(init)) texts.push_back(s);
  const unsigned n = infer_n(o, texts);
  const CharSet lambda(parse_system(system, a.K, n));
  std::map<RankedVar, DiffScalar, VarGreater> values;
  for (const auto& s : init) {
    auto [lhs, rhs] = split_assignment(s);
    const RankedVar v = parse_symbol(lhs, a.m, n);
    if (!values.emplace(v, parse_scalar(rhs, a.K)).second)
      throw Error(ErrorKind::Usage, "duplicate initial value for " + to_string(v));
  }
  const auto sol = series_solve(lambda, values, a.N);
  if (text) {
    std::string out;
    for (std::size_t i = 0; i < sol.size(); ++i) out += "x" + std::to_string(i + 1) + " = " + sol[i].to_string() + "\n";
    return out;
  }
  Json series = Json::array();
  int precision = static_cast<int>(a.N);
  for (std::size_t i = 0; i < sol.size(); ++i) {
    series.push_back({{"var", "x" + std::to_string(i + 1)}, {"coeffs", coeff_list(sol[i])}});
    precision = std::min(precision, series_precision(sol[i]));
  }
  return Json{{"series", series}, {"precision", precision}}.dump(2) + "\n";
}

MatrixK parse_matrix(const std::string& text, const CtxPtr& K) {
  const Json j = parse_json(text, "--A");
  if (!j.is_array() || j.empty()) throw Error(ErrorKind::DimensionMismatch, "a matrix is a nonempty array of rows");
  std::vector<std::vector<DiffScalar>> rows;
  for (const auto& row : j) {
    if (!row.is_array()) throw Error(ErrorKind::DimensionMismatch, "matrix rows must be arrays");
    std::vector<DiffScalar> r;
    for (const auto& cell : row) r.push_back(parse_scalar(scalar_text(cell), K));
    rows.push_back(std::move(r));
  }
  return MatrixK(K, std::move(rows));
}

std::string cmd_pv(const Options& o, const Ambient& a, bool text) {
  std::vector<MatrixK> A;
  for (const auto& s : o.matrices) A.push_back(parse_matrix(s, a.K));
  const SeriesMatrix Z = pv_fundamental_solution(A, a.N);
  std::vector<std::vector<std::string>> rows;
  int precision = static_cast<int>(a.N);
  for (const auto& row : Z) {
    std::vector<std::string> r;
    for (const auto& s : row) {
      r.push_back(s.to_string());
      precision = std::min(precision, series_precision(s));
    }
    rows.push_back(std::move(r));
  }
  if (text) {
    std::string out;
    for (const auto& r : rows) {
      std::string line;
      for (const auto& s : r) line += (line.empty() ? "" : " | ") + s;
      out += line + "\n";
    }
    return out;
  }
  return Json{{"Z", rows}, {"precision", precision}}.dump(2) + "\n";
}

std::string ideal_output(const AlgIdeal& I, bool text) {
  if (text) return join_lines(I.to_strings());
  return Json{{"variables", I.ring()->names()}, {"generators", I.to_strings()}}.dump(2) + "\n";
}

std::string cmd_prolong(const Options& o, const Ambient& a, bool text) {
  const auto gens_text = flatten(o.ideal);
  const unsigned n = infer_n(o, gens_text);
  const JetRing base = jet_ring(a.K, n, 0);
  std::vector<AlgPoly> gens;
  for (const auto& s : gens_text) gens.push_back(to_pol(parse_diffpoly(s, a.K, n), base));
  const AlgIdeal X(base.ring, std::move(gens));
  if (o.explicit_r1 && o.r != 1) throw Error(ErrorKind::Usage, "--explicit applies to r = 1 only");
  return ideal_output(o.explicit_r1 ? prolongation_explicit_r1(X) : prolongation_tau(X, o.r), text);
}

std::string cmd_jet(const Options& o, const Ambient& a, bool text) {
  const auto system = flatten(o.system);
  const unsigned n = infer_n(o, system);
  const CharSet lambda(parse_system(system, a.K, n));
  return ideal_output(jet_ideal(lambda, o.r), text);
}

std::string cmd_reduce(const Options& o, const Ambient& a, bool text) {
  if (o.g.empty()) throw Error(ErrorKind::Usage, "--g is required");
  const auto system = flatten(o.system);
  std::vector<std::string> texts = system;
  texts.push_back(o.g);
  const unsigned n = infer_n(o, texts);
  const CharSet lambda(parse_system(system, a.K, n));
  const DiffPoly g = parse_diffpoly(o.g, a.K, n);
  const DivisionResult d = diff_divide(g, lambda);
  bool reduced = true;
  for (const auto& f : lambda.elems()) reduced = reduced && is_reduced(d.remainder, f);
  if (text) return "premultiplier: " + d.premultiplier.to_string() + "\nremainder: " + d.remainder.to_string() + "\n";
  Json cert = Json::array();
  for (const auto& t : d.certificate)
    cert.push_back({{"multiplier", t.multiplier.to_string()},
                    {"theta", alpha_json(t.theta)},
                    {"element", lambda.elems()[t.element].to_string()}});
  Json factors = Json::array();
  for (const auto& [k, sep] : d.factors)
    factors.push_back({{"element", lambda.elems()[k].to_string()}, {"kind", sep ? "separant" : "initial"}});
  return Json{{"premultiplier", d.premultiplier.to_string()},
              {"remainder", d.remainder.to_string()},
              {"reduced", reduced},
              {"factors", factors},
              {"certificate", cert}}
             .dump(2) +
         "\n";
}

std::string cmd_axiom(const Options& o, const Ambient& a, bool text) {
  const auto gens_text = flatten(o.ideal);
  const unsigned n = infer_n(o, gens_text);
  const AlphaBeta ab = alpha_beta(n, a.m);
  if (!ab.C.fits_uint_p() || ab.alpha > 400)
    throw Error(ErrorKind::ResourceLimit, "the frame Gamma_n(C) with C = " + ab.C.get_str() + " is too large");
  const JetRing frame = jet_ring(a.K, n, static_cast<unsigned>(ab.C.get_ui()));
  std::vector<AlgPoly> gens;
  for (const auto& s : gens_text) gens.push_back(to_pol(parse_diffpoly(s, a.K, n), frame));
  const AxiomReport rep = axiom_check(AlgIdeal(frame.ring, std::move(gens)), n);
  if (text) {
    return std::string("holds: ") + (rep.holds ? "true" : "false") +
           (rep.failing_generator ? "\nfailing generator: " + *rep.failing_generator : std::string()) + "\n";
  }
  Json j;
  j["holds"] = rep.holds;
  j["failing_generator"] = rep.failing_generator ? Json(*rep.failing_generator) : Json(nullptr);
  j["pi"] = strings(rep.pi.to_strings());
  j["tau"] = strings(rep.tau.to_strings());
  j["psi"] = strings(rep.psi.to_strings());
  return j.dump(2) + "\n";
}

std::string error_json(std::string_view kind, const std::string& message) {
  return Json{{"error", {{"kind", kind}, {"message", message}}}}.dump(2) + "\n";
}

// Appends `--key value` pairs from a JSON object file for keys absent from args.
void merge_file(std::vector<std::string>& args, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Usage, "cannot read --file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const Json j = parse_json(buf.str(), path);
  if (!j.is_object()) throw Error(ErrorKind::Usage, "--file must hold a JSON object of option values");
  for (const auto& [key, value] : j.items()) {
    const std::string flag = "--" + key;
    if (std::find(args.begin(), args.end(), flag) != args.end()) continue;
    auto push = [&](const Json& v) {
      args.push_back(flag);
      args.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    };
    if (value.is_array() && key != "deriv-table") {
      for (const auto& v : value) push(v);
    } else if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back(flag);
    } else {
      push(value);
    }
  }
}

}  // namespace

CliResult run_cli(std::vector<std::string> args) {
  Options o;
  CLI::App app{"diffkit: exact differential-algebra workbench", "diffkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--m", o.m, "number of commuting derivations");
  app.add_option("--n", o.n, "number of differential indeterminates (inferred when omitted)");
  app.add_option("--N", o.N, "truncation order");
  app.add_option("--field", o.field, "rational | ratfn:p | tower:depth");
  app.add_option("--deriv-table", o.deriv_table, "JSON p x m table, entry [j][i] = delta_i(u_j)");
  app.add_flag("--text", o.text, "plain text instead of JSON");
  app.add_flag("--json", "JSON output (default)");
  app.add_option("--file", o.file, "JSON object with further option values");
  app.add_option("--max-basis", o.max_basis, "Groebner basis size limit");
  app.add_option("--max-degree", o.max_degree, "Groebner degree limit");

  auto* gamma = app.add_subcommand("gamma", "list Gamma_n(r) in the orderly ranking");
  gamma->add_option("--r", o.r);
  auto* bound = app.add_subcommand("bound", "kernel bound C^n_{r,m}");
  bound->add_option("--r", o.r);
  bound->add_flag("--alpha-beta", o.alpha_beta, "print C^n_{1,m}, alpha(n), beta(n)");
  auto* taylor_cmd = app.add_subcommand("taylor", "Taylor morphism of a scalar or polynomial");
  auto* twist = app.add_subcommand("twist", "twisted Taylor morphism");
  for (auto* c : {taylor_cmd, twist}) {
    c->add_option("--expr", o.expr, "scalar or differential polynomial");
    c->add_option("--map", o.map, "parameter images u<j>=<scalar>")->allow_extra_args(false);
    c->add_option("--jet", o.jets, "jet values <symbol>=<scalar>")->allow_extra_args(false);
  }
  auto* solve = app.add_subcommand("solve", "series solution of an explicit system");
  solve->add_option("--system", o.system, "elements, ';'-separated or repeated")->allow_extra_args(false);
  solve->add_option("--init", o.init, "initial values <symbol>=<scalar>")->allow_extra_args(false);
  auto* pv = app.add_subcommand("pv", "fundamental solution of delta_i Z = A_i Z");
  pv->add_option("--A", o.matrices, "one JSON matrix per derivation")->allow_extra_args(false);
  auto* prolong = app.add_subcommand("prolong", "prolongation tau_r of an algebraic variety");
  prolong->add_option("--ideal", o.ideal, "generators in x1..xn")->allow_extra_args(false);
  prolong->add_option("--r", o.r);
  prolong->add_flag("--explicit", o.explicit_r1, "use the explicit first-prolongation equations");
  auto* jet = app.add_subcommand("jet", "jet ideal of a characteristic set");
  jet->add_option("--system", o.system)->allow_extra_args(false);
  jet->add_option("--r", o.r);
  auto* reduce = app.add_subcommand("reduce", "differential division");
  reduce->add_option("--system", o.system)->allow_extra_args(false);
  reduce->add_option("--g", o.g, "polynomial to reduce");
  auto* axiom = app.add_subcommand("axiom-check", "geometric axiom condition on W");
  axiom->add_option("--ideal", o.ideal, "generators of I(W) in jet notation")->allow_extra_args(false);

  const GroebnerLimits saved = default_limits();
  CliResult res;
  try {
    for (std::size_t k = 0; k + 1 < args.size(); ++k)
      if (args[k] == "--file") merge_file(args, args[k + 1]);
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
      res.out = app.help();
      return res;
    } catch (const CLI::ParseError& e) {
      res.code = 2;
      res.out = error_json(error_kind_name(ErrorKind::Usage), e.what());
      return res;
    }
    if (o.max_basis) default_limits().max_basis = o.max_basis;
    if (o.max_degree) default_limits().max_degree = o.max_degree;
    const Ambient amb = build_ambient(o);
    const bool text = o.text;
    if (*gamma) res.out = cmd_gamma(o, amb, text);
    else if (*bound) res.out = cmd_bound(o, amb, text);
    else if (*taylor_cmd) res.out = cmd_taylor(o, amb, text, false);
    else if (*twist) res.out = cmd_taylor(o, amb, text, true);
    else if (*solve) res.out = cmd_solve(o, amb, text);
    else if (*pv) res.out = cmd_pv(o, amb, text);
    else if (*prolong) res.out = cmd_prolong(o, amb, text);
    else if (*jet) res.out = cmd_jet(o, amb, text);
    else if (*reduce) res.out = cmd_reduce(o, amb, text);
    else if (*axiom) res.out = cmd_axiom(o, amb, text);
  } catch (const Error& e) {
    res.code = e.kind() == ErrorKind::ResourceLimit ? 3 : 2;
    res.out = error_json(error_kind_name(e.kind()), e.what());
  } catch (const std::invalid_argument& e) {
    res.code = 2;
    res.out = error_json(error_kind_name(ErrorKind::Usage), std::string("bad number: ") + e.what());
  } catch (const std::exception& e) {
    res.code = 1;
    res.out = error_json("Internal", e.what());
  }
  default_limits() = saved;
  return res;
}

}  // namespace diffkit

// defeig: defective eigenvalues of dense complex matrices, computed through
// the regularized least-squares formulation.
//
// Subcommands:
//   solve     one pseudo-eigenvalue solve (optionally orthonormalized and
//             certified), JSON report on stdout
//   identify  numerical nullity + Segre anchor sweep, JSON report on stdout
//   fixtures  rerun the bundled reference problems against their known
//             values (human-readable table on stderr, JSON on stdout)
//
// Exit codes: 0 success/converged, 1 input error, 2 non-convergence or a
// structural solver failure.

#include <charconv>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "defeig/defeig.hpp"
#include "defeig/report.hpp"

using namespace defeig;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitNotConverged = 2;

int exit_code_for(Errc kind) {
  switch (kind) {
    case Errc::io_error:
    case Errc::parse_error:
    case Errc::dimension_mismatch:
    case Errc::invalid_argument:
    case Errc::unknown_fixture:
      return kExitInputError;
    default:
      return kExitNotConverged;
  }
}

Complex parse_lambda0(const std::string& text) {
  auto parse_part = [&](std::string_view tok) {
    if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
    double v = 0.0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    require(ec == std::errc() && p == tok.data() + tok.size(),
            Errc::parse_error, "bad --lambda0 component '" + std::string(tok) + "'");
    return v;
  };
  size_t comma = text.find(',');
  if (comma == std::string::npos) return {parse_part(text), 0.0};
  return {parse_part(std::string_view(text).substr(0, comma)),
          parse_part(std::string_view(text).substr(comma + 1))};
}

MatrixFormat parse_format(const std::string& fmt) {
  if (fmt == "mm") return MatrixFormat::matrix_market;
  if (fmt == "csv") return MatrixFormat::csv;
  raise(Errc::invalid_argument, "unknown --format '" + fmt + "' (mm|csv)");
}

json input_json(const std::string& path, const ComplexMatrix& a,
                Complex lambda0, std::uint64_t seed) {
  return {{"matrix", path},
          {"file_hash", file_digest(path)},
          {"rows", a.rows()},
          {"cols", a.cols()},
          {"lambda0", to_json(lambda0)},
          {"seed", seed}};
}

void emit(const json& doc) { std::cout << doc.dump(2) << std::endl; }

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

struct SolveArgs {
  std::string matrix;
  std::string lambda0;
  int m = 1;
  int k = 1;
  std::uint64_t seed = 42;
  int max_iter = 50;
  bool orthonormalize = false;
  bool with_certificate = false;
  std::string format = "mm";
};

int run_solve(const SolveArgs& args) {
  ComplexMatrix a = read_matrix(args.matrix, parse_format(args.format));
  Complex lambda0 = parse_lambda0(args.lambda0);

  SolverConfig cfg;
  cfg.seed = args.seed;
  cfg.max_iter = args.max_iter;

  json doc;
  doc["input"] = input_json(args.matrix, a, lambda0, args.seed);
  doc["input"]["m"] = args.m;
  doc["input"]["k"] = args.k;

  PseudoEigSolution sol = pseudoeig(a, lambda0, args.m, args.k, cfg);
  if (args.orthonormalize) {
    doc["unrefined"] = to_json(sol);
    sol = refine(a, sol, cfg);
  }
  doc["solution"] = to_json(sol);

  if (args.with_certificate) {
    doc["certificate"] = to_json(certify(a, sol));
  }
  emit(doc);
  return sol.converged ? kExitOk : kExitNotConverged;
}

// ---------------------------------------------------------------------------
// identify
// ---------------------------------------------------------------------------

struct IdentifyArgs {
  std::string matrix;
  std::string lambda0;
  double theta = -1.0;
  int kmax = 8;
  std::uint64_t seed = 42;
  std::string format = "mm";
};

int run_identify(const IdentifyArgs& args) {
  ComplexMatrix a = read_matrix(args.matrix, parse_format(args.format));
  Complex lambda0 = parse_lambda0(args.lambda0);
  double theta = args.theta > 0.0 ? args.theta : default_theta(a);

  SolverConfig cfg;
  cfg.seed = args.seed;
  cfg.theta = theta;

  int m = numerical_nullity(a, lambda0, theta);
  json doc;
  doc["input"] = input_json(args.matrix, a, lambda0, args.seed);
  doc["input"]["theta"] = theta;
  doc["input"]["kmax"] = args.kmax;

  json diag{{"theta", theta}, {"nullity", m}};
  if (m == 0) {
    diag["k_accepted"] = nullptr;
    diag["rows"] = json::array();
    diag["note"] =
        "no singular value of A - lambda0 I falls below theta; lambda0 does "
        "not look like an eigenvalue estimate at this tolerance";
    doc["diagnostics"] = diag;
    emit(doc);
    return kExitNotConverged;
  }

  AnchorSearchResult res = anchor_search(a, lambda0, m, args.kmax, cfg);
  if (res.k_accepted)
    diag["k_accepted"] = *res.k_accepted;
  else
    diag["k_accepted"] = nullptr;
  diag["rows"] = to_json(res.diagnostics);
  doc["diagnostics"] = diag;
  emit(doc);
  return res.k_accepted ? kExitOk : kExitNotConverged;
}

// ---------------------------------------------------------------------------
// fixtures
// ---------------------------------------------------------------------------

struct Check {
  std::string name;
  double actual;
  std::string expected;
  bool pass;
};

struct FixtureReport {
  std::string name;
  std::vector<Check> checks;
  bool pass() const {
    for (const Check& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

Check in_range(const std::string& name, double actual, double lo, double hi) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "[%.3g, %.3g]", lo, hi);
  return {name, actual, buf, actual >= lo && actual <= hi};
}

Check at_most(const std::string& name, double actual, double hi) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "<= %.3g", hi);
  return {name, actual, buf, actual <= hi};
}

Check at_least(const std::string& name, double actual, double lo) {
  char buf[64];
  std::snprintf(buf, sizeof buf, ">= %.3g", lo);
  return {name, actual, buf, actual >= lo};
}

Complex nearest_to(const std::vector<Complex>& values, Complex target) {
  Complex best = values.front();
  for (Complex v : values)
    if (std::abs(v - target) < std::abs(best - target)) best = v;
  return best;
}

Complex spectrum_mean(const std::vector<Complex>& values) {
  Complex sum = 0.0;
  for (Complex v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

FixtureReport fixture_grid20() {
  FixtureReport rep{"grid20", {}};
  ComplexMatrix a = fixtures::grid20();

  rep.checks.push_back(in_range(
      "nullity(theta=1e-2) at estimate near 2",
      numerical_nullity(a, fixtures::grid20_lambda0_near_2(), 1e-2), 3, 3));
  rep.checks.push_back(in_range(
      "nullity(theta=1e-2) at estimate near 3",
      numerical_nullity(a, fixtures::grid20_lambda0_near_3(), 1e-2), 2, 2));

  PseudoEigSolution s2 = pseudoeig(a, fixtures::grid20_lambda0_near_2(), 3, 3);
  rep.checks.push_back(
      at_most("3x3 solve |lambda - 2|", std::abs(s2.lambda_hat - Complex(2.0)),
              1e-12));
  rep.checks.push_back(at_most("3x3 solve residual", s2.residual, 1e-12));
  rep.checks.push_back(
      in_range("3x3 condition (reference 58.7)", s2.condition, 5.0, 600.0));

  PseudoEigSolution s3 = pseudoeig(a, fixtures::grid20_lambda0_near_3(), 2, 5);
  rep.checks.push_back(
      at_most("2x5 solve |lambda - 3|", std::abs(s3.lambda_hat - Complex(3.0)),
              1e-12));
  rep.checks.push_back(
      in_range("2x5 condition (reference 33.9)", s3.condition, 3.0, 400.0));
  return rep;
}

FixtureReport fixture_jbiteA() {
  FixtureReport rep{"jbiteA", {}};
  ComplexMatrix a = fixtures::jbiteA();
  Complex lam0 = spectrum_mean(baseline_eigenvalues(a));
  PseudoEigSolution sol = pseudoeig(a, lam0, 1, 5);
  rep.checks.push_back(at_most("unrefined |lambda - 2|",
                               std::abs(sol.lambda_hat - Complex(2.0)), 1e-11));
  rep.checks.push_back(in_range("unrefined backward error (reference 1.3e-9)",
                                sol.backward_error, 1e-11, 1e-7));
  PseudoEigSolution ref = refine(a, sol, {});
  rep.checks.push_back(at_most("refined |lambda - 2|",
                               std::abs(ref.lambda_hat - Complex(2.0)), 1e-13));
  rep.checks.push_back(at_most("refined backward error (reference 1.25e-14)",
                               ref.backward_error, 1e-12));
  rep.checks.push_back(in_range("refined |S(4,5)| (reference 10050.383...)",
                                std::abs(ref.params.S(3, 4)), 10050.0, 10051.0));
  return rep;
}

FixtureReport fixture_jbiteA_perturbed() {
  FixtureReport rep{"jbiteA-perturbed", {}};
  ComplexMatrix a = fixtures::jbiteA_perturbed();
  Complex lam0 = spectrum_mean(baseline_eigenvalues(a));
  PseudoEigSolution sol = pseudoeig(a, lam0, 1, 5);
  PseudoEigSolution ref = refine(a, sol, {});
  rep.checks.push_back(at_most("before: residual (reference 2.3e-6)",
                               sol.residual, 1e-4));
  rep.checks.push_back(at_most("before: backward error (reference 6.7e-2)",
                               sol.backward_error, 1.0));
  rep.checks.push_back(at_most("before: forward error (reference 4.4e-3)",
                               std::abs(sol.lambda_hat - Complex(2.0)), 5e-2));
  rep.checks.push_back(at_most("after: residual (reference 2.9e-6)",
                               ref.residual, 1e-4));
  rep.checks.push_back(at_most("after: backward error (reference 2.9e-6)",
                               ref.backward_error, 3e-5));
  rep.checks.push_back(at_most("after: forward error (reference 3.4e-7)",
                               std::abs(ref.lambda_hat - Complex(2.0)), 3e-6));
  return rep;
}

FixtureReport fixture_example4() {
  FixtureReport rep{"example4", {}};
  ComplexMatrix a = fixtures::example4();
  Complex lam0 = nearest_to(baseline_eigenvalues(a), 2.0);
  PseudoEigSolution sol = pseudoeig(a, lam0, 2, 2);
  rep.checks.push_back(at_most("2x2 solve |lambda - 2|",
                               std::abs(sol.lambda_hat - Complex(2.0)), 1e-13));
  rep.checks.push_back(
      at_most("condition (reference <= 19.95)", sol.condition, 200.0));
  BackwardCertificate cert = certify(a, sol);
  rep.checks.push_back(in_range("certificate Jordan block verified",
                                cert.jordan_block_verified ? 1.0 : 0.0, 1.0,
                                1.0));
  return rep;
}

FixtureReport fixture_matrixB() {
  FixtureReport rep{"matrixB", {}};
  ComplexMatrix b = fixtures::matrixB();
  Complex lam0 = spectrum_mean(baseline_eigenvalues(b));
  PseudoEigSolution sol = pseudoeig(b, lam0, 2, 2);
  rep.checks.push_back(at_most(
      "2x2 solve |lambda - 2.000125| (reference 2.000125000000078)",
      std::abs(sol.lambda_hat - Complex(2.000125)), 1e-9));
  rep.checks.push_back(
      at_most("condition (reference 14.47)", sol.condition, 200.0));
  return rep;
}

int run_fixtures(const std::string& name) {
  std::vector<FixtureReport> reports;
  bool all = name == "all";
  if (all || name == "grid20") reports.push_back(fixture_grid20());
  if (all || name == "jbiteA") reports.push_back(fixture_jbiteA());
  if (all || name == "jbiteA-perturbed")
    reports.push_back(fixture_jbiteA_perturbed());
  if (all || name == "example4") reports.push_back(fixture_example4());
  if (all || name == "matrixB") reports.push_back(fixture_matrixB());
  require(!reports.empty(), Errc::unknown_fixture,
          "unknown fixture '" + name +
              "' (grid20|jbiteA|jbiteA-perturbed|example4|matrixB|all)");

  bool pass = true;
  json jfix = json::array();
  for (const FixtureReport& rep : reports) {
    std::fprintf(stderr, "== %s\n", rep.name.c_str());
    json jchecks = json::array();
    for (const Check& c : rep.checks) {
      std::fprintf(stderr, "   %-58s actual %-12.5g expected %-14s %s\n",
                   c.name.c_str(), c.actual, c.expected.c_str(),
                   c.pass ? "pass" : "FAIL");
      jchecks.push_back({{"name", c.name},
                         {"actual", c.actual},
                         {"expected", c.expected},
                         {"pass", c.pass}});
    }
    pass = pass && rep.pass();
    jfix.push_back(
        {{"name", rep.name}, {"pass", rep.pass()}, {"checks", jchecks}});
  }
  emit(json{{"fixtures", jfix}, {"pass", pass}});
  return pass ? kExitOk : kExitNotConverged;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"defective eigenvalue solver (pseudo-eigenvalue formulation)"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand("solve", "solve one pseudo-eigenvalue");
  solve->add_option("--matrix", solve_args.matrix, "matrix file")->required();
  solve->add_option("--lambda0", solve_args.lambda0,
                    "eigenvalue estimate re[,im]")->required();
  solve->add_option("--m", solve_args.m, "geometric multiplicity")->required();
  solve->add_option("--k", solve_args.k, "Segre anchor")->required();
  solve->add_option("--seed", solve_args.seed, "seed for the random parameter");
  solve->add_option("--max-iter", solve_args.max_iter, "Gauss-Newton cap");
  solve->add_flag("--orthonormalize", solve_args.orthonormalize,
                  "re-run after the orthonormalization transform");
  solve->add_flag("--certify", solve_args.with_certificate,
                  "attach the backward-error certificate");
  solve->add_option("--format", solve_args.format, "matrix format (mm|csv)");

  IdentifyArgs id_args;
  CLI::App* identify =
      app.add_subcommand("identify", "identify the multiplicity support");
  identify->add_option("--matrix", id_args.matrix, "matrix file")->required();
  identify->add_option("--lambda0", id_args.lambda0,
                       "eigenvalue estimate re[,im]")->required();
  identify->add_option("--theta", id_args.theta,
                       "nullity tolerance (default 1e-2*||A||_F/n; must "
                       "separate |lambda0 - lambda| from the other "
                       "eigenvalues)");
  identify->add_option("--kmax", id_args.kmax, "largest anchor to try");
  identify->add_option("--seed", id_args.seed, "seed for the random parameter");
  identify->add_option("--format", id_args.format, "matrix format (mm|csv)");

  std::string fixture_name;
  CLI::App* fixtures_cmd =
      app.add_subcommand("fixtures", "rerun the bundled reference problems");
  fixtures_cmd
      ->add_option("--name", fixture_name,
                   "grid20|jbiteA|jbiteA-perturbed|example4|matrixB|all")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) return run_solve(solve_args);
    if (*identify) return run_identify(id_args);
    return run_fixtures(fixture_name);
  } catch (const Error& e) {
    emit(error_json(errc_name(e.kind()), e.what()));
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    emit(error_json("internal", e.what()));
    return kExitInputError;
  }
}

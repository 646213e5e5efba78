#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

using json = nlohmann::json;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  std::string out_path =
      "cli_test_out_" + std::to_string(counter++) + ".json";
  std::string cmd = std::string(DEFEIG_CLI_PATH) + " " + args + " > " +
                    out_path + " 2> /dev/null";
  int raw = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = (raw == -1) ? -1 : WEXITSTATUS(raw);
  r.out = slurp(out_path);
  std::remove(out_path.c_str());
  return r;
}

const std::string kFixtures = DEFEIG_FIXTURES_DIR;

}  // namespace

TEST_CASE("solve emits a converged JSON report") {
  RunResult r = run_cli("solve --matrix " + kFixtures +
                        "/jbiteA.mtx --lambda0 1.9 --m 1 --k 5 "
                        "--orthonormalize --certify");
  CHECK(r.exit_code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["solution"]["converged"].get<bool>());
  double re = doc["solution"]["lambda_hat"]["re"].get<double>();
  double im = doc["solution"]["lambda_hat"]["im"].get<double>();
  CHECK(std::abs(re - 2.0) <= 1e-12);
  CHECK(std::abs(im) <= 1e-12);
  CHECK(doc["input"]["file_hash"].get<std::string>().rfind("fnv1a:", 0) == 0);
  CHECK(doc["certificate"]["jordan_block_verified"].get<bool>());
  // X is n x k of {re, im} objects.
  CHECK(doc["solution"]["X"].size() == 5);
  CHECK(doc["solution"]["X"][0].size() == 5);
}

TEST_CASE("solve on the 20x20 fixture near 3") {
  RunResult r = run_cli("solve --matrix " + kFixtures +
                        "/grid20.mtx --lambda0 3.001287762162967 --m 2 --k 5");
  CHECK(r.exit_code == 0);
  json doc = json::parse(r.out);
  CHECK(std::abs(doc["solution"]["lambda_hat"]["re"].get<double>() - 3.0) <=
        1e-12);
  CHECK(std::abs(doc["solution"]["lambda_hat"]["im"].get<double>()) <= 1e-12);
}

TEST_CASE("solve output is bit-identical across runs") {
  std::string args = "solve --matrix " + kFixtures +
                     "/grid20.mtx --lambda0 "
                     "1.999881443477439,-0.000118714860725 --m 3 --k 3 "
                     "--seed 11";
  RunResult a = run_cli(args);
  RunResult b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("missing files produce a JSON error and exit 1") {
  RunResult r = run_cli("solve --matrix no_such_file.mtx --lambda0 1 --m 1 --k 1");
  CHECK(r.exit_code == 1);
  json doc = json::parse(r.out);
  CHECK(doc["error"]["kind"].get<std::string>() == "io");
}

TEST_CASE("csv input is accepted") {
  std::string path = "cli_test_j2.csv";
  {
    std::ofstream out(path);
    out << "0,1\n0,0\n";
  }
  RunResult r = run_cli("solve --matrix " + path +
                        " --lambda0 0 --m 1 --k 2 --format csv");
  std::remove(path.c_str());
  CHECK(r.exit_code == 0);
  json doc = json::parse(r.out);
  CHECK(std::abs(doc["solution"]["lambda_hat"]["re"].get<double>()) <= 1e-12);
}

TEST_CASE("identify recovers both supports of the 20x20 fixture") {
  RunResult near2 = run_cli("identify --matrix " + kFixtures +
                            "/grid20.mtx --lambda0 "
                            "1.999881443477439,-0.000118714860725 "
                            "--theta 1e-2 --kmax 4");
  CHECK(near2.exit_code == 0);
  json d2 = json::parse(near2.out);
  CHECK(d2["diagnostics"]["nullity"].get<int>() == 3);
  CHECK(d2["diagnostics"]["k_accepted"].get<int>() == 3);

  RunResult near3 = run_cli("identify --matrix " + kFixtures +
                            "/grid20.mtx --lambda0 3.001287762162967 "
                            "--theta 1e-2 --kmax 6");
  CHECK(near3.exit_code == 0);
  json d3 = json::parse(near3.out);
  CHECK(d3["diagnostics"]["nullity"].get<int>() == 2);
  CHECK(d3["diagnostics"]["k_accepted"].get<int>() == 5);
  CHECK(d3["diagnostics"]["rows"].size() == 6);
}

TEST_CASE("identify with no nullity reports a diagnostic and exits 2") {
  std::string path = "cli_test_far.csv";
  {
    std::ofstream out(path);
    out << "1,0\n0,2\n";
  }
  RunResult r = run_cli("identify --matrix " + path +
                        " --lambda0 50 --theta 1e-6 --format csv");
  std::remove(path.c_str());
  CHECK(r.exit_code == 2);
  json doc = json::parse(r.out);
  CHECK(doc["diagnostics"]["nullity"].get<int>() == 0);
  CHECK(doc["diagnostics"]["k_accepted"].is_null());
}

TEST_CASE("identify a simple eigenvalue") {
  std::string path = "cli_test_diag.csv";
  {
    std::ofstream out(path);
    out << "1,0,0\n0,2,0\n0,0,3\n";
  }
  RunResult r = run_cli("identify --matrix " + path +
                        " --lambda0 0.99 --theta 0.1 --kmax 2 --format csv");
  std::remove(path.c_str());
  CHECK(r.exit_code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["diagnostics"]["nullity"].get<int>() == 1);
  CHECK(doc["diagnostics"]["k_accepted"].get<int>() == 1);
}

TEST_CASE("fixtures subcommand aggregates pass/fail") {
  RunResult r = run_cli("fixtures --name jbiteA");
  CHECK(r.exit_code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["pass"].get<bool>());
  CHECK(doc["fixtures"][0]["name"].get<std::string>() == "jbiteA");

  RunResult bad = run_cli("fixtures --name nonsense");
  CHECK(bad.exit_code == 1);
  json err = json::parse(bad.out);
  CHECK(err["error"]["kind"].get<std::string>() == "unknown-fixture");
}

TEST_CASE("fixtures --name all exits zero only when every check passes") {
  RunResult r = run_cli("fixtures --name all");
  CHECK(r.exit_code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["pass"].get<bool>());
  CHECK(doc["fixtures"].size() == 5);
  for (const auto& f : doc["fixtures"]) CHECK(f["pass"].get<bool>());
}

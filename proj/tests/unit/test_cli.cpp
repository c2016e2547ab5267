#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() / ("wcalc_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path write_file(const std::string& name, const std::string& text) {
  const fs::path p = scratch_dir() / name;
  std::ofstream(p, std::ios::binary) << text;
  return p;
}

Run run(const std::string& args) {
  const fs::path out = scratch_dir() / "stdout.txt";
  const fs::path err = scratch_dir() / "stderr.txt";
  const std::string cmd = std::string("\"") + WCALC_CLI_PATH + "\" " + args + " >\"" +
                          out.string() + "\" 2>\"" + err.string() + "\"";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

const fs::path& five_atoms() {
  static const fs::path p = write_file(
      "five.json", R"({"atoms": [[-0.9, 0.1], [-0.3, 0.2], [0.1, 0.3], [0.55, 0.25], [0.8, 0.15]]})");
  return p;
}

}  // namespace

TEST_CASE("w1") {
  const fs::path d0 = write_file("d0.json", R"({"atoms": [[0, 1]]})");
  const fs::path d1 = write_file("d1.json", R"({"atoms": [[1, 1]]})");
  const Run r = run("w1 " + q(d0) + " " + q(d1));
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out) == json{{"w1", 1.0}});
}

TEST_CASE("discretize") {
  const Run r = run("discretize --n 8 --K 1 " + q(five_atoms()));
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("w1_bound") == 0.375);
  CHECK(j.at("ok") == true);
  CHECK(j.at("w1_actual").get<double>() <= 0.375);

  SUBCASE("linear hats and a sweep with CSV") {
    const fs::path csv = scratch_dir() / "sweep.csv";
    const Run s = run("--csv " + q(csv) + " discretize --n 6 --K 1 --bump linear_hat --sweep " +
                      q(five_atoms()));
    REQUIRE(s.code == 0);
    const std::string table = slurp(csv);
    CHECK(table.rfind("n,K,w1_bound,w1_actual,atoms_out\n", 0) == 0);
    CHECK(std::count(table.begin(), table.end(), '\n') == 6);
  }

  SUBCASE("support outside K is invalid input") {
    const Run bad = run("discretize --n 8 --K 1 " +
                        q(write_file("wide.json", R"({"atoms": [[-3, 0.5], [0, 0.5]]})")));
    CHECK(bad.code == 2);
    CHECK(json::parse(bad.err).at("error") == "invalid_input");
  }

  SUBCASE("n below K + 1") {
    CHECK(run("discretize --n 1 --K 1 " + q(five_atoms())).code == 2);
  }
}

TEST_CASE("config precedence") {
  const fs::path cfg = write_file("cfg.json", R"({"n": 4, "K": 1})");
  const Run from_config = run("--config " + q(cfg) + " discretize " + q(five_atoms()));
  REQUIRE(from_config.code == 0);
  CHECK(json::parse(from_config.out).at("w1_bound") == 0.75);

  const Run flag_wins = run("--config " + q(cfg) + " discretize --n 8 " + q(five_atoms()));
  REQUIRE(flag_wins.code == 0);
  CHECK(json::parse(flag_wins.out).at("w1_bound") == 0.375);

  const fs::path broken = write_file("broken.json", R"({"n": "eight"})");
  CHECK(run("--config " + q(broken) + " discretize " + q(five_atoms())).code == 2);
}

TEST_CASE("dawson") {
  const fs::path f = write_file("sc.json", R"({"inner": ["sin", "cos"], "outer": {"kind": "product"}})");
  const fs::path m = write_file("two.json", R"({"atoms": [[0, 0.5], [1, 0.5]]})");
  const Run r = run("dawson --eps 1e-3 --x 2 " + q(f) + " " + q(m));
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out).at("abs_error_extrapolated").get<double>() <= 1e-6);
  CHECK(run("dawson --eps 0.7 --x 2 " + q(f) + " " + q(m)).code == 2);
}

TEST_CASE("deriv2-check and ftc-check") {
  const Run d2 = run("deriv2-check --samples 20");
  REQUIRE(d2.code == 0);
  CHECK(json::parse(d2.out).at("ok") == true);

  const fs::path lift = write_file(
      "lift.json",
      R"({"kind": "lift", "cylinder": {"inner": ["sin", "cos"], "outer": {"kind": "product"}}})");
  const Run ftc = run("ftc-check --K 1 --eps 1e-3 --quad 32 --samples 50 " + q(lift));
  REQUIRE(ftc.code == 0);
  const json j = json::parse(ftc.out);
  CHECK(j.at("verdict") == "derivative");
  CHECK(j.at("ok") == true);

  const fs::path raw = write_file("raw.json", R"({"kind": "moment", "phi": "identity"})");
  CHECK(run("ftc-check " + q(raw)).code == 2);

  const fs::path cex = write_file("cex.json", R"({"kind": "counterexample", "phi": "sin", "psi": "cos"})");
  const Run bad = run("ftc-check --K 3.1416 --samples 50 " + q(cex));
  CHECK(bad.code == 1);
  CHECK(json::parse(bad.out).at("verdict") == "not-a-derivative");
}

TEST_CASE("counterexample") {
  const Run r = run("counterexample --phi sin --psi cos --K 3.1416 --samples 100");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("verdict") == "not-a-derivative");
  CHECK(j.at("ok") == true);
}

TEST_CASE("invalid input") {
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("w1 " + q(scratch_dir() / "missing.json") + " " + q(five_atoms())).code == 2);
  const Run r = run("w1 " + q(write_file("junk.json", "{not json")) + " " + q(five_atoms()));
  CHECK(r.code == 2);
  const json err = json::parse(r.err);
  CHECK(err.at("error") == "invalid_input");
  CHECK(err.contains("message"));
  CHECK(run("counterexample --phi nosuch").code == 2);
}

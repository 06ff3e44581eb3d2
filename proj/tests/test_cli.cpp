#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Scratch {
  fs::path dir;
  Scratch() {
    dir = fs::temp_directory_path() / ("udw_cli_test_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  fs::path operator/(const std::string& name) const { return dir / name; }
};

int run(const std::string& args) {
  const std::string cmd = std::string(UDW_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

}  // namespace

TEST_CASE("sweep writes CSV with a manifest") {
  Scratch s;
  write(s / "c.json", R"({"units": "natural", "dim": 3, "separation": 1.0, "smearing": 0.1})");
  const auto out = s / "out.csv";
  REQUIRE(run("sweep --config " + q(s / "c.json") + " --axis L --min 0.05 --max 2 --points 40 --output " +
              q(out)) == 0);
  const auto csv = slurp(out);
  CHECK(csv.rfind("parameter,value,estimator,abs_error,dim\n", 0) == 0);
  CHECK(csv.find('\r') == std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 41);
  const auto manifest = nlohmann::json::parse(slurp(s / "out.csv.manifest.json"));
  CHECK(manifest.at("command") == "sweep");
  CHECK(manifest.at("config").at("smearing") == 0.1);
  CHECK(manifest.at("parameters").at("model") == "smearing");
  CHECK_FALSE(manifest.contains("wall_time_seconds"));

  const auto again = s / "again.csv";
  REQUIRE(run("sweep --config " + q(s / "c.json") + " --axis L --min 0.05 --max 2 --points 40 --threads 1 --output " +
              q(again)) == 0);
  CHECK(slurp(again) == csv);
  CHECK(slurp(s / "again.csv.manifest.json") == slurp(s / "out.csv.manifest.json"));
}

TEST_CASE("sweep JSON output and dimension override") {
  Scratch s;
  const auto out = s / "out.json";
  REQUIRE(run("sweep --dim 1 --axis lambda_cutoff --min 5 --max 50 --points 6 --spacing log --format json "
              "--record-timing --output " + q(out)) == 0);
  const auto j = nlohmann::json::parse(slurp(out));
  CHECK(j.at("manifest").at("config").at("dim") == 1);
  CHECK(j.at("manifest").contains("wall_time_seconds"));
  const auto& rows = j.at("series")[0].at("rows");
  CHECK(rows.size() == 6);
  CHECK(rows[5].at("value").get<double>() == 50.0);
  CHECK(rows[0].at("parameter") == "lambda_cutoff");
}

TEST_CASE("invalid input exits 2") {
  Scratch s;
  CHECK(run("sweep --axis L --min 0.5 --max 1 --points 1") == 2);
  CHECK(run("sweep --axis L --min 1 --max 0.5 --points 4") == 2);
  CHECK(run("sweep --axis time --min 0 --max 1 --points 4") == 2);
  CHECK(run("sweep --dim 4 --axis L --min 0.5 --max 1 --points 4") == 2);
  CHECK(run("sweep --config " + q(s / "missing.json") + " --min 0.5 --max 1 --points 4") == 2);
  write(s / "bad.json", R"({"time_gap": 1, "colour": "red"})");
  CHECK(run("sweep --config " + q(s / "bad.json") + " --min 0.5 --max 1 --points 4") == 2);
  write(s / "zero.json", R"({"time_gap": 0})");
  CHECK(run("sweep --config " + q(s / "zero.json") + " --min 0.5 --max 1 --points 4") == 2);
  CHECK(run("sweep --dim 3 --axis L --min 0 --max 2 --points 4") == 2);
  CHECK(run("fig 6") == 2);
  CHECK(run("") == 2);
  CHECK(run("--help") == 0);
}

TEST_CASE("convergence failure exits 3 and leaves no partial output") {
  Scratch s;
  write(s / "c.json", R"({"dim": 2, "separation": 1.4, "cutoff": 200})");
  const auto out = s / "out.csv";
  CHECK(run("sweep --config " + q(s / "c.json") + " --axis L --min 1.2 --max 1.6 --points 3 --tol 1e-300 --output " +
            q(out)) == 3);
  CHECK_FALSE(fs::exists(out));
  CHECK_FALSE(fs::exists(s / "out.csv.partial"));
  CHECK_FALSE(fs::exists(s / "out.csv.manifest.json"));
}

TEST_CASE("fig output is byte-identical across runs") {
  Scratch s;
  REQUIRE(run("fig 5 --output " + q(s / "a")) == 0);
  REQUIRE(run("fig 5 --threads 1 --output " + q(s / "b")) == 0);
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(s / "a")) {
    CHECK(slurp(e.path()) == slurp(s / "b" / e.path().filename()));
    ++files;
  }
  CHECK(files == 3);
  CHECK(fs::exists(s / "a" / "fig5_top.csv"));
  CHECK(nlohmann::json::parse(slurp(s / "a" / "fig5_manifest.json")).at("notes").size() >= 2);
  REQUIRE(run("fig 5 --format json --output " + q(s / "j")) == 0);
  CHECK(nlohmann::json::parse(slurp(s / "j" / "fig5.json")).at("series").size() == 2);
}

TEST_CASE("signal-matrix") {
  Scratch s;
  write(s / "zero.json", R"({"dim": 1, "separation": 3.6, "duration": 1,
    "state_a": {"alpha": 0.5, "beta": [0.5, 0]}, "state_b": {"alpha": 0}})");
  REQUIRE(run("signal-matrix --config " + q(s / "zero.json") + " --output " + q(s / "m.json")) == 0);
  auto j = nlohmann::json::parse(slurp(s / "m.json"));
  for (const auto& row : j.at("entries")) {
    for (const auto& e : row) CHECK((e[0].get<double>() == 0.0 && e[1].get<double>() == 0.0));
  }
  CHECK(j.at("trace_residual").get<double>() == 0.0);

  write(s / "delta.json", R"({"dim": 3, "separation": 1.1, "smearing": 0.1,
    "state_a": {"alpha": 0.5, "beta": [0.5, 0]}, "state_b": {"alpha": 0}})");
  REQUIRE(run("signal-matrix --config " + q(s / "delta.json") + " --output " + q(s / "d.json")) == 0);
  j = nlohmann::json::parse(slurp(s / "d.json"));
  CHECK(j.at("hermiticity_residual").get<double>() <= 1e-12);
  CHECK(std::abs(j.at("entries")[0][1][1].get<double>()) > 0.1);

  write(s / "bad.json", R"({"state_a": {"alpha": 0.5, "beta": 0.6}})");
  CHECK(run("signal-matrix --config " + q(s / "bad.json")) == 2);
  CHECK(run("signal-matrix") == 2);
}

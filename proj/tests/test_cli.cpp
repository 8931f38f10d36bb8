#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "jacobi/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {
const std::string kData = JACOBI_TEST_DATA;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = jacobi::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("jacobi_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}
}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("analyze writes traces, diagnostics, summary and config") {
    auto dir = scratch("analyze");
    auto r = invoke({"analyze", "--seq", "pow:alpha=0.5", "--lambda", "0,1", "--n", "200", "--out", dir.string()});
    REQUIRE(r.code == 0);
    for (const char* f : {"trace_0.csv", "trace_1.csv", "diagnostics_0.csv", "diagnostics_1.csv", "summary.csv",
                          "run_config.json"})
      CHECK(fs::exists(dir / f));
    CHECK(lines(slurp(dir / "diagnostics_0.csv")).size() == 201);
    CHECK(lines(slurp(dir / "summary.csv")).size() == 3);

    auto cfg = json::parse(slurp(dir / "run_config.json"));
    CHECK(cfg["version"] == jacobi::cli::kVersion);
    CHECK(cfg["command"] == "analyze");
    CHECK(cfg["n"] == 200);
    CHECK(cfg["lambdas"] == json::array({0.0, 1.0}));
  }

  TEST_CASE("analyze is deterministic") {
    auto d1 = scratch("det1");
    auto d2 = scratch("det2");
    std::vector<std::string> base{"analyze", "--seq", "factorial-staircase", "--lambda", "0.5", "--n", "500",
                                  "--alpha", "iterlog:1", "--init", "1,0", "--out"};
    auto a1 = base, a2 = base;
    a1.push_back(d1.string());
    a2.push_back(d2.string());
    REQUIRE(invoke(a1).code == 0);
    REQUIRE(invoke(a2).code == 0);
    for (const char* f : {"trace_0.csv", "diagnostics_0.csv", "summary.csv"}) {
      CAPTURE(f);
      CHECK(slurp(d1 / f) == slurp(d2 / f));
    }
  }

  TEST_CASE("json output") {
    auto dir = scratch("json");
    REQUIRE(invoke({"analyze", "--seq", "chihara", "--lambda", "2", "--n", "50", "--format", "json", "--out",
                    dir.string()})
                .code == 0);
    auto rows = json::parse(slurp(dir / "diagnostics_0.json"));
    REQUIRE(rows.is_array());
    CHECK(rows.size() == 50);
    CHECK(rows[0]["n"] == 1);
    CHECK(rows[0].contains("S_over_Shat"));
  }

  TEST_CASE("check prints a JSON report") {
    auto r = invoke({"check", "--theorem", "B", "--seq", "pow:alpha=0.5", "--n", "2000"});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["overall"] == "pass");
    CHECK(j["conditions"].size() == 5);

    auto bd = invoke({"check", "--theorem", "51", "--bd", "lam=linear,mu=linear", "--n", "1000"});
    REQUIRE(bd.code == 0);
    CHECK(json::parse(bd.out)["overall"] == "pass");

    auto dir = scratch("check");
    REQUIRE(invoke({"check", "--theorem", "42", "--seq", "const", "--n", "500", "--out", dir.string()}).code == 0);
    CHECK(fs::exists(dir / "check.json"));
  }

  TEST_CASE("spectrum tables") {
    auto dir = scratch("spectrum");
    auto r = invoke({"spectrum", "--seq", "const", "--size", "20", "--window", "-2,2", "--bin", "1", "--weights",
                     "--out", dir.string()});
    REQUIRE(r.code == 0);
    auto eig = lines(slurp(dir / "spectrum.csv"));
    REQUIRE(eig.size() == 21);
    CHECK(eig[0] == "k,eigenvalue,weight");
    auto dens = lines(slurp(dir / "density.csv"));
    REQUIRE(dens.size() == 5);
    CHECK(dens[0] == "bin_lo,bin_hi,count");
  }

  TEST_CASE("transform tables") {
    auto dir = scratch("transform");
    REQUIRE(invoke({"transform", "even", "--seq", "table:" + kData + "/lin.csv", "--n", "10", "--out", dir.string()})
                .code == 0);
    auto even = lines(slurp(dir / "transform_even.csv"));
    REQUIRE(even.size() == 11);
    CHECK(even[0] == "n,a_e,b_e");
    CHECK(even[1] == "0,2,1");

    REQUIRE(invoke({"transform", "flip", "--seq", "chihara", "--n", "3", "--out", dir.string()}).code == 0);
    auto flip = lines(slurp(dir / "transform_flip.csv"));
    REQUIRE(flip.size() == 4);
    CHECK(flip[1] == "0,1,-1");

    REQUIRE(invoke({"transform", "bd", "--rates", kData + "/rates.csv", "--n", "5", "--out", dir.string()}).code == 0);
    auto bd = lines(slurp(dir / "transform_bd.csv"));
    REQUIRE(bd.size() == 6);
    CHECK(bd[0] == "n,abar,bbar,log_pi");
    CHECK(bd[1] == "0,1,-1,0");
  }

  TEST_CASE("exit codes") {
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"frobnicate"}).code == 2);
    CHECK(invoke({"analyze", "--seq", "pow:alpha=", "--lambda", "1"}).code == 2);
    CHECK(invoke({"analyze", "--seq", "nosuch", "--lambda", "1"}).code == 2);
    CHECK(invoke({"spectrum", "--seq", "const", "--size", "0"}).code == 2);
    CHECK(invoke({"check", "--theorem", "Z", "--seq", "const"}).code == 2);
    CHECK(invoke({"analyze", "--seq", "pow:alpha=-1", "--lambda", "1"}).code == 3);
    CHECK(invoke({"check", "--theorem", "A", "--seq", "const", "--n", "50"}).code == 3);
    CHECK(invoke({"transform", "even", "--seq", "chihara"}).code == 3);
    CHECK(invoke({"analyze", "--seq", "const", "--lambda", "1", "--init", "0,0"}).code == 3);

    auto bad = invoke({"analyze", "--seq", "pow:alpha=", "--lambda", "1"});
    CHECK(bad.err.find("position 10") != std::string::npos);
    CHECK(invoke({"--version"}).code == 0);
  }
}

// Copyright 2026 The marketcomp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "marketcomp/cli.hpp"
#include "marketcomp/json_io.hpp"

using namespace marketcomp;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "marketcomp_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::filesystem::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

// Parsing then re-emitting a JSON document, and any market inside it, is a
// fixed point.
void check_round_trip(const std::string& text) {
  Json j = Json::parse(text);
  CHECK(j.dump(2) + "\n" == text);
  const Json& m = j.contains("market") ? j.at("market") : j;
  if (m.contains("segments")) CHECK(market_to_json(market_from_json(m)) == m);
}

}  // namespace

TEST_CASE("solve below one half returns the point mass") {
  Result r = call({"solve", "--cost", "quadratic", "--k", "0.3"});
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["degenerate"] == true);
  CHECK(j["payoff"]["pi"].get<double>() == doctest::Approx(0.5));
  QuantileFn q = market_from_json(j["market"]);
  CHECK(q(0.2) == 1.0);
  check_round_trip(r.out);
}

TEST_CASE("exit codes") {
  auto bad = scratch("bad.json");
  spit(bad, R"({"segments":[{"u0":0,"u1":0.5,"interp":"constant","v0":0.8},)"
            R"({"u0":0.5,"u1":1,"interp":"constant","v0":0.3}]})");
  CHECK(call({"screen", "--market", bad.string()}).code == 2);
  auto broken = scratch("broken.json");
  spit(broken, "{\"segments\": [");
  CHECK(call({"screen", "--market", broken.string()}).code == 2);
  CHECK(call({"screen", "--market", scratch("missing.json").string()}).code == 2);
  auto gap = scratch("gap.json");
  spit(gap, R"({"segments":[{"u0":0,"u1":0.4,"interp":"constant","v0":0.3},)"
            R"({"u0":0.5,"u1":1,"interp":"constant","v0":0.8}]})");
  CHECK(call({"screen", "--market", gap.string()}).code == 2);

  Result unknown = call({"solve", "--bogus"});
  CHECK(unknown.code == 2);
  CHECK(unknown.err.find("Usage") != std::string::npos);
  CHECK(call({}).code == 2);
  CHECK(call({"--help"}).code == 0);
  CHECK(call({"solve", "--k", "1.5"}).code == 2);
  CHECK(call({"solve", "--cost", "cubic"}).code == 2);
  CHECK(call({"solve", "--tol", "nonsense=1"}).code == 2);
  CHECK(call({"oracle", "--n", "20", "--m", "20"}).code == 2);
  CHECK(call({"solve", "--k", "1", "--tol", "fbvp_max_time=0.1"}).code == 3);
}

TEST_CASE("screen emits a menu and a payoff summary") {
  auto market = scratch("two_step.json");
  spit(market, R"({"segments":[{"u0":0,"u1":0.5,"interp":"constant","v0":0.3},)"
               R"({"u0":0.5,"u1":1,"interp":"constant","v0":1}]})");
  Result r = call({"screen", "--market", market.string()});
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["payoff"]["pi"].get<double>() == doctest::Approx(0.25));
  CHECK(j["payoff"]["cs"].get<double>() == doctest::Approx(0.0));
  check_round_trip(r.out);

  auto csv = scratch("menu.csv");
  r = call({"screen", "--market", market.string(), "--out", csv.string()});
  REQUIRE(r.code == 0);
  std::string text = slurp(csv);
  CHECK(text.rfind("v,q,t\n", 0) == 0);
}

TEST_CASE("frontier CSV is deterministic and full precision") {
  auto a = scratch("front_a.csv"), b = scratch("front_b.csv");
  std::vector<std::string> args{"frontier", "--cost", "quadratic", "--k-grid", "0.5:1.0:0.05",
                                "--engine", "closedform", "--seed", "7", "--out"};
  auto args_a = args, args_b = args;
  args_a.push_back(a.string());
  args_b.push_back(b.string());
  REQUIRE(call(args_a).code == 0);
  REQUIRE(call(args_b).code == 0);
  std::string text = slurp(a);
  CHECK(text == slurp(b));
  CHECK(text.rfind("k,b,cs,pi,ts,vlow\n", 0) == 0);
  CHECK(text.find('\r') == std::string::npos);
  CHECK(std::count(text.begin(), text.end(), '\n') == 12);
  // The k = 1 row carries 17 significant digits.
  CHECK(text.find("0.79212042364923807") != std::string::npos);

  auto radial = scratch("radial.csv");
  REQUIRE(call({"frontier", "--k-grid", "1", "--engine", "closedform", "--radial",
                radial.string(), "--theta-grid", "0,0.5,1"})
              .code == 0);
  std::string rtext = slurp(radial);
  CHECK(std::count(rtext.begin(), rtext.end(), '\n') == 4);
  CHECK(call({"frontier", "--cost", "linear:0,1", "--engine", "fbvp"}).code == 2);
}

TEST_CASE("subcommand JSON round-trips") {
  std::vector<std::vector<std::string>> cmds = {
      {"solve", "--k", "0.8", "--tol", "fbvp_samples=64"},
      {"closedform", "--case", "quadratic", "--k", "1"},
      {"closedform", "--case", "linear", "--k", "0.9", "--M", "0.5", "--qbar", "2"},
      {"closedform", "--case", "elasticity", "--k", "1", "--eta", "3"},
      {"inventory", "--inv", "two-point", "--k", "1"},
      {"oracle", "--k", "0.5", "--n", "4", "--m", "10"},
      {"mps", "--k", "1", "--kind", "finite", "--support", "4", "--a", "0.1"},
      {"mps", "--k", "1", "--kind", "smooth", "--a", "0.1", "--grid", "128"},
  };
  for (const auto& cmd : cmds) {
    Result r = call(cmd);
    INFO(cmd[0]);
    REQUIRE(r.code == 0);
    check_round_trip(r.out);
  }
}

TEST_CASE("subcommand values") {
  Json o = Json::parse(call({"oracle", "--k", "0.5", "--n", "4", "--m", "10"}).out);
  CHECK(o["J"].get<double>() == doctest::Approx(0.25));
  CHECK(o["levels"].size() == 4);

  auto region = scratch("region.csv");
  Json inv = Json::parse(
      call({"inventory", "--inv", "two-point", "--k", "1", "--region", region.string()}).out);
  CHECK(inv["b"].get<double>() == doctest::Approx(1 - 1 / (std::exp(1.0) * std::sqrt(2.0))));
  CHECK(slurp(region).rfind("b,pi,cs,h\n", 0) == 0);

  auto custom = scratch("inv.json");
  spit(custom, R"({"segments":[{"u0":0,"u1":1,"interp":"linear","v0":0,"v1":1}]})");
  Json c = Json::parse(call({"inventory", "--inv", custom.string(), "--k", "1"}).out);
  CHECK(c["b"].get<double>() == doctest::Approx(0.796812).epsilon(1e-6));

  Json m = Json::parse(call({"mps", "--k", "1", "--support", "3", "--a", "0.1"}).out);
  CHECK(market_from_json(m).segments().size() == 3);
  CHECK(call({"mps", "--k", "0.4"}).code == 2);

  auto src = scratch("src.json");
  REQUIRE(call({"closedform", "--k", "0.9", "--out", src.string()}).code == 0);
  Json s = Json::parse(slurp(src));
  spit(src, s["market"].dump());
  Json f = Json::parse(call({"mps", "--market", src.string(), "--support", "2", "--a", "0.2"}).out);
  CHECK(market_from_json(f).segments().size() == 2);
}

TEST_CASE("config precedence: flags over file over defaults") {
  auto cfg = scratch("run.cfg");
  spit(cfg, "# overrides\nfbvp_samples = 64\n\nseed=3\n");
  Json a = Json::parse(call({"solve", "--k", "0.9", "--config", cfg.string()}).out);
  CHECK(a["samples"].size() == 65);
  Json b = Json::parse(
      call({"solve", "--k", "0.9", "--config", cfg.string(), "--tol", "fbvp_samples=32"}).out);
  CHECK(b["samples"].size() == 33);
  Json c = Json::parse(call({"solve", "--k", "0.9"}).out);
  CHECK(c["samples"].size() == 1025);
  spit(cfg, "unknown_key=1\n");
  CHECK(call({"solve", "--config", cfg.string()}).code == 2);
}

TEST_CASE("verify golden suite") {
  Result r = call({"verify", "--suite", "golden"});
  CHECK(r.code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 5);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(call({"verify", "--suite", "nope"}).code == 2);
}

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

#include "marketcomp/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "marketcomp/acceptance.hpp"
#include "marketcomp/closedform.hpp"
#include "marketcomp/config.hpp"
#include "marketcomp/fbvp.hpp"
#include "marketcomp/frontier.hpp"
#include "marketcomp/inventory.hpp"
#include "marketcomp/json_io.hpp"
#include "marketcomp/oracle.hpp"
#include "marketcomp/screening.hpp"

namespace marketcomp {

namespace {

struct Common {
  std::uint64_t seed = 20260101;
  std::vector<std::string> tol;
  std::string out;
  std::string config;
};

struct Options {
  std::string cost = "quadratic";
  std::string market;
  std::string k_grid = "0.5:1.0:0.005";
  std::string engine;
  std::string theta_grid;
  std::string radial;
  std::string kase = "quadratic";
  std::string inv = "uniform";
  std::string region;
  std::string mode = "exhaustive";
  std::string kind = "finite";
  std::string suite = "all";
  double k = 1.0;
  double eta = 2.0;
  double m = 0.0;
  double qbar = 1.0;
  double a = -1.0;
  int n = 8;
  int levels = 20;
  int support = 3;
  int grid = -1;
};

Tolerances resolve_tolerances(Common& c) {
  Tolerances tol;
  if (!c.config.empty()) {
    auto entries = read_config_file(c.config);
    if (auto it = entries.find("seed"); it != entries.end()) {
      try {
        c.seed = std::stoull(it->second);
      } catch (const std::logic_error&) {
        throw ValidationError("bad seed in config: " + it->second);
      }
      entries.erase(it);
    }
    tol.apply(entries);
  }
  for (const std::string& kv : c.tol) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw ValidationError("--tol expects key=value, got " + kv);
    tol.apply(kv.substr(0, eq), kv.substr(eq + 1));
  }
  return tol;
}

// Writes to --out when given, else to the command's stream.
void emit(const Common& c, std::ostream& out, const std::string& text) {
  if (c.out.empty() || c.out == "-") {
    out << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw ValidationError("cannot write " + c.out);
  f << text;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot write " + path);
  f << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string csv(const std::vector<std::string>& header,
                const std::vector<std::vector<double>>& rows) {
  std::ostringstream os;
  write_csv(os, header, rows);
  return os.str();
}

std::vector<double> parse_list(const std::string& spec) { return parse_k_grid(spec); }

int cmd_solve(const Common& c, const Options& o, const Tolerances& tol, std::ostream& out) {
  CostModel cost = parse_cost(o.cost);
  FbvpSolution s = solve_optimal_market(cost, WelfareWeight(o.k), tol);
  Json j;
  j["cost"] = cost.describe();
  j["k"] = o.k;
  j["degenerate"] = s.degenerate;
  j["b"] = s.b;
  j["T"] = s.T;
  j["vlow"] = s.lowest_value();
  PayoffPoint p = s.degenerate ? PayoffPoint::of(0.0, cost.qbar() - cost.c(cost.qbar()))
                               : PayoffPoint::of(s.cs, s.pi);
  j["payoff"] = payoff_to_json(p);
  j["el_residual_max"] = s.el_residual_max;
  Json samples = Json::array();
  for (const FbvpSample& x : s.samples) {
    samples.push_back(Json::array({x.u, x.x, x.phi, x.A, x.Q}));
  }
  j["sample_columns"] = Json::array({"u", "x", "phi", "A", "Q"});
  j["samples"] = samples;
  j["market"] = market_to_json(to_market(s));
  emit(c, out, dump(j));
  return 0;
}

int cmd_screen(const Common& c, const Options& o, const Tolerances& tol, std::ostream& out) {
  if (o.market.empty()) throw ValidationError("screen needs --market");
  QuantileFn q = read_market_file(o.market);
  CostModel cost = parse_cost(o.cost);
  PayoffPoint p = evaluate_market(q, cost, tol);
  MenuSchedule menu = seller_menu(q, cost, o.grid > 0 ? o.grid : tol.menu_grid, tol);
  std::vector<std::vector<double>> rows;
  for (const MenuRow& r : menu.rows) rows.push_back({r.v, r.q, r.t});
  if (menu.top) rows.push_back({1.0, menu.top->q, menu.top->t});

  Json j;
  j["cost"] = cost.describe();
  j["payoff"] = payoff_to_json(p);
  j["menu_profit"] = menu.profit(cost);
  if (menu.top) {
    j["top_atom"] = {{"mass", menu.top->mass}, {"q", menu.top->q}, {"t", menu.top->t}};
  } else {
    j["top_atom"] = nullptr;
  }
  if (c.out.empty() || c.out == "-") {
    Json m = Json::array();
    for (const auto& r : rows) m.push_back(r);
    j["menu_columns"] = Json::array({"v", "q", "t"});
    j["menu"] = m;
  } else {
    write_file(c.out, csv({"v", "q", "t"}, rows));
  }
  out << dump(j);
  return 0;
}

int cmd_closedform(const Common& c, const Options& o, const Tolerances& tol, std::ostream& out) {
  WelfareWeight w(o.k);
  Json j;
  j["case"] = o.kase;
  j["k"] = o.k;
  if (o.kase == "quadratic") {
    if (w.degenerate()) {
      j["b"] = 0.0;
      j["vlow"] = 1.0;
      j["payoff"] = payoff_to_json(PayoffPoint::of(0.0, 0.5));
      j["market"] = market_to_json(QuantileFn::point_mass(1.0));
    } else {
      QuadraticSolution s = quadratic_optimal(w);
      j["lambda"] = s.lambda;
      j["T"] = s.T;
      j["b"] = s.b;
      j["vlow"] = s.Q(0.0);
      j["payoff"] = payoff_to_json(PayoffPoint::of(s.cs, s.pi));
      j["market"] = market_to_json(s.market(tol.fbvp_samples));
    }
  } else if (o.kase == "linear") {
    LinearSolution s = linear_optimal(w, o.m, o.qbar);
    j["M"] = o.m;
    j["qbar"] = o.qbar;
    j["r"] = s.r;
    j["b"] = s.b;
    j["V"] = s.V;
    j["payoff"] = payoff_to_json(s.payoff);
    j["market"] = market_to_json(s.market);
  } else if (o.kase == "elasticity") {
    CostModel cost = make_cost(CostKind::kElasticity, {o.eta});
    j["eta"] = o.eta;
    if (w.degenerate()) {
      j["b"] = 0.0;
      j["vlow"] = 1.0;
      j["payoff"] = payoff_to_json(PayoffPoint::of(0.0, cost.qbar() - cost.c(cost.qbar())));
      j["market"] = market_to_json(QuantileFn::point_mass(1.0));
    } else {
      ElasticitySolution s = elasticity_optimal(w, o.eta, tol);
      QuantileFn q = s.market(tol.fbvp_samples);
      j["T"] = s.T();
      j["b"] = s.b();
      j["vlow"] = s.vlow();
      j["payoff"] = payoff_to_json(evaluate_market(q, cost, tol));
      j["market"] = market_to_json(q);
    }
  } else {
    throw ValidationError("unknown case: " + o.kase);
  }
  emit(c, out, dump(j));
  return 0;
}

int cmd_frontier(const Common& c, const Options& o, const Tolerances& tol, std::ostream& out) {
  CostModel cost = parse_cost(o.cost);
  FrontierEngine engine = !o.engine.empty()
                              ? parse_engine(o.engine)
                              : (cost.convex() ? FrontierEngine::kFbvp : FrontierEngine::kLinear);
  FrontierCurve curve = trace_frontier(cost, parse_k_grid(o.k_grid), engine, tol);
  std::vector<std::vector<double>> rows;
  for (const FrontierRow& r : curve.rows) rows.push_back({r.k, r.b, r.cs, r.pi, r.ts, r.vlow});
  emit(c, out, csv({"k", "b", "cs", "pi", "ts", "vlow"}, rows));
  if (!o.radial.empty()) {
    std::vector<double> thetas = parse_list(o.theta_grid.empty() ? "0:1:0.1" : o.theta_grid);
    std::vector<PayoffPoint> pts = radial_hull(curve, thetas);
    std::vector<std::vector<double>> rr;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const FrontierRow& r = curve.rows[i / thetas.size()];
      rr.push_back({r.k, thetas[i % thetas.size()], pts[i].cs, pts[i].pi});
    }
    write_file(o.radial, csv({"k", "theta", "cs", "pi"}, rr));
  }
  return 0;
}

InventoryModel load_inventory(const std::string& spec) {
  if (spec == "uniform") return InventoryModel::uniform();
  if (spec == "two-point") return InventoryModel::two_point();
  return InventoryModel::custom(piecewise_from_json(read_json_file(spec)));
}

int cmd_inventory(const Common& c, const Options& o, const Tolerances&, std::ostream& out) {
  InventoryModel inv = load_inventory(o.inv);
  WelfareWeight w(o.k);
  InventoryOptimum opt = inventory_optimal(w, inv);
  Json j;
  j["inventory"] = inventory_name(inv.kind());
  j["k"] = o.k;
  j["b"] = opt.b;
  j["first_order"] = opt.first_order;
  j["single_crossing"] = inv.single_crossing();
  j["payoff"] = payoff_to_json(opt.payoff);
  if (!o.region.empty()) {
    InventoryRegion region = inventory_region(inv, o.grid > 0 ? o.grid : 2000);
    std::vector<std::vector<double>> rows;
    for (const RegionPoint& p : region.curve()) rows.push_back({p.b, p.pi, p.cs, region.h(p.pi)});
    write_file(o.region, csv({"b", "pi", "cs", "h"}, rows));
    j["pi_max"] = region.pi_max();
    j["decreasing_profit"] = region.decreasing_profit();
  }
  emit(c, out, dump(j));
  return 0;
}

int cmd_oracle(const Common& c, const Options& o, const Tolerances&, std::ostream& out) {
  CostModel cost = parse_cost(o.cost);
  OracleMode mode = parse_oracle_mode(o.mode);
  OracleResult r = oracle_maximize(cost, WelfareWeight(o.k), o.n, o.levels, mode);
  Json j;
  j["cost"] = cost.describe();
  j["mode"] = oracle_mode_name(mode);
  j["k"] = o.k;
  j["n"] = o.n;
  j["m"] = o.levels;
  j["J"] = r.J;
  j["payoff"] = payoff_to_json(r.payoff);
  j["levels"] = r.levels;
  j["profiles"] = r.profiles;
  emit(c, out, dump(j));
  return 0;
}

int cmd_mps(const Common& c, const Options& o, const Tolerances& tol, std::ostream& out) {
  QuantileFn g = QuantileFn::point_mass(1.0);
  if (!o.market.empty()) {
    g = read_market_file(o.market);
  } else {
    CostModel cost = parse_cost(o.cost);
    FbvpSolution s = solve_optimal_market(cost, WelfareWeight(o.k), tol);
    if (s.degenerate) throw ValidationError("the optimal market has no body to spread for k <= 1/2");
    g = to_market(s);
  }
  double a = o.a > 0.0 ? o.a : 0.5 * g.lowest();
  QuantileFn f = g;
  if (o.kind == "finite") {
    f = mps_finite(g, o.support, a);
  } else if (o.kind == "smooth") {
    f = mps_smooth(g, a, o.grid > 0 ? o.grid : tol.mps_smooth_grid);
  } else {
    throw ValidationError("unknown spread kind: " + o.kind);
  }
  emit(c, out, dump(market_to_json(f)));
  return 0;
}

int cmd_verify(const Common& c, const Options& o, std::ostream& out) {
  auto results = run_acceptance(o.suite, c.seed);
  return print_acceptance(out, results) ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimal market composition and screening solver", "marketcomp"};
  app.failure_message(CLI::FailureMessage::help);
  app.require_subcommand(1);
  Common c;
  Options o;
  app.add_option("--seed", c.seed, "Seed for randomized corpora");
  app.add_option("--tol", c.tol, "Tolerance override key=value (repeatable)");
  app.add_option("--out", c.out, "Output file");
  app.add_option("--config", c.config, "key=value configuration file");

  auto add = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    return sub;
  };
  auto* solve = add("solve", "Optimal market for weight k");
  solve->add_option("--cost", o.cost, "quadratic | elasticity:ETA | generic:c2,c3,... | generic:FILE");
  solve->add_option("--k", o.k, "Welfare weight in [0, 1]");

  auto* screen = add("screen", "Seller-optimal menu for a market");
  screen->add_option("--market", o.market, "Market JSON file")->required();
  screen->add_option("--cost", o.cost, "Cost model");
  screen->add_option("--grid", o.grid, "Menu grid size");

  auto* closed = add("closedform", "Closed-form optimal markets");
  closed->add_option("--case", o.kase, "quadratic | linear | elasticity");
  closed->add_option("--k", o.k, "Welfare weight");
  closed->add_option("--eta", o.eta, "Elasticity exponent");
  closed->add_option("--M", o.m, "Linear marginal cost");
  closed->add_option("--qbar", o.qbar, "Linear capacity");

  auto* front = add("frontier", "Trace the Pareto frontier over k");
  front->add_option("--cost", o.cost, "Cost model");
  front->add_option("--k-grid", o.k_grid, "lo:hi:step or a comma list");
  front->add_option("--engine", o.engine, "fbvp | closedform | linear");
  front->add_option("--radial", o.radial, "Also write radial contractions to this CSV");
  front->add_option("--theta-grid", o.theta_grid, "Contraction factors for --radial");

  auto* inv = add("inventory", "Fixed-inventory cutoff and region");
  inv->add_option("--inv", o.inv, "uniform | two-point | inventory JSON file");
  inv->add_option("--k", o.k, "Welfare weight");
  inv->add_option("--region", o.region, "Write the threshold curve and boundary to this CSV");
  inv->add_option("--grid", o.grid, "Cutoff grid size for the region");

  auto* orc = add("oracle", "Brute-force maximizer over step profiles");
  orc->add_option("--cost", o.cost, "Cost model");
  orc->add_option("--k", o.k, "Welfare weight");
  orc->add_option("--n", o.n, "Cells");
  orc->add_option("--m", o.levels, "Level grid resolution");
  orc->add_option("--mode", o.mode, "exhaustive | ascent");

  auto* mps = add("mps", "Mean-preserving spreads of an optimal market");
  mps->add_option("--market", o.market, "Source market JSON (default: solve --cost/--k)");
  mps->add_option("--cost", o.cost, "Cost model for the source market");
  mps->add_option("--k", o.k, "Welfare weight for the source market");
  mps->add_option("--kind", o.kind, "finite | smooth");
  mps->add_option("--support", o.support, "Support size for finite spreads");
  mps->add_option("--a", o.a, "Lower support point, below the lowest value");
  mps->add_option("--grid", o.grid, "Rank grid for smooth spreads");

  auto* verify = add("verify", "Run the acceptance suite");
  verify->add_option("--suite", o.suite, "golden | properties | all");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    Tolerances tol = resolve_tolerances(c);
    if (solve->parsed()) return cmd_solve(c, o, tol, out);
    if (screen->parsed()) return cmd_screen(c, o, tol, out);
    if (closed->parsed()) return cmd_closedform(c, o, tol, out);
    if (front->parsed()) return cmd_frontier(c, o, tol, out);
    if (inv->parsed()) return cmd_inventory(c, o, tol, out);
    if (orc->parsed()) return cmd_oracle(c, o, tol, out);
    if (mps->parsed()) return cmd_mps(c, o, tol, out);
    if (verify->parsed()) return cmd_verify(c, o, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 3;
  }
  return 2;
}

}  // namespace marketcomp

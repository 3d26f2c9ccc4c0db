// Copyright 2026 The teamdyn Authors.
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

// Acceptance gate. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails. Runs the bundled configs through the same runners
// as the command-line tool.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "teamdyn/analysis.hpp"
#include "teamdyn/boolfn.hpp"
#include "teamdyn/dynamics.hpp"
#include "teamdyn_cli/commands.hpp"
#include "teamdyn_cli/config.hpp"
#include "teamdyn_cli/verify.hpp"

namespace {

using namespace teamdyn;
using namespace teamdyn::cli;

std::filesystem::path g_out;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* pattern, double a) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), pattern, a);
  return buf;
}

double check_value(const CommandResult& r, const std::string& name) {
  const Check* c = r.find(name);
  return c ? c->value : std::nan("");
}

bool check_pass(const CommandResult& r, const std::string& name) {
  const Check* c = r.find(name);
  return c && c->pass;
}

ExperimentConfig bundled(const std::string& name, std::vector<std::string> analyses) {
  Overrides o;
  o.out = g_out / name;
  auto config = load_config(name, o);
  config.analyses = std::move(analyses);
  return config;
}

// Periodic orbits on both figure-one instances: return_error <= 1e-6 within
// 30 s each.
Outcome periodic_orbits() {
  Outcome out{true, ""};
  for (const char* name : {"fig1a", "fig1b"}) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = run_analyze(bundled(name, {"period"}));
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double err = check_value(r, "period.return_error");
    const bool ok = r.exit_code == kExitOk && err <= 1e-6 && secs <= 30.0;
    out.pass = out.pass && ok;
    out.detail += std::string(name) + " T=" + fmt("%.6f", r.report["period"].value("period", 0.0)) +
                  " return_error=" + fmt("%.2e", err) + " in " + fmt("%.2fs", secs) + "; ";
  }
  return out;
}

// Time averages over 50 periods on the rescaled kernel (1,0;0,1).
Outcome time_averages_converge() {
  Outcome out{true, ""};
  for (const char* name : {"fig2a", "fig2b"}) {
    auto config = bundled(name, {"averages"});
    config.average_periods = 50;
    const auto& k = config.kernel;
    const bool kernel_ok = k.a == 1 && k.b == 0 && k.c == 0 && k.d == 1;
    const auto r = run_analyze(config);
    const double ef = check_value(r, "averages.f_bar_error");
    const double eg = check_value(r, "averages.g_bar_error");
    const double eu = check_value(r, "averages.uA_bar_error");
    const bool ok = kernel_ok && ef <= 1e-3 && eg <= 1e-3 && eu <= 1e-3 &&
                    std::abs(config.game().value() - 0.5) < 1e-15;
    out.pass = out.pass && ok;
    out.detail += std::string(name) + " |f_bar-0.5|=" + fmt("%.1e", ef) + " |g_bar-0.5|=" +
                  fmt("%.1e", eg) + " |uA_bar-0.5|=" + fmt("%.1e", eu) + "; ";
  }
  return out;
}

// Closed-form H on the single-gene game over 10 periods (<= 1e-8 relative)
// and quadrature H on fig1a (<= 1e-6 relative).
Outcome conservation() {
  auto single = bundled("single_gene_mp", {"hamiltonian"});
  single.hamiltonian_periods = 10;
  single.hamiltonian_method = HamiltonianMethod::kClosedForm;
  single.thresholds.h_drift = 1e-8;
  const auto rs = run_analyze(single);
  auto fig = bundled("fig1a", {"hamiltonian"});
  fig.hamiltonian_method = HamiltonianMethod::kQuadrature;
  fig.thresholds.h_drift = 1e-6;
  const auto rf = run_analyze(fig);
  const double ds = check_value(rs, "hamiltonian.relative_drift");
  const double df = check_value(rf, "hamiltonian.relative_drift");
  return {ds <= 1e-8 && df <= 1e-6 && rs.exit_code == kExitOk && rf.exit_code == kExitOk,
          "single_gene_mp closed-form drift=" + fmt("%.2e", ds) +
              "; fig1a quadrature drift=" + fmt("%.2e", df)};
}

// Chasing sign test at every recorded sample of every bundled instance.
Outcome chasing() {
  Outcome out{true, ""};
  for (const char* name : {"fig1a", "fig1b", "fig2a", "fig2b", "single_gene_mp"}) {
    auto config = bundled(name, {"chasing"});
    config.thresholds.chasing_rate_guard = 1e-9;
    const auto r = run_analyze(config);
    const auto& c = r.report["chasing"];
    const bool ok = check_pass(r, "chasing.violations") && c["tested"].get<long>() > 0;
    out.pass = out.pass && ok;
    out.detail += std::string(name) + " " + std::to_string(c["tested"].get<long>() -
                                                            c["violations"].get<long>()) +
                  "/" + std::to_string(c["tested"].get<long>()) + "; ";
  }
  return out;
}

// f strictly increases between successive samples of the subsystem flow
// from 100 random safe starts per function. Samples are taken until the
// rate drops below 1e-9, past which increments fall under double
// resolution near the limit. A start counts as safe when f tends to 0
// backward and 1 forward: OR and AND subsystems have continua of fixed
// points on their faces, so almost every orbit ends at a non-pure state and
// only the output limits separate good starts from bad ones.
Outcome subsystem_lyapunov() {
  IntegratorConfig config;
  config.max_time = 500.0;
  config.sample_interval = 0.01;
  UniformStream u(2024);
  Outcome out{true, ""};
  const std::vector<std::pair<Builtin, int>> functions{
      {Builtin::kXor, 2}, {Builtin::kOr, 2}, {Builtin::kAnd, 2}, {Builtin::kMajority, 3}};
  for (const auto& [kind, arity] : functions) {
    const auto f = make_builtin(kind, arity);
    int accepted = 0, rejected = 0, monotone = 0;
    while (accepted < 100 && rejected < 1000) {
      std::vector<double> x(arity);
      for (auto& v : x) v = u.next(0.01, 0.99);
      const auto fwd = integrate_subsystem(f, ProductDistribution(x), config,
                                           Direction::kForward, 1e-9);
      const auto bwd = integrate_subsystem(f, ProductDistribution(x), config,
                                           Direction::kBackward, 1e-9);
      if (fwd.f.back() < 1.0 - 1e-6 || bwd.f.back() > 1e-6) {
        ++rejected;
        continue;
      }
      ++accepted;
      bool increasing = fwd.size() > 1;
      for (std::size_t k = 1; k < fwd.size(); ++k) {
        increasing = increasing && fwd.f[k] > fwd.f[k - 1];
      }
      monotone += increasing ? 1 : 0;
    }
    out.pass = out.pass && monotone == 100;
    out.detail += std::string(builtin_name(kind)) + std::to_string(arity) + " " +
                  std::to_string(monotone) + "/" + std::to_string(accepted) +
                  (rejected ? " (" + std::to_string(rejected) + " unsafe redrawn)" : "") + "; ";
  }
  return out;
}

// Library against brute-force enumeration on 1000 seeded cases, n+m <= 12,
// tolerance 1e-12.
Outcome oracle_equivalence() {
  VerifyOptions options;
  options.seed = 1;
  options.cases = 1000;
  options.max_agents = 12;
  options.tol = 1e-12;
  const auto items = verify_suite(options);
  Outcome out{true, ""};
  for (const auto& item : items) {
    if (item.name == "gradient_finite_difference") continue;
    out.pass = out.pass && item.pass() && item.comparisons > 0;
    out.detail += item.name + " max_err=" + fmt("%.1e", item.max_error) + "; ";
  }
  return out;
}

// Per-agent regret <= 1e-6 and CE slacks >= -1e-4 over 50 whole periods.
Outcome no_regret_ce() {
  auto config = bundled("fig2a", {"averages", "ce"});
  const auto r = run_analyze(config);
  const double regret = check_value(r, "averages.max_regret");
  const double slack = check_value(r, "ce.min_slack");
  return {regret <= 1e-6 && slack >= -1e-4,
          "fig2a max|u_bar_i0-u_hat_bar_i|=" + fmt("%.2e", regret) +
              " min CE slack=" + fmt("%.2e", slack)};
}

// At least 99 of 100 random interior starts on the fig1a game periodic.
Outcome sweep() {
  Overrides o;
  o.out = g_out / "sweep";
  auto config = load_config("fig1a", o);
  config.sweep.points.clear();
  config.sweep.random_points = 100;
  const auto r = run_sweep(config);
  const auto& s = r.report["sweep"];
  const long periodic = s["periodic"].get<long>();
  const long fixed = s["fixed"].get<long>();
  return {periodic >= 99 && fixed == 0,
          std::to_string(periodic) + "/100 periodic, min boundary distance " +
              fmt("%.3f", s["min_boundary_distance"].is_null()
                              ? 0.0
                              : s["min_boundary_distance"].get<double>())};
}

}  // namespace

int main(int argc, char** argv) {
  g_out = argc > 1 ? std::filesystem::path(argv[1])
                   : std::filesystem::temp_directory_path() / "teamdyn_acceptance";
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"periodic orbits", periodic_orbits},
      {"time-average convergence", time_averages_converge},
      {"conservation of H", conservation},
      {"chasing", chasing},
      {"subsystem Lyapunov", subsystem_lyapunov},
      {"oracle equivalence", oracle_equivalence},
      {"no-regret and CE", no_regret_ce},
      {"sweep periodicity", sweep},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}

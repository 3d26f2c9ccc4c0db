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

#include "teamdyn_cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cfloat>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <thread>

#include "teamdyn/analysis.hpp"
#include "teamdyn/csv.hpp"
#include "teamdyn/errors.hpp"

namespace teamdyn::cli {
namespace {

using nlohmann::json;

constexpr double kInf = std::numeric_limits<double>::infinity();

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json state_json(const ExperimentConfig& config) {
  return {{"x", config.x0}, {"y", config.y0}};
}

json header(const ExperimentConfig& config) {
  return {{"name", config.name},
          {"game", describe_game(config)},
          {"initial_state", state_json(config)},
          {"integrator", describe_integrator(config)},
          {"seed", config.seed}};
}

json classification_json(const FixedPointReport& r) {
  return {{"is_fixed", r.is_fixed},
          {"residual", r.residual},
          {"kinds", r.kind_names()},
          {"weakly_stable", stability_name(r.weakly_stable)},
          {"weakly_stable_a", stability_name(r.weakly_stable_a)},
          {"weakly_stable_b", stability_name(r.weakly_stable_b)}};
}

const char* team_name(Team t) { return t == Team::kA ? "A" : "B"; }

class CheckList {
 public:
  explicit CheckList(CommandResult& result) : result_(result) {}
  void at_most(const std::string& name, double value, double limit) {
    add({name, value, limit, true, value <= limit});
  }
  void at_least(const std::string& name, double value, double limit) {
    add({name, value, limit, false, value >= limit});
  }

 private:
  void add(Check c) { result_.checks.push_back(std::move(c)); }
  CommandResult& result_;
};

void finish(CommandResult& result, int failure_code = kExitOk) {
  json checks = json::array();
  for (const auto& c : result.checks) checks.push_back(check_to_json(c));
  result.report["checks"] = checks;
  result.report["passed"] = result.passed();
  if (failure_code != kExitOk) {
    result.exit_code = failure_code;
  } else {
    result.exit_code = result.passed() ? kExitOk : kExitThreshold;
  }
}

double min_boundary_distance(const Trajectory& traj) {
  double d = kInf;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    for (double v : traj.state(k)) d = std::min({d, v, 1.0 - v});
  }
  return d;
}

struct ChasingStats {
  std::size_t samples = 0;
  std::size_t tested = 0;
  std::size_t violations = 0;
};

// Sign test of df/dt against alpha (g - q) and dg/dt against -alpha (f - p),
// skipped where the team's rate is below the guard.
ChasingStats chasing_along(const TeamGame& game, FieldKind field,
                           const Trajectory& traj, double guard) {
  ChasingStats stats;
  const double s = field_scale(game, field);
  for (std::size_t k = 0; k < traj.size(); ++k) {
    ++stats.samples;
    const auto rates = output_rates(game, field, traj.state(k));
    if (rates.r > guard) {
      ++stats.tested;
      if (rates.df * s * (rates.g - game.nash_q()) < 0.0) ++stats.violations;
    }
    if (rates.w > guard) {
      ++stats.tested;
      if (rates.dg * s * (rates.f - game.nash_p()) > 0.0) ++stats.violations;
    }
  }
  return stats;
}

Trajectory integrate_periods(const ExperimentConfig& config, const TeamGame& game,
                             double period, int periods) {
  IntegratorConfig ic = config.integrator;
  ic.max_time = period * periods;
  return integrate(game, config.initial_state(), ic, config.field);
}

json hamiltonian_section(const ExperimentConfig& config, const TeamGame& game,
                         const Trajectory& traj, CheckList& checks) {
  HamiltonianMethod method = config.hamiltonian_method;
  const bool single = game.n() == 1 && game.m() == 1;
  if (method == HamiltonianMethod::kAuto) {
    method = single ? HamiltonianMethod::kClosedForm : HamiltonianMethod::kQuadrature;
  }
  if (method == HamiltonianMethod::kClosedForm && !single) {
    throw InputError("closed-form H needs single-gene teams");
  }
  const double p = game.nash_p(), q = game.nash_q();
  DriftStats stats;
  json section;
  if (method == HamiltonianMethod::kClosedForm) {
    stats = drift_along(traj, [&](double f, double g) {
      return closed_form_H_single_gene(p, q, f, g);
    });
    section["method"] = "closed_form";
  } else {
    IntegratorConfig ic = config.integrator;
    ic.max_time = 1e4;
    const auto start = config.initial_state();
    const Hamiltonian h(rate_profile(game.f(), start.x, ic, Team::kA),
                        rate_profile(game.g(), start.y, ic, Team::kB), p, q);
    stats = drift_along(traj, [&](double f, double g) { return h(f, g); });
    section["method"] = "quadrature";
  }
  const double limit = config.thresholds.h_drift.value_or(
      method == HamiltonianMethod::kClosedForm ? 1e-8 : 1e-6);
  section["periods"] = config.hamiltonian_periods;
  section["horizon"] = traj.time(traj.size() - 1);
  section["initial"] = stats.initial;
  section["min"] = stats.min;
  section["max"] = stats.max;
  section["drift"] = stats.drift;
  section["relative_drift"] = stats.relative;
  checks.at_most("hamiltonian.relative_drift", stats.relative, limit);
  return section;
}

json averages_section(const ExperimentConfig& config, const TeamGame& game,
                      const TimeAverages& avg, CheckList& checks) {
  json agents = json::array();
  double max_regret = 0.0;
  for (const auto& a : avg.agents) {
    const double regret = std::max(std::abs(a.u0 - a.u_hat), std::abs(a.u1 - a.u_hat));
    max_regret = std::max(max_regret, regret);
    agents.push_back({{"team", team_name(a.team)},
                      {"agent", a.agent + 1},
                      {"u0_bar", a.u0},
                      {"u1_bar", a.u1},
                      {"u_hat_bar", a.u_hat},
                      {"regret", regret}});
  }
  const double ef = std::abs(avg.f_bar - game.nash_p());
  const double eg = std::abs(avg.g_bar - game.nash_q());
  const double eu = std::abs(avg.utility_bar - game.value());
  const double tol = config.thresholds.average;
  checks.at_most("averages.f_bar_error", ef, tol);
  checks.at_most("averages.g_bar_error", eg, tol);
  checks.at_most("averages.uA_bar_error", eu, tol);
  checks.at_most("averages.max_regret", max_regret, config.thresholds.regret);
  return {{"periods", config.average_periods},
          {"horizon", avg.horizon},
          {"f_bar", avg.f_bar},
          {"g_bar", avg.g_bar},
          {"uA_bar", avg.utility_bar},
          {"p", game.nash_p()},
          {"q", game.nash_q()},
          {"value", game.value()},
          {"f_bar_error", ef},
          {"g_bar_error", eg},
          {"uA_bar_error", eu},
          {"max_regret", max_regret},
          {"agents", agents}};
}

json ce_section(const ExperimentConfig& config, const TeamGame& game,
                const std::vector<double>& pi, CheckList& checks) {
  const double limit = config.thresholds.ce_slack;
  const auto cert = certify_correlated_equilibrium(game, pi, std::abs(limit));
  json ce = json::array();
  for (const auto& c : cert.ce) {
    ce.push_back({{"team", team_name(c.team)},
                  {"agent", c.agent + 1},
                  {"recommended", c.recommended},
                  {"deviation", c.deviation},
                  {"slack", c.slack}});
  }
  json cce = json::array();
  for (const auto& c : cert.cce) {
    cce.push_back({{"team", team_name(c.team)},
                   {"agent", c.agent + 1},
                   {"deviation", c.deviation},
                   {"slack", c.slack}});
  }
  checks.at_least("ce.min_slack", cert.min_ce_slack, limit);
  return {{"min_ce_slack", cert.min_ce_slack},
          {"min_cce_slack", cert.min_cce_slack},
          {"is_ce", cert.is_ce},
          {"is_cce", cert.is_cce},
          {"ce_constraints", ce},
          {"cce_constraints", cce}};
}

json chasing_section(const ExperimentConfig& config, const TeamGame& game,
                     const Trajectory& traj, CheckList& checks) {
  const auto stats =
      chasing_along(game, config.field, traj, config.thresholds.chasing_rate_guard);
  checks.at_most("chasing.violations", static_cast<double>(stats.violations), 0.0);
  return {{"samples", stats.samples},
          {"tested", stats.tested},
          {"violations", stats.violations},
          {"rate_guard", config.thresholds.chasing_rate_guard}};
}

json skipped(const std::string& reason) {
  return {{"status", "skipped"}, {"reason", reason}};
}

struct SweepRow {
  std::vector<double> state;
  bool fixed = false;
  bool periodic = false;
  bool failed = false;
  double period = std::numeric_limits<double>::quiet_NaN();
  double return_error = std::numeric_limits<double>::quiet_NaN();
  double min_distance = std::numeric_limits<double>::quiet_NaN();
};

SweepRow sweep_point(const ExperimentConfig& config, const TeamGame& game,
                     std::vector<double> z) {
  SweepRow row;
  row.state = std::move(z);
  if (classify_fixed_point(game, row.state).is_fixed) {
    row.fixed = true;
    return row;
  }
  PeriodOptions options;
  options.field = config.field;
  options.return_tol = config.thresholds.return_error;
  try {
    const auto det = detect_period(
        game, SystemState::from_flat(row.state, game.n()), config.integrator, options);
    row.min_distance = min_boundary_distance(det.trajectory);
    if (det.estimate && det.estimate->return_error <= options.return_tol) {
      row.periodic = true;
      row.period = det.estimate->period;
      row.return_error = det.estimate->return_error;
    }
  } catch (const IntegrationError& e) {
    row.failed = true;
    row.min_distance = min_boundary_distance(e.partial());
  }
  return row;
}

}  // namespace

bool CommandResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const Check* CommandResult::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

json describe_game(const ExperimentConfig& config) {
  const TeamGame game = config.game();
  const auto& k = game.kernel();
  return {{"f", config.f_spec},
          {"g", config.g_spec},
          {"f_table", game.f().to_string()},
          {"g_table", game.g().to_string()},
          {"n", game.n()},
          {"m", game.m()},
          {"kernel", {{"a", k.a}, {"b", k.b}, {"c", k.c}, {"d", k.d}}},
          {"alpha", game.alpha()},
          {"p", game.nash_p()},
          {"q", game.nash_q()},
          {"value", game.value()}};
}

json describe_integrator(const ExperimentConfig& config) {
  const auto& ic = config.integrator;
  return {{"method", method_name(ic.method)},
          {"field", field_name(config.field)},
          {"step", ic.step},
          {"abs_tol", ic.abs_tol},
          {"rel_tol", ic.rel_tol},
          {"max_time", ic.max_time},
          {"sample_interval", ic.sample_interval},
          {"min_step", ic.min_step}};
}

json check_to_json(const Check& c) {
  return {{"name", c.name},
          {"value", number(c.value)},
          {"limit", c.limit},
          {"relation", c.at_most ? "<=" : ">="},
          {"pass", c.pass}};
}

void write_json(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

CommandResult run_simulate(const ExperimentConfig& config) {
  std::filesystem::create_directories(config.output_dir);
  const TeamGame game = config.game();
  CommandResult result;
  result.report = header(config);
  Trajectory traj;
  try {
    traj = integrate(game, config.initial_state(), config.integrator, config.field);
    result.report["status"] = "completed";
  } catch (const IntegrationError& e) {
    traj = e.partial();
    result.report["status"] = "integration_failure";
    result.report["error"] = e.what();
    result.exit_code = kExitIntegration;
  }
  write_trajectory_csv(config.output_dir / "trajectory.csv", traj);
  result.report["samples"] = traj.size();
  result.report["t_end"] = traj.empty() ? 0.0 : traj.time(traj.size() - 1);
  write_json(config.output_dir / "meta.json", result.report);
  return result;
}

CommandResult run_analyze(const ExperimentConfig& config) {
  std::filesystem::create_directories(config.output_dir);
  const TeamGame game = config.game();
  const SystemState start = config.initial_state();
  const auto z0 = start.flat();
  CommandResult result;
  json& rep = result.report;
  rep = header(config);
  rep["analyses"] = config.analyses;
  CheckList checks(result);
  int failure = kExitOk;

  try {
    const auto cls = classify_fixed_point(game, z0);
    if (config.wants("classify")) rep["classification"] = classification_json(cls);

    const bool wants_h = config.wants("hamiltonian");
    const bool wants_avg = config.wants("averages") || config.wants("ce");
    std::optional<PeriodEstimate> period;
    if (config.wants("period") || wants_h || wants_avg) {
      if (cls.is_fixed) {
        rep["period"] = skipped("initial state is a fixed point");
      } else {
        PeriodOptions options;
        options.field = config.field;
        options.return_tol = config.thresholds.return_error;
        const auto det = detect_period(game, start, config.integrator, options);
        period = det.estimate;
        rep["period"] = {{"found", period.has_value()},
                         {"crossings", det.crossings.size()},
                         {"min_boundary_distance", min_boundary_distance(det.trajectory)}};
        if (period) {
          rep["period"]["period"] = period->period;
          rep["period"]["return_error"] = period->return_error;
        }
        checks.at_most("period.return_error", period ? period->return_error : kInf,
                       config.thresholds.return_error);
      }
    }

    const std::string no_period =
        cls.is_fixed ? "initial state is a fixed point" : "no period detected";
    std::optional<Trajectory> longest;
    if (wants_h) {
      if (period) {
        auto traj = integrate_periods(config, game, period->period, config.hamiltonian_periods);
        rep["hamiltonian"] = hamiltonian_section(config, game, traj, checks);
        longest = std::move(traj);
      } else {
        rep["hamiltonian"] = skipped(no_period);
      }
    }
    if (wants_avg) {
      if (period) {
        auto traj = integrate_periods(config, game, period->period, config.average_periods);
        const bool with_profile = config.wants("ce");
        const auto avg = time_averages(game, traj, true, period->period, with_profile);
        if (config.wants("averages")) {
          rep["averages"] = averages_section(config, game, avg, checks);
        }
        if (with_profile) rep["ce"] = ce_section(config, game, avg.profile, checks);
        if (!longest || traj.size() > longest->size()) longest = std::move(traj);
      } else {
        if (config.wants("averages")) rep["averages"] = skipped(no_period);
        if (config.wants("ce")) rep["ce"] = skipped(no_period);
      }
    }
    if (config.wants("chasing")) {
      if (!longest) longest = integrate(game, start, config.integrator, config.field);
      rep["chasing"] = chasing_section(config, game, *longest, checks);
    }
  } catch (const IntegrationError& e) {
    rep["status"] = "integration_failure";
    rep["error"] = e.what();
    failure = kExitIntegration;
  }
  finish(result, failure);
  write_json(config.output_dir / "report.json", rep);
  return result;
}

CommandResult run_sweep(const ExperimentConfig& config) {
  std::filesystem::create_directories(config.output_dir);
  const TeamGame game = config.game();
  const std::size_t dim = static_cast<std::size_t>(game.n() + game.m());

  std::vector<std::vector<double>> points = config.sweep.points;
  UniformStream uniform(config.seed);
  const double lo = config.sweep.margin, hi = 1.0 - config.sweep.margin;
  for (int k = 0; k < config.sweep.random_points; ++k) {
    std::vector<double> z(dim);
    for (auto& v : z) v = uniform.next(lo, hi);
    points.push_back(std::move(z));
  }
  if (points.empty()) throw InputError("sweep has no points");

  std::vector<SweepRow> rows(points.size());
  std::vector<std::exception_ptr> errors(points.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < points.size();) {
      try {
        rows[i] = sweep_point(config, game, points[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::size_t workers = config.sweep.workers > 0
                            ? static_cast<std::size_t>(config.sweep.workers)
                            : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, points.size());
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::ofstream csv(config.output_dir / "sweep.csv");
  if (!csv) throw InputError("cannot write sweep.csv");
  csv << "index";
  for (int i = 1; i <= game.n(); ++i) csv << ",x_" << i;
  for (int j = 1; j <= game.m(); ++j) csv << ",y_" << j;
  csv << ",fixed,periodic,period,return_error,min_boundary_distance\n";
  std::size_t fixed = 0, periodic = 0, failed = 0;
  double min_distance = kInf;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    csv << i;
    for (double v : r.state) csv << ',' << format_double(v);
    csv << ',' << (r.fixed ? 1 : 0) << ',' << (r.periodic ? 1 : 0) << ','
        << format_double(r.period) << ',' << format_double(r.return_error) << ','
        << format_double(r.min_distance) << '\n';
    fixed += r.fixed ? 1 : 0;
    failed += r.failed ? 1 : 0;
    if (r.periodic) {
      ++periodic;
      min_distance = std::min(min_distance, r.min_distance);
    }
  }

  CommandResult result;
  json& rep = result.report;
  rep = header(config);
  const std::size_t candidates = rows.size() - fixed;
  const double fraction =
      candidates == 0 ? 1.0 : static_cast<double>(periodic) / static_cast<double>(candidates);
  rep["sweep"] = {{"points", rows.size()},
                  {"explicit_points", config.sweep.points.size()},
                  {"random_points", config.sweep.random_points},
                  {"margin", config.sweep.margin},
                  {"fixed", fixed},
                  {"periodic", periodic},
                  {"integration_failures", failed},
                  {"periodic_fraction", fraction},
                  {"min_boundary_distance", number(min_distance)}};
  CheckList checks(result);
  checks.at_least("sweep.periodic_fraction", fraction, config.thresholds.periodic_fraction);
  if (periodic > 0) checks.at_least("sweep.min_boundary_distance", min_distance, DBL_MIN);
  finish(result);
  write_json(config.output_dir / "report.json", rep);
  return result;
}

}  // namespace teamdyn::cli

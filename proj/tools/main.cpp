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

// teamdyn: simulate, analyze, sweep, plot and verify team replicator
// dynamics from declarative configs.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "teamdyn/dynamics.hpp"
#include "teamdyn/errors.hpp"
#include "teamdyn_cli/commands.hpp"
#include "teamdyn_cli/config.hpp"
#include "teamdyn_cli/plot.hpp"
#include "teamdyn_cli/verify.hpp"

namespace {

using namespace teamdyn::cli;

struct CommonFlags {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<double> max_time;
  std::optional<double> tol;

  void attach(CLI::App* cmd, bool config_required) {
    auto* opt = cmd->add_option("--config", config,
                                "Config file, or a bundled name (fig1a, fig1b, fig2a, "
                                "fig2b, single_gene_mp)");
    if (config_required) opt->required();
    cmd->add_option("--out", out, "Output directory (overrides the config)");
    cmd->add_option("--seed", seed, "Seed for random points and cases");
    cmd->add_option("--max-time", max_time, "Integration horizon")->check(CLI::PositiveNumber);
    cmd->add_option("--tol", tol, "Integrator abs/rel tolerance (verify: oracle tolerance)")
        ->check(CLI::PositiveNumber);
  }

  Overrides overrides() const {
    Overrides o;
    if (!out.empty()) o.out = out;
    o.seed = seed;
    o.max_time = max_time;
    o.tol = tol;
    return o;
  }

  ExperimentConfig load() const { return load_config(config, overrides()); }
};

void print_checks(const CommandResult& result) {
  for (const auto& c : result.checks) {
    std::printf("%s %s = %.6g %s %.6g\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                c.value, c.at_most ? "<=" : ">=", c.limit);
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Team replicator dynamics: simulation and verification"};
  app.require_subcommand(1);

  CommonFlags sim_flags, ana_flags, sweep_flags, plot_flags, verify_flags;
  auto* simulate = app.add_subcommand("simulate", "Integrate and write trajectory.csv + meta.json");
  sim_flags.attach(simulate, true);
  auto* analyze = app.add_subcommand("analyze", "Run the configured analyses, write report.json");
  ana_flags.attach(analyze, true);
  auto* sweep = app.add_subcommand("sweep", "Period detection over a grid of initial states");
  sweep_flags.attach(sweep, true);

  auto* plot = app.add_subcommand("plot", "Render a trajectory CSV as SVG");
  plot_flags.attach(plot, false);
  std::string csv, mode;
  std::vector<std::string> columns;
  plot->add_option("--csv", csv, "Trajectory CSV (default <out>/trajectory.csv)");
  plot->add_option("--mode", mode, "phase, series or running_average");
  plot->add_option("--columns", columns, "Columns to draw")->delimiter(',');

  auto* verify = app.add_subcommand("verify", "Cross-check the library against brute-force oracles");
  verify_flags.attach(verify, false);
  int cases = 1000;
  int max_agents = 12;
  std::string inject;
  verify->add_option("--cases", cases, "Random cases")->check(CLI::PositiveNumber);
  verify->add_option("--max-agents", max_agents, "Largest n + m")->check(CLI::Range(2, 16));
  verify->add_option("--inject", inject, "Test hook")->group("")->check(CLI::IsMember({"sign-flip"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  CommandResult result;
  if (simulate->parsed()) {
    const auto config = sim_flags.load();
    result = run_simulate(config);
    std::printf("wrote %s (%s samples)\n", (config.output_dir / "trajectory.csv").c_str(),
                result.report["samples"].dump().c_str());
  } else if (analyze->parsed()) {
    const auto config = ana_flags.load();
    result = run_analyze(config);
    print_checks(result);
    std::printf("wrote %s\n", (config.output_dir / "report.json").c_str());
  } else if (sweep->parsed()) {
    const auto config = sweep_flags.load();
    result = run_sweep(config);
    print_checks(result);
    std::printf("wrote %s\n", (config.output_dir / "sweep.csv").c_str());
  } else if (plot->parsed()) {
    ExperimentConfig config;
    if (!plot_flags.config.empty()) {
      config = plot_flags.load();
    } else if (!csv.empty()) {
      config.name = std::filesystem::path(csv).stem().string();
      config.output_dir = plot_flags.out.empty()
                              ? std::filesystem::path(csv).parent_path()
                              : std::filesystem::path(plot_flags.out);
    } else {
      throw teamdyn::InputError("plot needs --config or --csv");
    }
    if (!csv.empty()) config.plot.csv = csv;
    if (!mode.empty()) config.plot.mode = mode;
    if (!columns.empty()) config.plot.columns = columns;
    result = run_plot(config);
    std::printf("wrote %s\n", result.report["svg"].get<std::string>().c_str());
  } else if (verify->parsed()) {
    VerifyOptions options;
    if (verify_flags.seed) options.seed = *verify_flags.seed;
    if (verify_flags.tol) options.tol = *verify_flags.tol;
    options.cases = cases;
    options.max_agents = max_agents;
    options.inject_sign_flip = inject == "sign-flip";
    std::optional<std::filesystem::path> out;
    if (!verify_flags.out.empty()) out = verify_flags.out;
    result = run_verify(options, out);
    print_checks(result);
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const teamdyn::IntegrationError& e) {
    std::cerr << "integration failure: " << e.what() << '\n';
    return kExitIntegration;
  } catch (const teamdyn::InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const teamdyn::DomainError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const teamdyn::CapacityError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

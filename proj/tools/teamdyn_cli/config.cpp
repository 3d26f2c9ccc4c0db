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

#include "teamdyn_cli/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"
#include "teamdyn/errors.hpp"

namespace teamdyn::cli {
namespace {

using nlohmann::json;

const std::vector<std::string> kAnalyses{"classify", "period",  "hamiltonian",
                                         "averages", "ce",      "chasing"};

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw InputError(where + " must be an object");
  for (const auto& item : obj.items()) {
    const bool ok = std::any_of(allowed.begin(), allowed.end(),
                                [&](const char* k) { return item.key() == k; });
    if (!ok) throw InputError("unknown key '" + item.key() + "' in " + where);
  }
}

template <typename T>
T get(const json& obj, const char* key, const std::string& where) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw InputError(where + "." + key + " is missing or has the wrong type");
  }
}

template <typename T>
void maybe(const json& obj, const char* key, const std::string& where, T& out) {
  if (obj.contains(key)) out = get<T>(obj, key, where);
}

std::filesystem::path resolve(const std::filesystem::path& source,
                              const std::string& file) {
  std::filesystem::path p(file);
  if (p.is_relative() && !source.empty()) p = source.parent_path() / p;
  return p;
}

BooleanFunction parse_function(const json& spec, const std::string& where,
                               const std::filesystem::path& source,
                               std::string& description) {
  check_keys(spec, where, {"builtin", "arity", "table", "table_file"});
  const int forms = static_cast<int>(spec.contains("builtin")) +
                    static_cast<int>(spec.contains("table")) +
                    static_cast<int>(spec.contains("table_file"));
  if (forms != 1) {
    throw InputError(where + " needs exactly one of builtin, table, table_file");
  }
  if (spec.contains("builtin")) {
    const auto name = get<std::string>(spec, "builtin", where);
    const Builtin kind = parse_builtin(name);
    int arity = kind == Builtin::kIdentity ? 1 : 2;
    maybe(spec, "arity", where, arity);
    description = std::string(builtin_name(kind)) + "(" + std::to_string(arity) + ")";
    return make_builtin(kind, arity);
  }
  if (spec.contains("arity")) {
    throw InputError(where + ".arity only applies to builtin functions");
  }
  if (spec.contains("table")) {
    auto f = BooleanFunction::parse(get<std::string>(spec, "table", where));
    description = "table " + f.to_string();
    return f;
  }
  const auto path = resolve(source, get<std::string>(spec, "table_file", where));
  if (!std::filesystem::exists(path)) {
    throw InputError(where + ".table_file does not exist: " + path.string());
  }
  auto f = BooleanFunction::load(path);
  description = "table " + f.to_string();
  return f;
}

PayoffKernel parse_kernel(const json& spec) {
  const std::string where = "game.kernel";
  if (spec.is_string()) {
    const auto name = spec.get<std::string>();
    if (name == "matching_pennies") return matching_pennies();
    if (name == "rescaled_matching_pennies") return rescaled_matching_pennies();
    throw InputError("unknown kernel '" + name + "'");
  }
  if (spec.is_array()) {
    if (spec.size() != 4 || !std::all_of(spec.begin(), spec.end(),
                                         [](const json& v) { return v.is_number(); })) {
      throw InputError(where + " must be four numbers [a, b, c, d]");
    }
    return {spec[0].get<double>(), spec[1].get<double>(), spec[2].get<double>(),
            spec[3].get<double>()};
  }
  check_keys(spec, where, {"a", "b", "c", "d"});
  return {get<double>(spec, "a", where), get<double>(spec, "b", where),
          get<double>(spec, "c", where), get<double>(spec, "d", where)};
}

void parse_integrator(const json& spec, ExperimentConfig& config) {
  const std::string where = "integrator";
  check_keys(spec, where,
             {"method", "step", "abs_tol", "rel_tol", "max_time",
              "sample_interval", "min_step", "field"});
  auto& ic = config.integrator;
  if (spec.contains("method")) ic.method = parse_method(get<std::string>(spec, "method", where));
  if (spec.contains("field")) config.field = parse_field(get<std::string>(spec, "field", where));
  maybe(spec, "step", where, ic.step);
  maybe(spec, "abs_tol", where, ic.abs_tol);
  maybe(spec, "rel_tol", where, ic.rel_tol);
  maybe(spec, "max_time", where, ic.max_time);
  maybe(spec, "sample_interval", where, ic.sample_interval);
  maybe(spec, "min_step", where, ic.min_step);
}

void parse_thresholds(const json& spec, Thresholds& t) {
  const std::string where = "thresholds";
  check_keys(spec, where,
             {"return_error", "h_drift", "average", "regret", "ce_slack",
              "chasing_rate_guard", "periodic_fraction"});
  maybe(spec, "return_error", where, t.return_error);
  if (spec.contains("h_drift")) t.h_drift = get<double>(spec, "h_drift", where);
  maybe(spec, "average", where, t.average);
  maybe(spec, "regret", where, t.regret);
  maybe(spec, "ce_slack", where, t.ce_slack);
  maybe(spec, "chasing_rate_guard", where, t.chasing_rate_guard);
  maybe(spec, "periodic_fraction", where, t.periodic_fraction);
}

void parse_sweep(const json& spec, SweepSpec& s, std::size_t dim) {
  const std::string where = "sweep";
  check_keys(spec, where, {"random_points", "margin", "points", "workers"});
  maybe(spec, "random_points", where, s.random_points);
  maybe(spec, "margin", where, s.margin);
  maybe(spec, "points", where, s.points);
  maybe(spec, "workers", where, s.workers);
  if (s.random_points < 0 || s.workers < 0) {
    throw InputError("sweep counts must be nonnegative");
  }
  if (!(s.margin >= 0.0 && s.margin < 0.5)) {
    throw InputError("sweep.margin must be in [0, 0.5)");
  }
  for (const auto& p : s.points) {
    if (p.size() != dim) {
      throw InputError("sweep point has " + std::to_string(p.size()) +
                       " coordinates, game has " + std::to_string(dim));
    }
    ProductDistribution check(p);  // validates [0,1]
  }
}

void parse_plot(const json& spec, PlotSpec& p) {
  const std::string where = "plot";
  check_keys(spec, where, {"csv", "mode", "columns"});
  maybe(spec, "csv", where, p.csv);
  maybe(spec, "mode", where, p.mode);
  maybe(spec, "columns", where, p.columns);
}

}  // namespace

bool ExperimentConfig::wants(const std::string& analysis) const {
  return std::find(analyses.begin(), analyses.end(), analysis) != analyses.end();
}

std::filesystem::path bundled_config_dir() {
  if (const char* env = std::getenv("TEAMDYN_CONFIG_DIR")) return env;
  return TEAMDYN_CONFIG_DIR;
}

ExperimentConfig parse_config(const std::string& text,
                              const std::filesystem::path& source,
                              const Overrides& overrides) {
  json doc;
  try {
    doc = json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw InputError("config is not valid JSON: " + std::string(e.what()));
  }
  check_keys(doc, "config",
             {"name", "description", "game", "initial_state", "integrator",
              "analyses", "averages", "hamiltonian", "thresholds", "sweep", "plot",
              "seed", "output_dir"});

  ExperimentConfig config;
  config.source = source;
  config.name = source.empty() ? "experiment" : source.stem().string();
  maybe(doc, "name", "config", config.name);

  if (!doc.contains("game")) throw InputError("config.game is required");
  const json& game = doc["game"];
  check_keys(game, "game", {"f", "g", "kernel"});
  if (!game.contains("f") || !game.contains("g")) {
    throw InputError("game.f and game.g are required");
  }
  config.f = parse_function(game["f"], "game.f", source, config.f_spec);
  config.g = parse_function(game["g"], "game.g", source, config.g_spec);
  if (game.contains("kernel")) config.kernel = parse_kernel(game["kernel"]);
  validate_kernel(config.kernel);

  if (!doc.contains("initial_state")) throw InputError("config.initial_state is required");
  const json& init = doc["initial_state"];
  check_keys(init, "initial_state", {"x", "y"});
  config.x0 = get<std::vector<double>>(init, "x", "initial_state");
  config.y0 = get<std::vector<double>>(init, "y", "initial_state");
  if (config.x0.size() != static_cast<std::size_t>(config.f.arity()) ||
      config.y0.size() != static_cast<std::size_t>(config.g.arity())) {
    throw InputError("initial_state dimensions do not match the functions' arities");
  }
  config.initial_state();  // validates [0,1]

  if (doc.contains("integrator")) parse_integrator(doc["integrator"], config);
  if (doc.contains("analyses")) {
    config.analyses = get<std::vector<std::string>>(doc, "analyses", "config");
    for (const auto& a : config.analyses) {
      if (std::find(kAnalyses.begin(), kAnalyses.end(), a) == kAnalyses.end()) {
        throw InputError("unknown analysis '" + a + "'");
      }
    }
  }
  if (doc.contains("averages")) {
    check_keys(doc["averages"], "averages", {"periods"});
    maybe(doc["averages"], "periods", "averages", config.average_periods);
  }
  if (doc.contains("hamiltonian")) {
    const json& h = doc["hamiltonian"];
    check_keys(h, "hamiltonian", {"periods", "method"});
    maybe(h, "periods", "hamiltonian", config.hamiltonian_periods);
    if (h.contains("method")) {
      const auto m = get<std::string>(h, "method", "hamiltonian");
      if (m == "auto") config.hamiltonian_method = HamiltonianMethod::kAuto;
      else if (m == "closed_form") config.hamiltonian_method = HamiltonianMethod::kClosedForm;
      else if (m == "quadrature") config.hamiltonian_method = HamiltonianMethod::kQuadrature;
      else throw InputError("unknown hamiltonian.method '" + m + "'");
    }
  }
  if (config.average_periods < 1 || config.hamiltonian_periods < 1) {
    throw InputError("period counts must be at least 1");
  }
  if (doc.contains("thresholds")) parse_thresholds(doc["thresholds"], config.thresholds);
  if (doc.contains("sweep")) {
    parse_sweep(doc["sweep"], config.sweep, config.x0.size() + config.y0.size());
  }
  if (doc.contains("plot")) parse_plot(doc["plot"], config.plot);
  maybe(doc, "seed", "config", config.seed);
  std::string out = "out/" + config.name;
  maybe(doc, "output_dir", "config", out);
  config.output_dir = out;

  if (overrides.out) config.output_dir = *overrides.out;
  if (overrides.seed) config.seed = *overrides.seed;
  if (overrides.max_time) config.integrator.max_time = *overrides.max_time;
  if (overrides.tol) config.integrator.abs_tol = config.integrator.rel_tol = *overrides.tol;
  config.integrator.validate();
  return config;
}

ExperimentConfig load_config(const std::string& path_or_name,
                             const Overrides& overrides) {
  std::filesystem::path path(path_or_name);
  if (!std::filesystem::exists(path)) {
    const auto bundled = bundled_config_dir() / (path_or_name + ".json");
    if (path.extension().empty() && std::filesystem::exists(bundled)) {
      path = bundled;
    } else {
      throw InputError("config not found: " + path_or_name);
    }
  }
  std::ifstream in(path);
  if (!in) throw InputError("cannot read config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path, overrides);
}

}  // namespace teamdyn::cli

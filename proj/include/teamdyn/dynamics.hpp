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

// Replicator vector fields of the two-team game and trajectory integration.
//
// State layout everywhere in this module: the n team-A marginals followed by
// the m team-B marginals.

#ifndef TEAMDYN_DYNAMICS_HPP_
#define TEAMDYN_DYNAMICS_HPP_

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "teamdyn/boolfn.hpp"
#include "teamdyn/game.hpp"
#include "teamdyn/integrator.hpp"

namespace teamdyn {

struct SystemState {
  ProductDistribution x;
  ProductDistribution y;

  std::vector<double> flat() const;
  // Splits a flat state after the first n coordinates; validates [0,1].
  static SystemState from_flat(std::span<const double> z, int n);
};

enum class FieldKind {
  kRescaled,  // alpha factored out (set to 1)
  kRaw,       // replicator equations with the kernel's payoffs
};

FieldKind parse_field(std::string_view name);
std::string_view field_name(FieldKind kind);

// x_i' = alpha x_i(1-x_i)(f_i0 - f_i1)(g - q),
// y_j' = -alpha y_j(1-y_j)(g_j0 - g_j1)(f - p).
std::vector<double> rescaled_field(const TeamGame& game,
                                   std::span<const double> x,
                                   std::span<const double> y,
                                   double alpha = 1.0);

// x_i' = x_i(1-x_i)(u_i0 - u_i1) with each team's own conditional payoffs.
std::vector<double> raw_field(const TeamGame& game, std::span<const double> x,
                              std::span<const double> y);

// x_i' = x_i(1-x_i)(f_i0 - f_i1): one team in isolation, ascending f.
std::vector<double> subsystem_field(const BooleanFunction& f,
                                    std::span<const double> x);

std::vector<double> evaluate_field(const TeamGame& game, FieldKind kind,
                                   std::span<const double> z);

// Time scale of a field relative to the rescaled one (1 or alpha).
double field_scale(const TeamGame& game, FieldKind kind);

// r = sum_i x_i(1-x_i)(f_i0 - f_i1)^2.
double output_rate(const BooleanFunction& f, std::span<const double> x);

// Expected outputs and their time derivatives at a flat state. df and dg come
// from the chain rule applied to the field vector.
struct OutputRates {
  double f = 0.0;
  double g = 0.0;
  double df = 0.0;
  double dg = 0.0;
  double r = 0.0;
  double w = 0.0;
};
OutputRates output_rates(const TeamGame& game, FieldKind kind,
                         std::span<const double> z);

// Time-stamped states with derived scalars, stored column-wise.
class Trajectory {
 public:
  struct Metadata {
    std::string game;
    IntegratorConfig config;
    FieldKind field = FieldKind::kRescaled;
    std::vector<double> initial_state;
  };

  Trajectory() = default;
  Trajectory(int n, int m) : n_(n), m_(m) {}

  int n() const { return n_; }
  int m() const { return m_; }
  std::size_t size() const { return times_.size(); }
  bool empty() const { return times_.empty(); }

  double time(std::size_t k) const { return times_[k]; }
  std::span<const double> state(std::size_t k) const {
    return {states_.data() + k * dim(), dim()};
  }
  std::span<const double> x(std::size_t k) const {
    return state(k).first(static_cast<std::size_t>(n_));
  }
  std::span<const double> y(std::size_t k) const {
    return state(k).last(static_cast<std::size_t>(m_));
  }
  double f(std::size_t k) const { return f_[k]; }
  double g(std::size_t k) const { return g_[k]; }
  double utility(std::size_t k) const { return utility_[k]; }

  const std::vector<double>& times() const { return times_; }
  const std::vector<double>& f_values() const { return f_; }
  const std::vector<double>& g_values() const { return g_; }

  void append(double t, std::span<const double> state, double f, double g,
              double utility);

  Metadata meta;

 private:
  std::size_t dim() const { return static_cast<std::size_t>(n_ + m_); }

  int n_ = 0;
  int m_ = 0;
  std::vector<double> times_;
  std::vector<double> states_;
  std::vector<double> f_;
  std::vector<double> g_;
  std::vector<double> utility_;
};

// Raised when the adaptive step underflows; carries what was integrated.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, Trajectory partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const Trajectory& partial() const { return partial_; }

 private:
  Trajectory partial_;
};

// Observer over dense segments of the flat state; returning false stops.
using SystemStepObserver = StepObserver;

// Integrates from `start` over [0, config.max_time]. Recorded states are
// clamped to [0,1]. An observer that stops early truncates the trajectory at
// the last recorded sample.
Trajectory integrate(const TeamGame& game, const SystemState& start,
                     const IntegratorConfig& config,
                     FieldKind field = FieldKind::kRescaled,
                     const SystemStepObserver& observer = {});

enum class Direction { kForward, kBackward };

// Subsystem orbit of one team; t is elapsed time in the chosen direction.
struct SubsystemTrajectory {
  int n = 0;
  Direction direction = Direction::kForward;
  std::vector<double> times;
  std::vector<double> states;  // row-major, n per sample
  std::vector<double> f;
  std::vector<double> r;

  std::size_t size() const { return times.size(); }
  std::span<const double> state(std::size_t k) const {
    return {states.data() + k * static_cast<std::size_t>(n),
            static_cast<std::size_t>(n)};
  }
};

// `stop_rate`, when positive, ends the run once r drops below it (the orbit
// has effectively reached its limit point).
SubsystemTrajectory integrate_subsystem(const BooleanFunction& f,
                                        const ProductDistribution& x0,
                                        const IntegratorConfig& config,
                                        Direction direction,
                                        double stop_rate = 0.0);

}  // namespace teamdyn

#endif  // TEAMDYN_DYNAMICS_HPP_

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

#include "teamdyn/dynamics.hpp"

#include <algorithm>
#include <string>

#include "teamdyn/errors.hpp"

namespace teamdyn {
namespace {

void check_dims(const TeamGame& game, std::size_t nx, std::size_t ny) {
  if (nx != static_cast<std::size_t>(game.n()) ||
      ny != static_cast<std::size_t>(game.m())) {
    throw InputError("state has " + std::to_string(nx) + "+" +
                     std::to_string(ny) + " coordinates, game expects " +
                     std::to_string(game.n()) + "+" + std::to_string(game.m()));
  }
}

bool clamp_unit(std::span<double> z) {
  bool changed = false;
  for (double& v : z) {
    const double c = std::clamp(v, 0.0, 1.0);
    if (c != v) {
      v = c;
      changed = true;
    }
  }
  return changed;
}

}  // namespace

std::vector<double> SystemState::flat() const {
  std::vector<double> z(x.marginals());
  z.insert(z.end(), y.marginals().begin(), y.marginals().end());
  return z;
}

SystemState SystemState::from_flat(std::span<const double> z, int n) {
  if (n < 0 || static_cast<std::size_t>(n) > z.size()) {
    throw InputError("cannot split state of size " + std::to_string(z.size()) +
                     " after " + std::to_string(n) + " coordinates");
  }
  return {ProductDistribution({z.begin(), z.begin() + n}),
          ProductDistribution({z.begin() + n, z.end()})};
}

FieldKind parse_field(std::string_view name) {
  if (name == "rescaled") return FieldKind::kRescaled;
  if (name == "raw") return FieldKind::kRaw;
  throw InputError("unknown field '" + std::string(name) +
                   "' (expected rescaled or raw)");
}

std::string_view field_name(FieldKind kind) {
  return kind == FieldKind::kRaw ? "raw" : "rescaled";
}

std::vector<double> rescaled_field(const TeamGame& game,
                                   std::span<const double> x,
                                   std::span<const double> y, double alpha) {
  check_dims(game, x.size(), y.size());
  const double f = expectation(game.f(), x);
  const double g = expectation(game.g(), y);
  std::vector<double> dz(x.size() + y.size());
  for (int i = 0; i < game.n(); ++i) {
    const double diff = conditional_pair(game.f(), x, i).difference();
    dz[i] = alpha * x[i] * (1.0 - x[i]) * diff * (g - game.nash_q());
  }
  for (int j = 0; j < game.m(); ++j) {
    const double diff = conditional_pair(game.g(), y, j).difference();
    dz[game.n() + j] = -alpha * y[j] * (1.0 - y[j]) * diff * (f - game.nash_p());
  }
  return dz;
}

std::vector<double> raw_field(const TeamGame& game, std::span<const double> x,
                              std::span<const double> y) {
  check_dims(game, x.size(), y.size());
  std::vector<double> dz(x.size() + y.size());
  for (int i = 0; i < game.n(); ++i) {
    const ConditionalPair u = conditional_agent_utilities(game, x, y, Team::kA, i);
    dz[i] = x[i] * (1.0 - x[i]) * (u.zero - u.one);
  }
  for (int j = 0; j < game.m(); ++j) {
    const ConditionalPair v = conditional_agent_utilities(game, x, y, Team::kB, j);
    dz[game.n() + j] = y[j] * (1.0 - y[j]) * (v.zero - v.one);
  }
  return dz;
}

std::vector<double> subsystem_field(const BooleanFunction& f,
                                    std::span<const double> x) {
  const auto pairs = conditional_pairs(f, x);
  std::vector<double> dx(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    dx[i] = x[i] * (1.0 - x[i]) * pairs[i].difference();
  }
  return dx;
}

std::vector<double> evaluate_field(const TeamGame& game, FieldKind kind,
                                   std::span<const double> z) {
  if (z.size() != static_cast<std::size_t>(game.n() + game.m())) {
    throw InputError("state has " + std::to_string(z.size()) +
                     " coordinates, game expects " +
                     std::to_string(game.n() + game.m()));
  }
  const auto x = z.first(static_cast<std::size_t>(game.n()));
  const auto y = z.subspan(static_cast<std::size_t>(game.n()));
  return kind == FieldKind::kRaw ? raw_field(game, x, y)
                                 : rescaled_field(game, x, y);
}

double field_scale(const TeamGame& game, FieldKind kind) {
  return kind == FieldKind::kRaw ? game.alpha() : 1.0;
}

double output_rate(const BooleanFunction& f, std::span<const double> x) {
  const auto pairs = conditional_pairs(f, x);
  double r = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = pairs[i].difference();
    r += x[i] * (1.0 - x[i]) * d * d;
  }
  return r;
}

OutputRates output_rates(const TeamGame& game, FieldKind kind,
                         std::span<const double> z) {
  const auto field = evaluate_field(game, kind, z);
  const auto x = z.first(static_cast<std::size_t>(game.n()));
  const auto y = z.subspan(static_cast<std::size_t>(game.n()));
  const auto fp = conditional_pairs(game.f(), x);
  const auto gp = conditional_pairs(game.g(), y);
  OutputRates out;
  out.f = expectation(game.f(), x);
  out.g = expectation(game.g(), y);
  for (int i = 0; i < game.n(); ++i) {
    const double d = fp[i].difference();
    out.df += d * field[i];
    out.r += x[i] * (1.0 - x[i]) * d * d;
  }
  for (int j = 0; j < game.m(); ++j) {
    const double d = gp[j].difference();
    out.dg += d * field[game.n() + j];
    out.w += y[j] * (1.0 - y[j]) * d * d;
  }
  return out;
}

void Trajectory::append(double t, std::span<const double> state, double f,
                        double g, double utility) {
  if (state.size() != dim()) {
    throw InputError("trajectory sample has wrong dimension");
  }
  if (!times_.empty() && !(t > times_.back())) {
    throw InputError("trajectory times must be strictly increasing");
  }
  times_.push_back(t);
  states_.insert(states_.end(), state.begin(), state.end());
  f_.push_back(f);
  g_.push_back(g);
  utility_.push_back(utility);
}

Trajectory integrate(const TeamGame& game, const SystemState& start,
                     const IntegratorConfig& config, FieldKind field,
                     const SystemStepObserver& observer) {
  check_dims(game, start.x.size(), start.y.size());
  const std::size_t n = static_cast<std::size_t>(game.n());
  Trajectory trajectory(game.n(), game.m());
  trajectory.meta.game = game.describe();
  trajectory.meta.config = config;
  trajectory.meta.field = field;
  trajectory.meta.initial_state = start.flat();

  const OdeRhs rhs = [&](std::span<const double> z, std::span<double> dz) {
    const auto v = field == FieldKind::kRaw
                       ? raw_field(game, z.first(n), z.subspan(n))
                       : rescaled_field(game, z.first(n), z.subspan(n));
    std::copy(v.begin(), v.end(), dz.begin());
  };
  const SampleObserver record = [&](double t, std::span<const double> z) {
    const auto x = z.first(n);
    const auto y = z.subspan(n);
    trajectory.append(t, z, expectation(game.f(), x), expectation(game.g(), y),
                      expected_team_utility(game, x, y));
  };

  const auto z0 = start.flat();
  const OdeOutcome outcome =
      integrate_ode(rhs, z0, config, record, observer, clamp_unit);
  if (outcome.status == OdeStatus::kStepUnderflow) {
    throw IntegrationError("step size underflow at t = " +
                               std::to_string(outcome.t_end),
                           std::move(trajectory));
  }
  return trajectory;
}

SubsystemTrajectory integrate_subsystem(const BooleanFunction& f,
                                        const ProductDistribution& x0,
                                        const IntegratorConfig& config,
                                        Direction direction,
                                        double stop_rate) {
  if (x0.size() != static_cast<std::size_t>(f.arity())) {
    throw InputError("subsystem start has " + std::to_string(x0.size()) +
                     " coordinates, function arity is " +
                     std::to_string(f.arity()));
  }
  const double sign = direction == Direction::kForward ? 1.0 : -1.0;
  SubsystemTrajectory out;
  out.n = f.arity();
  out.direction = direction;

  const OdeRhs rhs = [&](std::span<const double> x, std::span<double> dx) {
    const auto v = subsystem_field(f, x);
    for (std::size_t i = 0; i < v.size(); ++i) dx[i] = sign * v[i];
  };
  const SampleObserver record = [&](double t, std::span<const double> x) {
    out.times.push_back(t);
    out.states.insert(out.states.end(), x.begin(), x.end());
    out.f.push_back(expectation(f, x));
    out.r.push_back(output_rate(f, x));
  };
  StepObserver stop;
  if (stop_rate > 0.0) {
    stop = [&](const DenseSegment& seg) {
      return output_rate(f, seg.y1()) >= stop_rate;
    };
  }
  const OdeOutcome outcome =
      integrate_ode(rhs, x0.marginals(), config, record, stop, clamp_unit);
  if (outcome.status == OdeStatus::kStepUnderflow) {
    throw IntegrationError("subsystem step size underflow at t = " +
                               std::to_string(outcome.t_end),
                           Trajectory(f.arity(), 0));
  }
  return out;
}

}  // namespace teamdyn

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

#include "teamdyn/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "teamdyn/errors.hpp"

namespace teamdyn {
namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kC2 = 1.0 / 5.0, kC3 = 3.0 / 10.0, kC4 = 4.0 / 5.0,
                 kC5 = 8.0 / 9.0;
constexpr double kA21 = 1.0 / 5.0;
constexpr double kA31 = 3.0 / 40.0, kA32 = 9.0 / 40.0;
constexpr double kA41 = 44.0 / 45.0, kA42 = -56.0 / 15.0, kA43 = 32.0 / 9.0;
constexpr double kA51 = 19372.0 / 6561.0, kA52 = -25360.0 / 2187.0,
                 kA53 = 64448.0 / 6561.0, kA54 = -212.0 / 729.0;
constexpr double kA61 = 9017.0 / 3168.0, kA62 = -355.0 / 33.0,
                 kA63 = 46732.0 / 5247.0, kA64 = 49.0 / 176.0,
                 kA65 = -5103.0 / 18656.0;
constexpr double kB1 = 35.0 / 384.0, kB3 = 500.0 / 1113.0, kB4 = 125.0 / 192.0,
                 kB5 = -2187.0 / 6784.0, kB6 = 11.0 / 84.0;
// 5th minus embedded 4th order weights.
constexpr double kE1 = 71.0 / 57600.0, kE3 = -71.0 / 16695.0,
                 kE4 = 71.0 / 1920.0, kE5 = -17253.0 / 339200.0,
                 kE6 = 22.0 / 525.0, kE7 = -1.0 / 40.0;

constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 5.0;

class Stepper {
 public:
  Stepper(const OdeRhs& rhs, std::size_t dim)
      : rhs_(rhs), tmp_(dim), k2_(dim), k3_(dim), k4_(dim), k5_(dim),
        k6_(dim), k7_(dim) {}

  // One Dormand-Prince step; k1 is the derivative at y (FSAL). Writes the
  // 5th-order solution to y_new, its derivative to dy_new, and returns the
  // scaled RMS error estimate.
  double dopri(std::span<const double> y, std::span<const double> k1,
               double h, const IntegratorConfig& cfg, std::span<double> y_new,
               std::span<double> dy_new) {
    const std::size_t n = y.size();
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + h * kA21 * k1[i];
    rhs_(tmp_, k2_);
    for (std::size_t i = 0; i < n; ++i)
      tmp_[i] = y[i] + h * (kA31 * k1[i] + kA32 * k2_[i]);
    rhs_(tmp_, k3_);
    for (std::size_t i = 0; i < n; ++i)
      tmp_[i] = y[i] + h * (kA41 * k1[i] + kA42 * k2_[i] + kA43 * k3_[i]);
    rhs_(tmp_, k4_);
    for (std::size_t i = 0; i < n; ++i)
      tmp_[i] = y[i] + h * (kA51 * k1[i] + kA52 * k2_[i] + kA53 * k3_[i] +
                            kA54 * k4_[i]);
    rhs_(tmp_, k5_);
    for (std::size_t i = 0; i < n; ++i)
      tmp_[i] = y[i] + h * (kA61 * k1[i] + kA62 * k2_[i] + kA63 * k3_[i] +
                            kA64 * k4_[i] + kA65 * k5_[i]);
    rhs_(tmp_, k6_);
    for (std::size_t i = 0; i < n; ++i)
      y_new[i] = y[i] + h * (kB1 * k1[i] + kB3 * k3_[i] + kB4 * k4_[i] +
                             kB5 * k5_[i] + kB6 * k6_[i]);
    rhs_(y_new, k7_);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double err = h * (kE1 * k1[i] + kE3 * k3_[i] + kE4 * k4_[i] +
                              kE5 * k5_[i] + kE6 * k6_[i] + kE7 * k7_[i]);
      const double scale =
          cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
      sum += (err / scale) * (err / scale);
    }
    std::copy(k7_.begin(), k7_.end(), dy_new.begin());
    return n == 0 ? 0.0 : std::sqrt(sum / static_cast<double>(n));
  }

  void rk4(std::span<const double> y, std::span<const double> k1, double h,
           std::span<double> y_new, std::span<double> dy_new) {
    const std::size_t n = y.size();
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + 0.5 * h * k1[i];
    rhs_(tmp_, k2_);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + 0.5 * h * k2_[i];
    rhs_(tmp_, k3_);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + h * k3_[i];
    rhs_(tmp_, k4_);
    for (std::size_t i = 0; i < n; ++i)
      y_new[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
    rhs_(y_new, dy_new);
  }

 private:
  const OdeRhs& rhs_;
  std::vector<double> tmp_, k2_, k3_, k4_, k5_, k6_, k7_;
};

}  // namespace

Method parse_method(std::string_view name) {
  if (name == "rk4") return Method::kRk4;
  if (name == "dopri45" || name == "dp45" || name == "rk45")
    return Method::kDormandPrince45;
  throw InputError("unknown integration method '" + std::string(name) + "'");
}

std::string_view method_name(Method method) {
  return method == Method::kRk4 ? "rk4" : "dopri45";
}

void IntegratorConfig::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(step)) throw InputError("integrator step must be > 0");
  if (!positive(abs_tol) || !positive(rel_tol))
    throw InputError("integrator tolerances must be > 0");
  if (!positive(max_time)) throw InputError("max_time must be > 0");
  if (!positive(sample_interval))
    throw InputError("sample_interval must be > 0");
  if (!positive(min_step)) throw InputError("min_step must be > 0");
}

void DenseSegment::eval(double t, std::span<double> out) const {
  const double h = t1_ - t0_;
  const double s = h > 0.0 ? (t - t0_) / h : 0.0;
  const double s2 = s * s, s3 = s2 * s;
  const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
  const double h10 = s3 - 2.0 * s2 + s;
  const double h01 = -2.0 * s3 + 3.0 * s2;
  const double h11 = s3 - s2;
  for (std::size_t i = 0; i < y0_.size(); ++i) {
    out[i] = h00 * y0_[i] + h10 * h * dy0_[i] + h01 * y1_[i] + h11 * h * dy1_[i];
  }
}

OdeOutcome integrate_ode(const OdeRhs& rhs, std::span<const double> y0,
                         const IntegratorConfig& config,
                         const SampleObserver& on_sample,
                         const StepObserver& on_step,
                         const Projection& project) {
  config.validate();
  const std::size_t dim = y0.size();
  Stepper stepper(rhs, dim);

  std::vector<double> y(y0.begin(), y0.end()), dy(dim);
  std::vector<double> y_new(dim), dy_new(dim);
  if (project) project(y);
  rhs(y, dy);

  OdeOutcome outcome;
  const double dt = config.sample_interval;
  const double t_max = config.max_time;
  long next_index = 1;
  auto target_time = [&](long k) { return std::min(k * dt, t_max); };

  double t = 0.0;
  if (on_sample) on_sample(t, y);
  double h = config.method == Method::kRk4 ? config.step
                                           : std::min(config.step, dt);

  while (t < t_max) {
    const double target = target_time(next_index);
    const double remaining = target - t;
    const bool truncated = h >= remaining;
    const double h_try = truncated ? remaining : h;

    double err = 0.0;
    if (config.method == Method::kRk4) {
      stepper.rk4(y, dy, h_try, y_new, dy_new);
    } else {
      err = stepper.dopri(y, dy, h_try, config, y_new, dy_new);
      if (!(err <= 1.0)) {
        ++outcome.rejected_steps;
        const double factor =
            std::isfinite(err)
                ? std::max(kMinFactor, kSafety * std::pow(err, -0.2))
                : kMinFactor;
        h = h_try * factor;
        if (h < config.min_step) {
          outcome.status = OdeStatus::kStepUnderflow;
          outcome.t_end = t;
          return outcome;
        }
        continue;
      }
    }

    const double t_new = truncated ? target : t + h_try;
    if (project && project(y_new)) rhs(y_new, dy_new);
    ++outcome.accepted_steps;

    bool keep_going = true;
    if (on_step) {
      keep_going = on_step(DenseSegment(t, t_new, y, y_new, dy, dy_new));
    }
    y.swap(y_new);
    dy.swap(dy_new);
    t = t_new;
    if (truncated) {
      if (on_sample) on_sample(t, y);
      ++next_index;
    }

    if (config.method == Method::kDormandPrince45) {
      const double factor =
          err == 0.0 ? kMaxFactor
                     : std::clamp(kSafety * std::pow(err, -0.2), kMinFactor,
                                  kMaxFactor);
      const double proposed = h_try * factor;
      h = truncated ? std::max(h, proposed) : proposed;
    }
    if (!keep_going) {
      outcome.status = OdeStatus::kStopped;
      outcome.t_end = t;
      return outcome;
    }
  }
  outcome.t_end = t;
  return outcome;
}

}  // namespace teamdyn

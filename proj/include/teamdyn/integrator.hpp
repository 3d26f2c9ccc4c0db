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

// Explicit Runge-Kutta integration of autonomous ODEs with sampling on a
// fixed time grid and cubic Hermite dense output between accepted steps.

#ifndef TEAMDYN_INTEGRATOR_HPP_
#define TEAMDYN_INTEGRATOR_HPP_

#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace teamdyn {

enum class Method {
  kRk4,              // classical fixed-step 4th order
  kDormandPrince45,  // embedded adaptive 5(4) pair
};

Method parse_method(std::string_view name);
std::string_view method_name(Method method);

struct IntegratorConfig {
  Method method = Method::kDormandPrince45;
  // Fixed step for kRk4; first trial step for kDormandPrince45.
  double step = 1e-3;
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  double max_time = 100.0;
  // Samples are recorded at exact multiples of this interval; steps are
  // shortened to land on them.
  double sample_interval = 0.01;
  // Adaptive steps below this are reported as underflow.
  double min_step = 1e-14;

  // Throws InputError on non-positive steps, tolerances or horizons.
  void validate() const;
};

// Cubic Hermite interpolant over one accepted step.
class DenseSegment {
 public:
  DenseSegment(double t0, double t1, std::span<const double> y0,
               std::span<const double> y1, std::span<const double> dy0,
               std::span<const double> dy1)
      : t0_(t0), t1_(t1), y0_(y0), y1_(y1), dy0_(dy0), dy1_(dy1) {}

  double t0() const { return t0_; }
  double t1() const { return t1_; }
  std::span<const double> y0() const { return y0_; }
  std::span<const double> y1() const { return y1_; }
  std::span<const double> dy0() const { return dy0_; }
  std::span<const double> dy1() const { return dy1_; }

  void eval(double t, std::span<double> out) const;

 private:
  double t0_, t1_;
  std::span<const double> y0_, y1_, dy0_, dy1_;
};

// dy/dt = rhs(y).
using OdeRhs = std::function<void(std::span<const double>, std::span<double>)>;
// Optional in-place projection applied to each accepted state; returns true
// when it changed the state.
using Projection = std::function<bool(std::span<double>)>;
// Called for every accepted step; returning false stops the integration.
using StepObserver = std::function<bool(const DenseSegment&)>;
using SampleObserver = std::function<void(double, std::span<const double>)>;

enum class OdeStatus { kCompleted, kStopped, kStepUnderflow };

struct OdeOutcome {
  OdeStatus status = OdeStatus::kCompleted;
  double t_end = 0.0;
  long accepted_steps = 0;
  long rejected_steps = 0;
};

// Integrates from t = 0 to config.max_time. `on_sample` sees t = 0, every
// k * sample_interval, and max_time.
OdeOutcome integrate_ode(const OdeRhs& rhs, std::span<const double> y0,
                         const IntegratorConfig& config,
                         const SampleObserver& on_sample,
                         const StepObserver& on_step = {},
                         const Projection& project = {});

}  // namespace teamdyn

#endif  // TEAMDYN_INTEGRATOR_HPP_

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

#include <algorithm>
#include <cmath>

#include "teamdyn/analysis.hpp"
#include "teamdyn/errors.hpp"

namespace teamdyn {
namespace {

double sup_distance(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d = std::max(d, std::abs(a[i] - b[i]));
  }
  return d;
}

}  // namespace

PeriodDetection detect_period(const TeamGame& game, const SystemState& start,
                              const IntegratorConfig& config,
                              const PeriodOptions& options) {
  const auto z0 = start.flat();
  if (classify_fixed_point(game, z0, options.fixed_point_tol).is_fixed) {
    throw InputError("period detection needs a non-fixed starting state");
  }
  const std::size_t n = static_cast<std::size_t>(game.n());
  const double p = game.nash_p();

  PeriodDetection result;
  std::vector<double> probe(z0.size());
  auto section = [&](std::span<const double> z) {
    return expectation(game.f(), z.first(n)) - p;
  };

  const SystemStepObserver observer = [&](const DenseSegment& seg) {
    const double s0 = section(seg.y0());
    const double s1 = section(seg.y1());
    if (!(s0 < 0.0 && s1 >= 0.0)) return true;

    // Bisection on the Hermite interpolant.
    double lo = seg.t0(), hi = seg.t1();
    while (hi - lo > options.time_tol) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      seg.eval(mid, probe);
      if (section(probe) < 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    const double t_cross = 0.5 * (lo + hi);
    seg.eval(t_cross, probe);
    result.crossings.push_back({t_cross, probe});

    const auto& crossings = result.crossings;
    const std::size_t k = crossings.size() - 1;
    // Consecutive crossings first; earlier ones cover orbits that meet the
    // section more than once per revolution.
    for (std::size_t j = k; j-- > 0;) {
      const double err = sup_distance(crossings[k].state, crossings[j].state);
      if (err <= options.return_tol) {
        result.estimate = PeriodEstimate{crossings[k].t - crossings[j].t, err,
                                         static_cast<int>(k + 1)};
        return false;
      }
    }
    return true;
  };

  result.trajectory = integrate(game, start, config, options.field, observer);
  return result;
}

}  // namespace teamdyn

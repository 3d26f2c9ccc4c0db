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
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "teamdyn/analysis.hpp"
#include "teamdyn/errors.hpp"

namespace teamdyn {
namespace {

double sup_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double e : v) m = std::max(m, std::abs(e));
  return m;
}

}  // namespace

double rate_slope(const BooleanFunction& f, std::span<const double> x) {
  const std::size_t n = x.size();
  const auto pairs = conditional_pairs(f, x);
  std::vector<double> d(n), v(n);
  double r = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = pairs[i].difference();
    v[i] = x[i] * (1.0 - x[i]) * d[i];
    r += v[i] * d[i];
  }
  if (r <= 0.0) return 0.0;
  double dr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double coupling = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i || v[k] == 0.0) continue;
      coupling += mixed_partial(f, x, static_cast<int>(i),
                                static_cast<int>(k)) * v[k];
    }
    dr += (1.0 - 2.0 * x[i]) * v[i] * d[i] * d[i] +
          2.0 * x[i] * (1.0 - x[i]) * d[i] * coupling;
  }
  return dr / r;
}

RateProfile::RateProfile(Team team, std::vector<RateKnot> knots)
    : team_(team), knots_(std::move(knots)) {
  if (knots_.size() < 2) {
    throw InputError("rate profile needs at least two knots");
  }
  for (std::size_t k = 0; k < knots_.size(); ++k) {
    if (!(knots_[k].rate > 0.0) || !std::isfinite(knots_[k].rate)) {
      throw InputError("rate profile knot " + std::to_string(k) +
                       " has non-positive rate");
    }
    if (k > 0 && !(knots_[k].z > knots_[k - 1].z)) {
      throw InputError("rate profile knots must be strictly increasing in z");
    }
  }
  // Fritsch-Carlson limiting of the supplied slopes.
  limited_.resize(knots_.size());
  for (std::size_t k = 0; k < knots_.size(); ++k) limited_[k] = knots_[k].slope;
  for (std::size_t k = 0; k + 1 < knots_.size(); ++k) {
    const double secant = (knots_[k + 1].rate - knots_[k].rate) /
                          (knots_[k + 1].z - knots_[k].z);
    if (secant == 0.0) {
      limited_[k] = limited_[k + 1] = 0.0;
      continue;
    }
    double a = limited_[k] / secant;
    double b = limited_[k + 1] / secant;
    if (a < 0.0) {
      limited_[k] = 0.0;
      a = 0.0;
    }
    if (b < 0.0) {
      limited_[k + 1] = 0.0;
      b = 0.0;
    }
    const double norm2 = a * a + b * b;
    if (norm2 > 9.0) {
      const double tau = 3.0 / std::sqrt(norm2);
      limited_[k] = tau * a * secant;
      limited_[k + 1] = tau * b * secant;
    }
  }
}

std::size_t RateProfile::interval(double z) const {
  if (!contains(z)) {
    throw DomainError("z = " + std::to_string(z) + " outside rate profile [" +
                      std::to_string(z_min()) + ", " +
                      std::to_string(z_max()) + "]");
  }
  const auto it = std::upper_bound(
      knots_.begin(), knots_.end(), z,
      [](double value, const RateKnot& knot) { return value < knot.z; });
  const std::size_t k = static_cast<std::size_t>(it - knots_.begin());
  return std::min(k == 0 ? 0 : k - 1, knots_.size() - 2);
}

double RateProfile::rate(double z) const {
  const std::size_t k = interval(z);
  const RateKnot& lo = knots_[k];
  const RateKnot& hi = knots_[k + 1];
  const double h = hi.z - lo.z;
  const double s = (z - lo.z) / h;
  const double s2 = s * s, s3 = s2 * s;
  return (2.0 * s3 - 3.0 * s2 + 1.0) * lo.rate +
         (s3 - 2.0 * s2 + s) * h * limited_[k] +
         (-2.0 * s3 + 3.0 * s2) * hi.rate + (s3 - s2) * h * limited_[k + 1];
}

RateProfile rate_profile(const BooleanFunction& f,
                         const ProductDistribution& x0,
                         const IntegratorConfig& config, Team team,
                         const RateProfileOptions& options) {
  if (x0.size() != static_cast<std::size_t>(f.arity())) {
    throw InputError("rate profile start has wrong dimension");
  }
  if (sup_norm(subsystem_field(f, x0)) <= options.fixed_point_tol) {
    throw InputError("rate profile start is a subsystem fixed point");
  }
  const auto forward = integrate_subsystem(f, x0, config, Direction::kForward,
                                           options.stop_rate);
  const auto backward = integrate_subsystem(f, x0, config, Direction::kBackward,
                                            options.stop_rate);

  std::vector<RateKnot> knots;
  knots.reserve(forward.size() + backward.size());
  auto push = [&](const SubsystemTrajectory& traj, std::size_t k) {
    const double z = traj.f[k];
    const double r = traj.r[k];
    if (!(r > 0.0)) return;
    if (!knots.empty() && !(z > knots.back().z)) return;
    knots.push_back({z, r, rate_slope(f, traj.state(k))});
  };
  for (std::size_t k = backward.size(); k-- > 1;) push(backward, k);
  for (std::size_t k = 0; k < forward.size(); ++k) push(forward, k);
  return RateProfile(team, std::move(knots));
}

OutputPotential::OutputPotential(RateProfile profile, double center,
                                 double tol)
    : profile_(std::move(profile)), center_(center), tol_(tol) {
  const auto& knots = profile_.knots();
  center_interval_ = profile_.interval(center_);
  cumulative_.assign(knots.size(), 0.0);
  const std::size_t c = center_interval_;
  cumulative_[c + 1] = piece(center_, knots[c + 1].z);
  for (std::size_t k = c + 1; k + 1 < knots.size(); ++k) {
    cumulative_[k + 1] = cumulative_[k] + piece(knots[k].z, knots[k + 1].z);
  }
  cumulative_[c] = -piece(knots[c].z, center_);
  for (std::size_t k = c; k > 0; --k) {
    cumulative_[k - 1] = cumulative_[k] - piece(knots[k - 1].z, knots[k].z);
  }
}

double OutputPotential::piece(double lo, double hi) const {
  if (hi <= lo) return 0.0;
  const auto integrand = [this](double s) {
    return (s - center_) / profile_.rate(s);
  };
  // Pieces never span more than one knot interval, where the integrand is a
  // smooth rational function; a shallow depth stops roundoff-driven
  // subdivision of pieces whose value is near zero.
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      integrand, lo, hi, 3, tol_);
}

double OutputPotential::operator()(double z) const {
  const std::size_t k = profile_.interval(z);
  const auto& knots = profile_.knots();
  if (k == center_interval_) {
    return z >= center_ ? piece(center_, z) : -piece(z, center_);
  }
  if (k > center_interval_) return cumulative_[k] + piece(knots[k].z, z);
  return cumulative_[k + 1] - piece(z, knots[k + 1].z);
}

Hamiltonian::Hamiltonian(RateProfile rate_a, RateProfile rate_b, double p,
                         double q, double tol)
    : a_(std::move(rate_a), p, tol), b_(std::move(rate_b), q, tol) {}

double hamiltonian(const RateProfile& rate_a, const RateProfile& rate_b,
                   double p, double q, double xi, double zeta) {
  return Hamiltonian(rate_a, rate_b, p, q)(xi, zeta);
}

double closed_form_H_single_gene(double p, double q, double xi, double zeta) {
  for (double v : {xi, zeta}) {
    if (!(v > 0.0 && v < 1.0)) {
      throw DomainError("closed-form H needs arguments in (0,1)");
    }
  }
  auto part = [](double center, double z) {
    return -center * std::log(z) - (1.0 - center) * std::log(1.0 - z) +
           center * std::log(center) + (1.0 - center) * std::log(1.0 - center);
  };
  return part(p, xi) + part(q, zeta);
}

DriftStats drift_along(const Trajectory& trajectory,
                       const std::function<double(double, double)>& h,
                       double horizon) {
  if (trajectory.empty()) throw InputError("empty trajectory");
  DriftStats stats;
  stats.initial = h(trajectory.f(0), trajectory.g(0));
  stats.min = stats.max = stats.initial;
  for (std::size_t k = 1; k < trajectory.size(); ++k) {
    if (trajectory.time(k) > horizon) break;
    const double v = h(trajectory.f(k), trajectory.g(k));
    stats.min = std::min(stats.min, v);
    stats.max = std::max(stats.max, v);
  }
  stats.drift = stats.max - stats.min;
  stats.relative = stats.drift / std::max(1.0, std::abs(stats.initial));
  return stats;
}

}  // namespace teamdyn

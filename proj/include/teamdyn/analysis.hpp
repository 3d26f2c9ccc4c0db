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

// Structural analyses of replicator trajectories: fixed-point taxonomy,
// period detection on the section {f = p, df/dt > 0}, the constant of motion
// of the reduced (f, g) system, time averages and correlated-equilibrium
// certification of empirical play.

#ifndef TEAMDYN_ANALYSIS_HPP_
#define TEAMDYN_ANALYSIS_HPP_

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "teamdyn/boolfn.hpp"
#include "teamdyn/dynamics.hpp"
#include "teamdyn/game.hpp"
#include "teamdyn/integrator.hpp"

namespace teamdyn {

inline constexpr double kFixedPointTol = 1e-9;

// ---------------------------------------------------------------------------
// Fixed points

enum class FixedPointKind : unsigned {
  kNash = 1u << 0,
  kStrange = 1u << 1,
  kPartialNash = 1u << 2,
  kPartialStrange = 1u << 3,
  kPure = 1u << 4,
};

std::string_view kind_name(FixedPointKind kind);

enum class Stability { kYes, kNo, kNotApplicable };

std::string_view stability_name(Stability s);

struct FixedPointReport {
  bool is_fixed = false;
  unsigned kinds = 0;
  // Combined over the teams whose state is a non-pure subsystem fixed point:
  // no if any of them fails the check, yes if all pass.
  Stability weakly_stable = Stability::kNotApplicable;
  Stability weakly_stable_a = Stability::kNotApplicable;
  Stability weakly_stable_b = Stability::kNotApplicable;
  double residual = 0.0;  // sup-norm of the rescaled field

  bool has(FixedPointKind k) const {
    return (kinds & static_cast<unsigned>(k)) != 0;
  }
  std::vector<std::string> kind_names() const;
};

// Full-support fixed points are tagged nash and/or strange; fixed points with
// some pure and some randomizing agents get the partial_* tags; fixed points
// without randomizing agents are pure.
FixedPointReport classify_fixed_point(const TeamGame& game,
                                      std::span<const double> z,
                                      double tol = kFixedPointTol);

// Weak stability of a subsystem fixed point: every randomizing agent stays
// indifferent when any other randomizing agent switches to either pure
// strategy. not_applicable for non-fixed or pure points.
Stability weakly_stable_check(const BooleanFunction& f,
                              std::span<const double> x,
                              double tol = kFixedPointTol);

// ---------------------------------------------------------------------------
// Periods

struct PeriodEstimate {
  double period = 0.0;
  double return_error = 0.0;  // sup-norm over all n+m coordinates
  int crossings_used = 0;
};

struct SectionCrossing {
  double t = 0.0;
  std::vector<double> state;
};

struct PeriodOptions {
  FieldKind field = FieldKind::kRescaled;
  double return_tol = 1e-6;
  double time_tol = 1e-12;
  double fixed_point_tol = kFixedPointTol;
};

struct PeriodDetection {
  std::optional<PeriodEstimate> estimate;  // empty: no period within max_time
  std::vector<SectionCrossing> crossings;
  Trajectory trajectory;  // integrated up to the confirming crossing
};

// Integrates until two consecutive upward crossings of f = p recur in the
// full state. Throws InputError when `start` is a fixed point.
PeriodDetection detect_period(const TeamGame& game, const SystemState& start,
                              const IntegratorConfig& config,
                              const PeriodOptions& options = {});

// ---------------------------------------------------------------------------
// Rate profiles and the constant of motion

// r as a function of the team output z along one subsystem orbit.
struct RateKnot {
  double z = 0.0;
  double rate = 0.0;
  double slope = 0.0;  // dr/dz
};

class RateProfile {
 public:
  // Knots must be strictly increasing in z with positive rates. Slopes are
  // limited so each cubic piece is monotone between its knots.
  RateProfile(Team team, std::vector<RateKnot> knots);

  Team team() const { return team_; }
  const std::vector<RateKnot>& knots() const { return knots_; }
  double z_min() const { return knots_.front().z; }
  double z_max() const { return knots_.back().z; }
  bool contains(double z) const { return z >= z_min() && z <= z_max(); }

  // Throws DomainError outside [z_min, z_max].
  double rate(double z) const;

  // Index k with knots[k].z <= z <= knots[k+1].z.
  std::size_t interval(double z) const;

 private:
  Team team_;
  std::vector<RateKnot> knots_;
  std::vector<double> limited_;  // limited slopes
};

// dr/dz at x along the forward subsystem orbit, where dz/dt = r.
double rate_slope(const BooleanFunction& f, std::span<const double> x);

struct RateProfileOptions {
  // Integration stops in each direction once r falls below this.
  double stop_rate = 1e-12;
  double fixed_point_tol = kFixedPointTol;
};

// Integrates the subsystem forward and backward from x0 and records (f, r).
// Throws InputError when x0 is a subsystem fixed point.
RateProfile rate_profile(const BooleanFunction& f,
                         const ProductDistribution& x0,
                         const IntegratorConfig& config, Team team = Team::kA,
                         const RateProfileOptions& options = {});

// z -> integral from `center` to z of (s - center) / r(s) ds, by adaptive
// Gauss-Kronrod quadrature on each cubic piece.
class OutputPotential {
 public:
  OutputPotential(RateProfile profile, double center, double tol = 1e-10);

  const RateProfile& profile() const { return profile_; }
  double center() const { return center_; }
  double operator()(double z) const;

 private:
  double piece(double lo, double hi) const;

  RateProfile profile_;
  double center_;
  double tol_;
  std::size_t center_interval_ = 0;
  // cumulative_[k] = integral from center to knot k; accumulated outward so
  // that every partial sum has a single sign.
  std::vector<double> cumulative_;
};

class Hamiltonian {
 public:
  Hamiltonian(RateProfile rate_a, RateProfile rate_b, double p, double q,
              double tol = 1e-10);
  double operator()(double xi, double zeta) const { return a_(xi) + b_(zeta); }

 private:
  OutputPotential a_;
  OutputPotential b_;
};

double hamiltonian(const RateProfile& rate_a, const RateProfile& rate_b,
                   double p, double q, double xi, double zeta);

// H for one-gene IDENTITY teams, where r(z) = z(1-z); zero at (p, q).
// Throws DomainError unless xi, zeta are in (0,1).
double closed_form_H_single_gene(double p, double q, double xi, double zeta);

struct DriftStats {
  double initial = 0.0;
  double min = 0.0;
  double max = 0.0;
  double drift = 0.0;     // max - min
  double relative = 0.0;  // drift / max(1, |initial|)
};

// Evaluates h(f(t), g(t)) over the samples with t <= horizon.
DriftStats drift_along(const Trajectory& trajectory,
                       const std::function<double(double, double)>& h,
                       double horizon = std::numeric_limits<double>::infinity());

// ---------------------------------------------------------------------------
// Time averages and empirical play

struct AgentAverages {
  Team team = Team::kA;
  int agent = 0;
  double u0 = 0.0;     // time average of u_i0
  double u1 = 0.0;     // time average of u_i1
  double u_hat = 0.0;  // time average of x_i u_i0 + (1 - x_i) u_i1
};

struct TimeAverages {
  double horizon = 0.0;
  double f_bar = 0.0;
  double g_bar = 0.0;
  double utility_bar = 0.0;  // team A
  std::vector<AgentAverages> agents;
  std::vector<double> profile;  // empty unless requested
};

// Trapezoidal time averages over [0, horizon]. With use_integer_periods the
// horizon is the largest multiple of `period` inside the trajectory;
// otherwise it is the full trajectory.
TimeAverages time_averages(const TeamGame& game, const Trajectory& trajectory,
                           bool use_integer_periods = false,
                           double period = 0.0, bool with_profile = false);

inline constexpr int kMaxProfileAgents = 16;

// pi(s, sigma): profile index packs s in the low n bits (gene 1 lowest) and
// sigma in the high m bits. Throws CapacityError when n + m > 16.
std::vector<double> empirical_profile_distribution(
    const TeamGame& game, const Trajectory& trajectory,
    double horizon = std::numeric_limits<double>::infinity());

// ---------------------------------------------------------------------------
// Correlated equilibria

struct CeConstraint {
  Team team = Team::kA;
  int agent = 0;
  int recommended = 0;
  int deviation = 0;
  double slack = 0.0;
};

struct CceConstraint {
  Team team = Team::kA;
  int agent = 0;
  int deviation = 0;
  double slack = 0.0;
};

struct CeCertificate {
  std::vector<CeConstraint> ce;
  std::vector<CceConstraint> cce;
  double min_ce_slack = 0.0;
  double min_cce_slack = 0.0;
  bool is_ce = false;
  bool is_cce = false;
};

// Every agent's payoff is its team's payoff. Throws InputError unless pi has
// 2^(n+m) nonnegative entries summing to 1 within 1e-9.
CeCertificate certify_correlated_equilibrium(const TeamGame& game,
                                             std::span<const double> pi,
                                             double tol);

}  // namespace teamdyn

#endif  // TEAMDYN_ANALYSIS_HPP_

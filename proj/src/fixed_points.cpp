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

std::vector<int> randomizing(std::span<const double> x, double tol) {
  std::vector<int> out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > tol && x[i] < 1.0 - tol) out.push_back(static_cast<int>(i));
  }
  return out;
}

// All randomizing agents unable to move the expected output.
bool stuck(const BooleanFunction& f, std::span<const double> x,
           const std::vector<int>& active, double tol) {
  if (active.empty()) return false;
  return std::all_of(active.begin(), active.end(), [&](int i) {
    return std::abs(conditional_pair(f, x, i).difference()) <= tol;
  });
}

double sup_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double e : v) m = std::max(m, std::abs(e));
  return m;
}

}  // namespace

std::string_view kind_name(FixedPointKind kind) {
  switch (kind) {
    case FixedPointKind::kNash: return "nash";
    case FixedPointKind::kStrange: return "strange";
    case FixedPointKind::kPartialNash: return "partial_nash";
    case FixedPointKind::kPartialStrange: return "partial_strange";
    case FixedPointKind::kPure: return "pure";
  }
  return "unknown";
}

std::string_view stability_name(Stability s) {
  switch (s) {
    case Stability::kYes: return "yes";
    case Stability::kNo: return "no";
    case Stability::kNotApplicable: return "not_applicable";
  }
  return "unknown";
}

std::vector<std::string> FixedPointReport::kind_names() const {
  std::vector<std::string> names;
  for (auto k : {FixedPointKind::kNash, FixedPointKind::kStrange,
                 FixedPointKind::kPartialNash, FixedPointKind::kPartialStrange,
                 FixedPointKind::kPure}) {
    if (has(k)) names.emplace_back(kind_name(k));
  }
  return names;
}

FixedPointReport classify_fixed_point(const TeamGame& game,
                                      std::span<const double> z, double tol) {
  FixedPointReport report;
  report.residual = sup_norm(evaluate_field(game, FieldKind::kRescaled, z));
  report.is_fixed = report.residual <= tol;
  if (!report.is_fixed) return report;

  const auto x = z.first(static_cast<std::size_t>(game.n()));
  const auto y = z.subspan(static_cast<std::size_t>(game.n()));
  const auto active_a = randomizing(x, tol);
  const auto active_b = randomizing(y, tol);
  const bool pure = active_a.empty() && active_b.empty();
  const bool full_support =
      active_a.size() == x.size() && active_b.size() == y.size();

  const bool nash_like =
      std::abs(expectation(game.f(), x) - game.nash_p()) <= tol &&
      std::abs(expectation(game.g(), y) - game.nash_q()) <= tol;
  const bool strange_like =
      stuck(game.f(), x, active_a, tol) || stuck(game.g(), y, active_b, tol);

  auto tag = [&](FixedPointKind k) {
    report.kinds |= static_cast<unsigned>(k);
  };
  if (pure) {
    tag(FixedPointKind::kPure);
  } else if (full_support) {
    if (nash_like) tag(FixedPointKind::kNash);
    if (strange_like) tag(FixedPointKind::kStrange);
  } else {
    if (nash_like) tag(FixedPointKind::kPartialNash);
    if (strange_like) tag(FixedPointKind::kPartialStrange);
  }

  // Weak stability only concerns teams sitting at a subsystem fixed point.
  report.weakly_stable_a = weakly_stable_check(game.f(), x, tol);
  report.weakly_stable_b = weakly_stable_check(game.g(), y, tol);
  const auto& sa = report.weakly_stable_a;
  const auto& sb = report.weakly_stable_b;
  if (sa == Stability::kNo || sb == Stability::kNo) {
    report.weakly_stable = Stability::kNo;
  } else if (sa == Stability::kYes || sb == Stability::kYes) {
    report.weakly_stable = Stability::kYes;
  }
  return report;
}

Stability weakly_stable_check(const BooleanFunction& f,
                              std::span<const double> x, double tol) {
  if (sup_norm(subsystem_field(f, x)) > tol) return Stability::kNotApplicable;
  const auto active = randomizing(x, tol);
  if (active.empty()) return Stability::kNotApplicable;

  for (int i : active) {
    if (std::abs(conditional_pair(f, x, i).difference()) > tol) {
      return Stability::kNo;
    }
  }
  std::vector<double> deviated(x.begin(), x.end());
  for (int j : active) {
    // Marginal 1 is pure allele 0, marginal 0 is pure allele 1.
    for (double pure : {1.0, 0.0}) {
      deviated[j] = pure;
      for (int i : active) {
        if (i == j) continue;
        if (std::abs(conditional_pair(f, deviated, i).difference()) > tol) {
          return Stability::kNo;
        }
      }
    }
    deviated[j] = x[j];
  }
  return Stability::kYes;
}

}  // namespace teamdyn

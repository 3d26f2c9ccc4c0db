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

#include "teamdyn_cli/verify.hpp"

#include <algorithm>
#include <cmath>

#include "teamdyn/boolfn.hpp"
#include "teamdyn/dynamics.hpp"
#include "teamdyn/errors.hpp"
#include "teamdyn/game.hpp"
#include "teamdyn/oracle.hpp"

namespace teamdyn::cli {
namespace {

BooleanFunction random_function(UniformStream& u, int arity) {
  std::vector<std::uint8_t> table(std::size_t{1} << arity);
  for (auto& v : table) v = u.next() < 0.5 ? 0 : 1;
  return BooleanFunction(arity, std::move(table));
}

// Valid by construction: the diagonal sits strictly above (or below) the
// off-diagonal.
PayoffKernel random_kernel(UniformStream& u) {
  const double lo = u.next(-2.0, 1.0);
  const double hi = lo + u.next(0.1, 2.0);
  const double a = hi + u.next(), d = hi + u.next();
  const double b = lo - u.next(), c = lo - u.next();
  if (u.next() < 0.5) return {a, b, c, d};
  return {b, a, d, c};
}

std::vector<double> random_marginals(UniformStream& u, int n, double lo, double hi) {
  std::vector<double> x(n);
  for (auto& v : x) v = u.next(lo, hi);
  return x;
}

class Tally {
 public:
  Tally(std::string name, double tol) { item_.name = std::move(name), item_.tolerance = tol; }
  void compare(double got, double want) {
    const double err = std::abs(got - want);
    ++item_.comparisons;
    if (!(err <= item_.tolerance)) ++item_.failures;
    if (std::isfinite(err)) item_.max_error = std::max(item_.max_error, err);
  }
  const VerifyItem& item() const { return item_; }

 private:
  VerifyItem item_;
};

}  // namespace

std::vector<VerifyItem> verify_suite(const VerifyOptions& options) {
  if (options.cases < 1) throw InputError("verify needs at least one case");
  if (options.max_agents < 2 || options.max_agents > oracle::kMaxOracleAgents) {
    throw InputError("verify max_agents must be in [2, " +
                     std::to_string(oracle::kMaxOracleAgents) + "]");
  }
  if (!(options.tol > 0.0)) throw InputError("verify tolerance must be positive");
  UniformStream u(options.seed);
  Tally proportional("field_proportionality", options.tol);
  Tally multilinear("multilinearity", options.tol);
  Tally gradient("gradient_finite_difference", options.gradient_tol);
  Tally expect("enumeration_expectation", options.tol);
  Tally pairs("enumeration_conditional_pairs", options.tol);
  Tally utilities("enumeration_conditional_utilities", options.tol);
  Tally team("enumeration_team_utility", options.tol);
  Tally field("enumeration_field", options.tol);

  for (int c = 0; c < options.cases; ++c) {
    const int n = u.integer(1, options.max_agents - 1);
    const int m = u.integer(1, options.max_agents - n);
    const TeamGame game(random_function(u, n), random_function(u, m), random_kernel(u));
    const auto x = random_marginals(u, n, 0.0, 1.0);
    const auto y = random_marginals(u, m, 0.0, 1.0);
    std::vector<double> z(x);
    z.insert(z.end(), y.begin(), y.end());

    auto rescaled = rescaled_field(game, x, y);
    if (options.inject_sign_flip) {
      for (auto& v : rescaled) v = -v;
    }
    const auto raw = raw_field(game, x, y);
    for (std::size_t k = 0; k < raw.size(); ++k) {
      proportional.compare(raw[k], game.alpha() * rescaled[k]);
    }
    const auto brute_rescaled = oracle::brute_field(game, FieldKind::kRescaled, z);
    const auto brute_raw = oracle::brute_field(game, FieldKind::kRaw, z);
    for (std::size_t k = 0; k < raw.size(); ++k) {
      field.compare(rescaled[k], brute_rescaled[k]);
      field.compare(raw[k], brute_raw[k]);
    }

    for (const auto* side : {&x, &y}) {
      const BooleanFunction& fn = side == &x ? game.f() : game.g();
      const double e = expectation(fn, *side);
      expect.compare(e, oracle::brute_expectation(fn, *side));
      for (int i = 0; i < fn.arity(); ++i) {
        const auto cp = conditional_pair(fn, *side, i);
        const auto bp = oracle::brute_conditional_pair(fn, *side, i);
        pairs.compare(cp.zero, bp.zero);
        pairs.compare(cp.one, bp.one);
        multilinear.compare(e, (*side)[i] * cp.zero + (1.0 - (*side)[i]) * cp.one);
      }
    }

    team.compare(expected_team_utility(game, x, y),
                 oracle::brute_expected_team_utility(game, x, y));
    for (Team t : {Team::kA, Team::kB}) {
      for (int a = 0; a < game.agents(t); ++a) {
        const auto mine = conditional_agent_utilities(game, x, y, t, a);
        const auto ref = oracle::brute_conditional_utilities(game, x, y, t, a);
        utilities.compare(mine.zero, ref.zero);
        utilities.compare(mine.one, ref.one);
      }
    }

    const auto xi = random_marginals(u, n, 0.05, 0.95);
    const auto fd = oracle::finite_difference_gradient(game.f(), xi, 1e-5);
    const auto cps = conditional_pairs(game.f(), xi);
    for (int i = 0; i < n; ++i) gradient.compare(cps[i].difference(), fd[i]);
  }
  return {proportional.item(), multilinear.item(), gradient.item(), expect.item(),
          pairs.item(),        utilities.item(),   team.item(),     field.item()};
}

CommandResult run_verify(const VerifyOptions& options,
                         const std::optional<std::filesystem::path>& out) {
  const auto items = verify_suite(options);
  CommandResult result;
  nlohmann::json list = nlohmann::json::array();
  for (const auto& item : items) {
    list.push_back({{"name", item.name},
                    {"comparisons", item.comparisons},
                    {"failures", item.failures},
                    {"max_error", item.max_error},
                    {"tolerance", item.tolerance},
                    {"pass", item.pass()}});
    result.checks.push_back({item.name, item.max_error, item.tolerance, true, item.pass()});
  }
  result.report = {{"seed", options.seed},
                   {"cases", options.cases},
                   {"max_agents", options.max_agents},
                   {"checks", list},
                   {"passed", result.passed()}};
  if (options.inject_sign_flip) result.report["injected"] = "sign_flip";
  result.exit_code = result.passed() ? kExitOk : kExitThreshold;
  if (out) {
    std::filesystem::create_directories(*out);
    write_json(*out / "verify.json", result.report);
  }
  return result;
}

}  // namespace teamdyn::cli

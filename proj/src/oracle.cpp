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

#include "teamdyn/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "teamdyn/errors.hpp"

namespace teamdyn::oracle {
namespace {

// Visits every assignment of `bits.size()` alleles in odometer order.
template <typename Visit>
void for_each_assignment(std::vector<std::uint8_t>& bits, Visit visit) {
  std::fill(bits.begin(), bits.end(), 0);
  while (true) {
    visit(bits);
    std::size_t i = 0;
    while (i < bits.size() && bits[i] == 1) bits[i++] = 0;
    if (i == bits.size()) return;
    bits[i] = 1;
  }
}

double allele_probability(double marginal, std::uint8_t allele) {
  return allele == 0 ? marginal : 1.0 - marginal;
}

double assignment_probability(std::span<const double> x,
                              const std::vector<std::uint8_t>& bits) {
  double p = 1.0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    p *= allele_probability(x[i], bits[i]);
  }
  return p;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw InputError(what);
}

void cap(int agents) {
  if (agents > kMaxOracleAgents) {
    throw CapacityError("oracle enumeration capped at " +
                        std::to_string(kMaxOracleAgents) + " genes");
  }
}

// Team A's payoff from the kernel, looked up from raw outputs.
double kernel_payoff(const PayoffKernel& k, bool out_a, bool out_b) {
  if (out_a && out_b) return k.a;
  if (out_a) return k.b;
  if (out_b) return k.c;
  return k.d;
}

}  // namespace

double brute_expectation(const BooleanFunction& f, std::span<const double> x) {
  cap(f.arity());
  require(x.size() == static_cast<std::size_t>(f.arity()),
          "oracle: marginal count does not match arity");
  std::vector<std::uint8_t> bits(x.size());
  double total = 0.0;
  for_each_assignment(bits, [&](const std::vector<std::uint8_t>& s) {
    if (f.eval(s)) total += assignment_probability(x, s);
  });
  return total;
}

ConditionalPair brute_conditional_pair(const BooleanFunction& f,
                                       std::span<const double> x, int gene) {
  cap(f.arity());
  require(x.size() == static_cast<std::size_t>(f.arity()),
          "oracle: marginal count does not match arity");
  require(gene >= 0 && gene < f.arity(), "oracle: gene index out of range");
  std::vector<std::uint8_t> bits(x.size());
  ConditionalPair out;
  for_each_assignment(bits, [&](const std::vector<std::uint8_t>& s) {
    double w = 1.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (static_cast<int>(k) != gene) w *= allele_probability(x[k], s[k]);
    }
    if (f.eval(s)) (s[gene] == 0 ? out.zero : out.one) += w;
  });
  return out;
}

double brute_expected_team_utility(const TeamGame& game,
                                   std::span<const double> x,
                                   std::span<const double> y) {
  cap(game.n() + game.m());
  require(x.size() == static_cast<std::size_t>(game.n()) &&
              y.size() == static_cast<std::size_t>(game.m()),
          "oracle: state dimension mismatch");
  std::vector<std::uint8_t> s(x.size()), sigma(y.size());
  double total = 0.0;
  for_each_assignment(s, [&](const std::vector<std::uint8_t>& sa) {
    const double pa = assignment_probability(x, sa);
    const bool out_a = game.f().eval(sa);
    for_each_assignment(sigma, [&](const std::vector<std::uint8_t>& sb) {
      total += kernel_payoff(game.kernel(), out_a, game.g().eval(sb)) * pa *
               assignment_probability(y, sb);
    });
  });
  return total;
}

ConditionalPair brute_conditional_utilities(const TeamGame& game,
                                            std::span<const double> x,
                                            std::span<const double> y,
                                            Team team, int agent) {
  cap(game.n() + game.m());
  require(x.size() == static_cast<std::size_t>(game.n()) &&
              y.size() == static_cast<std::size_t>(game.m()),
          "oracle: state dimension mismatch");
  require(agent >= 0 && agent < game.agents(team),
          "oracle: agent index out of range");
  std::vector<std::uint8_t> s(x.size()), sigma(y.size());
  ConditionalPair out;
  for_each_assignment(s, [&](const std::vector<std::uint8_t>& sa) {
    double pa = 1.0;
    for (std::size_t k = 0; k < sa.size(); ++k) {
      if (team == Team::kA && static_cast<int>(k) == agent) continue;
      pa *= allele_probability(x[k], sa[k]);
    }
    const bool out_a = game.f().eval(sa);
    for_each_assignment(sigma, [&](const std::vector<std::uint8_t>& sb) {
      double pb = 1.0;
      for (std::size_t k = 0; k < sb.size(); ++k) {
        if (team == Team::kB && static_cast<int>(k) == agent) continue;
        pb *= allele_probability(y[k], sb[k]);
      }
      const double u = kernel_payoff(game.kernel(), out_a, game.g().eval(sb));
      const std::uint8_t allele = team == Team::kA ? sa[agent] : sb[agent];
      const double signed_u = team == Team::kA ? u : -u;
      (allele == 0 ? out.zero : out.one) += signed_u * pa * pb;
    });
  });
  return out;
}

std::vector<double> brute_field(const TeamGame& game, FieldKind kind,
                                std::span<const double> z) {
  require(z.size() == static_cast<std::size_t>(game.n() + game.m()),
          "oracle: state dimension mismatch");
  const auto x = z.first(static_cast<std::size_t>(game.n()));
  const auto y = z.subspan(static_cast<std::size_t>(game.n()));
  const double scale = kind == FieldKind::kRaw ? 1.0 : 1.0 / game.kernel().alpha();
  std::vector<double> dz(z.size());
  for (int i = 0; i < game.n(); ++i) {
    const auto u = brute_conditional_utilities(game, x, y, Team::kA, i);
    dz[i] = scale * x[i] * (1.0 - x[i]) * (u.zero - u.one);
  }
  for (int j = 0; j < game.m(); ++j) {
    const auto v = brute_conditional_utilities(game, x, y, Team::kB, j);
    dz[game.n() + j] = scale * y[j] * (1.0 - y[j]) * (v.zero - v.one);
  }
  return dz;
}

std::vector<double> reference_integrate(const TeamGame& game,
                                        const SystemState& start, double T,
                                        double step, FieldKind kind) {
  require(step > 0.0 && T >= 0.0, "oracle: need step > 0 and T >= 0");
  std::vector<double> z = start.flat();
  const long steps = static_cast<long>(std::llround(T / step));
  const double h = steps > 0 ? T / static_cast<double>(steps) : 0.0;
  for (long k = 0; k < steps; ++k) {
    const auto dz = brute_field(game, kind, z);
    for (std::size_t i = 0; i < z.size(); ++i) {
      z[i] = std::clamp(z[i] + h * dz[i], 0.0, 1.0);
    }
  }
  return z;
}

std::vector<double> finite_difference_gradient(const BooleanFunction& f,
                                               std::span<const double> x,
                                               double h) {
  require(h > 0.0 && h <= 1e-3, "oracle: finite-difference step must be in (0, 1e-3]");
  for (double v : x) {
    require(v > 0.0 && v < 1.0, "oracle: finite differences need interior x");
  }
  std::vector<double> probe(x.begin(), x.end());
  std::vector<double> grad(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + h;
    const double up = brute_expectation(f, probe);
    probe[i] = x[i] - h;
    const double down = brute_expectation(f, probe);
    probe[i] = x[i];
    grad[i] = (up - down) / (2.0 * h);
  }
  return grad;
}

EnumerationOracle::EnumerationOracle(const TeamGame& game) : game_(game) {
  cap(game.n() + game.m());
}

}  // namespace teamdyn::oracle

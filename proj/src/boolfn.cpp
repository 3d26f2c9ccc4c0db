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

#include "teamdyn/boolfn.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "teamdyn/errors.hpp"

namespace teamdyn {
namespace {

void check_length(const BooleanFunction& f, std::size_t n) {
  if (n != static_cast<std::size_t>(f.arity())) {
    throw InputError("expected " + std::to_string(f.arity()) +
                     " marginals, got " + std::to_string(n));
  }
}

void check_gene(const BooleanFunction& f, int gene) {
  if (gene < 0 || gene >= f.arity()) {
    throw InputError("gene index " + std::to_string(gene) +
                     " out of range for arity " + std::to_string(f.arity()));
  }
}

// Sum of table entries weighted by the product measure. The weight table is
// grown one gene at a time so that index bit i always carries gene i.
double weighted_sum(const BooleanFunction& f, std::span<const double> x) {
  std::vector<double> weights(f.size());
  weights[0] = 1.0;
  std::size_t filled = 1;
  for (double xi : x) {
    for (std::size_t s = 0; s < filled; ++s) {
      const double w = weights[s];
      weights[s] = w * xi;
      weights[s + filled] = w * (1.0 - xi);
    }
    filled *= 2;
  }
  double total = 0.0;
  const auto& table = f.table();
  for (std::size_t s = 0; s < table.size(); ++s) {
    if (table[s]) total += weights[s];
  }
  return total;
}

}  // namespace

BooleanFunction::BooleanFunction(int arity, std::vector<std::uint8_t> table)
    : arity_(arity), table_(std::move(table)) {
  if (arity_ < 1 || arity_ > kMaxArity) {
    throw InputError("arity must be in [1, " + std::to_string(kMaxArity) +
                     "], got " + std::to_string(arity_));
  }
  if (table_.size() != (std::size_t{1} << arity_)) {
    throw InputError("truth table for arity " + std::to_string(arity_) +
                     " needs " + std::to_string(std::size_t{1} << arity_) +
                     " entries, got " + std::to_string(table_.size()));
  }
  if (std::any_of(table_.begin(), table_.end(),
                  [](std::uint8_t v) { return v > 1; })) {
    throw InputError("truth table entries must be 0 or 1");
  }
}

bool BooleanFunction::eval(std::span<const std::uint8_t> bits) const {
  if (bits.size() != static_cast<std::size_t>(arity_)) {
    throw InputError("assignment has " + std::to_string(bits.size()) +
                     " bits, function arity is " + std::to_string(arity_));
  }
  std::uint32_t index = 0;
  for (int i = 0; i < arity_; ++i) {
    if (bits[i] > 1) throw InputError("assignment bits must be 0 or 1");
    index |= static_cast<std::uint32_t>(bits[i]) << i;
  }
  return at(index);
}

std::string BooleanFunction::to_string() const {
  std::string out = std::to_string(arity_) + " ";
  out.reserve(out.size() + table_.size());
  for (auto v : table_) out.push_back(v ? '1' : '0');
  return out;
}

BooleanFunction BooleanFunction::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  int arity = 0;
  std::string bits;
  if (!(in >> arity >> bits)) {
    throw InputError("truth table must be '<arity> <bits>'");
  }
  std::string trailing;
  if (in >> trailing) {
    throw InputError("unexpected trailing content in truth table: '" +
                     trailing + "'");
  }
  if (arity < 1 || arity > kMaxArity) {
    throw InputError("arity must be in [1, " + std::to_string(kMaxArity) +
                     "], got " + std::to_string(arity));
  }
  std::vector<std::uint8_t> table;
  table.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw InputError(std::string("truth table character '") + c +
                       "' is not 0 or 1");
    }
    table.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return BooleanFunction(arity, std::move(table));
}

BooleanFunction BooleanFunction::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open truth table file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

void BooleanFunction::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write truth table file " + path.string());
  out << to_string() << '\n';
}

BooleanFunction make_builtin(Builtin kind, int arity) {
  if (arity < 1 || arity > BooleanFunction::kMaxArity) {
    throw InputError("arity must be in [1, " +
                     std::to_string(BooleanFunction::kMaxArity) + "]");
  }
  if (kind == Builtin::kMajority && arity % 2 == 0) {
    throw InputError("MAJORITY requires odd arity");
  }
  if (kind == Builtin::kIdentity && arity != 1) {
    throw InputError("IDENTITY requires arity 1");
  }
  const std::size_t size = std::size_t{1} << arity;
  std::vector<std::uint8_t> table(size);
  for (std::size_t s = 0; s < size; ++s) {
    const int ones = std::popcount(s);
    bool value = false;
    switch (kind) {
      case Builtin::kXor: value = ones % 2 == 1; break;
      case Builtin::kOr: value = ones > 0; break;
      case Builtin::kAnd: value = ones == arity; break;
      case Builtin::kMajority: value = 2 * ones > arity; break;
      case Builtin::kIdentity: value = s == 1; break;
    }
    table[s] = value ? 1 : 0;
  }
  return BooleanFunction(arity, std::move(table));
}

Builtin parse_builtin(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "xor") return Builtin::kXor;
  if (lower == "or") return Builtin::kOr;
  if (lower == "and") return Builtin::kAnd;
  if (lower == "majority" || lower == "maj") return Builtin::kMajority;
  if (lower == "identity" || lower == "id") return Builtin::kIdentity;
  throw InputError("unknown builtin function '" + std::string(name) + "'");
}

std::string_view builtin_name(Builtin kind) {
  switch (kind) {
    case Builtin::kXor: return "xor";
    case Builtin::kOr: return "or";
    case Builtin::kAnd: return "and";
    case Builtin::kMajority: return "majority";
    case Builtin::kIdentity: return "identity";
  }
  return "unknown";
}

ProductDistribution::ProductDistribution(std::vector<double> marginals)
    : marginals_(std::move(marginals)) {
  for (std::size_t i = 0; i < marginals_.size(); ++i) {
    const double v = marginals_[i];
    if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
      throw InputError("marginal " + std::to_string(i + 1) + " = " +
                       std::to_string(v) + " is outside [0,1]");
    }
  }
}

double expectation(const BooleanFunction& f, std::span<const double> x) {
  check_length(f, x.size());
  return weighted_sum(f, x);
}

ConditionalPair conditional_pair(const BooleanFunction& f,
                                 std::span<const double> x, int gene) {
  check_length(f, x.size());
  check_gene(f, gene);
  std::vector<double> clamped(x.begin(), x.end());
  ConditionalPair pair;
  clamped[gene] = 1.0;
  pair.zero = weighted_sum(f, clamped);
  clamped[gene] = 0.0;
  pair.one = weighted_sum(f, clamped);
  return pair;
}

std::vector<ConditionalPair> conditional_pairs(const BooleanFunction& f,
                                               std::span<const double> x) {
  check_length(f, x.size());
  std::vector<ConditionalPair> pairs;
  pairs.reserve(x.size());
  for (int i = 0; i < f.arity(); ++i) pairs.push_back(conditional_pair(f, x, i));
  return pairs;
}

double mixed_partial(const BooleanFunction& f, std::span<const double> x,
                     int gene_i, int gene_k) {
  check_length(f, x.size());
  check_gene(f, gene_i);
  check_gene(f, gene_k);
  if (gene_i == gene_k) return 0.0;
  std::vector<double> clamped(x.begin(), x.end());
  auto at = [&](double xi, double xk) {
    clamped[gene_i] = xi;
    clamped[gene_k] = xk;
    return weighted_sum(f, clamped);
  };
  // Allele 0 of a gene corresponds to marginal 1.
  return at(1.0, 1.0) - at(1.0, 0.0) - at(0.0, 1.0) + at(0.0, 0.0);
}

}  // namespace teamdyn

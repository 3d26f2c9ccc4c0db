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

#ifndef TEAMDYN_BOOLFN_HPP_
#define TEAMDYN_BOOLFN_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace teamdyn {

// Truth table of a phenotype map {0,1}^arity -> {0,1}.
//
// Index encoding: bit i of the table index is the allele of gene i + 1, so
// gene 1 is the least-significant bit. Allele 0 is the one whose population
// share is tracked as the marginal x_i.
class BooleanFunction {
 public:
  static constexpr int kMaxArity = 20;

  // Throws InputError unless 1 <= arity <= kMaxArity, table.size() == 2^arity
  // and every entry is 0 or 1.
  BooleanFunction(int arity, std::vector<std::uint8_t> table);

  int arity() const { return arity_; }
  std::size_t size() const { return table_.size(); }
  const std::vector<std::uint8_t>& table() const { return table_; }

  // Table lookup by packed index.
  bool at(std::uint32_t index) const { return table_[index] != 0; }

  // Evaluates on an explicit assignment; bits[i] is the allele of gene i + 1.
  bool eval(std::span<const std::uint8_t> bits) const;

  // One-line file form: "<arity> <2^arity chars of 0/1>".
  std::string to_string() const;
  static BooleanFunction parse(std::string_view text);
  static BooleanFunction load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

  friend bool operator==(const BooleanFunction&,
                         const BooleanFunction&) = default;

 private:
  int arity_;
  std::vector<std::uint8_t> table_;
};

enum class Builtin { kXor, kOr, kAnd, kMajority, kIdentity };

// MAJORITY needs odd arity; IDENTITY needs arity 1.
BooleanFunction make_builtin(Builtin kind, int arity);

// Accepts "xor", "or", "and", "majority"/"maj", "identity"/"id"
// (case-insensitive).
Builtin parse_builtin(std::string_view name);
std::string_view builtin_name(Builtin kind);

// One team's mixed state: marginals()[i] = probability that gene i + 1
// carries allele 0.
class ProductDistribution {
 public:
  ProductDistribution() = default;
  // Throws InputError if any coordinate is outside [0,1] or not finite.
  explicit ProductDistribution(std::vector<double> marginals);

  std::size_t size() const { return marginals_.size(); }
  double operator[](std::size_t i) const { return marginals_[i]; }
  const std::vector<double>& marginals() const { return marginals_; }
  operator std::span<const double>() const { return marginals_; }

  friend bool operator==(const ProductDistribution&,
                         const ProductDistribution&) = default;

 private:
  std::vector<double> marginals_;
};

// Expected outputs of f with gene i clamped to allele 0 (`zero`) and to
// allele 1 (`one`); the remaining genes are drawn from the marginals.
struct ConditionalPair {
  double zero = 0.0;
  double one = 0.0;

  // Partial derivative of the multilinear extension along x_i.
  double difference() const { return zero - one; }
};

// The functions below accept raw marginals so that integrator stages, which
// may sit a rounding error outside [0,1], can be evaluated. Only the length
// is checked.

// E_{s~x} f(s) by weighted enumeration of all 2^arity assignments.
double expectation(const BooleanFunction& f, std::span<const double> x);

// (f_{i0}, f_{i1}); `gene` is zero-based.
ConditionalPair conditional_pair(const BooleanFunction& f,
                                 std::span<const double> x, int gene);

// conditional_pair for every gene.
std::vector<ConditionalPair> conditional_pairs(const BooleanFunction& f,
                                               std::span<const double> x);

// d^2 E f / dx_i dx_k for i != k (zero when i == k, by multilinearity).
double mixed_partial(const BooleanFunction& f, std::span<const double> x,
                     int gene_i, int gene_k);

}  // namespace teamdyn

#endif  // TEAMDYN_BOOLFN_HPP_

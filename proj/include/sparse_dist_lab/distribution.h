// Copyright 2026 The Sparse Dist Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Discrete distributions over a finite domain and the primitives shared by
// every protocol: distances, sampling, target construction and the
// lower-bound packing family.
//
// Symbols are 0-indexed. Protocol code works over [k] = {0, ..., k-1}. The
// lower-bound routines work over [k] ∪ {0}, realized as a Distribution of
// length k+1 whose index 0 is the heavy symbol and whose index x+1 is symbol
// x of [k]. Callers state which domain they use.
//
// All logarithms in this library are natural logarithms.

#ifndef SPARSE_DIST_LAB_DISTRIBUTION_H_
#define SPARSE_DIST_LAB_DISTRIBUTION_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "sparse_dist_lab/channel.h"
#include "sparse_dist_lab/random_stream.h"

namespace sparse_dist_lab {

inline constexpr double kDistributionSumTolerance = 1e-9;

// Dense probability vector. Entries lie in [0, 1] and sum to 1 within
// kDistributionSumTolerance. Immutable after construction.
class Distribution {
 public:
  static absl::StatusOr<Distribution> Create(std::vector<double> probs);

  // Point mass at `symbol` over a domain of size `size`.
  static Distribution PointMass(int size, int symbol);
  static Distribution Uniform(int size);

  int size() const { return static_cast<int>(probs_.size()); }
  double operator[](int x) const { return probs_[x]; }
  std::span<const double> probs() const { return probs_; }

  // Number of strictly positive entries.
  int support_size() const;

 private:
  explicit Distribution(std::vector<double> probs) : probs_(std::move(probs)) {}

  std::vector<double> probs_;
};

// Scalar parameters of one protocol run. Exactly one of epsilon (LDP) or
// ell (communication) is set.
struct ProblemConfig {
  int k = 0;
  int s = 0;
  double alpha = 0.0;
  std::optional<double> epsilon;
  std::optional<int> ell;
  int64_t n = 0;
  uint64_t master_seed = 0;

  absl::Status Validate() const;
  // Validate() plus the packing precondition s <= k/100.
  absl::Status ValidateForLowerBound() const;
};

// Binary vector of length k with exactly s ones; indexes the packing family.
class PackingIndex {
 public:
  static absl::StatusOr<PackingIndex> Create(std::vector<uint8_t> bits,
                                             int sparsity);
  // Index whose ones sit at `support` (distinct symbols in [0, k)).
  static absl::StatusOr<PackingIndex> FromSupport(int k,
                                                  std::span<const int> support);

  int k() const { return static_cast<int>(bits_.size()); }
  int sparsity() const { return sparsity_; }
  bool bit(int x) const { return bits_[x] != 0; }

 private:
  PackingIndex(std::vector<uint8_t> bits, int sparsity)
      : bits_(std::move(bits)), sparsity_(sparsity) {}

  std::vector<uint8_t> bits_;
  int sparsity_;
};

// Total variation distance: half the l1 distance. The span overload accepts
// arbitrary real vectors (e.g. unprojected estimates).
absl::StatusOr<double> TvDistance(const Distribution& p, const Distribution& q);
absl::StatusOr<double> TvDistance(std::span<const double> p,
                                  std::span<const double> q);

// Chi-squared divergence sum_{x: q(x)>0} (p(x)-q(x))^2 / q(x). Fails when p
// puts mass where q has none, naming the offending index.
absl::StatusOr<double> ChiSquare(const Distribution& p, const Distribution& q);

// Inverse-CDF sampler over the support of a distribution.
class DiscreteSampler {
 public:
  explicit DiscreteSampler(const Distribution& p);

  int Sample(RandomStream& stream) const;

 private:
  std::vector<int> symbols_;
  std::vector<double> cumulative_;
};

// n i.i.d. draws from p. Deterministic given the stream state.
std::vector<int> SampleIid(const Distribution& p, int64_t n,
                           RandomStream& stream);

// Uniform over a uniformly random s-subset of [k].
absl::StatusOr<Distribution> MakeUniformSparse(int k, int s,
                                               RandomStream& stream);

// Hard instance p_z over [k] ∪ {0}: mass 1-8*alpha on index 0 and
// 8*alpha*z_x/s on index x+1. Requires 0 < 8*alpha < 1.
absl::StatusOr<Distribution> MakePackingDist(const PackingIndex& z,
                                             double alpha);

// Average of p_z over all z with s ones: 1-8*alpha on index 0 and 8*alpha/k
// elsewhere. Independent of s.
absl::StatusOr<Distribution> PackingMean(int k, double alpha);

// q(y) = sum_x W(y|x) p(x).
absl::StatusOr<Distribution> InducedOutputDist(const Channel& channel,
                                               const Distribution& p);

}  // namespace sparse_dist_lab

#endif  // SPARSE_DIST_LAB_DISTRIBUTION_H_

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

// One-bit Hadamard Response under epsilon-LDP.
//
// User i belongs to group j = i mod K and reports a single bit that is 1
// with probability e^eps/(e^eps+1) when its symbol lies in B_j (the rows
// where column j of H_K is +1) and 1/(e^eps+1) otherwise. The server forms
// the per-group fractions of ones s_hat and inverts
//
//   p_K = (e^eps+1) / (K (e^eps-1)) * H_K (2 s_hat - 1)
//
// with one fast Walsh-Hadamard transform, truncates to [k] and projects onto
// the simplex (dense) or the s-sparse simplex (sparse).

#ifndef SPARSE_DIST_LAB_HADAMARD_RESPONSE_H_
#define SPARSE_DIST_LAB_HADAMARD_RESPONSE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "sparse_dist_lab/channel.h"
#include "sparse_dist_lab/distribution.h"
#include "sparse_dist_lab/hadamard.h"
#include "sparse_dist_lab/random_stream.h"

namespace sparse_dist_lab {

struct HrMessage {
  int64_t user_index = 0;
  uint8_t bit = 0;
};

struct HrFractions {
  // Fraction of ones per group; 0 for empty groups.
  std::vector<double> s_hat;
  // Messages received per group.
  std::vector<int64_t> group_sizes;
  int64_t empty_groups = 0;
};

// Decode-time projection target, so one batch can be decoded both ways.
struct HrProjection {
  enum class Kind { kDense, kSparse };

  static HrProjection Dense() { return {Kind::kDense, 0}; }
  static HrProjection Sparse(int s) { return {Kind::kSparse, s}; }

  Kind kind;
  int sparsity;
};

inline int64_t HrGroup(int64_t user_index, const HadamardDim& dim) {
  return user_index % dim.size();
}

// P(bit = 1) for a symbol inside / outside the group's column set.
double HrOneProbability(bool in_column_set, double epsilon);

// Privatizes symbol x (in [0, K)) for user `user_index`.
HrMessage HrEncode(int x, int64_t user_index, double epsilon,
                   const HadamardDim& dim, RandomStream& stream);

// Encodes samples[i] as user i, each user drawing from its own substream
// RandomStream(encode_seed, i). The result does not depend on how the loop
// is scheduled.
std::vector<HrMessage> HrEncodeBatch(std::span<const int> samples,
                                     double epsilon, const HadamardDim& dim,
                                     uint64_t encode_seed);

// Per-group fractions of ones. User indices must be distinct and lie in
// [0, n); n < K is rejected because some group would have no users.
absl::StatusOr<HrFractions> HrAggregate(std::span<const HrMessage> messages,
                                        int64_t n, const HadamardDim& dim);

// The unprojected estimate: the first k entries of the inverted transform.
absl::StatusOr<std::vector<double>> HrIntermediateEstimate(
    const HrFractions& fractions, double epsilon, int k);

absl::StatusOr<Distribution> HrDecode(const HrFractions& fractions,
                                      double epsilon, int k,
                                      HrProjection projection);

// The per-user channel of group j as an explicit k x 2 matrix; column 1 is
// the probability of sending a one.
absl::StatusOr<Channel> HrChannelMatrix(double epsilon, const HadamardDim& dim,
                                        int64_t group, int k);

}  // namespace sparse_dist_lab

#endif  // SPARSE_DIST_LAB_HADAMARD_RESPONSE_H_

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

// Two-stage sparse estimation on top of basic RAPPOR (one-hot encoding with
// independent bit flips). Each user sends k bits.

#ifndef SPARSE_DIST_LAB_RAPPOR_H_
#define SPARSE_DIST_LAB_RAPPOR_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "sparse_dist_lab/channel.h"
#include "sparse_dist_lab/random_stream.h"
#include "sparse_dist_lab/two_stage.h"

namespace sparse_dist_lab {

// k-bit report, packed 64 bits per word (bit x lives in word x/64 at
// position x%64).
class RapporMessage {
 public:
  explicit RapporMessage(int k) : k_(k), words_((k + 63) / 64, 0) {}

  int k() const { return k_; }
  bool bit(int x) const { return (words_[x >> 6] >> (x & 63)) & 1; }
  void set_bit(int x, bool value) {
    const uint64_t mask = uint64_t{1} << (x & 63);
    words_[x >> 6] = value ? (words_[x >> 6] | mask) : (words_[x >> 6] & ~mask);
  }
  int weight() const;

 private:
  int k_;
  std::vector<uint64_t> words_;
};

// 1 / (e^{eps/2} + 1). Two one-hot inputs differ in exactly two bits, so
// the likelihood ratio of any report is at most ((1-q)/q)^2 = e^eps.
double RapporFlipProbability(double epsilon);

// Debiasing constants: E[bit x] = gamma p(x) + beta with beta = q and
// gamma = 1 - 2q for the flip probability q above.
double RapporBeta(double epsilon);
double RapporGamma(double epsilon);

RapporMessage RapporEncode(int x, double epsilon, int k, RandomStream& stream);

// samples[i] is encoded with RandomStream(encode_seed, i).
std::vector<RapporMessage> RapporEncodeBatch(std::span<const int> samples,
                                             double epsilon, int k,
                                             uint64_t encode_seed);

// Per-symbol sums of the reported bits.
std::vector<int64_t> RapporColumnSums(std::span<const RapporMessage> messages,
                                      int k);

// Candidate set T = top 2s symbols of the first half's column sums; the
// second half gives unbiased per-coordinate estimates on T, which are then
// projected onto the simplex over T. Requires s <= k/2.
absl::StatusOr<TwoStageEstimate> RapporEstimate(
    std::span<const RapporMessage> first_half,
    std::span<const RapporMessage> second_half, int k, int s, double epsilon);

// The full channel over `num_inputs` symbols and all 2^num_inputs reports
// (report y has bit x equal to (y >> x) & 1). num_inputs must be <= 20.
absl::StatusOr<Channel> RapporChannelMatrix(double epsilon, int num_inputs);

}  // namespace sparse_dist_lab

#endif  // SPARSE_DIST_LAB_RAPPOR_H_

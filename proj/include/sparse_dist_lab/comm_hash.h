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

// Public-coin l-bit protocol. User i holds an independent random hash
// h_i : [k] -> [2^l] derived from the shared public seed and sends
// h_i(X_i). A symbol x lies in the preimage of user i's message with
// probability b(x) = p(x)(1 - 2^-l) + 2^-l. The server ranks symbols by
// preimage counts M(x) over the first half of users, keeps the top 2s, and
// inverts b on the second half's counts N(x):
//
//   p_hat(x) = (2^l N(x) / (n/2) - 1) / (2^l - 1)   for x in T.
//
// Hash realization (bit-exact, so runs replay across implementations):
//
//   user_key(i) = Mix64(public_seed ^ (i * 0x9e3779b97f4a7c15))
//   h_i(x)      = Mix64(user_key(i) + (x + 1) * 0xd1b54a32d192ed03)
//                 & (2^l - 1)
//
// with Mix64 the SplitMix64 finalizer from random_stream.h and all
// arithmetic modulo 2^64.

#ifndef SPARSE_DIST_LAB_COMM_HASH_H_
#define SPARSE_DIST_LAB_COMM_HASH_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "sparse_dist_lab/distribution.h"
#include "sparse_dist_lab/random_stream.h"
#include "sparse_dist_lab/two_stage.h"

namespace sparse_dist_lab {

inline constexpr int kMaxMessageBits = 30;

class HashScheme {
 public:
  // `ell` is the bit budget. The scheme sends min(ell, ceil(log2 s) + 1)
  // bits, since more bits than that do not improve the guarantee.
  static absl::StatusOr<HashScheme> Create(uint64_t public_seed, int ell,
                                           int k, int s);

  uint64_t public_seed() const { return public_seed_; }
  int raw_ell() const { return raw_ell_; }
  // Bits actually sent per user.
  int ell() const { return ell_; }
  int k() const { return k_; }
  int sparsity() const { return sparsity_; }
  uint32_t mask() const { return (uint32_t{1} << ell_) - 1; }

 private:
  HashScheme(uint64_t public_seed, int raw_ell, int ell, int k, int sparsity)
      : public_seed_(public_seed),
        raw_ell_(raw_ell),
        ell_(ell),
        k_(k),
        sparsity_(sparsity) {}

  uint64_t public_seed_;
  int raw_ell_;
  int ell_;
  int k_;
  int sparsity_;
};

// min(ell, ceil(log2 s) + 1).
int EffectiveEll(int ell, int s);

inline constexpr uint64_t kHashSymbolMultiplier = 0xd1b54a32d192ed03ULL;

inline uint64_t UserHashKey(uint64_t public_seed, int64_t user_index) {
  return Mix64(public_seed ^ (static_cast<uint64_t>(user_index) * kGoldenGamma));
}

inline uint32_t HashWithKey(uint64_t user_key, int x, uint32_t mask) {
  return static_cast<uint32_t>(
             Mix64(user_key + (static_cast<uint64_t>(x) + 1) *
                                  kHashSymbolMultiplier)) &
         mask;
}

// h_{user_index}(x).
uint32_t HashEval(const HashScheme& scheme, int64_t user_index, int x);

struct CommMessage {
  int64_t user_index = 0;
  uint32_t value = 0;
};

CommMessage CommEncode(int x, int64_t user_index, const HashScheme& scheme);

// Encodes samples[i] as user first_user_index + i.
std::vector<CommMessage> CommEncodeBatch(std::span<const int> samples,
                                         const HashScheme& scheme,
                                         int64_t first_user_index = 0);

// Probability that a symbol of mass p_x lies in a message's preimage.
double BOf(double p_x, int ell);

// For every x in [k], the number of messages whose preimage contains x.
// Direct O(messages * k) scan.
std::vector<int64_t> PreimageCounts(std::span<const CommMessage> messages,
                                    const HashScheme& scheme);

// Two-stage decode. T has min(2s, k) symbols.
absl::StatusOr<TwoStageEstimate> CommDecode(
    std::span<const CommMessage> first_half,
    std::span<const CommMessage> second_half, const HashScheme& scheme);

// Decode from preimage counts, e.g. produced by SimulateIdealPreimageCounts.
absl::StatusOr<TwoStageEstimate> CommDecodeFromCounts(
    std::span<const int64_t> first_counts,
    std::span<const int64_t> second_counts, int64_t second_total,
    const HashScheme& scheme);

// Draws the preimage-count vector of `num_messages` users under ideal
// (fully random) hashes. Given symbol counts c ~ Multinomial(m, p), the
// indicators [h_i(x) = Y_i] for x != X_i are independent Bernoulli(2^-l),
// so M(x) = c(x) + Binomial(m - c(x), 2^-l) independently across x. This is
// the exact law the hashed protocol approximates, at O(k) cost instead of
// O(m k); it lets the guarantee be checked at sample sizes where simulating
// every user is infeasible.
std::vector<int64_t> SimulateIdealPreimageCounts(const Distribution& p,
                                                 int64_t num_messages, int ell,
                                                 RandomStream& stream);

// Packs message values into ell-bit fields, little-endian: bit b of
// message j lands at stream bit j*ell + b, and stream bit t lives in byte
// t/8 at position t%8.
std::vector<uint8_t> PackMessageValues(std::span<const CommMessage> messages,
                                       int ell);
absl::StatusOr<std::vector<uint32_t>> UnpackMessageValues(
    std::span<const uint8_t> bytes, int ell, size_t count);

}  // namespace sparse_dist_lab

#endif  // SPARSE_DIST_LAB_COMM_HASH_H_

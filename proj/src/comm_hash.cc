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

#include "sparse_dist_lab/comm_hash.h"

#include <algorithm>
#include <utility>
#include <bit>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "boost/random/binomial_distribution.hpp"

namespace sparse_dist_lab {

int EffectiveEll(int ell, int s) {
  const int log_s = std::bit_width(static_cast<unsigned>(std::max(s, 1)) - 1);
  return std::min(ell, log_s + 1);
}

absl::StatusOr<HashScheme> HashScheme::Create(uint64_t public_seed, int ell,
                                              int k, int s) {
  if (ell < 1 || ell > kMaxMessageBits) {
    return absl::InvalidArgumentError(
        absl::StrCat("ell = ", ell, " outside [1, ", kMaxMessageBits, "]"));
  }
  if (k < 1) return absl::InvalidArgumentError("k must be positive");
  if (s < 1 || s > k) {
    return absl::InvalidArgumentError(
        absl::StrCat("sparsity ", s, " outside [1, ", k, "]"));
  }
  return HashScheme(public_seed, ell, EffectiveEll(ell, s), k, s);
}

uint32_t HashEval(const HashScheme& scheme, int64_t user_index, int x) {
  return HashWithKey(UserHashKey(scheme.public_seed(), user_index), x,
                     scheme.mask());
}

CommMessage CommEncode(int x, int64_t user_index, const HashScheme& scheme) {
  return {user_index, HashEval(scheme, user_index, x)};
}

std::vector<CommMessage> CommEncodeBatch(std::span<const int> samples,
                                         const HashScheme& scheme,
                                         int64_t first_user_index) {
  std::vector<CommMessage> messages(samples.size());
  for (size_t i = 0; i < samples.size(); ++i) {
    messages[i] = CommEncode(samples[i],
                             first_user_index + static_cast<int64_t>(i), scheme);
  }
  return messages;
}

double BOf(double p_x, int ell) {
  const double base = std::ldexp(1.0, -ell);
  return p_x * (1.0 - base) + base;
}

std::vector<int64_t> PreimageCounts(std::span<const CommMessage> messages,
                                    const HashScheme& scheme) {
  const int k = scheme.k();
  const uint32_t mask = scheme.mask();
  // 32-bit partial counts keep the inner loop narrow enough to vectorize;
  // they are flushed well before they could overflow.
  constexpr size_t kFlushEvery = size_t{1} << 30;
  std::vector<int64_t> counts(k, 0);
  std::vector<uint32_t> partial(k, 0);
  size_t pending = 0;
  for (const CommMessage& m : messages) {
    const uint64_t key = UserHashKey(scheme.public_seed(), m.user_index);
    const uint32_t value = m.value;
    uint32_t* out = partial.data();
    for (int x = 0; x < k; ++x) {
      out[x] += HashWithKey(key, x, mask) == value;
    }
    if (++pending == kFlushEvery) {
      for (int x = 0; x < k; ++x) counts[x] += std::exchange(partial[x], 0);
      pending = 0;
    }
  }
  for (int x = 0; x < k; ++x) counts[x] += partial[x];
  return counts;
}

absl::StatusOr<TwoStageEstimate> CommDecodeFromCounts(
    std::span<const int64_t> first_counts,
    std::span<const int64_t> second_counts, int64_t second_total,
    const HashScheme& scheme) {
  if (static_cast<int>(first_counts.size()) != scheme.k()) {
    return absl::InvalidArgumentError("count vector does not match k");
  }
  const double beta = std::ldexp(1.0, -scheme.ell());
  const int set_size = std::min(2 * scheme.sparsity(), scheme.k());
  return TwoStageDecode(first_counts, second_counts, second_total, beta,
                        1.0 - beta, set_size);
}

absl::StatusOr<TwoStageEstimate> CommDecode(
    std::span<const CommMessage> first_half,
    std::span<const CommMessage> second_half, const HashScheme& scheme) {
  if (first_half.empty() || second_half.empty()) {
    return absl::InvalidArgumentError("both halves must be nonempty");
  }
  const std::vector<int64_t> first = PreimageCounts(first_half, scheme);
  const std::vector<int64_t> second = PreimageCounts(second_half, scheme);
  return CommDecodeFromCounts(first, second,
                              static_cast<int64_t>(second_half.size()), scheme);
}

std::vector<int64_t> SimulateIdealPreimageCounts(const Distribution& p,
                                                 int64_t num_messages, int ell,
                                                 RandomStream& stream) {
  const int k = p.size();
  const double collision = std::ldexp(1.0, -ell);
  std::vector<int64_t> counts(k, 0);

  // Multinomial symbol counts via sequential conditional binomials.
  int64_t remaining = num_messages;
  double remaining_mass = 1.0;
  for (int x = 0; x < k && remaining > 0; ++x) {
    if (p[x] <= 0.0) continue;
    const double share = std::clamp(p[x] / remaining_mass, 0.0, 1.0);
    int64_t c = remaining;
    if (share < 1.0) {
      boost::random::binomial_distribution<int64_t, double> draw(remaining,
                                                                 share);
      c = draw(stream);
    }
    counts[x] = c;
    remaining -= c;
    remaining_mass -= p[x];
  }
  // Leftover from rounding in remaining_mass goes to the last support symbol.
  if (remaining > 0) {
    for (int x = k - 1; x >= 0; --x) {
      if (p[x] > 0.0) {
        counts[x] += remaining;
        break;
      }
    }
  }

  for (int x = 0; x < k; ++x) {
    const int64_t others = num_messages - counts[x];
    if (others > 0) {
      boost::random::binomial_distribution<int64_t, double> draw(others,
                                                                 collision);
      counts[x] += draw(stream);
    }
  }
  return counts;
}

std::vector<uint8_t> PackMessageValues(std::span<const CommMessage> messages,
                                       int ell) {
  const size_t total_bits = messages.size() * static_cast<size_t>(ell);
  std::vector<uint8_t> bytes((total_bits + 7) / 8, 0);
  size_t bit = 0;
  for (const CommMessage& m : messages) {
    for (int b = 0; b < ell; ++b, ++bit) {
      if ((m.value >> b) & 1) bytes[bit / 8] |= uint8_t(1u << (bit % 8));
    }
  }
  return bytes;
}

absl::StatusOr<std::vector<uint32_t>> UnpackMessageValues(
    std::span<const uint8_t> bytes, int ell, size_t count) {
  if (ell < 1 || ell > kMaxMessageBits) {
    return absl::InvalidArgumentError(absl::StrCat("ell = ", ell));
  }
  const size_t total_bits = count * static_cast<size_t>(ell);
  if (bytes.size() != (total_bits + 7) / 8) {
    return absl::InvalidArgumentError(absl::StrCat(
        "expected ", (total_bits + 7) / 8, " bytes, got ", bytes.size()));
  }
  std::vector<uint32_t> values(count, 0);
  size_t bit = 0;
  for (size_t j = 0; j < count; ++j) {
    for (int b = 0; b < ell; ++b, ++bit) {
      if ((bytes[bit / 8] >> (bit % 8)) & 1) values[j] |= uint32_t{1} << b;
    }
  }
  return values;
}

}  // namespace sparse_dist_lab

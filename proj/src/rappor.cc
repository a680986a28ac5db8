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

#include "sparse_dist_lab/rappor.h"

#include <bit>
#include <cmath>

#include "absl/strings/str_cat.h"

namespace sparse_dist_lab {

int RapporMessage::weight() const {
  int total = 0;
  for (uint64_t w : words_) total += std::popcount(w);
  return total;
}

double RapporFlipProbability(double epsilon) {
  return 1.0 / (std::exp(epsilon / 2.0) + 1.0);
}

double RapporBeta(double epsilon) { return RapporFlipProbability(epsilon); }

double RapporGamma(double epsilon) {
  return 1.0 - 2.0 * RapporFlipProbability(epsilon);
}

RapporMessage RapporEncode(int x, double epsilon, int k, RandomStream& stream) {
  const double flip = RapporFlipProbability(epsilon);
  RapporMessage message(k);
  for (int bit = 0; bit < k; ++bit) {
    const bool one_hot = bit == x;
    message.set_bit(bit, stream.Bernoulli(flip) ? !one_hot : one_hot);
  }
  return message;
}

std::vector<RapporMessage> RapporEncodeBatch(std::span<const int> samples,
                                             double epsilon, int k,
                                             uint64_t encode_seed) {
  std::vector<RapporMessage> messages;
  messages.reserve(samples.size());
  for (size_t i = 0; i < samples.size(); ++i) {
    RandomStream user_stream(encode_seed, i);
    messages.push_back(RapporEncode(samples[i], epsilon, k, user_stream));
  }
  return messages;
}

std::vector<int64_t> RapporColumnSums(std::span<const RapporMessage> messages,
                                      int k) {
  std::vector<int64_t> sums(k, 0);
  for (const RapporMessage& m : messages) {
    for (int x = 0; x < k; ++x) sums[x] += m.bit(x);
  }
  return sums;
}

absl::StatusOr<TwoStageEstimate> RapporEstimate(
    std::span<const RapporMessage> first_half,
    std::span<const RapporMessage> second_half, int k, int s, double epsilon) {
  if (first_half.empty() || second_half.empty()) {
    return absl::InvalidArgumentError("both halves must be nonempty");
  }
  if (s < 1 || 2 * s > k) {
    return absl::InvalidArgumentError(absl::StrCat(
        "candidate set of 2s = ", 2 * s, " symbols needs s in [1, k/2]"));
  }
  if (!(epsilon > 0.0)) return absl::InvalidArgumentError("epsilon must be positive");
  for (const auto* half : {&first_half, &second_half}) {
    for (const RapporMessage& m : *half) {
      if (m.k() != k) {
        return absl::InvalidArgumentError(
            absl::StrCat("report of length ", m.k(), " for domain ", k));
      }
    }
  }
  const std::vector<int64_t> first = RapporColumnSums(first_half, k);
  const std::vector<int64_t> second = RapporColumnSums(second_half, k);
  return TwoStageDecode(first, second, static_cast<int64_t>(second_half.size()),
                        RapporBeta(epsilon), RapporGamma(epsilon), 2 * s);
}

absl::StatusOr<Channel> RapporChannelMatrix(double epsilon, int num_inputs) {
  if (num_inputs < 1 || num_inputs > 20) {
    return absl::InvalidArgumentError(
        absl::StrCat("cannot enumerate 2^", num_inputs, " reports"));
  }
  const double q = RapporFlipProbability(epsilon);
  const size_t num_outputs = size_t{1} << num_inputs;
  std::vector<double> entries(num_inputs * num_outputs);
  for (int x = 0; x < num_inputs; ++x) {
    const uint64_t one_hot = uint64_t{1} << x;
    for (size_t y = 0; y < num_outputs; ++y) {
      const int flips = std::popcount(one_hot ^ y);
      entries[x * num_outputs + y] =
          std::pow(q, flips) * std::pow(1.0 - q, num_inputs - flips);
    }
  }
  return Channel::Create(num_inputs, num_outputs, std::move(entries));
}

}  // namespace sparse_dist_lab

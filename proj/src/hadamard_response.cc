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

#include "sparse_dist_lab/hadamard_response.h"

#include <cmath>

#include "absl/strings/str_cat.h"
#include "sparse_dist_lab/projection.h"

namespace sparse_dist_lab {

double HrOneProbability(bool in_column_set, double epsilon) {
  const double e = std::exp(epsilon);
  return in_column_set ? e / (e + 1.0) : 1.0 / (e + 1.0);
}

HrMessage HrEncode(int x, int64_t user_index, double epsilon,
                   const HadamardDim& dim, RandomStream& stream) {
  const int64_t group = HrGroup(user_index, dim);
  const bool in_set = HadamardSign(static_cast<uint64_t>(x),
                                   static_cast<uint64_t>(group)) == 1;
  const bool bit = stream.Bernoulli(HrOneProbability(in_set, epsilon));
  return {user_index, static_cast<uint8_t>(bit)};
}

std::vector<HrMessage> HrEncodeBatch(std::span<const int> samples,
                                     double epsilon, const HadamardDim& dim,
                                     uint64_t encode_seed) {
  std::vector<HrMessage> messages(samples.size());
  for (size_t i = 0; i < samples.size(); ++i) {
    RandomStream user_stream(encode_seed, i);
    messages[i] = HrEncode(samples[i], static_cast<int64_t>(i), epsilon, dim,
                           user_stream);
  }
  return messages;
}

absl::StatusOr<HrFractions> HrAggregate(std::span<const HrMessage> messages,
                                        int64_t n, const HadamardDim& dim) {
  if (n < dim.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "n = ", n, " users cannot fill K = ", dim.size(), " groups"));
  }
  const int64_t num_groups = dim.size();
  std::vector<int64_t> ones(num_groups, 0);
  HrFractions fractions;
  fractions.group_sizes.assign(num_groups, 0);
  std::vector<bool> seen(n, false);
  for (const HrMessage& m : messages) {
    if (m.user_index < 0 || m.user_index >= n) {
      return absl::OutOfRangeError(
          absl::StrCat("user index ", m.user_index, " outside [0, ", n, ")"));
    }
    if (seen[m.user_index]) {
      return absl::InvalidArgumentError(
          absl::StrCat("user ", m.user_index, " reported twice"));
    }
    seen[m.user_index] = true;
    const int64_t group = HrGroup(m.user_index, dim);
    ++fractions.group_sizes[group];
    ones[group] += m.bit;
  }
  fractions.s_hat.assign(num_groups, 0.0);
  for (int64_t j = 0; j < num_groups; ++j) {
    if (fractions.group_sizes[j] == 0) {
      ++fractions.empty_groups;
      continue;
    }
    fractions.s_hat[j] = static_cast<double>(ones[j]) /
                         static_cast<double>(fractions.group_sizes[j]);
  }
  return fractions;
}

absl::StatusOr<std::vector<double>> HrIntermediateEstimate(
    const HrFractions& fractions, double epsilon, int k) {
  if (!(epsilon > 0.0)) {
    return absl::InvalidArgumentError("epsilon must be positive to invert");
  }
  if (fractions.empty_groups > 0) {
    return absl::FailedPreconditionError(absl::StrCat(
        fractions.empty_groups, " groups received no messages"));
  }
  const int64_t big_k = static_cast<int64_t>(fractions.s_hat.size());
  if (k < 1 || k >= big_k) {
    return absl::InvalidArgumentError(
        absl::StrCat("k = ", k, " incompatible with K = ", big_k));
  }
  std::vector<double> centered(big_k);
  for (int64_t j = 0; j < big_k; ++j) {
    centered[j] = 2.0 * fractions.s_hat[j] - 1.0;
  }
  if (absl::Status s = FwhtInPlace(centered); !s.ok()) return s;
  const double e = std::exp(epsilon);
  const double scale = (e + 1.0) / (static_cast<double>(big_k) * (e - 1.0));
  centered.resize(k);
  for (double& v : centered) v *= scale;
  return centered;
}

absl::StatusOr<Distribution> HrDecode(const HrFractions& fractions,
                                      double epsilon, int k,
                                      HrProjection projection) {
  absl::StatusOr<std::vector<double>> estimate =
      HrIntermediateEstimate(fractions, epsilon, k);
  if (!estimate.ok()) return estimate.status();
  if (projection.kind == HrProjection::Kind::kSparse) {
    return ProjectSparseSimplex(*estimate, projection.sparsity);
  }
  return ProjectSimplex(*estimate);
}

absl::StatusOr<Channel> HrChannelMatrix(double epsilon, const HadamardDim& dim,
                                        int64_t group, int k) {
  if (group < 0 || group >= dim.size()) {
    return absl::OutOfRangeError(absl::StrCat("group ", group));
  }
  if (k < 1 || k > dim.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("k = ", k, " exceeds K = ", dim.size()));
  }
  std::vector<double> entries;
  entries.reserve(2 * k);
  for (int x = 0; x < k; ++x) {
    const double q = HrOneProbability(HadamardSign(x, group) == 1, epsilon);
    entries.push_back(1.0 - q);
    entries.push_back(q);
  }
  return Channel::Create(k, 2, std::move(entries));
}

}  // namespace sparse_dist_lab

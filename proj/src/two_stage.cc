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

#include "sparse_dist_lab/two_stage.h"

#include "absl/strings/str_cat.h"
#include "sparse_dist_lab/projection.h"

namespace sparse_dist_lab {

absl::StatusOr<TwoStageEstimate> TwoStageDecode(
    std::span<const int64_t> first_counts,
    std::span<const int64_t> second_counts, int64_t second_total,
    double beta, double gamma, int set_size) {
  if (first_counts.size() != second_counts.size() || first_counts.empty()) {
    return absl::InvalidArgumentError("count vectors must match and be nonempty");
  }
  if (second_total < 1) {
    return absl::InvalidArgumentError("second half has no messages");
  }
  if (!(gamma > 0.0)) {
    return absl::InvalidArgumentError("gamma must be positive");
  }
  const int k = static_cast<int>(first_counts.size());
  if (set_size < 1 || set_size > k) {
    return absl::InvalidArgumentError(
        absl::StrCat("candidate set size ", set_size, " outside [1, ", k, "]"));
  }
  std::vector<double> first(first_counts.begin(), first_counts.end());
  std::vector<int> selected = TopIndices(first, set_size);

  std::vector<double> raw(k, 0.0);
  const double total = static_cast<double>(second_total);
  for (int x : selected) {
    raw[x] = (static_cast<double>(second_counts[x]) / total - beta) / gamma;
  }
  absl::StatusOr<Distribution> projected = ProjectSimplexOnSubset(raw, selected);
  if (!projected.ok()) return projected.status();
  return TwoStageEstimate{*std::move(projected), std::move(raw),
                          std::move(selected)};
}

}  // namespace sparse_dist_lab

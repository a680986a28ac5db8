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

#ifndef SPARSE_DIST_LAB_TWO_STAGE_H_
#define SPARSE_DIST_LAB_TWO_STAGE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "sparse_dist_lab/distribution.h"

namespace sparse_dist_lab {

// Output of a two-stage sparse estimator: the first half of the users
// selects a candidate set, the second half estimates mass on it.
struct TwoStageEstimate {
  // Projection of `raw` onto the simplex over `selected`.
  Distribution distribution;
  // Per-coordinate unbiased estimate on `selected`, 0 elsewhere. May be
  // negative or exceed 1.
  std::vector<double> raw;
  // The candidate set T, in selection order.
  std::vector<int> selected;
};

// Shared decoder for statistics of the form E[count(x)] = m (gamma p(x) +
// beta). Selects the `set_size` symbols with largest `first_counts` (ties to
// the smaller index) and estimates p(x) = (second_counts(x)/second_total -
// beta)/gamma on them.
absl::StatusOr<TwoStageEstimate> TwoStageDecode(
    std::span<const int64_t> first_counts,
    std::span<const int64_t> second_counts, int64_t second_total,
    double beta, double gamma, int set_size);

}  // namespace sparse_dist_lab

#endif  // SPARSE_DIST_LAB_TWO_STAGE_H_

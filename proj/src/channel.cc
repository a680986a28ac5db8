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

#include "sparse_dist_lab/channel.h"

#include <cmath>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace sparse_dist_lab {

absl::StatusOr<Channel> Channel::Create(size_t num_inputs, size_t num_outputs,
                                        std::vector<double> entries) {
  if (num_inputs == 0 || num_outputs == 0) {
    return absl::InvalidArgumentError("channel must have inputs and outputs");
  }
  if (entries.size() != num_inputs * num_outputs) {
    return absl::InvalidArgumentError(
        absl::StrCat("channel expects ", num_inputs * num_outputs,
                     " entries, got ", entries.size()));
  }
  for (size_t x = 0; x < num_inputs; ++x) {
    double row_sum = 0.0;
    for (size_t y = 0; y < num_outputs; ++y) {
      const double w = entries[x * num_outputs + y];
      if (!(w >= 0.0) || !std::isfinite(w)) {
        return absl::InvalidArgumentError(
            absl::StrCat("W(", y, "|", x, ") = ", w, " is not a probability"));
      }
      row_sum += w;
    }
    if (std::abs(row_sum - 1.0) > 1e-9) {
      return absl::InvalidArgumentError(
          absl::StrCat("row ", x, " sums to ", row_sum));
    }
  }
  return Channel(num_inputs, num_outputs, std::move(entries));
}

Channel Channel::Identity(size_t size) {
  std::vector<double> entries(size * size, 0.0);
  for (size_t x = 0; x < size; ++x) entries[x * size + x] = 1.0;
  return Channel(size, size, std::move(entries));
}

}  // namespace sparse_dist_lab

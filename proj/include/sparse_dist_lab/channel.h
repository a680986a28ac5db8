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

#ifndef SPARSE_DIST_LAB_CHANNEL_H_
#define SPARSE_DIST_LAB_CHANNEL_H_

#include <cstddef>
#include <span>
#include <vector>

#include "absl/status/statusor.h"

namespace sparse_dist_lab {

// Explicit row-stochastic matrix W(y|x): one row per input symbol, one
// column per output symbol. Only used for small-instance verification; the
// protocols never materialize their channels.
class Channel {
 public:
  // `entries` is row-major, num_inputs * num_outputs long. Every entry must
  // be nonnegative and every row must sum to 1 within 1e-9.
  static absl::StatusOr<Channel> Create(size_t num_inputs, size_t num_outputs,
                                        std::vector<double> entries);

  static Channel Identity(size_t size);

  size_t num_inputs() const { return num_inputs_; }
  size_t num_outputs() const { return num_outputs_; }

  // W(y | x).
  double operator()(size_t y, size_t x) const {
    return entries_[x * num_outputs_ + y];
  }

  std::span<const double> row(size_t x) const {
    return {entries_.data() + x * num_outputs_, num_outputs_};
  }

 private:
  Channel(size_t num_inputs, size_t num_outputs, std::vector<double> entries)
      : num_inputs_(num_inputs),
        num_outputs_(num_outputs),
        entries_(std::move(entries)) {}

  size_t num_inputs_;
  size_t num_outputs_;
  std::vector<double> entries_;
};

}  // namespace sparse_dist_lab

#endif  // SPARSE_DIST_LAB_CHANNEL_H_

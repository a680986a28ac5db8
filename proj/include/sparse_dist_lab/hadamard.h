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

// Sylvester-Hadamard matrices, never materialized: entries come from the
// popcount-parity oracle and products from the in-place butterfly
// transform. Row/column 0 is the all-ones row/column.

#ifndef SPARSE_DIST_LAB_HADAMARD_H_
#define SPARSE_DIST_LAB_HADAMARD_H_

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace sparse_dist_lab {

// Power-of-two Hadamard order.
class HadamardDim {
 public:
  // Smallest power of two strictly greater than k, i.e. 2^ceil(log2(k+1)).
  static absl::StatusOr<HadamardDim> ForDomain(int k);
  // `size` itself, which must be a power of two.
  static absl::StatusOr<HadamardDim> OfSize(int64_t size);

  int64_t size() const { return size_; }

 private:
  explicit HadamardDim(int64_t size) : size_(size) {}
  int64_t size_;
};

// (-1)^popcount(x & y) without bounds checks; protocol hot paths use this.
inline int HadamardSign(uint64_t x, uint64_t y) {
  return (std::popcount(x & y) & 1) ? -1 : 1;
}

absl::StatusOr<int> HadamardEntry(const HadamardDim& dim, int64_t x,
                                  int64_t y);

// True iff H(x, y) = +1, i.e. row x belongs to the set B_y of column y.
absl::StatusOr<bool> InColumnSet(const HadamardDim& dim, int64_t y, int64_t x);

// In-place H * v in O(K log K). The length must be a power of two.
absl::Status FwhtInPlace(std::span<double> v);

absl::StatusOr<std::vector<double>> Fwht(std::vector<double> v);

}  // namespace sparse_dist_lab

#endif  // SPARSE_DIST_LAB_HADAMARD_H_

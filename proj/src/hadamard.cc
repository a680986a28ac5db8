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

#include "sparse_dist_lab/hadamard.h"

#include <utility>

#include "absl/strings/str_cat.h"

namespace sparse_dist_lab {
namespace {

bool IsPowerOfTwo(uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

absl::Status CheckIndex(const HadamardDim& dim, int64_t index) {
  if (index < 0 || index >= dim.size()) {
    return absl::OutOfRangeError(
        absl::StrCat("index ", index, " outside [0, ", dim.size(), ")"));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<HadamardDim> HadamardDim::ForDomain(int k) {
  if (k < 1) return absl::InvalidArgumentError("domain size must be positive");
  return HadamardDim(static_cast<int64_t>(
      std::bit_ceil(static_cast<uint64_t>(k) + 1)));
}

absl::StatusOr<HadamardDim> HadamardDim::OfSize(int64_t size) {
  if (size < 1 || !IsPowerOfTwo(static_cast<uint64_t>(size))) {
    return absl::InvalidArgumentError(
        absl::StrCat("Hadamard order ", size, " is not a power of two"));
  }
  return HadamardDim(size);
}

absl::StatusOr<int> HadamardEntry(const HadamardDim& dim, int64_t x,
                                  int64_t y) {
  if (absl::Status s = CheckIndex(dim, x); !s.ok()) return s;
  if (absl::Status s = CheckIndex(dim, y); !s.ok()) return s;
  return HadamardSign(x, y);
}

absl::StatusOr<bool> InColumnSet(const HadamardDim& dim, int64_t y,
                                 int64_t x) {
  absl::StatusOr<int> entry = HadamardEntry(dim, x, y);
  if (!entry.ok()) return entry.status();
  return *entry == 1;
}

absl::Status FwhtInPlace(std::span<double> v) {
  if (!IsPowerOfTwo(v.size())) {
    return absl::InvalidArgumentError(
        absl::StrCat("transform length ", v.size(), " is not a power of two"));
  }
  const size_t n = v.size();
  for (size_t half = 1; half < n; half <<= 1) {
    for (size_t block = 0; block < n; block += 2 * half) {
      for (size_t i = block; i < block + half; ++i) {
        const double a = v[i];
        const double b = v[i + half];
        v[i] = a + b;
        v[i + half] = a - b;
      }
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<double>> Fwht(std::vector<double> v) {
  if (absl::Status s = FwhtInPlace(v); !s.ok()) return s;
  return v;
}

}  // namespace sparse_dist_lab

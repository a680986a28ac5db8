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

#include "sparse_dist_lab/projection.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "absl/strings/str_cat.h"

namespace sparse_dist_lab {
namespace {

// Simplex projection of a dense vector; returns the raw coordinates.
std::vector<double> ProjectToSimplexCoordinates(std::span<const double> v) {
  std::vector<double> sorted(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double prefix = 0.0;
  double tau = 0.0;
  for (size_t j = 0; j < sorted.size(); ++j) {
    prefix += sorted[j];
    const double candidate = (prefix - 1.0) / static_cast<double>(j + 1);
    // sorted[0] - (sorted[0] - 1) = 1 > 0, so j = 0 is always feasible.
    if (sorted[j] - candidate > 0.0) tau = candidate;
  }
  std::vector<double> out(v.size());
  for (size_t x = 0; x < v.size(); ++x) {
    out[x] = std::clamp(v[x] - tau, 0.0, 1.0);
  }
  return out;
}

absl::Status CheckFinite(std::span<const double> v) {
  if (v.empty()) return absl::InvalidArgumentError("cannot project empty vector");
  for (size_t x = 0; x < v.size(); ++x) {
    if (!std::isfinite(v[x])) {
      return absl::InvalidArgumentError(
          absl::StrCat("entry ", x, " is not finite"));
    }
  }
  return absl::OkStatus();
}

}  // namespace

std::vector<int> TopIndices(std::span<const double> v, int count) {
  std::vector<int> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  count = std::clamp(count, 0, static_cast<int>(v.size()));
  std::partial_sort(order.begin(), order.begin() + count, order.end(),
                    [&v](int a, int b) {
                      return v[a] > v[b] || (v[a] == v[b] && a < b);
                    });
  order.resize(count);
  return order;
}

absl::StatusOr<Distribution> ProjectSimplex(std::span<const double> v) {
  if (absl::Status s = CheckFinite(v); !s.ok()) return s;
  return Distribution::Create(ProjectToSimplexCoordinates(v));
}

absl::StatusOr<Distribution> ProjectSimplexOnSubset(
    std::span<const double> v, std::span<const int> subset) {
  if (absl::Status s = CheckFinite(v); !s.ok()) return s;
  if (subset.empty()) {
    return absl::InvalidArgumentError("projection subset is empty");
  }
  std::vector<double> restricted;
  restricted.reserve(subset.size());
  for (int x : subset) {
    if (x < 0 || x >= static_cast<int>(v.size())) {
      return absl::OutOfRangeError(absl::StrCat("subset index ", x));
    }
    restricted.push_back(v[x]);
  }
  std::vector<double> projected = ProjectToSimplexCoordinates(restricted);
  std::vector<double> out(v.size(), 0.0);
  std::vector<bool> seen(v.size(), false);
  for (size_t i = 0; i < subset.size(); ++i) {
    if (seen[subset[i]]) {
      return absl::InvalidArgumentError("projection subset repeats an index");
    }
    seen[subset[i]] = true;
    out[subset[i]] = projected[i];
  }
  return Distribution::Create(std::move(out));
}

absl::StatusOr<Distribution> ProjectSparseSimplex(std::span<const double> v,
                                                  int s) {
  if (absl::Status st = CheckFinite(v); !st.ok()) return st;
  if (s < 1 || s > static_cast<int>(v.size())) {
    return absl::InvalidArgumentError(
        absl::StrCat("sparsity ", s, " outside [1, ", v.size(), "]"));
  }
  const std::vector<int> support = TopIndices(v, s);
  return ProjectSimplexOnSubset(v, support);
}

}  // namespace sparse_dist_lab

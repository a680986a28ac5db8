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

// Euclidean projections onto the probability simplex and the s-sparse
// simplex. Inputs may be negative (noisy unbiased estimates usually are).

#ifndef SPARSE_DIST_LAB_PROJECTION_H_
#define SPARSE_DIST_LAB_PROJECTION_H_

#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "sparse_dist_lab/distribution.h"

namespace sparse_dist_lab {

// argmin over the simplex of ||v - p||_2, by sort-and-threshold:
// p(x) = max(v(x) - tau, 0) where tau is set by the largest feasible prefix
// of the sorted entries.
absl::StatusOr<Distribution> ProjectSimplex(std::span<const double> v);

// argmin over distributions with at most s positive entries. Keeps the s
// largest entries of v (equal values: smaller index first), projects them
// onto the s-dimensional simplex and zeros the rest.
absl::StatusOr<Distribution> ProjectSparseSimplex(std::span<const double> v,
                                                  int s);

// Projects the entries of v indexed by `subset` onto the simplex over that
// subset; the result is a distribution over [v.size()] supported on it.
absl::StatusOr<Distribution> ProjectSimplexOnSubset(std::span<const double> v,
                                                    std::span<const int> subset);

// Indices of the `count` largest values, ordered by decreasing value with
// ties broken toward the smaller index.
std::vector<int> TopIndices(std::span<const double> v, int count);

}  // namespace sparse_dist_lab

#endif  // SPARSE_DIST_LAB_PROJECTION_H_

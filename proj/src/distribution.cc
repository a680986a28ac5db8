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

#include "sparse_dist_lab/distribution.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "absl/strings/str_cat.h"

namespace sparse_dist_lab {

absl::StatusOr<Distribution> Distribution::Create(std::vector<double> probs) {
  if (probs.empty()) {
    return absl::InvalidArgumentError("distribution must be nonempty");
  }
  double sum = 0.0;
  for (size_t x = 0; x < probs.size(); ++x) {
    if (!(probs[x] >= 0.0 && probs[x] <= 1.0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("entry ", x, " = ", probs[x], " is outside [0, 1]"));
    }
    sum += probs[x];
  }
  if (std::abs(sum - 1.0) > kDistributionSumTolerance) {
    return absl::InvalidArgumentError(
        absl::StrCat("entries sum to ", sum, ", not 1"));
  }
  return Distribution(std::move(probs));
}

Distribution Distribution::PointMass(int size, int symbol) {
  std::vector<double> probs(size, 0.0);
  probs[symbol] = 1.0;
  return Distribution(std::move(probs));
}

Distribution Distribution::Uniform(int size) {
  return Distribution(std::vector<double>(size, 1.0 / size));
}

int Distribution::support_size() const {
  return static_cast<int>(
      std::count_if(probs_.begin(), probs_.end(), [](double v) { return v > 0; }));
}

absl::Status ProblemConfig::Validate() const {
  if (k < 1) return absl::InvalidArgumentError("k must be positive");
  if (s < 1 || s > k) {
    return absl::InvalidArgumentError(
        absl::StrCat("sparsity ", s, " must lie in [1, ", k, "]"));
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    return absl::InvalidArgumentError("alpha must lie in (0, 1)");
  }
  if (epsilon.has_value() == ell.has_value()) {
    return absl::InvalidArgumentError(
        "exactly one of epsilon and ell must be set");
  }
  if (epsilon.has_value() && !(*epsilon > 0.0)) {
    return absl::InvalidArgumentError("epsilon must be positive");
  }
  if (ell.has_value() && *ell < 1) {
    return absl::InvalidArgumentError("ell must be a positive bit count");
  }
  if (n < 1) return absl::InvalidArgumentError("n must be positive");
  return absl::OkStatus();
}

absl::Status ProblemConfig::ValidateForLowerBound() const {
  if (absl::Status status = Validate(); !status.ok()) return status;
  if (100 * static_cast<int64_t>(s) > k) {
    return absl::InvalidArgumentError(
        absl::StrCat("lower bounds require s <= k/100, got s=", s, " k=", k));
  }
  return absl::OkStatus();
}

absl::StatusOr<PackingIndex> PackingIndex::Create(std::vector<uint8_t> bits,
                                                  int sparsity) {
  int ones = 0;
  for (uint8_t b : bits) {
    if (b > 1) return absl::InvalidArgumentError("packing index is not binary");
    ones += b;
  }
  if (ones != sparsity || sparsity < 1) {
    return absl::InvalidArgumentError(absl::StrCat(
        "packing index has ", ones, " ones, expected ", sparsity));
  }
  return PackingIndex(std::move(bits), sparsity);
}

absl::StatusOr<PackingIndex> PackingIndex::FromSupport(
    int k, std::span<const int> support) {
  std::vector<uint8_t> bits(k, 0);
  for (int x : support) {
    if (x < 0 || x >= k) {
      return absl::OutOfRangeError(absl::StrCat("symbol ", x, " not in [k]"));
    }
    if (bits[x]) return absl::InvalidArgumentError("repeated support symbol");
    bits[x] = 1;
  }
  return Create(std::move(bits), static_cast<int>(support.size()));
}

absl::StatusOr<double> TvDistance(std::span<const double> p,
                                  std::span<const double> q) {
  if (p.size() != q.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "length mismatch: ", p.size(), " vs ", q.size()));
  }
  double l1 = 0.0;
  for (size_t x = 0; x < p.size(); ++x) l1 += std::abs(p[x] - q[x]);
  return 0.5 * l1;
}

absl::StatusOr<double> TvDistance(const Distribution& p,
                                  const Distribution& q) {
  absl::StatusOr<double> tv = TvDistance(p.probs(), q.probs());
  if (!tv.ok()) return tv;
  return std::min(*tv, 1.0);
}

absl::StatusOr<double> ChiSquare(const Distribution& p, const Distribution& q) {
  if (p.size() != q.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "length mismatch: ", p.size(), " vs ", q.size()));
  }
  double chi2 = 0.0;
  for (int x = 0; x < p.size(); ++x) {
    if (q[x] > 0.0) {
      const double d = p[x] - q[x];
      chi2 += d * d / q[x];
    } else if (p[x] > 0.0) {
      return absl::InvalidArgumentError(absl::StrCat(
          "q(", x, ") = 0 while p(", x, ") = ", p[x], "; divergence is infinite"));
    }
  }
  return chi2;
}

DiscreteSampler::DiscreteSampler(const Distribution& p) {
  double running = 0.0;
  for (int x = 0; x < p.size(); ++x) {
    if (p[x] > 0.0) {
      running += p[x];
      symbols_.push_back(x);
      cumulative_.push_back(running);
    }
  }
  // Rescale so the last bucket closes at exactly the total mass.
  for (double& c : cumulative_) c /= running;
  cumulative_.back() = 1.0;
}

int DiscreteSampler::Sample(RandomStream& stream) const {
  const double u = stream.UniformDouble();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  return symbols_[std::min<size_t>(it - cumulative_.begin(),
                                   symbols_.size() - 1)];
}

std::vector<int> SampleIid(const Distribution& p, int64_t n,
                           RandomStream& stream) {
  DiscreteSampler sampler(p);
  std::vector<int> samples(std::max<int64_t>(n, 0));
  for (int& x : samples) x = sampler.Sample(stream);
  return samples;
}

absl::StatusOr<Distribution> MakeUniformSparse(int k, int s,
                                               RandomStream& stream) {
  if (k < 1 || s < 1 || s > k) {
    return absl::InvalidArgumentError(
        absl::StrCat("need 1 <= s <= k, got s=", s, " k=", k));
  }
  // Partial Fisher-Yates: the first s slots form a uniform s-subset.
  std::vector<int> symbols(k);
  std::iota(symbols.begin(), symbols.end(), 0);
  for (int i = 0; i < s; ++i) {
    const int j = i + static_cast<int>(stream.UniformInt(k - i));
    std::swap(symbols[i], symbols[j]);
  }
  std::vector<double> probs(k, 0.0);
  for (int i = 0; i < s; ++i) probs[symbols[i]] = 1.0 / s;
  return Distribution::Create(std::move(probs));
}

absl::StatusOr<Distribution> MakePackingDist(const PackingIndex& z,
                                             double alpha) {
  if (!(alpha > 0.0 && 8.0 * alpha < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("packing needs 0 < 8*alpha < 1, got alpha=", alpha));
  }
  std::vector<double> probs(z.k() + 1, 0.0);
  probs[0] = 1.0 - 8.0 * alpha;
  const double heavy = 8.0 * alpha / z.sparsity();
  for (int x = 0; x < z.k(); ++x) {
    if (z.bit(x)) probs[x + 1] = heavy;
  }
  return Distribution::Create(std::move(probs));
}

absl::StatusOr<Distribution> PackingMean(int k, double alpha) {
  if (k < 1) return absl::InvalidArgumentError("k must be positive");
  if (!(alpha > 0.0 && 8.0 * alpha < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("packing needs 0 < 8*alpha < 1, got alpha=", alpha));
  }
  std::vector<double> probs(k + 1, 8.0 * alpha / k);
  probs[0] = 1.0 - 8.0 * alpha;
  return Distribution::Create(std::move(probs));
}

absl::StatusOr<Distribution> InducedOutputDist(const Channel& channel,
                                               const Distribution& p) {
  if (channel.num_inputs() != static_cast<size_t>(p.size())) {
    return absl::InvalidArgumentError(
        absl::StrCat("channel has ", channel.num_inputs(),
                     " inputs but the distribution has ", p.size(), " symbols"));
  }
  std::vector<double> q(channel.num_outputs(), 0.0);
  for (int x = 0; x < p.size(); ++x) {
    if (p[x] == 0.0) continue;
    std::span<const double> row = channel.row(x);
    for (size_t y = 0; y < q.size(); ++y) q[y] += p[x] * row[y];
  }
  for (double& v : q) v = std::min(v, 1.0);
  return Distribution::Create(std::move(q));
}

}  // namespace sparse_dist_lab

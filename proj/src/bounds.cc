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

#include "sparse_dist_lab/bounds.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>
#include <vector>

#include "absl/strings/str_cat.h"
#include "sparse_dist_lab/comm_hash.h"
#include "sparse_dist_lab/distribution.h"

namespace sparse_dist_lab {
namespace {

int64_t RoundUpToEven(double n) {
  auto rounded = static_cast<int64_t>(std::ceil(n));
  if (rounded % 2 != 0) ++rounded;
  return std::max<int64_t>(rounded, 2);
}

// Advances `indices` (strictly increasing, values in [0, k)) to the next
// s-combination in lexicographic order; false after the last one.
bool NextCombination(std::vector<int>& indices, int k) {
  const int s = static_cast<int>(indices.size());
  int i = s - 1;
  while (i >= 0 && indices[i] == k - s + i) --i;
  if (i < 0) return false;
  ++indices[i];
  for (int j = i + 1; j < s; ++j) indices[j] = indices[j - 1] + 1;
  return true;
}

// C(n, r), exact while the running product fits in 64 bits.
double BinomialValue(int64_t n, int64_t r) {
  if (r < 0 || r > n) return 0.0;
  r = std::min(r, n - r);
  unsigned __int128 value = 1;
  for (int64_t i = 1; i <= r; ++i) {
    value = value * static_cast<uint64_t>(n - r + i) / static_cast<uint64_t>(i);
    if (value > std::numeric_limits<uint64_t>::max()) {
      return std::exp(LogBinomial(n, r));
    }
  }
  return static_cast<double>(static_cast<uint64_t>(value));
}

}  // namespace

BoundReport BoundReport::Make(std::string name, double value, double bound,
                              Direction direction,
                              std::map<std::string, double> context) {
  BoundReport report;
  report.name = std::move(name);
  report.value = value;
  report.bound = bound;
  report.direction = direction;
  report.satisfied = direction == Direction::kUpper
                         ? value <= bound + kBoundSlack
                         : value >= bound - kBoundSlack;
  report.context = std::move(context);
  return report;
}

nlohmann::json BoundReport::ToJson() const {
  nlohmann::json out;
  out["name"] = name;
  out["value"] = value;
  out["bound"] = bound;
  out["direction"] = direction == Direction::kUpper ? "upper" : "lower";
  out["satisfied"] = satisfied;
  out["context"] = nlohmann::json(context);
  return out;
}

bool VerifyLdp(const Channel& channel, double epsilon) {
  const double limit = std::exp(epsilon) * (1.0 + kLdpRelativeSlack);
  for (size_t y = 0; y < channel.num_outputs(); ++y) {
    double lo = channel(y, 0);
    double hi = lo;
    for (size_t x = 1; x < channel.num_inputs(); ++x) {
      lo = std::min(lo, channel(y, x));
      hi = std::max(hi, channel(y, x));
    }
    if (hi == 0.0) continue;
    if (lo == 0.0 || hi > limit * lo) return false;
  }
  return true;
}

double MaxLogLikelihoodRatio(const Channel& channel) {
  double worst = 0.0;
  for (size_t y = 0; y < channel.num_outputs(); ++y) {
    double lo = channel(y, 0);
    double hi = lo;
    for (size_t x = 1; x < channel.num_inputs(); ++x) {
      lo = std::min(lo, channel(y, x));
      hi = std::max(hi, channel(y, x));
    }
    if (hi == 0.0) continue;
    if (lo == 0.0) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, std::log(hi / lo));
  }
  return worst;
}

Channel RandomizedResponseChannel(int num_symbols, double epsilon) {
  const double e = std::exp(epsilon);
  const double denom = e + num_symbols - 1;
  std::vector<double> entries(static_cast<size_t>(num_symbols) * num_symbols,
                              1.0 / denom);
  for (int x = 0; x < num_symbols; ++x) {
    entries[static_cast<size_t>(x) * num_symbols + x] = e / denom;
  }
  return *Channel::Create(num_symbols, num_symbols, std::move(entries));
}

Channel RandomChannel(int num_inputs, int num_outputs, RandomStream& stream) {
  std::vector<double> entries(static_cast<size_t>(num_inputs) * num_outputs);
  for (int x = 0; x < num_inputs; ++x) {
    // Normalized exponentials are uniform on the simplex.
    double total = 0.0;
    double* row = entries.data() + static_cast<size_t>(x) * num_outputs;
    for (int y = 0; y < num_outputs; ++y) {
      row[y] = -std::log1p(-stream.UniformDouble());
      total += row[y];
    }
    for (int y = 0; y < num_outputs; ++y) row[y] /= total;
  }
  return *Channel::Create(num_inputs, num_outputs, std::move(entries));
}

absl::StatusOr<double> ExpectedChisqOverPacking(const Channel& channel, int k,
                                                int s, double alpha) {
  if (k < 1 || s < 1 || s > k) {
    return absl::InvalidArgumentError(
        absl::StrCat("need 1 <= s <= k, got s=", s, " k=", k));
  }
  if (channel.num_inputs() != static_cast<size_t>(k) + 1) {
    return absl::InvalidArgumentError(absl::StrCat(
        "channel must have k+1 = ", k + 1, " inputs, has ",
        channel.num_inputs()));
  }
  const double log_count = LogBinomial(k, s);
  if (log_count > std::log(kPackingEnumerationBudget) + 1e-9) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "C(", k, ", ", s, ") exceeds the enumeration budget"));
  }
  absl::StatusOr<Distribution> mean = PackingMean(k, alpha);
  if (!mean.ok()) return mean.status();
  absl::StatusOr<Distribution> mean_out = InducedOutputDist(channel, *mean);
  if (!mean_out.ok()) return mean_out.status();

  std::vector<int> support(s);
  std::iota(support.begin(), support.end(), 0);
  double total = 0.0;
  int64_t count = 0;
  do {
    absl::StatusOr<PackingIndex> z = PackingIndex::FromSupport(k, support);
    if (!z.ok()) return z.status();
    absl::StatusOr<Distribution> pz = MakePackingDist(*z, alpha);
    if (!pz.ok()) return pz.status();
    absl::StatusOr<Distribution> out = InducedOutputDist(channel, *pz);
    if (!out.ok()) return out.status();
    absl::StatusOr<double> chi2 = ChiSquare(*out, *mean_out);
    if (!chi2.ok()) return chi2.status();
    total += *chi2;
    ++count;
  } while (NextCombination(support, k));
  return total / static_cast<double>(count);
}

double LdpChisqBound(double alpha, double epsilon, int s) {
  const double em1 = std::expm1(epsilon);
  return 64.0 * alpha * alpha * em1 * em1 / s;
}

double CommChisqBound(double alpha, int ell, int s) {
  return 8.0 * alpha * std::ldexp(1.0, ell) / s;
}

double MutualInfoBound(int64_t n, double per_user_chisq) {
  return static_cast<double>(n) * per_user_chisq;
}

double ImpliedSampleSizeLowerBound(double packing_gap, double per_user_chisq) {
  return (0.9 * packing_gap - std::log(2.0)) / per_user_chisq;
}

double LogBinomial(int64_t n, int64_t r) {
  if (r < 0 || r > n) return -std::numeric_limits<double>::infinity();
  r = std::min(r, n - r);
  if (r == 0) return 0.0;
  // Exact product while it stays representable, lgamma beyond.
  if (n <= 1000 && r <= 30) {
    long double value = 1.0L;
    for (int64_t i = 1; i <= r; ++i) {
      value = value * static_cast<long double>(n - r + i) / i;
    }
    return static_cast<double>(std::log(value));
  }
  return std::lgamma(static_cast<double>(n) + 1) -
         std::lgamma(static_cast<double>(r) + 1) -
         std::lgamma(static_cast<double>(n - r) + 1);
}

double MaxHammingBallCount(int k, int s, double radius) {
  const auto max_swaps = static_cast<int>(std::floor(radius / 2.0));
  double total = 0.0;
  for (int j = 0; j <= std::min({max_swaps, s, k - s}); ++j) {
    total += BinomialValue(s, j) * BinomialValue(k - s, j);
  }
  return total;
}

double NeighborhoodUpperBound(int k, int s) {
  const int half = s / 2;
  return std::exp(LogBinomial(s, half) + LogBinomial(k - half, half));
}

absl::StatusOr<BoundReport> PackingGap(int k, int s, PackingMode mode) {
  if (k < 1 || s < 1 || s > k) {
    return absl::InvalidArgumentError(
        absl::StrCat("need 1 <= s <= k, got s=", s, " k=", k));
  }
  if (mode == PackingMode::kEnforcePrecondition &&
      100 * static_cast<int64_t>(s) > k) {
    return absl::InvalidArgumentError(
        absl::StrCat("packing gap requires s <= k/100, got s=", s, " k=", k));
  }
  const double neighborhood = MaxHammingBallCount(k, s, s / 2.0);
  const double gap = LogBinomial(k, s) - std::log(neighborhood);
  const double bound =
      s / 8.0 * std::log(static_cast<double>(k) / static_cast<double>(s));
  return BoundReport::Make(
      "packing_gap", gap, bound, BoundReport::Direction::kLower,
      {{"k", k},
       {"s", s},
       {"log_packing_size", LogBinomial(k, s)},
       {"max_neighborhood", neighborhood},
       {"neighborhood_upper_bound", NeighborhoodUpperBound(k, s)}});
}

double LdpRiskBound(int k, int s, int64_t n, double epsilon) {
  const double e = std::exp(epsilon);
  return kLdpRiskConstant * s *
         std::sqrt(std::log(2.0 * k / static_cast<double>(s))) /
         std::sqrt(static_cast<double>(n)) * (e + 1.0) / (e - 1.0);
}

double CommInSupportL1Bound(int s, int ell, int64_t n) {
  const double buckets = std::ldexp(1.0, ell);
  return std::sqrt(4.0 * s * buckets * (buckets + 2.0 * s) /
                   (static_cast<double>(n) * (buckets - 1.0) * (buckets - 1.0)));
}

absl::StatusOr<SamplePlan> PlannedSampleSize(PlanScheme scheme, int k, int s,
                                             double alpha,
                                             double epsilon_or_ell) {
  if (k < 1 || s < 1 || s > k) {
    return absl::InvalidArgumentError(
        absl::StrCat("need 1 <= s <= k, got s=", s, " k=", k));
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    return absl::InvalidArgumentError("alpha must lie in (0, 1)");
  }
  if (!(epsilon_or_ell > 0.0)) {
    return absl::InvalidArgumentError("epsilon or ell must be positive");
  }
  SamplePlan plan;
  plan.scheme = scheme;
  if (scheme == PlanScheme::kLdp) {
    const double e = std::exp(epsilon_or_ell);
    const double root = kLdpRiskConstant * s *
                        std::sqrt(std::log(2.0 * k / static_cast<double>(s))) *
                        (e + 1.0) / (e - 1.0) / alpha;
    plan.total = RoundUpToEven(root * root);
    plan.risk_bound = LdpRiskBound(k, s, plan.total, epsilon_or_ell);
    return plan;
  }
  const double rounded_ell = std::round(epsilon_or_ell);
  if (rounded_ell != epsilon_or_ell || rounded_ell > kMaxMessageBits) {
    return absl::InvalidArgumentError(
        absl::StrCat("ell must be an integer in [1, ", kMaxMessageBits, "]"));
  }
  const int ell = static_cast<int>(rounded_ell);
  const double divisor =
      alpha * alpha * std::min(std::ldexp(1.0, ell), static_cast<double>(s));
  const double log_term =
      std::max(std::log(static_cast<double>(k) / s), 1.0);
  const double s2 = static_cast<double>(s) * s;
  plan.stage_one = kStageOneConstant * s2 * log_term / divisor;
  plan.stage_two = kStageTwoConstant * s2 / divisor;
  plan.total = 2 * static_cast<int64_t>(
                       std::ceil(std::max(plan.stage_one, plan.stage_two)));
  plan.effective_ell = EffectiveEll(ell, s);
  plan.risk_bound = CommInSupportL1Bound(s, plan.effective_ell, plan.total);
  return plan;
}

}  // namespace sparse_dist_lab

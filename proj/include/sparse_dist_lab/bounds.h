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

// Executable pieces of the minimax lower-bound argument and the sample-size
// formulas of the matching upper bounds.
//
// The lower bound restricts to the packing family p_z over [k] ∪ {0}
// (see MakePackingDist) and bounds the information a channel W leaks about
// z by n * E_z[chi^2(p_z^W, p_0^W)]. For epsilon-LDP channels that
// expectation is at most 64 alpha^2 (e^eps - 1)^2 / s; for channels with
// 2^l outputs it is at most 8 alpha 2^l / s. Small instances are checked by
// exact enumeration of all C(k, s) indices.

#ifndef SPARSE_DIST_LAB_BOUNDS_H_
#define SPARSE_DIST_LAB_BOUNDS_H_

#include <cstdint>
#include <map>
#include <string>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "sparse_dist_lab/channel.h"
#include "sparse_dist_lab/random_stream.h"

namespace sparse_dist_lab {

inline constexpr double kBoundSlack = 1e-9;

// Relative slack on e^eps when comparing likelihood ratios, absorbing the
// rounding of channels built from exp().
inline constexpr double kLdpRelativeSlack = 1e-12;

// Constants of the l-bit scheme's two stages and of the LDP risk bound.
inline constexpr double kStageOneConstant = 700000.0;
inline constexpr double kStageTwoConstant = 6400.0;
inline constexpr double kLdpRiskConstant = 40.0;

struct BoundReport {
  // kUpper: the claim is value <= bound. kLower: value >= bound.
  enum class Direction { kUpper, kLower };

  std::string name;
  double value = 0.0;
  double bound = 0.0;
  Direction direction = Direction::kUpper;
  bool satisfied = false;
  std::map<std::string, double> context;

  static BoundReport Make(std::string name, double value, double bound,
                          Direction direction,
                          std::map<std::string, double> context = {});

  nlohmann::json ToJson() const;
};

// True iff W(y|x) <= e^eps W(y|x') for every output y and inputs x, x'.
// A zero paired with a positive entry in the same column is a violation.
bool VerifyLdp(const Channel& channel, double epsilon);

// max over y, x, x' of log(W(y|x) / W(y|x')); +infinity when some column
// mixes zero and positive entries. The tightest epsilon the channel meets.
double MaxLogLikelihoodRatio(const Channel& channel);

// (num_symbols)-ary randomized response: stay with probability
// e^eps/(e^eps + num_symbols - 1).
Channel RandomizedResponseChannel(int num_symbols, double epsilon);

// Rows drawn independently and uniformly from the simplex over outputs.
Channel RandomChannel(int num_inputs, int num_outputs, RandomStream& stream);

// Exact E_Z[chi^2(p_Z^W, p_0^W)] over all z with s ones, where W has k+1
// inputs (index 0 is the heavy symbol). Refuses when C(k, s) > 10^6.
absl::StatusOr<double> ExpectedChisqOverPacking(const Channel& channel, int k,
                                                int s, double alpha);

inline constexpr double kPackingEnumerationBudget = 1e6;

// 64 alpha^2 (e^eps - 1)^2 / s.
double LdpChisqBound(double alpha, double epsilon, int s);
// 8 alpha 2^l / s.
double CommChisqBound(double alpha, int ell, int s);

// n * per_user_chisq, an upper bound on I(Z; Y^n) in nats.
double MutualInfoBound(int64_t n, double per_user_chisq);

// Smallest n consistent with recovering Z within Hamming radius s/2 with
// probability 0.9: n >= (0.9 gap - log 2) / per_user_chisq.
double ImpliedSampleSizeLowerBound(double packing_gap, double per_user_chisq);

double LogBinomial(int64_t n, int64_t r);

// N_t^max for the s-sparse binary vectors of length k: two such vectors at
// Hamming distance 2j differ by j swapped positions, so the count is
// sum_{j <= floor(t/2)} C(s, j) C(k - s, j).
double MaxHammingBallCount(int k, int s, double radius);

// The packing argument's upper bound C(s, s/2) C(k - s/2, s/2), with s/2
// rounded down.
double NeighborhoodUpperBound(int k, int s);

enum class PackingMode { kEnforcePrecondition, kDiagnostic };

// log C(k, s) - log N_{s/2}^max against (s/8) log(k/s). The precondition
// s <= k/100 is enforced unless mode is kDiagnostic.
absl::StatusOr<BoundReport> PackingGap(
    int k, int s, PackingMode mode = PackingMode::kEnforcePrecondition);

enum class PlanScheme { kLdp, kComm };

struct SamplePlan {
  PlanScheme scheme = PlanScheme::kLdp;
  // Per-half requirements of the l-bit scheme; 0 for LDP.
  double stage_one = 0.0;
  double stage_two = 0.0;
  // Total users, rounded up to an even count.
  int64_t total = 0;
  // Bits sent per user under the l-bit scheme; 0 for LDP.
  int effective_ell = 0;
  // Theoretical accuracy at `total`: the TV risk bound for LDP, the bound on
  // E[sum_{x in T} |p_hat(x) - p(x)|] for the l-bit scheme.
  double risk_bound = 0.0;
};

// LDP: n = (40 s sqrt(log(2k/s)) (e^eps+1)/(e^eps-1) / alpha)^2, the risk
// bound solved for n.
// l-bit: each half needs max(C1 s^2 max{log(k/s), 1}, C2 s^2) /
// (alpha^2 min{2^l, s}) users and the total is twice that.
absl::StatusOr<SamplePlan> PlannedSampleSize(PlanScheme scheme, int k, int s,
                                             double alpha,
                                             double epsilon_or_ell);

// 40 s sqrt(log(2k/s)) / sqrt(n) * (e^eps+1)/(e^eps-1).
double LdpRiskBound(int k, int s, int64_t n, double epsilon);

// sqrt(4 s 2^l (2^l + 2s) / (n (2^l - 1)^2)).
double CommInSupportL1Bound(int s, int ell, int64_t n);

}  // namespace sparse_dist_lab

#endif  // SPARSE_DIST_LAB_BOUNDS_H_

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

#include <cmath>
#include <utility>
#include <vector>

#include "gtest/gtest.h"
#include "sparse_dist_lab/hadamard.h"
#include "sparse_dist_lab/hadamard_response.h"
#include "sparse_dist_lab/random_stream.h"
#include "sparse_dist_lab/rappor.h"
#include "test_oracles.h"

namespace sparse_dist_lab {
namespace {

constexpr int kK = 6;
constexpr int kS = 2;
constexpr double kAlpha = 0.05;

TEST(BoundReportTest, DirectionDecidesSatisfaction) {
  using Direction = BoundReport::Direction;
  EXPECT_TRUE(BoundReport::Make("a", 1.0, 2.0, Direction::kUpper).satisfied);
  EXPECT_FALSE(BoundReport::Make("a", 3.0, 2.0, Direction::kUpper).satisfied);
  EXPECT_TRUE(BoundReport::Make("a", 3.0, 2.0, Direction::kLower).satisfied);
  EXPECT_FALSE(BoundReport::Make("a", 1.0, 2.0, Direction::kLower).satisfied);
  const nlohmann::json json =
      BoundReport::Make("b", 1.0, 2.0, Direction::kLower, {{"k", 5}}).ToJson();
  EXPECT_EQ(json["direction"], "lower");
  EXPECT_EQ(json["context"]["k"], 5.0);
  EXPECT_EQ(json["satisfied"], false);
}

TEST(VerifyLdpTest, RandomizedResponse) {
  for (double epsilon : {0.1, 1.0, 3.0}) {
    const Channel w = RandomizedResponseChannel(5, epsilon);
    EXPECT_TRUE(VerifyLdp(w, epsilon));
    EXPECT_FALSE(VerifyLdp(w, 0.99 * epsilon));
    EXPECT_NEAR(MaxLogLikelihoodRatio(w), epsilon, 1e-12);
  }
}

TEST(VerifyLdpTest, ZeroAgainstPositiveViolates) {
  EXPECT_FALSE(VerifyLdp(Channel::Identity(2), 50.0));
  EXPECT_TRUE(std::isinf(MaxLogLikelihoodRatio(Channel::Identity(2))));
  // An all-zero column imposes nothing.
  const Channel w = *Channel::Create(2, 3, {0.5, 0.5, 0.0, 0.5, 0.5, 0.0});
  EXPECT_TRUE(VerifyLdp(w, 0.0));
}

TEST(RandomChannelTest, RowsAreDistributions) {
  RandomStream stream(1, 0);
  const Channel w = RandomChannel(4, 8, stream);
  for (size_t x = 0; x < 4; ++x) {
    double sum = 0.0;
    for (double v : w.row(x)) {
      EXPECT_GT(v, 0.0);
      sum += v;
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
}

TEST(ExpectedChisqTest, AgreesWithBothOracles) {
  RandomStream stream(2, 0);
  std::vector<Channel> channels = {RandomizedResponseChannel(kK + 1, 1.0),
                                   Channel::Identity(kK + 1)};
  for (int i = 0; i < 10; ++i) {
    channels.push_back(RandomChannel(kK + 1, 1 + i % 8, stream));
  }
  for (const Channel& w : channels) {
    const double value = *ExpectedChisqOverPacking(w, kK, kS, kAlpha);
    EXPECT_NEAR(value, oracle::EnumeratedPackingChisq(w, kK, kS, kAlpha), 1e-12);
    EXPECT_NEAR(value, oracle::MomentPackingChisq(w, kK, kS, kAlpha), 1e-12);
  }
}

TEST(ExpectedChisqTest, IdentityChannelClosedForm) {
  // Without privatization chi^2 = sum over symbols of (8 alpha)^2 times the
  // sampling variance of a Bernoulli indicator, divided by the mean mass.
  const double value =
      *ExpectedChisqOverPacking(Channel::Identity(kK + 1), kK, kS, kAlpha);
  const double mass = 8 * kAlpha / kK;
  const double expected =
      kK * (8 * kAlpha / kS) * (8 * kAlpha / kS) *
      (static_cast<double>(kS) / kK) * (1 - static_cast<double>(kS) / kK) /
      mass;
  EXPECT_NEAR(value, expected, 1e-12);
}

TEST(ExpectedChisqTest, Validation) {
  EXPECT_FALSE(
      ExpectedChisqOverPacking(Channel::Identity(kK), kK, kS, kAlpha).ok());
  EXPECT_FALSE(
      ExpectedChisqOverPacking(Channel::Identity(kK + 1), kK, 7, kAlpha).ok());
  EXPECT_EQ(ExpectedChisqOverPacking(Channel::Identity(101), 100, 10, kAlpha)
                .status()
                .code(),
            absl::StatusCode::kResourceExhausted);
}

TEST(ChisqBoundTest, LdpChannelsObeyBound) {
  const HadamardDim dim = *HadamardDim::OfSize(8);
  for (double epsilon : {0.5, 1.0, 2.0}) {
    const double bound = LdpChisqBound(kAlpha, epsilon, kS);
    EXPECT_LE(*ExpectedChisqOverPacking(
                  RandomizedResponseChannel(kK + 1, epsilon), kK, kS, kAlpha),
              bound);
    for (int64_t group = 0; group < 8; ++group) {
      const Channel hr = *HrChannelMatrix(epsilon, dim, group, kK + 1);
      EXPECT_LE(*ExpectedChisqOverPacking(hr, kK, kS, kAlpha), bound);
    }
    const Channel rappor = *RapporChannelMatrix(epsilon, kK + 1);
    EXPECT_LE(*ExpectedChisqOverPacking(rappor, kK, kS, kAlpha), bound);
  }
}

TEST(ChisqBoundTest, EllBitChannelsObeyBound) {
  RandomStream stream(3, 0);
  for (int ell = 1; ell <= 3; ++ell) {
    for (int i = 0; i < 20; ++i) {
      const Channel w = RandomChannel(kK + 1, 1 << ell, stream);
      EXPECT_LE(*ExpectedChisqOverPacking(w, kK, kS, kAlpha),
                CommChisqBound(kAlpha, ell, kS));
    }
    // Deterministic channels are the hardest case for few outputs.
    std::vector<double> entries((kK + 1) << ell, 0.0);
    for (int x = 0; x <= kK; ++x) entries[(x << ell) + x % (1 << ell)] = 1.0;
    const Channel w = *Channel::Create(kK + 1, 1 << ell, entries);
    EXPECT_LE(*ExpectedChisqOverPacking(w, kK, kS, kAlpha),
              CommChisqBound(kAlpha, ell, kS));
  }
}

TEST(ChisqBoundTest, Formulas) {
  EXPECT_DOUBLE_EQ(LdpChisqBound(0.1, std::log(2.0), 4), 64 * 0.01 / 4);
  EXPECT_DOUBLE_EQ(CommChisqBound(0.1, 3, 4), 8 * 0.1 * 8 / 4);
  EXPECT_DOUBLE_EQ(MutualInfoBound(100, 0.5), 50.0);
  EXPECT_DOUBLE_EQ(ImpliedSampleSizeLowerBound(10.0, 0.5),
                   (9.0 - std::log(2.0)) / 0.5);
}

TEST(LogBinomialTest, MatchesDirectProduct) {
  for (int n : {1, 5, 24, 100, 1000}) {
    for (int r : {0, 1, 2, 3, 8}) {
      if (r > n) continue;
      EXPECT_NEAR(LogBinomial(n, r), std::log(oracle::Binomial(n, r)), 1e-10)
          << n << " choose " << r;
    }
  }
  EXPECT_NEAR(LogBinomial(5000, 100),
              std::lgamma(5001.0) - std::lgamma(101.0) - std::lgamma(4901.0),
              1e-6);
  EXPECT_TRUE(std::isinf(LogBinomial(3, 4)));
}

TEST(HammingBallTest, ClosedFormMatchesBruteForce) {
  EXPECT_EQ(oracle::BruteForceHammingBall(24, 4, 2), 81);
  for (int t = 0; t <= 8; ++t) {
    EXPECT_NEAR(MaxHammingBallCount(24, 4, t),
                static_cast<double>(oracle::BruteForceHammingBall(24, 4, t)),
                1e-6)
        << "t=" << t;
  }
  for (int s : {1, 2, 3, 5}) {
    EXPECT_NEAR(MaxHammingBallCount(16, s, s),
                static_cast<double>(oracle::BruteForceHammingBall(16, s, s)),
                1e-6);
  }
}

TEST(HammingBallTest, NeighborhoodUpperBoundDominates) {
  for (auto [k, s] : std::vector<std::pair<int, int>>{
           {24, 4}, {128, 1}, {200, 2}, {400, 4}, {1000, 8}, {1000, 10}}) {
    EXPECT_LE(MaxHammingBallCount(k, s, s / 2.0),
              NeighborhoodUpperBound(k, s) * (1 + 1e-12));
  }
}

TEST(PackingGapTest, HoldsOnValidRange) {
  for (auto [k, s] : std::vector<std::pair<int, int>>{
           {128, 1}, {200, 2}, {400, 4}, {1000, 8}, {5000, 50}}) {
    const BoundReport report = *PackingGap(k, s);
    EXPECT_TRUE(report.satisfied) << k << "," << s;
    EXPECT_EQ(report.direction, BoundReport::Direction::kLower);
    EXPECT_NEAR(report.bound, s / 8.0 * std::log(static_cast<double>(k) / s),
                1e-12);
  }
}

TEST(PackingGapTest, PreconditionEnforcedUnlessDiagnostic) {
  EXPECT_FALSE(PackingGap(100, 2).ok());
  EXPECT_TRUE(PackingGap(100, 2, PackingMode::kDiagnostic).ok());
  EXPECT_FALSE(PackingGap(10, 11, PackingMode::kDiagnostic).ok());
}

TEST(PlanTest, AlphaScaling) {
  for (PlanScheme scheme : {PlanScheme::kLdp, PlanScheme::kComm}) {
    const double parameter = scheme == PlanScheme::kLdp ? 1.0 : 3.0;
    const SamplePlan base = *PlannedSampleSize(scheme, 1000, 8, 0.2, parameter);
    const SamplePlan doubled =
        *PlannedSampleSize(scheme, 1000, 8, 0.4, parameter);
    EXPECT_NEAR(static_cast<double>(base.total) / doubled.total, 4.0, 1e-5);
    EXPECT_EQ(base.total % 2, 0);
  }
}

TEST(PlanTest, LdpEpsilonScalingAtSmallEpsilon) {
  // (e^eps + 1)/(e^eps - 1) ~ 2/eps, so doubling a small eps quarters n.
  const SamplePlan a = *PlannedSampleSize(PlanScheme::kLdp, 1000, 8, 0.2, 0.01);
  const SamplePlan b = *PlannedSampleSize(PlanScheme::kLdp, 1000, 8, 0.2, 0.02);
  EXPECT_NEAR(static_cast<double>(a.total) / b.total, 4.0, 1e-3);
}

TEST(PlanTest, LdpRiskAtPlannedSizeIsAlpha) {
  const SamplePlan plan = *PlannedSampleSize(PlanScheme::kLdp, 5000, 10, 0.1, 1.0);
  EXPECT_LE(plan.risk_bound, 0.1);
  EXPECT_NEAR(plan.risk_bound, 0.1, 1e-6);
  EXPECT_DOUBLE_EQ(plan.risk_bound, LdpRiskBound(5000, 10, plan.total, 1.0));
}

TEST(PlanTest, CommStagesAndEllSaturation) {
  const SamplePlan plan = *PlannedSampleSize(PlanScheme::kComm, 1000, 8, 0.2, 3);
  const double stage_one = 700000.0 * 64 * std::log(1000.0 / 8) / (0.04 * 8);
  EXPECT_NEAR(plan.stage_one, stage_one, 1e-6 * stage_one);
  EXPECT_NEAR(plan.stage_two, 6400.0 * 64 / (0.04 * 8), 1e-6);
  EXPECT_EQ(plan.total, 2 * static_cast<int64_t>(std::ceil(stage_one)));
  EXPECT_EQ(plan.effective_ell, 3);
  // Each extra bit halves n until 2^ell reaches s.
  const SamplePlan one = *PlannedSampleSize(PlanScheme::kComm, 1000, 8, 0.2, 1);
  const SamplePlan two = *PlannedSampleSize(PlanScheme::kComm, 1000, 8, 0.2, 2);
  const SamplePlan five = *PlannedSampleSize(PlanScheme::kComm, 1000, 8, 0.2, 5);
  EXPECT_NEAR(static_cast<double>(one.total) / two.total, 2.0, 1e-6);
  EXPECT_EQ(five.total, plan.total);
  EXPECT_EQ(five.effective_ell, 4);
}

TEST(PlanTest, CommUsesStageTwoWhenLogTermSmall) {
  // k/s < e: log term clamps to 1 and stage one still dominates 6400.
  const SamplePlan plan = *PlannedSampleSize(PlanScheme::kComm, 10, 8, 0.5, 3);
  EXPECT_NEAR(plan.stage_one, 700000.0 * 64 / (0.25 * 8), 1e-6);
}

TEST(PlanTest, Validation) {
  EXPECT_FALSE(PlannedSampleSize(PlanScheme::kLdp, 10, 11, 0.1, 1.0).ok());
  EXPECT_FALSE(PlannedSampleSize(PlanScheme::kLdp, 10, 2, 1.5, 1.0).ok());
  EXPECT_FALSE(PlannedSampleSize(PlanScheme::kLdp, 10, 2, 0.1, 0.0).ok());
  EXPECT_FALSE(PlannedSampleSize(PlanScheme::kComm, 10, 2, 0.1, 2.5).ok());
  EXPECT_FALSE(PlannedSampleSize(PlanScheme::kComm, 10, 2, 0.1, 31).ok());
}

}  // namespace
}  // namespace sparse_dist_lab

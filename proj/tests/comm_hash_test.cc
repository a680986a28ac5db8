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

#include "sparse_dist_lab/comm_hash.h"

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "gtest/gtest.h"
#include "sparse_dist_lab/distribution.h"
#include "sparse_dist_lab/random_stream.h"

namespace sparse_dist_lab {
namespace {

TEST(EffectiveEllTest, CapsAtLogSPlusOne) {
  EXPECT_EQ(EffectiveEll(5, 1), 1);
  EXPECT_EQ(EffectiveEll(5, 2), 2);
  EXPECT_EQ(EffectiveEll(5, 3), 3);
  EXPECT_EQ(EffectiveEll(5, 4), 3);
  EXPECT_EQ(EffectiveEll(5, 8), 4);
  EXPECT_EQ(EffectiveEll(5, 9), 5);
  EXPECT_EQ(EffectiveEll(2, 256), 2);
}

TEST(HashSchemeTest, Validation) {
  EXPECT_FALSE(HashScheme::Create(1, 0, 10, 2).ok());
  EXPECT_FALSE(HashScheme::Create(1, kMaxMessageBits + 1, 10, 2).ok());
  EXPECT_FALSE(HashScheme::Create(1, 3, 10, 11).ok());
  const HashScheme scheme = *HashScheme::Create(1, 5, 10, 2);
  EXPECT_EQ(scheme.raw_ell(), 5);
  EXPECT_EQ(scheme.ell(), 2);
  EXPECT_EQ(scheme.mask(), 3u);
}

TEST(HashTest, PinnedValues) {
  // Reference values computed from the documented formula with an
  // independent arbitrary-precision implementation.
  const HashScheme five = *HashScheme::Create(12345, 5, 1000, 1000);
  EXPECT_EQ(HashEval(five, 0, 0), 13u);
  EXPECT_EQ(HashEval(five, 1, 0), 8u);
  EXPECT_EQ(HashEval(five, 0, 1), 4u);
  EXPECT_EQ(HashEval(five, 7, 999), 27u);
  EXPECT_EQ(HashEval(five, 123456, 42), 28u);
  const HashScheme wide =
      *HashScheme::Create(0xdeadbeef, 30, 1 << 30, 1 << 30);
  EXPECT_EQ(HashEval(wide, 0, 0), 636120000u);
  EXPECT_EQ(HashEval(wide, 3, 17), 851873264u);
}

TEST(HashTest, CollisionRateIsTwoToMinusEll) {
  const HashScheme scheme = *HashScheme::Create(77, 3, 50, 50);
  constexpr int kUsers = 20000;
  int collisions = 0;
  int pairs = 0;
  for (int i = 0; i < kUsers; ++i) {
    for (int x = 1; x < 50; x += 7) {
      collisions += HashEval(scheme, i, 0) == HashEval(scheme, i, x);
      ++pairs;
    }
  }
  const double rate = static_cast<double>(collisions) / pairs;
  EXPECT_NEAR(rate, 0.125, 5 * std::sqrt(0.125 * 0.875 / pairs));
}

TEST(HashTest, ValuesUniformOverMessages) {
  const HashScheme scheme = *HashScheme::Create(78, 2, 10, 10);
  constexpr int kUsers = 40000;
  std::vector<int> counts(4, 0);
  for (int i = 0; i < kUsers; ++i) ++counts[HashEval(scheme, i, 5)];
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - kUsers / 4.0) * (c - kUsers / 4.0) / (kUsers / 4.0);
  // 0.999 quantile of chi-squared with 3 degrees of freedom.
  EXPECT_LT(chi2, 16.3);
}

TEST(PreimageCountsTest, MatchesDirectRecount) {
  const HashScheme scheme = *HashScheme::Create(5, 3, 40, 8);
  RandomStream stream(6, 0);
  const std::vector<int> samples =
      SampleIid(Distribution::Uniform(40), 500, stream);
  const std::vector<CommMessage> messages = CommEncodeBatch(samples, scheme, 100);
  EXPECT_EQ(messages[0].user_index, 100);
  const std::vector<int64_t> counts = PreimageCounts(messages, scheme);
  for (int x = 0; x < 40; ++x) {
    int64_t expected = 0;
    for (const CommMessage& m : messages) {
      expected += HashEval(scheme, m.user_index, x) == m.value;
    }
    ASSERT_EQ(counts[x], expected);
  }
  // Every user's own symbol is in its preimage.
  int64_t total = 0;
  for (int64_t c : counts) total += c;
  EXPECT_GE(total, static_cast<int64_t>(messages.size()));
}

TEST(PreimageCountsTest, MeanMatchesB) {
  const HashScheme scheme = *HashScheme::Create(9, 2, 20, 4);
  const Distribution p = *Distribution::Create(
      {0.4, 0.3, 0.2, 0.1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0});
  RandomStream stream(10, 0);
  constexpr int kUsers = 40000;
  const std::vector<int> samples = SampleIid(p, kUsers, stream);
  const std::vector<int64_t> counts =
      PreimageCounts(CommEncodeBatch(samples, scheme), scheme);
  for (int x = 0; x < 20; ++x) {
    const double b = BOf(p[x], 2);
    EXPECT_NEAR(static_cast<double>(counts[x]) / kUsers, b,
                5 * std::sqrt(b * (1 - b) / kUsers));
  }
}

TEST(IdealCountsTest, MomentsMatchB) {
  const Distribution p = *Distribution::Create({0.5, 0.5, 0, 0, 0, 0, 0, 0});
  constexpr int kReps = 2000;
  constexpr int64_t kMessages = 1000;
  std::vector<double> mean(8, 0.0);
  RandomStream stream(14, 0);
  for (int r = 0; r < kReps; ++r) {
    const std::vector<int64_t> counts =
        SimulateIdealPreimageCounts(p, kMessages, 3, stream);
    for (int x = 0; x < 8; ++x) mean[x] += static_cast<double>(counts[x]) / kReps;
  }
  for (int x = 0; x < 8; ++x) {
    const double b = BOf(p[x], 3);
    EXPECT_NEAR(mean[x] / kMessages, b, 0.005);
  }
}

TEST(IdealCountsTest, IsDeterministicAndBounded) {
  const Distribution p = Distribution::Uniform(30);
  RandomStream a(15, 0);
  RandomStream b(15, 0);
  const std::vector<int64_t> first = SimulateIdealPreimageCounts(p, 5000, 1, a);
  EXPECT_EQ(first, SimulateIdealPreimageCounts(p, 5000, 1, b));
  for (int64_t c : first) {
    EXPECT_GE(c, 0);
    EXPECT_LE(c, 5000);
  }
}

TEST(CommDecodeTest, RecoversSparseDistribution) {
  const int k = 300;
  const int s = 4;
  const HashScheme scheme = *HashScheme::Create(16, 3, k, s);
  RandomStream target_stream(17, 0);
  const Distribution p = *MakeUniformSparse(k, s, target_stream);
  RandomStream sample_stream(17, 1);
  const std::vector<int> samples = SampleIid(p, 40000, sample_stream);
  const std::vector<CommMessage> messages = CommEncodeBatch(samples, scheme);
  std::span<const CommMessage> all(messages);
  const TwoStageEstimate estimate =
      *CommDecode(all.first(20000), all.subspan(20000), scheme);
  EXPECT_EQ(estimate.selected.size(), static_cast<size_t>(2 * s));
  EXPECT_LT(*TvDistance(estimate.distribution, p), 0.05);
}

TEST(CommDecodeTest, CandidateSetClampsToK) {
  const HashScheme scheme = *HashScheme::Create(16, 2, 5, 4);
  const std::vector<int64_t> counts = {5, 4, 3, 2, 1};
  const TwoStageEstimate estimate =
      *CommDecodeFromCounts(counts, counts, 10, scheme);
  EXPECT_EQ(estimate.selected.size(), 5u);
  const std::vector<int64_t> short_counts = {1, 2};
  EXPECT_FALSE(CommDecodeFromCounts(short_counts, counts, 10, scheme).ok());
}

TEST(MessagePackingTest, BitLayoutIsLittleEndian) {
  const std::vector<CommMessage> messages = {{0, 0b101}, {1, 0b011}, {2, 0b110}};
  const std::vector<uint8_t> bytes = PackMessageValues(messages, 3);
  // Stream bits 0..8: 1 0 1 | 1 1 0 | 0 1 1, so byte 0 = 0b10011101 and
  // byte 1 = 1.
  ASSERT_EQ(bytes.size(), 2u);
  EXPECT_EQ(bytes[0], 0b10011101);
  EXPECT_EQ(bytes[1], 0b1);
}

TEST(MessagePackingTest, RoundTrip) {
  for (int ell : {1, 3, 7, 16, 30}) {
    const HashScheme scheme = *HashScheme::Create(18, ell, 1 << 20, 1 << 20);
    RandomStream stream(19, ell);
    std::vector<int> samples(101);
    for (int& x : samples) x = static_cast<int>(stream.UniformInt(1 << 20));
    const std::vector<CommMessage> messages = CommEncodeBatch(samples, scheme);
    const std::vector<uint8_t> bytes = PackMessageValues(messages, ell);
    EXPECT_EQ(bytes.size(), (101 * static_cast<size_t>(ell) + 7) / 8);
    const std::vector<uint32_t> values =
        *UnpackMessageValues(bytes, ell, messages.size());
    for (size_t j = 0; j < messages.size(); ++j) {
      ASSERT_EQ(values[j], messages[j].value);
    }
  }
  EXPECT_FALSE(UnpackMessageValues(std::vector<uint8_t>(3), 3, 101).ok());
  EXPECT_FALSE(UnpackMessageValues(std::vector<uint8_t>(3), 0, 1).ok());
}

}  // namespace
}  // namespace sparse_dist_lab

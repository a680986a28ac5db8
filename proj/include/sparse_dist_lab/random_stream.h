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

#ifndef SPARSE_DIST_LAB_RANDOM_STREAM_H_
#define SPARSE_DIST_LAB_RANDOM_STREAM_H_

#include <cstdint>
#include <limits>

namespace sparse_dist_lab {

// SplitMix64 finalizer (Stafford "Mix13"). Every seed derivation, stream
// output and public-coin hash in the library goes through this function, so
// its constants are part of the reproducibility contract.
constexpr uint64_t Mix64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline constexpr uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

// Derives a child seed from a parent seed and a tag. Distinct tags give
// statistically independent children.
constexpr uint64_t DeriveSeed(uint64_t parent, uint64_t tag) {
  return Mix64(Mix64(parent ^ 0x5851f42d4c957f2dULL) +
               (tag + 1) * kGoldenGamma);
}

// Counter-based pseudo-random stream. Output i is Mix64(key + (i+1)*gamma)
// where key = DeriveSeed(master_seed, stream_id); the sequence is a pure
// function of (master_seed, stream_id) on every platform.
//
// Satisfies the UniformRandomBitGenerator requirements so it can drive
// boost::random distributions (whose algorithms are fixed code, unlike the
// implementation-defined std:: distributions).
class RandomStream {
 public:
  using result_type = uint64_t;

  RandomStream(uint64_t master_seed, uint64_t stream_id)
      : key_(DeriveSeed(master_seed, stream_id)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() { return NextU64(); }

  uint64_t NextU64() {
    ++counter_;
    return Mix64(key_ + counter_ * kGoldenGamma);
  }

  // Uniform in [0, 1) with 53 bits of resolution.
  double UniformDouble() {
    return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound). bound must be positive. Lemire's
  // multiply-shift with rejection, so the result is exactly uniform.
  uint64_t UniformInt(uint64_t bound);

  bool Bernoulli(double p) { return UniformDouble() < p; }

  uint64_t counter() const { return counter_; }

 private:
  uint64_t key_;
  uint64_t counter_ = 0;
};

}  // namespace sparse_dist_lab

#endif  // SPARSE_DIST_LAB_RANDOM_STREAM_H_

// Copyright 2026 The uavsec Authors
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

#pragma once

// Counter-based random numbers (Philox4x32-7, Salmon et al. 2011; seven rounds
// already pass BigCrush).
//
// Every stream is addressed by (seed, tag, realization), and every fading
// coefficient by (seed, realization, tx, rx). Nothing depends on the order in
// which realizations are evaluated, which keeps parallel runs deterministic.

#include <array>
#include <cmath>
#include <cstdint>

namespace uavsec {

class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter Generate(Counter ctr, Key key) {
#pragma GCC unroll 7
    for (int round = 0; round < 7; ++round) {
      const std::uint64_t p0 = std::uint64_t{kM0} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{kM1} * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
             static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
             static_cast<std::uint32_t>(p0)};
      key[0] += kW0;
      key[1] += kW1;
    }
    return ctr;
  }

 private:
  static constexpr std::uint32_t kM0 = 0xD2511F53u;
  static constexpr std::uint32_t kM1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kW0 = 0x9E3779B9u;
  static constexpr std::uint32_t kW1 = 0xBB67AE85u;
};

// Stream purposes; distinct tags give statistically independent streams.
enum class StreamTag : std::uint32_t {
  kInterferers = 1,
  kEavesdroppers = 2,
  kFading = 3,
  kAngularOffset = 4,
  kSampling = 5,
};

inline std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline Philox4x32::Key DeriveKey(std::uint64_t seed, StreamTag tag) {
  const std::uint64_t k = SplitMix64(seed ^ SplitMix64(static_cast<std::uint64_t>(tag)));
  return {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
}

// Uniform on the open interval (0, 1) from 53 random bits.
inline double ToUniform(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t bits = ((std::uint64_t{hi} << 32) | lo) >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

// Sequential stream for one (seed, tag, realization) triple.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, StreamTag tag, std::uint64_t realization)
      : key_(DeriveKey(seed, tag)),
        realization_lo_(static_cast<std::uint32_t>(realization)),
        realization_hi_(static_cast<std::uint32_t>(realization >> 32)) {}

  std::uint32_t NextU32() {
    if (used_ >= 4) Refill();
    return block_[used_++];
  }

  // 53-bit uniform on (0, 1).
  double Uniform() {
    const std::uint32_t hi = NextU32();
    return ToUniform(hi, NextU32());
  }

  double Exponential() { return -std::log(Uniform()); }

 private:
  void Refill() {
    block_ = Philox4x32::Generate(
        {static_cast<std::uint32_t>(index_), static_cast<std::uint32_t>(index_ >> 32),
         realization_lo_, realization_hi_},
        key_);
    ++index_;
    used_ = 0;
  }

  Philox4x32::Key key_;
  std::uint32_t realization_lo_;
  std::uint32_t realization_hi_;
  std::uint64_t index_ = 0;
  Philox4x32::Counter block_{};
  int used_ = 4;
};

// Unit-mean exponential fading coefficient of the link tx -> rx.
// Transmitter 0 is the typical UAV and k >= 1 the k-th interferer in radial
// order; receiver 0 is the legitimate receiver and e >= 1 an eavesdropper.
class FadingSource {
 public:
  explicit FadingSource(std::uint64_t seed) : key_(DeriveKey(seed, StreamTag::kFading)) {}

  double Draw(std::uint64_t realization, std::uint32_t tx, std::uint32_t rx) const {
    const auto out = Philox4x32::Generate(
        {tx, rx, static_cast<std::uint32_t>(realization),
         static_cast<std::uint32_t>(realization >> 32)},
        key_);
    return -std::log(ToUniform(out[0], out[1]));
  }

 private:
  Philox4x32::Key key_;
};

}  // namespace uavsec

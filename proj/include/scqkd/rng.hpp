// Copyright 2026 The scqkd Authors
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

#ifndef SCQKD_RNG_HPP
#define SCQKD_RNG_HPP

#include <cstdint>

namespace scqkd {

/// Fixed variate slots consumed by every round, in this order. A round
/// always owns all six slots whether or not it reads them, so a transcript
/// can be replayed from (seed, round index) alone.
enum class Variate : std::uint64_t {
    AlicePick = 0,
    EveCoin = 1,
    EveEnsemble = 2,
    EveOutcome = 3,
    BobOutcome = 4,
    Announcement = 5,
};

inline constexpr std::uint64_t kVariatesPerRound = 6;

/// SplitMix64 output function (Steele, Lea & Flood).
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Counter-based randomness for one protocol round: variate v of round r
/// under seed s is a pure function of (s, r, v). No state is carried
/// between rounds, so rounds can run on any thread in any order.
class RoundStream {
  public:
    RoundStream(std::uint64_t seed, std::uint64_t round) noexcept
        : key_(splitmix64(splitmix64(seed) ^ round)) {}

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform(Variate v) const noexcept {
        const std::uint64_t bits = splitmix64(key_ + static_cast<std::uint64_t>(v) * 0xd1b54a32d192ed03ULL);
        return static_cast<double>(bits >> 11) * 0x1.0p-53;
    }

  private:
    std::uint64_t key_;
};

}  // namespace scqkd

#endif  // SCQKD_RNG_HPP

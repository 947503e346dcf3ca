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

// Seeded Monte Carlo execution of protocol rounds.
//
// Round r of a trial draws its randomness from RoundStream(seed, r), so
// the result depends only on the configuration: run_trials (OpenMP) and
// run_trials_serial (reference) return identical statistics for any
// thread count.

#ifndef SCQKD_MONTECARLO_HPP
#define SCQKD_MONTECARLO_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "scqkd/adversary.hpp"
#include "scqkd/analysis.hpp"
#include "scqkd/protocol.hpp"
#include "scqkd/round.hpp"

namespace scqkd {

struct TrialConfig {
    ProtocolKind protocol = ProtocolKind::Trine;
    EveStrategy eve;
    ChannelModel channel;
    std::uint64_t n_rounds = 1;
    std::uint64_t seed = 0;

    /// Throws Error(InvalidParameter) when n_rounds == 0.
    void validate() const;
};

struct Rate {
    double value = 0.0;
    double std_error = 0.0;
};

struct SampleStats {
    std::uint64_t rounds = 0;
    std::uint64_t sifted = 0;
    /// Sifted rounds with alice_bit != bob_bit.
    std::uint64_t errors = 0;
    std::uint64_t eve_correct_a = 0;
    std::uint64_t eve_correct_b = 0;
    std::uint64_t eve_abstain = 0;
    /// Sifted counts by (a, b, e), indexed 6a + 3b + e; partitions `sifted`.
    std::array<std::uint64_t, 12> table{};
    /// Sifted counts by (announcement_code, alice_bit).
    std::array<std::array<std::uint64_t, 2>, kAnnouncementCodes> announcement_bits{};

    void record(const RoundTranscript &t, std::optional<int> eve_guess);
    /// Commutative, associative merge.
    SampleStats &operator+=(const SampleStats &o);
    friend bool operator==(const SampleStats &, const SampleStats &) = default;

    bool consistent() const;

    Rate sift_rate() const;
    Rate qber() const;
    Rate eve_agree_a() const;
    Rate eve_agree_b() const;
    Rate eve_abstain_rate() const;
};

SampleStats run_trials(const TrialConfig &config);
SampleStats run_trials_serial(const TrialConfig &config);

/// Bits of information the public announcement carries about Alice's key
/// bit, estimated from sifted counts (plug-in estimator).
double announcement_key_information(const SampleStats &stats);

struct ZScore {
    std::string statistic;
    double observed = 0.0;
    double expected = 0.0;
    std::uint64_t trials = 0;
    double z = 0.0;
    bool flagged = false;
};

struct ComparisonReport {
    std::vector<ZScore> entries;
    bool any_flagged = false;
    double max_abs_z = 0.0;
};

/// Binomial z-scores of sift rate, qber, Eve agreement with each party and
/// Eve's abstention rate against the exact distribution. An expected value of
/// exactly 0 or 1 gives z = 0 on a match and infinity otherwise.
ComparisonReport compare_to_oracle(const SampleStats &stats, const JointDistribution &joint, double flag_at = 4.0);

}  // namespace scqkd

#endif  // SCQKD_MONTECARLO_HPP

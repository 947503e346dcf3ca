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

#include "scqkd/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "scqkd/error.hpp"

namespace scqkd {

void TrialConfig::validate() const {
    if (n_rounds == 0) throw Error(ErrorKind::InvalidParameter, "n_rounds must be at least 1");
}

void SampleStats::record(const RoundTranscript &t, std::optional<int> eve_guess) {
    ++rounds;
    if (!t.accepted) return;
    ++sifted;
    const int a = *t.alice_bit;
    const int b = *t.bob_bit;
    const int e = eve_guess.value_or(kAbstain);
    if (a != b) ++errors;
    if (e == kAbstain) ++eve_abstain;
    if (e == a) ++eve_correct_a;
    if (e == b) ++eve_correct_b;
    ++table[static_cast<std::size_t>(6 * a + 3 * b + e)];
    ++announcement_bits[static_cast<std::size_t>(announcement_code(t.announcement))][static_cast<std::size_t>(a)];
}

SampleStats &SampleStats::operator+=(const SampleStats &o) {
    rounds += o.rounds;
    sifted += o.sifted;
    errors += o.errors;
    eve_correct_a += o.eve_correct_a;
    eve_correct_b += o.eve_correct_b;
    eve_abstain += o.eve_abstain;
    for (std::size_t i = 0; i < table.size(); ++i) table[i] += o.table[i];
    for (std::size_t i = 0; i < announcement_bits.size(); ++i) {
        announcement_bits[i][0] += o.announcement_bits[i][0];
        announcement_bits[i][1] += o.announcement_bits[i][1];
    }
    return *this;
}

bool SampleStats::consistent() const {
    if (sifted > rounds || errors > sifted) return false;
    std::uint64_t cells = 0, err = 0, abstain = 0, ca = 0, cb = 0, ann = 0;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            for (int e = 0; e < 3; ++e) {
                const auto c = table[static_cast<std::size_t>(6 * a + 3 * b + e)];
                cells += c;
                if (a != b) err += c;
                if (e == kAbstain) abstain += c;
                if (e == a) ca += c;
                if (e == b) cb += c;
            }
        }
    }
    for (const auto &row : announcement_bits) ann += row[0] + row[1];
    return cells == sifted && ann == sifted && err == errors && abstain == eve_abstain && ca == eve_correct_a &&
           cb == eve_correct_b;
}

namespace {

Rate binomial(std::uint64_t hits, std::uint64_t trials) {
    if (trials == 0) return {};
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(hits) / n;
    return {p, std::sqrt(p * (1.0 - p) / n)};
}

std::optional<int> guess_for(const TrialConfig &config, const RoundTranscript &t) {
    if (!t.accepted || !t.eve) return std::nullopt;
    return eve_guess(*t.eve, config.protocol, t.announcement, true);
}

SampleStats run_range(const TrialConfig &config, std::uint64_t begin, std::uint64_t end) {
    SampleStats stats;
    for (std::uint64_t r = begin; r < end; ++r) {
        const RoundTranscript t = run_round(config.protocol, config.eve, config.channel, RoundStream(config.seed, r));
        stats.record(t, guess_for(config, t));
    }
    return stats;
}

}  // namespace

Rate SampleStats::sift_rate() const { return binomial(sifted, rounds); }
Rate SampleStats::qber() const { return binomial(errors, sifted); }
Rate SampleStats::eve_agree_a() const { return binomial(eve_correct_a, sifted); }
Rate SampleStats::eve_agree_b() const { return binomial(eve_correct_b, sifted); }
Rate SampleStats::eve_abstain_rate() const { return binomial(eve_abstain, sifted); }

SampleStats run_trials_serial(const TrialConfig &config) {
    config.validate();
    return run_range(config, 0, config.n_rounds);
}

SampleStats run_trials(const TrialConfig &config) {
    config.validate();
    // Fixed-size chunks so the partition never depends on the thread count;
    // integer counts make the merge order irrelevant anyway.
    constexpr std::uint64_t kChunk = 1 << 14;
    const std::uint64_t chunks = (config.n_rounds + kChunk - 1) / kChunk;
    SampleStats total;
#pragma omp declare reduction(merge:SampleStats : omp_out += omp_in) initializer(omp_priv = SampleStats{})
#pragma omp parallel for schedule(dynamic) reduction(merge : total)
    for (std::uint64_t c = 0; c < chunks; ++c) {
        const std::uint64_t begin = c * kChunk;
        const std::uint64_t end = std::min(config.n_rounds, begin + kChunk);
        total += run_range(config, begin, end);
    }
    return total;
}

double announcement_key_information(const SampleStats &stats) {
    std::vector<std::vector<double>> joint;
    const double n = static_cast<double>(stats.sifted);
    if (n == 0.0) return 0.0;
    for (const auto &row : stats.announcement_bits) {
        if (row[0] + row[1] == 0) continue;
        joint.push_back({static_cast<double>(row[0]) / n, static_cast<double>(row[1]) / n});
    }
    return mutual_information(joint);
}

ComparisonReport compare_to_oracle(const SampleStats &stats, const JointDistribution &joint, double flag_at) {
    ComparisonReport report;
    auto add = [&](std::string name, std::uint64_t hits, std::uint64_t trials, double expected) {
        ZScore z{std::move(name), 0.0, expected, trials, 0.0, false};
        if (trials > 0) {
            z.observed = static_cast<double>(hits) / static_cast<double>(trials);
            const double var = expected * (1.0 - expected) / static_cast<double>(trials);
            if (var > 0.0)
                z.z = (z.observed - expected) / std::sqrt(var);
            else
                z.z = std::abs(z.observed - expected) < 1e-12 ? 0.0 : std::numeric_limits<double>::infinity();
        }
        z.flagged = std::abs(z.z) > flag_at;
        report.any_flagged = report.any_flagged || z.flagged;
        report.max_abs_z = std::max(report.max_abs_z, std::abs(z.z));
        report.entries.push_back(std::move(z));
    };
    add("p_sift", stats.sifted, stats.rounds, joint.p_sift);
    add("qber", stats.errors, stats.sifted, joint.qber());
    add("p_ae", stats.eve_correct_a, stats.sifted, joint.p_ae());
    add("p_be", stats.eve_correct_b, stats.sifted, joint.p_be());
    add("p_noguess", stats.eve_abstain, stats.sifted, joint.p_noguess());
    return report;
}

}  // namespace scqkd

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

#include <array>
#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "scqkd/adversary.hpp"
#include "scqkd/analysis.hpp"
#include "scqkd/error.hpp"
#include "scqkd/rng.hpp"
#include "test_support.hpp"

using namespace scqkd;
using scqkd::testing::thrown_kind;

namespace {

constexpr std::array kProtocols{ProtocolKind::Trine, ProtocolKind::Tetrahedron, ProtocolKind::BB84,
                                ProtocolKind::SixState};

DensityMatrix signal(ProtocolKind protocol, int j) { return pure_from_bloch(alice_code(protocol).state(j)); }

int key_of(const EveRecord &r) {
    if (!r.intercepted) return 0;
    return (*r.ensemble == EnsembleSide::Alice ? 10 : 20) + *r.outcome;
}

}  // namespace

TEST_CASE("strategy validation and names") {
    CHECK(thrown_kind([] { EveStrategy::intercept_resend(1.5); }) == ErrorKind::InvalidParameter);
    CHECK(thrown_kind([] { EveStrategy::gentle(-0.1); }) == ErrorKind::InvalidParameter);
    CHECK(to_string(AttackKind::InterceptResend) == "standard");
    CHECK(parse_mix("bob") == EnsembleMix::BobOnly);
    CHECK_FALSE(parse_mix("carol").has_value());
}

TEST_CASE("gentle measurement limits") {
    const auto trine = alice_code(ProtocolKind::Trine);
    const auto full = gentle_povm(trine, 1.0);
    const auto standard = code_povm(trine);
    for (std::size_t m = 0; m < 3; ++m) CHECK(full.element(m).matrix().max_abs_diff(standard.element(m).matrix()) < 1e-15);

    const auto flat = gentle_povm(trine, 0.0);
    for (std::size_t m = 0; m < 3; ++m)
        CHECK(flat.element(m).matrix().max_abs_diff((1.0 / 3.0) * Matrix2::identity()) < 1e-15);

    const auto half = gentle_povm(trine, 0.5);
    const auto eig = hermitian_eigenvalues(half.element(0).matrix());
    CHECK(eig[0] == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    CHECK(eig[1] == doctest::Approx(1.0 / 2.0).epsilon(1e-14));
}

TEST_CASE("q = 0 leaves every signal untouched") {
    for (auto protocol : kProtocols)
        for (int j = 1; j <= signal_count(protocol); ++j) {
            const auto rho = signal(protocol, j);
            for (std::uint64_t r = 0; r < 50; ++r) {
                const RoundStream s(3, r);
                const auto ir = intercept(protocol, EveStrategy::intercept_resend(0.0), rho, s);
                CHECK_FALSE(ir.record.intercepted);
                CHECK(ir.state.matrix().max_abs_diff(rho.matrix()) == 0.0);
                const auto g = intercept(protocol, EveStrategy::gentle(0.0), rho, s);
                CHECK(g.state.matrix().max_abs_diff(rho.matrix()) < 1e-15);
            }
        }
}

TEST_CASE("full intercept/resend on the Alice ensemble") {
    const auto rho = signal(ProtocolKind::Trine, 2);
    const auto eve = EveStrategy::intercept_resend(1.0, EnsembleMix::AliceOnly);
    const auto branches = eve_branches(ProtocolKind::Trine, eve, rho);
    REQUIRE(branches.size() == 3);
    for (const auto &b : branches) {
        CHECK(b.record.intercepted);
        CHECK(b.weight == doctest::Approx(*b.record.outcome == 2 ? 2.0 / 3 : 1.0 / 6).epsilon(1e-12));
        CHECK(b.state.matrix().max_abs_diff(signal(ProtocolKind::Trine, *b.record.outcome).matrix()) < 1e-12);
    }
    constexpr int kDraws = 300'000;
    int hits = 0;
    for (int r = 0; r < kDraws; ++r) {
        const auto out = intercept(ProtocolKind::Trine, eve, rho, RoundStream(4, r));
        REQUIRE(out.record.intercepted);
        if (*out.record.outcome == 2) ++hits;
    }
    CHECK(std::abs(hits / double(kDraws) - 2.0 / 3) < 3 * std::sqrt(2.0 / 9 / kDraws));
}

TEST_CASE("branch weights sum to one and match sampled frequencies") {
    std::mt19937_64 rng(31);
    const std::array strategies{EveStrategy::intercept_resend(0.4, EnsembleMix::Symmetric),
                                EveStrategy::intercept_resend(0.8, EnsembleMix::BobOnly),
                                EveStrategy::gentle(0.6, EnsembleMix::Symmetric)};
    constexpr int kDraws = 100'000;
    for (auto protocol : {ProtocolKind::Trine, ProtocolKind::Tetrahedron, ProtocolKind::SixState}) {
        for (const auto &eve : strategies) {
            const auto rho = DensityMatrix::from_bloch(testing::random_ball_vector(rng));
            const auto branches = eve_branches(protocol, eve, rho);
            double total = 0.0;
            std::map<int, double> expected;
            for (const auto &b : branches) {
                total += b.weight;
                expected[key_of(b.record)] += b.weight;
            }
            CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
            std::map<int, int> counts;
            for (int r = 0; r < kDraws; ++r) ++counts[key_of(intercept(protocol, eve, rho, RoundStream(6, r)).record)];
            for (const auto &[key, c] : counts) REQUIRE(expected.count(key) == 1);
            for (const auto &[key, p] : expected) {
                const double sigma = std::sqrt(p * (1 - p) / kDraws);
                CHECK(std::abs(counts[key] / double(kDraws) - p) < 4 * sigma + 1e-12);
            }
        }
    }
}

TEST_CASE("intercept/resend equals one combined measurement") {
    // With q, Eve's action is the single measurement {q w_s (2/n) P_m} plus
    // the "pass" element (1 - q) I; branch weights must be its probabilities.
    std::mt19937_64 rng(37);
    for (auto protocol : {ProtocolKind::Trine, ProtocolKind::Tetrahedron}) {
        const double q = 0.35;
        const auto eve = EveStrategy::intercept_resend(q, EnsembleMix::Symmetric);
        std::vector<PovmElement> elements{PovmElement::from_matrix(Complex(1 - q) * Matrix2::identity())};
        std::vector<std::string> labels{"pass"};
        std::vector<int> keys{0};
        for (auto side : {EnsembleSide::Alice, EnsembleSide::Bob}) {
            const auto &code = measuring_code(protocol, side);
            for (int m = 1; m <= code.size(); ++m) {
                elements.push_back(PovmElement::weighted_projector(code.state(m), q * 0.5 * 2.0 / code.size()));
                labels.push_back(std::to_string(m));
                keys.push_back(key_of(EveRecord::measured(side, m)));
            }
        }
        const Povm combined(elements, labels);
        for (int trial = 0; trial < 20; ++trial) {
            const auto rho = DensityMatrix::from_bloch(testing::random_ball_vector(rng));
            std::map<int, double> branch;
            for (const auto &b : eve_branches(protocol, eve, rho)) branch[key_of(b.record)] += b.weight;
            for (std::size_t i = 0; i < combined.size(); ++i)
                CHECK(std::abs(born_probability(rho, combined.element(i)) - branch[keys[i]]) < 1e-12);
        }
    }
}

TEST_CASE("Eve's guesses") {
    const auto alice1 = EveRecord::measured(EnsembleSide::Alice, 1);
    // Her candidate signal survives: the bit follows from the inferred outcome.
    CHECK(eve_guess(alice1, ProtocolKind::Trine, ExcludedOutcome{3}, true) == trine_key_bit(1, 2, 3));
    CHECK(eve_guess(alice1, ProtocolKind::Trine, ExcludedOutcome{2}, true) == trine_key_bit(1, 3, 2));
    // Her outcome was announced: abstain.
    CHECK_FALSE(eve_guess(EveRecord::measured(EnsembleSide::Alice, 2), ProtocolKind::Trine, ExcludedOutcome{2}, true));
    CHECK_FALSE(eve_guess(alice1, ProtocolKind::Trine, ExcludedOutcome{3}, false));
    CHECK_FALSE(eve_guess(EveRecord::passed(), ProtocolKind::Trine, ExcludedOutcome{3}, true));
    // Bob side: her outcome stands in for Bob's.
    CHECK(eve_guess(EveRecord::measured(EnsembleSide::Bob, 2), ProtocolKind::Trine, ExcludedOutcome{3}, true) ==
          trine_key_bit(1, 2, 3));
    CHECK(eve_guess(EveRecord::measured(EnsembleSide::Alice, 1), ProtocolKind::Tetrahedron, ExcludedPair{3, 4}, true) ==
          tetra_key_bit(1, 2, 3, 4));
    // Basis protocols: guess only in the announced basis.
    CHECK(eve_guess(EveRecord::measured(EnsembleSide::Alice, 4), ProtocolKind::BB84, BasisChoice{1}, true) == 1);
    CHECK_FALSE(eve_guess(EveRecord::measured(EnsembleSide::Alice, 4), ProtocolKind::BB84, BasisChoice{0}, true));
}

TEST_CASE("full Alice-side interception of the trine, exact outcome fractions") {
    const auto joint = enumerate_joint_exact(ProtocolKind::Trine, {Rational(1), EnsembleMix::AliceOnly});
    CHECK(joint.p_sift == Rational(7, 12));
    CHECK(joint.at(0, 0, 0) + joint.at(1, 1, 1) == Rational(4, 7));
    CHECK(joint.at(0, 1, 1) + joint.at(1, 0, 0) == Rational(1, 7));
    CHECK(joint.at(0, 1, 0) + joint.at(1, 0, 1) == Rational(0));
    CHECK(joint.at(0, 0, kAbstain) + joint.at(1, 1, kAbstain) == Rational(1, 7));
    CHECK(joint.at(0, 1, kAbstain) + joint.at(1, 0, kAbstain) == Rational(1, 7));
    CHECK(joint.p_noguess() == Rational(2, 7));
    // Whenever she guesses she matches Bob.
    CHECK(joint.p_be() == Rational(1) - joint.p_noguess());
}

TEST_CASE("symmetric mixing treats Alice and Bob alike") {
    for (auto protocol : kProtocols)
        for (int i = 0; i <= 10; ++i) {
            const auto joint = enumerate_joint_exact(protocol, {Rational(i, 10), EnsembleMix::Symmetric});
            CHECK(joint.p_ae() == joint.p_be());
        }
}

TEST_CASE("gentle at full strength coincides with intercept/resend") {
    for (auto protocol : kProtocols)
        for (auto mix : {EnsembleMix::AliceOnly, EnsembleMix::BobOnly, EnsembleMix::Symmetric}) {
            const auto g = enumerate_joint(protocol, EveStrategy::gentle(1.0, mix), ChannelModel::ideal());
            const auto s = enumerate_joint(protocol, EveStrategy::intercept_resend(1.0, mix), ChannelModel::ideal());
            CHECK(std::abs(g.p_sift - s.p_sift) < 1e-12);
            for (std::size_t i = 0; i < g.table.size(); ++i) CHECK(std::abs(g.table[i] - s.table[i]) < 1e-12);
        }
}

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

// Branch enumeration shared by the floating-point and rational routes.
//
// A Physics policy supplies the scalar type, Eve's branches for a given
// signal, the channel, and Bob's outcome probabilities. The combinatorics
// (announcements, sifting, bit inference, Eve's guess) live here once.

#ifndef SCQKD_SRC_ENUMERATION_HPP
#define SCQKD_SRC_ENUMERATION_HPP

#include <cmath>
#include <map>
#include <tuple>
#include <type_traits>
#include <vector>

#include "scqkd/analysis.hpp"
#include "scqkd/error.hpp"

namespace scqkd::detail {

template <class T>
struct Branch {
    T weight{};
    EveRecord eve;
    Announcement ann;
    bool accepted = false;
    int alice_bit = 0;
    int bob_bit = 0;
};

template <class Physics>
std::vector<Branch<typename Physics::Scalar>> enumerate_branches(ProtocolKind protocol, const Physics &physics) {
    using T = typename Physics::Scalar;
    const int n = signal_count(protocol);
    std::vector<Branch<T>> out;
    for (int j = 1; j <= n; ++j) {
        const T w_signal = T(1) / T(n);
        for (const auto &eve : physics.eve_branches(j)) {
            const auto received = physics.channel(eve.state);
            for (int k = 1; k <= n; ++k) {
                const T pk = physics.bob_probability(received, k);
                if (pk == T(0)) continue;
                for (const auto &[ann, w_ann] : announcement_distribution(protocol, k)) {
                    Branch<T> b;
                    b.weight = w_signal * eve.weight * pk * Physics::from_rational(w_ann);
                    b.eve = eve.record;
                    b.ann = ann;
                    b.accepted = sift_accept(protocol, j, ann);
                    if (b.accepted) {
                        const BitPair bits = derive_bits(protocol, j, k, ann);
                        b.alice_bit = bits.alice;
                        b.bob_bit = bits.bob;
                    }
                    out.push_back(b);
                }
            }
        }
    }
    return out;
}

template <class T>
bool is_tie(const T &a, const T &b) {
    if constexpr (std::is_floating_point_v<T>) {
        return std::abs(a - b) <= 1e-12 * (a + b);
    } else {
        return a == b;
    }
}

// Eve's observation on a sifted round: side, outcome, announcement.
using Observation = std::tuple<int, int, int>;

template <class T>
Observation observation_of(const Branch<T> &b) {
    return {*b.eve.ensemble == EnsembleSide::Alice ? 0 : 1, *b.eve.outcome, announcement_code(b.ann)};
}

// The bit Eve targets under the posterior rule: the impersonated party's.
template <class T>
int target_bit(const Branch<T> &b) {
    return *b.eve.ensemble == EnsembleSide::Alice ? b.alice_bit : b.bob_bit;
}

template <class T>
JointDistributionT<T> accumulate_joint(ProtocolKind protocol, const std::vector<Branch<T>> &branches, GuessRule rule) {
    std::map<Observation, std::array<T, 2>> posterior;
    if (rule == GuessRule::Posterior) {
        for (const auto &b : branches) {
            if (!b.accepted || !b.eve.intercepted) continue;
            posterior[observation_of(b)][static_cast<std::size_t>(target_bit(b))] += b.weight;
        }
    }

    JointDistributionT<T> joint;
    for (const auto &b : branches) {
        if (!b.accepted) continue;
        joint.p_sift += b.weight;
        int e = kAbstain;
        if (rule == GuessRule::Index) {
            if (auto g = eve_guess(b.eve, protocol, b.ann, true)) e = *g;
        } else if (b.eve.intercepted) {
            const auto &w = posterior.at(observation_of(b));
            if (!is_tie(w[0], w[1])) e = w[0] > w[1] ? 0 : 1;
        }
        joint.at(b.alice_bit, b.bob_bit, e) += b.weight;
    }
    if (joint.p_sift == T(0)) throw Error(ErrorKind::UndefinedConditional, "no round survives sifting");
    for (auto &v : joint.table) v /= joint.p_sift;
    return joint;
}

}  // namespace scqkd::detail

#endif  // SCQKD_SRC_ENUMERATION_HPP

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

// Eavesdropper models.
//
// InterceptResend: with probability q Eve measures the signal with one of
// the two protocol ensembles and resends the pure state she found; with
// probability 1 - q the signal passes untouched.
//
// Gentle: Eve always measures, using the smeared elements
//   E_m = q (2/n) |psi_m><psi_m| + ((1 - q)/n) I
// and forwards the square-root post-measurement state. At q = 1 this
// reduces to full intercept/resend; at q = 0 it does nothing.
//
// In both cases Eve listens to the public announcements and then either
// guesses the key bit or abstains (eve_guess).

#ifndef SCQKD_ADVERSARY_HPP
#define SCQKD_ADVERSARY_HPP

#include <optional>
#include <string_view>
#include <vector>

#include "scqkd/bloch.hpp"
#include "scqkd/protocol.hpp"
#include "scqkd/rng.hpp"

namespace scqkd {

/// Which ensemble Eve measures with. Symmetric flips a fair coin per signal.
enum class EnsembleMix { AliceOnly, BobOnly, Symmetric };
enum class EnsembleSide { Alice, Bob };
enum class AttackKind { None, InterceptResend, Gentle };

std::string_view to_string(EnsembleMix mix);
std::string_view to_string(AttackKind kind);
std::optional<EnsembleMix> parse_mix(std::string_view name);

struct EveStrategy {
    AttackKind kind = AttackKind::None;
    /// Interception fraction (InterceptResend) or strength (Gentle).
    double q = 0.0;
    EnsembleMix mix = EnsembleMix::Symmetric;

    static EveStrategy none() { return {}; }
    static EveStrategy intercept_resend(double q, EnsembleMix mix = EnsembleMix::Symmetric);
    static EveStrategy gentle(double q, EnsembleMix mix = EnsembleMix::Symmetric);
};

struct EveRecord {
    bool intercepted = false;
    std::optional<EnsembleSide> ensemble;
    /// 1-based outcome within the measuring ensemble; present iff intercepted.
    std::optional<int> outcome;

    static EveRecord passed() { return {}; }
    static EveRecord measured(EnsembleSide side, int outcome) { return {true, side, outcome}; }
};

/// Alice side measures with Alice's code; Bob side with Bob's measurement
/// code (the dual for trine/tetrahedron, the same set for BB84/six-state).
const SphericalCode &measuring_code(ProtocolKind protocol, EnsembleSide side);

/// Probability of each side under a mix; sides with zero weight are omitted.
std::vector<std::pair<EnsembleSide, double>> ensemble_weights(EnsembleMix mix);

Povm gentle_povm(const SphericalCode &code, double q);

struct Interception {
    DensityMatrix state;
    EveRecord record;
};

/// Samples Eve's action on one signal. Reads Variate::EveCoin,
/// Variate::EveEnsemble and Variate::EveOutcome from `stream`.
Interception intercept(ProtocolKind protocol, const EveStrategy &strategy, const DensityMatrix &rho,
                       const RoundStream &stream);

struct EveBranch {
    double weight = 0.0;
    EveRecord record;
    DensityMatrix state;
};

/// Every outcome of intercept() with its probability; weights sum to 1.
/// Zero-probability outcomes are omitted.
std::vector<EveBranch> eve_branches(ProtocolKind protocol, const EveStrategy &strategy, const DensityMatrix &rho);

/// Eve's key-bit guess on a sifted round, or nullopt to abstain.
///
/// Alice side: her outcome is taken as Alice's signal unless the
/// announcement names it; the remaining index is then Bob's outcome and
/// the protocol bit is computed from the pair. Bob side is the mirror
/// image with her outcome as Bob's. Basis protocols: she answers with her
/// outcome's bit when its basis matches the announced one.
std::optional<int> eve_guess(const EveRecord &record, ProtocolKind protocol, const Announcement &ann, bool accepted);

}  // namespace scqkd

#endif  // SCQKD_ADVERSARY_HPP

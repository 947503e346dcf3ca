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

#include "scqkd/adversary.hpp"

#include <string>

#include "scqkd/error.hpp"

namespace scqkd {

std::string_view to_string(EnsembleMix mix) {
    switch (mix) {
    case EnsembleMix::AliceOnly: return "alice";
    case EnsembleMix::BobOnly: return "bob";
    case EnsembleMix::Symmetric: return "symmetric";
    }
    return "unknown";
}

std::string_view to_string(AttackKind kind) {
    switch (kind) {
    case AttackKind::None: return "none";
    case AttackKind::InterceptResend: return "standard";
    case AttackKind::Gentle: return "gentle";
    }
    return "unknown";
}

std::optional<EnsembleMix> parse_mix(std::string_view name) {
    if (name == "alice") return EnsembleMix::AliceOnly;
    if (name == "bob") return EnsembleMix::BobOnly;
    if (name == "symmetric") return EnsembleMix::Symmetric;
    return std::nullopt;
}

namespace {

double checked_strength(double q) {
    if (!(q >= 0.0 && q <= 1.0)) throw Error(ErrorKind::InvalidParameter, "attack parameter q outside [0,1]");
    return q;
}

EnsembleSide pick_side(EnsembleMix mix, double u) {
    switch (mix) {
    case EnsembleMix::AliceOnly: return EnsembleSide::Alice;
    case EnsembleMix::BobOnly: return EnsembleSide::Bob;
    case EnsembleMix::Symmetric: return u < 0.5 ? EnsembleSide::Alice : EnsembleSide::Bob;
    }
    return EnsembleSide::Alice;
}

const Povm &measuring_povm(ProtocolKind protocol, EnsembleSide side) {
    static const auto cache = [] {
        std::vector<Povm> povms;
        for (auto kind : {ProtocolKind::Trine, ProtocolKind::Tetrahedron, ProtocolKind::BB84, ProtocolKind::SixState}) {
            povms.push_back(code_povm(alice_code(kind)));
            povms.push_back(code_povm(bob_code(kind)));
        }
        return povms;
    }();
    return cache[2 * static_cast<std::size_t>(protocol) + (side == EnsembleSide::Alice ? 0 : 1)];
}

}  // namespace

EveStrategy EveStrategy::intercept_resend(double q, EnsembleMix mix) {
    return {AttackKind::InterceptResend, checked_strength(q), mix};
}

EveStrategy EveStrategy::gentle(double q, EnsembleMix mix) { return {AttackKind::Gentle, checked_strength(q), mix}; }

const SphericalCode &measuring_code(ProtocolKind protocol, EnsembleSide side) {
    return side == EnsembleSide::Alice ? alice_code(protocol) : bob_code(protocol);
}

std::vector<std::pair<EnsembleSide, double>> ensemble_weights(EnsembleMix mix) {
    switch (mix) {
    case EnsembleMix::AliceOnly: return {{EnsembleSide::Alice, 1.0}};
    case EnsembleMix::BobOnly: return {{EnsembleSide::Bob, 1.0}};
    case EnsembleMix::Symmetric: return {{EnsembleSide::Alice, 0.5}, {EnsembleSide::Bob, 0.5}};
    }
    return {};
}

Povm gentle_povm(const SphericalCode &code, double q) {
    checked_strength(q);
    const int n = code.size();
    const Matrix2 smear = Complex((1.0 - q) / n) * Matrix2::identity();
    std::vector<PovmElement> elements;
    std::vector<std::string> labels;
    for (int m = 1; m <= n; ++m) {
        const auto projector = PovmElement::weighted_projector(code.state(m), q * 2.0 / n);
        elements.push_back(PovmElement::from_matrix(projector.matrix() + smear));
        labels.push_back(std::to_string(m));
    }
    return Povm(std::move(elements), std::move(labels));
}

Interception intercept(ProtocolKind protocol, const EveStrategy &strategy, const DensityMatrix &rho,
                       const RoundStream &stream) {
    switch (strategy.kind) {
    case AttackKind::None: return {rho, EveRecord::passed()};
    case AttackKind::InterceptResend: {
        if (!(stream.uniform(Variate::EveCoin) < strategy.q)) return {rho, EveRecord::passed()};
        const EnsembleSide side = pick_side(strategy.mix, stream.uniform(Variate::EveEnsemble));
        const SphericalCode &code = measuring_code(protocol, side);
        const auto pos = sample_outcome(rho, measuring_povm(protocol, side), stream.uniform(Variate::EveOutcome));
        const int m = static_cast<int>(pos) + 1;
        return {pure_from_bloch(code.state(m)), EveRecord::measured(side, m)};
    }
    case AttackKind::Gentle: {
        const EnsembleSide side = pick_side(strategy.mix, stream.uniform(Variate::EveEnsemble));
        const Povm povm = gentle_povm(measuring_code(protocol, side), strategy.q);
        const auto pos = sample_outcome(rho, povm, stream.uniform(Variate::EveOutcome));
        return {sqrt_post_measurement_state(rho, povm.element(pos)),
                EveRecord::measured(side, static_cast<int>(pos) + 1)};
    }
    }
    throw Error(ErrorKind::InvalidParameter, "unknown attack kind");
}

std::vector<EveBranch> eve_branches(ProtocolKind protocol, const EveStrategy &strategy, const DensityMatrix &rho) {
    std::vector<EveBranch> out;
    switch (strategy.kind) {
    case AttackKind::None: out.push_back({1.0, EveRecord::passed(), rho}); break;
    case AttackKind::InterceptResend:
        if (strategy.q < 1.0) out.push_back({1.0 - strategy.q, EveRecord::passed(), rho});
        if (strategy.q > 0.0) {
            for (const auto &[side, w] : ensemble_weights(strategy.mix)) {
                const SphericalCode &code = measuring_code(protocol, side);
                const Povm &povm = measuring_povm(protocol, side);
                for (int m = 1; m <= code.size(); ++m) {
                    const double p = born_probability(rho, povm.element(static_cast<std::size_t>(m - 1)));
                    if (p > 0.0)
                        out.push_back({strategy.q * w * p, EveRecord::measured(side, m), pure_from_bloch(code.state(m))});
                }
            }
        }
        break;
    case AttackKind::Gentle:
        for (const auto &[side, w] : ensemble_weights(strategy.mix)) {
            const Povm povm = gentle_povm(measuring_code(protocol, side), strategy.q);
            for (std::size_t i = 0; i < povm.size(); ++i) {
                const double p = born_probability(rho, povm.element(i));
                if (p > 0.0)
                    out.push_back({w * p, EveRecord::measured(side, static_cast<int>(i) + 1),
                                   sqrt_post_measurement_state(rho, povm.element(i))});
            }
        }
        break;
    }
    return out;
}

std::optional<int> eve_guess(const EveRecord &record, ProtocolKind protocol, const Announcement &ann, bool accepted) {
    if (!accepted || !record.intercepted || !record.outcome || !record.ensemble) return std::nullopt;
    const int m = *record.outcome;
    if (!uses_dual_measurement(protocol)) {
        const auto &basis = std::get<BasisChoice>(ann);
        if (basis_of(m) != basis.basis) return std::nullopt;
        return basis_bit(m);
    }
    if (announcement_excludes(ann, m)) return std::nullopt;
    if (*record.ensemble == EnsembleSide::Alice) {
        const int k = infer_outcome(protocol, m, ann);
        return protocol_bit(protocol, m, k, ann);
    }
    const int j = infer_signal(protocol, m, ann);
    return protocol_bit(protocol, j, m, ann);
}

}  // namespace scqkd

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

#include "scqkd/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "enumeration.hpp"
#include "scqkd/error.hpp"

namespace scqkd {

namespace {

// Floating-point route: density matrices through the bloch_core algebra.
class NumericPhysics {
  public:
    using Scalar = double;

    NumericPhysics(ProtocolKind protocol, const EveStrategy &eve, const ChannelModel &channel)
        : protocol_(protocol), eve_(eve), channel_(channel) {}

    static double from_rational(const Rational &r) { return boost::rational_cast<double>(r); }

    std::vector<EveBranch> eve_branches(int j) const {
        return scqkd::eve_branches(protocol_, eve_, pure_from_bloch(alice_code(protocol_).state(j)));
    }

    DensityMatrix channel(const DensityMatrix &rho) const {
        return channel_.depolarizing > 0.0 ? depolarize(rho, channel_.depolarizing) : rho;
    }

    double bob_probability(const DensityMatrix &rho, int k) const {
        return born_probability(rho, bob_povm(protocol_).element(static_cast<std::size_t>(k - 1)));
    }

  private:
    ProtocolKind protocol_;
    EveStrategy eve_;
    ChannelModel channel_;
};

// Rational route for intercept/resend. Every state that occurs is a code
// state of one of the two ensembles shrunk toward the origin by the
// channel, so Born probabilities follow from the rational Gram table:
// P(m | state) = (1 + scale * <v_state, v_m>) / n.
// Boost 1.74 comparisons between a rational and a plain integer recurse
// forever under C++20 rewritten operators; always compare rationals.
const Rational kZero(0);
const Rational kOne(1);

struct ExactState {
    Rational scale{1};
    EnsembleSide side = EnsembleSide::Alice;
    int index = 1;
};

struct ExactEveBranch {
    Rational weight;
    EveRecord record;
    ExactState state;
};

class ExactPhysics {
  public:
    using Scalar = Rational;

    ExactPhysics(ProtocolKind protocol, const ExactAttack &attack, Rational depolarizing)
        : protocol_(protocol), attack_(attack), depolarizing_(depolarizing) {
        if (attack.q < kZero || attack.q > kOne) throw Error(ErrorKind::InvalidParameter, "q outside [0,1]");
        if (depolarizing < kZero || depolarizing > kOne)
            throw Error(ErrorKind::InvalidParameter, "depolarizing probability outside [0,1]");
    }

    static Rational from_rational(const Rational &r) { return r; }

    std::vector<ExactEveBranch> eve_branches(int j) const {
        const ExactState sent{Rational(1), EnsembleSide::Alice, j};
        std::vector<ExactEveBranch> out;
        if (attack_.q < kOne) out.push_back({1 - attack_.q, EveRecord::passed(), sent});
        if (attack_.q > kZero) {
            for (const auto &[side, w] : sides()) {
                for (int m = 1; m <= signal_count(protocol_); ++m) {
                    const Rational p = probability(sent, side, m);
                    if (p != kZero) out.push_back({attack_.q * w * p, EveRecord::measured(side, m), {Rational(1), side, m}});
                }
            }
        }
        return out;
    }

    ExactState channel(ExactState s) const {
        s.scale *= 1 - depolarizing_;
        return s;
    }

    Rational bob_probability(const ExactState &s, int k) const { return probability(s, EnsembleSide::Bob, k); }

  private:
    std::vector<std::pair<EnsembleSide, Rational>> sides() const {
        switch (attack_.mix) {
        case EnsembleMix::AliceOnly: return {{EnsembleSide::Alice, Rational(1)}};
        case EnsembleMix::BobOnly: return {{EnsembleSide::Bob, Rational(1)}};
        case EnsembleMix::Symmetric: return {{EnsembleSide::Alice, Rational(1, 2)}, {EnsembleSide::Bob, Rational(1, 2)}};
        }
        return {};
    }

    // Probability of outcome m of `side`'s code measurement on state s.
    Rational probability(const ExactState &s, EnsembleSide side, int m) const {
        Rational dot = exact_bloch_overlap(code_kind(protocol_), s.index, m);
        if (uses_dual_measurement(protocol_) && s.side != side) dot = -dot;
        return (1 + s.scale * dot) / signal_count(protocol_);
    }

    ProtocolKind protocol_;
    ExactAttack attack_;
    Rational depolarizing_;
};

}  // namespace

JointDistribution to_double(const ExactJointDistribution &joint) {
    JointDistribution out;
    out.p_sift = boost::rational_cast<double>(joint.p_sift);
    for (std::size_t i = 0; i < joint.table.size(); ++i) out.table[i] = boost::rational_cast<double>(joint.table[i]);
    return out;
}

JointDistribution enumerate_joint(ProtocolKind protocol, const EveStrategy &eve, const ChannelModel &channel,
                                  GuessRule rule) {
    if (!(channel.depolarizing >= 0.0 && channel.depolarizing <= 1.0))
        throw Error(ErrorKind::InvalidParameter, "depolarizing probability outside [0,1]");
    const NumericPhysics physics(protocol, eve, channel);
    return detail::accumulate_joint(protocol, detail::enumerate_branches(protocol, physics), rule);
}

ExactJointDistribution enumerate_joint_exact(ProtocolKind protocol, const ExactAttack &attack, Rational depolarizing,
                                             GuessRule rule) {
    const ExactPhysics physics(protocol, attack, depolarizing);
    return detail::accumulate_joint(protocol, detail::enumerate_branches(protocol, physics), rule);
}

AnalyticCurves::AnalyticCurves(ProtocolKind protocol) : protocol_(protocol) {
    if (!uses_dual_measurement(protocol))
        throw Error(ErrorKind::UnsupportedKind, "closed-form curves exist for trine and tetrahedron only");
}

AnalyticCurves analytic_curves(ProtocolKind protocol) { return AnalyticCurves(protocol); }

double binary_entropy(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double mutual_information(const std::vector<std::vector<double>> &joint) {
    if (joint.empty() || joint.front().empty()) throw Error(ErrorKind::InvalidDistribution, "empty table");
    const std::size_t cols = joint.front().size();
    std::vector<double> px(joint.size(), 0.0);
    std::vector<double> py(cols, 0.0);
    for (std::size_t x = 0; x < joint.size(); ++x) {
        if (joint[x].size() != cols) throw Error(ErrorKind::InvalidDistribution, "ragged table");
        for (std::size_t y = 0; y < cols; ++y) {
            const double p = joint[x][y];
            if (p < 0.0 || !std::isfinite(p)) throw Error(ErrorKind::InvalidDistribution, "negative entry");
            px[x] += p;
            py[y] += p;
        }
    }
    double info = 0.0;
    for (std::size_t x = 0; x < joint.size(); ++x) {
        for (std::size_t y = 0; y < cols; ++y) {
            const double p = joint[x][y];
            if (p > 0.0) info += p * std::log2(p / (px[x] * py[y]));
        }
    }
    return std::max(0.0, info);
}

RateReport key_rate(const JointDistribution &joint) {
    std::vector<std::vector<double>> ab(2, std::vector<double>(2, 0.0));
    std::vector<std::vector<double>> ae(2, std::vector<double>(3, 0.0));
    std::vector<std::vector<double>> be(2, std::vector<double>(3, 0.0));
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            for (int e = 0; e < 3; ++e) {
                const double p = joint.at(a, b, e);
                ab[a][b] += p;
                ae[a][e] += p;
                be[b][e] += p;
            }
        }
    }
    RateReport r;
    r.i_ab = mutual_information(ab);
    r.i_ae = mutual_information(ae);
    r.i_be = mutual_information(be);
    r.r = r.i_ab - std::min(r.i_ae, r.i_be);
    return r;
}

EveStrategy family_strategy(AttackFamily family, double q) {
    return family == AttackFamily::Standard ? EveStrategy::intercept_resend(q, EnsembleMix::Symmetric)
                                            : EveStrategy::gentle(q, EnsembleMix::Symmetric);
}

double bisect_rate_root(const std::function<double(double)> &rate) {
    double lo = 0.0;
    double hi = 1.0;
    if (!(rate(lo) > 0.0 && rate(hi) < 0.0)) throw Error(ErrorKind::NoThreshold, "key rate does not change sign on [0,1]");
    double mid = 0.5;
    double r_mid = rate(mid);
    while (std::abs(r_mid) >= 1e-10 && hi - lo >= 1e-9) {
        if (r_mid > 0.0)
            lo = mid;
        else
            hi = mid;
        mid = 0.5 * (lo + hi);
        r_mid = rate(mid);
    }
    return mid;
}

Threshold find_threshold(ProtocolKind protocol, AttackFamily family, GuessRule rule) {
    auto joint_at = [&](double q) {
        return enumerate_joint(protocol, family_strategy(family, q), ChannelModel::ideal(), rule);
    };
    const double q = bisect_rate_root([&](double x) { return key_rate(joint_at(x)).r; });
    const auto joint = joint_at(q);
    return {q, joint.qber(), key_rate(joint).r};
}

std::array<double, 2> sift_range(ProtocolKind protocol) {
    switch (protocol) {
    case ProtocolKind::Trine: return {1.0 / 2.0, 7.0 / 12.0};
    case ProtocolKind::Tetrahedron: return {1.0 / 3.0, 4.0 / 9.0};
    case ProtocolKind::BB84: return {1.0 / 2.0, 1.0 / 2.0};
    case ProtocolKind::SixState: return {1.0 / 3.0, 1.0 / 3.0};
    }
    return {0.0, 0.0};
}

QEstimate estimate_q_from_sift(ProtocolKind protocol, double observed_sift, double margin) {
    QEstimate est;
    switch (protocol) {
    case ProtocolKind::Trine: est.q_unclamped = 12.0 * observed_sift - 6.0; break;
    case ProtocolKind::Tetrahedron: est.q_unclamped = 9.0 * observed_sift - 3.0; break;
    case ProtocolKind::BB84:
    case ProtocolKind::SixState:
        throw Error(ErrorKind::UnsupportedKind, "sift rate of a basis protocol does not depend on q");
    }
    est.q = std::clamp(est.q_unclamped, 0.0, 1.0);
    est.clamped = est.q != est.q_unclamped;
    const auto range = sift_range(protocol);
    est.out_of_model = observed_sift < range[0] - margin || observed_sift > range[1] + margin;
    return est;
}

std::vector<DepolarizingPoint> depolarizing_curves(ProtocolKind protocol, std::span<const double> grid) {
    std::vector<DepolarizingPoint> out;
    out.reserve(grid.size());
    for (double p : grid) {
        const auto joint = enumerate_joint(protocol, EveStrategy::none(), ChannelModel::depolarizing_channel(p));
        out.push_back({p, joint.p_sift, joint.qber()});
    }
    return out;
}

namespace {

EveStrategy strategy_for(AttackKind attack, EnsembleMix mix, double q) {
    switch (attack) {
    case AttackKind::None: return EveStrategy::none();
    case AttackKind::InterceptResend: return EveStrategy::intercept_resend(q, mix);
    case AttackKind::Gentle: return EveStrategy::gentle(q, mix);
    }
    return EveStrategy::none();
}

SweepRow sweep_row(ProtocolKind protocol, AttackKind attack, EnsembleMix mix, const ChannelModel &channel, double q,
                   GuessRule rule) {
    const auto joint = enumerate_joint(protocol, strategy_for(attack, mix, q), channel, rule);
    return {q, joint.p_sift, joint.qber(), joint.p_noguess(), key_rate(joint)};
}

}  // namespace

std::vector<SweepRow> sweep(ProtocolKind protocol, AttackKind attack, EnsembleMix mix, const ChannelModel &channel,
                            std::span<const double> grid, GuessRule rule) {
    for (double q : grid)
        if (!(q >= 0.0 && q <= 1.0)) throw Error(ErrorKind::InvalidParameter, "grid point outside [0,1]");
    std::vector<SweepRow> rows(grid.size());
    const auto count = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        rows[idx] = sweep_row(protocol, attack, mix, channel, grid[idx], rule);
    }
    return rows;
}

std::vector<SweepRow> sweep_serial(ProtocolKind protocol, AttackKind attack, EnsembleMix mix,
                                   const ChannelModel &channel, std::span<const double> grid, GuessRule rule) {
    std::vector<SweepRow> rows;
    rows.reserve(grid.size());
    for (double q : grid) {
        if (!(q >= 0.0 && q <= 1.0)) throw Error(ErrorKind::InvalidParameter, "grid point outside [0,1]");
        rows.push_back(sweep_row(protocol, attack, mix, channel, q, rule));
    }
    return rows;
}

}  // namespace scqkd

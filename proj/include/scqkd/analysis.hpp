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

// Exact analysis of a protocol under attack.
//
// enumerate_joint walks every discrete branch of a round (signal, Eve's
// coin/ensemble/outcome, Bob's outcome, announcement) with its exact
// probability and returns the sifted tripartite distribution p(a, b, e).
// The exact variant does the same in rational arithmetic for the
// intercept/resend attack, where every probability is rational.
//
// The remaining functions turn a joint distribution into key rates
// R = I(A:B) - min(I(A:E), I(B:E)), solve R = 0 for the tolerable error
// rate, and invert the sift rate for the interception fraction.

#ifndef SCQKD_ANALYSIS_HPP
#define SCQKD_ANALYSIS_HPP

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "scqkd/adversary.hpp"
#include "scqkd/codes.hpp"
#include "scqkd/protocol.hpp"

namespace scqkd {

/// Eve's symbol for "no guess".
inline constexpr int kAbstain = 2;

/// How Eve turns her record plus the public announcement into a guess.
/// Index: the fixed rule of eve_guess(). Posterior: the most likely value of
/// the bit of the party she impersonated given everything she saw, abstaining
/// on exact ties.
enum class GuessRule { Index, Posterior };

template <class T>
struct JointDistributionT {
    /// Probability that a round survives sifting.
    T p_sift{};
    /// p(a, b, e | sifted), a and b in {0, 1}, e in {0, 1, kAbstain}.
    std::array<T, 12> table{};

    T &at(int a, int b, int e) { return table[static_cast<std::size_t>(6 * a + 3 * b + e)]; }
    const T &at(int a, int b, int e) const { return table[static_cast<std::size_t>(6 * a + 3 * b + e)]; }

    T total() const {
        T s{};
        for (const T &v : table) s += v;
        return s;
    }

    /// P(a == b).
    T p_ab() const { return sum_if([](int a, int b, int) { return a == b; }); }
    T qber() const { return sum_if([](int a, int b, int) { return a != b; }); }
    /// P(e == a); abstentions never count as agreement.
    T p_ae() const { return sum_if([](int a, int, int e) { return e == a; }); }
    T p_be() const { return sum_if([](int, int b, int e) { return e == b; }); }
    T p_noguess() const { return sum_if([](int, int, int e) { return e == kAbstain; }); }

    template <class Pred>
    T sum_if(Pred pred) const {
        T s{};
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int e = 0; e < 3; ++e)
                    if (pred(a, b, e)) s += at(a, b, e);
        return s;
    }
};

using JointDistribution = JointDistributionT<double>;
using ExactJointDistribution = JointDistributionT<Rational>;

JointDistribution to_double(const ExactJointDistribution &joint);

JointDistribution enumerate_joint(ProtocolKind protocol, const EveStrategy &eve, const ChannelModel &channel,
                                  GuessRule rule = GuessRule::Index);

/// Intercept/resend with a rational fraction q (q = 0 is no attack).
struct ExactAttack {
    Rational q{0};
    EnsembleMix mix = EnsembleMix::Symmetric;
};

ExactJointDistribution enumerate_joint_exact(ProtocolKind protocol, const ExactAttack &attack,
                                             Rational depolarizing = Rational(0), GuessRule rule = GuessRule::Index);

/// Closed-form intercept/resend curves (symmetric mixing) for the spherical
/// codes.
template <class T>
struct AnalyticPoint {
    T p_sift{};
    T p_ab{};
    T p_ae{};
    T p_noguess{};
    T qber{};
};

class AnalyticCurves {
  public:
    /// Throws Error(UnsupportedKind) for BB84 and six-state.
    explicit AnalyticCurves(ProtocolKind protocol);

    ProtocolKind protocol() const { return protocol_; }

    template <class T>
    AnalyticPoint<T> at(T q) const {
        if (protocol_ == ProtocolKind::Trine) {
            const T d = T(6) + q;
            return {d / T(12), (T(6) - q) / d, T(9) * q / (T(2) * d), T(2) * (T(3) - T(2) * q) / d, T(2) * q / d};
        }
        const T d = T(3) + q;
        return {d / T(9), (T(6) - q) / (T(2) * d), T(7) * q / (T(4) * d), (T(3) - q) / d, T(3) * q / (T(2) * d)};
    }

  private:
    ProtocolKind protocol_;
};

AnalyticCurves analytic_curves(ProtocolKind protocol);

double binary_entropy(double p);

/// I(X:Y) in bits for a joint table joint[x][y]; 0 log 0 = 0. Throws
/// Error(InvalidDistribution) on negative entries or an empty table.
double mutual_information(const std::vector<std::vector<double>> &joint);

struct RateReport {
    double i_ab = 0.0;
    double i_ae = 0.0;
    double i_be = 0.0;
    /// Bits of secret key per sifted symbol; negative when no key survives.
    double r = 0.0;
};

RateReport key_rate(const JointDistribution &joint);

enum class AttackFamily { Standard, Gentle };

/// Symmetric-mix strategy of the given family at parameter q.
EveStrategy family_strategy(AttackFamily family, double q);

struct Threshold {
    double q_star = 0.0;
    double qber_star = 0.0;
    double r_at_star = 0.0;
};

/// Bisection for the root of a rate function on [0, 1], stopping when
/// |rate| < 1e-10 or the bracket is narrower than 1e-9. Throws
/// Error(NoThreshold) unless rate(0) > 0 and rate(1) < 0.
double bisect_rate_root(const std::function<double(double)> &rate);

/// Bisection on q in [0, 1] for R(q) = 0, stopping when |R| < 1e-10 or the
/// bracket is narrower than 1e-9. Throws Error(NoThreshold) unless R(0) > 0
/// and R(1) < 0.
Threshold find_threshold(ProtocolKind protocol, AttackFamily family, GuessRule rule = GuessRule::Index);

struct QEstimate {
    /// Estimate clamped to [0, 1].
    double q = 0.0;
    double q_unclamped = 0.0;
    bool clamped = false;
    /// Observed sift rate lies outside the attainable range by more than the
    /// caller's margin.
    bool out_of_model = false;
};

/// Attainable sift-rate range [no attack, full interception].
std::array<double, 2> sift_range(ProtocolKind protocol);

/// Inverts p_sift(q): trine q = 12 s - 6, tetrahedron q = 9 s - 3. Throws
/// Error(UnsupportedKind) for the basis protocols, whose sift rate does not
/// depend on q.
QEstimate estimate_q_from_sift(ProtocolKind protocol, double observed_sift, double margin = 0.0);

struct DepolarizingPoint {
    double p = 0.0;
    double p_sift = 0.0;
    double qber = 0.0;
};

std::vector<DepolarizingPoint> depolarizing_curves(ProtocolKind protocol, std::span<const double> grid);

struct SweepRow {
    double q = 0.0;
    double p_sift = 0.0;
    double qber = 0.0;
    double p_noguess = 0.0;
    RateReport rate;
};

/// One enumeration per grid point, spread over OpenMP threads.
std::vector<SweepRow> sweep(ProtocolKind protocol, AttackKind attack, EnsembleMix mix, const ChannelModel &channel,
                            std::span<const double> grid, GuessRule rule = GuessRule::Index);
/// Single-threaded reference for sweep().
std::vector<SweepRow> sweep_serial(ProtocolKind protocol, AttackKind attack, EnsembleMix mix,
                                   const ChannelModel &channel, std::span<const double> grid,
                                   GuessRule rule = GuessRule::Index);

}  // namespace scqkd

#endif  // SCQKD_ANALYSIS_HPP

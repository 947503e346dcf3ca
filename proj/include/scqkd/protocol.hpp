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

// Single-round protocol mechanics: signal choice, Bob's public
// announcement, sifting, and the bit each party derives.
//
// Trine and tetrahedron: Bob measures in the dual code and announces
// outcomes he did not obtain; a round survives sifting when none of the
// announced outcomes is Alice's signal. BB84 and six-state: Bob measures
// with the code's own (random-basis) measurement and announces his basis.

#ifndef SCQKD_PROTOCOL_HPP
#define SCQKD_PROTOCOL_HPP

#include <optional>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "scqkd/codes.hpp"

namespace scqkd {

enum class ProtocolKind { Trine, Tetrahedron, BB84, SixState };

std::string_view to_string(ProtocolKind kind);
/// Accepts "trine", "tetra", "tetrahedron", "bb84", "six-state", "sixstate".
std::optional<ProtocolKind> parse_protocol(std::string_view name);

CodeKind code_kind(ProtocolKind kind);
int signal_count(ProtocolKind kind);
/// True for the trine and tetrahedron protocols.
bool uses_dual_measurement(ProtocolKind kind);

/// Alice's signal ensemble and Bob's measurement ensemble.
const SphericalCode &alice_code(ProtocolKind kind);
const SphericalCode &bob_code(ProtocolKind kind);
const Povm &bob_povm(ProtocolKind kind);

/// Trine: one outcome Bob did not obtain.
struct ExcludedOutcome {
    int l = 0;
    friend bool operator==(const ExcludedOutcome &, const ExcludedOutcome &) = default;
};

/// Tetrahedron: an ordered pair of outcomes Bob did not obtain.
struct ExcludedPair {
    int l = 0;
    int m = 0;
    friend bool operator==(const ExcludedPair &, const ExcludedPair &) = default;
};

/// BB84 / six-state: Bob's measurement basis.
struct BasisChoice {
    int basis = 0;
    friend bool operator==(const BasisChoice &, const BasisChoice &) = default;
};

using Announcement = std::variant<ExcludedOutcome, ExcludedPair, BasisChoice>;

/// True when `index` is one of the outcomes named by an exclusion
/// announcement. Always false for basis announcements.
bool announcement_excludes(const Announcement &ann, int index);

inline constexpr int kAnnouncementCodes = 16;

/// Code in [0, kAnnouncementCodes) identifying an announcement within its
/// protocol; used for empirical statistics.
int announcement_code(const Announcement &ann);

/// Uniform signal choice by inverse CDF: index floor(u n) + 1.
int alice_pick(ProtocolKind protocol, double u);

/// Trine: l uniform over the two indices != k (ascending, split at u = 1/2).
/// Tetrahedron: (l, m) uniform over the 6 ordered pairs of distinct indices
/// != k, in lexicographic order. Bases: Bob's basis; u is unused.
Announcement bob_announce(ProtocolKind protocol, int k, double u);

/// Every announcement bob_announce can produce for outcome k, each with its
/// probability as an exact rational.
std::vector<std::pair<Announcement, Rational>> announcement_distribution(ProtocolKind protocol, int k);

bool sift_accept(ProtocolKind protocol, int j, const Announcement &ann);

/// Alice's inference of Bob's outcome from her signal and the announcement:
/// the unique index that is neither j nor announced.
int infer_outcome(ProtocolKind protocol, int j, const Announcement &ann);
/// Bob's inference of Alice's signal: the unique index neither k nor announced.
int infer_signal(ProtocolKind protocol, int k, const Announcement &ann);

/// Key bit of a spherical-code round once signal and outcome are both known:
/// trine_key_bit(j, k, l) or tetra_key_bit(j, k, l, m). Throws
/// Error(UnsupportedKind) for the basis protocols.
int protocol_bit(ProtocolKind protocol, int signal, int outcome, const Announcement &ann);

struct BitPair {
    int alice = 0;
    int bob = 0;
    friend bool operator==(const BitPair &, const BitPair &) = default;
};

/// Bits each party derives on a sifted round. Throws
/// Error(InvalidTranscript) if the round was not accepted or the
/// announcement names Bob's own outcome.
BitPair derive_bits(ProtocolKind protocol, int j, int k, const Announcement &ann);

/// Ideal when depolarizing == 0.
struct ChannelModel {
    double depolarizing = 0.0;

    static ChannelModel ideal() { return {}; }
    static ChannelModel depolarizing_channel(double p);
};

}  // namespace scqkd

#endif  // SCQKD_PROTOCOL_HPP

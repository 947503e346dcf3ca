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

#include "scqkd/protocol.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "scqkd/error.hpp"

namespace scqkd {

std::string_view to_string(ProtocolKind kind) {
    switch (kind) {
    case ProtocolKind::Trine: return "trine";
    case ProtocolKind::Tetrahedron: return "tetra";
    case ProtocolKind::BB84: return "bb84";
    case ProtocolKind::SixState: return "six-state";
    }
    return "unknown";
}

std::optional<ProtocolKind> parse_protocol(std::string_view name) {
    if (name == "trine") return ProtocolKind::Trine;
    if (name == "tetra" || name == "tetrahedron") return ProtocolKind::Tetrahedron;
    if (name == "bb84") return ProtocolKind::BB84;
    if (name == "six-state" || name == "sixstate") return ProtocolKind::SixState;
    return std::nullopt;
}

CodeKind code_kind(ProtocolKind kind) {
    switch (kind) {
    case ProtocolKind::Trine: return CodeKind::Trine;
    case ProtocolKind::Tetrahedron: return CodeKind::Tetrahedron;
    case ProtocolKind::BB84: return CodeKind::BB84;
    case ProtocolKind::SixState: return CodeKind::SixState;
    }
    return CodeKind::Trine;
}

int signal_count(ProtocolKind kind) { return code_size(code_kind(kind)); }

bool uses_dual_measurement(ProtocolKind kind) {
    return kind == ProtocolKind::Trine || kind == ProtocolKind::Tetrahedron;
}

namespace {

struct ProtocolSetup {
    SphericalCode alice;
    SphericalCode bob;
    Povm bob_povm;
};

ProtocolSetup build_setup(ProtocolKind kind) {
    SphericalCode alice = make_code(code_kind(kind));
    SphericalCode bob = uses_dual_measurement(kind) ? dual_code(alice) : alice;
    Povm povm = code_povm(bob);
    return {std::move(alice), std::move(bob), std::move(povm)};
}

const ProtocolSetup &setup(ProtocolKind kind) {
    static const std::array<ProtocolSetup, 4> setups = {
        build_setup(ProtocolKind::Trine), build_setup(ProtocolKind::Tetrahedron),
        build_setup(ProtocolKind::BB84), build_setup(ProtocolKind::SixState)};
    return setups[static_cast<std::size_t>(kind)];
}

void check_index(ProtocolKind protocol, int index) {
    if (index < 1 || index > signal_count(protocol))
        throw Error(ErrorKind::InvalidIndex,
                    std::string(to_string(protocol)) + " index " + std::to_string(index));
}

// Indices of {1..n} other than `k`, ascending.
std::vector<int> others(int n, int k) {
    std::vector<int> out;
    for (int i = 1; i <= n; ++i)
        if (i != k) out.push_back(i);
    return out;
}

template <class T>
const T &expect(const Announcement &ann, ProtocolKind protocol) {
    if (const T *p = std::get_if<T>(&ann)) return *p;
    throw Error(ErrorKind::InvalidAnnouncement,
                "announcement type does not match protocol " + std::string(to_string(protocol)));
}

// The one index in 1..n that is neither `known` nor announced.
int remaining_index(ProtocolKind protocol, int known, const Announcement &ann) {
    int found = 0;
    for (int i = 1; i <= signal_count(protocol); ++i) {
        if (i == known || announcement_excludes(ann, i)) continue;
        if (found != 0) throw Error(ErrorKind::InvalidTranscript, "announcement leaves more than one candidate");
        found = i;
    }
    if (found == 0) throw Error(ErrorKind::InvalidTranscript, "announcement leaves no candidate");
    return found;
}

}  // namespace

const SphericalCode &alice_code(ProtocolKind kind) { return setup(kind).alice; }
const SphericalCode &bob_code(ProtocolKind kind) { return setup(kind).bob; }
const Povm &bob_povm(ProtocolKind kind) { return setup(kind).bob_povm; }

bool announcement_excludes(const Announcement &ann, int index) {
    if (const auto *t = std::get_if<ExcludedOutcome>(&ann)) return t->l == index;
    if (const auto *p = std::get_if<ExcludedPair>(&ann)) return p->l == index || p->m == index;
    return false;
}

int announcement_code(const Announcement &ann) {
    if (const auto *t = std::get_if<ExcludedOutcome>(&ann)) return t->l - 1;
    if (const auto *p = std::get_if<ExcludedPair>(&ann)) return 4 * (p->l - 1) + (p->m - 1);
    return std::get<BasisChoice>(ann).basis;
}

int alice_pick(ProtocolKind protocol, double u) {
    const int n = signal_count(protocol);
    const int j = static_cast<int>(u * n) + 1;
    return std::clamp(j, 1, n);
}

Announcement bob_announce(ProtocolKind protocol, int k, double u) {
    check_index(protocol, k);
    const auto options = announcement_distribution(protocol, k);
    const auto slot = std::min(static_cast<std::size_t>(u * static_cast<double>(options.size())), options.size() - 1);
    return options[slot].first;
}

std::vector<std::pair<Announcement, Rational>> announcement_distribution(ProtocolKind protocol, int k) {
    check_index(protocol, k);
    std::vector<std::pair<Announcement, Rational>> out;
    switch (protocol) {
    case ProtocolKind::Trine:
        for (int l : others(3, k)) out.emplace_back(ExcludedOutcome{l}, Rational(1, 2));
        break;
    case ProtocolKind::Tetrahedron: {
        const auto rest = others(4, k);
        for (int l : rest)
            for (int m : rest)
                if (l != m) out.emplace_back(ExcludedPair{l, m}, Rational(1, 6));
        break;
    }
    case ProtocolKind::BB84:
    case ProtocolKind::SixState:
        out.emplace_back(BasisChoice{basis_of(k)}, Rational(1));
        break;
    }
    return out;
}

bool sift_accept(ProtocolKind protocol, int j, const Announcement &ann) {
    check_index(protocol, j);
    switch (protocol) {
    case ProtocolKind::Trine: return expect<ExcludedOutcome>(ann, protocol).l != j;
    case ProtocolKind::Tetrahedron: {
        const auto &p = expect<ExcludedPair>(ann, protocol);
        return p.l != j && p.m != j;
    }
    case ProtocolKind::BB84:
    case ProtocolKind::SixState: return expect<BasisChoice>(ann, protocol).basis == basis_of(j);
    }
    return false;
}

int infer_outcome(ProtocolKind protocol, int j, const Announcement &ann) {
    check_index(protocol, j);
    return remaining_index(protocol, j, ann);
}

int infer_signal(ProtocolKind protocol, int k, const Announcement &ann) {
    check_index(protocol, k);
    return remaining_index(protocol, k, ann);
}

int protocol_bit(ProtocolKind protocol, int signal, int outcome, const Announcement &ann) {
    switch (protocol) {
    case ProtocolKind::Trine: return trine_key_bit(signal, outcome, expect<ExcludedOutcome>(ann, protocol).l);
    case ProtocolKind::Tetrahedron: {
        const auto &p = expect<ExcludedPair>(ann, protocol);
        return tetra_key_bit(signal, outcome, p.l, p.m);
    }
    case ProtocolKind::BB84:
    case ProtocolKind::SixState: break;
    }
    throw Error(ErrorKind::UnsupportedKind, "protocol_bit applies to spherical codes only");
}

BitPair derive_bits(ProtocolKind protocol, int j, int k, const Announcement &ann) {
    check_index(protocol, j);
    check_index(protocol, k);
    if (!sift_accept(protocol, j, ann)) throw Error(ErrorKind::InvalidTranscript, "round was not accepted");
    if (!uses_dual_measurement(protocol)) {
        if (basis_of(k) != std::get<BasisChoice>(ann).basis)
            throw Error(ErrorKind::InvalidTranscript, "announced basis differs from Bob's outcome basis");
        return {basis_bit(j), basis_bit(k)};
    }
    if (announcement_excludes(ann, k)) throw Error(ErrorKind::InvalidTranscript, "Bob announced his own outcome");
    const int k_inferred = infer_outcome(protocol, j, ann);
    const int j_inferred = infer_signal(protocol, k, ann);
    return {protocol_bit(protocol, j, k_inferred, ann), protocol_bit(protocol, j_inferred, k, ann)};
}

ChannelModel ChannelModel::depolarizing_channel(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::InvalidParameter, "depolarizing probability outside [0,1]");
    return {p};
}

}  // namespace scqkd

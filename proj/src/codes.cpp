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

#include "scqkd/codes.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "scqkd/error.hpp"

namespace scqkd {

std::string_view to_string(CodeKind kind) {
    switch (kind) {
    case CodeKind::Trine: return "trine";
    case CodeKind::Tetrahedron: return "tetra";
    case CodeKind::BB84: return "bb84";
    case CodeKind::SixState: return "six-state";
    }
    return "unknown";
}

const BlochVector &SphericalCode::state(int j) const {
    if (j < 1 || j > size()) throw Error(ErrorKind::InvalidIndex, "code index " + std::to_string(j));
    return states[static_cast<std::size_t>(j - 1)];
}

bool operator==(const SphericalCode &a, const SphericalCode &b) {
    if (a.kind != b.kind || a.dual != b.dual || a.states.size() != b.states.size()) return false;
    for (std::size_t i = 0; i < a.states.size(); ++i) {
        const auto &u = a.states[i];
        const auto &v = b.states[i];
        if (u.x != v.x || u.y != v.y || u.z != v.z) return false;
    }
    return true;
}

int code_size(CodeKind kind) {
    switch (kind) {
    case CodeKind::Trine: return 3;
    case CodeKind::Tetrahedron: return 4;
    case CodeKind::BB84: return 4;
    case CodeKind::SixState: return 6;
    }
    return 0;
}

SphericalCode make_code(CodeKind kind) {
    SphericalCode code{kind, {}, false};
    switch (kind) {
    case CodeKind::Trine:
        for (int j = 1; j <= 3; ++j) {
            const double theta = 2.0 * std::numbers::pi * (j - 1) / 3.0;
            code.states.push_back({std::sin(theta), 0.0, std::cos(theta)});
        }
        break;
    case CodeKind::Tetrahedron: {
        const double s2 = std::numbers::sqrt2;
        const double s23 = std::sqrt(2.0 / 3.0);
        code.states = {{0.0, 0.0, 1.0},
                       {2.0 * s2 / 3.0, 0.0, -1.0 / 3.0},
                       {-s2 / 3.0, s23, -1.0 / 3.0},
                       {-s2 / 3.0, -s23, -1.0 / 3.0}};
        break;
    }
    case CodeKind::BB84:
        code.states = {{0, 0, 1}, {0, 0, -1}, {1, 0, 0}, {-1, 0, 0}};
        break;
    case CodeKind::SixState:
        code.states = {{0, 0, 1}, {0, 0, -1}, {1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}};
        break;
    }
    return code;
}

SphericalCode dual_code(const SphericalCode &code) {
    if (code.kind != CodeKind::Trine && code.kind != CodeKind::Tetrahedron)
        throw Error(ErrorKind::UnsupportedKind, "dual code is defined for trine and tetrahedron only");
    SphericalCode out{code.kind, {}, !code.dual};
    out.states.reserve(code.states.size());
    for (const auto &v : code.states) out.states.push_back(-v);
    return out;
}

Povm code_povm(const SphericalCode &code) {
    const double weight = 2.0 / code.size();
    std::vector<PovmElement> elements;
    std::vector<std::string> labels;
    for (int m = 1; m <= code.size(); ++m) {
        elements.push_back(PovmElement::weighted_projector(code.state(m), weight));
        labels.push_back(std::to_string(m));
    }
    return Povm(std::move(elements), std::move(labels));
}

Rational exact_bloch_overlap(CodeKind kind, int i, int j) {
    const int n = code_size(kind);
    if (i < 1 || i > n || j < 1 || j > n) throw Error(ErrorKind::InvalidIndex, "code index out of range");
    if (i == j) return 1;
    switch (kind) {
    case CodeKind::Trine: return {-1, 2};
    case CodeKind::Tetrahedron: return {-1, 3};
    case CodeKind::BB84:
    case CodeKind::SixState: return basis_of(i) == basis_of(j) ? Rational(-1) : Rational(0);
    }
    return 0;
}

namespace {

// Sign of the permutation taking (1..n) to `p`; 0 on repeats.
template <std::size_t N>
int permutation_sign(const std::array<int, N> &p) {
    for (int v : p) {
        if (v < 1 || v > static_cast<int>(N))
            throw Error(ErrorKind::InvalidIndex, "Levi-Civita index " + std::to_string(v));
    }
    int sign = 1;
    for (std::size_t a = 0; a < N; ++a) {
        for (std::size_t b = a + 1; b < N; ++b) {
            if (p[a] == p[b]) return 0;
            if (p[a] > p[b]) sign = -sign;
        }
    }
    return sign;
}

}  // namespace

int levi_civita_3(int j, int k, int l) { return permutation_sign<3>({j, k, l}); }

int levi_civita_4(int j, int k, int l, int m) { return permutation_sign<4>({j, k, l, m}); }

int trine_key_bit(int j, int k, int l) {
    const int eps = levi_civita_3(j, k, l);
    if (eps == 0) throw Error(ErrorKind::InvalidAnnouncement, "trine indices must be distinct");
    return (1 - eps) / 2;
}

int tetra_key_bit(int j, int k, int l, int m) {
    const int eps = levi_civita_4(j, k, l, m);
    if (eps == 0) throw Error(ErrorKind::InvalidAnnouncement, "tetrahedron indices must be distinct");
    return (1 + eps) / 2;
}

int basis_of(int index) {
    if (index < 1 || index > 6) throw Error(ErrorKind::InvalidIndex, "basis index " + std::to_string(index));
    return (index - 1) / 2;
}

int basis_bit(int index) {
    if (index < 1 || index > 6) throw Error(ErrorKind::InvalidIndex, "basis index " + std::to_string(index));
    return (index - 1) % 2;
}

}  // namespace scqkd

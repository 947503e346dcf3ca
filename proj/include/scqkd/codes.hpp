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

// Signal ensembles: the trine and tetrahedron spherical codes and the BB84
// and six-state unbiased-basis sets, together with their measurements and
// the antisymmetric bit-extraction rule.
//
// Signal indices are 1-based in every public function.

#ifndef SCQKD_CODES_HPP
#define SCQKD_CODES_HPP

#include <cstdint>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "scqkd/bloch.hpp"

namespace scqkd {

using Rational = boost::rational<std::int64_t>;

enum class CodeKind { Trine, Tetrahedron, BB84, SixState };

std::string_view to_string(CodeKind kind);

struct SphericalCode {
    CodeKind kind = CodeKind::Trine;
    std::vector<BlochVector> states;
    /// True for the antipodal set produced by dual_code().
    bool dual = false;

    int size() const { return static_cast<int>(states.size()); }
    /// 1-based access.
    const BlochVector &state(int j) const;
    /// Weight 2/n that turns the n projectors into a complete measurement.
    Rational povm_weight() const { return {2, size()}; }

    friend bool operator==(const SphericalCode &, const SphericalCode &);
};

/// Number of states in the canonical code of this kind.
int code_size(CodeKind kind);

/// Canonical frame. Trine: x-z plane at 2*pi*(j-1)/3 from +z. Tetrahedron:
/// vertex 1 on +z, vertex 2 in the x-z plane. BB84: +z, -z, +x, -x.
/// Six-state: +z, -z, +x, -x, +y, -y.
SphericalCode make_code(CodeKind kind);

/// Antipodal code; only defined for Trine and Tetrahedron.
SphericalCode dual_code(const SphericalCode &code);

/// Elements (2/n)|psi_m><psi_m|, labelled "1".."n".
Povm code_povm(const SphericalCode &code);

/// Bloch inner product of canonical states i and j as an exact rational.
/// Independent of the floating-point coordinates; used by the exact
/// enumeration.
Rational exact_bloch_overlap(CodeKind kind, int i, int j);

int levi_civita_3(int j, int k, int l);
int levi_civita_4(int j, int k, int l, int m);

/// (1 - eps_jkl)/2. Indices must be distinct.
int trine_key_bit(int j, int k, int l);
/// (1 + eps_jklm)/2. Indices must be distinct.
int tetra_key_bit(int j, int k, int l, int m);

/// BB84 / six-state: basis (0 = Z, 1 = X, 2 = Y) and bit of a signal index.
/// The + eigenstate of each basis carries bit 0.
int basis_of(int index);
int basis_bit(int index);

}  // namespace scqkd

#endif  // SCQKD_CODES_HPP

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

#include "scqkd/bloch.hpp"

#include <algorithm>
#include <cmath>

#include "scqkd/error.hpp"

namespace scqkd {

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

Matrix2 Matrix2::adjoint() const {
    return {std::conj(a_[0]), std::conj(a_[2]), std::conj(a_[1]), std::conj(a_[3])};
}

double Matrix2::max_abs_diff(const Matrix2 &o) const {
    double d = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        d = std::max(d, std::abs(a_[i] - o.a_[i]));
    }
    return d;
}

bool Matrix2::is_hermitian(double tol) const { return max_abs_diff(adjoint()) <= tol; }

Matrix2 operator+(const Matrix2 &a, const Matrix2 &b) {
    Matrix2 r;
    for (std::size_t i = 0; i < 4; ++i) r.a_[i] = a.a_[i] + b.a_[i];
    return r;
}

Matrix2 operator-(const Matrix2 &a, const Matrix2 &b) {
    Matrix2 r;
    for (std::size_t i = 0; i < 4; ++i) r.a_[i] = a.a_[i] - b.a_[i];
    return r;
}

Matrix2 operator*(const Matrix2 &a, const Matrix2 &b) {
    return {a(0, 0) * b(0, 0) + a(0, 1) * b(1, 0), a(0, 0) * b(0, 1) + a(0, 1) * b(1, 1),
            a(1, 0) * b(0, 0) + a(1, 1) * b(1, 0), a(1, 0) * b(0, 1) + a(1, 1) * b(1, 1)};
}

Matrix2 operator*(Complex s, const Matrix2 &a) {
    Matrix2 r;
    for (std::size_t i = 0; i < 4; ++i) r.a_[i] = s * a.a_[i];
    return r;
}

std::array<double, 2> hermitian_eigenvalues(const Matrix2 &m) {
    const double a = m(0, 0).real();
    const double d = m(1, 1).real();
    const double half_gap = 0.5 * (a - d);
    const double radius = std::sqrt(half_gap * half_gap + std::norm(m(0, 1)));
    const double mean = 0.5 * (a + d);
    return {mean - radius, mean + radius};
}

Matrix2 psd_sqrt(const Matrix2 &m) {
    // det of a rank-1 input is pure rounding noise (~1e-17) and its square
    // root would leak ~1e-9 into the result, so snap it to zero.
    const double tr = m.trace().real();
    double det = m.det().real();
    if (det <= 1e-15 * tr * tr) det = 0.0;
    const double s = std::sqrt(det);
    const double t = std::sqrt(std::max(0.0, tr + 2.0 * s));
    if (t == 0.0) return Matrix2::zero();
    return Complex(1.0 / t) * (m + Complex(s) * Matrix2::identity());
}

namespace {

Matrix2 from_bloch_unchecked(const BlochVector &v) {
    return {Complex(0.5 * (1.0 + v.z)), Complex(0.5 * v.x, -0.5 * v.y),
            Complex(0.5 * v.x, 0.5 * v.y), Complex(0.5 * (1.0 - v.z))};
}

bool is_psd(const Matrix2 &m) { return hermitian_eigenvalues(m)[0] >= -kTolerance; }

constexpr double kZeroProbability = 1e-15;

}  // namespace

DensityMatrix DensityMatrix::from_matrix(const Matrix2 &m) {
    if (!m.is_hermitian()) throw Error(ErrorKind::InvalidState, "density matrix is not Hermitian");
    if (std::abs(m.trace() - Complex(1.0)) > kTolerance)
        throw Error(ErrorKind::InvalidState, "density matrix trace is not 1");
    if (!is_psd(m)) throw Error(ErrorKind::InvalidState, "density matrix has a negative eigenvalue");
    return DensityMatrix(m);
}

DensityMatrix DensityMatrix::from_bloch(const BlochVector &v) {
    if (v.norm() > 1.0 + kTolerance) throw Error(ErrorKind::InvalidState, "Bloch vector outside the ball");
    return DensityMatrix(from_bloch_unchecked(v));
}

DensityMatrix DensityMatrix::maximally_mixed() { return DensityMatrix(Complex(0.5) * Matrix2::identity()); }

BlochVector DensityMatrix::bloch() const {
    return {2.0 * m_(1, 0).real(), 2.0 * m_(1, 0).imag(), (m_(0, 0) - m_(1, 1)).real()};
}

PovmElement PovmElement::from_matrix(const Matrix2 &m) {
    if (!m.is_hermitian()) throw Error(ErrorKind::InvalidParameter, "POVM element is not Hermitian");
    if (!is_psd(m)) throw Error(ErrorKind::InvalidParameter, "POVM element is not positive semidefinite");
    return PovmElement(m);
}

PovmElement PovmElement::weighted_projector(const BlochVector &v, double weight) {
    if (std::abs(v.norm() - 1.0) > 1e-9) throw Error(ErrorKind::InvalidState, "projector needs a unit Bloch vector");
    if (weight < 0.0) throw Error(ErrorKind::InvalidParameter, "negative POVM weight");
    return PovmElement(Complex(weight) * from_bloch_unchecked(v));
}

Povm::Povm(std::vector<PovmElement> elements, std::vector<std::string> labels)
    : elements_(std::move(elements)), labels_(std::move(labels)) {
    if (elements_.empty() || elements_.size() != labels_.size())
        throw Error(ErrorKind::InvalidParameter, "POVM needs one label per element");
    Matrix2 sum;
    for (const auto &e : elements_) sum = sum + e.matrix();
    if (sum.max_abs_diff(Matrix2::identity()) >= kTolerance)
        throw Error(ErrorKind::InvalidParameter, "POVM elements do not sum to the identity");
}

DensityMatrix pure_from_bloch(const BlochVector &v) {
    if (std::abs(v.norm() - 1.0) > 1e-9) throw Error(ErrorKind::InvalidState, "pure state needs a unit Bloch vector");
    return DensityMatrix::from_bloch(v * (1.0 / v.norm()));
}

BlochVector bloch_of(const DensityMatrix &rho) { return rho.bloch(); }

double born_probability(const DensityMatrix &rho, const PovmElement &e) {
    const double p = (rho.matrix() * e.matrix()).trace().real();
    // Orthogonal pairs evaluate to ~1e-17 rather than exactly zero.
    if (p < kZeroProbability) return 0.0;
    return std::min(p, 1.0);
}

DensityMatrix sqrt_post_measurement_state(const DensityMatrix &rho, const PovmElement &e) {
    if (born_probability(rho, e) <= 0.0)
        throw Error(ErrorKind::UndefinedConditional, "measurement outcome has zero probability");
    const Matrix2 root = psd_sqrt(e.matrix());
    const Matrix2 unnormalized = root * rho.matrix() * root;
    const double p = unnormalized.trace().real();
    Matrix2 m = Complex(1.0 / p) * unnormalized;
    // Re-symmetrize to remove round-off in the off-diagonal pair.
    m = Complex(0.5) * (m + m.adjoint());
    return DensityMatrix::from_matrix(m);
}

DensityMatrix depolarize(const DensityMatrix &rho, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::InvalidParameter, "depolarizing probability outside [0,1]");
    return DensityMatrix::from_bloch(rho.bloch() * (1.0 - p));
}

std::size_t sample_outcome(const DensityMatrix &rho, const Povm &povm, double u) {
    double cumulative = 0.0;
    std::size_t last_possible = 0;
    for (std::size_t i = 0; i < povm.size(); ++i) {
        const double p = born_probability(rho, povm.element(i));
        if (p <= 0.0) continue;
        last_possible = i;
        cumulative += p;
        if (u < cumulative) return i;
    }
    return last_possible;
}

double overlap(const DensityMatrix &rho, const DensityMatrix &sigma) {
    return (rho.matrix() * sigma.matrix()).trace().real();
}

}  // namespace scqkd

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

// Single-qubit state and measurement algebra.
//
// States are stored as 2x2 complex matrices; the Bloch vector is a derived
// view. All objects are immutable values and every free function is pure.

#ifndef SCQKD_BLOCH_HPP
#define SCQKD_BLOCH_HPP

#include <array>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace scqkd {

using Complex = std::complex<double>;

/// Tolerance for all invariant checks in the core algebra.
inline constexpr double kTolerance = 1e-12;

struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const;
    double dot(const BlochVector &o) const { return x * o.x + y * o.y + z * o.z; }
    BlochVector operator-() const { return {-x, -y, -z}; }
    BlochVector operator*(double s) const { return {s * x, s * y, s * z}; }
};

/// Row-major 2x2 complex matrix.
class Matrix2 {
  public:
    Matrix2() = default;
    Matrix2(Complex a00, Complex a01, Complex a10, Complex a11) : a_{a00, a01, a10, a11} {}

    static Matrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Matrix2 zero() { return {}; }

    const Complex &operator()(std::size_t r, std::size_t c) const { return a_[2 * r + c]; }
    Complex &operator()(std::size_t r, std::size_t c) { return a_[2 * r + c]; }

    Complex trace() const { return a_[0] + a_[3]; }
    Complex det() const { return a_[0] * a_[3] - a_[1] * a_[2]; }
    Matrix2 adjoint() const;

    /// Largest absolute entry-wise difference.
    double max_abs_diff(const Matrix2 &o) const;
    bool is_hermitian(double tol = kTolerance) const;

    friend Matrix2 operator+(const Matrix2 &a, const Matrix2 &b);
    friend Matrix2 operator-(const Matrix2 &a, const Matrix2 &b);
    friend Matrix2 operator*(const Matrix2 &a, const Matrix2 &b);
    friend Matrix2 operator*(Complex s, const Matrix2 &a);

  private:
    std::array<Complex, 4> a_{};
};

/// Eigenvalues of a Hermitian 2x2 matrix, ascending.
std::array<double, 2> hermitian_eigenvalues(const Matrix2 &m);

/// Square root of a positive semidefinite Hermitian 2x2 matrix using the
/// closed form sqrt(A) = (A + sqrt(det A) I) / sqrt(tr A + 2 sqrt(det A)).
Matrix2 psd_sqrt(const Matrix2 &m);

/// Hermitian, unit-trace, positive semidefinite 2x2 matrix.
class DensityMatrix {
  public:
    /// Validates the invariants; throws Error(InvalidState) otherwise.
    static DensityMatrix from_matrix(const Matrix2 &m);
    /// (I + v.sigma)/2 for |v| <= 1. Mixed states are allowed here.
    static DensityMatrix from_bloch(const BlochVector &v);
    static DensityMatrix maximally_mixed();

    const Matrix2 &matrix() const { return m_; }
    BlochVector bloch() const;

  private:
    explicit DensityMatrix(const Matrix2 &m) : m_(m) {}
    Matrix2 m_;
};

/// Hermitian positive semidefinite 2x2 matrix.
class PovmElement {
  public:
    static PovmElement from_matrix(const Matrix2 &m);
    /// weight * |v><v| for a unit Bloch vector v.
    static PovmElement weighted_projector(const BlochVector &v, double weight);

    const Matrix2 &matrix() const { return m_; }

  private:
    explicit PovmElement(const Matrix2 &m) : m_(m) {}
    Matrix2 m_;
};

class Povm {
  public:
    /// Throws Error(InvalidParameter) when the elements do not sum to the
    /// identity or the label count does not match.
    Povm(std::vector<PovmElement> elements, std::vector<std::string> labels);

    std::size_t size() const { return elements_.size(); }
    const PovmElement &element(std::size_t i) const { return elements_.at(i); }
    const std::string &label(std::size_t i) const { return labels_.at(i); }
    const std::vector<PovmElement> &elements() const { return elements_; }

  private:
    std::vector<PovmElement> elements_;
    std::vector<std::string> labels_;
};

/// Pure state for a unit Bloch vector (|v| = 1 within 1e-9).
DensityMatrix pure_from_bloch(const BlochVector &v);
BlochVector bloch_of(const DensityMatrix &rho);

/// trace(rho e), clamped to [0, 1].
double born_probability(const DensityMatrix &rho, const PovmElement &e);

/// sqrt(e) rho sqrt(e) / trace(...). Throws Error(UndefinedConditional) when
/// the outcome has zero probability.
DensityMatrix sqrt_post_measurement_state(const DensityMatrix &rho, const PovmElement &e);

/// (1 - p) rho + p I/2.
DensityMatrix depolarize(const DensityMatrix &rho, double p);

/// Inverse-CDF draw over the Born distribution. Returns a 0-based position
/// in `povm`; outcomes with zero probability are never returned.
std::size_t sample_outcome(const DensityMatrix &rho, const Povm &povm, double u);

/// trace(rho sigma); equals the fidelity when either argument is pure.
double overlap(const DensityMatrix &rho, const DensityMatrix &sigma);

}  // namespace scqkd

#endif  // SCQKD_BLOCH_HPP

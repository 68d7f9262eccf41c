// Copyright 2026 The weakmeas Authors
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

#ifndef _WEAKMEAS_QUBIT_H
#define _WEAKMEAS_QUBIT_H

#include <array>
#include <complex>
#include <numbers>

namespace weakmeas {

using cplx = std::complex<double>;

inline constexpr double PI = std::numbers::pi;
inline constexpr double TWO_PI = 2 * std::numbers::pi;

/// Measurement outcome label. Outcomes are always +1 / -1, never 0 / 1.
/// For sigma_z, +1 is |0> and -1 is |1>.
enum class Outcome : int { plus = +1, minus = -1 };

inline constexpr int sign_of(Outcome o) {
    return static_cast<int>(o);
}

/// Dense 2x2 complex matrix, row-major.
struct Mat2 {
    std::array<cplx, 4> e{};

    static Mat2 identity();
    static Mat2 pauli_x();
    static Mat2 pauli_y();
    static Mat2 pauli_z();
    static Mat2 outer(const std::array<cplx, 2> &ket, const std::array<cplx, 2> &bra_source);

    cplx &operator()(int row, int col) {
        return e[2 * row + col];
    }
    const cplx &operator()(int row, int col) const {
        return e[2 * row + col];
    }

    Mat2 operator+(const Mat2 &other) const;
    Mat2 operator-(const Mat2 &other) const;
    Mat2 operator*(const Mat2 &other) const;
    Mat2 operator*(cplx scalar) const;

    Mat2 adjoint() const;
    cplx trace() const;
    std::array<cplx, 2> apply(const std::array<cplx, 2> &ket) const;
    /// <bra| M |ket>
    cplx sandwich(const std::array<cplx, 2> &bra, const std::array<cplx, 2> &ket) const;
    /// Largest entrywise absolute difference.
    double max_abs_diff(const Mat2 &other) const;
};

/// Signal qubit sin(a)|0> + cos(a) e^{i phi}|1>.
///
/// Angles are reduced on construction: alpha into [0, pi) (alpha + pi is
/// the same ray up to a global sign) and phi into [0, 2 pi). After the
/// reduction sin(alpha) >= 0, so the |0> amplitude is real and
/// non-negative.
class PureState {
   public:
    static PureState make(double alpha, double phi);

    double alpha() const {
        return alpha_;
    }
    double phi() const {
        return phi_;
    }
    const std::array<cplx, 2> &amplitudes() const {
        return amps_;
    }
    cplx amp0() const {
        return amps_[0];
    }
    cplx amp1() const {
        return amps_[1];
    }
    /// |Phi><Phi|
    Mat2 density() const;

   private:
    PureState(double alpha, double phi);
    double alpha_;
    double phi_;
    std::array<cplx, 2> amps_;
};

/// Bloch direction n = (sin t cos v, sin t sin v, cos t) of the observable
/// sigma.n. theta is folded into [0, pi] and varphi into [0, 2 pi).
class ObservableDirection {
   public:
    static ObservableDirection make(double theta, double varphi);
    /// The sigma_z axis (theta = 0).
    static ObservableDirection z_axis();

    double theta() const {
        return theta_;
    }
    double varphi() const {
        return varphi_;
    }
    const std::array<double, 3> &n_vec() const {
        return n_;
    }
    /// sigma.n as a matrix.
    Mat2 observable() const;
    /// Eigenvector of sigma.n for the given eigenvalue, in the canonical
    /// phase: |+> = cos(t/2)|0> + e^{iv} sin(t/2)|1>,
    /// |-> = sin(t/2)|0> - e^{iv} cos(t/2)|1>.
    std::array<cplx, 2> eigenvector(Outcome o) const;

   private:
    ObservableDirection(double theta, double varphi);
    double theta_;
    double varphi_;
    std::array<double, 3> n_;
};

/// 2x2 density matrix. Construction checks hermiticity, unit trace and
/// positivity to within 1e-12.
class DensityMatrix {
   public:
    static constexpr double TOLERANCE = 1e-12;

    explicit DensityMatrix(const Mat2 &entries);

    const Mat2 &entries() const {
        return m_;
    }
    cplx operator()(int row, int col) const {
        return m_(row, col);
    }
    /// Ascending eigenvalues.
    std::array<double, 2> eigenvalues() const;
    /// tr(rho P)
    double expectation_of(const Mat2 &op) const;

   private:
    Mat2 m_;
};

PureState make_state(double alpha, double phi);
ObservableDirection make_direction(double theta, double varphi);

/// |o><o| for the eigenvector of sigma.n with eigenvalue o.
DensityMatrix projector(const ObservableDirection &dir, Outcome o);

/// <Phi| sigma.n |Phi>
double expectation(const PureState &state, const ObservableDirection &dir);

/// <Phi|o><o|Phi>, evaluated in closed form.
double born_probability(const PureState &state, const ObservableDirection &dir, Outcome o);

/// |<[sigma_z, sigma.n]>| = |2 sin(2a) sin(t) sin(v - phi)|.
double commutator_magnitude(const PureState &state, const ObservableDirection &dir);

/// Reduce x into [0, period).
double wrap_angle(double x, double period);

}  // namespace weakmeas

#endif

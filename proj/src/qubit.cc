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

#include "weakmeas/qubit.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "weakmeas/errors.h"

namespace weakmeas {

namespace {

void require_finite(double x, const char *name) {
    if (!std::isfinite(x)) {
        throw InvalidParameter(std::string(name) + " must be finite");
    }
}

}  // namespace

double wrap_angle(double x, double period) {
    double r = std::fmod(x, period);
    if (r < 0) {
        r += period;
    }
    // fmod of a tiny negative number can round up to exactly `period`.
    if (r >= period) {
        r = 0;
    }
    return r;
}

Mat2 Mat2::identity() {
    return Mat2{{1, 0, 0, 1}};
}

Mat2 Mat2::pauli_x() {
    return Mat2{{0, 1, 1, 0}};
}

Mat2 Mat2::pauli_y() {
    return Mat2{{0, cplx{0, -1}, cplx{0, 1}, 0}};
}

Mat2 Mat2::pauli_z() {
    return Mat2{{1, 0, 0, -1}};
}

Mat2 Mat2::outer(const std::array<cplx, 2> &ket, const std::array<cplx, 2> &bra_source) {
    Mat2 m;
    for (int r = 0; r < 2; r++) {
        for (int c = 0; c < 2; c++) {
            m(r, c) = ket[r] * std::conj(bra_source[c]);
        }
    }
    return m;
}

Mat2 Mat2::operator+(const Mat2 &other) const {
    Mat2 m;
    for (size_t k = 0; k < 4; k++) {
        m.e[k] = e[k] + other.e[k];
    }
    return m;
}

Mat2 Mat2::operator-(const Mat2 &other) const {
    Mat2 m;
    for (size_t k = 0; k < 4; k++) {
        m.e[k] = e[k] - other.e[k];
    }
    return m;
}

Mat2 Mat2::operator*(const Mat2 &other) const {
    Mat2 m;
    for (int r = 0; r < 2; r++) {
        for (int c = 0; c < 2; c++) {
            m(r, c) = (*this)(r, 0) * other(0, c) + (*this)(r, 1) * other(1, c);
        }
    }
    return m;
}

Mat2 Mat2::operator*(cplx scalar) const {
    Mat2 m = *this;
    for (auto &x : m.e) {
        x *= scalar;
    }
    return m;
}

Mat2 Mat2::adjoint() const {
    return Mat2{{std::conj(e[0]), std::conj(e[2]), std::conj(e[1]), std::conj(e[3])}};
}

cplx Mat2::trace() const {
    return e[0] + e[3];
}

std::array<cplx, 2> Mat2::apply(const std::array<cplx, 2> &ket) const {
    return {e[0] * ket[0] + e[1] * ket[1], e[2] * ket[0] + e[3] * ket[1]};
}

cplx Mat2::sandwich(const std::array<cplx, 2> &bra, const std::array<cplx, 2> &ket) const {
    auto v = apply(ket);
    return std::conj(bra[0]) * v[0] + std::conj(bra[1]) * v[1];
}

double Mat2::max_abs_diff(const Mat2 &other) const {
    double d = 0;
    for (size_t k = 0; k < 4; k++) {
        d = std::max(d, std::abs(e[k] - other.e[k]));
    }
    return d;
}

PureState::PureState(double alpha, double phi) : alpha_(alpha), phi_(phi) {
    amps_[0] = std::sin(alpha);
    amps_[1] = std::cos(alpha) * std::polar(1.0, phi);
}

PureState PureState::make(double alpha, double phi) {
    require_finite(alpha, "alpha");
    require_finite(phi, "phi");
    return PureState(wrap_angle(alpha, PI), wrap_angle(phi, TWO_PI));
}

Mat2 PureState::density() const {
    return Mat2::outer(amps_, amps_);
}

ObservableDirection::ObservableDirection(double theta, double varphi) : theta_(theta), varphi_(varphi) {
    double st = std::sin(theta);
    n_ = {st * std::cos(varphi), st * std::sin(varphi), std::cos(theta)};
}

ObservableDirection ObservableDirection::make(double theta, double varphi) {
    require_finite(theta, "theta");
    require_finite(varphi, "varphi");
    double t = wrap_angle(theta, TWO_PI);
    double v = varphi;
    if (t > PI) {
        t = TWO_PI - t;
        v += PI;
    }
    return ObservableDirection(t, wrap_angle(v, TWO_PI));
}

ObservableDirection ObservableDirection::z_axis() {
    return ObservableDirection(0, 0);
}

Mat2 ObservableDirection::observable() const {
    return Mat2::pauli_x() * n_[0] + Mat2::pauli_y() * n_[1] + Mat2::pauli_z() * n_[2];
}

std::array<cplx, 2> ObservableDirection::eigenvector(Outcome o) const {
    double c = std::cos(theta_ / 2);
    double s = std::sin(theta_ / 2);
    cplx phase = std::polar(1.0, varphi_);
    if (o == Outcome::plus) {
        return {c, phase * s};
    }
    return {s, -phase * c};
}

DensityMatrix::DensityMatrix(const Mat2 &entries) : m_(entries) {
    if (m_.max_abs_diff(m_.adjoint()) > TOLERANCE) {
        throw InvalidParameter("density matrix is not hermitian");
    }
    if (std::abs(m_.trace() - cplx{1}) > TOLERANCE) {
        throw InvalidParameter("density matrix trace is not 1");
    }
    if (eigenvalues()[0] < -TOLERANCE) {
        throw InvalidParameter("density matrix has a negative eigenvalue");
    }
}

std::array<double, 2> DensityMatrix::eigenvalues() const {
    double a = m_(0, 0).real();
    double d = m_(1, 1).real();
    double b = std::abs(m_(0, 1));
    double mid = (a + d) / 2;
    double rad = std::hypot((a - d) / 2, b);
    return {mid - rad, mid + rad};
}

double DensityMatrix::expectation_of(const Mat2 &op) const {
    return (m_ * op).trace().real();
}

PureState make_state(double alpha, double phi) {
    return PureState::make(alpha, phi);
}

ObservableDirection make_direction(double theta, double varphi) {
    return ObservableDirection::make(theta, varphi);
}

DensityMatrix projector(const ObservableDirection &dir, Outcome o) {
    auto v = dir.eigenvector(o);
    return DensityMatrix(Mat2::outer(v, v));
}

double expectation(const PureState &state, const ObservableDirection &dir) {
    const auto &a = state.amplitudes();
    return dir.observable().sandwich(a, a).real();
}

double born_probability(const PureState &state, const ObservableDirection &dir, Outcome o) {
    double sa2 = std::sin(state.alpha()) * std::sin(state.alpha());
    double ca2 = 1 - sa2;
    double ch2 = std::cos(dir.theta() / 2) * std::cos(dir.theta() / 2);
    double sh2 = 1 - ch2;
    // sin2a sin(t/2) cos(t/2) cos(v - phi) = (1/2) sin2a sin t cos(v - phi)
    double coherent = 0.5 * std::sin(2 * state.alpha()) * std::sin(dir.theta()) * std::cos(dir.varphi() - state.phi());
    if (o == Outcome::plus) {
        return sa2 * ch2 + ca2 * sh2 + coherent;
    }
    return ca2 * ch2 + sa2 * sh2 - coherent;
}

double commutator_magnitude(const PureState &state, const ObservableDirection &dir) {
    return std::abs(2 * std::sin(2 * state.alpha()) * std::sin(dir.theta()) * std::sin(dir.varphi() - state.phi()));
}

}  // namespace weakmeas

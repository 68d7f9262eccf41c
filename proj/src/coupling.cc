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

#include "weakmeas/coupling.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "weakmeas/errors.h"

namespace weakmeas {

namespace {

constexpr double SNAP = 1e-12;

struct Trig {
    double sa2;  // sin^2 a
    double ca2;  // cos^2 a
    double ch2;  // cos^2 (t/2)
    double sh2;  // sin^2 (t/2)
    double coherent_shape;  // (1/2) sin 2a sin t cos(v - phi)
};

Trig trig_of(const JointSetup &s) {
    double sa = std::sin(s.state.alpha());
    double ch = std::cos(s.b_dir.theta() / 2);
    Trig t;
    t.sa2 = sa * sa;
    t.ca2 = 1 - t.sa2;
    t.ch2 = ch * ch;
    t.sh2 = 1 - t.ch2;
    t.coherent_shape =
        0.5 * std::sin(2 * s.state.alpha()) * std::sin(s.b_dir.theta()) * std::cos(s.b_dir.varphi() - s.state.phi());
    return t;
}

}  // namespace

Coupling::Coupling(double gamma) : gamma_(gamma) {
    gamma_bar_ = std::sqrt(std::max(0.0, 1 - gamma * gamma));
    kappa_ = std::clamp(2 * gamma * gamma - 1, 0.0, 1.0);
    deco_ = std::clamp(2 * gamma * gamma_bar_, 0.0, 1.0);
}

Coupling Coupling::from_gamma(double gamma) {
    if (!std::isfinite(gamma) || gamma < GAMMA_MIN - SNAP || gamma > GAMMA_MAX + SNAP) {
        throw InvalidParameter("gamma must lie in [1/sqrt(2), 1], got " + std::to_string(gamma));
    }
    return Coupling(std::clamp(gamma, GAMMA_MIN, GAMMA_MAX));
}

Coupling Coupling::from_kappa(double kappa) {
    if (!std::isfinite(kappa) || kappa < -SNAP || kappa > 1 + SNAP) {
        throw InvalidParameter("kappa must lie in [0, 1], got " + std::to_string(kappa));
    }
    kappa = std::clamp(kappa, 0.0, 1.0);
    return Coupling(std::clamp(std::sqrt((1 + kappa) / 2), GAMMA_MIN, GAMMA_MAX));
}

bool BinaryDistribution::is_proper(double tol) const {
    return p_plus >= -tol && p_plus <= 1 + tol && p_minus >= -tol && p_minus <= 1 + tol && std::abs(sum() - 1) <= tol;
}

BinaryDistribution JointDistribution::meter_marginal() const {
    return {p[0] + p[1], p[2] + p[3]};
}

BinaryDistribution JointDistribution::b_marginal() const {
    return {p[0] + p[2], p[1] + p[3]};
}

std::array<cplx, 4> entangled_state(const JointSetup &setup) {
    const auto &c = setup.coupling;
    cplx a0 = setup.state.amp0();
    cplx a1 = setup.state.amp1();
    return {
        a0 * c.gamma(),
        a1 * c.gamma_bar(),
        a0 * c.gamma_bar(),
        a1 * c.gamma(),
    };
}

BinaryDistribution meter_probabilities(const JointSetup &setup) {
    const auto &c = setup.coupling;
    double sa2 = std::sin(setup.state.alpha()) * std::sin(setup.state.alpha());
    double gb2 = c.gamma_bar() * c.gamma_bar();
    return {c.kappa() * sa2 + gb2, c.kappa() * (1 - sa2) + gb2};
}

DensityMatrix post_measurement_density(const JointSetup &setup) {
    double a = setup.state.alpha();
    double sa = std::sin(a);
    double ca = std::cos(a);
    cplx off = setup.coupling.deco() * sa * ca * std::polar(1.0, -setup.state.phi());
    Mat2 m{{sa * sa, off, std::conj(off), ca * ca}};
    return DensityMatrix(m);
}

Decomposition decompose(const JointSetup &setup) {
    Trig t = trig_of(setup);
    const auto &c = setup.coupling;
    // gamma*gamma_bar * sin2a * sin t * cos = deco * (1/2) sin2a sin t cos
    return {t.sa2 * t.ch2 + t.ca2 * t.sh2, c.deco() * t.coherent_shape};
}

BinaryDistribution b_probabilities(const JointSetup &setup) {
    Decomposition d = decompose(setup);
    double plus = d.independent_part + d.coherent_coefficient;
    return {plus, 1 - plus};
}

JointDistribution joint_distribution(const JointSetup &setup) {
    Trig t = trig_of(setup);
    const auto &c = setup.coupling;
    double g2 = c.gamma() * c.gamma();
    double gb2 = c.gamma_bar() * c.gamma_bar();
    // Each meter branch carries the same cross term gamma*gamma_bar*sin2a*
    // sin(t/2)cos(t/2)cos(v - phi), which is half the coherent coefficient.
    double cross = 0.5 * c.deco() * t.coherent_shape;

    JointDistribution j;
    j.p[JointDistribution::index(Outcome::plus, Outcome::plus)] = g2 * t.sa2 * t.ch2 + gb2 * t.ca2 * t.sh2 + cross;
    j.p[JointDistribution::index(Outcome::plus, Outcome::minus)] = g2 * t.sa2 * t.sh2 + gb2 * t.ca2 * t.ch2 - cross;
    j.p[JointDistribution::index(Outcome::minus, Outcome::plus)] = gb2 * t.sa2 * t.ch2 + g2 * t.ca2 * t.sh2 + cross;
    j.p[JointDistribution::index(Outcome::minus, Outcome::minus)] = gb2 * t.sa2 * t.sh2 + g2 * t.ca2 * t.ch2 - cross;
    for (auto &x : j.p) {
        x = std::max(0.0, x);
    }
    return j;
}

}  // namespace weakmeas

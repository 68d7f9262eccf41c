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

#include "weakmeas/correction.h"

#include <cmath>

#include "weakmeas/errors.h"

namespace weakmeas {

void require_meter_information(const Coupling &c) {
    if (c.kappa() <= DEGENERACY_THRESHOLD) {
        throw DegenerateCoupling(Channel::A, "zero measurement strength (kappa=0): the meter carries no information");
    }
}

void require_correctable(const Coupling &c) {
    require_meter_information(c);
    if (c.deco() <= DEGENERACY_THRESHOLD) {
        throw DegenerateCoupling(Channel::B, "projective pre-measurement: B-channel correction impossible");
    }
}

BinaryDistribution recover_A(const BinaryDistribution &p_m, const Coupling &c) {
    require_meter_information(c);
    double gb2 = c.gamma_bar() * c.gamma_bar();
    return {(p_m.p_plus - gb2) / c.kappa(), (p_m.p_minus - gb2) / c.kappa()};
}

double estimate_A(const BinaryDistribution &p_m, const Coupling &c) {
    require_meter_information(c);
    return (p_m.p_plus - p_m.p_minus) / c.kappa();
}

BinaryDistribution recover_B(const BinaryDistribution &p_b,
                             const BinaryDistribution &p_m,
                             const ObservableDirection &dir,
                             const Coupling &c) {
    require_correctable(c);
    double ch = std::cos(dir.theta() / 2);
    double ch2 = ch * ch;
    double sh2 = 1 - ch2;
    double gb2 = c.gamma_bar() * c.gamma_bar();
    double n_hat = (ch2 * p_m.p_plus + sh2 * p_m.p_minus - gb2) / c.kappa();
    double lost = 1 - c.deco();
    return {
        (p_b.p_plus - lost * n_hat) / c.deco(),
        (p_b.p_minus - lost * (1 - n_hat)) / c.deco(),
    };
}

double estimate_B(const BinaryDistribution &p_b,
                  const BinaryDistribution &p_m,
                  const ObservableDirection &dir,
                  const Coupling &c) {
    require_correctable(c);
    double a = estimate_A(p_m, c);
    return (p_b.p_plus - p_b.p_minus - (1 - c.deco()) * std::cos(dir.theta()) * a) / c.deco();
}

RecoveredStatistics recover(const BinaryDistribution &p_m,
                            const BinaryDistribution &p_b,
                            const ObservableDirection &dir,
                            const Coupling &c) {
    RecoveredStatistics r;
    r.p_A = recover_A(p_m, c);
    r.p_B = recover_B(p_b, p_m, dir, c);
    constexpr double tol = 1e-9;
    for (double x : {r.p_A.p_plus, r.p_A.p_minus, r.p_B.p_plus, r.p_B.p_minus}) {
        if (x < -tol || x > 1 + tol) {
            r.in_range = false;
        }
    }
    return r;
}

const char *znzd_name(ZnzdClass z) {
    switch (z) {
        case ZnzdClass::trivial_znzd:
            return "trivial_znzd";
        case ZnzdClass::nontrivial_znzd:
            return "nontrivial_znzd";
        case ZnzdClass::not_znzd:
            return "not_znzd";
    }
    return "?";
}

ZnzdClass is_znzd(const PureState &state, const ObservableDirection &dir, double tol) {
    if (!(tol > 0)) {
        throw InvalidParameter("znzd tolerance must be positive");
    }
    double s2a = std::abs(std::sin(2 * state.alpha()));
    double st = std::abs(std::sin(dir.theta()));
    if (s2a <= tol || st <= tol) {
        return ZnzdClass::trivial_znzd;
    }
    if (std::abs(std::cos(dir.varphi() - state.phi())) <= tol) {
        return ZnzdClass::nontrivial_znzd;
    }
    return ZnzdClass::not_znzd;
}

}  // namespace weakmeas

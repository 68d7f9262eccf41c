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

#include "weakmeas/tensor_oracle.h"

#include <algorithm>
#include <cmath>

namespace weakmeas::oracle {

namespace {

using Vec4 = std::array<cplx, 4>;
using Mat4 = std::array<std::array<cplx, 4>, 4>;

// Basis index of |s>|m>.
constexpr int idx(int s, int m) {
    return s + 2 * m;
}

Mat4 meter_projector(int meter_bit) {
    Mat4 p{};
    for (int s = 0; s < 2; s++) {
        p[idx(s, meter_bit)][idx(s, meter_bit)] = 1;
    }
    return p;
}

Vec4 mat_vec(const Mat4 &m, const Vec4 &v) {
    Vec4 r{};
    for (int i = 0; i < 4; i++) {
        for (int j = 0; j < 4; j++) {
            r[i] += m[i][j] * v[j];
        }
    }
    return r;
}

double norm2(const Vec4 &v) {
    double n = 0;
    for (const auto &x : v) {
        n += std::norm(x);
    }
    return n;
}

}  // namespace

std::array<cplx, 2> sigma_n_eigenvector(double theta, double varphi, int sign) {
    double nx = std::sin(theta) * std::cos(varphi);
    double ny = std::sin(theta) * std::sin(varphi);
    double nz = std::cos(theta);
    cplx m00 = nz;
    cplx m01{nx, -ny};
    cplx m10{nx, ny};
    cplx m11 = -nz;

    double tr = (m00 + m11).real();
    double det = (m00 * m11 - m01 * m10).real();
    double disc = std::sqrt(std::max(0.0, tr * tr / 4 - det));
    double lambda = tr / 2 + (sign > 0 ? disc : -disc);

    // Rows of (M - lambda I) are orthogonal to the eigenvector; pick the
    // better-conditioned candidate from the null space.
    std::array<cplx, 2> v1{m01, lambda - m00};
    std::array<cplx, 2> v2{lambda - m11, m10};
    double n1 = std::norm(v1[0]) + std::norm(v1[1]);
    double n2 = std::norm(v2[0]) + std::norm(v2[1]);
    auto &v = n1 >= n2 ? v1 : v2;
    double n = std::sqrt(std::max(n1, n2));
    return {v[0] / n, v[1] / n};
}

Result simulate(const Scenario &s) {
    Result r{};
    double g = s.gamma;
    double gb = std::sqrt(1 - g * g);
    cplx a0 = std::sin(s.alpha);
    cplx a1 = std::cos(s.alpha) * std::exp(cplx{0, s.phi});

    // Signal amplitude times meter weight, branch by branch.
    Vec4 psi{};
    psi[idx(0, 0)] = a0 * g;
    psi[idx(1, 0)] = a1 * gb;
    psi[idx(0, 1)] = a0 * gb;
    psi[idx(1, 1)] = a1 * g;
    r.psi = psi;

    // rho_s = sum_m <m|Psi><Psi|m>
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            cplx acc = 0;
            for (int m = 0; m < 2; m++) {
                acc += psi[idx(i, m)] * std::conj(psi[idx(j, m)]);
            }
            r.rho[2 * i + j] = acc;
        }
    }

    std::array<std::array<cplx, 2>, 2> eig{sigma_n_eigenvector(s.theta, s.varphi, +1),
                                           sigma_n_eigenvector(s.theta, s.varphi, -1)};

    // Meter bit 0 reads out as m = +1.
    for (int mi = 0; mi < 2; mi++) {
        Vec4 branch = mat_vec(meter_projector(mi), psi);
        double pm = norm2(branch);
        r.meter[mi] = pm;
        std::array<cplx, 2> cond{branch[idx(0, mi)], branch[idx(1, mi)]};
        if (pm > 0) {
            cond[0] /= std::sqrt(pm);
            cond[1] /= std::sqrt(pm);
        }
        for (int bi = 0; bi < 2; bi++) {
            cplx amp = std::conj(eig[bi][0]) * cond[0] + std::conj(eig[bi][1]) * cond[1];
            r.joint[2 * mi + bi] = pm * std::norm(amp);
        }
    }

    for (int bi = 0; bi < 2; bi++) {
        // tr(rho |e><e|) = <e|rho|e>
        const auto &e = eig[bi];
        cplx acc = 0;
        for (int i = 0; i < 2; i++) {
            for (int j = 0; j < 2; j++) {
                acc += std::conj(e[i]) * r.rho[2 * i + j] * e[j];
            }
        }
        r.b[bi] = acc.real();
    }
    return r;
}

}  // namespace weakmeas::oracle

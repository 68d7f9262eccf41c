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

#ifndef _WEAKMEAS_TENSOR_ORACLE_H
#define _WEAKMEAS_TENSOR_ORACLE_H

#include <array>
#include <complex>

// Brute-force reference for the sequential measurement. It shares no code
// with the closed forms: the two-qubit state is built amplitude by
// amplitude, the meter is projected with explicit 4x4 projectors, the
// partial trace is an explicit sum, and the sigma.n eigenbasis is found by
// diagonalising the 2x2 observable numerically.

namespace weakmeas::oracle {

using cplx = std::complex<double>;

struct Scenario {
    double alpha;
    double phi;
    double theta;
    double varphi;
    double gamma;
};

struct Result {
    /// Index 0 is the +1 outcome.
    std::array<double, 2> meter;
    std::array<double, 2> b;
    /// Row-major (m, b) over (+,+), (+,-), (-,+), (-,-).
    std::array<double, 4> joint;
    /// Reduced signal state, row-major.
    std::array<cplx, 4> rho;
    /// Entangled state over |s,m> = |0,0>, |1,0>, |0,1>, |1,1>.
    std::array<cplx, 4> psi;
};

Result simulate(const Scenario &s);

/// Eigenvector of sigma.n for the eigenvalue closest to `sign`, obtained
/// numerically. Arbitrary global phase.
std::array<cplx, 2> sigma_n_eigenvector(double theta, double varphi, int sign);

}  // namespace weakmeas::oracle

#endif

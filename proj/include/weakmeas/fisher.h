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

#ifndef _WEAKMEAS_FISHER_H
#define _WEAKMEAS_FISHER_H

#include <cstdint>
#include <vector>

#include "weakmeas/coupling.h"
#include "weakmeas/errors.h"

namespace weakmeas {

/// A binary distribution with either probability below this is treated as
/// sitting on the simplex boundary.
inline constexpr double DISTRIBUTION_EDGE = 1e-12;

/// Offset of the sweep grid from the open ends of the gamma domain.
inline constexpr double TRADEOFF_DELTA = 1e-6;

struct FisherReport {
    double i_A_joint = 0;
    double i_B_joint = 0;
    double i_A_proj = 0;
    double i_B_proj = 0;
    double epsilon = 0;
    double eta = 0;
};

struct TradeoffPoint {
    double gamma = 0;
    double kappa = 0;
    double epsilon = 0;
    double eta = 0;
    /// False when a Fisher information on this row was degenerate; the
    /// precision fields are NaN then.
    bool valid = true;
};

/// Fisher information of a binary distribution whose plus-probability
/// moves with sensitivity dp: dp^2 / (p+ p-).
double fisher_binary(const BinaryDistribution &p, double dp, Channel channel = Channel::A);

/// Information about <A> carried by one meter readout.
double fisher_A_joint(const JointSetup &setup);
/// Information about <B> carried by one disturbed sigma.n readout.
double fisher_B_joint(const JointSetup &setup);
double fisher_A_proj(const PureState &state);
double fisher_B_proj(const PureState &state, const ObservableDirection &dir);

/// epsilon = I_A_joint / I_A_proj, eta = I_B_joint / I_B_proj.
FisherReport precisions(const JointSetup &setup);

/// Cramer-Rao lower bound 1 / (trials * fi).
double cramer_rao_bound(double fi, uint64_t trials);

/// Sweep of (epsilon, eta) over the coupling strength.
///
/// `grid` values of gamma are spaced uniformly on
/// [1/sqrt(2) + TRADEOFF_DELTA, 1 - TRADEOFF_DELTA]. The exact endpoints
/// are prepended and appended as limit rows (epsilon, eta) = (0, 1) and
/// (1, 0), so the result holds grid + 2 rows in increasing gamma.
///
/// Throws InvalidParameter for grid < 2, for eigenstates of either
/// observable and for states whose sigma.n statistics are unaffected by the
/// meter.
std::vector<TradeoffPoint> tradeoff_curve(const PureState &state, const ObservableDirection &dir, uint64_t grid);

}  // namespace weakmeas

#endif

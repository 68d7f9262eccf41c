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

#ifndef _WEAKMEAS_CORRECTION_H
#define _WEAKMEAS_CORRECTION_H

#include "weakmeas/coupling.h"

namespace weakmeas {

/// kappa or deco at or below this value is treated as exactly zero.
inline constexpr double DEGENERACY_THRESHOLD = 1e-9;
inline constexpr double ZNZD_DEFAULT_TOL = 1e-9;

/// Undisturbed statistics of sigma_z and sigma.n reconstructed from the
/// observed meter and B distributions.
struct RecoveredStatistics {
    BinaryDistribution p_A;
    BinaryDistribution p_B;
    /// False when any recovered value lies outside [-1e-9, 1 + 1e-9].
    /// Values are never clamped.
    bool in_range = true;
};

/// Throws DegenerateCoupling(Channel::A) when kappa is degenerate.
void require_meter_information(const Coupling &c);
/// Throws DegenerateCoupling for channel A or B when either kappa or deco
/// is degenerate.
void require_correctable(const Coupling &c);

/// Undo the meter's mixing: ((p+ - gb^2)/kappa, (p- - gb^2)/kappa).
BinaryDistribution recover_A(const BinaryDistribution &p_m, const Coupling &c);

/// (p+ - p-) / kappa. Affine in the observed frequencies.
double estimate_A(const BinaryDistribution &p_m, const Coupling &c);

/// Disturbance correction of the sigma.n statistics.
///
/// The coherence-independent part n is rebuilt from the meter data,
///   n_hat = (cos^2(t/2) p_m+ + sin^2(t/2) p_m- - gb^2) / kappa,
/// subtracted with weight (1 - deco), and the remaining coherent part is
/// rescaled by 1/deco.
BinaryDistribution recover_B(const BinaryDistribution &p_b,
                             const BinaryDistribution &p_m,
                             const ObservableDirection &dir,
                             const Coupling &c);

/// (p_b+ - p_b- - (1 - deco) cos(t) estimate_A) / deco. Affine in all four
/// observed frequencies.
double estimate_B(const BinaryDistribution &p_b,
                  const BinaryDistribution &p_m,
                  const ObservableDirection &dir,
                  const Coupling &c);

RecoveredStatistics recover(const BinaryDistribution &p_m,
                            const BinaryDistribution &p_b,
                            const ObservableDirection &dir,
                            const Coupling &c);

enum class ZnzdClass { trivial_znzd, nontrivial_znzd, not_znzd };

const char *znzd_name(ZnzdClass z);

/// Classify whether the meter leaves the sigma.n statistics untouched for
/// this state. Trivial when sin(2a) or sin(t) vanishes (the observables
/// commute on the state), nontrivial when only cos(v - phi) vanishes.
ZnzdClass is_znzd(const PureState &state, const ObservableDirection &dir, double tol = ZNZD_DEFAULT_TOL);

}  // namespace weakmeas

#endif

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

#ifndef _WEAKMEAS_COUPLING_H
#define _WEAKMEAS_COUPLING_H

#include <array>
#include <cstddef>

#include "weakmeas/qubit.h"

namespace weakmeas {

/// Signal-meter coupling strength.
///
/// The entangling interaction maps the signal amplitudes onto two meter
/// branches weighted by gamma and gamma_bar = sqrt(1 - gamma^2). Derived
/// quantities:
///   kappa = 2 gamma^2 - 1      measurement strength (0 = no coupling, 1 = projective)
///   deco  = 2 gamma gamma_bar  surviving fraction of the signal coherence
/// so that kappa^2 + deco^2 = 1.
///
/// gamma is restricted to [1/sqrt(2), 1]. Both endpoints are representable;
/// it is the correction layer that refuses them.
class Coupling {
   public:
    /// Inputs within 1e-12 of the domain are snapped onto it.
    static Coupling from_gamma(double gamma);
    /// Inverse of kappa = 2 gamma^2 - 1.
    static Coupling from_kappa(double kappa);

    double gamma() const {
        return gamma_;
    }
    double gamma_bar() const {
        return gamma_bar_;
    }
    double kappa() const {
        return kappa_;
    }
    double deco() const {
        return deco_;
    }

   private:
    explicit Coupling(double gamma);
    double gamma_;
    double gamma_bar_;
    double kappa_;
    double deco_;
};

inline constexpr double GAMMA_MIN = 0.70710678118654752440;  // 1/sqrt(2)
inline constexpr double GAMMA_MAX = 1.0;

struct JointSetup {
    PureState state;
    ObservableDirection b_dir;
    Coupling coupling;
};

/// Probabilities of a two-outcome measurement, indexed by +1 / -1.
///
/// This is a plain value. Model outputs are proper distributions;
/// recovered statistics computed from sampled frequencies can legitimately
/// leave [0, 1], so no range invariant is enforced here.
struct BinaryDistribution {
    double p_plus = 0;
    double p_minus = 0;

    double operator[](Outcome o) const {
        return o == Outcome::plus ? p_plus : p_minus;
    }
    double sum() const {
        return p_plus + p_minus;
    }
    /// Both entries in [-tol, 1 + tol] and summing to 1 within tol.
    bool is_proper(double tol = 1e-12) const;
};

/// Joint law of the sequential outcomes (m, b). Cells are stored in the
/// order (+,+), (+,-), (-,+), (-,-).
struct JointDistribution {
    std::array<double, 4> p{};

    static constexpr size_t index(Outcome m, Outcome b) {
        return (m == Outcome::plus ? 0 : 2) + (b == Outcome::plus ? 0 : 1);
    }
    static constexpr Outcome meter_of(size_t cell) {
        return cell < 2 ? Outcome::plus : Outcome::minus;
    }
    static constexpr Outcome b_of(size_t cell) {
        return cell % 2 == 0 ? Outcome::plus : Outcome::minus;
    }

    double operator()(Outcome m, Outcome b) const {
        return p[index(m, b)];
    }
    BinaryDistribution meter_marginal() const;
    BinaryDistribution b_marginal() const;
};

/// Split of P(B = +1) into its coherence-independent part n and the
/// coherent term gamma*gamma_bar*sin(2a)*sin(t)*cos(v - phi). The coherent
/// term enters P(B = +1) with a plus sign and P(B = -1) with a minus sign.
struct Decomposition {
    double independent_part = 0;
    double coherent_coefficient = 0;
};

/// Two-qubit state after the interaction, over |s>|m> in the order
/// |0,0>, |1,0>, |0,1>, |1,1>. Meter |0> is the m = +1 readout.
std::array<cplx, 4> entangled_state(const JointSetup &setup);

BinaryDistribution meter_probabilities(const JointSetup &setup);

/// Signal state after the meter has been read out (and its outcome
/// discarded).
DensityMatrix post_measurement_density(const JointSetup &setup);

/// Outcome probabilities of sigma.n measured on the post-measurement
/// signal state.
BinaryDistribution b_probabilities(const JointSetup &setup);

Decomposition decompose(const JointSetup &setup);

/// Sequential collapse law: meter readout followed by the sigma.n
/// measurement on the conditional signal state.
JointDistribution joint_distribution(const JointSetup &setup);

}  // namespace weakmeas

#endif

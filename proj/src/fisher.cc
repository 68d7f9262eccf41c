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

#include "weakmeas/fisher.h"

#include <cmath>
#include <limits>
#include <string>

#include "weakmeas/correction.h"

namespace weakmeas {

double fisher_binary(const BinaryDistribution &p, double dp, Channel channel) {
    if (!(p.p_plus >= DISTRIBUTION_EDGE && p.p_minus >= DISTRIBUTION_EDGE)) {
        throw DegenerateDistribution(
            channel,
            std::string("channel ") + channel_name(channel) +
                " distribution is on the simplex boundary; Fisher information diverges");
    }
    return dp * dp / (p.p_plus * p.p_minus);
}

// The meter plus-probability is 1/2 + kappa <A> / 2, so its sensitivity to
// <A> is kappa / 2. With the coherence-independent part held fixed, the B
// plus-probability is (1 - deco) n + deco (1 + <B>) / 2, sensitivity deco / 2.

double fisher_A_joint(const JointSetup &setup) {
    return fisher_binary(meter_probabilities(setup), setup.coupling.kappa() / 2, Channel::A);
}

double fisher_B_joint(const JointSetup &setup) {
    return fisher_binary(b_probabilities(setup), setup.coupling.deco() / 2, Channel::B);
}

double fisher_A_proj(const PureState &state) {
    auto z = ObservableDirection::z_axis();
    BinaryDistribution p{born_probability(state, z, Outcome::plus), born_probability(state, z, Outcome::minus)};
    return fisher_binary(p, 0.5, Channel::A);
}

double fisher_B_proj(const PureState &state, const ObservableDirection &dir) {
    BinaryDistribution p{born_probability(state, dir, Outcome::plus), born_probability(state, dir, Outcome::minus)};
    return fisher_binary(p, 0.5, Channel::B);
}

FisherReport precisions(const JointSetup &setup) {
    FisherReport r;
    r.i_A_joint = fisher_A_joint(setup);
    r.i_B_joint = fisher_B_joint(setup);
    r.i_A_proj = fisher_A_proj(setup.state);
    r.i_B_proj = fisher_B_proj(setup.state, setup.b_dir);
    r.epsilon = r.i_A_joint / r.i_A_proj;
    r.eta = r.i_B_joint / r.i_B_proj;
    return r;
}

double cramer_rao_bound(double fi, uint64_t trials) {
    if (trials == 0) {
        throw InvalidParameter("trials must be positive");
    }
    if (!(fi >= 0) || !std::isfinite(fi)) {
        throw InvalidParameter("Fisher information must be finite and non-negative");
    }
    if (fi == 0) {
        throw UnboundedVariance("zero Fisher information: the variance bound is infinite");
    }
    return 1 / (static_cast<double>(trials) * fi);
}

std::vector<TradeoffPoint> tradeoff_curve(const PureState &state, const ObservableDirection &dir, uint64_t grid) {
    if (grid < 2) {
        throw InvalidParameter("tradeoff grid needs at least 2 points");
    }
    auto z = ObservableDirection::z_axis();
    double pa = born_probability(state, z, Outcome::plus);
    double pb = born_probability(state, dir, Outcome::plus);
    if (pa < DISTRIBUTION_EDGE || pa > 1 - DISTRIBUTION_EDGE) {
        throw InvalidParameter("state is an eigenstate of A; precisions are undefined");
    }
    if (pb < DISTRIBUTION_EDGE || pb > 1 - DISTRIBUTION_EDGE) {
        throw InvalidParameter("state is an eigenstate of B; precisions are undefined");
    }
    ZnzdClass zc = is_znzd(state, dir);
    if (zc != ZnzdClass::not_znzd) {
        throw InvalidParameter(std::string("state is ") + znzd_name(zc) +
                               ": B statistics do not depend on the coupling, tradeoff is undefined");
    }

    std::vector<TradeoffPoint> rows;
    rows.reserve(grid + 2);
    rows.push_back({GAMMA_MIN, 0, 0, 1, true});
    double lo = GAMMA_MIN + TRADEOFF_DELTA;
    double hi = GAMMA_MAX - TRADEOFF_DELTA;
    for (uint64_t k = 0; k < grid; k++) {
        double g = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(grid - 1);
        JointSetup s{state, dir, Coupling::from_gamma(g)};
        TradeoffPoint row{g, s.coupling.kappa(), 0, 0, true};
        try {
            FisherReport f = precisions(s);
            row.epsilon = f.epsilon;
            row.eta = f.eta;
        } catch (const DegenerateDistribution &) {
            row.epsilon = row.eta = std::numeric_limits<double>::quiet_NaN();
            row.valid = false;
        }
        rows.push_back(row);
    }
    rows.push_back({GAMMA_MAX, 1, 1, 0, true});
    return rows;
}

}  // namespace weakmeas

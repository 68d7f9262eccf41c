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

#include <cmath>

#include "gtest/gtest.h"
#include "test_util.h"
#include "weakmeas/errors.h"
#include "weakmeas/tensor_oracle.h"

using namespace weakmeas;
using weakmeas::test::Draw;
using weakmeas::test::setup_of;

namespace {

const double G08 = std::sqrt(0.8);

}  // namespace

TEST(coupling, derived_quantities) {
    auto c = Coupling::from_gamma(G08);
    EXPECT_NEAR(c.gamma_bar() * c.gamma_bar(), 0.2, 1e-15);
    EXPECT_NEAR(c.kappa(), 0.6, 1e-15);
    EXPECT_NEAR(c.deco(), 0.8, 1e-15);

    Draw draw(10);
    for (int k = 0; k < 1000; k++) {
        auto cc = Coupling::from_gamma(draw(GAMMA_MIN, GAMMA_MAX));
        EXPECT_NEAR(cc.gamma() * cc.gamma() + cc.gamma_bar() * cc.gamma_bar(), 1, 1e-12);
        EXPECT_NEAR(cc.kappa() * cc.kappa() + cc.deco() * cc.deco(), 1, 1e-12);
        EXPECT_GE(cc.kappa(), 0);
        EXPECT_LE(cc.kappa(), 1);
        EXPECT_GE(cc.deco(), 0);
        EXPECT_LE(cc.deco(), 1);
    }
}

TEST(coupling, endpoints_and_domain) {
    auto none = Coupling::from_gamma(GAMMA_MIN);
    EXPECT_NEAR(none.kappa(), 0, 1e-15);
    EXPECT_NEAR(none.deco(), 1, 1e-15);
    auto proj = Coupling::from_gamma(1);
    EXPECT_EQ(proj.kappa(), 1);
    EXPECT_EQ(proj.deco(), 0);

    EXPECT_THROW(Coupling::from_gamma(0.7), InvalidParameter);
    EXPECT_THROW(Coupling::from_gamma(1.01), InvalidParameter);
    EXPECT_THROW(Coupling::from_gamma(NAN), InvalidParameter);
    EXPECT_THROW(Coupling::from_kappa(-0.1), InvalidParameter);

    EXPECT_NEAR(Coupling::from_kappa(0.6).gamma(), G08, 1e-15);
    EXPECT_EQ(Coupling::from_kappa(1).deco(), 0);
    EXPECT_NEAR(Coupling::from_kappa(0).deco(), 1, 1e-15);
}

TEST(coupling, entangled_state_examples) {
    auto psi = entangled_state(setup_of(0, 0, 0, 0, 0.9));
    EXPECT_NEAR(std::abs(psi[0]), 0, 1e-15);
    EXPECT_NEAR(psi[1].real(), 0.4358898943540674, 1e-12);
    EXPECT_NEAR(std::abs(psi[2]), 0, 1e-15);
    EXPECT_NEAR(psi[3].real(), 0.9, 1e-12);

    psi = entangled_state(setup_of(0.4, 1.3, 0.2, 0.1, GAMMA_MIN));
    EXPECT_NEAR(std::abs(psi[0] - psi[2]), 0, 1e-15);
    EXPECT_NEAR(std::abs(psi[1] - psi[3]), 0, 1e-15);

    psi = entangled_state(setup_of(PI / 2, 0, 0, 0, 1));
    EXPECT_NEAR(psi[0].real(), 1, 1e-15);
    EXPECT_NEAR(std::abs(psi[1]) + std::abs(psi[2]) + std::abs(psi[3]), 0, 1e-15);
}

TEST(coupling, meter_probability_examples) {
    auto p = meter_probabilities(setup_of(PI / 6, 0, 0, 0, G08));
    EXPECT_NEAR(p.p_plus, 0.35, 1e-12);
    EXPECT_NEAR(p.p_minus, 0.65, 1e-12);

    Draw draw(11);
    for (int k = 0; k < 20; k++) {
        p = meter_probabilities(setup_of(draw(0, PI), 0, 0, 0, GAMMA_MIN));
        EXPECT_NEAR(p.p_plus, 0.5, 1e-12);
        EXPECT_NEAR(p.p_minus, 0.5, 1e-12);
    }

    p = meter_probabilities(setup_of(PI / 2, 0, 0, 0, 1));
    EXPECT_NEAR(p.p_plus, 1, 1e-15);
    EXPECT_NEAR(p.p_minus, 0, 1e-15);
}

TEST(coupling, meter_probabilities_match_branch_norms) {
    Draw draw(12);
    for (int k = 0; k < 200; k++) {
        auto s = weakmeas::test::random_scenario(draw).setup();
        auto psi = entangled_state(s);
        auto p = meter_probabilities(s);
        EXPECT_NEAR(p.p_plus, std::norm(psi[0]) + std::norm(psi[1]), 1e-12);
        EXPECT_NEAR(p.p_minus, std::norm(psi[2]) + std::norm(psi[3]), 1e-12);
        double total = 0;
        for (auto a : psi) {
            total += std::norm(a);
        }
        EXPECT_NEAR(total, 1, 1e-12);
    }
}

TEST(coupling, post_measurement_density_examples) {
    auto rho = post_measurement_density(setup_of(PI / 4, 0, 0, 0, G08));
    EXPECT_LT(rho.entries().max_abs_diff(Mat2{{0.5, 0.4, 0.4, 0.5}}), 1e-12);

    auto s = setup_of(0.7, 2.1, 0, 0, GAMMA_MIN);
    EXPECT_LT(post_measurement_density(s).entries().max_abs_diff(s.state.density()), 1e-12);

    s = setup_of(0.7, 2.1, 0, 0, 1);
    double sa = std::sin(0.7);
    double ca = std::cos(0.7);
    EXPECT_LT(post_measurement_density(s).entries().max_abs_diff(Mat2{{sa * sa, 0, 0, ca * ca}}), 1e-12);
}

TEST(coupling, b_probability_examples) {
    auto p = b_probabilities(setup_of(PI / 6, 0, PI / 2, 0, G08));
    EXPECT_NEAR(p.p_plus, 0.8464101615137755, 1e-12);
    EXPECT_NEAR(p.p_minus, 0.1535898384862245, 1e-12);

    auto s = setup_of(0.3, 1.0, 1.2, 0.4, GAMMA_MIN);
    EXPECT_NEAR(b_probabilities(s).p_plus, born_probability(s.state, s.b_dir, Outcome::plus), 1e-12);

    for (double g : {GAMMA_MIN, 0.75, G08, 0.99, 1.0}) {
        p = b_probabilities(setup_of(PI / 4, PI / 2, PI / 2, 0, g));
        EXPECT_NEAR(p.p_plus, 0.5, 1e-12);
        EXPECT_NEAR(p.p_minus, 0.5, 1e-12);
    }
}

TEST(coupling, b_probabilities_are_trace_against_projector) {
    Draw draw(13);
    for (int k = 0; k < 200; k++) {
        auto s = weakmeas::test::random_scenario(draw).setup();
        auto rho = post_measurement_density(s);
        auto p = b_probabilities(s);
        EXPECT_NEAR(p.p_plus, rho.expectation_of(projector(s.b_dir, Outcome::plus).entries()), 1e-12);
        EXPECT_NEAR(p.p_minus, rho.expectation_of(projector(s.b_dir, Outcome::minus).entries()), 1e-12);
    }
}

TEST(coupling, decompose_examples) {
    auto d = decompose(setup_of(PI / 6, 0.4, PI / 3, 0.4, G08));
    EXPECT_NEAR(d.independent_part, 0.375, 1e-12);

    d = decompose(setup_of(0.9, 0.4, 0, 1.4, G08));
    EXPECT_NEAR(d.independent_part, std::sin(0.9) * std::sin(0.9), 1e-12);
    EXPECT_NEAR(d.coherent_coefficient, 0, 1e-12);

    d = decompose(setup_of(PI / 4, 0, PI / 2, 0, G08));
    EXPECT_NEAR(d.coherent_coefficient, 0.4, 1e-12);
}

TEST(coupling, decomposition_reconstructs_b_probability) {
    Draw draw(14);
    for (int k = 0; k < 1000; k++) {
        auto s = weakmeas::test::random_scenario(draw, GAMMA_MIN, 1).setup();
        auto d = decompose(s);
        double deco = s.coupling.deco();
        double rebuilt = (1 - deco) * d.independent_part + deco * born_probability(s.state, s.b_dir, Outcome::plus);
        EXPECT_NEAR(b_probabilities(s).p_plus, rebuilt, 1e-12);
    }
}

TEST(coupling, joint_distribution_examples) {
    // Sequential collapse, cross-checked with an independent numpy brute force.
    auto j = joint_distribution(setup_of(PI / 6, 0, PI / 2, 0, G08));
    EXPECT_NEAR(j(Outcome::plus, Outcome::plus), 0.34820508075688766, 1e-12);
    EXPECT_NEAR(j(Outcome::minus, Outcome::plus), 0.49820508075688774, 1e-12);
    EXPECT_NEAR(j.b_marginal().p_plus, 0.8464101615137755, 1e-12);

    auto s = setup_of(0.4, 0.2, 1.0, 2.0, GAMMA_MIN);
    j = joint_distribution(s);
    for (Outcome m : {Outcome::plus, Outcome::minus}) {
        for (Outcome b : {Outcome::plus, Outcome::minus}) {
            EXPECT_NEAR(j(m, b), 0.5 * born_probability(s.state, s.b_dir, b), 1e-12);
        }
    }

    j = joint_distribution(setup_of(PI / 2, 0, 0, 0, 1));
    EXPECT_NEAR(j(Outcome::plus, Outcome::plus), 1, 1e-15);
    EXPECT_NEAR(j.p[1] + j.p[2] + j.p[3], 0, 1e-15);
}

TEST(coupling, joint_marginals_consistent) {
    Draw draw(15);
    for (int k = 0; k < 1000; k++) {
        auto s = weakmeas::test::random_scenario(draw, GAMMA_MIN, 1).setup();
        auto j = joint_distribution(s);
        auto pm = meter_probabilities(s);
        auto pb = b_probabilities(s);
        EXPECT_NEAR(j.meter_marginal().p_plus, pm.p_plus, 1e-12);
        EXPECT_NEAR(j.meter_marginal().p_minus, pm.p_minus, 1e-12);
        EXPECT_NEAR(j.b_marginal().p_plus, pb.p_plus, 1e-12);
        EXPECT_NEAR(j.b_marginal().p_minus, pb.p_minus, 1e-12);
        for (double x : j.p) {
            EXPECT_GE(x, 0);
            EXPECT_LE(x, 1);
        }
    }
}

TEST(coupling, closed_forms_match_tensor_oracle) {
    Draw draw(16);
    for (int k = 0; k < 1000; k++) {
        auto raw = weakmeas::test::random_scenario(draw);
        auto s = raw.setup();
        auto o = oracle::simulate({raw.alpha, raw.phi, raw.theta, raw.varphi, raw.gamma});

        auto pm = meter_probabilities(s);
        auto pb = b_probabilities(s);
        auto j = joint_distribution(s);
        auto rho = post_measurement_density(s);
        EXPECT_NEAR(pm.p_plus, o.meter[0], 1e-10);
        EXPECT_NEAR(pm.p_minus, o.meter[1], 1e-10);
        EXPECT_NEAR(pb.p_plus, o.b[0], 1e-10);
        EXPECT_NEAR(pb.p_minus, o.b[1], 1e-10);
        for (size_t c = 0; c < 4; c++) {
            EXPECT_NEAR(j.p[c], o.joint[c], 1e-10);
            EXPECT_LT(std::abs(rho.entries().e[c] - o.rho[c]), 1e-10);
            EXPECT_LT(std::abs(entangled_state(s)[c] - o.psi[c]), 1e-10);
        }
    }
}

TEST(coupling, coherence_decreases_with_gamma) {
    Draw draw(17);
    for (int k = 0; k < 50; k++) {
        double alpha = draw(0, PI);
        double phi = draw(0, TWO_PI);
        double prev = 2;
        for (int i = 0; i <= 100; i++) {
            double g = GAMMA_MIN + (GAMMA_MAX - GAMMA_MIN) * i / 100;
            double off = std::abs(post_measurement_density(setup_of(alpha, phi, 0, 0, g))(0, 1));
            EXPECT_LE(off, prev + 1e-15);
            prev = off;
        }
    }
}

TEST(coupling, znzd_states_are_gamma_invariant) {
    Draw draw(18);
    for (int k = 0; k < 100; k++) {
        double alpha = draw(0, PI);
        double phi = draw(0, TWO_PI);
        double theta = draw(0, PI);
        double varphi = phi + PI / 2;
        double p0 = b_probabilities(setup_of(alpha, phi, theta, varphi, GAMMA_MIN)).p_plus;
        for (int i = 1; i <= 50; i++) {
            double g = GAMMA_MIN + (GAMMA_MAX - GAMMA_MIN) * i / 50;
            EXPECT_NEAR(b_probabilities(setup_of(alpha, phi, theta, varphi, g)).p_plus, p0, 1e-12);
        }
    }
}

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

#include "weakmeas/monte_carlo.h"

#include <cmath>

#include "gtest/gtest.h"
#include "test_util.h"
#include "weakmeas/correction.h"
#include "weakmeas/errors.h"
#include "weakmeas/fisher.h"

using namespace weakmeas;
using weakmeas::test::setup_of;

namespace {

const double G08 = std::sqrt(0.8);

JointSetup scenario() {
    return setup_of(PI / 6, 0, PI / 2, 0, G08);
}

}  // namespace

TEST(monte_carlo, uniform_variate_range_and_spread) {
    double sum = 0;
    double sum2 = 0;
    const int n = 200000;
    for (int i = 0; i < n; i++) {
        double u = uniform_variate(7, i);
        ASSERT_GE(u, 0);
        ASSERT_LT(u, 1);
        sum += u;
        sum2 += u * u;
    }
    double mean = sum / n;
    EXPECT_NEAR(mean, 0.5, 5 * std::sqrt(1.0 / 12 / n));
    EXPECT_NEAR(sum2 / n - mean * mean, 1.0 / 12, 0.002);
    EXPECT_NE(uniform_variate(7, 0), uniform_variate(8, 0));
    EXPECT_EQ(uniform_variate(7, 12345), uniform_variate(7, 12345));
}

TEST(monte_carlo, deterministic_law) {
    auto s = setup_of(PI / 2, 0, 0, 0, 1);
    for (uint64_t seed : {0ull, 1ull, 99ull}) {
        auto b = sample(s, 1000, seed);
        EXPECT_EQ(b.counts[0], 1000u);
        EXPECT_EQ(b.counts[1] + b.counts[2] + b.counts[3], 0u);
        EXPECT_EQ(b.trials, 1000u);
        EXPECT_EQ(b.seed, seed);
    }
}

TEST(monte_carlo, sample_is_deterministic_across_threads) {
    auto s = scenario();
    auto serial = sample(s, 1000003, 5, 1);
    EXPECT_EQ(serial, sample(s, 1000003, 5, 1));
    for (unsigned t : {2u, 3u, 7u, 16u}) {
        EXPECT_EQ(serial, sample(s, 1000003, 5, t));
    }
    EXPECT_NE(serial, sample(s, 1000003, 6, 1));
    EXPECT_THROW(sample(s, 0, 5), InvalidParameter);
}

TEST(monte_carlo, empirical_joint_converges) {
    auto s = scenario();
    auto j = joint_distribution(s);
    const uint64_t n = 1000000;
    int failures = 0;
    for (uint64_t seed = 0; seed < 30; seed++) {
        auto f = sample(s, n, seed).frequencies();
        for (size_t c = 0; c < 4; c++) {
            double tol = 5 * std::sqrt(j.p[c] * (1 - j.p[c]) / n);
            if (std::abs(f[c] - j.p[c]) >= tol) {
                failures++;
            }
        }
    }
    EXPECT_LE(failures, 1);

    auto f = sample(s, n, 42).frequencies();
    EXPECT_NEAR(f[0], 0.34820508075688766, 5 * std::sqrt(0.3482 * 0.6518 / n));
}

TEST(monte_carlo, estimate_on_exact_proportions) {
    auto s = scenario();
    // Ideal proportions of the joint law at n = 10^6.
    TrialBatch b{{348205, 1795, 498205, 151795}, 1000000, 0};
    auto st = estimate(b, s);
    EXPECT_NEAR(st.est_A, -0.5, 1e-6);
    EXPECT_NEAR(st.est_B, 0.8660254037844386, 1e-6);

    // Frequencies equal to the law itself: dyadic n makes them exact.
    auto setup = setup_of(PI / 4, 0, PI / 2, 0, std::sqrt(0.75));
    auto j = joint_distribution(setup);
    TrialBatch exact{{0, 0, 0, 0}, 1 << 20, 0};
    for (size_t c = 0; c < 4; c++) {
        exact.counts[c] = static_cast<uint64_t>(std::llround(j.p[c] * (1 << 20)));
    }
    if (exact.counts[0] + exact.counts[1] + exact.counts[2] + exact.counts[3] == exact.trials) {
        auto e = estimate(exact, setup);
        EXPECT_NEAR(e.est_A, expectation(setup.state, ObservableDirection::z_axis()), 1e-5);
        EXPECT_NEAR(e.est_B, expectation(setup.state, setup.b_dir), 1e-5);
    }
}

TEST(monte_carlo, estimators_are_plug_in_consistent) {
    // The affine weights applied to the exact law give the exact expectations.
    weakmeas::test::Draw draw(40);
    for (int k = 0; k < 500; k++) {
        auto s = weakmeas::test::random_scenario(draw, 0.715, 0.995).setup();
        auto j = joint_distribution(s);
        auto wa = weights_A(s.coupling);
        auto wb = weights_B(s.b_dir, s.coupling);
        double ea = 0;
        double eb = 0;
        for (size_t c = 0; c < 4; c++) {
            ea += wa[c] * j.p[c];
            eb += wb[c] * j.p[c];
        }
        EXPECT_NEAR(ea, expectation(s.state, ObservableDirection::z_axis()), 1e-12);
        EXPECT_NEAR(eb, expectation(s.state, s.b_dir), 1e-10);
    }
}

TEST(monte_carlo, single_trial_estimates_leave_unit_interval) {
    auto s = scenario();
    TrialBatch b{{1, 0, 0, 0}, 1, 0};
    auto st = estimate(b, s);
    EXPECT_NEAR(st.est_A, 1 / 0.6, 1e-12);
    EXPECT_NEAR(st.est_B, 1 / 0.8, 1e-12);
    EXPECT_EQ(st.se_A, 0);
    EXPECT_EQ(st.se_B, 0);

    TrialBatch bad{{1, 0, 0, 0}, 2, 0};
    EXPECT_THROW(estimate(bad, s), InvalidParameter);
}

TEST(monte_carlo, estimate_requires_correctable_coupling) {
    TrialBatch b{{1, 0, 0, 0}, 1, 0};
    EXPECT_THROW(estimate(b, setup_of(PI / 6, 0, PI / 2, 0, 1)), DegenerateCoupling);
    EXPECT_THROW(estimate(b, setup_of(PI / 6, 0, PI / 2, 0, GAMMA_MIN)), DegenerateCoupling);
}

TEST(monte_carlo, standard_errors_match_analytic_variance) {
    auto s = scenario();
    auto st = estimate(sample(s, 1000000, 3), s);
    double var_a = 4 * 0.35 * 0.65 / (1e6 * 0.36);
    EXPECT_NEAR(st.se_A, std::sqrt(var_a), 0.01 * std::sqrt(var_a));
    double var_b = multinomial_variance(weights_B(s.b_dir, s.coupling), joint_distribution(s).p, 1000000);
    EXPECT_NEAR(st.se_B, std::sqrt(var_b), 0.01 * std::sqrt(var_b));
}

TEST(monte_carlo, variance_of_est_A_saturates_cramer_rao) {
    weakmeas::test::Draw draw(41);
    for (int k = 0; k < 100; k++) {
        auto s = weakmeas::test::random_scenario(draw, 0.72, 0.99).setup();
        auto pm = meter_probabilities(s);
        if (pm.p_plus < 1e-3 || pm.p_minus < 1e-3) {
            continue;
        }
        double var = multinomial_variance(weights_A(s.coupling), joint_distribution(s).p, 1000);
        EXPECT_NEAR(var * 1000 * fisher_A_joint(s), 1, 1e-9);
    }
}

TEST(monte_carlo, unbiasedness_scenario) {
    auto r = unbiasedness_check(scenario(), 1000000, 30, 42);
    ASSERT_TRUE(r.B.has_value());
    EXPECT_LT(std::abs(r.A.z), 5);
    EXPECT_LT(std::abs(r.B->z), 5);
    EXPECT_TRUE(r.pass());
    EXPECT_EQ(r.A.truth, expectation(scenario().state, ObservableDirection::z_axis()));
    EXPECT_NEAR(r.B->truth, 0.8660254037844386, 1e-12);
}

TEST(monte_carlo, unbiasedness_deterministic_law) {
    auto r = unbiasedness_check(setup_of(PI / 2, 0, 0, 0, 1), 1000, 5, 1);
    EXPECT_EQ(r.A.z, 0);
    EXPECT_EQ(r.A.std_error, 0);
    EXPECT_TRUE(r.A.pass);
    EXPECT_FALSE(r.B.has_value());
}

TEST(monte_carlo, unbiasedness_rejects_zero_strength) {
    try {
        unbiasedness_check(setup_of(PI / 6, 0, PI / 2, 0, GAMMA_MIN), 100, 2, 1);
        ADD_FAILURE();
    } catch (const DegenerateCoupling &e) {
        EXPECT_EQ(e.channel, Channel::A);
    }
}

TEST(monte_carlo, unbiasedness_detects_bias) {
    // Estimating with the wrong coupling biases est_A by a factor 0.6/0.5.
    auto truth = scenario();
    auto r = unbiasedness_check(truth, 100000, 30, 9);
    EXPECT_TRUE(r.pass());
    JointSetup wrong{truth.state, truth.b_dir, Coupling::from_kappa(0.5)};
    auto batch = sample(truth, 1000000, 9);
    auto st = estimate(batch, wrong);
    EXPECT_GT(std::abs(st.est_A - (-0.5)) / st.se_A, 5);
}

TEST(monte_carlo, crb_check_a_priori_values) {
    auto s = setup_of(PI / 4, 0, PI / 2, 0, G08);
    EXPECT_NEAR(cramer_rao_bound(fisher_A_joint(s), 1000000), 1 / 0.36e6, 1e-18);
}

TEST(monte_carlo, crb_check_ratios_concentrate) {
    // 4000 repeats puts the [0.9, 1.1] band at ~4.5 sigma of the
    // sample-variance spread.
    auto r = crb_check(scenario(), 2000, 4000, 11);
    EXPECT_GE(r.ratio_A, 0.9);
    EXPECT_LE(r.ratio_A, 1.1);
    EXPECT_GE(r.ratio_B, 0.9);
    EXPECT_LE(r.ratio_B, 1.1);
    EXPECT_TRUE(r.pass());
    EXPECT_GT(r.crb_B, 0);
    EXPECT_NEAR(r.crb_A, cramer_rao_bound(fisher_A_joint(scenario()), 2000), 1e-18);
}

TEST(monte_carlo, crb_check_requirements) {
    EXPECT_THROW(crb_check(scenario(), 100, 1, 0), InvalidParameter);
    EXPECT_THROW(crb_check(setup_of(PI / 6, 0, PI / 2, 0, 1), 100, 10, 0), DegenerateCoupling);
}

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

#ifndef _WEAKMEAS_MONTE_CARLO_H
#define _WEAKMEAS_MONTE_CARLO_H

#include <array>
#include <cstdint>
#include <optional>

#include "weakmeas/coupling.h"

namespace weakmeas {

/// Outcome counts of `trials` sequential measurements, cells ordered as in
/// JointDistribution.
struct TrialBatch {
    std::array<uint64_t, 4> counts{};
    uint64_t trials = 0;
    uint64_t seed = 0;

    bool operator==(const TrialBatch &) const = default;

    std::array<double, 4> frequencies() const;
};

struct SampleStats {
    double est_A = 0;
    double est_B = 0;
    double se_A = 0;
    double se_B = 0;
    uint64_t n = 0;
};

/// Pass thresholds for the statistical checks.
struct StatThresholds {
    double z_max = 5;
    double ratio_lo = 0.9;
    double ratio_hi = 1.1;
};

/// Stateless counter-based generator: a uniform variate in [0, 1) that is a
/// pure function of (seed, index).
double uniform_variate(uint64_t seed, uint64_t index);

/// Seed used for the r-th independent batch of a repeated experiment.
uint64_t repeat_seed(uint64_t seed, uint64_t repeat);

/// Draw `trials` outcomes from joint_distribution(setup). Trial i depends
/// only on (seed, i), so the result is independent of `threads`
/// (0 = hardware concurrency).
TrialBatch sample(const JointSetup &setup, uint64_t trials, uint64_t seed, unsigned threads = 0);

/// Per-cell coefficients w such that estimate_A(freq) = sum_k w_k freq_k.
std::array<double, 4> weights_A(const Coupling &c);
/// Same for estimate_B.
std::array<double, 4> weights_B(const ObservableDirection &dir, const Coupling &c);

/// Variance of sum_k w_k f_k when f are the empirical frequencies of n
/// multinomial trials with cell probabilities p.
double multinomial_variance(const std::array<double, 4> &w, const std::array<double, 4> &p, uint64_t n);

/// Corrected estimates of <A> and <B> from a batch, with standard errors
/// from the plug-in multinomial covariance of the observed frequencies.
SampleStats estimate(const TrialBatch &batch, const JointSetup &setup);

struct ChannelCheck {
    double mean = 0;
    double std_error = 0;  // of the mean across repeats
    double truth = 0;
    double z = 0;
    bool pass = false;
};

struct UnbiasednessReport {
    ChannelCheck A;
    /// Absent when the coupling is projective (deco = 0); only the meter
    /// channel is estimable then.
    std::optional<ChannelCheck> B;

    bool pass() const {
        return A.pass && (!B || B->pass);
    }
};

/// Runs `repeats` independent batches and z-tests the mean estimates
/// against the exact expectation values.
UnbiasednessReport unbiasedness_check(const JointSetup &setup,
                                      uint64_t trials,
                                      uint64_t repeats,
                                      uint64_t seed,
                                      const StatThresholds &th = {},
                                      unsigned threads = 0);

struct CrbReport {
    double var_A_emp = 0;
    double crb_A = 0;
    /// var_A_emp * n * I_A_joint
    double ratio_A = 0;
    double var_B_emp = 0;
    /// Exact multinomial variance of est_B, including the meter/B covariance.
    double var_B_analytic = 0;
    /// var_B_emp / var_B_analytic
    double ratio_B = 0;
    double crb_B = 0;
    /// var_B_emp / crb_B. Reported only; no ordering is asserted.
    double ratio_B_crb = 0;
    bool pass_A = false;
    bool pass_B = false;

    bool pass() const {
        return pass_A && pass_B;
    }
};

CrbReport crb_check(const JointSetup &setup,
                    uint64_t trials,
                    uint64_t repeats,
                    uint64_t seed,
                    const StatThresholds &th = {},
                    unsigned threads = 0);

}  // namespace weakmeas

#endif

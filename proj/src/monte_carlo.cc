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

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>
#include <vector>

#include "weakmeas/correction.h"
#include "weakmeas/errors.h"
#include "weakmeas/fisher.h"

namespace weakmeas {

namespace {

constexpr uint64_t GOLDEN = 0x9E3779B97F4A7C15ULL;

// splitmix64 output function.
constexpr uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

struct CellSampler {
    std::array<double, 3> cut{};
    size_t fallback = 3;

    explicit CellSampler(const JointDistribution &j) {
        double total = j.p[0] + j.p[1] + j.p[2] + j.p[3];
        double acc = 0;
        for (size_t k = 0; k < 3; k++) {
            acc += j.p[k] / total;
            cut[k] = acc;
        }
        // Variates past the last cut must never land on an empty cell.
        for (size_t k = 4; k-- > 0;) {
            if (j.p[k] > 0) {
                fallback = k;
                break;
            }
        }
    }

    size_t operator()(double u) const {
        if (u < cut[0]) {
            return 0;
        }
        if (u < cut[1]) {
            return 1;
        }
        if (u < cut[2]) {
            return 2;
        }
        return fallback;
    }
};

void sample_range(
    const CellSampler &sampler, uint64_t seed, uint64_t begin, uint64_t end, std::array<uint64_t, 4> &out) {
    std::array<uint64_t, 4> local{};
    for (uint64_t i = begin; i < end; i++) {
        local[sampler(uniform_variate(seed, i))]++;
    }
    out = local;
}

double sample_variance(const std::vector<double> &xs, double &mean) {
    double sum = 0;
    for (double x : xs) {
        sum += x;
    }
    mean = sum / static_cast<double>(xs.size());
    if (xs.size() < 2) {
        return 0;
    }
    double ss = 0;
    for (double x : xs) {
        ss += (x - mean) * (x - mean);
    }
    return ss / static_cast<double>(xs.size() - 1);
}

ChannelCheck z_test(double mean, double std_error, double truth, const StatThresholds &th) {
    ChannelCheck c{mean, std_error, truth, 0, false};
    double diff = mean - truth;
    if (std_error > 0) {
        c.z = diff / std_error;
    } else if (std::abs(diff) <= 1e-12) {
        c.z = 0;
    } else {
        c.z = std::copysign(std::numeric_limits<double>::infinity(), diff);
    }
    c.pass = std::abs(c.z) < th.z_max;
    return c;
}

}  // namespace

std::array<double, 4> TrialBatch::frequencies() const {
    std::array<double, 4> f{};
    for (size_t k = 0; k < 4; k++) {
        f[k] = static_cast<double>(counts[k]) / static_cast<double>(trials);
    }
    return f;
}

double uniform_variate(uint64_t seed, uint64_t index) {
    uint64_t key = mix64(seed ^ 0x6A09E667F3BCC909ULL);
    uint64_t x = mix64(key + (index + 1) * GOLDEN);
    return static_cast<double>(x >> 11) * 0x1.0p-53;
}

uint64_t repeat_seed(uint64_t seed, uint64_t repeat) {
    return mix64(seed + repeat * GOLDEN);
}

TrialBatch sample(const JointSetup &setup, uint64_t trials, uint64_t seed, unsigned threads) {
    if (trials == 0) {
        throw InvalidParameter("trials must be positive");
    }
    CellSampler sampler(joint_distribution(setup));
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    // Small batches are not worth a thread each.
    uint64_t shards = std::min<uint64_t>(threads, std::max<uint64_t>(1, trials / 65536));

    std::vector<std::array<uint64_t, 4>> partial(shards);
    if (shards == 1) {
        sample_range(sampler, seed, 0, trials, partial[0]);
    } else {
        std::vector<std::jthread> workers;
        workers.reserve(shards);
        for (uint64_t s = 0; s < shards; s++) {
            uint64_t begin = trials * s / shards;
            uint64_t end = trials * (s + 1) / shards;
            workers.emplace_back(sample_range, std::cref(sampler), seed, begin, end, std::ref(partial[s]));
        }
    }

    TrialBatch batch;
    batch.trials = trials;
    batch.seed = seed;
    for (const auto &p : partial) {
        for (size_t k = 0; k < 4; k++) {
            batch.counts[k] += p[k];
        }
    }
    return batch;
}

std::array<double, 4> weights_A(const Coupling &c) {
    std::array<double, 4> w{};
    for (size_t k = 0; k < 4; k++) {
        bool m_plus = JointDistribution::meter_of(k) == Outcome::plus;
        w[k] = estimate_A({m_plus ? 1.0 : 0.0, m_plus ? 0.0 : 1.0}, c);
    }
    return w;
}

std::array<double, 4> weights_B(const ObservableDirection &dir, const Coupling &c) {
    std::array<double, 4> w{};
    for (size_t k = 0; k < 4; k++) {
        bool m_plus = JointDistribution::meter_of(k) == Outcome::plus;
        bool b_plus = JointDistribution::b_of(k) == Outcome::plus;
        w[k] = estimate_B({b_plus ? 1.0 : 0.0, b_plus ? 0.0 : 1.0}, {m_plus ? 1.0 : 0.0, m_plus ? 0.0 : 1.0}, dir, c);
    }
    return w;
}

double multinomial_variance(const std::array<double, 4> &w, const std::array<double, 4> &p, uint64_t n) {
    double m1 = 0;
    double m2 = 0;
    for (size_t k = 0; k < 4; k++) {
        m1 += w[k] * p[k];
        m2 += w[k] * w[k] * p[k];
    }
    return std::max(0.0, m2 - m1 * m1) / static_cast<double>(n);
}

SampleStats estimate(const TrialBatch &batch, const JointSetup &setup) {
    if (batch.trials == 0 || batch.counts[0] + batch.counts[1] + batch.counts[2] + batch.counts[3] != batch.trials) {
        throw InvalidParameter("trial batch counts do not add up to its trial count");
    }
    const auto &c = setup.coupling;
    auto f = batch.frequencies();
    BinaryDistribution p_m{f[0] + f[1], f[2] + f[3]};
    BinaryDistribution p_b{f[0] + f[2], f[1] + f[3]};

    SampleStats s;
    s.n = batch.trials;
    s.est_A = estimate_A(p_m, c);
    s.est_B = estimate_B(p_b, p_m, setup.b_dir, c);
    s.se_A = std::sqrt(multinomial_variance(weights_A(c), f, batch.trials));
    s.se_B = std::sqrt(multinomial_variance(weights_B(setup.b_dir, c), f, batch.trials));
    return s;
}

UnbiasednessReport unbiasedness_check(const JointSetup &setup,
                                      uint64_t trials,
                                      uint64_t repeats,
                                      uint64_t seed,
                                      const StatThresholds &th,
                                      unsigned threads) {
    if (repeats == 0) {
        throw InvalidParameter("repeats must be positive");
    }
    const auto &c = setup.coupling;
    require_meter_information(c);
    bool with_b = c.deco() > DEGENERACY_THRESHOLD;
    auto wa = weights_A(c);
    std::array<double, 4> wb{};
    if (with_b) {
        wb = weights_B(setup.b_dir, c);
    }

    std::vector<double> as;
    std::vector<double> bs;
    double last_se_a = 0;
    double last_se_b = 0;
    for (uint64_t r = 0; r < repeats; r++) {
        TrialBatch batch = sample(setup, trials, repeat_seed(seed, r), threads);
        auto f = batch.frequencies();
        as.push_back(estimate_A({f[0] + f[1], f[2] + f[3]}, c));
        last_se_a = std::sqrt(multinomial_variance(wa, f, trials));
        if (with_b) {
            bs.push_back(estimate_B({f[0] + f[2], f[1] + f[3]}, {f[0] + f[1], f[2] + f[3]}, setup.b_dir, c));
            last_se_b = std::sqrt(multinomial_variance(wb, f, trials));
        }
    }

    auto sem = [&](const std::vector<double> &xs, double &mean, double single_se) {
        double var = sample_variance(xs, mean);
        if (xs.size() < 2) {
            return single_se;
        }
        return std::sqrt(var / static_cast<double>(xs.size()));
    };

    UnbiasednessReport report;
    double mean_a = 0;
    double se_a = sem(as, mean_a, last_se_a);
    report.A = z_test(mean_a, se_a, expectation(setup.state, ObservableDirection::z_axis()), th);
    if (with_b) {
        double mean_b = 0;
        double se_b = sem(bs, mean_b, last_se_b);
        report.B = z_test(mean_b, se_b, expectation(setup.state, setup.b_dir), th);
    }
    return report;
}

CrbReport crb_check(const JointSetup &setup,
                    uint64_t trials,
                    uint64_t repeats,
                    uint64_t seed,
                    const StatThresholds &th,
                    unsigned threads) {
    if (repeats < 2) {
        throw InvalidParameter("crb_check needs at least 2 repeats to form a sample variance");
    }
    const auto &c = setup.coupling;
    require_correctable(c);

    std::vector<double> as;
    std::vector<double> bs;
    for (uint64_t r = 0; r < repeats; r++) {
        SampleStats s = estimate(sample(setup, trials, repeat_seed(seed, r), threads), setup);
        as.push_back(s.est_A);
        bs.push_back(s.est_B);
    }
    double mean = 0;
    CrbReport rep;
    rep.var_A_emp = sample_variance(as, mean);
    rep.var_B_emp = sample_variance(bs, mean);

    double fi_a = fisher_A_joint(setup);
    rep.crb_A = cramer_rao_bound(fi_a, trials);
    rep.ratio_A = rep.var_A_emp / rep.crb_A;

    rep.var_B_analytic = multinomial_variance(weights_B(setup.b_dir, c), joint_distribution(setup).p, trials);
    rep.ratio_B = rep.var_B_emp / rep.var_B_analytic;
    rep.crb_B = cramer_rao_bound(fisher_B_joint(setup), trials);
    rep.ratio_B_crb = rep.var_B_emp / rep.crb_B;

    rep.pass_A = rep.ratio_A >= th.ratio_lo && rep.ratio_A <= th.ratio_hi;
    rep.pass_B = rep.ratio_B >= th.ratio_lo && rep.ratio_B <= th.ratio_hi;
    return rep;
}

}  // namespace weakmeas

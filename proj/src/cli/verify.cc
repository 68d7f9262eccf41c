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

#include <algorithm>
#include <cmath>
#include <random>

#include "weakmeas/cli.h"
#include "weakmeas/correction.h"
#include "weakmeas/errors.h"
#include "weakmeas/monte_carlo.h"
#include "weakmeas/tensor_oracle.h"

namespace weakmeas::cli {

namespace {

constexpr int ORACLE_SETUPS = 1000;
constexpr double ORACLE_TOL = 1e-10;
constexpr double ROUND_TRIP_TOL = 1e-10;
constexpr int ZNZD_STATES = 100;
constexpr int ZNZD_GAMMAS = 50;
// The variance-ratio band [0.9, 1.1] needs ~5000 repeats before it is
// five standard deviations of the sample-variance spread wide.
constexpr uint64_t CRB_TRIALS = 10000;
constexpr uint64_t CRB_REPEATS = 5000;

// Portable uniform draws; std::uniform_real_distribution is not
// reproducible across standard libraries.
struct Draw {
    std::mt19937_64 rng;
    explicit Draw(uint64_t seed) : rng(seed) {
    }
    double operator()(double lo, double hi) {
        return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
    }
};

nlohmann::ordered_json num(double x) {
    if (!std::isfinite(x)) {
        return nullptr;
    }
    return round9(x);
}

const char *status(bool ok) {
    return ok ? "pass" : "fail";
}

nlohmann::ordered_json oracle_suite(uint64_t seed, bool inject_fault) {
    Draw draw(seed ^ 0x01);
    double worst = 0;
    for (int k = 0; k < ORACLE_SETUPS; k++) {
        oracle::Scenario sc{draw(0, PI), draw(0, TWO_PI), draw(0, PI), draw(0, TWO_PI), draw(0.7072, 0.9999)};
        double g = sc.gamma;
        if (inject_fault) {
            g += sc.gamma < 0.85 ? 1e-3 : -1e-3;
        }
        JointSetup s{make_state(sc.alpha, sc.phi), make_direction(sc.theta, sc.varphi), Coupling::from_gamma(g)};
        oracle::Result o = oracle::simulate(sc);

        auto pm = meter_probabilities(s);
        auto pb = b_probabilities(s);
        auto j = joint_distribution(s);
        auto rho = post_measurement_density(s);
        worst = std::max({worst, std::abs(pm.p_plus - o.meter[0]), std::abs(pm.p_minus - o.meter[1]),
                          std::abs(pb.p_plus - o.b[0]), std::abs(pb.p_minus - o.b[1])});
        for (size_t c = 0; c < 4; c++) {
            worst = std::max(worst, std::abs(j.p[c] - o.joint[c]));
            worst = std::max(worst, std::abs(rho.entries().e[c] - o.rho[c]));
        }
    }
    nlohmann::ordered_json r;
    r["status"] = status(worst < ORACLE_TOL);
    r["setups"] = ORACLE_SETUPS;
    r["max_abs_error"] = num(worst);
    r["tolerance"] = ORACLE_TOL;
    return r;
}

nlohmann::ordered_json round_trip_suite(uint64_t seed) {
    Draw draw(seed ^ 0x02);
    double worst = 0;
    for (int k = 0; k < ORACLE_SETUPS; k++) {
        double angles[4] = {draw(0, PI), draw(0, TWO_PI), draw(0, PI), draw(0, TWO_PI)};
        JointSetup s{make_state(angles[0], angles[1]), make_direction(angles[2], angles[3]),
                     Coupling::from_gamma(draw(0.715, 0.995))};
        auto rec = recover(meter_probabilities(s), b_probabilities(s), s.b_dir, s.coupling);
        auto z = ObservableDirection::z_axis();
        worst = std::max({worst, std::abs(rec.p_A.p_plus - born_probability(s.state, z, Outcome::plus)),
                          std::abs(rec.p_A.p_minus - born_probability(s.state, z, Outcome::minus)),
                          std::abs(rec.p_B.p_plus - born_probability(s.state, s.b_dir, Outcome::plus)),
                          std::abs(rec.p_B.p_minus - born_probability(s.state, s.b_dir, Outcome::minus))});
    }

    // Both channels must refuse kappa = 0; channel B must refuse deco = 0.
    BinaryDistribution half{0.5, 0.5};
    auto dir = make_direction(PI / 2, 0);
    auto refuses = [](auto &&fn, Channel expected) {
        try {
            fn();
        } catch (const DegenerateCoupling &e) {
            return e.channel == expected;
        }
        return false;
    };
    Coupling none = Coupling::from_gamma(GAMMA_MIN);
    Coupling projective = Coupling::from_gamma(GAMMA_MAX);
    bool degenerate_ok = refuses([&] { recover_A(half, none); }, Channel::A) &&
                         refuses([&] { recover_B(half, half, dir, none); }, Channel::A) &&
                         refuses([&] { recover_B(half, half, dir, projective); }, Channel::B);
    try {
        recover_A(half, projective);
    } catch (const DegenerateCoupling &) {
        degenerate_ok = false;
    }

    nlohmann::ordered_json r;
    r["status"] = status(worst < ROUND_TRIP_TOL && degenerate_ok);
    r["setups"] = ORACLE_SETUPS;
    r["max_abs_error"] = num(worst);
    r["degenerate_couplings_rejected"] = degenerate_ok;
    return r;
}

nlohmann::ordered_json unbiasedness_suite(const JointSetup &s, const ScenarioConfig &config) {
    auto u = unbiasedness_check(s, config.trials, config.repeats, config.seed, {}, config.threads);
    nlohmann::ordered_json r;
    r["status"] = status(u.pass());
    r["trials"] = config.trials;
    r["repeats"] = config.repeats;
    r["mean_A"] = num(u.A.mean);
    r["z_A"] = num(u.A.z);
    if (u.B) {
        r["mean_B"] = num(u.B->mean);
        r["z_B"] = num(u.B->z);
    }
    return r;
}

nlohmann::ordered_json crb_suite(const JointSetup &s, const ScenarioConfig &config) {
    auto c = crb_check(s, CRB_TRIALS, CRB_REPEATS, config.seed, {}, config.threads);
    nlohmann::ordered_json r;
    r["status"] = status(c.pass());
    r["trials"] = CRB_TRIALS;
    r["repeats"] = CRB_REPEATS;
    r["ratio_A"] = num(c.ratio_A);
    r["ratio_B"] = num(c.ratio_B);
    r["ratio_B_to_crb"] = num(c.ratio_B_crb);
    return r;
}

double gamma_variation(const PureState &st, const ObservableDirection &dir) {
    double lo = 1;
    double hi = 0;
    for (int k = 0; k < ZNZD_GAMMAS; k++) {
        double g = 0.7072 + (0.9999 - 0.7072) * k / (ZNZD_GAMMAS - 1);
        double p = b_probabilities({st, dir, Coupling::from_gamma(g)}).p_plus;
        lo = std::min(lo, p);
        hi = std::max(hi, p);
    }
    return hi - lo;
}

nlohmann::ordered_json znzd_suite(uint64_t seed) {
    Draw draw(seed ^ 0x05);
    bool ok = true;
    double worst_invariant = 0;
    double least_variation = 1;
    for (int k = 0; k < ZNZD_STATES; k++) {
        double phi = draw(0, TWO_PI);
        double varphi = phi + (draw(0, 1) < 0.5 ? PI / 2 : -PI / 2);
        auto st = make_state(draw(0.1, PI / 2 - 0.1), phi);
        auto dir = make_direction(draw(0.2, PI - 0.2), varphi);
        double v = gamma_variation(st, dir);
        worst_invariant = std::max(worst_invariant, v);
        ok = ok && v <= 1e-12 && is_znzd(st, dir) == ZnzdClass::nontrivial_znzd;
    }
    for (int k = 0; k < ZNZD_STATES; k++) {
        double phi = draw(0, TWO_PI);
        // |cos(varphi - phi)| >= cos(1.35) ~ 0.22
        double offset = draw(-1.35, 1.35);
        double varphi = phi + offset + (draw(0, 1) < 0.5 ? 0 : PI);
        auto st = make_state(draw(0.1, PI / 2 - 0.1), phi);
        auto dir = make_direction(draw(0.2, PI - 0.2), varphi);
        double v = gamma_variation(st, dir);
        least_variation = std::min(least_variation, v);
        ok = ok && v > 1e-6 && is_znzd(st, dir) == ZnzdClass::not_znzd;
    }
    nlohmann::ordered_json r;
    r["status"] = status(ok);
    r["max_znzd_variation"] = num(worst_invariant);
    r["min_generic_variation"] = num(least_variation);
    return r;
}

}  // namespace

Report cmd_verify(const ScenarioConfig &config) {
    JointSetup s = setup_of(config);
    Report rep;
    auto &b = rep.body;
    b["seed"] = config.seed;
    b["oracle_equivalence"] = oracle_suite(config.seed, config.inject_fault);
    b["round_trip"] = round_trip_suite(config.seed);
    b["unbiasedness"] = unbiasedness_suite(s, config);
    b["cramer_rao"] = crb_suite(s, config);
    b["znzd_invariance"] = znzd_suite(config.seed);
    bool all = true;
    for (const char *suite : {"oracle_equivalence", "round_trip", "unbiasedness", "cramer_rao", "znzd_invariance"}) {
        all = all && b[suite]["status"] == "pass";
    }
    b["status"] = status(all);
    rep.exit_code = all ? EXIT_OK : EXIT_VERIFY_FAILED;
    return rep;
}

}  // namespace weakmeas::cli

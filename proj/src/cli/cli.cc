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

#include "weakmeas/cli.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "weakmeas/correction.h"
#include "weakmeas/errors.h"
#include "weakmeas/fisher.h"
#include "weakmeas/monte_carlo.h"

namespace weakmeas::cli {

namespace {

// Half a unit in the 7th decimal: enough to accept 0.7071068 as 1/sqrt(2).
constexpr double ENDPOINT_SNAP = 5e-8;

using ojson = nlohmann::ordered_json;

ojson num(double x) {
    if (!std::isfinite(x)) {
        return nullptr;
    }
    return round9(x);
}

std::string format_number(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", x);
    return buf;
}

ojson binary(const BinaryDistribution &p) {
    ojson j;
    j["plus"] = num(p.p_plus);
    j["minus"] = num(p.p_minus);
    return j;
}

ojson setup_json(const JointSetup &s) {
    ojson j;
    j["alpha"] = num(s.state.alpha());
    j["phi"] = num(s.state.phi());
    j["theta"] = num(s.b_dir.theta());
    j["varphi"] = num(s.b_dir.varphi());
    j["gamma"] = num(s.coupling.gamma());
    j["kappa"] = num(s.coupling.kappa());
    j["deco"] = num(s.coupling.deco());
    return j;
}

void flatten(const ojson &j, const std::string &prefix, std::ostream &out) {
    if (j.is_object()) {
        for (const auto &[k, v] : j.items()) {
            flatten(v, prefix.empty() ? k : prefix + "." + k, out);
        }
        return;
    }
    if (j.is_array()) {
        for (size_t k = 0; k < j.size(); k++) {
            flatten(j[k], prefix + "." + std::to_string(k), out);
        }
        return;
    }
    out << prefix << ",";
    if (j.is_null()) {
        out << "nan";
    } else if (j.is_number_float()) {
        out << format_number(j.get<double>());
    } else if (j.is_string()) {
        out << j.get<std::string>();
    } else {
        out << j.dump();
    }
    out << "\n";
}

}  // namespace

double round9(double x) {
    if (!std::isfinite(x)) {
        return x;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", x);
    return std::strtod(buf, nullptr);
}

Coupling coupling_of(const ScenarioConfig &config) {
    if (config.kappa) {
        return Coupling::from_kappa(*config.kappa);
    }
    double g = config.gamma.value_or(std::sqrt(0.8));
    if (std::abs(g - GAMMA_MIN) <= ENDPOINT_SNAP) {
        g = GAMMA_MIN;
    } else if (std::abs(g - GAMMA_MAX) <= ENDPOINT_SNAP) {
        g = GAMMA_MAX;
    }
    return Coupling::from_gamma(g);
}

JointSetup setup_of(const ScenarioConfig &config) {
    double scale = config.degrees ? PI / 180 : 1;
    return {
        make_state(config.alpha * scale, config.phi * scale),
        make_direction(config.theta * scale, config.varphi * scale),
        coupling_of(config),
    };
}

Report cmd_probs(const ScenarioConfig &config) {
    JointSetup s = setup_of(config);
    Report rep;
    auto &b = rep.body;
    b["setup"] = setup_json(s);
    b["p_m"] = binary(meter_probabilities(s));
    b["p_B"] = binary(b_probabilities(s));
    auto j = joint_distribution(s);
    b["joint"] = {
        {"plus_plus", num(j.p[0])},
        {"plus_minus", num(j.p[1])},
        {"minus_plus", num(j.p[2])},
        {"minus_minus", num(j.p[3])},
    };
    auto d = decompose(s);
    b["decomposition"] = {
        {"independent_part", num(d.independent_part)},
        {"coherent_coefficient", num(d.coherent_coefficient)},
    };
    auto rho = post_measurement_density(s);
    ojson r;
    for (int row = 0; row < 2; row++) {
        for (int col = 0; col < 2; col++) {
            std::string key = std::to_string(row) + std::to_string(col);
            r[key + "_re"] = num(rho(row, col).real());
            r[key + "_im"] = num(rho(row, col).imag());
        }
    }
    b["rho"] = r;
    return rep;
}

Report cmd_estimate(const ScenarioConfig &config) {
    JointSetup s = setup_of(config);
    require_correctable(s.coupling);
    TrialBatch batch = sample(s, config.trials, config.seed, config.threads);
    SampleStats st = estimate(batch, s);
    double true_a = expectation(s.state, ObservableDirection::z_axis());
    double true_b = expectation(s.state, s.b_dir);

    Report rep;
    auto &b = rep.body;
    b["setup"] = setup_json(s);
    b["trials"] = batch.trials;
    b["seed"] = batch.seed;
    b["counts"] = {
        {"plus_plus", batch.counts[0]},
        {"plus_minus", batch.counts[1]},
        {"minus_plus", batch.counts[2]},
        {"minus_minus", batch.counts[3]},
    };
    auto z = [](double est, double truth, double se) { return se > 0 ? (est - truth) / se : 0.0; };
    b["A"] = {
        {"estimate", num(st.est_A)},
        {"std_error", num(st.se_A)},
        {"expectation", num(true_a)},
        {"z", num(z(st.est_A, true_a, st.se_A))},
    };
    b["B"] = {
        {"estimate", num(st.est_B)},
        {"std_error", num(st.se_B)},
        {"expectation", num(true_b)},
        {"z", num(z(st.est_B, true_b, st.se_B))},
    };
    return rep;
}

Report cmd_tradeoff(const ScenarioConfig &config) {
    JointSetup s = setup_of(config);
    auto rows = tradeoff_curve(s.state, s.b_dir, config.grid);

    Report rep;
    Table t{{"gamma", "kappa", "epsilon", "eta"}, {}};
    ojson list = ojson::array();
    for (const auto &r : rows) {
        t.rows.push_back({round9(r.gamma), round9(r.kappa), round9(r.epsilon), round9(r.eta)});
        list.push_back({
            {"gamma", num(r.gamma)},
            {"kappa", num(r.kappa)},
            {"epsilon", num(r.epsilon)},
            {"eta", num(r.eta)},
            {"valid", r.valid},
        });
    }
    rep.body["setup"] = setup_json(s);
    rep.body["rows"] = std::move(list);
    rep.table = std::move(t);
    return rep;
}

Report cmd_znzd(const ScenarioConfig &config) {
    double scale = config.degrees ? PI / 180 : 1;
    auto st = make_state(config.alpha * scale, config.phi * scale);
    auto dir = make_direction(config.theta * scale, config.varphi * scale);

    Report rep;
    auto &b = rep.body;
    b["alpha"] = num(st.alpha());
    b["phi"] = num(st.phi());
    b["theta"] = num(dir.theta());
    b["varphi"] = num(dir.varphi());
    b["classification"] = znzd_name(is_znzd(st, dir));
    b["commutator"] = num(commutator_magnitude(st, dir));

    if (config.scan) {
        // cos(varphi - phi) = 0 on phi = varphi +- pi/2; every alpha with
        // sin 2a != 0 then gives a nontrivial point.
        Table t{{"alpha", "phi"}, {}};
        ojson locus = ojson::array();
        for (uint64_t i = 0; i < config.grid; i++) {
            double a = PI * static_cast<double>(i) / static_cast<double>(config.grid);
            for (double shift : {PI / 2, 3 * PI / 2}) {
                double p = wrap_angle(dir.varphi() + shift, TWO_PI);
                if (is_znzd(make_state(a, p), dir) == ZnzdClass::nontrivial_znzd) {
                    t.rows.push_back({round9(a), round9(p)});
                    locus.push_back({{"alpha", num(a)}, {"phi", num(p)}});
                }
            }
        }
        b["locus"] = std::move(locus);
        rep.table = std::move(t);
    }
    return rep;
}

std::string render(const Report &report, Format format) {
    std::ostringstream out;
    if (format == Format::json) {
        out << report.body.dump(2) << "\n";
        return out.str();
    }
    if (report.table) {
        const auto &t = *report.table;
        for (size_t c = 0; c < t.columns.size(); c++) {
            out << (c ? "," : "") << t.columns[c];
        }
        out << "\n";
        for (const auto &row : t.rows) {
            for (size_t c = 0; c < row.size(); c++) {
                out << (c ? "," : "") << format_number(row[c]);
            }
            out << "\n";
        }
        return out.str();
    }
    out << "key,value\n";
    flatten(report.body, "", out);
    return out.str();
}

namespace {

void add_scenario_options(CLI::App *cmd, ScenarioConfig &c, std::string &format, CLI::Option *&seed_opt) {
    cmd->add_option("--alpha", c.alpha, "State angle: sin(a)|0> + cos(a) e^{i phi}|1>");
    cmd->add_option("--phi", c.phi, "Relative phase of the state");
    cmd->add_option("--theta", c.theta, "Polar angle of the B observable");
    cmd->add_option("--varphi", c.varphi, "Azimuthal angle of the B observable");
    auto *g = cmd->add_option("--gamma", c.gamma, "Coupling amplitude in [1/sqrt(2), 1]");
    auto *k = cmd->add_option("--kappa", c.kappa, "Measurement strength 2 gamma^2 - 1 in [0, 1]");
    g->excludes(k);
    k->excludes(g);
    cmd->add_option("--trials", c.trials, "Trials per batch")->check(CLI::PositiveNumber);
    cmd->add_option("--repeats", c.repeats, "Independent batches")->check(CLI::PositiveNumber);
    cmd->add_option("--grid", c.grid, "Grid size")->check(CLI::PositiveNumber);
    seed_opt = cmd->add_option("--seed", c.seed, "Random seed (default: $WEAKMEAS_SEED or 42)");
    cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", c.out, "Write output to PATH instead of stdout");
    cmd->add_flag("--degrees", c.degrees, "Angles are given in degrees");
    cmd->add_option("--threads", c.threads, "Sampling threads (0 = all cores)");
}

uint64_t seed_from_env() {
    const char *v = std::getenv(SEED_ENV);
    if (v == nullptr || *v == '\0') {
        return DEFAULT_SEED;
    }
    char *end = nullptr;
    unsigned long long s = std::strtoull(v, &end, 10);
    if (*end != '\0') {
        throw InvalidParameter(std::string(SEED_ENV) + " is not an unsigned integer: " + v);
    }
    return s;
}

}  // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Sequential weak measurement of two qubit observables with disturbance correction", "weakmeas"};
    app.require_subcommand(1);

    ScenarioConfig config;
    std::string format = "json";
    std::map<std::string, CLI::Option *> seed_opts;
    std::map<std::string, CLI::Option *> theta_opts;

    struct Command {
        const char *name;
        const char *help;
        Report (*fn)(const ScenarioConfig &);
    };
    const Command commands[] = {
        {"probs", "Outcome probabilities, decomposition and post-measurement state", cmd_probs},
        {"estimate", "Sample the joint measurement and apply the corrected estimators", cmd_estimate},
        {"tradeoff", "Precision trade-off curve (gamma, kappa, epsilon, eta)", cmd_tradeoff},
        {"verify", "Run the oracle and statistical verification suites", cmd_verify},
        {"znzd", "Classify zero-noise zero-disturbance states", cmd_znzd},
    };
    for (const auto &c : commands) {
        auto *sub = app.add_subcommand(c.name, c.help);
        CLI::Option *seed_opt = nullptr;
        add_scenario_options(sub, config, format, seed_opt);
        seed_opts[c.name] = seed_opt;
        theta_opts[c.name] = sub->get_option("--theta");
        if (std::string(c.name) == "znzd") {
            sub->add_flag("--scan", config.scan, "Emit the nontrivial locus over an alpha grid");
        }
        if (std::string(c.name) == "verify") {
            sub->add_flag("--inject-fault", config.inject_fault)->group("");
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e, out, err);
        }
        err << "error: " << e.what() << "\n";
        return EXIT_USAGE;
    }

    const Command *chosen = nullptr;
    for (const auto &c : commands) {
        if (app.got_subcommand(c.name)) {
            chosen = &c;
        }
    }

    try {
        if (seed_opts[chosen->name]->count() == 0) {
            config.seed = seed_from_env();
        }
        // tradeoff uses its own default theta.
        if (std::string(chosen->name) == "tradeoff" && theta_opts[chosen->name]->count() == 0) {
            config.theta = config.degrees ? 60 : PI / 3;
        }
        config.format = format == "csv" ? Format::csv : Format::json;

        Report report = chosen->fn(config);
        std::string text = render(report, config.format);
        if (config.out.empty()) {
            out << text;
        } else {
            std::ofstream f(config.out, std::ios::binary);
            if (!f) {
                err << "error: cannot open " << config.out << " for writing\n";
                return EXIT_USAGE;
            }
            f << text;
        }
        return report.exit_code;
    } catch (const DegenerateCoupling &e) {
        err << "error: channel " << channel_name(e.channel) << ": " << e.what() << "\n";
    } catch (const DegenerateDistribution &e) {
        err << "error: channel " << channel_name(e.channel) << ": " << e.what() << "\n";
    } catch (const std::domain_error &e) {
        err << "error: " << e.what() << "\n";
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
    }
    return EXIT_USAGE;
}

}  // namespace weakmeas::cli

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

#ifndef _WEAKMEAS_CLI_H
#define _WEAKMEAS_CLI_H

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "weakmeas/coupling.h"

namespace weakmeas::cli {

enum class Format { json, csv };

inline constexpr const char *SEED_ENV = "WEAKMEAS_SEED";
inline constexpr uint64_t DEFAULT_SEED = 42;

/// Exit statuses.
inline constexpr int EXIT_OK = 0;
inline constexpr int EXIT_VERIFY_FAILED = 1;
inline constexpr int EXIT_USAGE = 2;

struct ScenarioConfig {
    double alpha = PI / 6;
    double phi = 0;
    double theta = PI / 2;
    double varphi = 0;
    std::optional<double> gamma;
    std::optional<double> kappa;
    uint64_t trials = 1000000;
    uint64_t repeats = 30;
    uint64_t grid = 100;
    uint64_t seed = DEFAULT_SEED;
    Format format = Format::json;
    std::string out;
    bool degrees = false;
    unsigned threads = 0;
    bool scan = false;
    /// Hidden negative control for `verify`: runs the closed forms with a
    /// perturbed coupling so the oracle suite must fail.
    bool inject_fault = false;
};

/// A report is an ordered JSON object; tabular commands additionally carry
/// a table that the CSV writer prints with a header row.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct Report {
    nlohmann::ordered_json body;
    std::optional<Table> table;
    int exit_code = EXIT_OK;
};

/// Coupling from --gamma or --kappa. A gamma typed within 5e-8 of 1/sqrt(2)
/// or 1 is taken to mean that endpoint.
Coupling coupling_of(const ScenarioConfig &config);
JointSetup setup_of(const ScenarioConfig &config);

/// Round to 9 significant digits, the precision of all emitted numbers.
double round9(double x);

Report cmd_probs(const ScenarioConfig &config);
Report cmd_estimate(const ScenarioConfig &config);
Report cmd_tradeoff(const ScenarioConfig &config);
Report cmd_verify(const ScenarioConfig &config);
Report cmd_znzd(const ScenarioConfig &config);

std::string render(const Report &report, Format format);

/// Full command line entry point. Returns the process exit status.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace weakmeas::cli

#endif

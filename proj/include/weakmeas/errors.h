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

#ifndef _WEAKMEAS_ERRORS_H
#define _WEAKMEAS_ERRORS_H

#include <stdexcept>
#include <string>

namespace weakmeas {

/// Which measurement channel an error or statistic refers to.
/// Channel A is the weak meter readout of sigma_z, channel B is the
/// subsequent projective measurement of sigma.n.
enum class Channel { A, B };

inline const char *channel_name(Channel c) {
    return c == Channel::A ? "A" : "B";
}

struct InvalidParameter : std::invalid_argument {
    explicit InvalidParameter(const std::string &msg) : std::invalid_argument(msg) {
    }
};

/// The coupling leaves a channel without recoverable information
/// (kappa = 0 for either channel, or 2*gamma*gamma_bar = 0 for channel B).
struct DegenerateCoupling : std::domain_error {
    Channel channel;
    DegenerateCoupling(Channel channel, const std::string &msg) : std::domain_error(msg), channel(channel) {
    }
};

/// A binary distribution sits on the boundary of the simplex, so its
/// Fisher information diverges.
struct DegenerateDistribution : std::domain_error {
    Channel channel;
    DegenerateDistribution(Channel channel, const std::string &msg) : std::domain_error(msg), channel(channel) {
    }
};

struct UnboundedVariance : std::domain_error {
    explicit UnboundedVariance(const std::string &msg) : std::domain_error(msg) {
    }
};

}  // namespace weakmeas

#endif

// Copyright 2026 The qsync Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qsync/dissipation.hpp"

#include <cmath>
#include <stdexcept>

namespace qsync {

TransitionProbabilities fermionic_probabilities(double epsilon) {
    if (!(epsilon >= 0.0)) {
        throw std::invalid_argument("fermionic_probabilities: epsilon must be >= 0");
    }
    const double up = 1.0 / (std::exp(4.0 * epsilon) + 1.0);
    return {up, 1.0 - up};
}

double transition_rate(double t1_s) {
    if (!(t1_s > 0.0)) {
        throw std::invalid_argument("transition_rate: T1 must be > 0");
    }
    return kTwoPi / t1_s;
}

std::vector<JumpOperator> build_jump_operators(const SpinSystemConfig& config) {
    config.validate();

    struct SpeciesRates {
        Species species;
        double rate;
        TransitionProbabilities p;
    };
    const SpeciesRates all[] = {
        {Species::P, transition_rate(config.t1_p_s), fermionic_probabilities(config.epsilon_p)},
        {Species::F, transition_rate(config.t1_f_s), fermionic_probabilities(config.epsilon_f)},
    };

    std::vector<JumpOperator> jumps;
    jumps.reserve(8);
    for (const auto& s : all) {
        for (int partner = 0; partner < 2; ++partner) {
            // Qubit bit 0 is the upper Zeeman state of each spin.
            const int upper = s.species == Species::P ? partner : 2 * partner;
            const int lower = s.species == Species::P ? 2 + partner : 2 * partner + 1;
            const Level hi = BasisOrdering::level(upper);
            const Level lo = BasisOrdering::level(lower);

            const double w_up = std::sqrt(s.rate * s.p.up);
            const double w_down = std::sqrt(s.rate * s.p.down);

            JumpOperator up{Matrix4c::Zero(), lo, hi, Direction::Up, s.species, w_up};
            up.matrix(upper, lower) = w_up;
            JumpOperator down{Matrix4c::Zero(), hi, lo, Direction::Down, s.species, w_down};
            down.matrix(lower, upper) = w_down;

            jumps.push_back(std::move(up));
            jumps.push_back(std::move(down));
        }
    }
    return jumps;
}

}  // namespace qsync

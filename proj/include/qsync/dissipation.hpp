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

#pragma once

#include "qsync/system_model.hpp"
#include "qsync/types.hpp"

#include <vector>

namespace qsync {

enum class Direction { Up, Down };

struct TransitionProbabilities {
    double up;
    double down;
};

/// Fermionic-bath probabilities p_up = 1 / (exp(4 eps) + 1), p_down = 1 - p_up.
TransitionProbabilities fermionic_probabilities(double epsilon);

/// g = 2 pi / T1 in rad/s. Throws std::invalid_argument for t1 <= 0.
double transition_rate(double t1_s);

/// Single-quantum jump sqrt(g p) |to><from|.
struct JumpOperator {
    Matrix4c matrix;
    Level from;
    Level to;
    Direction direction;
    Species species;
    double weight;  // sqrt(g p), units sqrt(rad/s)
};

/// The eight single-quantum jumps: for each species, one upward and one
/// downward jump per orientation of the partner spin. "Up" means towards the
/// higher energy level.
std::vector<JumpOperator> build_jump_operators(const SpinSystemConfig& config);

}  // namespace qsync

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

#include <stdexcept>
#include <string>

namespace qsync {

// Invalid configuration: malformed file, unknown keys, or a physical
// invariant violated by the supplied parameters.
class ConfigError : public std::invalid_argument {
public:
    enum class Kind { Schema, Physical };

    ConfigError(Kind kind, const std::string& what) : std::invalid_argument(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

// Numerical failure inside the simulation engine.
class EngineError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The Liouvillian kernel is more than one-dimensional.
class AmbiguousSteadyStateError : public EngineError {
public:
    using EngineError::EngineError;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace qsync

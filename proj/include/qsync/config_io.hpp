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

#include "qsync/experiments.hpp"
#include "qsync/phase_space.hpp"
#include "qsync/system_model.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace qsync {

enum class OutputFormat { Csv, Json };

/// Everything a CLI run needs, with defaults resolved.
struct RunConfig {
    SpinSystemConfig system;
    DriveConfig drive{0.1, 0.0, 100.0};
    double field_t = 11.4;
    double temperature_k = 298.0;
    GyromagneticRatios gammas;
    GridSpec grid;
    std::string output_dir = ".";
    OutputFormat format = OutputFormat::Csv;
    std::uint64_t seed = 20211129;

    static constexpr int kMinResolution = 8;

    /// Physical and schema invariants; throws ConfigError.
    void validate() const;

    bool operator==(const RunConfig&) const = default;
};

/// Defaults: offsetP = -J/2, offsetF = 0, T1 = 10 s, purity factors from
/// fieldTesla / temperatureKelvin. Unknown keys and type mismatches raise
/// ConfigError(Schema); parameter violations raise ConfigError(Physical).
RunConfig parse_config(const nlohmann::json& doc);

/// Reads a JSON config file. Throws IoError if the file cannot be read.
RunConfig parse_config(const std::filesystem::path& path);

/// Fully resolved config; parse_config(to_json(c)) == c.
nlohmann::json to_json(const RunConfig& config);

/// Default configuration (J = 868 Hz, 11.4 T, 298 K).
RunConfig default_run_config();

/// 17 significant digits, enough to round-trip any double.
std::string format_double(double x);

// Writers. Every file carries the resolved config; CSV files as a leading
// "# config: {...}" comment line. All throw IoError on failure.

void write_grid(const std::filesystem::path& path, const HusimiGrid& grid, const RunConfig& config,
                OutputFormat format);
void write_sweep(const std::filesystem::path& path, const SweepResult& result, const RunConfig& config,
                 OutputFormat format);
void write_density_matrix(const std::filesystem::path& path, const DensityMatrix& rho, const RunConfig& config,
                          const nlohmann::json& extra = nlohmann::json::object());
void write_json(const std::filesystem::path& path, const nlohmann::json& doc);

/// Generic numeric CSV with the config header; every row must match the
/// column count.
void write_table(const std::filesystem::path& path, const std::vector<std::string>& columns,
                 const std::vector<std::vector<double>>& rows, const RunConfig& config);

nlohmann::json density_matrix_to_json(const DensityMatrix& rho);

}  // namespace qsync

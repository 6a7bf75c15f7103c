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

#include "qsync/config_io.hpp"

#include "qsync/errors.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <stdexcept>

namespace qsync {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& what) {
    throw ConfigError(ConfigError::Kind::Schema, what);
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& item : obj.items()) {
        if (!allowed.count(item.key())) {
            schema_error("unknown key '" + item.key() + "' in " + where);
        }
    }
}

double get_number(const json& obj, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) schema_error(std::string("'") + key + "' must be a number");
    return v.get<double>();
}

int get_int(const json& obj, const char* key, int fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) schema_error(std::string("'") + key + "' must be an integer");
    return v.get<int>();
}

std::string get_string(const json& obj, const char* key, const std::string& fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_string()) schema_error(std::string("'") + key + "' must be a string");
    return v.get<std::string>();
}

const json& get_object(const json& obj, const char* key) {
    static const json empty = json::object();
    if (!obj.contains(key)) return empty;
    const json& v = obj.at(key);
    if (!v.is_object()) schema_error(std::string("'") + key + "' must be an object");
    return v;
}

std::ofstream open_output(const std::filesystem::path& path) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw IoError("failed writing " + path.string());
}

json number_array(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(x);
    return a;
}

}  // namespace

void RunConfig::validate() const {
    system.validate();
    drive.validate();
    if (!(field_t > 0.0)) throw ConfigError(ConfigError::Kind::Physical, "fieldTesla must be > 0");
    if (!(temperature_k > 0.0)) throw ConfigError(ConfigError::Kind::Physical, "temperatureKelvin must be > 0");
    if (!(gammas.phosphorus_mhz_per_t > 0.0) || !(gammas.fluorine_mhz_per_t > 0.0)) {
        throw ConfigError(ConfigError::Kind::Physical, "gyromagnetic ratios must be > 0");
    }
    if (grid.theta_points < kMinResolution || grid.phi_points < kMinResolution) {
        throw ConfigError(ConfigError::Kind::Schema, "grid resolutions must be >= 8");
    }
    if (output_dir.empty()) throw ConfigError(ConfigError::Kind::Schema, "outputDir must not be empty");
}

RunConfig parse_config(const json& doc) {
    if (!doc.is_object()) schema_error("config must be a JSON object");
    reject_unknown_keys(doc,
                        {"jCoupling", "offsetP", "offsetF", "t1P", "t1F", "epsilonP", "epsilonF", "fieldTesla",
                         "temperatureKelvin", "gammaP", "gammaF", "drive", "grid", "outputDir", "format", "seed"},
                        "config");
    if (!doc.contains("jCoupling")) schema_error("'jCoupling' is required");

    RunConfig c;
    c.system.j_coupling_hz = get_number(doc, "jCoupling", 0.0);
    c.system.offset_p_hz = get_number(doc, "offsetP", -0.5 * c.system.j_coupling_hz);
    c.system.offset_f_hz = get_number(doc, "offsetF", 0.0);
    c.system.t1_p_s = get_number(doc, "t1P", 10.0);
    c.system.t1_f_s = get_number(doc, "t1F", 10.0);
    c.field_t = get_number(doc, "fieldTesla", c.field_t);
    c.temperature_k = get_number(doc, "temperatureKelvin", c.temperature_k);
    c.gammas.phosphorus_mhz_per_t = get_number(doc, "gammaP", c.gammas.phosphorus_mhz_per_t);
    c.gammas.fluorine_mhz_per_t = get_number(doc, "gammaF", c.gammas.fluorine_mhz_per_t);

    const bool need_default_purity = !doc.contains("epsilonP") || !doc.contains("epsilonF");
    PurityFactors purity;
    if (need_default_purity) {
        if (!(c.field_t > 0.0) || !(c.temperature_k > 0.0)) {
            throw ConfigError(ConfigError::Kind::Physical, "fieldTesla and temperatureKelvin must be > 0");
        }
        purity = default_purity_factors(c.field_t, c.temperature_k, c.gammas);
    }
    c.system.epsilon_p = get_number(doc, "epsilonP", purity.epsilon_p);
    c.system.epsilon_f = get_number(doc, "epsilonF", purity.epsilon_f);

    const json& drive = get_object(doc, "drive");
    reject_unknown_keys(drive, {"amplitude", "detuning", "duration"}, "drive");
    c.drive.amplitude_hz = get_number(drive, "amplitude", c.drive.amplitude_hz);
    c.drive.detuning_hz = get_number(drive, "detuning", c.drive.detuning_hz);
    c.drive.duration_s = get_number(drive, "duration", c.drive.duration_s);

    const json& grid = get_object(doc, "grid");
    reject_unknown_keys(grid, {"thetaPoints", "phiPoints"}, "grid");
    c.grid.theta_points = get_int(grid, "thetaPoints", c.grid.theta_points);
    c.grid.phi_points = get_int(grid, "phiPoints", c.grid.phi_points);

    c.output_dir = get_string(doc, "outputDir", c.output_dir);
    const std::string format = get_string(doc, "format", "csv");
    if (format == "csv") {
        c.format = OutputFormat::Csv;
    } else if (format == "json") {
        c.format = OutputFormat::Json;
    } else {
        schema_error("'format' must be \"csv\" or \"json\"");
    }
    if (doc.contains("seed")) {
        const json& s = doc.at("seed");
        if (!s.is_number_unsigned()) schema_error("'seed' must be a non-negative integer");
        c.seed = s.get<std::uint64_t>();
    }

    c.validate();
    return c;
}

RunConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        schema_error(std::string("malformed JSON: ") + e.what());
    }
    return parse_config(doc);
}

json to_json(const RunConfig& c) {
    return json{
        {"jCoupling", c.system.j_coupling_hz},
        {"offsetP", c.system.offset_p_hz},
        {"offsetF", c.system.offset_f_hz},
        {"t1P", c.system.t1_p_s},
        {"t1F", c.system.t1_f_s},
        {"epsilonP", c.system.epsilon_p},
        {"epsilonF", c.system.epsilon_f},
        {"fieldTesla", c.field_t},
        {"temperatureKelvin", c.temperature_k},
        {"gammaP", c.gammas.phosphorus_mhz_per_t},
        {"gammaF", c.gammas.fluorine_mhz_per_t},
        {"drive", {{"amplitude", c.drive.amplitude_hz}, {"detuning", c.drive.detuning_hz}, {"duration", c.drive.duration_s}}},
        {"grid", {{"thetaPoints", c.grid.theta_points}, {"phiPoints", c.grid.phi_points}}},
        {"outputDir", c.output_dir},
        {"format", c.format == OutputFormat::Csv ? "csv" : "json"},
        {"seed", c.seed},
    };
}

RunConfig default_run_config() {
    return parse_config(json{{"jCoupling", 868.0}});
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_json(const std::filesystem::path& path, const json& doc) {
    auto out = open_output(path);
    out << doc.dump(2) << '\n';
    finish(out, path);
}

void write_grid(const std::filesystem::path& path, const HusimiGrid& grid, const RunConfig& config,
                OutputFormat format) {
    if (format == OutputFormat::Json) {
        json q = json::array();
        for (Eigen::Index i = 0; i < grid.values.rows(); ++i) {
            json row = json::array();
            for (Eigen::Index j = 0; j < grid.values.cols(); ++j) row.push_back(grid.values(i, j));
            q.push_back(std::move(row));
        }
        write_json(path, json{{"config", to_json(config)},
                              {"theta", number_array(grid.theta)},
                              {"phi", number_array(grid.phi)},
                              {"q", std::move(q)}});
        return;
    }
    auto out = open_output(path);
    out << "# config: " << to_json(config).dump() << '\n';
    out << "theta,phi,Q\n";
    for (std::size_t i = 0; i < grid.theta.size(); ++i) {
        for (std::size_t j = 0; j < grid.phi.size(); ++j) {
            out << format_double(grid.theta[i]) << ',' << format_double(grid.phi[j]) << ','
                << format_double(grid.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))) << '\n';
        }
    }
    finish(out, path);
}

void write_sweep(const std::filesystem::path& path, const SweepResult& result, const RunConfig& config,
                 OutputFormat format) {
    if (format == OutputFormat::Json) {
        json values = json::array();
        for (Eigen::Index i = 0; i < result.values.rows(); ++i) {
            json row = json::array();
            for (Eigen::Index j = 0; j < result.values.cols(); ++j) row.push_back(result.values(i, j));
            values.push_back(std::move(row));
        }
        write_json(path, json{{"config", to_json(config)},
                              {"observable", to_string(result.observable)},
                              {"evaluation", to_string(result.evaluation)},
                              {"omega_hz", number_array(result.omega_hz)},
                              {"detuning_hz", number_array(result.detuning_hz)},
                              {"values", std::move(values)}});
        return;
    }
    auto out = open_output(path);
    out << "# config: " << to_json(config).dump() << '\n';
    out << "# observable: " << to_string(result.observable) << ", evaluation: " << to_string(result.evaluation)
        << '\n';
    out << "omega_hz,detuning_hz,observable\n";
    for (std::size_t i = 0; i < result.omega_hz.size(); ++i) {
        for (std::size_t j = 0; j < result.detuning_hz.size(); ++j) {
            out << format_double(result.omega_hz[i]) << ',' << format_double(result.detuning_hz[j]) << ','
                << format_double(result.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))) << '\n';
        }
    }
    finish(out, path);
}

void write_table(const std::filesystem::path& path, const std::vector<std::string>& columns,
                 const std::vector<std::vector<double>>& rows, const RunConfig& config) {
    for (const auto& row : rows) {
        if (row.size() != columns.size()) throw std::invalid_argument("write_table: row width mismatch");
    }
    auto out = open_output(path);
    out << "# config: " << to_json(config).dump() << '\n';
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
        out << '\n';
    }
    finish(out, path);
}

json density_matrix_to_json(const DensityMatrix& rho) {
    json re = json::array();
    json im = json::array();
    for (int i = 0; i < 4; ++i) {
        json r = json::array();
        json m = json::array();
        for (int j = 0; j < 4; ++j) {
            r.push_back(rho.matrix()(i, j).real());
            m.push_back(rho.matrix()(i, j).imag());
        }
        re.push_back(std::move(r));
        im.push_back(std::move(m));
    }
    return json{{"basis", BasisOrdering::describe()}, {"real", std::move(re)}, {"imag", std::move(im)}};
}

void write_density_matrix(const std::filesystem::path& path, const DensityMatrix& rho, const RunConfig& config,
                          const json& extra) {
    json doc = density_matrix_to_json(rho);
    doc["config"] = to_json(config);
    for (const auto& item : extra.items()) doc[item.key()] = item.value();
    write_json(path, doc);
}

}  // namespace qsync

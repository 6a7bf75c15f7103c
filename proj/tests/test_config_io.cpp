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

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace qsync;
using nlohmann::json;

namespace {

std::filesystem::path scratch_dir() {
    const auto dir = std::filesystem::temp_directory_path() / "qsync_config_io_test";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

ConfigError::Kind kind_of(const json& doc) {
    try {
        parse_config(doc);
    } catch (const ConfigError& e) {
        return e.kind();
    }
    FAIL("expected a ConfigError");
    return ConfigError::Kind::Schema;
}

}  // namespace

TEST_CASE("minimal config gets defaults") {
    const RunConfig c = parse_config(json{{"jCoupling", 868.0}});
    CHECK(c.system.j_coupling_hz == 868.0);
    CHECK(c.system.offset_p_hz == -434.0);
    CHECK(c.system.offset_f_hz == 0.0);
    CHECK(c.system.t1_p_s == 10.0);
    CHECK(c.system.t1_f_s == 10.0);
    CHECK(c.system.epsilon_p == doctest::Approx(7.91e-6).epsilon(1e-3));
    CHECK(c.system.epsilon_f == doctest::Approx(1.84e-5).epsilon(1e-2));
    CHECK(c.format == OutputFormat::Csv);
    CHECK(c.grid.theta_points >= RunConfig::kMinResolution);
    CHECK(c == default_run_config());

    // Purity factors follow the field when it is given.
    const RunConfig half = parse_config(json{{"jCoupling", 868.0}, {"fieldTesla", 5.7}});
    CHECK(half.system.epsilon_p == doctest::Approx(c.system.epsilon_p / 2.0));

    // Explicit purities win over the thermal defaults.
    const RunConfig z = parse_config(json{{"jCoupling", 100.0}, {"epsilonP", 0.0}, {"epsilonF", 0.0}});
    CHECK(z.system.epsilon_p == 0.0);
    CHECK(z.system.offset_p_hz == -50.0);
}

TEST_CASE("schema errors") {
    CHECK(kind_of(json::object()) == ConfigError::Kind::Schema);
    CHECK(kind_of(json{{"jCoupling", 868.0}, {"jcoupling", 1.0}}) == ConfigError::Kind::Schema);
    CHECK(kind_of(json{{"jCoupling", "868"}}) == ConfigError::Kind::Schema);
    CHECK(kind_of(json{{"jCoupling", 868.0}, {"drive", {{"amp", 0.1}}}}) == ConfigError::Kind::Schema);
    CHECK(kind_of(json{{"jCoupling", 868.0}, {"grid", {{"thetaPoints", 4}}}}) == ConfigError::Kind::Schema);
    CHECK(kind_of(json{{"jCoupling", 868.0}, {"grid", {{"thetaPoints", 32.5}}}}) == ConfigError::Kind::Schema);
    CHECK(kind_of(json{{"jCoupling", 868.0}, {"format", "xml"}}) == ConfigError::Kind::Schema);
    CHECK(kind_of(json{{"jCoupling", 868.0}, {"seed", -3}}) == ConfigError::Kind::Schema);
    CHECK(kind_of(json{{"jCoupling", 868.0}, {"outputDir", ""}}) == ConfigError::Kind::Schema);
    CHECK(kind_of(json::array({1, 2})) == ConfigError::Kind::Schema);
}

TEST_CASE("physical errors") {
    CHECK(kind_of(json{{"jCoupling", 868.0}, {"t1P", -1.0}}) == ConfigError::Kind::Physical);
    CHECK(kind_of(json{{"jCoupling", 0.0}}) == ConfigError::Kind::Physical);
    CHECK(kind_of(json{{"jCoupling", 868.0}, {"epsilonP", 0.5}}) == ConfigError::Kind::Physical);
    CHECK(kind_of(json{{"jCoupling", 868.0}, {"temperatureKelvin", 0.0}}) == ConfigError::Kind::Physical);
    CHECK(kind_of(json{{"jCoupling", 868.0}, {"drive", {{"amplitude", -0.1}}}}) == ConfigError::Kind::Physical);
}

TEST_CASE("files") {
    const auto dir = scratch_dir();
    CHECK_THROWS_AS(parse_config(dir / "does_not_exist.json"), IoError);

    const auto broken = dir / "broken.json";
    std::ofstream(broken) << "{ \"jCoupling\": ";
    CHECK_THROWS_AS(parse_config(broken), ConfigError);

    const auto good = dir / "good.json";
    std::ofstream(good) << R"({"jCoupling": 500, "drive": {"amplitude": 0.2, "detuning": 1.5, "duration": 20}})";
    const RunConfig c = parse_config(good);
    CHECK(c.drive.amplitude_hz == 0.2);
    CHECK(c.drive.detuning_hz == 1.5);
    CHECK(c.drive.duration_s == 20.0);
}

TEST_CASE("round trip") {
    RunConfig c = default_run_config();
    c.system.t1_f_s = 3.3;
    c.drive = DriveConfig{0.1 / 3.0, -0.7, 12.5};
    c.grid.theta_points = 17;
    c.format = OutputFormat::Json;
    c.seed = 42;
    c.output_dir = "out/dir";
    CHECK(parse_config(to_json(c)) == c);
    CHECK(parse_config(json::parse(to_json(c).dump())) == c);
    CHECK(parse_config(to_json(default_run_config())) == default_run_config());
}

TEST_CASE("number formatting") {
    for (double x : {0.1, 1.0 / 3.0, 7.910658e-6, -1e300, 5e-324}) {
        CHECK(std::strtod(format_double(x).c_str(), nullptr) == x);
    }
}

TEST_CASE("writers") {
    const auto dir = scratch_dir() / "nested" / "deeper";
    std::filesystem::remove_all(scratch_dir() / "nested");
    const RunConfig c = default_run_config();
    const DensityMatrix rho = thermal_state(c.system);

    SUBCASE("grid csv") {
        GridSpec spec{8, 8};
        const HusimiGrid g = husimi_grid(rho, spec);
        write_grid(dir / "q.csv", g, c, OutputFormat::Csv);
        const auto lines = lines_of(slurp(dir / "q.csv"));
        REQUIRE(lines.size() == 2 + 64);
        REQUIRE(lines[0].rfind("# config: ", 0) == 0);
        CHECK(parse_config(json::parse(lines[0].substr(10))) == c);
        CHECK(lines[1] == "theta,phi,Q");
        // Values carry all 17 significant digits.
        std::istringstream first(lines[2]);
        std::string theta, phi, q;
        std::getline(first, theta, ',');
        std::getline(first, phi, ',');
        std::getline(first, q, ',');
        CHECK(std::stod(theta) == g.theta[0]);
        CHECK(std::stod(q) == g.values(0, 0));
    }
    SUBCASE("grid json") {
        const HusimiGrid g = husimi_grid(rho, GridSpec{8, 9});
        write_grid(dir / "q.json", g, c, OutputFormat::Json);
        const json doc = json::parse(slurp(dir / "q.json"));
        CHECK(parse_config(doc.at("config")) == c);
        CHECK(doc.at("theta").size() == 8);
        CHECK(doc.at("phi").size() == 9);
        CHECK(doc.at("q").size() == 8);
        CHECK(doc.at("q")[3][4].get<double>() == g.values(3, 4));
    }
    SUBCASE("sweep csv") {
        SweepResult r;
        r.omega_hz = {0.1, 0.2};
        r.detuning_hz = {-1.0, 0.0, 1.0};
        r.values = Eigen::MatrixXd::Constant(2, 3, 0.25);
        r.observable = Observable::AbsRho42;
        write_sweep(dir / "s.csv", r, c, OutputFormat::Csv);
        const auto lines = lines_of(slurp(dir / "s.csv"));
        REQUIRE(lines.size() == 3 + 6);
        CHECK(lines[0].rfind("# config: ", 0) == 0);
        CHECK(lines[1].find("abs-rho42") != std::string::npos);
        CHECK(lines[2] == "omega_hz,detuning_hz,observable");
    }
    SUBCASE("table") {
        write_table(dir / "t.csv", {"a", "b"}, {{1.0, 2.0}, {3.0, 4.0}}, c);
        const auto lines = lines_of(slurp(dir / "t.csv"));
        REQUIRE(lines.size() == 4);
        CHECK(lines[1] == "a,b");
        CHECK_THROWS_AS(write_table(dir / "t.csv", {"a", "b"}, {{1.0}}, c), std::invalid_argument);
    }
    SUBCASE("density matrix") {
        write_density_matrix(dir / "rho.json", rho, c, json{{"note", 1}});
        const json doc = json::parse(slurp(dir / "rho.json"));
        CHECK(doc.at("note") == 1);
        CHECK(parse_config(doc.at("config")) == c);
        const json& m = doc;
        CHECK(m.at("basis").is_string());
        REQUIRE(m.at("real").size() == 4);
        CHECK(m.at("real")[3][3].get<double>() == rho.matrix()(3, 3).real());
        CHECK(m.at("imag")[0][2].get<double>() == rho.matrix()(0, 2).imag());
    }
    SUBCASE("unwritable path") {
        const auto blocker = scratch_dir() / "blocker";
        std::ofstream(blocker) << "x";
        CHECK_THROWS_AS(write_json(blocker / "inner.json", json::object()), IoError);
    }
}

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

// qsync command-line front end. Every subcommand reads an optional JSON
// config, writes plot-ready files into the output directory and prints a
// one-line summary.

#include "qsync/config_io.hpp"
#include "qsync/errors.hpp"
#include "qsync/experiments.hpp"
#include "qsync/imhd.hpp"
#include "qsync/liouville.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

namespace fs = std::filesystem;
using namespace qsync;

namespace {

constexpr int kExitEngine = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitUsage = 64;

struct CommonOptions {
    std::string config_path;
    std::string out_dir;
    std::string format;
    std::optional<double> amplitude;
    std::optional<double> detuning;
    std::optional<double> duration;
};

class Timer {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

ExecutionOptions execution_from_env() {
    ExecutionOptions exec;
    if (const char* env = std::getenv("QSYNC_THREADS")) {
        try {
            const long n = std::stol(env);
            if (n < 1) throw std::invalid_argument("non-positive");
            exec.threads = static_cast<unsigned>(n);
        } catch (const std::exception&) {
            throw ConfigError(ConfigError::Kind::Schema, std::string("QSYNC_THREADS must be a positive integer, got '") +
                                                             env + "'");
        }
    }
    return exec;
}

RunConfig resolve(const CommonOptions& o) {
    RunConfig c = o.config_path.empty() ? default_run_config() : parse_config(fs::path(o.config_path));
    if (!o.out_dir.empty()) c.output_dir = o.out_dir;
    if (o.format == "csv") c.format = OutputFormat::Csv;
    if (o.format == "json") c.format = OutputFormat::Json;
    if (o.amplitude) c.drive.amplitude_hz = *o.amplitude;
    if (o.detuning) c.drive.detuning_hz = *o.detuning;
    if (o.duration) c.drive.duration_s = *o.duration;
    c.validate();
    return c;
}

fs::path output(const RunConfig& c, const std::string& stem) {
    return fs::path(c.output_dir) / (stem + (c.format == OutputFormat::Csv ? ".csv" : ".json"));
}

void summary(const std::string& command, const std::string& observable, double value, const Timer& timer) {
    std::printf("%s: %s = %s (runtime %.3f s)\n", command.c_str(), observable.c_str(), format_double(value).c_str(),
                timer.seconds());
}

DensityMatrix state_for(const RunConfig& c, bool use_duration) {
    const Liouvillian l = build_liouvillian(c.system, c.drive);
    if (!use_duration) return steady_state(l);
    return propagate_about(l, steady_state(l), thermal_state(c.system), c.drive.duration_s);
}

int cmd_steady(const CommonOptions& o) {
    Timer timer;
    const RunConfig c = resolve(o);
    const Liouvillian l = build_liouvillian(c.system, c.drive);
    const DensityMatrix rho = steady_state(l);
    const SpectralReport spectrum = spectral_report(l);
    nlohmann::json extra{{"abs_rho42", std::abs(rho.rho42())},
                         {"spectral_gap", spectrum.gap},
                         {"max_sync", sync_measure_max(rho)}};
    write_density_matrix(fs::path(c.output_dir) / "steady.json", rho, c, extra);
    summary("steady", "|rho42|", std::abs(rho.rho42()), timer);
    return 0;
}

int cmd_husimi(const CommonOptions& o) {
    Timer timer;
    const RunConfig c = resolve(o);
    const bool finite = o.duration.has_value();
    const DensityMatrix rho = state_for(c, finite);
    const HusimiGrid grid = husimi_grid(rho, c.grid);
    const double v = visibility(grid);
    write_grid(output(c, "husimi"), grid, c, c.format);
    nlohmann::json extra{{"evaluation", finite ? "finite_time" : "steady_state"}, {"visibility", v}};
    write_density_matrix(fs::path(c.output_dir) / "husimi_state.json", rho, c, extra);
    summary("husimi", "visibility", v, timer);
    return 0;
}

int cmd_series(const CommonOptions& o) {
    Timer timer;
    const RunConfig c = resolve(o);
    const auto durations = default_series_durations();
    const auto series = run_drive_series(c.system, c.drive, durations, c.grid);
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& p = series[i];
        rows.push_back({p.duration_s, p.abs_rho42, p.visibility});
        write_grid(output(c, "series_grid_" + std::to_string(i)), p.grid, c, c.format);
    }
    write_table(fs::path(c.output_dir) / "series.csv", {"duration_s", "abs_rho42", "visibility"}, rows, c);
    summary("series", "visibility(final)", series.back().visibility, timer);
    return 0;
}

int cmd_amp_sweep(const CommonOptions& o, double lo, double hi, int points) {
    Timer timer;
    const RunConfig c = resolve(o);
    const SweepAxis axis = SweepAxis::logarithmic("omega_hz", lo, hi, points);
    const SweepResult r = run_amplitude_sweep(c.system, axis, c.grid, execution_from_env());
    write_sweep(output(c, "amp_sweep"), r, c, c.format);
    std::vector<double> col(r.values.data(), r.values.data() + r.values.size());
    const std::size_t best = argmax(col);
    std::printf("amp-sweep: peak visibility %s at omega_hz = %s\n", format_double(col[best]).c_str(),
                format_double(r.omega_hz[best]).c_str());
    summary("amp-sweep", "max visibility", col[best], timer);
    return 0;
}

int cmd_arnold(const CommonOptions& o, bool steady) {
    Timer timer;
    const RunConfig c = resolve(o);
    const SweepResult r =
        run_arnold_tongue(c.system, default_arnold_amplitude_axis(), default_arnold_detuning_axis(), c.drive.duration_s,
                          steady ? Evaluation::SteadyState : Evaluation::FiniteTime, execution_from_env());
    write_sweep(output(c, "arnold"), r, c, c.format);
    summary("arnold", "max S", r.values.maxCoeff(), timer);
    return 0;
}

int cmd_imhd_verify(const CommonOptions& o, bool quarter) {
    Timer timer;
    const RunConfig c = resolve(o);
    const DensityMatrix rho = state_for(c, false);
    const Reconstruction variant = quarter ? Reconstruction::QuarterApproximation : Reconstruction::ExactPopulations;
    const HusimiGrid measured = imhd_scan(rho, c.grid, variant);
    const HusimiGrid direct = husimi_grid(rho, c.grid);
    const double diff = (measured.values - direct.values).cwiseAbs().maxCoeff();
    write_grid(output(c, "imhd"), measured, c, c.format);
    std::printf("imhd-verify: max |Q_IF - Q| = %s\n", format_double(diff).c_str());
    summary("imhd-verify", "max |Q_IF - Q|", diff, timer);
    if (quarter) return 0;
    return diff < 1e-9 ? 0 : kExitEngine;
}

int cmd_calibrate(const CommonOptions& o, double omega, double noise, std::vector<double> times) {
    Timer timer;
    const RunConfig c = resolve(o);
    if (times.empty()) {
        for (int i = 1; i <= 9; ++i) times.push_back(0.05 * i);
    }
    const auto samples = synthetic_calibration_data(omega, times, noise, c.seed);
    const CalibrationResult fit = calibrate_drive(samples);
    std::vector<std::vector<double>> rows;
    for (const auto& s : samples) rows.push_back({s.t_s, s.signal});
    write_table(fs::path(c.output_dir) / "calibration.csv", {"t_s", "signal"}, rows, c);
    if (!fit.small_angle) {
        std::fprintf(stderr, "calibrate: warning: max rotation angle %.3f rad exceeds the linear regime\n",
                     fit.max_angle);
    }
    summary("calibrate", "omega_hz", fit.omega_hz, timer);
    return 0;
}

int cmd_emit_config(const CommonOptions& o, const std::string& target) {
    const RunConfig c = resolve(o);
    const auto doc = to_json(c);
    if (target.empty()) {
        std::cout << doc.dump(2) << '\n';
    } else {
        write_json(target, doc);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qsync: driven dissipative two-spin synchronization simulator"};
    app.require_subcommand(1);
    CommonOptions common;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", common.config_path, "JSON run configuration");
        sub->add_option("--out", common.out_dir, "output directory (overrides outputDir)");
        sub->add_option("--format", common.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--amplitude", common.amplitude, "drive amplitude in Hz");
        sub->add_option("--detuning", common.detuning, "drive detuning in Hz");
    };

    auto* steady = app.add_subcommand("steady", "driven steady state and spectral gap");
    add_common(steady);

    auto* husimi = app.add_subcommand("husimi", "reduced Husimi grid (steady state unless --duration is given)");
    add_common(husimi);
    husimi->add_option("--duration", common.duration, "drive duration in seconds");

    auto* series = app.add_subcommand("series", "phase-localization onset over 0.05 .. 100 s");
    add_common(series);

    double sweep_lo = 1e-3, sweep_hi = 1e3;
    int sweep_points = 61;
    auto* amp = app.add_subcommand("amp-sweep", "steady-state visibility against drive amplitude");
    add_common(amp);
    amp->add_option("--min", sweep_lo, "lowest amplitude in Hz");
    amp->add_option("--max", sweep_hi, "highest amplitude in Hz");
    amp->add_option("--points", sweep_points, "number of log-spaced amplitudes");

    bool arnold_steady = false;
    auto* arnold = app.add_subcommand("arnold", "max S over the (amplitude, detuning) grid");
    add_common(arnold);
    arnold->add_option("--duration", common.duration, "drive duration in seconds");
    arnold->add_flag("--steady", arnold_steady, "evaluate the steady state instead of a finite duration");

    bool quarter = false;
    auto* imhd = app.add_subcommand("imhd-verify", "gate-level Husimi readout against the direct Husimi grid");
    add_common(imhd);
    imhd->add_flag("--quarter", quarter, "use the quarter-population reconstruction (no pass/fail)");

    double cal_omega = 0.1, cal_noise = 0.0;
    std::vector<double> cal_times;
    auto* calibrate = app.add_subcommand("calibrate", "drive calibration from synthetic nutation data");
    add_common(calibrate);
    calibrate->add_option("--omega", cal_omega, "true drive amplitude in Hz");
    calibrate->add_option("--noise", cal_noise, "noise standard deviation as a fraction of the peak signal");
    calibrate->add_option("--times", cal_times, "sample times in seconds");

    std::string emit_target;
    auto* emit = app.add_subcommand("emit-config", "print or write the fully resolved configuration");
    add_common(emit);
    emit->add_option("--output", emit_target, "write to this file instead of standard output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*steady) return cmd_steady(common);
        if (*husimi) return cmd_husimi(common);
        if (*series) return cmd_series(common);
        if (*amp) return cmd_amp_sweep(common, sweep_lo, sweep_hi, sweep_points);
        if (*arnold) return cmd_arnold(common, arnold_steady);
        if (*imhd) return cmd_imhd_verify(common, quarter);
        if (*calibrate) return cmd_calibrate(common, cal_omega, cal_noise, cal_times);
        if (*emit) return cmd_emit_config(common, emit_target);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const IoError& e) {
        std::fprintf(stderr, "i/o error: %s\n", e.what());
        return kExitIo;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitEngine;
    }
    return kExitUsage;
}

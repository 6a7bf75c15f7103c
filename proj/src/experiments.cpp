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

#include "qsync/experiments.hpp"

#include "qsync/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>
#include <thread>

namespace qsync {

namespace {

// Runs body(i) for i in [0, n). Each index writes only its own slot, so the
// output is independent of the thread count.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < n; i += workers) body(i);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

DensityMatrix driven_state(const SpinSystemConfig& config, const DriveConfig& drive, Evaluation evaluation) {
    const Liouvillian l = build_liouvillian(config, drive);
    if (evaluation == Evaluation::SteadyState) {
        return steady_state(l);
    }
    return propagate_about(l, steady_state(l), thermal_state(config), drive.duration_s);
}

bool strictly_monotone(const std::vector<double>& v) {
    if (v.size() < 2) return true;
    const bool up = v[1] > v[0];
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (up ? !(v[i] > v[i - 1]) : !(v[i] < v[i - 1])) return false;
    }
    return true;
}

}  // namespace

SweepAxis SweepAxis::linear(std::string name, double lo, double hi, int count) {
    if (count < 1) throw std::invalid_argument("SweepAxis: count must be >= 1");
    SweepAxis a{std::move(name), std::vector<double>(count), Spacing::Linear};
    for (int i = 0; i < count; ++i) {
        a.values[i] = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
    }
    return a;
}

SweepAxis SweepAxis::logarithmic(std::string name, double lo, double hi, int count) {
    if (count < 1 || !(lo > 0.0) || !(hi > 0.0)) {
        throw std::invalid_argument("SweepAxis: log axis needs count >= 1 and positive bounds");
    }
    SweepAxis a{std::move(name), std::vector<double>(count), Spacing::Log};
    const double l0 = std::log10(lo);
    const double l1 = std::log10(hi);
    for (int i = 0; i < count; ++i) {
        a.values[i] = count == 1 ? lo : std::pow(10.0, l0 + (l1 - l0) * i / (count - 1));
    }
    return a;
}

void SweepAxis::validate() const {
    if (values.empty()) throw std::invalid_argument("SweepAxis '" + name + "': no values");
    for (double v : values) {
        if (!std::isfinite(v)) throw std::invalid_argument("SweepAxis '" + name + "': non-finite value");
    }
    if (!strictly_monotone(values)) throw std::invalid_argument("SweepAxis '" + name + "': not strictly monotone");
    if (values.size() < 3) return;
    std::vector<double> mapped = values;
    if (spacing == Spacing::Log) {
        for (double& v : mapped) {
            if (!(v > 0.0)) throw std::invalid_argument("SweepAxis '" + name + "': log spacing needs positive values");
            v = std::log(v);
        }
    }
    const double step = (mapped.back() - mapped.front()) / static_cast<double>(mapped.size() - 1);
    for (std::size_t i = 1; i < mapped.size(); ++i) {
        if (std::abs((mapped[i] - mapped[i - 1]) - step) > 1e-6 * std::abs(step)) {
            throw std::invalid_argument("SweepAxis '" + name + "': spacing inconsistent with its tag");
        }
    }
}

void SweepSpec::validate() const {
    system.validate();
    drive.validate();
    amplitude.validate();
    for (double v : amplitude.values) {
        if (v < 0.0) throw std::invalid_argument("SweepSpec: negative drive amplitude");
    }
    if (detuning) detuning->validate();
    if (evaluation == Evaluation::FiniteTime && !(drive.duration_s > 0.0)) {
        throw std::invalid_argument("SweepSpec: finite-time evaluation needs a positive duration");
    }
    if (grid.theta_points < 2 || grid.phi_points < 1) {
        throw std::invalid_argument("SweepSpec: invalid Husimi grid");
    }
}

double evaluate_observable(const DensityMatrix& rho, Observable observable, const GridSpec& grid) {
    switch (observable) {
        case Observable::Visibility:
            return visibility(husimi_grid(rho, grid));
        case Observable::AbsRho42:
            return std::abs(rho.rho42());
        case Observable::MaxSync:
            return sync_measure_max(rho);
    }
    throw std::invalid_argument("evaluate_observable: unknown observable");
}

SweepResult run_sweep(const SweepSpec& spec, const ExecutionOptions& exec) {
    spec.validate();
    SweepResult result;
    result.omega_hz = spec.amplitude.values;
    result.detuning_hz = spec.detuning ? spec.detuning->values : std::vector<double>{spec.drive.detuning_hz};
    result.observable = spec.observable;
    result.evaluation = spec.evaluation;
    result.system = spec.system;
    result.drive = spec.drive;
    result.grid = spec.grid;

    const std::size_t rows = result.omega_hz.size();
    const std::size_t cols = result.detuning_hz.size();
    result.values.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));

    parallel_for(rows * cols, exec.threads, [&](std::size_t cell) {
        const std::size_t r = cell / cols;
        const std::size_t c = cell % cols;
        DriveConfig drive = spec.drive;
        drive.amplitude_hz = result.omega_hz[r];
        drive.detuning_hz = result.detuning_hz[c];
        const DensityMatrix rho = driven_state(spec.system, drive, spec.evaluation);
        result.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            evaluate_observable(rho, spec.observable, spec.grid);
    });
    return result;
}

LimitCycleResult run_limit_cycle(const SpinSystemConfig& config, const GridSpec& grid) {
    const DensityMatrix rho = steady_state(build_liouvillian(config, DriveConfig{}));
    HusimiGrid g = husimi_grid(rho, grid);
    const double v = visibility(g);
    if (!(v < 1e-8)) {
        throw EngineError("run_limit_cycle: undriven steady state shows phase localization");
    }
    return {rho, std::move(g), v, sync_measure_max(rho)};
}

std::vector<SeriesPoint> run_drive_series(const SpinSystemConfig& config, const DriveConfig& drive,
                                          std::span<const double> durations, const GridSpec& grid) {
    if (durations.empty()) throw std::invalid_argument("run_drive_series: no durations");
    for (std::size_t i = 0; i < durations.size(); ++i) {
        if (!(durations[i] >= 0.0) || (i > 0 && !(durations[i] > durations[i - 1]))) {
            throw std::invalid_argument("run_drive_series: durations must be non-negative and strictly ascending");
        }
    }
    const Liouvillian l = build_liouvillian(config, drive);
    const DensityMatrix rho0 = thermal_state(config);
    const DensityMatrix fixed = steady_state(l);

    std::vector<SeriesPoint> out;
    out.reserve(durations.size());
    for (double t : durations) {
        DensityMatrix rho = propagate_about(l, fixed, rho0, t);
        HusimiGrid g = husimi_grid(rho, grid);
        const double v = visibility(g);
        const double a = std::abs(rho.rho42());
        out.push_back({t, std::move(rho), std::move(g), v, a});
    }
    return out;
}

SweepResult run_amplitude_sweep(const SpinSystemConfig& config, const SweepAxis& amplitudes, const GridSpec& grid,
                                const ExecutionOptions& exec) {
    SweepSpec spec;
    spec.system = config;
    spec.amplitude = amplitudes;
    spec.observable = Observable::Visibility;
    spec.evaluation = Evaluation::SteadyState;
    spec.grid = grid;
    return run_sweep(spec, exec);
}

SweepResult run_arnold_tongue(const SpinSystemConfig& config, const SweepAxis& amplitudes, const SweepAxis& detunings,
                              double duration_s, Evaluation evaluation, const ExecutionOptions& exec) {
    detunings.validate();
    const double lo = detunings.values.front();
    const double hi = detunings.values.back();
    if (std::abs(lo + hi) > 1e-12 * std::max(std::abs(lo), std::abs(hi))) {
        throw std::invalid_argument("run_arnold_tongue: detuning range must be symmetric about 0");
    }
    if (!(duration_s > 0.0)) throw std::invalid_argument("run_arnold_tongue: duration must be > 0");
    SweepSpec spec;
    spec.system = config;
    spec.drive.duration_s = duration_s;
    spec.amplitude = amplitudes;
    spec.detuning = detunings;
    spec.observable = Observable::MaxSync;
    spec.evaluation = evaluation;
    return run_sweep(spec, exec);
}

SweepAxis default_amplitude_axis() {
    return SweepAxis::logarithmic("omega_hz", 1e-3, 1e3, 61);
}

SweepAxis default_arnold_amplitude_axis() {
    return SweepAxis::logarithmic("omega_hz", 1e-2, 1.0, 21);
}

SweepAxis default_arnold_detuning_axis() {
    return SweepAxis::linear("detuning_hz", -3.0, 3.0, 41);
}

std::vector<double> default_series_durations() {
    return {0.05, 0.1, 1.0, 10.0, 100.0};
}

CalibrationResult calibrate_drive(std::span<const CalibrationSample> samples) {
    if (samples.size() < 3) throw std::invalid_argument("calibrate_drive: need at least 3 samples");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!std::isfinite(samples[i].t_s) || !std::isfinite(samples[i].signal)) {
            throw std::invalid_argument("calibrate_drive: non-finite sample");
        }
        if (i > 0 && !(samples[i].t_s > samples[i - 1].t_s)) {
            throw std::invalid_argument("calibrate_drive: times must be strictly ascending");
        }
    }
    if (!(samples.back().t_s > 0.0)) throw std::invalid_argument("calibrate_drive: degenerate time axis");

    double stt = 0.0;
    double sts = 0.0;
    for (const auto& s : samples) {
        stt += s.t_s * s.t_s;
        sts += s.t_s * s.signal;
    }
    const double slope = sts / stt;

    double sq = 0.0;
    double max_angle = 0.0;
    for (const auto& s : samples) {
        const double r = s.signal - slope * s.t_s;
        sq += r * r;
        max_angle = std::max(max_angle, std::abs(slope * s.t_s));
    }
    CalibrationResult out;
    out.omega_hz = slope / kTwoPi;
    out.residual = std::sqrt(sq / static_cast<double>(samples.size()));
    out.max_angle = max_angle;
    out.small_angle = max_angle < 0.3;
    return out;
}

std::vector<CalibrationSample> synthetic_calibration_data(double omega_hz, std::span<const double> times,
                                                          double noise_fraction, std::uint64_t seed) {
    std::vector<CalibrationSample> out;
    out.reserve(times.size());
    double peak = 0.0;
    for (double t : times) {
        const double s = std::sin(kTwoPi * omega_hz * t);
        peak = std::max(peak, std::abs(s));
        out.push_back({t, s});
    }
    if (noise_fraction > 0.0) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> noise(0.0, noise_fraction * peak);
        for (auto& s : out) s.signal += noise(rng);
    }
    return out;
}

std::size_t argmax(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("argmax: empty input");
    return static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
}

bool is_unimodal(std::span<const double> values) {
    const std::size_t peak = argmax(values);
    for (std::size_t i = 1; i <= peak; ++i) {
        if (values[i] < values[i - 1]) return false;
    }
    for (std::size_t i = peak + 1; i < values.size(); ++i) {
        if (values[i] > values[i - 1]) return false;
    }
    return true;
}

HalfMaxWidth half_maximum_width(std::span<const double> axis, std::span<const double> values) {
    if (axis.size() != values.size() || axis.size() < 2) {
        throw std::invalid_argument("half_maximum_width: axis and values must match and have >= 2 points");
    }
    const std::size_t n = values.size();
    const double half = 0.5 * values[argmax(values)];
    bool resolved = true;

    // Outermost crossings: scan inwards from each end.
    double left = axis.front();
    if (values.front() >= half) {
        resolved = false;
    } else {
        std::size_t i = 0;
        while (values[i + 1] < half) ++i;
        left = axis[i] + (half - values[i]) / (values[i + 1] - values[i]) * (axis[i + 1] - axis[i]);
    }
    double right = axis.back();
    if (values.back() >= half) {
        resolved = false;
    } else {
        std::size_t i = n - 1;
        while (values[i - 1] < half) --i;
        right = axis[i] - (half - values[i]) / (values[i - 1] - values[i]) * (axis[i] - axis[i - 1]);
    }
    return {right - left, resolved};
}

std::string to_string(Observable o) {
    switch (o) {
        case Observable::Visibility: return "visibility";
        case Observable::AbsRho42: return "abs-rho42";
        case Observable::MaxSync: return "max-sync";
    }
    return "unknown";
}

std::string to_string(Evaluation e) {
    return e == Evaluation::SteadyState ? "steady-state" : "finite-time";
}

}  // namespace qsync

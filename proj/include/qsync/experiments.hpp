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

#include "qsync/liouville.hpp"
#include "qsync/phase_space.hpp"
#include "qsync/system_model.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qsync {

enum class Observable { Visibility, AbsRho42, MaxSync };
enum class Spacing { Linear, Log };

/// How the state for each sweep cell is obtained.
enum class Evaluation { SteadyState, FiniteTime };

struct ExecutionOptions {
    unsigned threads = 1;
};

struct SweepAxis {
    std::string name;
    std::vector<double> values;
    Spacing spacing = Spacing::Linear;

    static SweepAxis linear(std::string name, double lo, double hi, int count);
    static SweepAxis logarithmic(std::string name, double lo, double hi, int count);

    /// Non-empty, strictly monotone, and evenly spaced in the tagged sense
    /// (log spacing needs positive values). Throws std::invalid_argument.
    void validate() const;
};

/// Amplitude axis (Hz) and optional detuning axis (Hz); every cell starts
/// from the thermal state.
struct SweepSpec {
    SpinSystemConfig system;
    DriveConfig drive;  // duration used for FiniteTime; amplitude/detuning overridden by the axes
    SweepAxis amplitude{"omega_hz", {}, Spacing::Log};
    std::optional<SweepAxis> detuning;
    Observable observable = Observable::Visibility;
    Evaluation evaluation = Evaluation::SteadyState;
    GridSpec grid;

    void validate() const;
};

struct SweepResult {
    std::vector<double> omega_hz;
    std::vector<double> detuning_hz;  // single 0 entry when not swept
    Eigen::MatrixXd values;           // rows follow omega, columns follow detuning
    Observable observable = Observable::Visibility;
    Evaluation evaluation = Evaluation::SteadyState;
    SpinSystemConfig system;
    DriveConfig drive;
    GridSpec grid;
};

/// Evaluates the observable for one state.
double evaluate_observable(const DensityMatrix& rho, Observable observable, const GridSpec& grid);

SweepResult run_sweep(const SweepSpec& spec, const ExecutionOptions& exec = {});

struct LimitCycleResult {
    DensityMatrix state;
    HusimiGrid grid;
    double visibility;
    double max_sync;
};

/// Undriven steady state and its Husimi grid. Throws EngineError if the
/// phase distribution is not uniform (visibility >= 1e-8).
LimitCycleResult run_limit_cycle(const SpinSystemConfig& config, const GridSpec& grid = {});

struct SeriesPoint {
    double duration_s;
    DensityMatrix state;
    HusimiGrid grid;
    double visibility;
    double abs_rho42;
};

/// rho(t) = exp(L t) rho_eq for each duration (non-negative, strictly ascending).
std::vector<SeriesPoint> run_drive_series(const SpinSystemConfig& config, const DriveConfig& drive,
                                          std::span<const double> durations, const GridSpec& grid = {});

/// Steady-state visibility against drive amplitude at zero detuning.
SweepResult run_amplitude_sweep(const SpinSystemConfig& config, const SweepAxis& amplitudes, const GridSpec& grid = {},
                                const ExecutionOptions& exec = {});

/// max S over (Omega, Delta) after `duration_s` of driving, or at steady state.
SweepResult run_arnold_tongue(const SpinSystemConfig& config, const SweepAxis& amplitudes, const SweepAxis& detunings,
                              double duration_s, Evaluation evaluation = Evaluation::FiniteTime,
                              const ExecutionOptions& exec = {});

SweepAxis default_amplitude_axis();  // 61 log points, 1e-3 .. 1e3 Hz
SweepAxis default_arnold_amplitude_axis();  // 21 log points, 1e-2 .. 1 Hz
SweepAxis default_arnold_detuning_axis();  // 41 linear points, -3 .. 3 Hz
std::vector<double> default_series_durations();  // 0.05, 0.1, 1, 10, 100 s

struct CalibrationSample {
    double t_s;
    double signal;
};

struct CalibrationResult {
    double omega_hz;
    double residual;    // root-mean-square misfit of the linear model
    double max_angle;   // max |2 pi omega t| over the samples
    bool small_angle;   // max_angle < 0.3 rad
};

/// Through-origin least-squares fit of signal = 2 pi Omega t.
/// Throws std::invalid_argument for fewer than 3 samples, non-ascending or
/// non-positive times.
CalibrationResult calibrate_drive(std::span<const CalibrationSample> samples);

/// Samples sin(2 pi omega t) at `times` plus Gaussian noise with standard
/// deviation noise_fraction * max |signal|.
std::vector<CalibrationSample> synthetic_calibration_data(double omega_hz, std::span<const double> times,
                                                          double noise_fraction, std::uint64_t seed);

// Profile analysis used by the reports and the acceptance checks.

std::size_t argmax(std::span<const double> values);

/// Non-decreasing up to the maximum, non-increasing after it.
bool is_unimodal(std::span<const double> values);

struct HalfMaxWidth {
    double width;
    bool resolved;  // false when the profile stays above half maximum at an axis end
};

/// Distance between the outermost half-maximum crossings, linearly
/// interpolated. Unresolved sides extend to the axis end.
HalfMaxWidth half_maximum_width(std::span<const double> axis, std::span<const double> values);

std::string to_string(Observable o);
std::string to_string(Evaluation e);

}  // namespace qsync

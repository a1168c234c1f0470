// SPDX-License-Identifier: Apache-2.0
//
// vlcnoma - NOMA evaluation for VLC downlinks with randomly oriented receivers
// Copyright (C) 2026 The vlcnoma Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef VLCNOMA_EXPERIMENTS_HPP
#define VLCNOMA_EXPERIMENTS_HPP

#include "vlcnoma/analytic_cdf.hpp"
#include "vlcnoma/monte_carlo.hpp"
#include "vlcnoma/noma_rates.hpp"

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vlcnoma
{

/// Malformed configuration text or an unknown key.
class ConfigError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Flat experiment description. Angles are in degrees and SNRs in dB here only;
/// the accessors convert to the radian / linear units used by the library.
struct ExperimentConfig
{
    // LED and receiver
    double ell = 2.0;
    double hpbw_deg = 60.0;
    double area_r = 1.0e-4;
    double fov_deg = 60.0;

    // Mobility
    double d_min = 0.0;
    double d_max = 10.0;
    double mean_angle_min_deg = 30.0;
    double mean_angle_max_deg = 150.0;
    double deviation_deg = 30.0;
    bool tie_mean_range = false; ///< Use [deviation, 180 - deviation] as the mean-angle range

    // NOMA pair
    double beta_weak = 63.0 / 64.0;
    double beta_strong = 1.0 / 64.0;
    bool normalize_power = false; ///< Rescale so that beta_weak^2 + beta_strong^2 = 1
    double rate_weak = 2.0;
    double rate_strong = 10.0;
    int users = 20;
    int weak_rank = 1;
    int strong_rank = 10;
    FeedbackMode mode = FeedbackMode::FullCsi;
    OmaMode oma_mode = OmaMode::TimeShared;
    double c_dth = 0.1;
    double c_theta_th = 0.1;

    // Feedback noise
    bool noise_enabled = false;
    double sigma_d = 0.05;
    double sigma_phi_deg = 2.5;

    // Monte Carlo
    std::optional<std::uint64_t> trials; ///< Unset: per-command default
    std::uint64_t seed = 1;
    unsigned workers = 0;

    // Sweep axes
    std::vector<double> snr_db;
    std::vector<double> deviation_grid_deg;
    double deviation_snr_db = 200.0;
    std::vector<double> threshold_coeffs{0.1, 0.9};
    std::vector<FeedbackMode> compare_modes{FeedbackMode::FullCsi, FeedbackMode::MeanAngle};
    GainFamily family = GainFamily::Unordered;
    int cdf_points = 201;

    ExperimentConfig();

    /// Assigns one key. Grids accept "a,b,c" or "start:step:stop".
    void set(std::string_view key, std::string_view value);
    /// Applies "key = value" lines; '#' starts a comment.
    void load(std::istream &in, std::string_view origin = "<config>");
    void load_file(const std::string &path);

    void validate() const;
    /// Sorted key=value lines of every field; input to hash().
    std::string canonical() const;
    /// FNV-1a over canonical().
    std::uint64_t hash() const;

    LedGeometry led() const;
    MobilityModel model() const;
    FeedbackThresholds thresholds() const;
    NomaConfig noma(double snr_db_value) const;
    NoiseConfig noise() const;
    McOptions mc(std::uint64_t default_trials) const;
};

std::vector<std::string> config_keys();

constexpr std::uint64_t default_sweep_trials = 1000000;
constexpr std::uint64_t default_cdf_trials = 10000000;
constexpr std::uint64_t min_estimate_trials = 1000;

double db_to_linear(double db);

/// Rows of preformatted cells plus trailing summary lines.
struct Table
{
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> summary;
};

/// %.9g; NaN becomes an empty cell.
std::string format_number(double v);
std::string manifest_line(const ExperimentConfig &cfg);
void write_csv(std::ostream &out, const Table &table, const ExperimentConfig &cfg);

// ------------------------------------------------------------------------

struct AngleCdfReport
{
    std::vector<double> angle_deg;
    std::vector<double> analytic;
    std::vector<double> empirical;
    std::vector<double> mean_angle;
    double ks = 0.0;
    std::size_t samples = 0;
};
AngleCdfReport run_validate_angle_cdf(const ExperimentConfig &cfg);
Table to_table(const AngleCdfReport &r);

struct KnzReport
{
    std::vector<int> k;
    std::vector<double> analytic;
    std::vector<double> empirical;
    double total_variation = 0.0;
    double success_probability = 0.0;
    std::uint64_t conditioned_trials = 0;
};
KnzReport run_validate_knz(const ExperimentConfig &cfg);
Table to_table(const KnzReport &r);

struct ChannelCdfReport
{
    GainFamily family = GainFamily::Unordered;
    std::vector<double> sq_gain;
    std::vector<double> analytic;
    std::vector<double> empirical;
    double ks_bound = 0.0; ///< Upper bound on the KS distance from a tabulated analytic CDF
    std::size_t samples = 0;
};
std::unique_ptr<SquaredGainCdf> make_family_cdf(const ExperimentConfig &cfg);
ChannelCdfReport run_validate_channel_cdf(const ExperimentConfig &cfg);
Table to_table(const ChannelCdfReport &r);

/// Analytic columns hold NaN when the mode has no closed form.
struct SnrSweepReport
{
    FeedbackMode mode = FeedbackMode::FullCsi;
    OmaMode oma_mode = OmaMode::TimeShared;
    std::vector<double> snr_db;
    std::vector<double> noma_analytic;
    std::vector<double> outage_weak_analytic;
    std::vector<double> outage_strong_analytic;
    std::vector<double> oma_analytic;
    SnrSweepResult mc;

    const std::vector<Estimate> &oma_mc() const;
    double max_analytic_gap() const;
};
SnrSweepReport run_sweep_snr(const ExperimentConfig &cfg);
Table to_table(const SnrSweepReport &r);

struct DeviationPoint
{
    double deviation_deg = 0.0;
    double noma_analytic = 0.0;
    Estimate noma_mc;
    Estimate oma_mc;
    double scheduling_probability = 0.0;
};
std::vector<DeviationPoint> run_sweep_deviation(const ExperimentConfig &cfg);
Table to_table(const std::vector<DeviationPoint> &r);

struct ThresholdPoint
{
    double c_dth = 0.0;
    double c_theta_th = 0.0;
    SnrSweepReport sweep;
};
std::vector<ThresholdPoint> run_sweep_thresholds(const ExperimentConfig &cfg);
Table to_table(const std::vector<ThresholdPoint> &r);

struct NoisyComparison
{
    FeedbackMode mode = FeedbackMode::FullCsi;
    std::vector<double> snr_db;
    SnrSweepResult noiseless;
    SnrSweepResult noisy;
    double max_abs_difference() const;
};
std::vector<NoisyComparison> run_noisy_compare(const ExperimentConfig &cfg);
Table to_table(const std::vector<NoisyComparison> &r);

} // namespace vlcnoma

#endif

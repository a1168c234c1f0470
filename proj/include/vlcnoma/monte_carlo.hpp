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

#ifndef VLCNOMA_MONTE_CARLO_HPP
#define VLCNOMA_MONTE_CARLO_HPP

#include "vlcnoma/noma_rates.hpp"
#include "vlcnoma/stochastic.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace vlcnoma
{

/// Gaussian perturbation of the reported distance and vertical angles. Angles in radians.
struct NoiseConfig
{
    double sigma_d = 0.05;
    double sigma_phi = deg_to_rad(2.5);
    bool enabled = false;

    void validate() const;
};

/// Random streams owned by one trial block. Noise has its own stream so that noisy and
/// noiseless runs with the same seed see identical user populations.
struct TrialStreams
{
    RandomStream users;
    RandomStream noise;
};

TrialStreams make_trial_streams(std::uint64_t seed, std::uint64_t block);

struct TrialOutcome
{
    bool scheduled = false;
    UserState weak_user{};
    UserState strong_user{};
    double h_weak = 0.0;
    double h_strong = 0.0;
    bool outage_weak = true;
    bool outage_strong = true;
};

/// Observed state: d + e_d (clamped at zero); one angle error shifts both vertical angles.
UserState apply_noise(const UserState &user, const NoiseConfig &noise, RandomStream &rng);

/// Outage flags of a NOMA pair with true gains h_weak, h_strong at cfg.snr.
void evaluate_noma_outage(TrialOutcome &out, const NomaConfig &cfg);

/// One transmission period with individual ordering (FullCsi, MeanAngle, DistanceOnly).
TrialOutcome run_individual_trial(const NomaConfig &cfg, const MobilityModel &model, const LedGeometry &led,
                                  const NoiseConfig &noise, TrialStreams &streams);

/// One transmission period with group scheduling (TwoBitInstantaneous, TwoBitMean, OneBitDistance).
TrialOutcome run_group_trial(const NomaConfig &cfg, const MobilityModel &model, const LedGeometry &led,
                             const NoiseConfig &noise, TrialStreams &streams);

/// Dispatches on cfg.feedback_mode.
TrialOutcome run_trial(const NomaConfig &cfg, const MobilityModel &model, const LedGeometry &led,
                       const NoiseConfig &noise, TrialStreams &streams);

/// Parallel execution settings. Results depend on (seed, trials, block_size) only.
struct McOptions
{
    std::uint64_t trials = 1000000;
    std::uint64_t seed = 1;
    unsigned workers = 0; ///< 0 selects the hardware concurrency
    std::uint64_t block_size = 1024;

    void validate() const;
};

struct Estimate
{
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t count = 0;
};

/// Monte Carlo sum rates and outage over an SNR grid. Averages are over scheduled trials.
struct SnrSweepResult
{
    std::vector<double> snr;
    std::vector<Estimate> sum_rate_noma;
    std::vector<Estimate> outage_weak;
    std::vector<Estimate> outage_strong;
    std::vector<Estimate> sum_rate_oma_literal;
    std::vector<Estimate> sum_rate_oma_time_shared;
    std::uint64_t trials = 0;
    std::uint64_t scheduled = 0;

    double scheduling_probability() const { return trials ? static_cast<double>(scheduled) / trials : 0.0; }
};

/// Each trial's pair is drawn once and evaluated at every grid SNR. Throws DegenerateCondition
/// when no trial is scheduled.
SnrSweepResult simulate_snr_sweep(const NomaConfig &cfg, const MobilityModel &model, const LedGeometry &led,
                                  const NoiseConfig &noise, std::span<const double> snr_grid,
                                  const McOptions &opt);

/// Instantaneous vertical angles of independent users.
std::vector<double> sample_vertical_angles(const MobilityModel &model, const McOptions &opt);

/// Histogram of K_nz over all trials (index k = count of nonzero-gain users).
std::vector<std::uint64_t> nonzero_count_histogram(const MobilityModel &model, const LedGeometry &led, int users,
                                                   const McOptions &opt);

/// Conditioning of squared-gain samples.
enum class GainFamily
{
    Unordered,
    Ordered,
    TwoBitInstWeak,
    TwoBitInstStrong,
    TwoBitMeanWeak,
    TwoBitMeanStrong
};

std::string_view to_string(GainFamily family);
std::optional<GainFamily> parse_gain_family(std::string_view text);

struct GainSampleRequest
{
    GainFamily family = GainFamily::Unordered;
    FeedbackThresholds thresholds{};
    int users = 20; ///< Ordered family: users per trial
    int rank = 10;  ///< Ordered family: ascending rank among nonzero gains
    int k_min = 10; ///< Ordered family: trials need K_nz >= k_min
};

/// Squared gains under the requested conditioning. opt.trials counts user draws for the
/// user-level families and transmission periods for the ordered family.
std::vector<double> sample_squared_gains(const GainSampleRequest &req, const MobilityModel &model,
                                         const LedGeometry &led, const McOptions &opt);

} // namespace vlcnoma

#endif

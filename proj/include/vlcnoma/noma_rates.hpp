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

#ifndef VLCNOMA_NOMA_RATES_HPP
#define VLCNOMA_NOMA_RATES_HPP

#include "vlcnoma/analytic_cdf.hpp"

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace vlcnoma
{

/// How users report their channel quality and how the NOMA pair is chosen.
enum class FeedbackMode
{
    FullCsi,            ///< Individual ordering by the instantaneous squared gain
    MeanAngle,          ///< Individual ordering by the gain at the mean vertical angle
    DistanceOnly,       ///< Individual ordering by distance (closest is strongest)
    TwoBitInstantaneous,///< Groups from distance and instantaneous incidence-angle bits
    TwoBitMean,         ///< Groups from distance and mean incidence-angle bits
    OneBitDistance      ///< Groups from the distance bit only
};

enum class OmaMode
{
    PaperLiteral,  ///< Success iff h^2 > eps(R) / gamma
    TimeShared     ///< Each user owns 1/L of the period: success iff h^2 > eps(L R) / gamma
};

std::string_view to_string(FeedbackMode mode);
std::string_view to_string(OmaMode mode);
std::optional<FeedbackMode> parse_feedback_mode(std::string_view text);
std::optional<OmaMode> parse_oma_mode(std::string_view text);

bool is_individual(FeedbackMode mode);
bool has_analytic_path(FeedbackMode mode);

struct NomaConfig
{
    double beta_weak = 63.0 / 64.0;
    double beta_strong = 1.0 / 64.0;
    double rate_weak = 2.0;    ///< [bit/s/Hz]
    double rate_strong = 10.0; ///< [bit/s/Hz]
    double snr = 1.0e25;       ///< Linear transmit SNR
    int users = 20;
    int weak_rank = 1;
    int strong_rank = 10;
    FeedbackThresholds thresholds{};
    FeedbackMode feedback_mode = FeedbackMode::FullCsi;

    void validate() const;

    /// Rescales the power coefficients so that their squares sum to one.
    void normalize_power();
};

/// Warning text when the squared power coefficients do not sum to one within 1e-6.
std::optional<std::string> power_allocation_warning(const NomaConfig &cfg);

/// 0.5 log2(1 + e/(2 pi) sinr)
double achievable_rate(double sinr);

/// SINR of decoding user `target`'s message while the users in `stronger` act as interference.
/// Covers both cross decoding and own-message decoding; an empty set gives h^2 beta^2 gamma.
double sinr_cross(double h, std::span<const double> betas, int target, std::span<const int> stronger, double snr);
double sinr_own(double h, std::span<const double> betas, int index, std::span<const int> stronger, double snr);

/// (2^(2R) - 1) 2 pi / e
double epsilon_threshold(double target_rate);

struct EtaThresholds
{
    double eta_weak = 0.0;
    double eta_strong = 0.0;
    bool feasible = false;
};

EtaThresholds eta_thresholds(const NomaConfig &cfg);

/// Squared-gain threshold of one OMA user.
double oma_threshold(double target_rate, double snr, OmaMode mode);

/// Number of time slots of the time-shared OMA reference.
constexpr int oma_slots = 2;

struct OutagePair
{
    double weak = 1.0;
    double strong = 1.0;
};

/// Analytic CDFs of the two scheduled users' squared gains.
struct AnalyticPair
{
    std::unique_ptr<SquaredGainCdf> weak;
    std::unique_ptr<SquaredGainCdf> strong;
};

/// Builds the CDF pair for FullCsi, TwoBitInstantaneous, or TwoBitMean. Throws InvalidParameter otherwise.
AnalyticPair make_analytic_pair(const NomaConfig &cfg, const MobilityModel &model, const LedGeometry &led,
                                const QuadratureSpec &spec = {});

OutagePair outage_pair_analytic(const NomaConfig &cfg, const AnalyticPair &pair);
OutagePair outage_pair_analytic(const NomaConfig &cfg, const MobilityModel &model, const LedGeometry &led);

/// Sum of (1 - P_out) R over the two users.
double sum_rate_noma(double p_out_weak, double p_out_strong, const NomaConfig &cfg);

double sum_rate_oma(const NomaConfig &cfg, const AnalyticPair &pair, OmaMode mode);
double sum_rate_oma(const NomaConfig &cfg, const MobilityModel &model, const LedGeometry &led,
                    OmaMode mode = OmaMode::TimeShared);

} // namespace vlcnoma

#endif

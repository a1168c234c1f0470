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

#include "vlcnoma/noma_rates.hpp"
#include "vlcnoma/errors.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace vlcnoma
{

namespace
{

constexpr double e_over_2pi = std::numbers::e / (2.0 * pi);

constexpr std::array<std::pair<FeedbackMode, std::string_view>, 6> mode_names{{
    {FeedbackMode::FullCsi, "full_csi"},
    {FeedbackMode::MeanAngle, "mean_angle"},
    {FeedbackMode::DistanceOnly, "distance_only"},
    {FeedbackMode::TwoBitInstantaneous, "twobit_inst"},
    {FeedbackMode::TwoBitMean, "twobit_mean"},
    {FeedbackMode::OneBitDistance, "onebit_distance"},
}};

} // namespace

std::string_view to_string(FeedbackMode mode)
{
    for (const auto &[m, name] : mode_names)
        if (m == mode)
            return name;
    return "unknown";
}

std::string_view to_string(OmaMode mode)
{
    return mode == OmaMode::PaperLiteral ? "paper_literal" : "time_shared";
}

std::optional<FeedbackMode> parse_feedback_mode(std::string_view text)
{
    for (const auto &[m, name] : mode_names)
        if (name == text)
            return m;
    return std::nullopt;
}

std::optional<OmaMode> parse_oma_mode(std::string_view text)
{
    if (text == "paper_literal")
        return OmaMode::PaperLiteral;
    if (text == "time_shared")
        return OmaMode::TimeShared;
    return std::nullopt;
}

bool is_individual(FeedbackMode mode)
{
    return mode == FeedbackMode::FullCsi || mode == FeedbackMode::MeanAngle || mode == FeedbackMode::DistanceOnly;
}

bool has_analytic_path(FeedbackMode mode)
{
    return mode == FeedbackMode::FullCsi || mode == FeedbackMode::TwoBitInstantaneous ||
           mode == FeedbackMode::TwoBitMean;
}

void NomaConfig::validate() const
{
    if (!(beta_weak > beta_strong && beta_strong > 0.0))
        throw InvalidParameter("Power coefficients must satisfy beta_weak > beta_strong > 0.");
    if (!(rate_weak > 0.0 && rate_strong > 0.0))
        throw InvalidParameter("Target rates must be positive.");
    if (!(snr > 0.0))
        throw InvalidParameter("Transmit SNR must be positive.");
    if (users < 2)
        throw InvalidParameter("NOMA needs at least two users.");
    if (!(weak_rank >= 1 && weak_rank < strong_rank && strong_rank <= users))
        throw InvalidParameter("Ranks must satisfy 1 <= i < j <= K.");
}

void NomaConfig::normalize_power()
{
    const double norm = std::sqrt(beta_weak * beta_weak + beta_strong * beta_strong);
    if (!(norm > 0.0))
        throw InvalidParameter("Cannot normalize zero power coefficients.");
    beta_weak /= norm;
    beta_strong /= norm;
}

std::optional<std::string> power_allocation_warning(const NomaConfig &cfg)
{
    const double total = cfg.beta_weak * cfg.beta_weak + cfg.beta_strong * cfg.beta_strong;
    if (std::abs(total - 1.0) <= 1.0e-6)
        return std::nullopt;
    std::ostringstream os;
    os << "squared power coefficients sum to " << total << " instead of 1; using them as given";
    return os.str();
}

double achievable_rate(double sinr)
{
    if (sinr < 0.0)
        throw InvalidParameter("SINR must be nonnegative.");
    return 0.5 * std::log1p(e_over_2pi * sinr) / std::numbers::ln2;
}

double sinr_cross(double h, std::span<const double> betas, int target, std::span<const int> stronger, double snr)
{
    const auto n = static_cast<int>(betas.size());
    if (target < 0 || target >= n)
        throw InvalidParameter("sinr: target index out of range.");
    if (!(snr > 0.0))
        throw InvalidParameter("sinr: SNR must be positive.");
    const double h2 = h * h;
    if (h2 == 0.0)
        return 0.0;
    double interference = 0.0;
    for (int k : stronger)
    {
        if (k < 0 || k >= n)
            throw InvalidParameter("sinr: interferer index out of range.");
        interference += betas[k] * betas[k];
    }
    const double b = betas[target];
    // h^2 b^2 / (h^2 I + 1/gamma), written to stay finite for huge gamma.
    return h2 * b * b * snr / (h2 * interference * snr + 1.0);
}

double sinr_own(double h, std::span<const double> betas, int index, std::span<const int> stronger, double snr)
{
    return sinr_cross(h, betas, index, stronger, snr);
}

double epsilon_threshold(double target_rate)
{
    if (target_rate < 0.0)
        throw InvalidParameter("Target rate must be nonnegative.");
    return std::expm1(2.0 * target_rate * std::numbers::ln2) / e_over_2pi;
}

EtaThresholds eta_thresholds(const NomaConfig &cfg)
{
    const double eps_i = epsilon_threshold(cfg.rate_weak);
    const double eps_j = epsilon_threshold(cfg.rate_strong);
    const double bi2 = cfg.beta_weak * cfg.beta_weak;
    const double bj2 = cfg.beta_strong * cfg.beta_strong;
    EtaThresholds t;
    const double denom = bi2 - bj2 * eps_i;
    t.feasible = denom > 0.0;
    if (!t.feasible)
    {
        t.eta_weak = t.eta_strong = std::numeric_limits<double>::infinity();
        return t;
    }
    t.eta_weak = eps_i / cfg.snr / denom;
    t.eta_strong = std::max(t.eta_weak, eps_j / (cfg.snr * bj2));
    return t;
}

double oma_threshold(double target_rate, double snr, OmaMode mode)
{
    const double slots = mode == OmaMode::TimeShared ? oma_slots : 1.0;
    return epsilon_threshold(slots * target_rate) / snr;
}

AnalyticPair make_analytic_pair(const NomaConfig &cfg, const MobilityModel &model, const LedGeometry &led,
                                const QuadratureSpec &spec)
{
    cfg.validate();
    AnalyticPair pair;
    switch (cfg.feedback_mode)
    {
    case FeedbackMode::FullCsi:
        pair.weak = std::make_unique<OrderedCdf>(model, led, cfg.weak_rank, cfg.users, cfg.strong_rank, spec);
        pair.strong = std::make_unique<OrderedCdf>(model, led, cfg.strong_rank, cfg.users, cfg.strong_rank, spec);
        break;
    case FeedbackMode::TwoBitInstantaneous:
        pair.weak = std::make_unique<WeakTwoBitInstCdf>(model, led, cfg.thresholds, spec);
        pair.strong = std::make_unique<StrongTwoBitInstCdf>(model, led, cfg.thresholds, spec);
        break;
    case FeedbackMode::TwoBitMean:
        pair.weak = std::make_unique<TwoBitMeanCdf>(model, led, cfg.thresholds, TwoBitMeanCdf::Group::Weak, spec);
        pair.strong =
            std::make_unique<TwoBitMeanCdf>(model, led, cfg.thresholds, TwoBitMeanCdf::Group::Strong, spec);
        break;
    default:
        throw InvalidParameter(std::string("No analytic outage for feedback mode ") +
                               std::string(to_string(cfg.feedback_mode)));
    }
    return pair;
}

OutagePair outage_pair_analytic(const NomaConfig &cfg, const AnalyticPair &pair)
{
    const EtaThresholds eta = eta_thresholds(cfg);
    if (!eta.feasible)
        return {1.0, 1.0};
    return {(*pair.weak)(eta.eta_weak), (*pair.strong)(eta.eta_strong)};
}

OutagePair outage_pair_analytic(const NomaConfig &cfg, const MobilityModel &model, const LedGeometry &led)
{
    return outage_pair_analytic(cfg, make_analytic_pair(cfg, model, led));
}

double sum_rate_noma(double p_out_weak, double p_out_strong, const NomaConfig &cfg)
{
    if (!(p_out_weak >= 0.0 && p_out_weak <= 1.0 && p_out_strong >= 0.0 && p_out_strong <= 1.0))
        throw InvalidParameter("Outage probabilities must lie in [0, 1].");
    return (1.0 - p_out_weak) * cfg.rate_weak + (1.0 - p_out_strong) * cfg.rate_strong;
}

double sum_rate_oma(const NomaConfig &cfg, const AnalyticPair &pair, OmaMode mode)
{
    const double pw = (*pair.weak)(oma_threshold(cfg.rate_weak, cfg.snr, mode));
    const double ps = (*pair.strong)(oma_threshold(cfg.rate_strong, cfg.snr, mode));
    return (1.0 - pw) * cfg.rate_weak + (1.0 - ps) * cfg.rate_strong;
}

double sum_rate_oma(const NomaConfig &cfg, const MobilityModel &model, const LedGeometry &led, OmaMode mode)
{
    return sum_rate_oma(cfg, make_analytic_pair(cfg, model, led), mode);
}

} // namespace vlcnoma

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

#include "catch_amalgamated.hpp"
#include "vlcnoma/errors.hpp"
#include "vlcnoma/noma_rates.hpp"

#include <array>
#include <cmath>

using namespace vlcnoma;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{

MobilityModel ref_model(double dev_deg)
{
    MobilityModel m;
    m.mean_angle_min = deg_to_rad(30.0);
    m.mean_angle_max = deg_to_rad(150.0);
    m.max_deviation = deg_to_rad(dev_deg);
    return m;
}

LedGeometry ref_led(double fov_deg)
{
    return LedGeometry::make(2.0, deg_to_rad(60.0), 1e-4, deg_to_rad(fov_deg));
}

} // namespace

TEST_CASE("mode names round trip")
{
    for (auto m : {FeedbackMode::FullCsi, FeedbackMode::MeanAngle, FeedbackMode::DistanceOnly,
                   FeedbackMode::TwoBitInstantaneous, FeedbackMode::TwoBitMean, FeedbackMode::OneBitDistance})
        CHECK(parse_feedback_mode(to_string(m)) == m);
    for (auto m : {OmaMode::PaperLiteral, OmaMode::TimeShared})
        CHECK(parse_oma_mode(to_string(m)) == m);
    CHECK_FALSE(parse_feedback_mode("bogus").has_value());
    CHECK(has_analytic_path(FeedbackMode::TwoBitMean));
    CHECK_FALSE(has_analytic_path(FeedbackMode::MeanAngle));
    CHECK(is_individual(FeedbackMode::DistanceOnly));
    CHECK_FALSE(is_individual(FeedbackMode::OneBitDistance));
}

TEST_CASE("achievable rate and epsilon")
{
    CHECK(achievable_rate(0.0) == 0.0);
    CHECK_THAT(achievable_rate(2.0 * pi / std::exp(1.0)), WithinRel(0.5, 1e-15));
    CHECK_THAT(epsilon_threshold(2.0), WithinRel(34.67182049372765, 1e-14));
    CHECK_THAT(epsilon_threshold(10.0), WithinRel(2423733.6116140317, 1e-14));
    CHECK(epsilon_threshold(0.0) == 0.0);
    for (double r : {1e-6, 0.3, 2.0, 10.0, 25.0})
        CHECK_THAT(achievable_rate(epsilon_threshold(r)), WithinRel(r, 1e-12));
    CHECK_THROWS_AS(achievable_rate(-1.0), InvalidParameter);
}

TEST_CASE("SINR with successive interference cancellation")
{
    const std::array<double, 2> betas{63.0 / 64.0, 1.0 / 64.0};
    const std::array<int, 1> stronger{1};
    CHECK_THAT(sinr_cross(1e-5, betas, 0, stronger, 1e12), WithinRel(94.59008579599619, 1e-13));
    // Strong user decodes its own message after cancelling the weak one
    CHECK_THAT(sinr_own(1e-5, betas, 1, {}, 1e12), WithinRel(1e2 / 4096.0, 1e-13));
    CHECK(sinr_cross(0.0, betas, 0, stronger, 1e12) == 0.0);
    CHECK_THROWS_AS(sinr_cross(1.0, betas, 2, stronger, 1.0), InvalidParameter);
}

TEST_CASE("eta thresholds")
{
    NomaConfig cfg;
    cfg.snr = 1e20;
    const auto eta = eta_thresholds(cfg);
    REQUIRE(eta.feasible);
    CHECK_THAT(eta.eta_weak, WithinRel(3.6096576152966056e-19, 1e-12));
    CHECK_THAT(eta.eta_strong, WithinRel(9.927612873171074e-11, 1e-12));
    for (double rs : {0.1, 1.0, 3.0, 10.0})
    {
        cfg.rate_strong = rs;
        const auto e = eta_thresholds(cfg);
        CHECK(e.eta_weak <= e.eta_strong);
    }

    // beta_i^2 <= beta_j^2 eps_i cannot support the weak message
    cfg.beta_weak = 0.6;
    cfg.beta_strong = 0.5;
    cfg.rate_weak = 2.0;
    const auto bad = eta_thresholds(cfg);
    CHECK_FALSE(bad.feasible);
    CHECK(std::isinf(bad.eta_weak));
    const auto m = ref_model(0.0);
    const auto led = ref_led(60.0);
    const auto out = outage_pair_analytic(cfg, m, led);
    CHECK(out.weak == 1.0);
    CHECK(out.strong == 1.0);
}

TEST_CASE("sum rates")
{
    NomaConfig cfg;
    CHECK(sum_rate_noma(0.0, 0.0, cfg) == 12.0);
    CHECK(sum_rate_noma(1.0, 1.0, cfg) == 0.0);
    CHECK(sum_rate_noma(0.5, 0.5, cfg) == 6.0);
    CHECK_THROWS_AS(sum_rate_noma(1.5, 0.0, cfg), InvalidParameter);
}

TEST_CASE("OMA thresholds")
{
    CHECK_THAT(oma_threshold(2.0, 10.0, OmaMode::PaperLiteral), WithinRel(epsilon_threshold(2.0) / 10.0, 1e-15));
    CHECK_THAT(oma_threshold(2.0, 10.0, OmaMode::TimeShared), WithinRel(epsilon_threshold(4.0) / 10.0, 1e-15));

    const auto m = ref_model(25.0);
    const auto led = ref_led(60.0);
    NomaConfig cfg;
    cfg.snr = 1e40;
    CHECK_THAT(sum_rate_oma(cfg, m, led, OmaMode::PaperLiteral), WithinAbs(12.0, 1e-9));
    CHECK_THAT(sum_rate_oma(cfg, m, led, OmaMode::TimeShared), WithinAbs(12.0, 1e-9));
}

TEST_CASE("analytic NOMA sum rate is monotone in SNR")
{
    const auto m = ref_model(25.0);
    const auto led = ref_led(50.0);
    for (auto mode : {FeedbackMode::FullCsi, FeedbackMode::TwoBitInstantaneous, FeedbackMode::TwoBitMean})
    {
        NomaConfig cfg;
        cfg.feedback_mode = mode;
        const auto pair = make_analytic_pair(cfg, m, led);
        double prev = -1.0, prev_oma = -1.0;
        for (int db = 100; db <= 260; db += 10)
        {
            cfg.snr = std::pow(10.0, db / 10.0);
            const auto out = outage_pair_analytic(cfg, pair);
            const double r = sum_rate_noma(out.weak, out.strong, cfg);
            const double r_oma = sum_rate_oma(cfg, pair, OmaMode::TimeShared);
            CHECK(r >= prev - 1e-9);
            CHECK(r_oma >= prev_oma - 1e-9);
            CHECK(r <= 12.0);
            prev = r;
            prev_oma = r_oma;
        }
        CHECK(prev > 11.0);
    }
    NomaConfig cfg;
    cfg.feedback_mode = FeedbackMode::MeanAngle;
    CHECK_THROWS_AS(make_analytic_pair(cfg, m, led), InvalidParameter);
}

TEST_CASE("configuration validation")
{
    NomaConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    CHECK(power_allocation_warning(cfg).has_value());
    cfg.normalize_power();
    CHECK_FALSE(power_allocation_warning(cfg).has_value());
    CHECK_THAT(cfg.beta_weak / cfg.beta_strong, WithinRel(63.0, 1e-14));

    NomaConfig bad;
    bad.weak_rank = 10;
    CHECK_THROWS_AS(bad.validate(), InvalidParameter);
    bad = {};
    bad.beta_strong = bad.beta_weak;
    CHECK_THROWS_AS(bad.validate(), InvalidParameter);
    bad = {};
    bad.strong_rank = 21;
    CHECK_THROWS_AS(bad.validate(), InvalidParameter);
}

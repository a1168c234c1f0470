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
#include "vlcnoma/analytic_cdf.hpp"
#include "vlcnoma/errors.hpp"
#include "vlcnoma/monte_carlo.hpp"

#include <cmath>
#include <random>

using namespace vlcnoma;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{

MobilityModel ref_model(double dev_deg = 30.0)
{
    MobilityModel m;
    m.mean_angle_min = deg_to_rad(30.0);
    m.mean_angle_max = deg_to_rad(150.0);
    m.max_deviation = deg_to_rad(dev_deg);
    return m;
}

LedGeometry ref_led(double fov_deg = 60.0)
{
    return LedGeometry::make(2.0, deg_to_rad(60.0), 1e-4, deg_to_rad(fov_deg));
}

const FeedbackThresholds ref_th{1.0, deg_to_rad(6.0)};

// Defining integral of closed_integral_I by adaptive quadrature, split where the mean-angle CDF kinks.
double I_by_quadrature(double x, double y, double z, const MobilityModel &m, const LedGeometry &led)
{
    QuadratureSpec spec;
    spec.rel_tol = 1e-13;
    spec.abs_tol = 1e-16;
    const double ends[] = {m.mean_angle_min, m.mean_angle_max};
    spec.breakpoints = angle_crossings(x, ends, led.ell);
    return integrate_1d([&](double r) { return cdf_mean_angle(pi - std::atan2(led.ell, r) + x, m); }, y, z, spec);
}

int I_case(double x, const MobilityModel &m)
{
    const double a_min = pi + x - m.mean_angle_min, a_max = pi + x - m.mean_angle_max;
    if (a_min < 0.0)
        return 1;
    if (a_max < 0.0)
        return a_min < pi / 2.0 ? 2 : 3;
    if (a_max < pi / 2.0)
        return a_min < pi / 2.0 ? 4 : 5;
    return 6;
}

void check_cdf_shape(const SquaredGainCdf &F)
{
    const double top = F.upper_support();
    double prev = F(0.0);
    CHECK(prev >= 0.0);
    for (int k = 1; k <= 1000; ++k)
    {
        // Geometric grid resolves the lower tail
        const double x = top * std::pow(10.0, -6.0 * (1.0 - k / 1000.0));
        const double f = F(x);
        CHECK(f >= prev - 1e-12);
        CHECK(f <= 1.0);
        prev = f;
    }
    CHECK(F(top) == 1.0);
    CHECK_THAT(F(top * (1.0 - 1e-9)), WithinAbs(1.0, 1e-3));
}

} // namespace

TEST_CASE("FeedbackThresholds")
{
    const auto m = ref_model();
    const auto led = ref_led();
    const auto th = FeedbackThresholds::from_coefficients(0.1, 0.1, m, led);
    CHECK_THAT(th.d_th, WithinAbs(1.0, 1e-15));
    CHECK_THAT(th.theta_th, WithinAbs(deg_to_rad(6.0), 1e-15));
    CHECK_THROWS_AS(FeedbackThresholds::from_coefficients(1.1, 0.1, m, led), InvalidParameter);
    CHECK_THROWS_AS((FeedbackThresholds{1.0, deg_to_rad(61.0)}.validate(m, led)), InvalidParameter);
    CHECK_THROWS_AS((FeedbackThresholds{11.0, 0.1}.validate(m, led)), InvalidParameter);
}

TEST_CASE("psi, omega and psi_mean")
{
    const auto led = ref_led();
    const auto cc = channel_constant(led);
    const double y = 3.0, z = deg_to_rad(40.0);
    const double x_top = 1.0 / cc.upsilon(y);
    CHECK(psi(2.0 * x_top, y, z, led) == 0.0);
    CHECK(omega(2.0 * x_top, y, z, led) == z);
    CHECK(psi(0.0, y, z, led) == z);
    CHECK_THAT(omega(0.0, y, z, led), WithinAbs(pi / 2.0, 1e-15));
    const double x_edge = std::pow(std::cos(z), 2) / cc.upsilon(y);
    CHECK_THAT(psi(x_edge, y, z, led), WithinAbs(z, 1e-12));
    CHECK_THAT(omega(x_edge, y, z, led), WithinAbs(z, 1e-12));
    CHECK_THAT(psi_mean(x_edge, y, z, led), WithinAbs(z, 1e-12));
    CHECK_THAT(psi_mean(0.5 * x_edge, y, pi / 2.0, led), WithinAbs(std::acos(std::sqrt(0.5 * x_edge * cc.upsilon(y))), 1e-12));
    CHECK_THROWS_AS(psi(-1.0, y, z, led), InvalidParameter);
}

TEST_CASE("d_star_inst and d_star_mean")
{
    const auto m = ref_model();
    const auto led = ref_led();
    const auto cc = channel_constant(led);
    CHECK(d_star_inst(1.0, ref_th, m, led) == ref_th.d_th);
    CHECK(d_star_inst(1e-300, ref_th, m, led) == m.d_max);
    CHECK(d_star_inst(0.0, ref_th, m, led) == m.d_max);
    const double x = cc.h_c * cc.h_c * std::pow(std::cos(led.theta_fov), 2) / std::pow(4.0 + 1.0, 3.0);
    CHECK_THAT(d_star_inst(x, ref_th, m, led), WithinAbs(ref_th.d_th, 1e-12));
    const double xm = cc.h_c * cc.h_c / std::pow(4.0 + 25.0, 3.0);
    CHECK_THAT(d_star_mean(xm, 0.0, 10.0, led), WithinAbs(5.0, 1e-12));
    CHECK(d_star_mean(0.0, 0.0, 10.0, led) == 10.0);
}

TEST_CASE("mean_support")
{
    const auto m = ref_model();
    const auto led = ref_led();
    CHECK(mean_support(5.0, {1.0, led.theta_fov}, m, led).empty());

    // Centre 180 - atan(2) lies inside the mean-angle range; the two pieces touch
    const auto touching = mean_support(1.0, {1.0, 0.0}, m, led);
    REQUIRE(touching.size() == 2);
    CHECK(touching[0].hi == touching[1].lo);
    CHECK_THAT(rad_to_deg(touching[0].lo), WithinAbs(180.0 - rad_to_deg(std::atan(2.0)) - 60.0, 1e-10));
    CHECK(touching[1].hi == m.mean_angle_max);

    // alpha(x, 5) = 180 - 21.80140948635181 + x degrees
    const auto s = mean_support(5.0, ref_th, m, led);
    REQUIRE(s.size() == 1);
    CHECK_THAT(rad_to_deg(s[0].lo), WithinAbs(180.0 - 21.80140948635181 - 60.0, 1e-10));
    CHECK_THAT(rad_to_deg(s[0].hi), WithinAbs(150.0, 1e-12));

    const auto st = mean_support_strong(0.5, ref_th, m, led);
    REQUIRE(st.size() == 1);
    const double c = 180.0 - rad_to_deg(std::atan(4.0));
    CHECK_THAT(rad_to_deg(st[0].lo), WithinAbs(c - 6.0, 1e-10));
    CHECK_THAT(rad_to_deg(st[0].hi), WithinAbs(c + 6.0, 1e-10));
}

TEST_CASE("closed_integral_I matches its defining integral")
{
    const auto led = ref_led();
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::array<int, 7> hits{};
    for (int trial = 0; trial < 1000; ++trial)
    {
        MobilityModel m;
        m.max_deviation = 0.0;
        m.mean_angle_min = deg_to_rad(10.0 + 60.0 * unit(rng));
        m.mean_angle_max = m.mean_angle_min + deg_to_rad(5.0 + 100.0 * unit(rng));
        const double x_lo = m.mean_angle_min - pi - 0.3, x_hi = m.mean_angle_max - pi / 2.0 + 0.3;
        const double x = x_lo + (x_hi - x_lo) * unit(rng);
        double y = 12.0 * unit(rng), z = 12.0 * unit(rng);
        if (y > z)
            std::swap(y, z);
        ++hits[I_case(x, m)];
        const double closed = closed_integral_I(x, y, z, m, led);
        const double quad = I_by_quadrature(x, y, z, m, led);
        CHECK_THAT(closed, WithinAbs(quad, 1e-8 * std::abs(quad) + 1e-14));
    }
    for (int c = 1; c <= 6; ++c)
        CHECK(hits[c] > 0);

    const auto m = ref_model();
    CHECK(closed_integral_I(m.mean_angle_max - pi / 2.0, 1.0, 4.0, m, led) == 3.0);
    CHECK(closed_integral_I(m.mean_angle_min - pi - 1e-3, 1.0, 4.0, m, led) == 0.0);
    CHECK_THROWS_AS(closed_integral_I(0.0, 2.0, 1.0, m, led), InvalidParameter);
}

TEST_CASE("closed_integral_I is continuous across case boundaries")
{
    const auto led = ref_led();
    MobilityModel m = ref_model();
    for (double gap : {20.0, 120.0})
    {
        m.mean_angle_max = m.mean_angle_min + deg_to_rad(gap);
        for (double b : {m.mean_angle_min - pi, m.mean_angle_min - pi / 2.0, m.mean_angle_max - pi,
                         m.mean_angle_max - pi / 2.0})
        {
            const double h = 1e-10;
            CHECK(I_case(b - h, m) != I_case(b + h, m));
            CHECK_THAT(closed_integral_I(b - h, 0.0, 10.0, m, led),
                       WithinAbs(closed_integral_I(b + h, 0.0, 10.0, m, led), 1e-8));
        }
    }
}

TEST_CASE("aux_A and aux_B")
{
    const auto m = ref_model();
    const auto led = ref_led();
    CHECK(aux_A(m.d_max, ref_th, m, led) == 0.0);
    for (double x : {0.0, 1.0, 5.0})
        CHECK_THAT(aux_A(x, {1.0, led.theta_fov}, m, led), WithinAbs(0.0, 1e-13));
    CHECK(aux_B(ref_th.d_th, ref_th, m, led) == 0.0);

    McOptions opt;
    opt.trials = 1000000;
    opt.seed = 99;
    GainSampleRequest req;
    req.family = GainFamily::TwoBitMeanWeak;
    req.thresholds = ref_th;
    // Samples are drawn with d restricted to (d_th, d_max]
    const double accepted = static_cast<double>(sample_squared_gains(req, m, led, opt).size()) / opt.trials;
    const double expected = aux_A(ref_th.d_th, ref_th, m, led) / (m.d_max - ref_th.d_th);
    CHECK_THAT(accepted, WithinAbs(expected, 4.0 * std::sqrt(expected * (1 - expected) / opt.trials)));
}

TEST_CASE("unordered CDF")
{
    const auto m = ref_model();
    const auto led = ref_led();
    const UnorderedCdf F(m, led);
    CHECK(F(0.0) == 0.0);
    CHECK(F(F.upper_support()) == 1.0);
    CHECK_THAT(F.mass() / m.delta_d(), WithinAbs(success_probability(m, led), 1e-10));

    McOptions opt;
    opt.trials = 1000000;
    opt.seed = 5;
    EmpiricalDistribution e(sample_squared_gains({}, m, led, opt));
    CHECK_THAT(F(e.quantile(0.5)), WithinAbs(0.5, 0.01));
}

TEST_CASE("ordered CDF")
{
    const auto m = ref_model();
    const auto led = ref_led();
    const UnorderedCdf U(m, led);
    const OrderedCdf single(m, led, 1, 1, 1);
    for (double x : {1e-14, 1e-12, 3e-12, 1e-11})
        CHECK_THAT(single(x), WithinAbs(U(x), 1e-14));
    const OrderedCdf O(m, led, 10, 20, 10);
    CHECK(O.from_unordered(1.0) == 1.0);
    CHECK(O.from_unordered(0.0) == 0.0);
    CHECK(O(O.upper_support()) == 1.0);
    CHECK_THROWS_AS(OrderedCdf(m, led, 11, 20, 10), InvalidParameter);
    NonzeroCount nz{20, 0.5, 10};
    CHECK_THAT(cdf_sq_ordered(2e-12, 10, nz, m, led), WithinAbs(O(2e-12), 1e-14));
}

TEST_CASE("two-bit instantaneous CDFs")
{
    const auto m = ref_model();
    const auto led = ref_led();
    const WeakTwoBitInstCdf W(m, led, ref_th);
    CHECK(W(0.0) == 0.0);
    CHECK(W(1.0 / channel_constant(led).upsilon(ref_th.d_th)) == 1.0);

    // Strong CDF with (theta_th, d_th) = (FOV, d_max) is the unordered CDF
    const StrongTwoBitInstCdf S(m, led, {m.d_max, led.theta_fov});
    const UnorderedCdf U(m, led);
    for (int k = 0; k <= 200; ++k)
    {
        const double x = U.upper_support() * std::pow(10.0, -4.0 * (1.0 - k / 200.0));
        CHECK_THAT(S(x), WithinAbs(U(x), 1e-10));
    }
    CHECK(StrongTwoBitInstCdf(m, led, ref_th)(0.0) == 0.0);
    CHECK_THROWS_AS(WeakTwoBitInstCdf(m, led, {m.d_max, deg_to_rad(6.0)}), DegenerateCondition);
}

TEST_CASE("two-bit mean CDFs")
{
    const auto m = ref_model();
    const auto led = ref_led();
    const TwoBitMeanCdf W(m, led, ref_th, TwoBitMeanCdf::Group::Weak);
    const TwoBitMeanCdf S(m, led, ref_th, TwoBitMeanCdf::Group::Strong);
    CHECK(W(1.0 / channel_constant(led).upsilon(ref_th.d_th)) == 1.0);
    CHECK(S(1.0 / channel_constant(led).upsilon(m.d_min)) == 1.0);
    CHECK_THAT(W.mass(), WithinAbs(aux_A(ref_th.d_th, ref_th, m, led), 1e-15));

    // Atom at zero equals the fraction of zero gains in the weak mean-feedback set
    McOptions opt;
    opt.trials = 1000000;
    opt.seed = 17;
    GainSampleRequest req;
    req.family = GainFamily::TwoBitMeanWeak;
    req.thresholds = ref_th;
    const auto s = sample_squared_gains(req, m, led, opt);
    const double zeros = static_cast<double>(std::count(s.begin(), s.end(), 0.0)) / s.size();
    CHECK(W(0.0) > 0.0);
    CHECK_THAT(W(0.0), WithinAbs(zeros, 4.0 * std::sqrt(zeros * (1 - zeros) / s.size())));

    // No atom without orientation jitter
    const auto still = ref_model(0.0);
    CHECK(TwoBitMeanCdf(still, led, ref_th, TwoBitMeanCdf::Group::Weak)(0.0) == 0.0);

    CHECK_THROWS_AS(TwoBitMeanCdf(m, led, {1.0, 0.0}, TwoBitMeanCdf::Group::Strong), DegenerateCondition);

    // The mean-feedback strong CDF differs visibly from its instantaneous counterpart
    const StrongTwoBitInstCdf SI(m, led, ref_th);
    double gap = 0.0;
    for (int k = 1; k <= 100; ++k)
    {
        const double x = S.upper_support() * k / 100.0;
        gap = std::max(gap, std::abs(S(x) - SI(x)));
    }
    CHECK(gap > 0.02);
}

TEST_CASE("every CDF family is monotone and bounded")
{
    const auto m = ref_model();
    const auto led = ref_led();
    check_cdf_shape(UnorderedCdf(m, led));
    check_cdf_shape(OrderedCdf(m, led, 10, 20, 10));
    check_cdf_shape(WeakTwoBitInstCdf(m, led, ref_th));
    check_cdf_shape(StrongTwoBitInstCdf(m, led, ref_th));
    check_cdf_shape(TwoBitMeanCdf(m, led, ref_th, TwoBitMeanCdf::Group::Weak));
    check_cdf_shape(TwoBitMeanCdf(m, led, ref_th, TwoBitMeanCdf::Group::Strong));
}

TEST_CASE("one-shot wrappers agree with the cached classes")
{
    const auto m = ref_model();
    const auto led = ref_led();
    const double x = 3e-12;
    CHECK(cdf_sq_unordered(x, m, led) == UnorderedCdf(m, led)(x));
    CHECK(cdf_weak_twobit_inst(x, ref_th, m, led) == WeakTwoBitInstCdf(m, led, ref_th)(x));
    CHECK(cdf_strong_twobit_inst(x, ref_th, m, led) == StrongTwoBitInstCdf(m, led, ref_th)(x));
    CHECK(cdf_weak_twobit_mean(x, ref_th, m, led) == TwoBitMeanCdf(m, led, ref_th, TwoBitMeanCdf::Group::Weak)(x));
    CHECK(cdf_strong_twobit_mean(x, ref_th, m, led) ==
          TwoBitMeanCdf(m, led, ref_th, TwoBitMeanCdf::Group::Strong)(x));
    CHECK_THROWS_AS(cdf_sq_unordered(-1.0, m, led), InvalidParameter);
}

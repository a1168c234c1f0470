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
#include "vlcnoma/geometry.hpp"

#include <cmath>

using namespace vlcnoma;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("lambertian_order")
{
    CHECK_THAT(lambertian_order(deg_to_rad(60.0)), WithinRel(1.0, 1e-14));
    CHECK_THAT(lambertian_order(deg_to_rad(30.0)), WithinRel(4.818841679306421, 1e-12));
    CHECK_THROWS_AS(lambertian_order(0.0), InvalidParameter);
    CHECK_THROWS_AS(lambertian_order(pi / 2.0), InvalidParameter);
    CHECK_THROWS_AS(lambertian_order(-0.1), InvalidParameter);
}

TEST_CASE("LedGeometry validation")
{
    CHECK_NOTHROW(LedGeometry::make(2.0, deg_to_rad(60.0), 1e-4, deg_to_rad(50.0)));
    CHECK_THROWS_AS(LedGeometry::make(0.0, deg_to_rad(60.0), 1e-4, 1.0), InvalidParameter);
    CHECK_THROWS_AS(LedGeometry::make(2.0, deg_to_rad(60.0), 0.0, 1.0), InvalidParameter);
    CHECK_THROWS_AS(LedGeometry::make(2.0, deg_to_rad(60.0), 1e-4, 0.0), InvalidParameter);
    CHECK_THROWS_AS(LedGeometry::make(2.0, deg_to_rad(60.0), 1e-4, 2.0), InvalidParameter);
}

TEST_CASE("incidence_angle")
{
    // Directly below the LED with a receiver facing up
    CHECK_THAT(incidence_angle(0.0, pi / 2.0, 2.0), WithinAbs(0.0, 1e-15));
    // d = ell, phi = 135 deg points straight at the LED
    CHECK_THAT(incidence_angle(2.0, deg_to_rad(135.0), 2.0), WithinAbs(0.0, 1e-14));
    CHECK_THAT(incidence_angle(2.0, deg_to_rad(90.0), 2.0), WithinAbs(pi / 4.0, 1e-14));
    CHECK(incidence_angle(2.0, deg_to_rad(170.0), 2.0) < 0.0);
}

TEST_CASE("irradiance_angle")
{
    CHECK(irradiance_angle(0.0, 2.0) == 0.0);
    CHECK_THAT(irradiance_angle(2.0, 2.0), WithinAbs(pi / 4.0, 1e-14));
    CHECK_THAT(irradiance_angle(10.0, 2.0), WithinAbs(1.373400766945016, 1e-14));
}

TEST_CASE("dc_gain")
{
    const LedGeometry led = LedGeometry::make(2.0, deg_to_rad(60.0), 1e-4, deg_to_rad(90.0));

    // (m+1) A_r / (2 pi ell^2) at d = 0 with normal incidence
    CHECK_THAT(dc_gain({0.0, pi / 2.0, pi / 2.0}, led), WithinRel(7.957747154594767e-06, 1e-13));

    // Outside the FOV
    LedGeometry narrow = led;
    narrow.theta_fov = deg_to_rad(10.0);
    CHECK(dc_gain({2.0, pi / 2.0, pi / 2.0}, narrow) == 0.0);

    // Matches the normalized form cos^2(theta) / upsilon(d)
    const ChannelConstant cc = channel_constant(led);
    CHECK_THAT(cc.h_c, WithinRel(6.366197723675813e-05, 1e-13));
    for (double d : {0.0, 0.7, 3.0, 9.5})
        for (double phi : {deg_to_rad(60.0), deg_to_rad(100.0), deg_to_rad(140.0)})
        {
            const double theta = incidence_angle(d, phi, led.ell);
            const double h = dc_gain({d, phi, phi}, led);
            if (std::abs(theta) <= led.theta_fov)
                CHECK_THAT(h * h, WithinRel(std::pow(std::cos(theta), 2) / cc.upsilon(d), 1e-12));
            else
                CHECK(h == 0.0);
        }
}

TEST_CASE("mean_dc_gain equals dc_gain at the mean angle")
{
    const LedGeometry led = LedGeometry::make(2.0, deg_to_rad(60.0), 1e-4, deg_to_rad(50.0));
    for (double d : {0.0, 1.0, 4.0, 10.0})
        for (double phi : {deg_to_rad(40.0), deg_to_rad(90.0), deg_to_rad(130.0), deg_to_rad(150.0)})
            CHECK_THAT(mean_dc_gain(d, phi, led), WithinRel(dc_gain({d, phi, phi}, led), 1e-14));
}

TEST_CASE("ChannelConstant::distance_for_gain inverts upsilon")
{
    const LedGeometry led = LedGeometry::make(2.0, deg_to_rad(60.0), 1e-4, deg_to_rad(50.0));
    const ChannelConstant cc = channel_constant(led);
    const double c2 = std::pow(std::cos(led.theta_fov), 2);
    for (double d : {0.5, 1.0, 5.0})
        CHECK_THAT(cc.distance_for_gain(c2 / cc.upsilon(d), c2), WithinRel(d, 1e-12));
    CHECK(std::isinf(cc.distance_for_gain(0.0, c2)));
    CHECK(cc.distance_for_gain(1.0, c2) < 0.0);
}

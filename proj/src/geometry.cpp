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

#include "vlcnoma/geometry.hpp"
#include "vlcnoma/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace vlcnoma
{

LedGeometry LedGeometry::make(double ell, double phi_hpbw, double area_r, double theta_fov)
{
    LedGeometry led;
    led.ell = ell;
    led.phi_hpbw = phi_hpbw;
    led.lambertian_m = lambertian_order(phi_hpbw);
    led.area_r = area_r;
    led.theta_fov = theta_fov;
    led.validate();
    return led;
}

void LedGeometry::validate() const
{
    if (!(ell > 0.0))
        throw InvalidParameter("LED height must be positive.");
    if (!(area_r > 0.0))
        throw InvalidParameter("Photodetector area must be positive.");
    if (!(phi_hpbw > 0.0 && phi_hpbw < pi / 2.0))
        throw InvalidParameter("Half-power beamwidth must lie in (0, pi/2).");
    if (!(lambertian_m > 0.0))
        throw InvalidParameter("Lambertian order must be positive.");
    if (!(theta_fov > 0.0 && theta_fov <= pi / 2.0))
        throw InvalidParameter("FOV half-angle must lie in (0, pi/2].");
}

double ChannelConstant::upsilon(double d) const
{
    return std::pow(ell * ell + d * d, exponent) / (h_c * h_c);
}

double ChannelConstant::distance_for_gain(double sq_gain, double cos_sq_level) const
{
    if (!(sq_gain > 0.0))
        return std::numeric_limits<double>::infinity();
    const double radicand = std::pow(h_c * h_c * cos_sq_level / sq_gain, 1.0 / exponent) - ell * ell;
    if (radicand < 0.0)
        return -1.0;
    return std::sqrt(radicand);
}

double lambertian_order(double phi_hpbw)
{
    if (!(phi_hpbw > 0.0 && phi_hpbw < pi / 2.0))
        throw InvalidParameter("Half-power beamwidth must lie in (0, pi/2).");
    return -1.0 / std::log2(std::cos(phi_hpbw));
}

double incidence_angle(double d, double phi, double ell)
{
    // atan2 maps d = 0 to pi/2
    return pi - std::atan2(ell, d) - phi;
}

double irradiance_angle(double d, double ell)
{
    return std::acos(ell / std::sqrt(ell * ell + d * d));
}

double dc_gain(const UserState &user, const LedGeometry &led)
{
    const double theta = incidence_angle(user.dist, user.inst_angle, led.ell);
    if (std::abs(theta) > led.theta_fov)
        return 0.0;
    const double r2 = led.ell * led.ell + user.dist * user.dist;
    const double cos_irr = led.ell / std::sqrt(r2);
    return (led.lambertian_m + 1.0) * led.area_r / (2.0 * pi * r2) * std::pow(cos_irr, led.lambertian_m) *
           std::max(std::cos(theta), 0.0);
}

double mean_dc_gain(double d, double mean_angle, const LedGeometry &led)
{
    const double beta = std::atan2(led.ell, d) + mean_angle;
    if (std::abs(pi - beta) > led.theta_fov)
        return 0.0;
    const double r2 = led.ell * led.ell + d * d;
    const double cos_irr = led.ell / std::sqrt(r2);
    return (led.lambertian_m + 1.0) * led.area_r / (2.0 * pi * r2) * std::pow(cos_irr, led.lambertian_m) *
           std::abs(std::cos(beta));
}

ChannelConstant channel_constant(const LedGeometry &led)
{
    ChannelConstant c;
    c.h_c = (led.lambertian_m + 1.0) * led.area_r * std::pow(led.ell, led.lambertian_m) / (2.0 * pi);
    c.ell = led.ell;
    c.exponent = led.lambertian_m + 2.0;
    return c;
}

} // namespace vlcnoma

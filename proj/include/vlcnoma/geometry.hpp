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

#ifndef VLCNOMA_GEOMETRY_HPP
#define VLCNOMA_GEOMETRY_HPP

#include <numbers>

namespace vlcnoma
{

constexpr double pi = std::numbers::pi;

constexpr double deg_to_rad(double deg) { return deg * pi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / pi; }

/// Fixture of the LED and the receivers' photodetector. Angles in radians.
struct LedGeometry
{
    double ell = 2.0;             ///< LED height above the user plane [m]
    double phi_hpbw = pi / 3.0;   ///< Half-power beamwidth of the LED
    double lambertian_m = 1.0;    ///< Lambertian order, derived from phi_hpbw
    double area_r = 1.0e-4;       ///< Photodetector area [m^2]
    double theta_fov = pi / 2.0;  ///< FOV half-angle of the photodetector

    /// Builds a validated geometry; the Lambertian order is derived from the beamwidth.
    static LedGeometry make(double ell, double phi_hpbw, double area_r, double theta_fov);

    /// Throws InvalidParameter when any invariant is violated.
    void validate() const;
};

/// One sampled user. Angles in radians.
struct UserState
{
    double dist = 0.0;        ///< Horizontal distance to the LED [m]
    double mean_angle = 0.0;  ///< Mean vertical angle
    double inst_angle = 0.0;  ///< Instantaneous vertical angle
};

/// Squared-gain normalization: h^2 = cos^2(theta) / upsilon(d) inside the FOV.
struct ChannelConstant
{
    double h_c = 0.0;       ///< (m+1) A_r ell^m / (2 pi)
    double ell = 0.0;
    double exponent = 0.0;  ///< m + 2

    double upsilon(double d) const;

    /// Distance at which cos^2(theta)/upsilon(d) equals `sq_gain` for the given cos^2 level.
    /// Returns a negative value when no nonnegative distance reaches that gain.
    double distance_for_gain(double sq_gain, double cos_sq_level) const;
};

double lambertian_order(double phi_hpbw);

/// Incidence angle pi - atan(ell/d) - phi; may be negative.
double incidence_angle(double d, double phi, double ell);

/// Irradiance angle of a downward-pointing LED seen from horizontal distance d.
double irradiance_angle(double d, double ell);

/// Instantaneous DC gain. Zero outside the FOV.
double dc_gain(const UserState &user, const LedGeometry &led);

/// DC gain evaluated at the mean vertical angle.
double mean_dc_gain(double d, double mean_angle, const LedGeometry &led);

ChannelConstant channel_constant(const LedGeometry &led);

} // namespace vlcnoma

#endif

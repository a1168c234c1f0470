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

#ifndef VLCNOMA_STOCHASTIC_HPP
#define VLCNOMA_STOCHASTIC_HPP

#include "vlcnoma/geometry.hpp"
#include "vlcnoma/numerics.hpp"

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace vlcnoma
{

/// Uniform distance, uniform mean vertical angle, and a uniform deviation around the mean.
struct MobilityModel
{
    double d_min = 0.0;
    double d_max = 10.0;
    double mean_angle_min = pi / 6.0;
    double mean_angle_max = 5.0 * pi / 6.0;
    double max_deviation = pi / 6.0;

    double delta_d() const { return d_max - d_min; }
    double delta_mean() const { return mean_angle_max - mean_angle_min; }

    void validate() const;

    /// Abscissae where the vertical-angle CDF changes its analytic form.
    std::vector<double> angle_breakpoints() const;
};

/// Binomial count of users with nonzero gain, optionally truncated below at k_min.
struct NonzeroCount
{
    int total_users = 20;
    double success_prob = 0.5;
    int k_min = 1;

    void validate() const;
};

/// Random stream for one block of Monte Carlo trials.
using RandomStream = std::mt19937_64;

/// Independent stream for (seed, block, lane), derived by seed sequence mixing.
RandomStream make_stream(std::uint64_t seed, std::uint64_t block, std::uint32_t lane = 0);

/// Draws d, the mean angle, then the instantaneous angle (exactly three uniform draws).
UserState sample_user(const MobilityModel &model, RandomStream &rng);

/// Unconditional CDF of the instantaneous vertical angle.
double cdf_vertical_angle(double x, const MobilityModel &model);

/// CDF of the instantaneous vertical angle given its mean.
double cdf_conditional_angle(double x, double mean_angle, double max_deviation);

/// CDF of the mean vertical angle.
double cdf_mean_angle(double x, const MobilityModel &model);

/// Probability that |theta| <= y at horizontal distance r.
double delta_F_phi(double r, double y, const MobilityModel &model, const LedGeometry &led);

/// Distances r at which pi - atan(ell/r) + offset crosses one of `angles`; sorted.
std::vector<double> angle_crossings(double offset, std::span<const double> angles, double ell);

/// Probability that a user has nonzero gain.
double success_probability(const MobilityModel &model, const LedGeometry &led, const QuadratureSpec &spec = {});

double pmf_nonzero_count(int k, const NonzeroCount &nz);

/// Tail mass Pr(K_nz >= k_min).
double tail_mass_nonzero_count(const NonzeroCount &nz);

/// PMF of K_nz conditioned on K_nz >= k_min.
double pmf_nonzero_count_truncated(int k, const NonzeroCount &nz);

} // namespace vlcnoma

#endif

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

#include "vlcnoma/stochastic.hpp"
#include "vlcnoma/errors.hpp"

#include <boost/math/distributions/binomial.hpp>

#include <algorithm>
#include <cmath>

namespace vlcnoma
{

void MobilityModel::validate() const
{
    if (!(d_min >= 0.0 && d_min < d_max))
        throw InvalidParameter("Distance range must satisfy 0 <= d_min < d_max.");
    if (!(mean_angle_min <= mean_angle_max))
        throw InvalidParameter("Mean-angle range is inverted.");
    if (!(max_deviation >= 0.0))
        throw InvalidParameter("Maximum deviation must be nonnegative.");
    constexpr double slack = 1.0e-12;
    if (mean_angle_min - max_deviation < -slack || mean_angle_max + max_deviation > pi + slack)
        throw InvalidParameter("Vertical angle must stay within [0, pi].");
}

std::vector<double> MobilityModel::angle_breakpoints() const
{
    return {mean_angle_min - max_deviation, mean_angle_min + max_deviation, mean_angle_max - max_deviation,
            mean_angle_max + max_deviation};
}

void NonzeroCount::validate() const
{
    if (total_users < 1)
        throw InvalidParameter("Need at least one user.");
    if (!(success_prob >= 0.0 && success_prob <= 1.0))
        throw InvalidParameter("Success probability must lie in [0, 1].");
    if (k_min < 0 || k_min > total_users)
        throw InvalidParameter("k_min must lie in [0, K].");
}

RandomStream make_stream(std::uint64_t seed, std::uint64_t block, std::uint32_t lane)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32), lane};
    return RandomStream(seq);
}

UserState sample_user(const MobilityModel &model, RandomStream &rng)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    UserState u;
    u.dist = model.d_min + model.delta_d() * unit(rng);
    u.mean_angle = model.mean_angle_min + model.delta_mean() * unit(rng);
    u.inst_angle = u.mean_angle + model.max_deviation * (2.0 * unit(rng) - 1.0);
    return u;
}

double cdf_conditional_angle(double x, double mean_angle, double max_deviation)
{
    if (max_deviation == 0.0)
        return x >= mean_angle ? 1.0 : 0.0;
    return std::clamp((x - mean_angle + max_deviation) / (2.0 * max_deviation), 0.0, 1.0);
}

double cdf_mean_angle(double x, const MobilityModel &model)
{
    const double span = model.delta_mean();
    if (span == 0.0)
        return x >= model.mean_angle_min ? 1.0 : 0.0;
    return std::clamp((x - model.mean_angle_min) / span, 0.0, 1.0);
}

double cdf_vertical_angle(double x, const MobilityModel &model)
{
    const double lo = model.mean_angle_min;
    const double hi = model.mean_angle_max;
    const double dev = model.max_deviation;
    const double span = hi - lo;

    if (dev == 0.0)
        return cdf_mean_angle(x, model);
    if (span == 0.0)
        return cdf_conditional_angle(x, lo, dev);

    if (x < lo - dev)
        return 0.0;
    if (x >= hi + dev)
        return 1.0;
    const double zeta_min = std::min(lo + dev, hi - dev);
    const double zeta_max = std::max(lo + dev, hi - dev);
    if (x <= zeta_min)
        return (x + dev - lo) * (x + dev - lo) / (4.0 * dev * span);
    if (x >= zeta_max)
        return 1.0 - (hi - x + dev) * (hi - x + dev) / (4.0 * dev * span);
    if (lo + dev <= hi - dev)
        return (x - lo) / span;
    return (x + dev - 0.5 * (lo + hi)) / (2.0 * dev);
}

double delta_F_phi(double r, double y, const MobilityModel &model, const LedGeometry &led)
{
    const double centre = pi - std::atan2(led.ell, r);
    return std::max(cdf_vertical_angle(centre + y, model) - cdf_vertical_angle(centre - y, model), 0.0);
}

std::vector<double> angle_crossings(double offset, std::span<const double> angles, double ell)
{
    // pi - atan(ell/r) + offset = b  <=>  atan(ell/r) = pi + offset - b, solvable for angles in (0, pi/2].
    std::vector<double> out;
    for (double b : angles)
    {
        const double a = pi + offset - b;
        if (a > 0.0 && a < pi / 2.0)
            out.push_back(ell / std::tan(a));
        else if (a == pi / 2.0)
            out.push_back(0.0);
    }
    std::sort(out.begin(), out.end());
    return out;
}

double success_probability(const MobilityModel &model, const LedGeometry &led, const QuadratureSpec &spec)
{
    model.validate();
    led.validate();
    const double fov = led.theta_fov;
    auto integrand = [&](double r) { return delta_F_phi(r, fov, model, led); };
    QuadratureSpec s = spec;
    const auto bps = model.angle_breakpoints();
    for (double off : {fov, -fov})
        for (double r : angle_crossings(off, bps, led.ell))
            s.breakpoints.push_back(r);
    return std::clamp(integrate_1d(integrand, model.d_min, model.d_max, s) / model.delta_d(), 0.0, 1.0);
}

double pmf_nonzero_count(int k, const NonzeroCount &nz)
{
    nz.validate();
    if (k < 0 || k > nz.total_users)
        throw InvalidParameter("Count outside [0, K].");
    const boost::math::binomial_distribution<double> dist(nz.total_users, nz.success_prob);
    return boost::math::pdf(dist, k);
}

double tail_mass_nonzero_count(const NonzeroCount &nz)
{
    nz.validate();
    if (nz.k_min <= 0)
        return 1.0;
    const boost::math::binomial_distribution<double> dist(nz.total_users, nz.success_prob);
    return boost::math::cdf(boost::math::complement(dist, nz.k_min - 1));
}

double pmf_nonzero_count_truncated(int k, const NonzeroCount &nz)
{
    const double tail = tail_mass_nonzero_count(nz);
    if (!(tail > 0.0))
        throw DegenerateCondition("Pr(K_nz >= k_min) is zero.");
    if (k < nz.k_min)
        return 0.0;
    return pmf_nonzero_count(k, nz) / tail;
}

} // namespace vlcnoma

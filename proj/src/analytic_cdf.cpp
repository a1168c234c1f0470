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

#include "vlcnoma/analytic_cdf.hpp"
#include "vlcnoma/errors.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

namespace vlcnoma
{

namespace
{

constexpr double inf = std::numeric_limits<double>::infinity();

// acos(2 s - 1) / 2 for s in [0, 1], i.e. the angle whose squared cosine is s.
// The atan2 form keeps full precision at both ends of the range.
double half_acos_cos_sq(double s)
{
    s = std::clamp(s, 0.0, 1.0);
    return std::atan2(std::sqrt(1.0 - s), std::sqrt(s));
}

// Largest |theta| that still yields squared gain above x at distance r.
double gain_angle(double x, double r, const ChannelConstant &cc)
{
    return half_acos_cos_sq(x * cc.upsilon(r));
}

double centre_angle(double r, double ell)
{
    return pi - std::atan2(ell, r);
}

double clamp_to(double v, double lo, double hi)
{
    return std::min(std::max(v, lo), hi);
}

// Distance where gain_angle(x, r) equals `level`; 0 when it is below the level everywhere,
// +inf when it never drops to it.
double distance_for_angle(double x, double level, const ChannelConstant &cc)
{
    if (!(x > 0.0) || level >= pi / 2.0)
        return level >= pi / 2.0 ? 0.0 : inf;
    const double c = std::cos(std::max(level, 0.0));
    const double r = cc.distance_for_gain(x, c * c);
    return r < 0.0 ? 0.0 : r;
}

// Roots of g(r) = b on [lo, hi] for each target b, located by a uniform scan and refined by TOMS 748.
template <class G>
void add_curve_crossings(std::vector<double> &out, G &&g, double lo, double hi, std::span<const double> targets)
{
    if (!(hi > lo) || !std::isfinite(hi))
        return;
    constexpr int n = 48;
    std::array<double, n + 1> r{}, v{};
    for (int k = 0; k <= n; ++k)
    {
        r[k] = lo + (hi - lo) * k / n;
        v[k] = g(r[k]);
    }
    for (double b : targets)
        for (int k = 0; k < n; ++k)
        {
            const double g0 = v[k] - b, g1 = v[k + 1] - b;
            if (g0 == 0.0)
                out.push_back(r[k]);
            else if (g0 * g1 < 0.0)
            {
                std::uintmax_t iters = 100;
                const auto bracket = boost::math::tools::toms748_solve(
                    [&](double t) { return g(t) - b; }, r[k], r[k + 1], g0, g1,
                    boost::math::tools::eps_tolerance<double>(50), iters);
                out.push_back(0.5 * (bracket.first + bracket.second));
            }
        }
}

std::vector<double> angle_cdf_breaks(const MobilityModel &model)
{
    return model.angle_breakpoints();
}

void append(std::vector<double> &dst, const std::vector<double> &src)
{
    dst.insert(dst.end(), src.begin(), src.end());
}

} // namespace

// ------------------------------------------------------------------------
// Thresholds and angle helpers

FeedbackThresholds FeedbackThresholds::from_coefficients(double c_d, double c_theta, const MobilityModel &model,
                                                         const LedGeometry &led)
{
    if (!(c_d >= 0.0 && c_d <= 1.0) || !(c_theta >= 0.0 && c_theta <= 1.0))
        throw InvalidParameter("Threshold coefficients must lie in [0, 1].");
    FeedbackThresholds th;
    th.d_th = model.d_min + c_d * model.delta_d();
    th.theta_th = c_theta * led.theta_fov;
    return th;
}

void FeedbackThresholds::validate(const MobilityModel &model, const LedGeometry &led) const
{
    if (!(d_th >= model.d_min && d_th <= model.d_max))
        throw InvalidParameter("Distance threshold must lie in [d_min, d_max].");
    if (!(theta_th >= 0.0 && theta_th <= led.theta_fov))
        throw InvalidParameter("Angle threshold must lie in [0, FOV].");
}

double psi(double x, double y, double z, const LedGeometry &led)
{
    if (x < 0.0)
        throw InvalidParameter("psi: squared gain must be nonnegative.");
    return std::min(gain_angle(x, y, channel_constant(led)), z);
}

double omega(double x, double y, double z, const LedGeometry &led)
{
    if (x < 0.0)
        throw InvalidParameter("omega: squared gain must be nonnegative.");
    return std::max(gain_angle(x, y, channel_constant(led)), z);
}

double psi_mean(double x, double y, double z, const LedGeometry &led)
{
    if (x < 0.0)
        throw InvalidParameter("psi_mean: squared gain must be nonnegative.");
    return std::min(half_acos_cos_sq(x * channel_constant(led).upsilon(y)), z);
}

namespace
{

double d_star_generic(double x, double cos_sq, double lo, double hi, const ChannelConstant &cc)
{
    if (!(x > 0.0))
        return hi;
    const double radicand = std::pow(cc.h_c * cc.h_c * cos_sq / x, 1.0 / cc.exponent) - cc.ell * cc.ell;
    return clamp_to(std::sqrt(std::max(radicand, 0.0)), lo, hi);
}

} // namespace

double d_star_inst(double x, const FeedbackThresholds &th, const MobilityModel &model, const LedGeometry &led)
{
    const double c = std::cos(led.theta_fov);
    return d_star_generic(x, c * c, th.d_th, model.d_max, channel_constant(led));
}

double d_star_mean(double x, double lo, double hi, const LedGeometry &led)
{
    return d_star_generic(x, 1.0, lo, hi, channel_constant(led));
}

std::vector<Interval> mean_support(double r, const FeedbackThresholds &th, const MobilityModel &model,
                                   const LedGeometry &led)
{
    const double c = centre_angle(r, led.ell);
    const double fov = led.theta_fov;
    std::vector<Interval> out;
    const Interval lower{std::max(model.mean_angle_min, c - fov), std::min(model.mean_angle_max, c - th.theta_th)};
    const Interval upper{std::max(model.mean_angle_min, c + th.theta_th), std::min(model.mean_angle_max, c + fov)};
    if (lower.hi > lower.lo)
        out.push_back(lower);
    if (upper.hi > upper.lo)
        out.push_back(upper);
    return out;
}

std::vector<Interval> mean_support_strong(double r, const FeedbackThresholds &th, const MobilityModel &model,
                                          const LedGeometry &led)
{
    const double c = centre_angle(r, led.ell);
    const Interval iv{std::max(model.mean_angle_min, c - th.theta_th), std::min(model.mean_angle_max, c + th.theta_th)};
    if (iv.hi > iv.lo)
        return {iv};
    return {};
}

double closed_integral_I(double x, double y, double z, const MobilityModel &model, const LedGeometry &led)
{
    if (!(y <= z))
        throw InvalidParameter("closed_integral_I: lower limit exceeds upper limit.");
    const double ell = led.ell;
    // F_mean(pi - atan(ell/r) + x) is 0 while atan(ell/r) >= a_min, 1 once atan(ell/r) <= a_max,
    // and linear in atan(ell/r) between r_min and r_max.
    const double a_min = pi + x - model.mean_angle_min;
    const double a_max = pi + x - model.mean_angle_max;
    auto crossing = [ell](double a) {
        if (a <= 0.0)
            return inf;
        if (a >= pi / 2.0)
            return 0.0;
        return ell / std::tan(a);
    };
    const double r_min = crossing(a_min);
    const double r_max = crossing(a_max);
    const double lo = clamp_to(r_min, y, z);
    const double hi = clamp_to(r_max, y, z);
    double ramp = 0.0;
    if (hi > lo)
    {
        const double dm = model.delta_mean();
        auto g = [&](double r) {
            return (a_min * r - 0.5 * ell * std::log(ell * ell + r * r) - r * std::atan2(ell, r)) / dm;
        };
        ramp = g(hi) - g(lo);
    }
    return ramp + (z - hi);
}

double aux_A(double x, const FeedbackThresholds &th, const MobilityModel &model, const LedGeometry &led)
{
    const double z = model.d_max;
    x = std::min(x, z);
    const double fov = led.theta_fov, t = th.theta_th;
    return std::max(0.0, closed_integral_I(fov, x, z, model, led) - closed_integral_I(-fov, x, z, model, led) -
                             closed_integral_I(t, x, z, model, led) + closed_integral_I(-t, x, z, model, led));
}

double aux_B(double x, const FeedbackThresholds &th, const MobilityModel &model, const LedGeometry &led)
{
    const double z = th.d_th;
    x = std::min(x, z);
    const double t = th.theta_th;
    return std::max(0.0, closed_integral_I(t, x, z, model, led) - closed_integral_I(-t, x, z, model, led));
}

// ------------------------------------------------------------------------
// Ratio form: unordered and strong instantaneous

FovRatioCdf::FovRatioCdf(const MobilityModel &model, const LedGeometry &led, double cap, double d_lo, double d_hi,
                         const QuadratureSpec &spec)
    : model_(model), led_(led), cc_(channel_constant(led)), cap_(cap), d_lo_(d_lo), d_hi_(d_hi), spec_(spec)
{
    model_.validate();
    led_.validate();
    spec_.validate();
    if (!(d_lo_ <= d_hi_))
        throw InvalidParameter("Distance range is inverted.");
    const auto bps = angle_cdf_breaks(model_);
    for (double off : {cap_, -cap_})
        append(fixed_breaks_, angle_crossings(off, bps, led_.ell));
    QuadratureSpec s = spec_;
    append(s.breakpoints, fixed_breaks_);
    mass_ = integrate_1d([&](double r) { return delta_F_phi(r, cap_, model_, led_); }, d_lo_, d_hi_, s);
    if (!(mass_ > 0.0))
        throw DegenerateCondition("No user can satisfy the FOV condition in the distance range.");
}

double FovRatioCdf::upper_support() const
{
    return 1.0 / cc_.upsilon(d_lo_);
}

double FovRatioCdf::operator()(double x) const
{
    if (x <= 0.0)
        return 0.0;
    if (x >= upper_support())
        return 1.0;
    const double r_cap = distance_for_angle(x, cap_, cc_);
    const double r_zero = distance_for_angle(x, 0.0, cc_);
    const double hi = std::min(d_hi_, r_zero);
    if (!(hi > d_lo_))
        return 1.0;

    QuadratureSpec s = spec_;
    s.breakpoints = fixed_breaks_;
    s.breakpoints.push_back(r_cap);
    s.breakpoints.push_back(r_zero);
    const auto bps = angle_cdf_breaks(model_);
    const double ell = led_.ell;
    const double lo_curve = std::max(d_lo_, r_cap);
    add_curve_crossings(s.breakpoints, [&](double r) { return centre_angle(r, ell) + gain_angle(x, r, cc_); },
                        lo_curve, hi, bps);
    add_curve_crossings(s.breakpoints, [&](double r) { return centre_angle(r, ell) - gain_angle(x, r, cc_); },
                        lo_curve, hi, bps);

    auto integrand = [&](double r) { return delta_F_phi(r, std::min(gain_angle(x, r, cc_), cap_), model_, led_); };
    const double num = integrate_1d(integrand, d_lo_, hi, s);
    return std::clamp(1.0 - num / mass_, 0.0, 1.0);
}

UnorderedCdf::UnorderedCdf(const MobilityModel &model, const LedGeometry &led, const QuadratureSpec &spec)
    : FovRatioCdf(model, led, led.theta_fov, model.d_min, model.d_max, spec)
{
}

StrongTwoBitInstCdf::StrongTwoBitInstCdf(const MobilityModel &model, const LedGeometry &led,
                                         const FeedbackThresholds &th, const QuadratureSpec &spec)
    : FovRatioCdf(model, led, th.theta_th, model.d_min, th.d_th, spec)
{
    th.validate(model, led);
}

// ------------------------------------------------------------------------
// Ordered

OrderedCdf::OrderedCdf(const MobilityModel &model, const LedGeometry &led, int k, int total_users, int k_min,
                       const QuadratureSpec &spec)
    : unordered_(model, led, spec), k_(k)
{
    nz_.total_users = total_users;
    nz_.k_min = k_min;
    nz_.success_prob = std::clamp(unordered_.mass() / model.delta_d(), 0.0, 1.0);
    nz_.validate();
    if (k < 1 || k > k_min)
        throw InvalidParameter("Rank must satisfy 1 <= k <= k_min.");
    weights_.assign(total_users + 1, 0.0);
    for (int n = k_min; n <= total_users; ++n)
        weights_[n] = pmf_nonzero_count_truncated(n, nz_);
}

double OrderedCdf::from_unordered(double f) const
{
    if (f <= 0.0)
        return 0.0;
    if (f >= 1.0)
        return 1.0;
    double acc = 0.0;
    for (int n = nz_.k_min; n <= nz_.total_users; ++n)
        if (weights_[n] > 0.0)
            acc += weights_[n] * boost::math::ibeta(static_cast<double>(k_), static_cast<double>(n - k_ + 1), f);
    return std::clamp(acc, 0.0, 1.0);
}

double OrderedCdf::operator()(double x) const
{
    return from_unordered(unordered_(x));
}

// ------------------------------------------------------------------------
// Weak instantaneous

WeakTwoBitInstCdf::WeakTwoBitInstCdf(const MobilityModel &model, const LedGeometry &led,
                                     const FeedbackThresholds &th, const QuadratureSpec &spec)
    : model_(model), led_(led), th_(th), cc_(channel_constant(led)), spec_(spec)
{
    model_.validate();
    led_.validate();
    spec_.validate();
    th_.validate(model_, led_);
    const auto bps = angle_cdf_breaks(model_);
    for (double off : {led_.theta_fov, -led_.theta_fov, th_.theta_th, -th_.theta_th})
        append(fixed_breaks_, angle_crossings(off, bps, led_.ell));
    QuadratureSpec s = spec_;
    append(s.breakpoints, fixed_breaks_);
    const double fov = led_.theta_fov, t = th_.theta_th;
    mass_ = integrate_1d(
        [&](double r) { return std::max(0.0, delta_F_phi(r, fov, model_, led_) - delta_F_phi(r, t, model_, led_)); },
        th_.d_th, model_.d_max, s);
    if (!(mass_ > 0.0))
        throw DegenerateCondition("Weak instantaneous-feedback set is empty almost surely.");
}

double WeakTwoBitInstCdf::upper_support() const
{
    return 1.0 / cc_.upsilon(th_.d_th);
}

double WeakTwoBitInstCdf::operator()(double x) const
{
    if (x <= 0.0)
        return 0.0;
    if (x >= upper_support())
        return 1.0;
    const double lo = d_star_inst(x, th_, model_, led_);
    const double hi = model_.d_max;
    if (!(hi > lo))
        return 0.0;
    const double fov = led_.theta_fov, t = th_.theta_th;
    const double r_th = distance_for_angle(x, t, cc_);

    QuadratureSpec s = spec_;
    s.breakpoints = fixed_breaks_;
    s.breakpoints.push_back(r_th);
    s.breakpoints.push_back(distance_for_angle(x, 0.0, cc_));
    const auto bps = angle_cdf_breaks(model_);
    const double ell = led_.ell;
    const double curve_hi = std::min(hi, r_th);
    add_curve_crossings(s.breakpoints, [&](double r) { return centre_angle(r, ell) + gain_angle(x, r, cc_); }, lo,
                        curve_hi, bps);
    add_curve_crossings(s.breakpoints, [&](double r) { return centre_angle(r, ell) - gain_angle(x, r, cc_); }, lo,
                        curve_hi, bps);

    auto integrand = [&](double r) {
        const double w = std::max(gain_angle(x, r, cc_), t);
        return std::max(0.0, delta_F_phi(r, fov, model_, led_) - delta_F_phi(r, w, model_, led_));
    };
    return std::clamp(integrate_1d(integrand, lo, hi, s) / mass_, 0.0, 1.0);
}

// ------------------------------------------------------------------------
// Mean-angle two-bit feedback

TwoBitMeanCdf::TwoBitMeanCdf(const MobilityModel &model, const LedGeometry &led, const FeedbackThresholds &th,
                             Group group, const QuadratureSpec &spec)
    : model_(model), led_(led), th_(th), group_(group), cc_(channel_constant(led)), spec_(spec)
{
    model_.validate();
    led_.validate();
    spec_.validate();
    th_.validate(model_, led_);
    if (!(model_.delta_mean() > 0.0))
        throw InvalidParameter("Mean-angle feedback needs a nondegenerate mean-angle range.");
    d_lo_ = group_ == Group::Weak ? th_.d_th : model_.d_min;
    d_hi_ = group_ == Group::Weak ? model_.d_max : th_.d_th;
    mass_ = aux(d_lo_);
    if (!(mass_ > 0.0))
        throw DegenerateCondition(group_ == Group::Weak ? "Weak mean-feedback set is empty almost surely."
                                                        : "Strong mean-feedback set is empty almost surely.");
}

double TwoBitMeanCdf::aux(double x) const
{
    return group_ == Group::Weak ? aux_A(x, th_, model_, led_) : aux_B(x, th_, model_, led_);
}

std::vector<Interval> TwoBitMeanCdf::support(double r) const
{
    return group_ == Group::Weak ? mean_support(r, th_, model_, led_) : mean_support_strong(r, th_, model_, led_);
}

double TwoBitMeanCdf::upper_support() const
{
    return 1.0 / cc_.upsilon(d_lo_);
}

double TwoBitMeanCdf::operator()(double x) const
{
    if (x < 0.0)
        return 0.0;
    if (x >= upper_support())
        return 1.0;
    const double d_star = d_star_mean(x, d_lo_, d_hi_, led_);
    double value = aux(d_star) / mass_;
    if (!(d_star > d_lo_))
        return std::clamp(value, 0.0, 1.0);

    const double fov = led_.theta_fov, t = th_.theta_th, dev = model_.max_deviation, ell = led_.ell;
    auto Psi = [&](double r) { return std::min(half_acos_cos_sq(x * cc_.upsilon(r)), fov); };

    // Inner integrand is piecewise linear in the mean angle; split at its kinks so each piece is exact.
    auto inner_support = [&](double r) {
        const double c = centre_angle(r, ell), w = Psi(r);
        const std::array<double, 4> kinks{c - w - dev, c - w + dev, c + w - dev, c + w + dev};
        std::vector<Interval> out;
        for (const Interval &iv : support(r))
        {
            double lo = iv.lo;
            for (double k : kinks)
                if (k > lo && k < iv.hi)
                {
                    out.push_back({lo, k});
                    lo = k;
                }
            out.push_back({lo, iv.hi});
        }
        return out;
    };
    auto f = [&](double r, double mean) {
        const double c = centre_angle(r, ell), w = Psi(r);
        return 1.0 - cdf_conditional_angle(c + w, mean, dev) + cdf_conditional_angle(c - w, mean, dev);
    };

    QuadratureSpec s = spec_;
    s.breakpoints.clear();
    s.breakpoints.push_back(distance_for_angle(x, fov, cc_));
    const std::array<double, 2> ends{model_.mean_angle_min, model_.mean_angle_max};
    for (double off : {fov, -fov, t, -t})
        append(s.breakpoints, angle_crossings(off, ends, ell));
    for (double level : {t - dev, t + dev, fov - dev, fov + dev})
        if (level > 0.0 && level < fov)
            s.breakpoints.push_back(distance_for_angle(x, level, cc_));
    for (double sign_w : {1.0, -1.0})
        for (double sign_d : {1.0, -1.0})
            add_curve_crossings(
                s.breakpoints, [&](double r) { return centre_angle(r, ell) + sign_w * Psi(r) + sign_d * dev; },
                d_lo_, d_star, ends);

    const double dbl = integrate_2d_nested(f, {d_lo_, d_star}, inner_support, s);
    value += dbl / (model_.delta_mean() * mass_);
    return std::clamp(value, 0.0, 1.0);
}

// ------------------------------------------------------------------------
// One-shot wrappers

double cdf_sq_unordered(double x, const MobilityModel &model, const LedGeometry &led)
{
    if (x < 0.0)
        throw InvalidParameter("Squared gain must be nonnegative.");
    return UnorderedCdf(model, led)(x);
}

double cdf_sq_ordered(double x, int k, const NonzeroCount &nz, const MobilityModel &model, const LedGeometry &led)
{
    if (x < 0.0)
        throw InvalidParameter("Squared gain must be nonnegative.");
    return OrderedCdf(model, led, k, nz.total_users, nz.k_min)(x);
}

double cdf_weak_twobit_inst(double x, const FeedbackThresholds &th, const MobilityModel &model, const LedGeometry &led)
{
    if (x < 0.0)
        throw InvalidParameter("Squared gain must be nonnegative.");
    return WeakTwoBitInstCdf(model, led, th)(x);
}

double cdf_strong_twobit_inst(double x, const FeedbackThresholds &th, const MobilityModel &model,
                              const LedGeometry &led)
{
    if (x < 0.0)
        throw InvalidParameter("Squared gain must be nonnegative.");
    return StrongTwoBitInstCdf(model, led, th)(x);
}

double cdf_weak_twobit_mean(double x, const FeedbackThresholds &th, const MobilityModel &model, const LedGeometry &led)
{
    if (x < 0.0)
        throw InvalidParameter("Squared gain must be nonnegative.");
    return TwoBitMeanCdf(model, led, th, TwoBitMeanCdf::Group::Weak)(x);
}

double cdf_strong_twobit_mean(double x, const FeedbackThresholds &th, const MobilityModel &model,
                              const LedGeometry &led)
{
    if (x < 0.0)
        throw InvalidParameter("Squared gain must be nonnegative.");
    return TwoBitMeanCdf(model, led, th, TwoBitMeanCdf::Group::Strong)(x);
}

} // namespace vlcnoma

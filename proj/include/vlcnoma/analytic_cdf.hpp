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

#ifndef VLCNOMA_ANALYTIC_CDF_HPP
#define VLCNOMA_ANALYTIC_CDF_HPP

#include "vlcnoma/geometry.hpp"
#include "vlcnoma/numerics.hpp"
#include "vlcnoma/stochastic.hpp"

#include <memory>
#include <vector>

namespace vlcnoma
{

/// Distance and incidence-angle thresholds of the two-bit feedback.
struct FeedbackThresholds
{
    double d_th = 1.0;
    double theta_th = deg_to_rad(6.0);

    /// d_th = d_min + c_d (d_max - d_min), theta_th = c_theta * FOV.
    static FeedbackThresholds from_coefficients(double c_d, double c_theta, const MobilityModel &model,
                                                const LedGeometry &led);

    void validate(const MobilityModel &model, const LedGeometry &led) const;
};

/// min(acos(2 min(x upsilon(y), 1) - 1) / 2, z)
double psi(double x, double y, double z, const LedGeometry &led);

/// max(acos(2 min(x upsilon(y), 1) - 1) / 2, z)
double omega(double x, double y, double z, const LedGeometry &led);

/// min(acos(2 x upsilon(y) - 1) / 2, z) with the acos argument clamped to [-1, 1].
double psi_mean(double x, double y, double z, const LedGeometry &led);

/// Critical distance beyond which no user inside the FOV exceeds squared gain x, clamped to [d_th, d_max].
double d_star_inst(double x, const FeedbackThresholds &th, const MobilityModel &model, const LedGeometry &led);

/// Critical distance beyond which no user exceeds squared gain x at normal incidence, clamped to [lo, hi].
double d_star_mean(double x, double lo, double hi, const LedGeometry &led);

/// Mean angles that place a user at distance r in the weak mean-feedback set (disjoint, sorted).
std::vector<Interval> mean_support(double r, const FeedbackThresholds &th, const MobilityModel &model,
                                   const LedGeometry &led);

/// Mean angles that place a user at distance r in the strong mean-feedback set.
std::vector<Interval> mean_support_strong(double r, const FeedbackThresholds &th, const MobilityModel &model,
                                          const LedGeometry &led);

/// Closed form of the integral over r in [y, z] of F_mean(pi - atan(ell/r) + x).
double closed_integral_I(double x, double y, double z, const MobilityModel &model, const LedGeometry &led);

/// Integral over [x, d_max] of Pr(mean angle puts the user in the weak set | r).
double aux_A(double x, const FeedbackThresholds &th, const MobilityModel &model, const LedGeometry &led);

/// Integral over [x, d_th] of Pr(mean angle puts the user in the strong set | r).
double aux_B(double x, const FeedbackThresholds &th, const MobilityModel &model, const LedGeometry &led);

/// Conditional CDF of a squared channel gain.
class SquaredGainCdf
{
public:
    virtual ~SquaredGainCdf() = default;

    virtual double operator()(double x) const = 0;

    /// Every x at or above this value has CDF 1.
    virtual double upper_support() const = 0;

    /// Left limit F(x-). Differs from F(x) only at an atom at zero.
    double left_limit(double x) const { return x <= 0.0 ? 0.0 : (*this)(x); }
};

/// Nonzero squared gain of a user restricted to |theta| <= cap and d in [d_lo, d_hi].
/// With (cap, d_lo, d_hi) = (FOV, d_min, d_max) this is the unordered nonzero gain.
class FovRatioCdf : public SquaredGainCdf
{
public:
    FovRatioCdf(const MobilityModel &model, const LedGeometry &led, double cap, double d_lo, double d_hi,
                const QuadratureSpec &spec = {});

    double operator()(double x) const override;
    double upper_support() const override;

    /// Denominator: integral of Pr(|theta| <= cap | r) over [d_lo, d_hi].
    double mass() const { return mass_; }

private:
    MobilityModel model_;
    LedGeometry led_;
    ChannelConstant cc_;
    double cap_, d_lo_, d_hi_;
    QuadratureSpec spec_;
    std::vector<double> fixed_breaks_;
    double mass_;
};

class UnorderedCdf : public FovRatioCdf
{
public:
    UnorderedCdf(const MobilityModel &model, const LedGeometry &led, const QuadratureSpec &spec = {});
};

/// Rank-k (ascending) nonzero squared gain given K_nz >= k_min.
class OrderedCdf : public SquaredGainCdf
{
public:
    OrderedCdf(const MobilityModel &model, const LedGeometry &led, int k, int total_users, int k_min,
               const QuadratureSpec &spec = {});

    double operator()(double x) const override;
    double upper_support() const override { return unordered_.upper_support(); }

    const UnorderedCdf &unordered() const { return unordered_; }
    double success_probability() const { return nz_.success_prob; }

    /// Order-statistic mixture evaluated for a given unordered CDF value.
    double from_unordered(double f) const;

private:
    UnorderedCdf unordered_;
    int k_;
    NonzeroCount nz_;
    std::vector<double> weights_;
};

/// Weak-set user under instantaneous two-bit feedback.
class WeakTwoBitInstCdf : public SquaredGainCdf
{
public:
    WeakTwoBitInstCdf(const MobilityModel &model, const LedGeometry &led, const FeedbackThresholds &th,
                      const QuadratureSpec &spec = {});

    double operator()(double x) const override;
    double upper_support() const override;
    double mass() const { return mass_; }

private:
    MobilityModel model_;
    LedGeometry led_;
    FeedbackThresholds th_;
    ChannelConstant cc_;
    QuadratureSpec spec_;
    std::vector<double> fixed_breaks_;
    double mass_;
};

/// Strong-set user under instantaneous two-bit feedback.
class StrongTwoBitInstCdf : public FovRatioCdf
{
public:
    StrongTwoBitInstCdf(const MobilityModel &model, const LedGeometry &led, const FeedbackThresholds &th,
                        const QuadratureSpec &spec = {});
};

/// Weak or strong set user under mean-angle two-bit feedback. F(0) is the mass of zero gains.
class TwoBitMeanCdf : public SquaredGainCdf
{
public:
    enum class Group
    {
        Weak,
        Strong
    };

    TwoBitMeanCdf(const MobilityModel &model, const LedGeometry &led, const FeedbackThresholds &th, Group group,
                  const QuadratureSpec &spec = {});

    double operator()(double x) const override;
    double upper_support() const override;

    /// A(d_th) for the weak set, B(d_min) for the strong set.
    double mass() const { return mass_; }

private:
    double aux(double x) const;
    std::vector<Interval> support(double r) const;

    MobilityModel model_;
    LedGeometry led_;
    FeedbackThresholds th_;
    Group group_;
    ChannelConstant cc_;
    QuadratureSpec spec_;
    double d_lo_, d_hi_;
    double mass_;
};

double cdf_sq_unordered(double x, const MobilityModel &model, const LedGeometry &led);
double cdf_sq_ordered(double x, int k, const NonzeroCount &nz, const MobilityModel &model, const LedGeometry &led);
double cdf_weak_twobit_inst(double x, const FeedbackThresholds &th, const MobilityModel &model, const LedGeometry &led);
double cdf_strong_twobit_inst(double x, const FeedbackThresholds &th, const MobilityModel &model,
                              const LedGeometry &led);
double cdf_weak_twobit_mean(double x, const FeedbackThresholds &th, const MobilityModel &model, const LedGeometry &led);
double cdf_strong_twobit_mean(double x, const FeedbackThresholds &th, const MobilityModel &model,
                              const LedGeometry &led);

} // namespace vlcnoma

#endif

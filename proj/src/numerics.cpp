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

#include "vlcnoma/numerics.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <limits>
#include <numeric>

namespace vlcnoma
{

void QuadratureSpec::validate() const
{
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
        throw InvalidParameter("Quadrature tolerances must be positive.");
    if (max_subdivisions < 16)
        throw InvalidParameter("Quadrature needs at least 16 subdivisions.");
}

namespace detail
{

const KronrodRule &KronrodRule::instance()
{
    static const KronrodRule rule = [] {
        using kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
        using gauss = boost::math::quadrature::gauss<double, 10>;
        KronrodRule r;
        const auto &x = kronrod::abscissa();
        const auto &w = kronrod::weights();
        const auto &gw = gauss::weights();
        r.abscissa.assign(x.begin(), x.end());
        r.kronrod_weights.assign(w.begin(), w.end());
        r.gauss_weights.assign(gw.begin(), gw.end());
        return r;
    }();
    return rule;
}

std::vector<double> segment_points(double a, double b, std::span<const double> breakpoints)
{
    std::vector<double> pts;
    pts.reserve(breakpoints.size() + 2);
    pts.push_back(a);
    for (double p : breakpoints)
        if (std::isfinite(p) && p > a && p < b)
            pts.push_back(p);
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    // Drop panels too narrow to be bisected.
    std::vector<double> out{pts.front()};
    const double min_width = 64.0 * std::numeric_limits<double>::epsilon() * std::max({1.0, std::abs(a), std::abs(b)});
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (pts[i] - out.back() > min_width)
            out.push_back(pts[i]);
    out.back() = b;
    if (out.size() == 1)
        out.push_back(b);
    return out;
}

} // namespace detail

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> samples) : sorted_(std::move(samples))
{
    std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalDistribution::cdf(double x) const
{
    if (sorted_.empty())
        return 0.0;
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double EmpiricalDistribution::quantile(double q) const
{
    if (sorted_.empty())
        throw InvalidParameter("quantile of an empty sample set");
    const double n = static_cast<double>(sorted_.size());
    const auto k = static_cast<std::size_t>(std::clamp(std::ceil(q * n), 1.0, n));
    return sorted_[k - 1];
}

double EmpiricalDistribution::mean() const
{
    if (sorted_.empty())
        return 0.0;
    return std::accumulate(sorted_.begin(), sorted_.end(), 0.0) / static_cast<double>(sorted_.size());
}

double ks_distance(const EmpiricalDistribution &samples, const std::function<double(double)> &cdf,
                   const std::function<double(double)> &cdf_left)
{
    const auto s = samples.sorted();
    if (s.empty())
        throw InvalidParameter("ks_distance needs at least one sample.");
    const double n = static_cast<double>(s.size());
    double worst = 0.0;
    std::size_t i = 0;
    while (i < s.size())
    {
        std::size_t j = i;
        while (j < s.size() && s[j] == s[i])
            ++j;
        const double v = s[i];
        const double f = cdf(v);
        const double f_left = cdf_left ? cdf_left(v) : f;
        worst = std::max(worst, std::abs(static_cast<double>(j) / n - f));
        worst = std::max(worst, std::abs(static_cast<double>(i) / n - f_left));
        i = j;
    }
    return worst;
}

double ks_distance_upper_bound(const EmpiricalDistribution &samples, const TabulatedCdf &table)
{
    const auto s = samples.sorted();
    if (s.empty())
        throw InvalidParameter("ks_distance needs at least one sample.");
    const auto &t = table.knots;
    if (t.empty() || table.value.size() != t.size() || table.left_value.size() != t.size())
        throw InvalidParameter("Tabulated CDF is malformed.");
    const double n = static_cast<double>(s.size());
    double worst = 0.0;
    std::size_t i = 0;
    while (i < s.size())
    {
        std::size_t j = i;
        while (j < s.size() && s[j] == s[i])
            ++j;
        const double v = s[i];
        const double fn = static_cast<double>(j) / n;
        const double fn_left = static_cast<double>(i) / n;
        const auto it = std::lower_bound(t.begin(), t.end(), v);
        const std::size_t b = static_cast<std::size_t>(it - t.begin());
        if (it != t.end() && *it == v)
        {
            worst = std::max(worst, std::abs(fn - table.value[b]));
            worst = std::max(worst, std::abs(fn_left - table.left_value[b]));
        }
        else
        {
            // F(v-) and F(v) both lie in [F(t_a), F(t_b-)].
            const double lo = b == 0 ? 0.0 : table.value[b - 1];
            const double hi = b == t.size() ? 1.0 : table.left_value[b];
            worst = std::max({worst, fn - lo, hi - fn, fn_left - lo, hi - fn_left});
        }
        i = j;
    }
    return worst;
}

} // namespace vlcnoma

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

#ifndef VLCNOMA_NUMERICS_HPP
#define VLCNOMA_NUMERICS_HPP

#include "vlcnoma/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace vlcnoma
{

/// Tolerances and known non-smooth points for adaptive quadrature.
struct QuadratureSpec
{
    double rel_tol = 1.0e-8;
    double abs_tol = 1.0e-12;
    unsigned max_subdivisions = 4096;
    std::vector<double> breakpoints{};

    void validate() const;
};

struct Interval
{
    double lo = 0.0;
    double hi = 0.0;
    double length() const { return hi - lo; }
};

namespace detail
{

struct Panel
{
    double a, b, estimate, error;
};

// 21-point Kronrod rule with embedded 10-point Gauss rule on [a, b].
struct KronrodRule
{
    static const KronrodRule &instance();
    std::vector<double> abscissa;        // 11 non-negative nodes, abscissa[0] = 0
    std::vector<double> kronrod_weights; // 11 weights
    std::vector<double> gauss_weights;   // weights for abscissa[1], [3], ..., [9]
};

template <class F>
Panel evaluate_panel(F &f, double a, double b)
{
    const KronrodRule &rule = KronrodRule::instance();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double fc = f(mid);
    double kronrod = fc * rule.kronrod_weights[0];
    double gauss = 0.0;
    for (std::size_t i = 1; i < rule.abscissa.size(); ++i)
    {
        const double dx = half * rule.abscissa[i];
        const double pair = f(mid - dx) + f(mid + dx);
        kronrod += pair * rule.kronrod_weights[i];
        if (i % 2 == 1)
            gauss += pair * rule.gauss_weights[i / 2];
    }
    kronrod *= half;
    gauss *= half;
    return {a, b, kronrod, std::abs(kronrod - gauss)};
}

std::vector<double> segment_points(double a, double b, std::span<const double> breakpoints);

} // namespace detail

/// Global adaptive Gauss-Kronrod quadrature of f over [a, b].
///
/// The interval is first split at every breakpoint inside (a, b); afterwards the panel with the
/// largest error estimate is bisected until the summed error meets the tolerance.
/// Throws NumericFailure (with the best estimate) when max_subdivisions is exhausted.
template <class F>
double integrate_1d(F &&f, double a, double b, const QuadratureSpec &spec = {})
{
    if (!(a <= b))
        throw InvalidParameter("integrate_1d: lower limit exceeds upper limit.");
    if (a == b)
        return 0.0;

    std::vector<detail::Panel> heap;
    const auto points = detail::segment_points(a, b, spec.breakpoints);
    heap.reserve(points.size() + 64);
    double total = 0.0, total_error = 0.0;
    for (std::size_t i = 0; i + 1 < points.size(); ++i)
    {
        heap.push_back(detail::evaluate_panel(f, points[i], points[i + 1]));
        total += heap.back().estimate;
        total_error += heap.back().error;
    }
    const auto by_error = [](const detail::Panel &x, const detail::Panel &y) { return x.error < y.error; };
    std::make_heap(heap.begin(), heap.end(), by_error);

    while (total_error > std::max(spec.abs_tol, spec.rel_tol * std::abs(total)))
    {
        if (heap.size() >= spec.max_subdivisions)
            throw NumericFailure("integrate_1d: no convergence within " + std::to_string(spec.max_subdivisions) +
                                     " subdivisions (error bound " + std::to_string(total_error) + ")",
                                 total, total_error);
        std::pop_heap(heap.begin(), heap.end(), by_error);
        const detail::Panel worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b))
            throw NumericFailure("integrate_1d: panel width reached machine precision", total, total_error);
        const detail::Panel left = detail::evaluate_panel(f, worst.a, mid);
        const detail::Panel right = detail::evaluate_panel(f, mid, worst.b);
        total += left.estimate + right.estimate - worst.estimate;
        total_error += left.error + right.error - worst.error;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end(), by_error);
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end(), by_error);
    }

    // Re-sum to remove the drift of the incremental updates.
    double sum = 0.0;
    for (const auto &p : heap)
        sum += p.estimate;
    return sum;
}

/// Integral over r of the inner integral of f(r, y) across the disjoint intervals inner_support(r).
template <class F, class Support>
double integrate_2d_nested(F &&f, Interval r_interval, Support &&inner_support, const QuadratureSpec &spec = {})
{
    QuadratureSpec inner_spec = spec;
    inner_spec.breakpoints.clear();
    auto outer = [&](double r) {
        double acc = 0.0;
        for (const Interval &iv : inner_support(r))
        {
            if (!(iv.hi > iv.lo))
                continue;
            acc += integrate_1d([&](double y) { return f(r, y); }, iv.lo, iv.hi, inner_spec);
        }
        return acc;
    };
    return integrate_1d(outer, r_interval.lo, r_interval.hi, spec);
}

/// Sorted sample set.
class EmpiricalDistribution
{
public:
    EmpiricalDistribution() = default;
    explicit EmpiricalDistribution(std::vector<double> samples);

    std::size_t size() const { return sorted_.size(); }
    bool empty() const { return sorted_.empty(); }
    std::span<const double> sorted() const { return sorted_; }

    /// Right-continuous empirical CDF.
    double cdf(double x) const;
    /// Lower empirical quantile: smallest sample with cdf >= q.
    double quantile(double q) const;
    double mean() const;

private:
    std::vector<double> sorted_;
};

/// Kolmogorov-Smirnov distance sup_x |F_n(x) - F(x)|.
///
/// Ties are grouped. `cdf_left`, when given, supplies the left limit F(x-) and is needed
/// only when F has atoms; otherwise F is taken as continuous.
double ks_distance(const EmpiricalDistribution &samples, const std::function<double(double)> &cdf,
                   const std::function<double(double)> &cdf_left = {});

/// CDF tabulated at increasing knots, with right values F(t) and left limits F(t-).
struct TabulatedCdf
{
    std::vector<double> knots;
    std::vector<double> value;
    std::vector<double> left_value;
};

/// Rigorous upper bound on the KS distance against a non-decreasing CDF known only at knots.
/// Exact wherever a distinct sample value coincides with a knot.
double ks_distance_upper_bound(const EmpiricalDistribution &samples, const TabulatedCdf &table);

} // namespace vlcnoma

#endif

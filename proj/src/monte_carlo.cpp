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

#include "vlcnoma/monte_carlo.hpp"
#include "vlcnoma/errors.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

namespace vlcnoma
{

namespace
{

constexpr std::uint32_t users_lane = 0;
constexpr std::uint32_t noise_lane = 1;

// Runs body(block, first_trial, count, partial) over fixed-size blocks on a worker pool.
// Partials are returned in block order so any reduction over them is worker-count independent.
template <class Partial, class Body>
std::vector<Partial> run_blocks(const McOptions &opt, const Partial &init, Body &&body)
{
    opt.validate();
    const std::uint64_t blocks = (opt.trials + opt.block_size - 1) / opt.block_size;
    std::vector<Partial> partials(blocks, init);
    unsigned workers = opt.workers ? opt.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, std::max<std::uint64_t>(blocks, 1)));

    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        try
        {
            for (std::uint64_t b = next++; b < blocks; b = next++)
            {
                const std::uint64_t first = b * opt.block_size;
                body(b, first, std::min(opt.block_size, opt.trials - first), partials[b]);
            }
        }
        catch (...)
        {
            std::lock_guard lock(failure_mutex);
            if (!failure)
                failure = std::current_exception();
            next = blocks;
        }
    };
    if (workers <= 1)
        work();
    else
    {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(work);
        for (auto &t : pool)
            t.join();
    }
    if (failure)
        std::rethrow_exception(failure);
    return partials;
}

double uniform01(RandomStream &rng)
{
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

std::size_t pick_index(double u, std::size_t n)
{
    return std::min(static_cast<std::size_t>(u * static_cast<double>(n)), n - 1);
}

double abs_incidence(const UserState &u, double ell, bool use_mean)
{
    return std::abs(incidence_angle(u.dist, use_mean ? u.mean_angle : u.inst_angle, ell));
}

bool in_weak_group(const UserState &obs, const NomaConfig &cfg, const LedGeometry &led)
{
    const FeedbackThresholds &th = cfg.thresholds;
    if (!(obs.dist > th.d_th))
        return false;
    if (cfg.feedback_mode == FeedbackMode::OneBitDistance)
        return true;
    const double a = abs_incidence(obs, led.ell, cfg.feedback_mode == FeedbackMode::TwoBitMean);
    return a > th.theta_th && a <= led.theta_fov;
}

bool in_strong_group(const UserState &obs, const NomaConfig &cfg, const LedGeometry &led)
{
    const FeedbackThresholds &th = cfg.thresholds;
    if (!(obs.dist <= th.d_th))
        return false;
    if (cfg.feedback_mode == FeedbackMode::OneBitDistance)
        return true;
    return abs_incidence(obs, led.ell, cfg.feedback_mode == FeedbackMode::TwoBitMean) <= th.theta_th;
}

struct Population
{
    std::vector<UserState> truth;
    std::vector<UserState> observed;
    std::vector<double> gain;
    double select_weak = 0.0;
    double select_strong = 0.0;
};

// Draws K users (three uniforms each) and two selection uniforms, then the observation noise.
void draw_population(Population &pop, int users, const MobilityModel &model, const LedGeometry &led,
                     const NoiseConfig &noise, TrialStreams &streams)
{
    pop.truth.resize(users);
    pop.observed.resize(users);
    pop.gain.resize(users);
    for (int k = 0; k < users; ++k)
        pop.truth[k] = sample_user(model, streams.users);
    pop.select_weak = uniform01(streams.users);
    pop.select_strong = uniform01(streams.users);
    for (int k = 0; k < users; ++k)
    {
        pop.gain[k] = dc_gain(pop.truth[k], led);
        pop.observed[k] = noise.enabled ? apply_noise(pop.truth[k], noise, streams.noise) : pop.truth[k];
    }
}

void select_individual(TrialOutcome &out, const Population &pop, const NomaConfig &cfg, const LedGeometry &led)
{
    const int users = static_cast<int>(pop.truth.size());
    const int nonzero = static_cast<int>(std::count_if(pop.gain.begin(), pop.gain.end(), [](double h) { return h > 0.0; }));
    out.scheduled = nonzero >= cfg.strong_rank;
    if (!out.scheduled)
        return;

    std::vector<double> metric(users);
    for (int k = 0; k < users; ++k)
    {
        const UserState &o = pop.observed[k];
        switch (cfg.feedback_mode)
        {
        case FeedbackMode::FullCsi: {
            const double h = dc_gain(o, led);
            metric[k] = h * h;
            break;
        }
        case FeedbackMode::MeanAngle: {
            const double h = mean_dc_gain(o.dist, o.mean_angle, led);
            metric[k] = h * h;
            break;
        }
        default:
            metric[k] = -o.dist;
            break;
        }
    }
    const bool all_candidates = cfg.feedback_mode == FeedbackMode::DistanceOnly;
    std::vector<int> order(users);
    std::iota(order.begin(), order.end(), 0);
    // Non-candidates (reported zero gain) first, then ascending metric; ties by index.
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        const bool ca = all_candidates || metric[a] != 0.0, cb = all_candidates || metric[b] != 0.0;
        if (ca != cb)
            return !ca;
        return ca && metric[a] < metric[b];
    });
    const int candidates = all_candidates ? users
                                          : static_cast<int>(std::count_if(metric.begin(), metric.end(),
                                                                           [](double m) { return m != 0.0; }));
    const int offset = std::min(users - candidates, users - cfg.strong_rank);
    const int w = order[offset + cfg.weak_rank - 1];
    const int s = order[offset + cfg.strong_rank - 1];
    out.weak_user = pop.truth[w];
    out.strong_user = pop.truth[s];
    out.h_weak = pop.gain[w];
    out.h_strong = pop.gain[s];
}

void select_group(TrialOutcome &out, const Population &pop, const NomaConfig &cfg, const LedGeometry &led)
{
    std::vector<int> weak, strong;
    for (int k = 0; k < static_cast<int>(pop.truth.size()); ++k)
    {
        if (in_weak_group(pop.observed[k], cfg, led))
            weak.push_back(k);
        else if (in_strong_group(pop.observed[k], cfg, led))
            strong.push_back(k);
    }
    out.scheduled = !weak.empty() && !strong.empty();
    if (!out.scheduled)
        return;
    const int w = weak[pick_index(pop.select_weak, weak.size())];
    const int s = strong[pick_index(pop.select_strong, strong.size())];
    out.weak_user = pop.truth[w];
    out.strong_user = pop.truth[s];
    out.h_weak = pop.gain[w];
    out.h_strong = pop.gain[s];
}

struct PairFlags
{
    bool weak_ok;
    bool strong_ok;
};

PairFlags noma_success(double h_weak, double h_strong, double snr, double bw, double bs, double eps_w, double eps_s)
{
    const std::array<double, 2> betas{bw, bs};
    const std::array<int, 1> stronger{1};
    const bool weak_ok = sinr_cross(h_weak, betas, 0, stronger, snr) > eps_w;
    const bool cross_ok = sinr_cross(h_strong, betas, 0, stronger, snr) > eps_w;
    const bool own_ok = sinr_own(h_strong, betas, 1, {}, snr) > eps_s;
    return {weak_ok, cross_ok && own_ok};
}

} // namespace

void NoiseConfig::validate() const
{
    if (!(sigma_d >= 0.0 && sigma_phi >= 0.0))
        throw InvalidParameter("Noise standard deviations must be nonnegative.");
}

void McOptions::validate() const
{
    if (trials < 1)
        throw InvalidParameter("Need at least one trial.");
    if (block_size < 1)
        throw InvalidParameter("Block size must be positive.");
}

TrialStreams make_trial_streams(std::uint64_t seed, std::uint64_t block)
{
    return {make_stream(seed, block, users_lane), make_stream(seed, block, noise_lane)};
}

UserState apply_noise(const UserState &user, const NoiseConfig &noise, RandomStream &rng)
{
    std::normal_distribution<double> unit(0.0, 1.0);
    const double e_d = unit(rng) * noise.sigma_d;
    const double e_phi = unit(rng) * noise.sigma_phi;
    UserState o = user;
    o.dist = std::max(0.0, user.dist + e_d);
    o.inst_angle = user.inst_angle + e_phi;
    o.mean_angle = user.mean_angle + e_phi;
    return o;
}

void evaluate_noma_outage(TrialOutcome &out, const NomaConfig &cfg)
{
    if (!out.scheduled)
        return;
    const PairFlags f = noma_success(out.h_weak, out.h_strong, cfg.snr, cfg.beta_weak, cfg.beta_strong,
                                     epsilon_threshold(cfg.rate_weak), epsilon_threshold(cfg.rate_strong));
    out.outage_weak = !f.weak_ok;
    out.outage_strong = !f.strong_ok;
}

TrialOutcome run_individual_trial(const NomaConfig &cfg, const MobilityModel &model, const LedGeometry &led,
                                  const NoiseConfig &noise, TrialStreams &streams)
{
    if (!is_individual(cfg.feedback_mode))
        throw InvalidParameter("run_individual_trial needs an individual feedback mode.");
    Population pop;
    draw_population(pop, cfg.users, model, led, noise, streams);
    TrialOutcome out;
    select_individual(out, pop, cfg, led);
    evaluate_noma_outage(out, cfg);
    return out;
}

TrialOutcome run_group_trial(const NomaConfig &cfg, const MobilityModel &model, const LedGeometry &led,
                             const NoiseConfig &noise, TrialStreams &streams)
{
    if (is_individual(cfg.feedback_mode))
        throw InvalidParameter("run_group_trial needs a group feedback mode.");
    Population pop;
    draw_population(pop, cfg.users, model, led, noise, streams);
    TrialOutcome out;
    select_group(out, pop, cfg, led);
    evaluate_noma_outage(out, cfg);
    return out;
}

TrialOutcome run_trial(const NomaConfig &cfg, const MobilityModel &model, const LedGeometry &led,
                       const NoiseConfig &noise, TrialStreams &streams)
{
    return is_individual(cfg.feedback_mode) ? run_individual_trial(cfg, model, led, noise, streams)
                                            : run_group_trial(cfg, model, led, noise, streams);
}

// ------------------------------------------------------------------------

namespace
{

struct Moments
{
    double sum = 0.0;
    double sum_sq = 0.0;

    void add(double v)
    {
        sum += v;
        sum_sq += v * v;
    }
};

Estimate finish(const Moments &m, std::uint64_t n)
{
    Estimate e;
    e.count = n;
    if (n == 0)
        return e;
    const double nn = static_cast<double>(n);
    e.mean = m.sum / nn;
    if (n > 1)
    {
        const double var = std::max(0.0, (m.sum_sq - nn * e.mean * e.mean) / (nn - 1.0));
        e.std_error = std::sqrt(var / nn);
    }
    return e;
}

} // namespace

SnrSweepResult simulate_snr_sweep(const NomaConfig &cfg, const MobilityModel &model, const LedGeometry &led,
                                  const NoiseConfig &noise, std::span<const double> snr_grid, const McOptions &opt)
{
    cfg.validate();
    model.validate();
    led.validate();
    noise.validate();
    if (snr_grid.empty())
        throw InvalidParameter("SNR grid is empty.");
    for (double g : snr_grid)
        if (!(g > 0.0))
            throw InvalidParameter("SNR grid values must be positive.");

    const std::size_t n = snr_grid.size();
    struct Partial
    {
        std::uint64_t scheduled = 0;
        std::vector<Moments> noma, out_w, out_s, oma_lit, oma_ts;
    };
    Partial init;
    init.noma.resize(n);
    init.out_w.resize(n);
    init.out_s.resize(n);
    init.oma_lit.resize(n);
    init.oma_ts.resize(n);

    const double eps_w = epsilon_threshold(cfg.rate_weak), eps_s = epsilon_threshold(cfg.rate_strong);
    const auto partials = run_blocks(opt, init, [&](std::uint64_t block, std::uint64_t, std::uint64_t count, Partial &p) {
        TrialStreams streams = make_trial_streams(opt.seed, block);
        Population pop;
        for (std::uint64_t t = 0; t < count; ++t)
        {
            draw_population(pop, cfg.users, model, led, noise, streams);
            TrialOutcome out;
            if (is_individual(cfg.feedback_mode))
                select_individual(out, pop, cfg, led);
            else
                select_group(out, pop, cfg, led);
            if (!out.scheduled)
                continue;
            ++p.scheduled;
            const double hw2 = out.h_weak * out.h_weak, hs2 = out.h_strong * out.h_strong;
            for (std::size_t g = 0; g < n; ++g)
            {
                const double snr = snr_grid[g];
                const PairFlags f = noma_success(out.h_weak, out.h_strong, snr, cfg.beta_weak, cfg.beta_strong, eps_w, eps_s);
                p.noma[g].add((f.weak_ok ? cfg.rate_weak : 0.0) + (f.strong_ok ? cfg.rate_strong : 0.0));
                p.out_w[g].add(f.weak_ok ? 0.0 : 1.0);
                p.out_s[g].add(f.strong_ok ? 0.0 : 1.0);
                double lit = 0.0, ts = 0.0;
                if (hw2 > oma_threshold(cfg.rate_weak, snr, OmaMode::PaperLiteral))
                    lit += cfg.rate_weak;
                if (hs2 > oma_threshold(cfg.rate_strong, snr, OmaMode::PaperLiteral))
                    lit += cfg.rate_strong;
                if (hw2 > oma_threshold(cfg.rate_weak, snr, OmaMode::TimeShared))
                    ts += cfg.rate_weak;
                if (hs2 > oma_threshold(cfg.rate_strong, snr, OmaMode::TimeShared))
                    ts += cfg.rate_strong;
                p.oma_lit[g].add(lit);
                p.oma_ts[g].add(ts);
            }
        }
    });

    Partial total = init;
    for (const Partial &p : partials)
    {
        total.scheduled += p.scheduled;
        for (std::size_t g = 0; g < n; ++g)
        {
            auto merge = [](Moments &a, const Moments &b) {
                a.sum += b.sum;
                a.sum_sq += b.sum_sq;
            };
            merge(total.noma[g], p.noma[g]);
            merge(total.out_w[g], p.out_w[g]);
            merge(total.out_s[g], p.out_s[g]);
            merge(total.oma_lit[g], p.oma_lit[g]);
            merge(total.oma_ts[g], p.oma_ts[g]);
        }
    }
    if (total.scheduled == 0)
        throw DegenerateCondition("No trial could be scheduled.");

    SnrSweepResult r;
    r.snr.assign(snr_grid.begin(), snr_grid.end());
    r.trials = opt.trials;
    r.scheduled = total.scheduled;
    for (std::size_t g = 0; g < n; ++g)
    {
        r.sum_rate_noma.push_back(finish(total.noma[g], total.scheduled));
        r.outage_weak.push_back(finish(total.out_w[g], total.scheduled));
        r.outage_strong.push_back(finish(total.out_s[g], total.scheduled));
        r.sum_rate_oma_literal.push_back(finish(total.oma_lit[g], total.scheduled));
        r.sum_rate_oma_time_shared.push_back(finish(total.oma_ts[g], total.scheduled));
    }
    return r;
}

// ------------------------------------------------------------------------

std::vector<double> sample_vertical_angles(const MobilityModel &model, const McOptions &opt)
{
    model.validate();
    const auto partials = run_blocks(opt, std::vector<double>{},
                                     [&](std::uint64_t block, std::uint64_t, std::uint64_t count, std::vector<double> &p) {
                                         RandomStream rng = make_stream(opt.seed, block, users_lane);
                                         p.reserve(count);
                                         for (std::uint64_t t = 0; t < count; ++t)
                                             p.push_back(sample_user(model, rng).inst_angle);
                                     });
    std::vector<double> out;
    out.reserve(opt.trials);
    for (const auto &p : partials)
        out.insert(out.end(), p.begin(), p.end());
    return out;
}

std::vector<std::uint64_t> nonzero_count_histogram(const MobilityModel &model, const LedGeometry &led, int users,
                                                   const McOptions &opt)
{
    model.validate();
    led.validate();
    if (users < 1)
        throw InvalidParameter("Need at least one user.");
    const auto partials =
        run_blocks(opt, std::vector<std::uint64_t>(users + 1, 0),
                   [&](std::uint64_t block, std::uint64_t, std::uint64_t count, std::vector<std::uint64_t> &p) {
                       RandomStream rng = make_stream(opt.seed, block, users_lane);
                       for (std::uint64_t t = 0; t < count; ++t)
                       {
                           int nz = 0;
                           for (int k = 0; k < users; ++k)
                               nz += dc_gain(sample_user(model, rng), led) > 0.0;
                           ++p[nz];
                       }
                   });
    std::vector<std::uint64_t> hist(users + 1, 0);
    for (const auto &p : partials)
        for (int k = 0; k <= users; ++k)
            hist[k] += p[k];
    return hist;
}

std::string_view to_string(GainFamily family)
{
    switch (family)
    {
    case GainFamily::Unordered:
        return "unordered";
    case GainFamily::Ordered:
        return "ordered";
    case GainFamily::TwoBitInstWeak:
        return "twobit_inst_weak";
    case GainFamily::TwoBitInstStrong:
        return "twobit_inst_strong";
    case GainFamily::TwoBitMeanWeak:
        return "twobit_mean_weak";
    case GainFamily::TwoBitMeanStrong:
        return "twobit_mean_strong";
    }
    return "unknown";
}

std::optional<GainFamily> parse_gain_family(std::string_view text)
{
    for (GainFamily f : {GainFamily::Unordered, GainFamily::Ordered, GainFamily::TwoBitInstWeak,
                         GainFamily::TwoBitInstStrong, GainFamily::TwoBitMeanWeak, GainFamily::TwoBitMeanStrong})
        if (to_string(f) == text)
            return f;
    return std::nullopt;
}

std::vector<double> sample_squared_gains(const GainSampleRequest &req, const MobilityModel &model,
                                         const LedGeometry &led, const McOptions &opt)
{
    model.validate();
    led.validate();
    const FeedbackThresholds &th = req.thresholds;
    if (req.family != GainFamily::Unordered && req.family != GainFamily::Ordered)
        th.validate(model, led);
    if (req.family == GainFamily::Ordered && !(req.rank >= 1 && req.rank <= req.k_min && req.k_min <= req.users))
        throw InvalidParameter("Ordered sampling needs 1 <= rank <= k_min <= users.");

    // Distance is independent of the angles, so the group families draw it directly from the
    // distance side of the threshold and reject on the angle condition only.
    MobilityModel draw = model;
    const bool weak = req.family == GainFamily::TwoBitInstWeak || req.family == GainFamily::TwoBitMeanWeak;
    const bool strong = req.family == GainFamily::TwoBitInstStrong || req.family == GainFamily::TwoBitMeanStrong;
    if (weak)
        draw.d_min = th.d_th;
    if (strong)
        draw.d_max = th.d_th;
    if ((weak || strong) && !(draw.d_max > draw.d_min))
        throw DegenerateCondition("Distance side of the threshold has zero width.");

    const auto partials = run_blocks(
        opt, std::vector<double>{}, [&](std::uint64_t block, std::uint64_t, std::uint64_t count, std::vector<double> &p) {
            RandomStream rng = make_stream(opt.seed, block, users_lane);
            std::vector<double> gains;
            for (std::uint64_t t = 0; t < count; ++t)
            {
                if (req.family == GainFamily::Ordered)
                {
                    gains.clear();
                    for (int k = 0; k < req.users; ++k)
                    {
                        const double h = dc_gain(sample_user(model, rng), led);
                        if (h > 0.0)
                            gains.push_back(h * h);
                    }
                    if (static_cast<int>(gains.size()) < req.k_min)
                        continue;
                    std::nth_element(gains.begin(), gains.begin() + (req.rank - 1), gains.end());
                    p.push_back(gains[req.rank - 1]);
                    continue;
                }
                const UserState u = sample_user(draw, rng);
                const double h = dc_gain(u, led);
                bool keep = false;
                switch (req.family)
                {
                case GainFamily::Unordered:
                    keep = h > 0.0;
                    break;
                case GainFamily::TwoBitInstWeak:
                case GainFamily::TwoBitMeanWeak: {
                    const double a = abs_incidence(u, led.ell, req.family == GainFamily::TwoBitMeanWeak);
                    keep = u.dist > th.d_th && a > th.theta_th && a <= led.theta_fov;
                    break;
                }
                default: {
                    const double a = abs_incidence(u, led.ell, req.family == GainFamily::TwoBitMeanStrong);
                    keep = u.dist <= th.d_th && a <= th.theta_th;
                    break;
                }
                }
                if (keep)
                    p.push_back(h * h);
            }
        });
    std::vector<double> out;
    for (const auto &p : partials)
        out.insert(out.end(), p.begin(), p.end());
    return out;
}

} // namespace vlcnoma

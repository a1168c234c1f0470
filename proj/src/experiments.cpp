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

#include "vlcnoma/experiments.hpp"
#include "vlcnoma/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace vlcnoma
{

namespace
{

constexpr double nan_value = std::numeric_limits<double>::quiet_NaN();

std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true)
    {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos)
            return out;
        start = pos + 1;
    }
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view expected)
{
    throw ConfigError("Invalid value '" + std::string(value) + "' for key '" + std::string(key) + "': expected " +
                      std::string(expected) + ".");
}

double parse_double(std::string_view key, std::string_view text)
{
    text = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty() || !std::isfinite(v))
        bad_value(key, text, "a finite number");
    return v;
}

template <class Int>
Int parse_integer(std::string_view key, std::string_view text)
{
    text = trim(text);
    Int v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
        bad_value(key, text, "an integer");
    return v;
}

bool parse_bool(std::string_view key, std::string_view text)
{
    text = trim(text);
    if (text == "true" || text == "1" || text == "yes" || text == "on")
        return true;
    if (text == "false" || text == "0" || text == "no" || text == "off")
        return false;
    bad_value(key, text, "true or false");
}

std::vector<double> parse_grid(std::string_view key, std::string_view text)
{
    text = trim(text);
    std::vector<double> out;
    const auto colon = split(text, ':');
    if (colon.size() == 3)
    {
        const double start = parse_double(key, colon[0]);
        const double step = parse_double(key, colon[1]);
        const double stop = parse_double(key, colon[2]);
        if (!(step > 0.0) || stop < start)
            bad_value(key, text, "start:step:stop with step > 0 and stop >= start");
        const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
        if (n > 100000)
            bad_value(key, text, "at most 100000 grid points");
        for (long k = 0; k <= n; ++k)
            out.push_back(start + static_cast<double>(k) * step);
        return out;
    }
    if (colon.size() != 1)
        bad_value(key, text, "a comma list or start:step:stop");
    if (text.empty())
        return out;
    for (auto item : split(text, ','))
        out.push_back(parse_double(key, item));
    return out;
}

FeedbackMode parse_mode(std::string_view key, std::string_view text)
{
    const auto m = parse_feedback_mode(trim(text));
    if (!m)
        bad_value(key, text, "one of full_csi, mean_angle, distance_only, twobit_inst, twobit_mean, onebit_distance");
    return *m;
}

std::string exact(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string exact_list(const std::vector<double> &v)
{
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k)
        s += (k ? "," : "") + exact(v[k]);
    return s;
}

struct Field
{
    const char *key;
    std::function<void(ExperimentConfig &, std::string_view)> set;
    std::function<std::string(const ExperimentConfig &)> get;
};

#define VLCNOMA_DOUBLE(name)                                                                                           \
    Field { #name, [](ExperimentConfig &c, std::string_view v) { c.name = parse_double(#name, v); },                \
            [](const ExperimentConfig &c) { return exact(c.name); } }
#define VLCNOMA_INT(name)                                                                                              \
    Field { #name, [](ExperimentConfig &c, std::string_view v) { c.name = parse_integer<int>(#name, v); },          \
            [](const ExperimentConfig &c) { return std::to_string(c.name); } }
#define VLCNOMA_BOOL(name)                                                                                             \
    Field { #name, [](ExperimentConfig &c, std::string_view v) { c.name = parse_bool(#name, v); },                  \
            [](const ExperimentConfig &c) { return std::string(c.name ? "true" : "false"); } }
#define VLCNOMA_GRID(name)                                                                                             \
    Field { #name, [](ExperimentConfig &c, std::string_view v) { c.name = parse_grid(#name, v); },                  \
            [](const ExperimentConfig &c) { return exact_list(c.name); } }

const std::vector<Field> &fields()
{
    static const std::vector<Field> table = {
        VLCNOMA_DOUBLE(ell),
        VLCNOMA_DOUBLE(hpbw_deg),
        VLCNOMA_DOUBLE(area_r),
        VLCNOMA_DOUBLE(fov_deg),
        VLCNOMA_DOUBLE(d_min),
        VLCNOMA_DOUBLE(d_max),
        VLCNOMA_DOUBLE(mean_angle_min_deg),
        VLCNOMA_DOUBLE(mean_angle_max_deg),
        VLCNOMA_DOUBLE(deviation_deg),
        VLCNOMA_BOOL(tie_mean_range),
        VLCNOMA_DOUBLE(beta_weak),
        VLCNOMA_DOUBLE(beta_strong),
        VLCNOMA_BOOL(normalize_power),
        VLCNOMA_DOUBLE(rate_weak),
        VLCNOMA_DOUBLE(rate_strong),
        VLCNOMA_INT(users),
        VLCNOMA_INT(weak_rank),
        VLCNOMA_INT(strong_rank),
        Field{"mode", [](ExperimentConfig &c, std::string_view v) { c.mode = parse_mode("mode", v); },
              [](const ExperimentConfig &c) { return std::string(to_string(c.mode)); }},
        Field{"oma_mode",
              [](ExperimentConfig &c, std::string_view v) {
                  const auto m = parse_oma_mode(trim(v));
                  if (!m)
                      bad_value("oma_mode", v, "paper_literal or time_shared");
                  c.oma_mode = *m;
              },
              [](const ExperimentConfig &c) { return std::string(to_string(c.oma_mode)); }},
        VLCNOMA_DOUBLE(c_dth),
        VLCNOMA_DOUBLE(c_theta_th),
        VLCNOMA_BOOL(noise_enabled),
        VLCNOMA_DOUBLE(sigma_d),
        VLCNOMA_DOUBLE(sigma_phi_deg),
        Field{"trials",
              [](ExperimentConfig &c, std::string_view v) {
                  if (trim(v) == "default")
                      c.trials.reset();
                  else
                      c.trials = parse_integer<std::uint64_t>("trials", v);
              },
              [](const ExperimentConfig &c) { return c.trials ? std::to_string(*c.trials) : std::string("default"); }},
        Field{"seed", [](ExperimentConfig &c, std::string_view v) { c.seed = parse_integer<std::uint64_t>("seed", v); },
              [](const ExperimentConfig &c) { return std::to_string(c.seed); }},
        Field{"workers", [](ExperimentConfig &c, std::string_view v) { c.workers = parse_integer<unsigned>("workers", v); },
              [](const ExperimentConfig &c) { return std::to_string(c.workers); }},
        VLCNOMA_GRID(snr_db),
        VLCNOMA_GRID(deviation_grid_deg),
        VLCNOMA_DOUBLE(deviation_snr_db),
        VLCNOMA_GRID(threshold_coeffs),
        Field{"compare_modes",
              [](ExperimentConfig &c, std::string_view v) {
                  c.compare_modes.clear();
                  for (auto item : split(v, ','))
                      c.compare_modes.push_back(parse_mode("compare_modes", item));
              },
              [](const ExperimentConfig &c) {
                  std::string s;
                  for (std::size_t k = 0; k < c.compare_modes.size(); ++k)
                      s += (k ? "," : "") + std::string(to_string(c.compare_modes[k]));
                  return s;
              }},
        Field{"family",
              [](ExperimentConfig &c, std::string_view v) {
                  const auto f = parse_gain_family(trim(v));
                  if (!f)
                      bad_value("family", v,
                                "one of unordered, ordered, twobit_inst_weak, twobit_inst_strong, twobit_mean_weak, "
                                "twobit_mean_strong");
                  c.family = *f;
              },
              [](const ExperimentConfig &c) { return std::string(to_string(c.family)); }},
        VLCNOMA_INT(cdf_points),
    };
    return table;
}

#undef VLCNOMA_DOUBLE
#undef VLCNOMA_INT
#undef VLCNOMA_BOOL
#undef VLCNOMA_GRID

void require_grid(const std::vector<double> &g, const char *name)
{
    if (g.empty())
        throw ConfigError(std::string("Grid '") + name + "' is empty.");
    for (std::size_t k = 1; k < g.size(); ++k)
        if (!(g[k] > g[k - 1]))
            throw ConfigError(std::string("Grid '") + name + "' must be strictly increasing.");
}

std::vector<double> linear_snr(const std::vector<double> &db)
{
    std::vector<double> out(db.size());
    std::transform(db.begin(), db.end(), out.begin(), db_to_linear);
    return out;
}

std::vector<double> linspace(double lo, double hi, int n)
{
    std::vector<double> out(n);
    for (int k = 0; k < n; ++k)
        out[k] = n == 1 ? lo : lo + (hi - lo) * k / (n - 1);
    return out;
}

} // namespace

ExperimentConfig::ExperimentConfig()
{
    snr_db = parse_grid("snr_db", "100:10:260");
    deviation_grid_deg = parse_grid("deviation_grid_deg", "0:5:45");
}

std::vector<std::string> config_keys()
{
    std::vector<std::string> keys;
    for (const auto &f : fields())
        keys.emplace_back(f.key);
    return keys;
}

void ExperimentConfig::set(std::string_view key, std::string_view value)
{
    key = trim(key);
    for (const auto &f : fields())
        if (key == f.key)
        {
            f.set(*this, value);
            return;
        }
    throw ConfigError("Unknown configuration key '" + std::string(key) + "'.");
}

void ExperimentConfig::load(std::istream &in, std::string_view origin)
{
    std::string line;
    int number = 0;
    while (std::getline(in, line))
    {
        ++number;
        std::string_view text = line;
        if (const auto hash_pos = text.find('#'); hash_pos != std::string_view::npos)
            text = text.substr(0, hash_pos);
        text = trim(text);
        if (text.empty())
            continue;
        const auto eq = text.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(std::string(origin) + ":" + std::to_string(number) + ": expected key = value.");
        try
        {
            set(text.substr(0, eq), text.substr(eq + 1));
        }
        catch (const ConfigError &e)
        {
            throw ConfigError(std::string(origin) + ":" + std::to_string(number) + ": " + e.what());
        }
    }
}

void ExperimentConfig::load_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("Cannot open config file '" + path + "'.");
    load(in, path);
}

void ExperimentConfig::validate() const
{
    led().validate();
    model().validate();
    if (!(c_dth >= 0.0 && c_dth <= 1.0 && c_theta_th >= 0.0 && c_theta_th <= 1.0))
        throw ConfigError("Threshold coefficients must lie in [0, 1].");
    thresholds().validate(model(), led());
    noma(snr_db.empty() ? 0.0 : snr_db.front()).validate();
    noise().validate();
    if (trials && *trials < min_estimate_trials)
        throw ConfigError("Need at least " + std::to_string(min_estimate_trials) + " trials.");
    require_grid(snr_db, "snr_db");
    require_grid(deviation_grid_deg, "deviation_grid_deg");
    require_grid(threshold_coeffs, "threshold_coeffs");
    for (double c : threshold_coeffs)
        if (!(c >= 0.0 && c <= 1.0))
            throw ConfigError("Threshold coefficients must lie in [0, 1].");
    for (double dev : deviation_grid_deg)
        if (!(dev >= 0.0 && dev <= 90.0))
            throw ConfigError("Deviation grid values must lie in [0, 90] degrees.");
    if (compare_modes.empty())
        throw ConfigError("compare_modes is empty.");
    if (cdf_points < 2)
        throw ConfigError("cdf_points must be at least 2.");
}

std::string ExperimentConfig::canonical() const
{
    std::vector<std::string> lines;
    for (const auto &f : fields())
        lines.push_back(std::string(f.key) + "=" + f.get(*this));
    std::sort(lines.begin(), lines.end());
    std::string out;
    for (const auto &l : lines)
        out += l + "\n";
    return out;
}

std::uint64_t ExperimentConfig::hash() const
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : canonical())
    {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

LedGeometry ExperimentConfig::led() const
{
    return LedGeometry::make(ell, deg_to_rad(hpbw_deg), area_r, deg_to_rad(fov_deg));
}

MobilityModel ExperimentConfig::model() const
{
    MobilityModel m;
    m.d_min = d_min;
    m.d_max = d_max;
    m.max_deviation = deg_to_rad(deviation_deg);
    m.mean_angle_min = deg_to_rad(tie_mean_range ? deviation_deg : mean_angle_min_deg);
    m.mean_angle_max = deg_to_rad(tie_mean_range ? 180.0 - deviation_deg : mean_angle_max_deg);
    return m;
}

FeedbackThresholds ExperimentConfig::thresholds() const
{
    return FeedbackThresholds::from_coefficients(c_dth, c_theta_th, model(), led());
}

NomaConfig ExperimentConfig::noma(double snr_db_value) const
{
    NomaConfig c;
    c.beta_weak = beta_weak;
    c.beta_strong = beta_strong;
    c.rate_weak = rate_weak;
    c.rate_strong = rate_strong;
    c.snr = db_to_linear(snr_db_value);
    c.users = users;
    c.weak_rank = weak_rank;
    c.strong_rank = strong_rank;
    c.thresholds = thresholds();
    c.feedback_mode = mode;
    if (normalize_power)
        c.normalize_power();
    return c;
}

NoiseConfig ExperimentConfig::noise() const
{
    NoiseConfig n;
    n.enabled = noise_enabled;
    n.sigma_d = sigma_d;
    n.sigma_phi = deg_to_rad(sigma_phi_deg);
    return n;
}

McOptions ExperimentConfig::mc(std::uint64_t default_trials) const
{
    McOptions o;
    o.trials = trials.value_or(default_trials);
    o.seed = seed;
    o.workers = workers;
    return o;
}

double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

// ------------------------------------------------------------------------

std::string format_number(double v)
{
    if (std::isnan(v))
        return {};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string manifest_line(const ExperimentConfig &cfg)
{
    char buf[128];
    std::snprintf(buf, sizeof buf, "# vlcnoma %s config_hash=%016llx seed=%llu", VLCNOMA_VERSION,
                  static_cast<unsigned long long>(cfg.hash()), static_cast<unsigned long long>(cfg.seed));
    return buf;
}

void write_csv(std::ostream &out, const Table &table, const ExperimentConfig &cfg)
{
    out << manifest_line(cfg) << '\n';
    for (std::size_t k = 0; k < table.columns.size(); ++k)
        out << (k ? "," : "") << table.columns[k];
    out << '\n';
    for (const auto &row : table.rows)
    {
        for (std::size_t k = 0; k < row.size(); ++k)
            out << (k ? "," : "") << row[k];
        out << '\n';
    }
    for (const auto &s : table.summary)
        out << "# " << s << '\n';
}

// ------------------------------------------------------------------------

AngleCdfReport run_validate_angle_cdf(const ExperimentConfig &cfg)
{
    cfg.validate();
    const MobilityModel m = cfg.model();
    EmpiricalDistribution e(sample_vertical_angles(m, cfg.mc(default_cdf_trials)));
    AngleCdfReport r;
    r.samples = e.size();
    r.ks = ks_distance(e, [&](double x) { return cdf_vertical_angle(x, m); });
    for (double x : linspace(m.mean_angle_min - m.max_deviation, m.mean_angle_max + m.max_deviation, cfg.cdf_points))
    {
        r.angle_deg.push_back(rad_to_deg(x));
        r.analytic.push_back(cdf_vertical_angle(x, m));
        r.empirical.push_back(e.cdf(x));
        r.mean_angle.push_back(cdf_mean_angle(x, m));
    }
    return r;
}

Table to_table(const AngleCdfReport &r)
{
    Table t;
    t.columns = {"angle_deg", "cdf_analytic", "cdf_empirical", "cdf_mean_angle"};
    for (std::size_t k = 0; k < r.angle_deg.size(); ++k)
        t.rows.push_back({format_number(r.angle_deg[k]), format_number(r.analytic[k]), format_number(r.empirical[k]),
                          format_number(r.mean_angle[k])});
    t.summary = {"ks=" + format_number(r.ks), "samples=" + std::to_string(r.samples)};
    return t;
}

KnzReport run_validate_knz(const ExperimentConfig &cfg)
{
    cfg.validate();
    const MobilityModel m = cfg.model();
    const LedGeometry led = cfg.led();
    const auto hist = nonzero_count_histogram(m, led, cfg.users, cfg.mc(default_cdf_trials));
    KnzReport r;
    r.success_probability = success_probability(m, led);
    const NonzeroCount nz{cfg.users, r.success_probability, cfg.strong_rank};
    nz.validate();
    for (int k = cfg.strong_rank; k <= cfg.users; ++k)
        r.conditioned_trials += hist[k];
    if (r.conditioned_trials == 0)
        throw DegenerateCondition("No trial reached the required number of nonzero-gain users.");
    for (int k = cfg.strong_rank; k <= cfg.users; ++k)
    {
        r.k.push_back(k);
        r.analytic.push_back(pmf_nonzero_count_truncated(k, nz));
        r.empirical.push_back(static_cast<double>(hist[k]) / static_cast<double>(r.conditioned_trials));
        r.total_variation += 0.5 * std::abs(r.analytic.back() - r.empirical.back());
    }
    return r;
}

Table to_table(const KnzReport &r)
{
    Table t;
    t.columns = {"k", "pmf_analytic", "pmf_empirical"};
    for (std::size_t n = 0; n < r.k.size(); ++n)
        t.rows.push_back({std::to_string(r.k[n]), format_number(r.analytic[n]), format_number(r.empirical[n])});
    t.summary = {"total_variation=" + format_number(r.total_variation),
                 "success_probability=" + format_number(r.success_probability),
                 "conditioned_trials=" + std::to_string(r.conditioned_trials)};
    return t;
}

std::unique_ptr<SquaredGainCdf> make_family_cdf(const ExperimentConfig &cfg)
{
    const MobilityModel m = cfg.model();
    const LedGeometry led = cfg.led();
    const FeedbackThresholds th = cfg.thresholds();
    switch (cfg.family)
    {
    case GainFamily::Unordered:
        return std::make_unique<UnorderedCdf>(m, led);
    case GainFamily::Ordered:
        return std::make_unique<OrderedCdf>(m, led, cfg.strong_rank, cfg.users, cfg.strong_rank);
    case GainFamily::TwoBitInstWeak:
        return std::make_unique<WeakTwoBitInstCdf>(m, led, th);
    case GainFamily::TwoBitInstStrong:
        return std::make_unique<StrongTwoBitInstCdf>(m, led, th);
    case GainFamily::TwoBitMeanWeak:
        return std::make_unique<TwoBitMeanCdf>(m, led, th, TwoBitMeanCdf::Group::Weak);
    case GainFamily::TwoBitMeanStrong:
        return std::make_unique<TwoBitMeanCdf>(m, led, th, TwoBitMeanCdf::Group::Strong);
    }
    throw InvalidParameter("Unknown gain family.");
}

ChannelCdfReport run_validate_channel_cdf(const ExperimentConfig &cfg)
{
    cfg.validate();
    const auto F = make_family_cdf(cfg);
    GainSampleRequest req;
    req.family = cfg.family;
    req.thresholds = cfg.thresholds();
    req.users = cfg.users;
    req.rank = cfg.strong_rank;
    req.k_min = cfg.strong_rank;
    EmpiricalDistribution e(sample_squared_gains(req, cfg.model(), cfg.led(), cfg.mc(default_cdf_trials)));
    if (e.empty())
        throw DegenerateCondition("No Monte Carlo sample fell into the requested gain family.");

    ChannelCdfReport r;
    r.family = cfg.family;
    r.samples = e.size();

    // Knots at empirical quantiles keep the bound within about one knot spacing of the true distance
    constexpr int knots = 2000;
    std::vector<double> t{0.0};
    for (int k = 1; k <= knots; ++k)
        t.push_back(e.quantile(static_cast<double>(k) / knots));
    t.push_back(F->upper_support());
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    TabulatedCdf table;
    for (double x : t)
    {
        table.knots.push_back(x);
        table.value.push_back((*F)(x));
        table.left_value.push_back(F->left_limit(x));
    }
    r.ks_bound = ks_distance_upper_bound(e, table);

    for (int k = 0; k < cfg.cdf_points; ++k)
    {
        const double x = e.quantile(static_cast<double>(k) / (cfg.cdf_points - 1));
        r.sq_gain.push_back(x);
        r.analytic.push_back((*F)(x));
        r.empirical.push_back(e.cdf(x));
    }
    return r;
}

Table to_table(const ChannelCdfReport &r)
{
    Table t;
    t.columns = {"sq_gain", "cdf_analytic", "cdf_empirical"};
    for (std::size_t k = 0; k < r.sq_gain.size(); ++k)
        t.rows.push_back({format_number(r.sq_gain[k]), format_number(r.analytic[k]), format_number(r.empirical[k])});
    t.summary = {"family=" + std::string(to_string(r.family)), "ks_upper_bound=" + format_number(r.ks_bound),
                 "samples=" + std::to_string(r.samples)};
    return t;
}

const std::vector<Estimate> &SnrSweepReport::oma_mc() const
{
    return oma_mode == OmaMode::PaperLiteral ? mc.sum_rate_oma_literal : mc.sum_rate_oma_time_shared;
}

double SnrSweepReport::max_analytic_gap() const
{
    double gap = nan_value;
    for (std::size_t k = 0; k < snr_db.size(); ++k)
        if (!std::isnan(noma_analytic[k]))
            gap = std::isnan(gap) ? std::abs(noma_analytic[k] - mc.sum_rate_noma[k].mean)
                                  : std::max(gap, std::abs(noma_analytic[k] - mc.sum_rate_noma[k].mean));
    return gap;
}

SnrSweepReport run_sweep_snr(const ExperimentConfig &cfg)
{
    cfg.validate();
    const MobilityModel m = cfg.model();
    const LedGeometry led = cfg.led();
    const NomaConfig base = cfg.noma(cfg.snr_db.front());
    const auto grid = linear_snr(cfg.snr_db);

    SnrSweepReport r;
    r.mode = cfg.mode;
    r.oma_mode = cfg.oma_mode;
    r.snr_db = cfg.snr_db;
    r.mc = simulate_snr_sweep(base, m, led, cfg.noise(), grid, cfg.mc(default_sweep_trials));

    const std::size_t n = grid.size();
    r.noma_analytic.assign(n, nan_value);
    r.outage_weak_analytic.assign(n, nan_value);
    r.outage_strong_analytic.assign(n, nan_value);
    r.oma_analytic.assign(n, nan_value);
    if (has_analytic_path(cfg.mode))
    {
        const AnalyticPair pair = make_analytic_pair(base, m, led);
        for (std::size_t k = 0; k < n; ++k)
        {
            NomaConfig c = base;
            c.snr = grid[k];
            const OutagePair out = outage_pair_analytic(c, pair);
            r.outage_weak_analytic[k] = out.weak;
            r.outage_strong_analytic[k] = out.strong;
            r.noma_analytic[k] = sum_rate_noma(out.weak, out.strong, c);
            r.oma_analytic[k] = sum_rate_oma(c, pair, cfg.oma_mode);
        }
    }
    return r;
}

Table to_table(const SnrSweepReport &r)
{
    Table t;
    t.columns = {"snr_db",
                 "noma_analytic",
                 "noma_mc",
                 "noma_mc_se",
                 "outage_weak_analytic",
                 "outage_weak_mc",
                 "outage_strong_analytic",
                 "outage_strong_mc",
                 "oma_analytic",
                 "oma_mc",
                 "oma_mc_se",
                 "scheduling_probability"};
    const auto &oma = r.oma_mc();
    for (std::size_t k = 0; k < r.snr_db.size(); ++k)
        t.rows.push_back({format_number(r.snr_db[k]), format_number(r.noma_analytic[k]),
                          format_number(r.mc.sum_rate_noma[k].mean), format_number(r.mc.sum_rate_noma[k].std_error),
                          format_number(r.outage_weak_analytic[k]), format_number(r.mc.outage_weak[k].mean),
                          format_number(r.outage_strong_analytic[k]), format_number(r.mc.outage_strong[k].mean),
                          format_number(r.oma_analytic[k]), format_number(oma[k].mean), format_number(oma[k].std_error),
                          format_number(r.mc.scheduling_probability())});
    t.summary = {"mode=" + std::string(to_string(r.mode)), "oma_mode=" + std::string(to_string(r.oma_mode)),
                 "trials=" + std::to_string(r.mc.trials), "scheduled=" + std::to_string(r.mc.scheduled),
                 "max_abs_analytic_mc_gap=" + format_number(r.max_analytic_gap())};
    return t;
}

std::vector<DeviationPoint> run_sweep_deviation(const ExperimentConfig &cfg)
{
    cfg.validate();
    std::vector<DeviationPoint> out;
    for (double dev : cfg.deviation_grid_deg)
    {
        ExperimentConfig c = cfg;
        c.deviation_deg = dev;
        c.tie_mean_range = true;
        c.snr_db = {cfg.deviation_snr_db};
        const SnrSweepReport r = run_sweep_snr(c);
        DeviationPoint p;
        p.deviation_deg = dev;
        p.noma_analytic = r.noma_analytic.front();
        p.noma_mc = r.mc.sum_rate_noma.front();
        p.oma_mc = r.oma_mc().front();
        p.scheduling_probability = r.mc.scheduling_probability();
        out.push_back(p);
    }
    return out;
}

Table to_table(const std::vector<DeviationPoint> &r)
{
    Table t;
    t.columns = {"deviation_deg", "noma_analytic", "noma_mc", "noma_mc_se", "oma_mc", "oma_mc_se",
                 "scheduling_probability"};
    for (const auto &p : r)
        t.rows.push_back({format_number(p.deviation_deg), format_number(p.noma_analytic), format_number(p.noma_mc.mean),
                          format_number(p.noma_mc.std_error), format_number(p.oma_mc.mean),
                          format_number(p.oma_mc.std_error), format_number(p.scheduling_probability)});
    return t;
}

std::vector<ThresholdPoint> run_sweep_thresholds(const ExperimentConfig &cfg)
{
    cfg.validate();
    if (is_individual(cfg.mode))
        throw ConfigError("sweep-thresholds needs a group feedback mode (twobit_inst, twobit_mean, onebit_distance).");
    std::vector<ThresholdPoint> out;
    for (double cd : cfg.threshold_coeffs)
        for (double ct : cfg.threshold_coeffs)
        {
            ExperimentConfig c = cfg;
            c.c_dth = cd;
            c.c_theta_th = ct;
            out.push_back({cd, ct, run_sweep_snr(c)});
        }
    return out;
}

Table to_table(const std::vector<ThresholdPoint> &r)
{
    Table t;
    t.columns = {"c_dth", "c_theta_th", "snr_db", "noma_analytic", "noma_mc", "noma_mc_se", "scheduling_probability"};
    for (const auto &p : r)
        for (std::size_t k = 0; k < p.sweep.snr_db.size(); ++k)
            t.rows.push_back({format_number(p.c_dth), format_number(p.c_theta_th), format_number(p.sweep.snr_db[k]),
                              format_number(p.sweep.noma_analytic[k]), format_number(p.sweep.mc.sum_rate_noma[k].mean),
                              format_number(p.sweep.mc.sum_rate_noma[k].std_error),
                              format_number(p.sweep.mc.scheduling_probability())});
    return t;
}

double NoisyComparison::max_abs_difference() const
{
    double d = 0.0;
    for (std::size_t k = 0; k < snr_db.size(); ++k)
        d = std::max(d, std::abs(noisy.sum_rate_noma[k].mean - noiseless.sum_rate_noma[k].mean));
    return d;
}

std::vector<NoisyComparison> run_noisy_compare(const ExperimentConfig &cfg)
{
    cfg.validate();
    const MobilityModel m = cfg.model();
    const LedGeometry led = cfg.led();
    const auto grid = linear_snr(cfg.snr_db);
    NoiseConfig noisy = cfg.noise();
    noisy.enabled = true;
    std::vector<NoisyComparison> out;
    for (FeedbackMode mode : cfg.compare_modes)
    {
        NomaConfig base = cfg.noma(cfg.snr_db.front());
        base.feedback_mode = mode;
        NoisyComparison c;
        c.mode = mode;
        c.snr_db = cfg.snr_db;
        c.noiseless = simulate_snr_sweep(base, m, led, NoiseConfig{}, grid, cfg.mc(default_sweep_trials));
        c.noisy = simulate_snr_sweep(base, m, led, noisy, grid, cfg.mc(default_sweep_trials));
        out.push_back(std::move(c));
    }
    return out;
}

Table to_table(const std::vector<NoisyComparison> &r)
{
    Table t;
    t.columns = {"mode", "snr_db", "noma_noiseless", "noma_noiseless_se", "noma_noisy", "noma_noisy_se", "difference"};
    for (const auto &c : r)
    {
        for (std::size_t k = 0; k < c.snr_db.size(); ++k)
        {
            const Estimate &a = c.noiseless.sum_rate_noma[k], &b = c.noisy.sum_rate_noma[k];
            t.rows.push_back({std::string(to_string(c.mode)), format_number(c.snr_db[k]), format_number(a.mean),
                              format_number(a.std_error), format_number(b.mean), format_number(b.std_error),
                              format_number(b.mean - a.mean)});
        }
        t.summary.push_back("max_abs_difference[" + std::string(to_string(c.mode)) +
                            "]=" + format_number(c.max_abs_difference()));
    }
    return t;
}

} // namespace vlcnoma

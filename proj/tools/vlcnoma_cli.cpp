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

#include "CLI11.hpp"

#include "vlcnoma/errors.hpp"
#include "vlcnoma/experiments.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using namespace vlcnoma;

namespace
{

constexpr int exit_config_error = 2;
constexpr int exit_numeric_failure = 3;

struct CommonFlags
{
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::string out_path;
    std::string mode;
    std::string oma_mode;
    std::vector<std::string> overrides;
};

void add_common(CLI::App *cmd, CommonFlags &f)
{
    cmd->add_option("--config", f.config_path, "Key = value configuration file");
    cmd->add_option("--seed", f.seed, "Master RNG seed");
    cmd->add_option("--trials", f.trials, "Monte Carlo trials");
    cmd->add_option("--out", f.out_path, "CSV output path (default: stdout)");
    cmd->add_option("--mode", f.mode, "Feedback mode")
        ->check(CLI::IsMember({"full_csi", "mean_angle", "distance_only", "twobit_inst", "twobit_mean",
                               "onebit_distance"}));
    cmd->add_option("--oma-mode", f.oma_mode, "OMA baseline")->check(CLI::IsMember({"paper_literal", "time_shared"}));
    cmd->add_option("--set", f.overrides, "Override a configuration key (key=value), repeatable");
}

ExperimentConfig build_config(const CommonFlags &f, const std::string &family)
{
    ExperimentConfig cfg;
    if (!f.config_path.empty())
        cfg.load_file(f.config_path);
    for (const auto &kv : f.overrides)
    {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw ConfigError("--set expects key=value, got '" + kv + "'.");
        cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (f.seed)
        cfg.seed = *f.seed;
    if (f.trials)
        cfg.trials = *f.trials;
    if (!f.mode.empty())
        cfg.set("mode", f.mode);
    if (!f.oma_mode.empty())
        cfg.set("oma_mode", f.oma_mode);
    if (!family.empty())
        cfg.set("family", family);
    cfg.validate();
    if (const auto w = power_allocation_warning(cfg.noma(cfg.snr_db.front())))
        std::cerr << "warning: " << *w << '\n';
    return cfg;
}

void emit(const Table &table, const ExperimentConfig &cfg, const std::string &path)
{
    if (path.empty())
    {
        write_csv(std::cout, table, cfg);
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw ConfigError("Cannot open output file '" + path + "'.");
    write_csv(out, table, cfg);
    if (!out)
        throw ConfigError("Failed writing output file '" + path + "'.");
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"NOMA sum-rate and channel-CDF experiments for VLC downlinks with randomly oriented receivers"};
    app.set_version_flag("--version", std::string(VLCNOMA_VERSION));
    app.require_subcommand(1);

    CommonFlags flags;
    std::string family;
    CLI::App *keys_cmd = app.add_subcommand("list-keys", "Print the configuration keys");

    struct Command
    {
        const char *name;
        const char *help;
        std::function<Table(const ExperimentConfig &)> run;
    };
    const std::vector<Command> commands = {
        {"validate-angle-cdf", "Vertical-angle CDF: analytic vs empirical",
         [](const ExperimentConfig &c) { return to_table(run_validate_angle_cdf(c)); }},
        {"validate-knz", "Nonzero-gain user count PMF: analytic vs conditional histogram",
         [](const ExperimentConfig &c) { return to_table(run_validate_knz(c)); }},
        {"validate-channel-cdf", "Squared-gain CDF of one family: analytic vs conditioned samples",
         [](const ExperimentConfig &c) { return to_table(run_validate_channel_cdf(c)); }},
        {"sweep-snr", "NOMA and OMA sum rates against transmit SNR",
         [](const ExperimentConfig &c) { return to_table(run_sweep_snr(c)); }},
        {"sweep-deviation", "NOMA sum rate against the maximum deviation angle at fixed SNR",
         [](const ExperimentConfig &c) { return to_table(run_sweep_deviation(c)); }},
        {"sweep-thresholds", "Group-mode sum rates over the threshold coefficient grid",
         [](const ExperimentConfig &c) { return to_table(run_sweep_thresholds(c)); }},
        {"noisy-compare", "Sum rates with and without noisy distance and angle feedback",
         [](const ExperimentConfig &c) { return to_table(run_noisy_compare(c)); }},
    };
    std::vector<CLI::App *> subs;
    for (const auto &c : commands)
    {
        CLI::App *sub = app.add_subcommand(c.name, c.help);
        add_common(sub, flags);
        if (std::string(c.name) == "validate-channel-cdf")
            sub->add_option("--family", family, "Gain family")
                ->check(CLI::IsMember({"unordered", "ordered", "twobit_inst_weak", "twobit_inst_strong",
                                       "twobit_mean_weak", "twobit_mean_strong"}));
        subs.push_back(sub);
    }

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_config_error;
    }

    if (keys_cmd->parsed())
    {
        for (const auto &k : config_keys())
            std::cout << k << '\n';
        return 0;
    }

    try
    {
        for (std::size_t k = 0; k < commands.size(); ++k)
            if (subs[k]->parsed())
            {
                const ExperimentConfig cfg = build_config(flags, family);
                emit(commands[k].run(cfg), cfg, flags.out_path);
            }
    }
    catch (const ConfigError &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config_error;
    }
    catch (const InvalidParameter &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config_error;
    }
    catch (const NumericFailure &e)
    {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return exit_numeric_failure;
    }
    catch (const DegenerateCondition &e)
    {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return exit_numeric_failure;
    }
    return 0;
}

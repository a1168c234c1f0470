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

#include "catch_amalgamated.hpp"
#include "vlcnoma/errors.hpp"
#include "vlcnoma/experiments.hpp"

#include <cmath>
#include <limits>
#include <sstream>

using namespace vlcnoma;

TEST_CASE("configuration parsing")
{
    ExperimentConfig c;
    std::istringstream in("# comment\n"
                          "fov_deg = 50   # trailing comment\n"
                          "\n"
                          "snr_db = 100:25:200\n"
                          "compare_modes = full_csi, twobit_mean\n"
                          "tie_mean_range = yes\n"
                          "seed = 18446744073709551615\n");
    c.load(in);
    CHECK(c.fov_deg == 50.0);
    CHECK(c.snr_db == std::vector<double>{100, 125, 150, 175, 200});
    CHECK(c.compare_modes == std::vector<FeedbackMode>{FeedbackMode::FullCsi, FeedbackMode::TwoBitMean});
    CHECK(c.tie_mean_range);
    CHECK(c.seed == 18446744073709551615ull);
    CHECK_NOTHROW(c.validate());

    c.set("snr_db", "250");
    CHECK(c.snr_db == std::vector<double>{250});
    c.set("threshold_coeffs", "0.1,0.9");
    CHECK(c.threshold_coeffs.size() == 2);

    CHECK_THROWS_AS(c.set("nope", "1"), ConfigError);
    CHECK_THROWS_AS(c.set("fov_deg", "fifty"), ConfigError);
    CHECK_THROWS_AS(c.set("users", "2.5"), ConfigError);
    CHECK_THROWS_AS(c.set("mode", "full"), ConfigError);
    CHECK_THROWS_AS(c.set("snr_db", "10:-1:0"), ConfigError);
    std::istringstream bad("fov_deg 50\n");
    CHECK_THROWS_AS(c.load(bad), ConfigError);

    ExperimentConfig empty;
    empty.set("snr_db", "");
    CHECK_THROWS_AS(empty.validate(), ConfigError);
    ExperimentConfig unsorted;
    unsorted.set("snr_db", "200,100");
    CHECK_THROWS_AS(unsorted.validate(), ConfigError);
    ExperimentConfig few;
    few.trials = 10;
    CHECK_THROWS_AS(few.validate(), ConfigError);
    ExperimentConfig wide;
    wide.fov_deg = 95.0;
    CHECK_THROWS_AS(wide.validate(), InvalidParameter);
}

TEST_CASE("unit conversion at the boundary")
{
    ExperimentConfig c;
    c.deviation_deg = 25.0;
    c.tie_mean_range = true;
    const auto m = c.model();
    CHECK_THAT(m.mean_angle_min, Catch::Matchers::WithinAbs(deg_to_rad(25.0), 1e-15));
    CHECK_THAT(m.mean_angle_max, Catch::Matchers::WithinAbs(deg_to_rad(155.0), 1e-15));
    CHECK_THAT(c.noma(250.0).snr, Catch::Matchers::WithinRel(1e25, 1e-14));
    CHECK_THAT(c.thresholds().d_th, Catch::Matchers::WithinAbs(1.0, 1e-15));
    CHECK_THAT(c.thresholds().theta_th, Catch::Matchers::WithinAbs(deg_to_rad(6.0), 1e-15));
    c.normalize_power = true;
    const auto n = c.noma(100.0);
    CHECK_THAT(n.beta_weak * n.beta_weak + n.beta_strong * n.beta_strong, Catch::Matchers::WithinAbs(1.0, 1e-15));
}

TEST_CASE("config hash")
{
    ExperimentConfig a, b;
    CHECK(a.hash() == b.hash());
    b.set("fov_deg", "60.0");
    CHECK(a.hash() == b.hash());
    b.set("fov_deg", "61");
    CHECK(a.hash() != b.hash());
    CHECK(manifest_line(a).rfind("# vlcnoma ", 0) == 0);
}

TEST_CASE("CSV formatting")
{
    CHECK(format_number(1.0 / 3.0) == "0.333333333");
    CHECK(format_number(12.0) == "12");
    CHECK(format_number(std::numeric_limits<double>::quiet_NaN()).empty());
    Table t;
    t.columns = {"a", "b"};
    t.rows = {{"1", ""}};
    t.summary = {"x=1"};
    std::ostringstream os;
    const ExperimentConfig c;
    write_csv(os, t, c);
    CHECK(os.str() == manifest_line(c) + "\na,b\n1,\n# x=1\n");
}

TEST_CASE("subcommands are deterministic")
{
    ExperimentConfig c;
    c.trials = 5000;
    c.snr_db = {200, 250};
    c.mode = FeedbackMode::MeanAngle;
    auto render = [](const Table &t, const ExperimentConfig &cfg) {
        std::ostringstream os;
        write_csv(os, t, cfg);
        return os.str();
    };
    CHECK(render(to_table(run_sweep_snr(c)), c) == render(to_table(run_sweep_snr(c)), c));

    const auto mean_only = run_sweep_snr(c);
    CHECK(std::isnan(mean_only.noma_analytic.front()));
    CHECK(to_table(mean_only).rows.front()[1].empty());

    ExperimentConfig a = c;
    a.deviation_deg = 0.0;
    a.mean_angle_min_deg = 0.0;
    a.mean_angle_max_deg = 180.0;
    a.cdf_points = 5;
    const auto r = run_validate_angle_cdf(a);
    for (std::size_t k = 0; k < r.angle_deg.size(); ++k)
        CHECK_THAT(r.analytic[k], Catch::Matchers::WithinAbs(r.angle_deg[k] / 180.0, 1e-15));

    ExperimentConfig individual = c;
    CHECK_THROWS_AS(run_sweep_thresholds(individual), ConfigError);
}

// SPDX-License-Identifier: Apache-2.0
//
// csiloc: passive localization from OFDM channel state information
// Copyright (C) 2026 The csiloc Authors
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


#include <catch2/catch_amalgamated.hpp>

#include "csiloc/eval/report.hpp"
#include "csiloc/sim/scenario.hpp"

#include <sstream>

using namespace csiloc;

namespace
{
Dataset pair_dataset(std::size_t frames)
{
    const auto wf = waveform_preset(WaveformKind::waic);
    Scene scene;
    scene.array = default_array(wf);
    scene.region = {-2.0, 2.0, 0.5, 3.5};
    Rng rng(3);
    SimConfig sim;
    sim.rng_seed = 3;
    return simulate_trajectory(scene, make_script(aisle_pair_walk(frames, true, rng), 0.0, 0.05), wf, sim, 2);
}

EvalReport fake_report(Method m, WaveformKind w, double mean)
{
    EvalReport r;
    r.method = m;
    r.waveform = w;
    r.mean_error = mean;
    r.median_error = mean / 2;
    return r;
}
} // namespace

TEST_CASE("evaluate - Echo predictor is perfect")
{
    const Dataset d = pair_dataset(40);
    const auto r = evaluate(Method::echo, d, {});
    CHECK(r.mean_error == 0.0);
    CHECK(r.median_error == 0.0);
    REQUIRE(r.threshold_accuracy);
    CHECK(*r.threshold_accuracy == 1.0);
    CHECK(r.pair_frames == 40);
    CHECK(r.detection_rate == 1.0);
    CHECK(r.cdf.size() == 40);
    CHECK(r.cdf.back().second == 1.0);

    CHECK_THROWS_AS(evaluate(Method::ann, d, {}), std::invalid_argument);
    Dataset unlabeled = d;
    unlabeled.snapshots[0].ground_truth.reset();
    CHECK_THROWS_AS(evaluate(Method::echo, unlabeled, {}), std::invalid_argument);
}

TEST_CASE("evaluate - Method and waveform mismatch")
{
    const Dataset d = pair_dataset(16);
    LocalizerModel m;
    m.head.n_p = 2;
    m.region = d.region;
    m.waveform = WaveformKind::wifi40;
    m.net = Mlp<float>({6400, 4, m.head.output_size()});
    m.stats.mean = Eigen::VectorXd::Zero(6400);
    m.stats.stddev = Eigen::VectorXd::Ones(6400);
    EvalParams p;
    p.model = &m;
    CHECK_THROWS_AS(evaluate(Method::ann, d, p), std::invalid_argument);
    m.waveform = WaveformKind::waic;
    CHECK_NOTHROW(evaluate(Method::ann, d, p));
}

TEST_CASE("score_predictions - Misses and accuracy")
{
    Dataset d = pair_dataset(4);
    std::vector<std::vector<Point2>> preds;
    for (const auto &s : d.snapshots)
        preds.push_back(*s.ground_truth);
    preds[1].clear();                                   // missed frame
    preds[2] = {preds[2][0] + Point2{0.3, 0.4}};          // one target found
    preds[3] = {preds[3][0], preds[3][1] + Point2{9.0, 0.0}}; // separation pushed past the threshold
    const auto r = score_predictions(Method::radar, d, preds, 1.5);
    CHECK(r.missed_frames == 1);
    CHECK(r.frame_errors.size() == 3);
    CHECK(r.truth_targets == 8);
    CHECK(r.matched_targets == 5);
    CHECK(r.detection_rate == Catch::Approx(5.0 / 8.0));
    REQUIRE(r.threshold_accuracy);
    CHECK(r.pair_frames == 4);
    const double sep3 = distance(d.snapshots[3].ground_truth->at(0), d.snapshots[3].ground_truth->at(1));
    const double expected = sep3 < 1.5 ? 1.0 / 4.0 : 2.0 / 4.0;
    CHECK(*r.threshold_accuracy == Catch::Approx(expected));
    CHECK_THROWS_AS(score_predictions(Method::radar, d, preds, 0.0), std::invalid_argument);
    preds.pop_back();
    CHECK_THROWS_AS(score_predictions(Method::radar, d, preds, 1.5), std::invalid_argument);
}

TEST_CASE("summary helpers")
{
    CHECK(median_of({}) == 0.0);
    CHECK(median_of({3.0, 1.0, 2.0}) == 2.0);
    CHECK(median_of({4.0, 1.0, 2.0, 3.0}) == 2.5);
    const auto cdf = error_cdf({0.3, 0.1, 0.2, 0.4});
    REQUIRE(cdf.size() == 4);
    CHECK(cdf[0] == std::pair<double, double>{0.1, 0.25});
    CHECK(cdf[3] == std::pair<double, double>{0.4, 1.0});
}

TEST_CASE("compare_report - Table layout")
{
    std::vector<EvalReport> reports;
    for (auto m : {Method::radar, Method::ann})
        for (auto w : {WaveformKind::wifi40, WaveformKind::waic, WaveformKind::wifi100})
            reports.push_back(fake_report(m, w, m == Method::radar ? 0.5 : 0.1));
    const auto t = compare_report(reports);
    CHECK(t.methods.size() == 2);
    CHECK(t.waveforms.size() == 3);
    CHECK(t.at(Method::ann, WaveformKind::wifi100)->mean_error == 0.1);

    std::ostringstream csv;
    write_table_csv(t, csv);
    std::size_t lines = 0;
    for (char c : csv.str())
        lines += c == '\n';
    CHECK(lines == 3);
    CHECK(csv.str().find("unavailable") == std::string::npos);

    const auto partial = compare_report({fake_report(Method::radar, WaveformKind::waic, 0.4),
                                         fake_report(Method::ann, WaveformKind::wifi40, 0.2)});
    CHECK(!partial.at(Method::radar, WaveformKind::wifi40));
    std::ostringstream out;
    write_table_csv(partial, out);
    CHECK(out.str().find("unavailable") != std::string::npos);
    const json j = table_to_json(partial);
    CHECK(j.size() == 2);
    CHECK(j[0]["wifi40"] == "unavailable");

    CHECK_THROWS_AS(compare_report({fake_report(Method::radar, WaveformKind::waic, 0.4)}), std::invalid_argument);
}

TEST_CASE("report output")
{
    const Dataset d = pair_dataset(6);
    auto r = evaluate(Method::echo, d, {});
    r.meta = {42, "cafe"};
    const json j = report_to_json(r);
    CHECK(j["seed"] == 42);
    CHECK(j["config_hash"] == "cafe");
    CHECK(j["method"] == "echo");
    CHECK(j["threshold_accuracy"] == 1.0);
    std::ostringstream cdf;
    write_cdf_csv(r, cdf);
    CHECK(cdf.str().rfind("# method=echo waveform=waic seed=42 config_hash=cafe\nerror_m,cumulative_fraction\n", 0) ==
          0);
    CHECK(parse_method("radar") == Method::radar);
    CHECK_THROWS_AS(parse_method("music"), std::invalid_argument);
}

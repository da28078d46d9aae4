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

#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "csiloc/io/config_io.hpp"
#include "csiloc/eval/report.hpp"
#include "csiloc/nn/trainer.hpp"
#include "csiloc/sim/channel.hpp"
#include "csiloc/sim/scenario.hpp"
#include "csiloc/util/hash.hpp"

namespace csiloc
{
enum class BenchScenario
{
    single, // one person on a random walk
    pair    // two people on an aisle, separation swept in the test run
};

inline std::string_view to_string(BenchScenario s) { return s == BenchScenario::single ? "single" : "pair"; }

inline BenchScenario parse_bench_scenario(std::string_view s)
{
    if (s == "single")
        return BenchScenario::single;
    if (s == "pair")
        return BenchScenario::pair;
    throw std::invalid_argument("unknown scenario '" + std::string(s) + "'");
}

// A reproducible method x waveform comparison. Every waveform sees the same
// clutter, the same trajectories and the same noise seeds.
struct BenchConfig
{
    std::string name = "default";
    BenchScenario scenario = BenchScenario::single;
    std::uint64_t seed = 2026;
    std::vector<WaveformKind> waveforms{WaveformKind::waic, WaveformKind::wifi100, WaveformKind::wifi40};
    std::vector<Method> methods{Method::radar, Method::ann};
    Region region{-1.5, 1.5, 0.5, 3.5};
    Region walk_area{-1.0, 1.0, 1.0, 3.0};
    double frame_period = 0.05; // seconds
    std::size_t train_walks = 20;
    std::size_t train_frames = 232;
    std::size_t empty_train_walks = 0;
    std::size_t test_frames = 500;
    double threshold_m = 1.5;
    SimConfig sim;
    RadarParams radar;
    TrainConfig train;
    ClutterSpec clutter;
    WalkSpec walk;
    AislePairSpec pair;

    std::size_t n_p() const { return scenario == BenchScenario::single ? 1 : 2; }
};

inline json to_json(const BenchConfig &c)
{
    json methods = json::array();
    for (auto m : c.methods)
        methods.push_back(std::string(to_string(m)));
    json waveforms = json::array();
    for (auto w : c.waveforms)
        waveforms.push_back(std::string(to_string(w)));
    return {{"name", c.name},
            {"scenario", std::string(to_string(c.scenario))},
            {"seed", c.seed},
            {"waveforms", waveforms},
            {"methods", methods},
            {"region", to_json_region(c.region)},
            {"walk_area", to_json_region(c.walk_area)},
            {"frame_period", c.frame_period},
            {"train_walks", c.train_walks},
            {"train_frames", c.train_frames},
            {"empty_train_walks", c.empty_train_walks},
            {"test_frames", c.test_frames},
            {"threshold_m", c.threshold_m},
            {"sim", to_json(c.sim)},
            {"radar", to_json(c.radar)},
            {"train", to_json(c.train)},
            {"clutter", to_json(c.clutter)},
            {"walk", to_json(c.walk)},
            {"pair", to_json(c.pair)}};
}

inline BenchConfig bench_config_from_json(const json &j)
{
    detail::check_keys(j,
                       {"name", "scenario", "seed", "waveforms", "methods", "region", "walk_area", "frame_period",
                        "train_walks", "train_frames", "empty_train_walks", "test_frames", "threshold_m", "sim",
                        "radar", "train", "clutter", "walk", "pair"},
                       "bench");
    BenchConfig c;
    detail::read_opt(j, "name", c.name);
    if (j.contains("scenario"))
        c.scenario = parse_bench_scenario(j.at("scenario").get<std::string>());
    detail::read_opt(j, "seed", c.seed);
    if (j.contains("waveforms"))
    {
        c.waveforms.clear();
        for (const auto &w : j.at("waveforms"))
            c.waveforms.push_back(parse_waveform_kind(w.get<std::string>()));
    }
    if (j.contains("methods"))
    {
        c.methods.clear();
        for (const auto &m : j.at("methods"))
            c.methods.push_back(parse_method(m.get<std::string>()));
    }
    if (j.contains("region"))
        c.region = region_from_json(j.at("region"));
    if (j.contains("walk_area"))
        c.walk_area = region_from_json(j.at("walk_area"));
    detail::read_opt(j, "frame_period", c.frame_period);
    detail::read_opt(j, "train_walks", c.train_walks);
    detail::read_opt(j, "train_frames", c.train_frames);
    detail::read_opt(j, "empty_train_walks", c.empty_train_walks);
    detail::read_opt(j, "test_frames", c.test_frames);
    detail::read_opt(j, "threshold_m", c.threshold_m);
    if (j.contains("sim"))
        c.sim = sim_config_from_json(j.at("sim"));
    if (j.contains("radar"))
        c.radar = radar_params_from_json(j.at("radar"));
    if (j.contains("train"))
        c.train = train_config_from_json(j.at("train"));
    if (j.contains("clutter"))
        c.clutter = clutter_spec_from_json(j.at("clutter"));
    if (j.contains("walk"))
        c.walk = walk_spec_from_json(j.at("walk"));
    if (j.contains("pair"))
        c.pair = aisle_pair_spec_from_json(j.at("pair"));

    if (c.waveforms.empty() || c.methods.empty())
        throw std::invalid_argument("bench: waveforms and methods must be nonempty");
    if (!c.region.valid() || !c.walk_area.valid())
        throw std::invalid_argument("bench: invalid region or walk area");
    if (!(c.frame_period > 0.0) || c.test_frames < 2 || c.train_frames < 2)
        throw std::invalid_argument("bench: frame period and frame counts must be positive");
    if (!(c.threshold_m > 0.0))
        throw std::invalid_argument("bench: threshold must be positive");
    return c;
}

inline BenchConfig read_bench_config(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    json j;
    try
    {
        j = json::parse(in);
    }
    catch (const json::parse_error &e)
    {
        throw std::invalid_argument(path.string() + ": " + e.what());
    }
    return bench_config_from_json(j);
}

inline std::string bench_config_hash(const BenchConfig &c) { return util::config_hash(to_json(c).dump()); }

struct BenchCheck
{
    std::string name;
    bool pass = false;
    std::string detail;
};

struct BenchRun
{
    WaveformKind waveform;
    Dataset test;
    std::optional<TrainResult> trained;
};

struct BenchResult
{
    std::string config_hash;
    std::uint64_t seed = 0;
    std::vector<EvalReport> reports;
    std::vector<BenchRun> runs;
    std::vector<BenchCheck> checks;

    const EvalReport *find(Method m, WaveformKind w) const
    {
        for (const auto &r : reports)
            if (r.method == m && r.waveform == w)
                return &r;
        return nullptr;
    }
};

namespace detail
{
// Independent engine per (seed, stream, index).
inline Rng stream_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index)
{
    std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(stream), std::uint32_t(index)};
    return Rng(seq);
}

enum : std::uint64_t
{
    kStreamClutter = 1,
    kStreamTrain = 2,
    kStreamTest = 3,
    kNoiseTrain = 1000,
    kNoiseEmpty = 2000000,
    kNoiseTest = 3000000
};

inline std::vector<std::vector<Point2>> bench_positions(const BenchConfig &c, std::size_t frames, bool test,
                                                        Rng &rng)
{
    if (c.scenario == BenchScenario::pair)
        return aisle_pair_walk(frames, test, rng, c.pair);
    std::vector<std::vector<Point2>> out;
    for (const auto &p : random_walk(c.walk_area, frames, rng, c.walk))
        out.push_back({p});
    return out;
}

inline Dataset bench_dataset(const BenchConfig &c, const Scene &scene, const WaveformConfig &wf,
                             const std::vector<std::vector<Point2>> &positions, std::uint64_t noise_seed,
                             const std::string &hash)
{
    SimConfig sim = c.sim;
    sim.rng_seed = c.seed * 7919 + noise_seed;
    Dataset d = simulate_trajectory(scene, make_script(positions, 0.0, c.frame_period), wf, sim, c.n_p());
    d.meta = {c.seed, hash};
    return d;
}
} // namespace detail

// Scene shared by all waveforms of a benchmark; only the array pitch follows
// the waveform.
inline Scene bench_scene(const BenchConfig &c, const WaveformConfig &wf)
{
    Scene scene;
    scene.array = default_array(wf);
    scene.region = c.region;
    Rng rng = detail::stream_rng(c.seed, detail::kStreamClutter, 0);
    scene.static_scatterers = random_clutter(c.region, AntennaArray{}, rng, c.clutter);
    return scene;
}

inline std::vector<BenchCheck> bench_checks(const BenchConfig &c, const BenchResult &r)
{
    std::vector<BenchCheck> checks;
    auto fmt = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4f", v);
        return std::string(buf);
    };
    for (auto w : c.waveforms)
    {
        const auto *ann = r.find(Method::ann, w);
        const auto *radar = r.find(Method::radar, w);
        const std::string ws(to_string(w));
        if (ann && radar)
            checks.push_back({"ann_below_radar_" + ws, ann->mean_error < radar->mean_error,
                              "ann " + fmt(ann->mean_error) + " m vs radar " + fmt(radar->mean_error) + " m"});
        if (radar && c.scenario == BenchScenario::single)
            checks.push_back({"radar_detection_rate_" + ws, radar->detection_rate >= 0.95,
                              "detection rate " + fmt(radar->detection_rate)});
        if (ann && c.scenario == BenchScenario::pair)
            checks.push_back({"ann_threshold_accuracy_" + ws,
                              ann->threshold_accuracy.value_or(0.0) >= 0.90,
                              "accuracy " + fmt(ann->threshold_accuracy.value_or(0.0)) + " at " +
                                  fmt(c.threshold_m) + " m"});
    }
    const auto *r40 = r.find(Method::radar, WaveformKind::wifi40);
    const auto *r100 = r.find(Method::radar, WaveformKind::wifi100);
    const auto *r200 = r.find(Method::radar, WaveformKind::waic);
    if (r40 && r100 && r200 && c.scenario == BenchScenario::single)
        checks.push_back({"radar_wifi40_worst",
                          r40->mean_error >= r100->mean_error && r40->mean_error >= r200->mean_error,
                          "wifi40 " + fmt(r40->mean_error) + ", wifi100 " + fmt(r100->mean_error) + ", waic " +
                              fmt(r200->mean_error) + " m"});
    return checks;
}

// Simulates, trains and evaluates every (method, waveform) cell. `progress`
// receives one line per finished stage when given.
template <typename Progress>
BenchResult run_benchmark(const BenchConfig &c, Progress &&progress)
{
    BenchResult result;
    result.config_hash = bench_config_hash(c);
    result.seed = c.seed;
    RadarParams radar = c.radar;
    if (c.scenario == BenchScenario::pair)
        radar.detector.max_targets = std::max<std::size_t>(radar.detector.max_targets, 2);
    const bool need_ann = std::find(c.methods.begin(), c.methods.end(), Method::ann) != c.methods.end();

    Rng test_rng = detail::stream_rng(c.seed, detail::kStreamTest, 0);
    const auto test_positions = detail::bench_positions(c, c.test_frames, true, test_rng);
    std::vector<std::vector<std::vector<Point2>>> train_positions;
    for (std::size_t w = 0; need_ann && w < c.train_walks; ++w)
    {
        Rng rng = detail::stream_rng(c.seed, detail::kStreamTrain, w);
        train_positions.push_back(detail::bench_positions(c, c.train_frames, false, rng));
    }

    for (auto kind : c.waveforms)
    {
        const WaveformConfig wf = waveform_preset(kind);
        const Scene scene = bench_scene(c, wf);
        BenchRun run{kind, detail::bench_dataset(c, scene, wf, test_positions, detail::kNoiseTest, result.config_hash),
                     std::nullopt};
        for (auto method : c.methods)
        {
            EvalParams params;
            params.radar = radar;
            params.threshold_m = c.threshold_m;
            if (method == Method::ann)
            {
                std::vector<Dataset> sets;
                for (std::size_t w = 0; w < train_positions.size(); ++w)
                    sets.push_back(detail::bench_dataset(c, scene, wf, train_positions[w], detail::kNoiseTrain + w,
                                                         result.config_hash));
                for (std::size_t w = 0; w < c.empty_train_walks; ++w)
                    sets.push_back(detail::bench_dataset(
                        c, scene, wf, std::vector<std::vector<Point2>>(c.train_frames), detail::kNoiseEmpty + w,
                        result.config_hash));
                run.trained = train(std::span<const Dataset>(sets), c.train);
                run.trained->model.meta = {c.seed, result.config_hash};
                params.model = &run.trained->model;
            }
            EvalReport rep = evaluate(method, run.test, params);
            rep.meta = {c.seed, result.config_hash};
            progress(rep);
            result.reports.push_back(std::move(rep));
        }
        result.runs.push_back(std::move(run));
    }
    result.checks = bench_checks(c, result);
    return result;
}

inline BenchResult run_benchmark(const BenchConfig &c)
{
    return run_benchmark(c, [](const EvalReport &) {});
}
} // namespace csiloc

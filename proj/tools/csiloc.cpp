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

// csiloc command-line tool: simulate, train, infer, eval, bench, plot.
// Human-readable output on stdout is JSON lines; diagnostics go to stderr.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "csiloc/core/dataset_io.hpp"
#include "csiloc/eval/benchmark.hpp"
#include "csiloc/io/scene_io.hpp"
#include "csiloc/nn/model_io.hpp"
#include "csiloc/radar/export.hpp"
#include "csiloc/util/svg.hpp"

namespace fs = std::filesystem;
using namespace csiloc;

namespace
{
// Raised for inconsistent flag combinations; exit code 2 like parse errors.
struct UsageError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

void emit(const json &j) { std::cout << j.dump() << std::endl; }

json read_json_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error(path + ": cannot open");
    try
    {
        return json::parse(in);
    }
    catch (const json::parse_error &e)
    {
        throw std::runtime_error(path + ": " + e.what());
    }
}

fs::path prepare_out_dir(const std::string &dir)
{
    fs::path p(dir);
    fs::create_directories(p);
    return p;
}

std::ofstream open_out(const fs::path &path, bool binary = false)
{
    std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
    if (!out)
        throw std::runtime_error(path.string() + ": cannot open for writing");
    return out;
}

std::string provenance(std::uint64_t seed, const std::string &hash)
{
    return "seed=" + std::to_string(seed) + " config_hash=" + hash;
}

// ---------------------------------------------------------------- plots

void plot_cdf(const fs::path &path, const std::vector<util::Series> &series, const std::string &comment)
{
    auto out = open_out(path);
    util::write_line_plot(out, "Location error CDF", "error [m]", "cumulative fraction", series, comment);
}

util::Series cdf_series(const EvalReport &r)
{
    util::Series s;
    s.label = std::string(to_string(r.method)) + " " + std::string(to_string(r.waveform));
    for (const auto &[e, f] : r.cdf)
        s.points.emplace_back(e, f);
    return s;
}

void plot_trajectory(const fs::path &path, const Dataset &d, const EvalReport &r, const std::string &comment)
{
    std::vector<util::Series> series;
    util::Series truth{"truth", {}, "", false}, pred{"predicted", {}, "", false};
    for (std::size_t t = 0; t < d.snapshots.size(); ++t)
    {
        for (const auto &p : d.snapshots[t].ground_truth.value_or(std::vector<Point2>{}))
            truth.points.emplace_back(p.x, p.y);
        for (const auto &p : r.predictions[t])
            pred.points.emplace_back(p.x, p.y);
    }
    series.push_back(truth);
    series.push_back(pred);
    for (std::size_t i = 0; i < series.size(); ++i)
        series[i].color = util::palette(i);
    util::SvgCanvas c("Trajectory: " + std::string(to_string(r.method)), "x [m]", "y [m]",
                      {d.region.x_min, d.region.x_max, d.region.y_min, d.region.y_max});
    for (const auto &s : series)
        c.add_series(s);
    auto out = open_out(path);
    c.write(out, comment);
}

void plot_map(const fs::path &path, const RangeAzimuthMap &map, double max_range, const std::string &comment)
{
    std::vector<std::vector<double>> rows;
    double peak = 1e-300;
    for (Eigen::Index n = 0; n < map.range_bins() && map.range_axis[std::size_t(n)] <= max_range; ++n)
    {
        std::vector<double> row;
        for (Eigen::Index m = 0; m < map.angle_bins(); ++m)
        {
            row.push_back(map.magnitudes(n, m));
            peak = std::max(peak, map.magnitudes(n, m));
        }
        rows.push_back(std::move(row));
    }
    for (auto &row : rows)
        for (auto &v : row)
            v = 20.0 * std::log10(std::max(v, 1e-300) / peak);
    const double top = rows.empty() ? 1.0 : map.range_axis[rows.size() - 1] + map.range_bin_spacing;
    const double s0 = map.sin_theta_axis.front(), s1 = map.sin_theta_axis.back();
    auto out = open_out(path);
    util::write_heatmap(out, "Range-azimuth map [dB]", "sin(theta)", "range [m]", rows, {s0, s1, 0.0, top}, -40.0,
                        0.0, comment);
}

std::vector<std::pair<double, double>> read_two_column_csv(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error(path + ": cannot open");
    std::vector<std::pair<double, double>> out;
    std::string line;
    std::size_t lineno = 0;
    bool header = true;
    while (std::getline(in, line))
    {
        ++lineno;
        if (line.empty() || line[0] == '#')
            continue;
        if (header)
        {
            header = false;
            continue;
        }
        std::istringstream ss(line);
        double a = 0, b = 0;
        char comma = 0;
        if (!(ss >> a >> comma >> b) || comma != ',')
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected two numeric columns");
        out.emplace_back(a, b);
    }
    return out;
}

// ---------------------------------------------------------------- simulate

struct SimulateOptions
{
    std::string scene;
    std::optional<std::string> waveform;
    std::optional<std::uint64_t> seed;
    std::optional<double> snr_db;
    std::string out_dir = ".";
    std::string out_name = "dataset.csid";
    bool plot = false;
};

int cmd_simulate(const SimulateOptions &o)
{
    const SceneSpec spec = read_scene(o.scene);
    const WaveformKind kind =
        o.waveform ? parse_waveform_kind(*o.waveform) : spec.waveform.value_or(WaveformKind::waic);
    const WaveformConfig wf = waveform_preset(kind);
    SimConfig sim = spec.sim;
    if (o.seed)
        sim.rng_seed = *o.seed;
    if (o.snr_db)
        sim.snr_db = *o.snr_db;
    sim.validate();
    const Scene scene = spec.scene(wf);

    json cfg{{"command", "simulate"}, {"scene", read_json_file(o.scene)}, {"waveform", std::string(to_string(kind))},
             {"sim", to_json(sim)}};
    const std::string hash = util::config_hash(cfg.dump());
    Dataset d = simulate_trajectory(scene, spec.script, wf, sim, spec.n_p);
    d.meta = {sim.rng_seed, hash};

    const fs::path dir = prepare_out_dir(o.out_dir);
    const fs::path path = dir / o.out_name;
    write_dataset(d, path);
    json summary{{"command", "simulate"},
                 {"output", path.string()},
                 {"snapshots", d.snapshots.size()},
                 {"waveform", std::string(to_string(kind))},
                 {"shape", {scene.array.size(), scene.array.size(), wf.subcarrier_count()}},
                 {"snr_db", sim.snr_db},
                 {"seed", sim.rng_seed},
                 {"config_hash", hash}};
    if (o.plot)
    {
        EvalReport truth = score_predictions(Method::echo, d, method_predictions(Method::echo, d, {}), 1.5);
        const fs::path svg = dir / "scene_trajectory.svg";
        plot_trajectory(svg, d, truth, provenance(sim.rng_seed, hash));
        summary["plots"] = {svg.string()};
    }
    emit(summary);
    return 0;
}

// ---------------------------------------------------------------- train

struct TrainOptions
{
    std::vector<std::string> datasets;
    std::optional<std::string> config;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> epochs;
    std::optional<double> learning_rate;
    std::optional<std::size_t> batch_size;
    std::optional<std::vector<std::size_t>> hidden;
    std::optional<std::string> optimizer;
    std::optional<std::size_t> wavelet_levels;
    std::optional<std::size_t> history;
    std::optional<std::string> feature_mode;
    std::string out_dir = ".";
    bool plot = false;
};

TrainConfig resolve_train_config(const TrainOptions &o)
{
    TrainConfig cfg;
    try
    {
        if (o.config)
            cfg = train_config_from_json(read_json_file(*o.config));
        if (o.seed)
            cfg.seed = *o.seed;
        if (o.epochs)
            cfg.epochs = *o.epochs;
        if (o.learning_rate)
            cfg.learning_rate = *o.learning_rate;
        if (o.batch_size)
            cfg.batch_size = *o.batch_size;
        if (o.hidden)
            cfg.hidden = *o.hidden;
        if (o.optimizer)
            cfg.optimizer = parse_optimizer(*o.optimizer);
        if (o.wavelet_levels)
            cfg.wavelet_levels = *o.wavelet_levels;
        if (o.history)
            cfg.history = *o.history;
        if (o.feature_mode)
            cfg.feature_mode = parse_feature_mode(*o.feature_mode);
        cfg.validate();
    }
    catch (const std::invalid_argument &e)
    {
        throw UsageError(e.what());
    }
    return cfg;
}

int cmd_train(const TrainOptions &o)
{
    const TrainConfig cfg = resolve_train_config(o);
    std::vector<Dataset> sets;
    std::string inputs;
    for (const auto &p : o.datasets)
    {
        sets.push_back(read_dataset(fs::path(p)));
        if (!sets.back().has_ground_truth())
            throw std::invalid_argument(p + ": dataset has no ground truth; refusing to train");
        inputs += sets.back().meta.config_hash + ";";
    }
    json hcfg{{"command", "train"}, {"train", to_json(cfg)}, {"inputs", inputs}};
    const std::string hash = util::config_hash(hcfg.dump());

    TrainResult r = train(std::span<const Dataset>(sets), cfg);
    r.model.meta = {cfg.seed, hash};

    const fs::path dir = prepare_out_dir(o.out_dir);
    const fs::path model_path = dir / "model.csim", log_path = dir / "train_log.csv";
    write_model(r.model, model_path);
    {
        auto out = open_out(log_path);
        write_train_log_csv(r.log, out, r.model.meta);
    }
    const auto &best = r.log[r.best_epoch - 1];
    json summary{{"command", "train"},
                 {"model", model_path.string()},
                 {"log", log_path.string()},
                 {"samples", [&] {
                      std::size_t n = 0;
                      for (const auto &s : sets)
                          n += s.snapshots.size();
                      return n;
                  }()},
                 {"epochs", cfg.epochs},
                 {"best_epoch", r.best_epoch},
                 {"final_validation_loss", r.log.back().validation_loss},
                 {"final_validation_mean_error_m", r.log.back().validation_mean_error},
                 {"best_validation_mean_error_m", best.validation_mean_error},
                 {"seed", cfg.seed},
                 {"config_hash", hash}};
    if (o.plot)
    {
        util::Series tl{"train loss", {}, "", true}, vl{"validation loss", {}, "", true};
        for (const auto &row : r.log)
        {
            tl.points.emplace_back(double(row.epoch), row.train_loss);
            vl.points.emplace_back(double(row.epoch), row.validation_loss);
        }
        const fs::path svg = dir / "train_loss.svg";
        auto out = open_out(svg);
        util::write_line_plot(out, "Training loss", "epoch", "loss", {tl, vl}, provenance(cfg.seed, hash));
        summary["plots"] = {svg.string()};
    }
    emit(summary);
    return 0;
}

// ---------------------------------------------------------------- radar flags

struct RadarFlags
{
    std::optional<std::string> config;
    std::optional<std::size_t> k_background;
    std::optional<std::size_t> zero_pad;
    std::optional<double> gate_radius_m;
    std::optional<double> threshold_db;
    std::optional<std::size_t> max_targets;

    RadarParams resolve(std::size_t n_p) const
    {
        RadarParams p;
        p.detector.max_targets = n_p;
        try
        {
            if (config)
                p = radar_params_from_json(read_json_file(*config), p);
            if (k_background)
                p.k_background = *k_background;
            if (zero_pad)
                p.zero_pad = *zero_pad;
            if (gate_radius_m)
                p.detector.gate_radius_m = *gate_radius_m;
            if (threshold_db)
                p.detector.threshold_db_over_floor = *threshold_db;
            if (max_targets)
                p.detector.max_targets = *max_targets;
        }
        catch (const std::invalid_argument &e)
        {
            throw UsageError(e.what());
        }
        if (p.k_background == 0 || p.zero_pad == 0 || !(p.detector.gate_radius_m > 0.0))
            throw UsageError("--k-background, --zero-pad and --gate-radius-m must be positive");
        return p;
    }
};

void add_radar_flags(CLI::App *app, RadarFlags &f)
{
    app->add_option("--radar-config", f.config, "JSON file with radar parameters")->check(CLI::ExistingFile);
    app->add_option("--k-background", f.k_background, "median background window in frames (default 31)");
    app->add_option("--zero-pad", f.zero_pad, "FFT zero-padding factor on both axes (default 8)");
    app->add_option("--gate-radius-m", f.gate_radius_m, "gating radius around previous detections (default 1.0)");
    app->add_option("--threshold-db", f.threshold_db, "detection threshold over the median floor (default 12)");
    app->add_option("--max-targets", f.max_targets, "detections per frame (default: dataset N_P)");
}

// ---------------------------------------------------------------- infer

struct InferOptions
{
    std::string dataset;
    std::string method = "ann";
    std::optional<std::string> model;
    RadarFlags radar;
    std::optional<std::size_t> map_frame;
    std::string out_dir = ".";
    bool plot = false;
};

int cmd_infer(const InferOptions &o)
{
    const Dataset d = read_dataset(fs::path(o.dataset));
    const Method method = parse_method(o.method);
    if (method == Method::ann && !o.model)
        throw UsageError("infer --method ann requires --model");
    if (method != Method::ann && o.model)
        throw UsageError("--model only applies to --method ann");
    if (method == Method::echo)
        throw UsageError("infer supports --method ann or radar");
    const fs::path dir = prepare_out_dir(o.out_dir);
    json summary{{"command", "infer"}, {"method", o.method}, {"frames", d.snapshots.size()}};
    std::vector<std::string> plots;

    if (method == Method::ann)
    {
        const LocalizerModel model = read_model(fs::path(*o.model));
        const auto preds = predict_dataset(model, d);
        const std::string hash = util::config_hash(
            json{{"command", "infer"}, {"model", model.meta.config_hash}, {"dataset", d.meta.config_hash}}.dump());
        const fs::path path = dir / "predictions.jsonl";
        auto out = open_out(path);
        out << json{{"seed", model.meta.seed}, {"config_hash", hash}}.dump() << '\n';
        for (std::size_t t = 0; t < preds.size(); ++t)
        {
            std::vector<double> probs(preds[t].count_probs.data(),
                                      preds[t].count_probs.data() + preds[t].count_probs.size());
            out << json{{"frame", t},
                        {"t", d.snapshots[t].timestamp},
                        {"count", preds[t].count},
                        {"count_probs", probs},
                        {"positions", to_json_points(preds[t].positions)}}
                       .dump()
                << '\n';
        }
        summary["output"] = path.string();
        summary["seed"] = model.meta.seed;
        summary["config_hash"] = hash;
    }
    else
    {
        const RadarParams rp = o.radar.resolve(d.n_p_max);
        const std::string hash = util::config_hash(
            json{{"command", "infer"}, {"radar", to_json(rp)}, {"dataset", d.meta.config_hash}}.dump());
        const auto dets = radar_localize(d, rp);
        std::vector<double> ts;
        for (const auto &s : d.snapshots)
            ts.push_back(s.timestamp);
        const fs::path path = dir / "detections.jsonl";
        {
            auto out = open_out(path);
            out << json{{"seed", d.meta.seed}, {"config_hash", hash}}.dump() << '\n';
            write_detections_jsonl(dets, ts, out);
        }
        summary["output"] = path.string();
        const std::size_t frame = o.map_frame.value_or(d.snapshots.size() / 2);
        if (frame >= d.snapshots.size())
            throw UsageError("--map-frame is past the last frame");
        const RangeAzimuthMap map = radar_frame_map(d, frame, rp);
        const fs::path map_path = dir / "map.csv";
        {
            auto out = open_out(map_path);
            write_map_csv(map, out, rp.detector.max_range_m,
                          provenance(d.meta.seed, hash) + " frame=" + std::to_string(frame));
        }
        summary["map"] = map_path.string();
        if (o.plot)
        {
            plot_map(dir / "map.svg", map, rp.detector.max_range_m, provenance(d.meta.seed, hash));
            plots.push_back((dir / "map.svg").string());
        }
        summary["seed"] = d.meta.seed;
        summary["config_hash"] = hash;
    }
    if (!plots.empty())
        summary["plots"] = plots;
    emit(summary);
    return 0;
}

// ---------------------------------------------------------------- eval

struct EvalOptions
{
    std::string dataset;
    std::string method = "radar";
    std::optional<std::string> model;
    RadarFlags radar;
    double threshold_m = 1.5;
    std::optional<std::string> waveform;
    std::string out_dir = ".";
    bool plot = false;
};

int cmd_eval(const EvalOptions &o)
{
    const Method method = parse_method(o.method);
    if (method == Method::ann && !o.model)
        throw UsageError("eval --method ann requires --model");
    if (method != Method::ann && o.model)
        throw UsageError("--model only applies to --method ann");
    if (!(o.threshold_m > 0.0))
        throw UsageError("--threshold-m must be positive");
    const Dataset d = read_dataset(fs::path(o.dataset));
    if (o.waveform && parse_waveform_kind(*o.waveform) != d.waveform.kind)
        throw UsageError("dataset waveform is " + std::string(to_string(d.waveform.kind)) + ", not " + *o.waveform);

    EvalParams params;
    params.threshold_m = o.threshold_m;
    params.radar = o.radar.resolve(d.n_p_max);
    std::optional<LocalizerModel> model;
    if (o.model)
    {
        model = read_model(fs::path(*o.model));
        if (model->waveform != d.waveform.kind)
            throw UsageError("model was trained for " + std::string(to_string(model->waveform)) +
                             ", dataset uses " + std::string(to_string(d.waveform.kind)));
        params.model = &*model;
    }
    json hcfg{{"command", "eval"},
              {"method", o.method},
              {"threshold_m", o.threshold_m},
              {"dataset", d.meta.config_hash},
              {"model", model ? model->meta.config_hash : ""}};
    if (method == Method::radar)
        hcfg["radar"] = to_json(params.radar);
    const std::string hash = util::config_hash(hcfg.dump());

    EvalReport r = evaluate(method, d, params);
    r.meta = {d.meta.seed, hash};
    const fs::path dir = prepare_out_dir(o.out_dir);
    const fs::path report_path = dir / "report.json", cdf_path = dir / "cdf.csv";
    {
        auto out = open_out(report_path);
        out << report_to_json(r).dump(2) << '\n';
    }
    {
        auto out = open_out(cdf_path);
        write_cdf_csv(r, out);
    }
    json summary = report_to_json(r, false);
    summary["command"] = "eval";
    summary["report"] = report_path.string();
    summary["cdf"] = cdf_path.string();
    if (o.plot)
    {
        const std::string prov = provenance(r.meta.seed, hash);
        std::vector<std::string> plots{(dir / "cdf.svg").string(), (dir / "trajectory.svg").string()};
        plot_cdf(dir / "cdf.svg", {cdf_series(r)}, prov);
        plot_trajectory(dir / "trajectory.svg", d, r, prov);
        if (method == Method::radar)
        {
            const std::size_t frame = d.snapshots.size() / 2;
            plot_map(dir / "heatmap.svg", radar_frame_map(d, frame, params.radar), params.radar.detector.max_range_m,
                     prov + " frame=" + std::to_string(frame));
            plots.push_back((dir / "heatmap.svg").string());
        }
        summary["plots"] = plots;
    }
    emit(summary);
    return 0;
}

// ---------------------------------------------------------------- bench

struct BenchOptions
{
    std::string config;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> waveforms;
    std::vector<std::string> methods;
    std::optional<double> snr_db;
    std::optional<double> threshold_m;
    RadarFlags radar;
    std::string out_dir = ".";
    bool plot = false;
    bool save_models = false;
};

int cmd_bench(const BenchOptions &o)
{
    BenchConfig cfg;
    try
    {
        cfg = read_bench_config(o.config);
        if (o.seed)
            cfg.seed = *o.seed;
        if (!o.waveforms.empty())
        {
            cfg.waveforms.clear();
            for (const auto &w : o.waveforms)
                cfg.waveforms.push_back(parse_waveform_kind(w));
        }
        if (!o.methods.empty())
        {
            cfg.methods.clear();
            for (const auto &m : o.methods)
                cfg.methods.push_back(parse_method(m));
        }
        if (o.snr_db)
            cfg.sim.snr_db = *o.snr_db;
        if (o.threshold_m)
            cfg.threshold_m = *o.threshold_m;
        if (o.radar.k_background)
            cfg.radar.k_background = *o.radar.k_background;
        if (o.radar.zero_pad)
            cfg.radar.zero_pad = *o.radar.zero_pad;
        if (o.radar.gate_radius_m)
            cfg.radar.detector.gate_radius_m = *o.radar.gate_radius_m;
        if (o.radar.threshold_db)
            cfg.radar.detector.threshold_db_over_floor = *o.radar.threshold_db;
        if (o.radar.max_targets)
            cfg.radar.detector.max_targets = *o.radar.max_targets;
    }
    catch (const std::invalid_argument &e)
    {
        throw UsageError(e.what());
    }

    const BenchResult r = run_benchmark(cfg, [](const EvalReport &rep) {
        json j = report_to_json(rep, false);
        j["command"] = "bench";
        j["stage"] = "cell";
        emit(j);
    });

    const fs::path dir = prepare_out_dir(o.out_dir);
    const std::string prov = provenance(r.seed, r.config_hash);
    std::vector<std::string> files;
    {
        const fs::path p = dir / "bench_config.json";
        auto out = open_out(p);
        out << to_json(cfg).dump(2) << '\n';
        files.push_back(p.string());
    }
    json reports = json::array();
    for (const auto &rep : r.reports)
    {
        reports.push_back(report_to_json(rep));
        const std::string stem = std::string(to_string(rep.method)) + "_" + std::string(to_string(rep.waveform));
        const fs::path p = dir / ("cdf_" + stem + ".csv");
        auto out = open_out(p);
        write_cdf_csv(rep, out);
        files.push_back(p.string());
    }
    json checks = json::array();
    for (const auto &c : r.checks)
        checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    json table = json::array();
    if (r.reports.size() >= 2)
    {
        const ComparisonTable t = compare_report(r.reports);
        table = table_to_json(t);
        const fs::path p = dir / "table.csv";
        auto out = open_out(p);
        out << "# " << prov << '\n';
        write_table_csv(t, out);
        files.push_back(p.string());
    }
    {
        const fs::path p = dir / "bench_report.json";
        auto out = open_out(p);
        out << json{{"seed", r.seed}, {"config_hash", r.config_hash}, {"table", table}, {"checks", checks},
                    {"reports", reports}}
                   .dump(2)
            << '\n';
        files.push_back(p.string());
    }
    if (o.save_models)
        for (const auto &run : r.runs)
            if (run.trained)
            {
                const fs::path p = dir / ("model_" + std::string(to_string(run.waveform)) + ".csim");
                write_model(run.trained->model, p);
                files.push_back(p.string());
            }
    if (o.plot)
    {
        std::vector<util::Series> series;
        for (const auto &rep : r.reports)
            series.push_back(cdf_series(rep));
        plot_cdf(dir / "cdf.svg", series, prov);
        files.push_back((dir / "cdf.svg").string());
        for (const auto &run : r.runs)
            for (const auto &rep : r.reports)
                if (rep.waveform == run.waveform)
                {
                    const fs::path p = dir / ("trajectory_" + std::string(to_string(rep.method)) + "_" +
                                              std::string(to_string(rep.waveform)) + ".svg");
                    plot_trajectory(p, run.test, rep, prov);
                    files.push_back(p.string());
                }
    }
    for (const auto &c : r.checks)
        emit({{"command", "bench"}, {"check", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    emit({{"command", "bench"},
          {"table", table},
          {"files", files},
          {"seed", r.seed},
          {"config_hash", r.config_hash}});
    return 0;
}

// ---------------------------------------------------------------- plot

struct PlotOptions
{
    std::vector<std::string> cdf;
    std::optional<std::string> map;
    std::string out_dir = ".";
};

int cmd_plot(const PlotOptions &o)
{
    if (o.cdf.empty() && !o.map)
        throw UsageError("plot needs --cdf and/or --map inputs");
    const fs::path dir = prepare_out_dir(o.out_dir);
    std::vector<std::string> files;
    if (!o.cdf.empty())
    {
        std::vector<util::Series> series;
        for (const auto &p : o.cdf)
            series.push_back({fs::path(p).stem().string(), read_two_column_csv(p), "", true});
        plot_cdf(dir / "cdf.svg", series, "inputs: " + std::to_string(o.cdf.size()));
        files.push_back((dir / "cdf.svg").string());
    }
    if (o.map)
    {
        std::ifstream in(*o.map);
        if (!in)
            throw std::runtime_error(*o.map + ": cannot open");
        std::string line, comment;
        std::vector<double> ranges, sines;
        std::map<std::pair<double, double>, double> cells;
        std::size_t lineno = 0;
        while (std::getline(in, line))
        {
            ++lineno;
            if (line.rfind("#", 0) == 0)
            {
                comment = line.substr(1);
                continue;
            }
            if (line.empty() || line.rfind("range_m", 0) == 0)
                continue;
            double r = 0, s = 0, m = 0;
            char c1 = 0, c2 = 0;
            std::istringstream ss(line);
            if (!(ss >> r >> c1 >> s >> c2 >> m))
                throw std::runtime_error(*o.map + ":" + std::to_string(lineno) + ": expected range,sin_theta,magnitude");
            if (ranges.empty() || ranges.back() != r)
                ranges.push_back(r);
            if (ranges.size() == 1)
                sines.push_back(s);
            cells[{r, s}] = m;
        }
        if (ranges.empty() || sines.empty())
            throw std::runtime_error(*o.map + ": no map rows");
        std::vector<std::vector<double>> rows;
        double peak = 1e-300;
        for (double r : ranges)
        {
            std::vector<double> row;
            for (double s : sines)
            {
                row.push_back(cells[{r, s}]);
                peak = std::max(peak, row.back());
            }
            rows.push_back(row);
        }
        for (auto &row : rows)
            for (auto &v : row)
                v = 20.0 * std::log10(std::max(v, 1e-300) / peak);
        const double dr = ranges.size() > 1 ? ranges[1] - ranges[0] : 1.0;
        auto out = open_out(dir / "map.svg");
        util::write_heatmap(out, "Range-azimuth map [dB]", "sin(theta)", "range [m]", rows,
                            {sines.front(), sines.back(), 0.0, ranges.back() + dr}, -40.0, 0.0, comment);
        files.push_back((dir / "map.svg").string());
    }
    emit({{"command", "plot"}, {"files", files}});
    return 0;
}
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"csiloc: passive localization from OFDM channel state information"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "csiloc 1.0.0");

    SimulateOptions sim_o;
    auto *sim = app.add_subcommand("simulate", "simulate a CSI dataset from a scene file");
    sim->add_option("--scene", sim_o.scene, "scene JSON file")->required()->check(CLI::ExistingFile);
    sim->add_option("--waveform", sim_o.waveform, "waic, wifi100 or wifi40")
        ->check(CLI::IsMember({"waic", "wifi100", "wifi40"}));
    sim->add_option("--seed", sim_o.seed, "noise seed");
    sim->add_option("--snr-db", sim_o.snr_db, "signal-to-noise ratio in dB");
    sim->add_option("--out-dir", sim_o.out_dir, "output directory");
    sim->add_option("--out", sim_o.out_name, "dataset file name");
    sim->add_flag("--plot", sim_o.plot, "write an SVG of the ground-truth trajectory");

    TrainOptions tr_o;
    auto *tr = app.add_subcommand("train", "train the neural localizer");
    tr->add_option("--dataset", tr_o.datasets, "training dataset (repeatable)")->required()->check(CLI::ExistingFile);
    tr->add_option("--config", tr_o.config, "JSON training configuration")->check(CLI::ExistingFile);
    tr->add_option("--seed", tr_o.seed, "training seed");
    tr->add_option("--epochs", tr_o.epochs, "epoch count");
    tr->add_option("--lr", tr_o.learning_rate, "learning rate");
    tr->add_option("--batch-size", tr_o.batch_size, "mini-batch size");
    tr->add_option("--hidden", tr_o.hidden, "hidden layer sizes")->delimiter(',');
    tr->add_option("--optimizer", tr_o.optimizer, "sgd or adam")->check(CLI::IsMember({"sgd", "adam"}));
    tr->add_option("--wavelet-levels", tr_o.wavelet_levels, "wavelet background levels");
    tr->add_option("--history", tr_o.history, "wavelet background history in frames");
    tr->add_option("--feature-mode", tr_o.feature_mode, "real_imag or magnitude_phase");
    tr->add_option("--out-dir", tr_o.out_dir, "output directory");
    tr->add_flag("--plot", tr_o.plot, "write an SVG of the loss curves");

    InferOptions in_o;
    auto *inf = app.add_subcommand("infer", "run a localizer over a dataset");
    inf->add_option("--dataset", in_o.dataset, "dataset file")->required()->check(CLI::ExistingFile);
    inf->add_option("--method", in_o.method, "ann or radar")->check(CLI::IsMember({"ann", "radar"}));
    inf->add_option("--model", in_o.model, "model file (ann)")->check(CLI::ExistingFile);
    inf->add_option("--map-frame", in_o.map_frame, "frame exported as range-azimuth map (radar)");
    add_radar_flags(inf, in_o.radar);
    inf->add_option("--out-dir", in_o.out_dir, "output directory");
    inf->add_flag("--plot", in_o.plot, "write an SVG heatmap (radar)");

    EvalOptions ev_o;
    auto *ev = app.add_subcommand("eval", "evaluate a localization method against ground truth");
    ev->add_option("--dataset", ev_o.dataset, "dataset file with ground truth")->required()->check(CLI::ExistingFile);
    ev->add_option("--method", ev_o.method, "radar, ann or echo")->check(CLI::IsMember({"radar", "ann", "echo"}));
    ev->add_option("--model", ev_o.model, "model file (ann)")->check(CLI::ExistingFile);
    ev->add_option("--threshold-m", ev_o.threshold_m, "distancing threshold in meters");
    ev->add_option("--waveform", ev_o.waveform, "expected dataset waveform")
        ->check(CLI::IsMember({"waic", "wifi100", "wifi40"}));
    add_radar_flags(ev, ev_o.radar);
    ev->add_option("--out-dir", ev_o.out_dir, "output directory");
    ev->add_flag("--plot", ev_o.plot, "write SVG plots");

    BenchOptions be_o;
    auto *be = app.add_subcommand("bench", "run a method x waveform benchmark");
    be->add_option("--config", be_o.config, "benchmark JSON")->required()->check(CLI::ExistingFile);
    be->add_option("--seed", be_o.seed, "benchmark seed");
    be->add_option("--waveform", be_o.waveforms, "restrict to waveforms (repeatable)")
        ->check(CLI::IsMember({"waic", "wifi100", "wifi40"}));
    be->add_option("--method", be_o.methods, "restrict to methods (repeatable)")
        ->check(CLI::IsMember({"radar", "ann", "echo"}));
    be->add_option("--snr-db", be_o.snr_db, "signal-to-noise ratio in dB");
    be->add_option("--threshold-m", be_o.threshold_m, "distancing threshold in meters");
    add_radar_flags(be, be_o.radar);
    be->add_option("--out-dir", be_o.out_dir, "output directory");
    be->add_flag("--plot", be_o.plot, "write SVG plots");
    be->add_flag("--save-models", be_o.save_models, "write the trained models");

    PlotOptions pl_o;
    auto *pl = app.add_subcommand("plot", "render CSV outputs as SVG");
    pl->add_option("--cdf", pl_o.cdf, "CDF CSV (repeatable)")->check(CLI::ExistingFile);
    pl->add_option("--map", pl_o.map, "range-azimuth map CSV")->check(CLI::ExistingFile);
    pl->add_option("--out-dir", pl_o.out_dir, "output directory");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForVersion &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return 2;
    }

    try
    {
        if (*sim)
            return cmd_simulate(sim_o);
        if (*tr)
            return cmd_train(tr_o);
        if (*inf)
            return cmd_infer(in_o);
        if (*ev)
            return cmd_eval(ev_o);
        if (*be)
            return cmd_bench(be_o);
        if (*pl)
            return cmd_plot(pl_o);
    }
    catch (const UsageError &e)
    {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

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

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "csiloc/core/json_io.hpp"
#include "csiloc/eval/metrics.hpp"
#include "csiloc/nn/localizer.hpp"
#include "csiloc/radar/pipeline.hpp"

namespace csiloc
{
enum class Method
{
    radar,
    ann,
    echo // ground truth passed through; a perfect reference predictor
};

inline std::string_view to_string(Method m)
{
    switch (m)
    {
    case Method::radar:
        return "radar";
    case Method::ann:
        return "ann";
    case Method::echo:
        return "echo";
    }
    return "?";
}

inline Method parse_method(std::string_view s)
{
    if (s == "radar")
        return Method::radar;
    if (s == "ann")
        return Method::ann;
    if (s == "echo")
        return Method::echo;
    throw std::invalid_argument("unknown method '" + std::string(s) + "'");
}

struct EvalParams
{
    RadarParams radar;
    const LocalizerModel *model = nullptr; // required for Method::ann
    double threshold_m = 1.5;
};

struct EvalReport
{
    Method method = Method::radar;
    WaveformKind waveform = WaveformKind::waic;
    std::vector<double> frame_errors;  // mean matched error per frame with a match, meters
    std::vector<double> target_errors; // every matched target, meters
    double mean_error = 0.0;
    double median_error = 0.0;
    std::vector<std::pair<double, double>> cdf; // (error, cumulative fraction)
    std::optional<double> threshold_accuracy;   // over frames holding two targets
    double threshold_m = 1.5;
    std::size_t pair_frames = 0;
    std::size_t frames = 0;
    std::size_t missed_frames = 0; // truth present, nothing predicted
    std::size_t truth_targets = 0;
    std::size_t matched_targets = 0;
    std::size_t false_alarms = 0;
    double detection_rate = 0.0; // matched / truth targets
    std::vector<std::vector<Point2>> predictions;
    RunMeta meta;
};

inline double median_of(std::vector<double> v)
{
    if (v.empty())
        return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

inline std::vector<std::pair<double, double>> error_cdf(std::vector<double> errors)
{
    std::sort(errors.begin(), errors.end());
    std::vector<std::pair<double, double>> cdf;
    cdf.reserve(errors.size());
    for (std::size_t i = 0; i < errors.size(); ++i)
        cdf.emplace_back(errors[i], double(i + 1) / double(errors.size()));
    return cdf;
}

inline std::vector<std::vector<Point2>> method_predictions(Method method, const Dataset &dataset,
                                                           const EvalParams &params)
{
    std::vector<std::vector<Point2>> out;
    out.reserve(dataset.snapshots.size());
    switch (method)
    {
    case Method::echo:
        for (const auto &s : dataset.snapshots)
            out.push_back(*s.ground_truth);
        break;
    case Method::radar:
        for (const auto &frame : radar_localize(dataset, params.radar))
        {
            std::vector<Point2> p;
            for (const auto &d : frame)
                p.push_back(d.position);
            out.push_back(std::move(p));
        }
        break;
    case Method::ann:
        if (!params.model)
            throw std::invalid_argument("evaluate: method ann requires a model");
        for (auto &p : predict_dataset(*params.model, dataset))
            out.push_back(std::move(p.positions));
        break;
    }
    return out;
}

// Scores precomputed per-frame predictions against the dataset ground truth.
inline EvalReport score_predictions(Method method, const Dataset &dataset,
                                    std::vector<std::vector<Point2>> predictions, double threshold_m)
{
    if (!(threshold_m > 0.0))
        throw std::invalid_argument("evaluate: threshold must be positive");
    if (predictions.size() != dataset.snapshots.size())
        throw std::invalid_argument("evaluate: one prediction list per frame required");
    EvalReport r;
    r.method = method;
    r.waveform = dataset.waveform.kind;
    r.threshold_m = threshold_m;
    r.frames = dataset.snapshots.size();
    r.meta = dataset.meta;
    std::size_t correct = 0;
    for (std::size_t t = 0; t < r.frames; ++t)
    {
        const auto &truth = *dataset.snapshots[t].ground_truth;
        const auto &pred = predictions[t];
        const MatchResult m = match_targets(pred, truth);
        r.truth_targets += truth.size();
        r.matched_targets += m.pairs.size();
        r.false_alarms += m.false_alarms.size();
        if (!truth.empty() && pred.empty())
            ++r.missed_frames;
        if (!m.errors.empty())
        {
            r.target_errors.insert(r.target_errors.end(), m.errors.begin(), m.errors.end());
            r.frame_errors.push_back(m.total_error / double(m.errors.size()));
        }
        if (truth.size() == 2)
        {
            ++r.pair_frames;
            if (pred.size() >= 2)
                correct += std::size_t(threshold_accuracy({pred[0], pred[1]}, {truth[0], truth[1]}, threshold_m));
        }
    }
    if (!r.frame_errors.empty())
    {
        double s = 0.0;
        for (double e : r.frame_errors)
            s += e;
        r.mean_error = s / double(r.frame_errors.size());
        r.median_error = median_of(r.frame_errors);
    }
    r.cdf = error_cdf(r.frame_errors);
    r.detection_rate = r.truth_targets ? double(r.matched_targets) / double(r.truth_targets) : 1.0;
    if (r.pair_frames)
        r.threshold_accuracy = double(correct) / double(r.pair_frames);
    r.predictions = std::move(predictions);
    return r;
}

// Runs one localization method over every frame and aggregates the errors.
// Frames without any prediction count as misses and do not enter the mean.
inline EvalReport evaluate(Method method, const Dataset &dataset, const EvalParams &params = {})
{
    if (!dataset.has_ground_truth())
        throw std::invalid_argument("evaluate: dataset lacks ground truth");
    if (method == Method::ann)
    {
        if (!params.model)
            throw std::invalid_argument("evaluate: method ann requires a model");
        check_compatible(*params.model, dataset);
    }
    if (method == Method::radar && dataset.array.size() == 0)
        throw std::invalid_argument("evaluate: radar needs an antenna array");
    return score_predictions(method, dataset, method_predictions(method, dataset, params), params.threshold_m);
}

inline json report_to_json(const EvalReport &r, bool include_frames = true)
{
    json j;
    j["method"] = std::string(to_string(r.method));
    j["waveform"] = std::string(to_string(r.waveform));
    j["frames"] = r.frames;
    j["mean_error_m"] = r.mean_error;
    j["median_error_m"] = r.median_error;
    j["missed_frames"] = r.missed_frames;
    j["truth_targets"] = r.truth_targets;
    j["matched_targets"] = r.matched_targets;
    j["false_alarms"] = r.false_alarms;
    j["detection_rate"] = r.detection_rate;
    j["threshold_m"] = r.threshold_m;
    j["pair_frames"] = r.pair_frames;
    j["threshold_accuracy"] = r.threshold_accuracy ? json(*r.threshold_accuracy) : json(nullptr);
    j["seed"] = r.meta.seed;
    j["config_hash"] = r.meta.config_hash;
    if (include_frames)
        j["frame_errors_m"] = r.frame_errors;
    return j;
}

inline void write_cdf_csv(const EvalReport &r, std::ostream &out)
{
    out << "# method=" << to_string(r.method) << " waveform=" << to_string(r.waveform) << " seed=" << r.meta.seed
        << " config_hash=" << r.meta.config_hash << '\n';
    out << "error_m,cumulative_fraction\n";
    out.precision(9);
    for (const auto &[e, f] : r.cdf)
        out << e << ',' << f << '\n';
}

// Method x waveform table of mean and median errors. Missing combinations
// stay empty and print as unavailable.
struct ComparisonTable
{
    struct Cell
    {
        double mean_error = 0.0;
        double median_error = 0.0;
        std::optional<double> threshold_accuracy;
    };

    std::vector<Method> methods;
    std::vector<WaveformKind> waveforms;
    std::map<std::pair<Method, WaveformKind>, Cell> cells;

    std::optional<Cell> at(Method m, WaveformKind w) const
    {
        auto it = cells.find({m, w});
        if (it == cells.end())
            return std::nullopt;
        return it->second;
    }
};

inline ComparisonTable compare_report(const std::vector<EvalReport> &reports)
{
    if (reports.size() < 2)
        throw std::invalid_argument("compare_report: need at least two reports");
    ComparisonTable t;
    for (const auto &r : reports)
    {
        if (std::find(t.methods.begin(), t.methods.end(), r.method) == t.methods.end())
            t.methods.push_back(r.method);
        if (std::find(t.waveforms.begin(), t.waveforms.end(), r.waveform) == t.waveforms.end())
            t.waveforms.push_back(r.waveform);
        t.cells[{r.method, r.waveform}] = {r.mean_error, r.median_error, r.threshold_accuracy};
    }
    std::sort(t.methods.begin(), t.methods.end());
    std::sort(t.waveforms.begin(), t.waveforms.end());
    return t;
}

inline void write_table_csv(const ComparisonTable &t, std::ostream &out)
{
    out << "method";
    for (auto w : t.waveforms)
        out << ',' << to_string(w) << "_mean_m," << to_string(w) << "_median_m";
    out << '\n';
    out.precision(9);
    for (auto m : t.methods)
    {
        out << to_string(m);
        for (auto w : t.waveforms)
        {
            if (auto c = t.at(m, w))
                out << ',' << c->mean_error << ',' << c->median_error;
            else
                out << ",unavailable,unavailable";
        }
        out << '\n';
    }
}

inline json table_to_json(const ComparisonTable &t)
{
    json rows = json::array();
    for (auto m : t.methods)
    {
        json row;
        row["method"] = std::string(to_string(m));
        for (auto w : t.waveforms)
        {
            const std::string key(to_string(w));
            if (auto c = t.at(m, w))
            {
                json cell{{"mean_error_m", c->mean_error}, {"median_error_m", c->median_error}};
                if (c->threshold_accuracy)
                    cell["threshold_accuracy"] = *c->threshold_accuracy;
                row[key] = cell;
            }
            else
                row[key] = "unavailable";
        }
        rows.push_back(row);
    }
    return rows;
}
} // namespace csiloc

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
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "csiloc/nn/localizer.hpp"

namespace csiloc
{
enum class Optimizer
{
    sgd,
    adam
};

inline std::string_view to_string(Optimizer o) { return o == Optimizer::sgd ? "sgd" : "adam"; }

inline Optimizer parse_optimizer(std::string_view s)
{
    if (s == "sgd")
        return Optimizer::sgd;
    if (s == "adam")
        return Optimizer::adam;
    throw std::invalid_argument("unknown optimizer '" + std::string(s) + "'");
}

struct TrainConfig
{
    std::vector<std::size_t> hidden{512, 256, 128};
    double learning_rate = 1e-3;
    std::size_t batch_size = 32;
    std::size_t epochs = 30;
    LossWeights weights;
    std::uint64_t seed = 1;
    double validation_fraction = 0.2;
    Optimizer optimizer = Optimizer::sgd;
    SlotBinding binding = SlotBinding::canonical;
    FeatureMode feature_mode = FeatureMode::real_imag;
    std::size_t wavelet_levels = 3;
    std::size_t history = 32;

    void validate() const
    {
        if (hidden.empty() || std::any_of(hidden.begin(), hidden.end(), [](std::size_t h) { return h == 0; }))
            throw std::invalid_argument("train: hidden layer sizes must be positive");
        if (!(learning_rate > 0.0) || !std::isfinite(learning_rate))
            throw std::invalid_argument("train: learning rate must be positive");
        if (batch_size == 0)
            throw std::invalid_argument("train: batch size must be positive");
        if (epochs == 0)
            throw std::invalid_argument("train: epoch count must be positive");
        if (!(weights.count > 0.0) || !(weights.coord > 0.0))
            throw std::invalid_argument("train: loss weights must be positive");
        if (!(validation_fraction > 0.0 && validation_fraction < 1.0))
            throw std::invalid_argument("train: validation fraction must lie in (0, 1)");
        if (wavelet_levels == 0 || history < (std::size_t{1} << wavelet_levels))
            throw std::invalid_argument("train: history must hold at least 2^levels frames");
    }
};

// Unstandardized features (one column per sample) with truth in meters.
struct TrainingSet
{
    Eigen::MatrixXf features;
    std::vector<std::vector<Point2>> truth;

    std::size_t size() const { return truth.size(); }
};

inline TrainingSet make_training_set(std::span<const Dataset> datasets, const TrainConfig &cfg)
{
    TrainingSet set;
    std::size_t total = 0;
    for (const auto &d : datasets)
    {
        if (!d.has_ground_truth())
            throw std::invalid_argument("train: dataset lacks ground truth");
        total += d.snapshots.size();
    }
    const Dataset &first = datasets.front();
    const std::size_t len = feature_length(first.snapshots.front().csi);
    set.features.resize(Eigen::Index(len), Eigen::Index(total));
    set.truth.reserve(total);
    Eigen::Index col = 0;
    for (const auto &d : datasets)
    {
        if (d.waveform.kind != first.waveform.kind || !(d.region == first.region) || d.n_p_max != first.n_p_max)
            throw std::invalid_argument("train: datasets differ in waveform, region or N_P");
        const Eigen::MatrixXf x = dataset_features(d, cfg.history, cfg.wavelet_levels, cfg.feature_mode);
        if (std::size_t(x.rows()) != len)
            throw std::invalid_argument("train: datasets differ in tensor shape");
        set.features.middleCols(col, x.cols()) = x;
        col += x.cols();
        for (const auto &s : d.snapshots)
        {
            if (s.ground_truth->size() > d.n_p_max)
                throw std::invalid_argument("train: frame has more targets than N_P");
            set.truth.push_back(*s.ground_truth);
        }
    }
    return set;
}

struct TrainLogRow
{
    std::size_t epoch = 0;
    double train_loss = 0.0;
    double validation_loss = 0.0;
    double validation_mean_error = 0.0; // meters
};

struct TrainResult
{
    LocalizerModel model;
    std::vector<TrainLogRow> log;
    std::size_t best_epoch = 0;
    std::vector<std::size_t> train_indices;      // samples used for updates, ascending
    std::vector<std::size_t> validation_indices; // held-out samples, ascending
};

inline void write_train_log_csv(const std::vector<TrainLogRow> &log, std::ostream &out, const RunMeta &meta)
{
    out << "# seed=" << meta.seed << " config_hash=" << meta.config_hash << '\n';
    out << "epoch,train_loss,validation_loss,validation_mean_error_m\n";
    out.precision(9);
    for (const auto &r : log)
        out << r.epoch << ',' << r.train_loss << ',' << r.validation_loss << ',' << r.validation_mean_error << '\n';
}

namespace detail
{
struct AdamState
{
    std::vector<Eigen::MatrixXf> mw, vw;
    std::vector<Eigen::VectorXf> mb, vb;
    std::size_t step = 0;

    explicit AdamState(const Mlp<float> &net)
    {
        for (std::size_t l = 0; l < net.layer_count(); ++l)
        {
            mw.push_back(Eigen::MatrixXf::Zero(net.weights()[l].rows(), net.weights()[l].cols()));
            vw.push_back(mw.back());
            mb.push_back(Eigen::VectorXf::Zero(net.biases()[l].size()));
            vb.push_back(mb.back());
        }
    }
};

inline void apply_update(Mlp<float> &net, const Mlp<float>::Gradients &g, const TrainConfig &cfg, AdamState &adam)
{
    const float lr = float(cfg.learning_rate);
    if (cfg.optimizer == Optimizer::sgd)
    {
        for (std::size_t l = 0; l < net.layer_count(); ++l)
        {
            net.weights()[l] -= lr * g.weights[l];
            net.biases()[l] -= lr * g.biases[l];
        }
        return;
    }
    constexpr float b1 = 0.9f, b2 = 0.999f, eps = 1e-8f;
    ++adam.step;
    const float c1 = 1.0f - std::pow(b1, float(adam.step));
    const float c2 = 1.0f - std::pow(b2, float(adam.step));
    auto step = [&](auto &param, const auto &grad, auto &m, auto &v) {
        m = b1 * m + (1.0f - b1) * grad;
        v = b2 * v + (1.0f - b2) * grad.cwiseAbs2();
        param.array() -= lr * (m.array() / c1) / ((v.array() / c2).sqrt() + eps);
    };
    for (std::size_t l = 0; l < net.layer_count(); ++l)
    {
        step(net.weights()[l], g.weights[l], adam.mw[l], adam.vw[l]);
        step(net.biases()[l], g.biases[l], adam.mb[l], adam.vb[l]);
    }
}

inline Eigen::MatrixXf gather_columns(const Eigen::MatrixXf &x, std::span<const std::size_t> idx)
{
    Eigen::MatrixXf out(x.rows(), Eigen::Index(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i)
        out.col(Eigen::Index(i)) = x.col(Eigen::Index(idx[i]));
    return out;
}

// Truth in normalized units; canonical binding pre-sorts in meters.
inline std::vector<Point2> normalized_truth(const std::vector<Point2> &truth, const Region &region)
{
    std::vector<Point2> out;
    out.reserve(truth.size());
    for (const auto &p : truth)
        out.push_back(region.normalize(p));
    return out;
}

// Mean loss and mean per-target error (meters) of the count-correct slots
// over the given samples.
inline std::pair<double, double> evaluate_split(const LocalizerModel &model, const Eigen::MatrixXf &x,
                                                const std::vector<std::vector<Point2>> &truth_m,
                                                std::span<const std::size_t> idx, const LossWeights &weights,
                                                SlotBinding binding)
{
    constexpr std::size_t chunk = 256;
    double loss = 0.0, err = 0.0;
    std::size_t err_n = 0;
    for (std::size_t b = 0; b < idx.size(); b += chunk)
    {
        const auto part = idx.subspan(b, std::min(chunk, idx.size() - b));
        const Eigen::MatrixXf y = model.net.forward(gather_columns(x, part));
        for (std::size_t i = 0; i < part.size(); ++i)
        {
            const auto &t_m = truth_m[part[i]];
            const Eigen::VectorXf col = y.col(Eigen::Index(i));
            loss += sample_loss<float>(col, normalized_truth(t_m, model.region), model.head, weights, binding);
            if (t_m.empty())
                continue;
            const auto r = decode_output(model, col);
            const auto sorted = binding == SlotBinding::canonical ? canonical_order(t_m) : t_m;
            std::vector<float> coords(2 * model.head.n_p);
            for (std::size_t s = 0; s < model.head.n_p; ++s)
            {
                const Point2 q = model.region.normalize(r.coords[s]);
                coords[2 * s] = float(q.x);
                coords[2 * s + 1] = float(q.y);
            }
            const auto bound = bind_slots(coords.data(), normalized_truth(sorted, model.region), binding);
            for (std::size_t s = 0; s < sorted.size(); ++s)
                err += distance(r.coords[s], sorted[bound[s]]);
            err_n += sorted.size();
        }
    }
    return {loss / double(std::max<std::size_t>(idx.size(), 1)), err_n ? err / double(err_n) : 0.0};
}
} // namespace detail

// Mini-batch training with backpropagation. Returns the model with the
// lowest validation loss; the result depends only on (data, cfg).
inline TrainResult train(const TrainingSet &set, const Dataset &reference, const TrainConfig &cfg)
{
    cfg.validate();
    if (set.size() < 2)
        throw std::invalid_argument("train: need at least two samples");
    using Rng = std::mt19937_64;
    Rng rng(cfg.seed);

    std::vector<std::size_t> order(set.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    const std::size_t n_val =
        std::clamp<std::size_t>(std::size_t(std::llround(cfg.validation_fraction * double(set.size()))), 1,
                                set.size() - 1);
    std::vector<std::size_t> val(order.begin(), order.begin() + std::ptrdiff_t(n_val));
    std::vector<std::size_t> tr(order.begin() + std::ptrdiff_t(n_val), order.end());
    std::sort(val.begin(), val.end());

    TrainResult result;
    LocalizerModel &model = result.model;
    model.head.n_p = reference.n_p_max;
    model.region = reference.region;
    model.waveform = reference.waveform.kind;
    model.feature_mode = cfg.feature_mode;
    model.wavelet_levels = cfg.wavelet_levels;
    model.history = cfg.history;
    model.meta = reference.meta;
    model.meta.seed = cfg.seed;

    std::vector<Eigen::Index> tr_cols(tr.begin(), tr.end());
    model.stats = fit_feature_stats(set.features, tr_cols);
    Eigen::MatrixXf x = set.features;
    model.stats.apply_columns(x);

    std::vector<std::size_t> sizes{std::size_t(x.rows())};
    sizes.insert(sizes.end(), cfg.hidden.begin(), cfg.hidden.end());
    sizes.push_back(model.head.output_size());
    model.net = Mlp<float>(sizes);
    model.net.initialize(rng);

    std::vector<std::vector<Point2>> truth_n;
    truth_n.reserve(set.size());
    for (const auto &t : set.truth)
        truth_n.push_back(detail::normalized_truth(cfg.binding == SlotBinding::canonical ? canonical_order(t) : t,
                                                   model.region));

    detail::AdamState adam(model.net);
    Mlp<float> best = model.net;
    double best_val = std::numeric_limits<double>::infinity();
    Mlp<float>::Cache cache;
    Eigen::MatrixXf grad;
    for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch)
    {
        std::shuffle(tr.begin(), tr.end(), rng);
        double epoch_loss = 0.0;
        for (std::size_t b = 0; b < tr.size(); b += cfg.batch_size)
        {
            const auto idx = std::span<const std::size_t>(tr).subspan(b, std::min(cfg.batch_size, tr.size() - b));
            std::vector<std::vector<Point2>> bt;
            bt.reserve(idx.size());
            for (auto i : idx)
                bt.push_back(truth_n[i]);
            const Eigen::MatrixXf out = model.net.forward(detail::gather_columns(x, idx), cache);
            epoch_loss += batch_loss<float>(out, bt, model.head, cfg.weights, cfg.binding, &grad) * double(idx.size());
            detail::apply_update(model.net, model.net.backward(cache, grad), cfg, adam);
        }
        TrainLogRow row;
        row.epoch = epoch;
        row.train_loss = epoch_loss / double(tr.size());
        std::tie(row.validation_loss, row.validation_mean_error) =
            detail::evaluate_split(model, x, set.truth, val, cfg.weights, cfg.binding);
        result.log.push_back(row);
        if (row.validation_loss < best_val)
        {
            best_val = row.validation_loss;
            best = model.net;
            result.best_epoch = epoch;
        }
    }
    model.net = std::move(best);
    result.validation_indices = std::move(val);
    result.train_indices = std::move(tr);
    std::sort(result.train_indices.begin(), result.train_indices.end());
    return result;
}

inline TrainResult train(std::span<const Dataset> datasets, const TrainConfig &cfg)
{
    cfg.validate();
    if (datasets.empty())
        throw std::invalid_argument("train: no datasets");
    return train(make_training_set(datasets, cfg), datasets.front(), cfg);
}

inline TrainResult train(const Dataset &dataset, const TrainConfig &cfg)
{
    return train(std::span<const Dataset>(&dataset, 1), cfg);
}
} // namespace csiloc

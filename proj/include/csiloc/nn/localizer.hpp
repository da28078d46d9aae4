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
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "csiloc/core/csi.hpp"
#include "csiloc/nn/features.hpp"
#include "csiloc/nn/loss.hpp"
#include "csiloc/nn/mlp.hpp"
#include "csiloc/nn/wavelet.hpp"

namespace csiloc
{
struct LocalizerModel
{
    Mlp<float> net;
    HeadLayout head;
    FeatureStats stats;
    FeatureMode feature_mode = FeatureMode::real_imag;
    std::size_t wavelet_levels = 3;
    std::size_t history = 32;
    Region region;
    WaveformKind waveform = WaveformKind::waic;
    RunMeta meta;

    std::size_t input_size() const { return net.input_size(); }

    void validate() const
    {
        if (net.layer_count() == 0)
            throw std::invalid_argument("LocalizerModel: network has no layers");
        if (net.output_size() != head.output_size())
            throw std::invalid_argument("LocalizerModel: output size does not match head layout");
        if (std::size_t(stats.size()) != net.input_size() || stats.stddev.size() != stats.mean.size())
            throw std::invalid_argument("LocalizerModel: normalization statistics do not match input size");
        if (!region.valid())
            throw std::invalid_argument("LocalizerModel: invalid region");
    }
};

struct ForwardResult
{
    Eigen::VectorXd count_probs; // over 0..N_P
    std::vector<Point2> coords;  // N_P slots, meters, clamped to the region
};

struct Prediction
{
    std::size_t count = 0;
    std::vector<Point2> positions;
    Eigen::VectorXd count_probs;
};

inline ForwardResult decode_output(const LocalizerModel &model, const Eigen::VectorXf &out)
{
    ForwardResult r;
    r.count_probs = softmax(out.head(Eigen::Index(model.head.count_size())));
    r.coords.reserve(model.head.n_p);
    for (std::size_t s = 0; s < model.head.n_p; ++s)
    {
        const auto at = Eigen::Index(model.head.coord_offset() + 2 * s);
        const Point2 q{double(out(at)), double(out(at + 1))};
        r.coords.push_back(model.region.clamp(model.region.denormalize(q)));
    }
    return r;
}

// Features must already be standardized.
inline ForwardResult forward(const LocalizerModel &model, const FeatureVector &features)
{
    if (std::size_t(features.size()) != model.input_size())
        throw std::invalid_argument("forward: feature length does not match model input");
    const Eigen::MatrixXf out = model.net.forward(features.cast<float>());
    return decode_output(model, out.col(0));
}

inline Prediction to_prediction(ForwardResult r)
{
    Prediction p;
    Eigen::Index best = 0;
    r.count_probs.maxCoeff(&best);
    p.count = std::size_t(best);
    p.positions.assign(r.coords.begin(), r.coords.begin() + std::ptrdiff_t(p.count));
    p.count_probs = std::move(r.count_probs);
    return p;
}

// `history` holds the frames preceding `snapshot`, oldest first.
inline Prediction predict(const LocalizerModel &model, const CsiSnapshot &snapshot,
                          std::span<const CsiSnapshot> history)
{
    const CsiTensor bg = wavelet_background(history, model.wavelet_levels);
    return to_prediction(forward(model, extract_features(snapshot, bg, model.stats, model.feature_mode)));
}

// Frames whose low-passed series serves as background for frame t, in
// filter order (the last entry is nearest to t). Uses the h preceding frames;
// near the start of a recording the following frames are used in reverse.
inline std::vector<std::size_t> history_indices(std::size_t t, std::size_t n, std::size_t h, std::size_t min_len)
{
    if (t >= n)
        throw std::out_of_range("history_indices: frame index out of range");
    std::vector<std::size_t> idx;
    const std::size_t before = t;
    const std::size_t after = n - t - 1;
    if (before >= h || (before >= after && before >= min_len))
    {
        const std::size_t len = std::min(before, h);
        for (std::size_t i = t - len; i < t; ++i)
            idx.push_back(i);
    }
    else
    {
        const std::size_t len = std::min(after, h);
        for (std::size_t i = t + len; i > t; --i)
            idx.push_back(i);
    }
    if (idx.size() < min_len)
        throw std::invalid_argument("history_indices: recording too short for the wavelet history");
    return idx;
}

inline CsiTensor frame_background(const Dataset &dataset, std::size_t t, std::size_t history, std::size_t levels)
{
    const auto idx = history_indices(t, dataset.snapshots.size(), history, std::size_t{1} << levels);
    std::vector<const CsiTensor *> ptrs;
    ptrs.reserve(idx.size());
    for (auto i : idx)
        ptrs.push_back(&dataset.snapshots[i].csi);
    return wavelet_background(std::span<const CsiTensor *const>(ptrs), levels);
}

// Unstandardized features, one column per frame.
inline Eigen::MatrixXf dataset_features(const Dataset &dataset, std::size_t history, std::size_t levels,
                                        FeatureMode mode)
{
    if (dataset.snapshots.empty())
        return {};
    const std::size_t len = feature_length(dataset.snapshots.front().csi);
    Eigen::MatrixXf x(Eigen::Index(len), Eigen::Index(dataset.snapshots.size()));
    for (std::size_t t = 0; t < dataset.snapshots.size(); ++t)
    {
        const CsiTensor bg = frame_background(dataset, t, history, levels);
        x.col(Eigen::Index(t)) = raw_features(dataset.snapshots[t].csi, bg, mode).cast<float>();
    }
    return x;
}

inline void check_compatible(const LocalizerModel &model, const Dataset &dataset)
{
    model.validate();
    if (dataset.waveform.kind != model.waveform)
        throw std::invalid_argument("localizer: model trained for waveform " + std::string(to_string(model.waveform)) +
                                    ", dataset uses " + std::string(to_string(dataset.waveform.kind)));
    if (!dataset.snapshots.empty() && feature_length(dataset.snapshots.front().csi) != model.input_size())
        throw std::invalid_argument("localizer: dataset tensor shape does not match model input");
}

inline std::vector<Prediction> predict_dataset(const LocalizerModel &model, const Dataset &dataset)
{
    check_compatible(model, dataset);
    std::vector<Prediction> out;
    if (dataset.snapshots.empty())
        return out;
    Eigen::MatrixXf x = dataset_features(dataset, model.history, model.wavelet_levels, model.feature_mode);
    model.stats.apply_columns(x);
    const Eigen::MatrixXf y = model.net.forward(x);
    out.reserve(dataset.snapshots.size());
    for (Eigen::Index c = 0; c < y.cols(); ++c)
        out.push_back(to_prediction(decode_output(model, y.col(c))));
    return out;
}
} // namespace csiloc

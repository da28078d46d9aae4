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
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "csiloc/core/json_io.hpp"
#include "csiloc/nn/localizer.hpp"
#include "csiloc/util/binary.hpp"

namespace csiloc
{
class ModelFormatError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

inline constexpr const char *kModelFormat = "csiloc-model";
inline constexpr int kModelVersion = 1;

// File layout: one JSON header line, then for each layer the weight matrix
// (row-major) followed by the bias vector, all as little-endian float32.
inline void write_model(const LocalizerModel &m, std::ostream &out)
{
    m.validate();
    json h;
    h["format"] = kModelFormat;
    h["version"] = kModelVersion;
    h["layer_sizes"] = m.net.layer_sizes();
    h["n_p"] = m.head.n_p;
    h["region"] = to_json_region(m.region);
    h["waveform"] = std::string(to_string(m.waveform));
    h["feature_mode"] = std::string(to_string(m.feature_mode));
    h["wavelet_levels"] = m.wavelet_levels;
    h["history"] = m.history;
    h["feature_mean"] = std::vector<double>(m.stats.mean.data(), m.stats.mean.data() + m.stats.mean.size());
    h["feature_std"] = std::vector<double>(m.stats.stddev.data(), m.stats.stddev.data() + m.stats.stddev.size());
    h["seed"] = m.meta.seed;
    h["config_hash"] = m.meta.config_hash;
    out << h.dump() << '\n';

    std::vector<char> buf;
    for (std::size_t l = 0; l < m.net.layer_count(); ++l)
    {
        const auto &w = m.net.weights()[l];
        const auto &b = m.net.biases()[l];
        buf.clear();
        buf.reserve(std::size_t(w.size() + b.size()) * 4);
        for (Eigen::Index r = 0; r < w.rows(); ++r)
            for (Eigen::Index c = 0; c < w.cols(); ++c)
                util::append_f32_le(buf, w(r, c));
        for (Eigen::Index r = 0; r < b.size(); ++r)
            util::append_f32_le(buf, b(r));
        out.write(buf.data(), std::streamsize(buf.size()));
    }
    if (!out)
        throw std::runtime_error("write_model: stream error");
}

inline void write_model(const LocalizerModel &m, const std::filesystem::path &path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_model(m, out);
}

inline LocalizerModel read_model(std::istream &in)
{
    std::string line;
    if (!std::getline(in, line))
        throw ModelFormatError("model file: missing header");
    LocalizerModel m;
    try
    {
        const json h = json::parse(line);
        if (h.at("format") != kModelFormat || h.at("version") != kModelVersion)
            throw ModelFormatError("model file: unsupported format or version");
        m.net = Mlp<float>(h.at("layer_sizes").get<std::vector<std::size_t>>());
        m.head.n_p = h.at("n_p").get<std::size_t>();
        m.region = region_from_json(h.at("region"));
        m.waveform = parse_waveform_kind(h.at("waveform").get<std::string>());
        m.feature_mode = parse_feature_mode(h.at("feature_mode").get<std::string>());
        m.wavelet_levels = h.at("wavelet_levels").get<std::size_t>();
        m.history = h.at("history").get<std::size_t>();
        const auto mean = h.at("feature_mean").get<std::vector<double>>();
        const auto sd = h.at("feature_std").get<std::vector<double>>();
        m.stats.mean = Eigen::Map<const Eigen::VectorXd>(mean.data(), Eigen::Index(mean.size()));
        m.stats.stddev = Eigen::Map<const Eigen::VectorXd>(sd.data(), Eigen::Index(sd.size()));
        m.meta.seed = h.at("seed").get<std::uint64_t>();
        m.meta.config_hash = h.at("config_hash").get<std::string>();
    }
    catch (const json::exception &e)
    {
        throw ModelFormatError(std::string("model file: malformed header: ") + e.what());
    }
    catch (const std::invalid_argument &e)
    {
        throw ModelFormatError(std::string("model file: ") + e.what());
    }

    std::vector<char> buf;
    for (std::size_t l = 0; l < m.net.layer_count(); ++l)
    {
        auto &w = m.net.weights()[l];
        auto &b = m.net.biases()[l];
        const std::size_t n = std::size_t(w.size() + b.size()) * 4;
        if (util::read_block(in, buf, n) != n)
            throw ModelFormatError("model file: truncated weight block");
        const char *p = buf.data();
        for (Eigen::Index r = 0; r < w.rows(); ++r)
            for (Eigen::Index c = 0; c < w.cols(); ++c, p += 4)
                w(r, c) = util::f32_from_le(p);
        for (Eigen::Index r = 0; r < b.size(); ++r, p += 4)
            b(r) = util::f32_from_le(p);
    }
    try
    {
        m.validate();
    }
    catch (const std::invalid_argument &e)
    {
        throw ModelFormatError(std::string("model file: ") + e.what());
    }
    return m;
}

inline LocalizerModel read_model(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    return read_model(in);
}
} // namespace csiloc

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

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "csiloc/core/geometry.hpp"
#include "csiloc/core/waveform.hpp"

namespace csiloc
{
using cd = std::complex<double>;

// Dense N_TX x N_RX x N_C tensor, row-major in (tx, rx, subcarrier).
class CsiTensor
{
  public:
    CsiTensor() = default;
    CsiTensor(std::size_t n_tx, std::size_t n_rx, std::size_t n_c)
        : n_tx_(n_tx), n_rx_(n_rx), n_c_(n_c), data_(n_tx * n_rx * n_c)
    {
    }

    std::size_t n_tx() const { return n_tx_; }
    std::size_t n_rx() const { return n_rx_; }
    std::size_t n_c() const { return n_c_; }
    std::size_t size() const { return data_.size(); }

    cd &operator()(std::size_t tx, std::size_t rx, std::size_t k) { return data_[(tx * n_rx_ + rx) * n_c_ + k]; }
    const cd &operator()(std::size_t tx, std::size_t rx, std::size_t k) const
    {
        return data_[(tx * n_rx_ + rx) * n_c_ + k];
    }

    std::vector<cd> &data() { return data_; }
    const std::vector<cd> &data() const { return data_; }

    bool same_shape(const CsiTensor &o) const { return n_tx_ == o.n_tx_ && n_rx_ == o.n_rx_ && n_c_ == o.n_c_; }

    bool all_finite() const
    {
        for (const auto &v : data_)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                return false;
        return true;
    }

    double energy() const
    {
        double e = 0.0;
        for (const auto &v : data_)
            e += std::norm(v);
        return e;
    }

    CsiTensor &operator+=(const CsiTensor &o)
    {
        require_same_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i)
            data_[i] += o.data_[i];
        return *this;
    }
    CsiTensor &operator-=(const CsiTensor &o)
    {
        require_same_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i)
            data_[i] -= o.data_[i];
        return *this;
    }
    friend CsiTensor operator+(CsiTensor a, const CsiTensor &b) { return a += b; }
    friend CsiTensor operator-(CsiTensor a, const CsiTensor &b) { return a -= b; }

    // Rounds every component to float32, the precision of the dataset file.
    void quantize_to_float()
    {
        for (auto &v : data_)
            v = cd(double(float(v.real())), double(float(v.imag())));
    }

    friend bool operator==(const CsiTensor &, const CsiTensor &) = default;

  private:
    void require_same_shape(const CsiTensor &o) const
    {
        if (!same_shape(o))
            throw std::invalid_argument("CsiTensor: shape mismatch");
    }

    std::size_t n_tx_ = 0;
    std::size_t n_rx_ = 0;
    std::size_t n_c_ = 0;
    std::vector<cd> data_;
};

struct CsiSnapshot
{
    double timestamp = 0.0; // seconds, simulated clock
    CsiTensor csi;
    std::string source_id = "ap0";
    std::optional<std::vector<Point2>> ground_truth;

    friend bool operator==(const CsiSnapshot &, const CsiSnapshot &) = default;
};

struct Scatterer
{
    Point2 position;
    cd reflectivity{1.0, 0.0};

    friend bool operator==(const Scatterer &, const Scatterer &) = default;
};

struct Scene
{
    AntennaArray array;
    std::vector<Scatterer> static_scatterers;
    std::vector<Scatterer> targets;
    Region region;

    void validate(std::size_t max_targets) const
    {
        if (!region.valid())
            throw std::invalid_argument("scene: empty region");
        if (array.size() == 0)
            throw std::invalid_argument("scene: antenna array has no elements");
        if (targets.size() > max_targets)
            throw std::invalid_argument("scene: more targets than the configured maximum");
        for (const auto &s : static_scatterers)
            if (!region.contains(s.position))
                throw std::invalid_argument("scene: static scatterer outside the region");
        for (const auto &t : targets)
            if (!region.contains(t.position))
                throw std::invalid_argument("scene: target outside the region");
    }
};

// Provenance recorded in every file the toolkit writes.
struct RunMeta
{
    std::uint64_t seed = 0;
    std::string config_hash;

    friend bool operator==(const RunMeta &, const RunMeta &) = default;
};

struct Dataset
{
    WaveformConfig waveform;
    AntennaArray array;
    Region region;
    std::vector<CsiSnapshot> snapshots;
    std::size_t n_p_max = 1;
    RunMeta meta;

    bool has_ground_truth() const
    {
        if (snapshots.empty())
            return false;
        for (const auto &s : snapshots)
            if (!s.ground_truth)
                return false;
        return true;
    }

    // Timestamps must increase strictly within each source.
    void validate() const
    {
        waveform.validate();
        std::map<std::string, double> last;
        for (const auto &s : snapshots)
        {
            if (s.csi.n_c() != waveform.subcarrier_count() || s.csi.n_tx() != array.size() ||
                s.csi.n_rx() != array.size())
                throw std::invalid_argument("dataset: tensor shape does not match waveform/array");
            auto it = last.find(s.source_id);
            if (it != last.end() && !(s.timestamp > it->second))
                throw std::invalid_argument("dataset: timestamps not strictly increasing for source " + s.source_id);
            last[s.source_id] = s.timestamp;
            if (s.ground_truth && s.ground_truth->size() > n_p_max)
                throw std::invalid_argument("dataset: snapshot has more targets than n_p_max");
        }
    }

    friend bool operator==(const Dataset &, const Dataset &) = default;
};
} // namespace csiloc

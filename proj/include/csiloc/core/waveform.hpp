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
#include <cstdlib>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "csiloc/core/constants.hpp"
#include "csiloc/core/geometry.hpp"

namespace csiloc
{
enum class WaveformKind
{
    waic,    // 4.2-4.4 GHz avionics band, 200 MHz
    wifi100, // Wi-Fi-like, 2.4-2.5 GHz, 100 MHz
    wifi40   // 802.11n 40 MHz channel
};

inline std::string_view to_string(WaveformKind k)
{
    switch (k)
    {
    case WaveformKind::waic:
        return "waic";
    case WaveformKind::wifi100:
        return "wifi100";
    case WaveformKind::wifi40:
        return "wifi40";
    }
    return "unknown";
}

inline WaveformKind parse_waveform_kind(std::string_view name)
{
    if (name == "waic" || name == "WAIC")
        return WaveformKind::waic;
    if (name == "wifi100" || name == "WIFI100")
        return WaveformKind::wifi100;
    if (name == "wifi40" || name == "WIFI40")
        return WaveformKind::wifi40;
    throw std::invalid_argument("unknown waveform '" + std::string(name) + "'");
}

struct WaveformConfig
{
    WaveformKind kind = WaveformKind::waic;
    double center_frequency = 0.0;   // Hz
    double bandwidth = 0.0;          // Hz
    double subcarrier_spacing = 0.0; // Hz
    int ifft_length = 0;
    // Index k sits at center_frequency + k * subcarrier_spacing.
    std::vector<int> active_indices;

    std::size_t subcarrier_count() const { return active_indices.size(); }

    double range_resolution() const { return kSpeedOfLight / (2.0 * bandwidth); }
    double max_range() const { return kSpeedOfLight / (2.0 * subcarrier_spacing); }
    double center_wavelength() const { return kSpeedOfLight / center_frequency; }
    double upper_band_edge() const { return center_frequency + 0.5 * bandwidth; }

    // Position of index k in an ifft_length grid ordered by frequency.
    int grid_position(int k) const { return k + ifft_length / 2; }

    void validate() const
    {
        if (!(center_frequency > 0.0) || !(bandwidth > 0.0) || !(subcarrier_spacing > 0.0))
            throw std::invalid_argument("waveform: frequencies must be positive");
        if (ifft_length <= 0 || active_indices.empty())
            throw std::invalid_argument("waveform: empty subcarrier grid");
        if (active_indices.size() > std::size_t(ifft_length))
            throw std::invalid_argument("waveform: more active subcarriers than IFFT points");
        std::set<int> seen;
        for (int k : active_indices)
        {
            if (std::abs(k) > ifft_length / 2 || grid_position(k) >= ifft_length)
                throw std::invalid_argument("waveform: subcarrier index outside the IFFT grid");
            if (!seen.insert(k).second)
                throw std::invalid_argument("waveform: duplicate subcarrier index");
        }
    }

    friend bool operator==(const WaveformConfig &, const WaveformConfig &) = default;
};

namespace detail
{
inline std::vector<int> index_range(int first, int last)
{
    std::vector<int> v;
    for (int k = first; k <= last; ++k)
        v.push_back(k);
    return v;
}
} // namespace detail

inline WaveformConfig waveform_preset(WaveformKind kind)
{
    WaveformConfig w;
    w.kind = kind;
    switch (kind)
    {
    case WaveformKind::waic:
        w.center_frequency = 4.3e9;
        w.bandwidth = 200.0e6;
        w.subcarrier_spacing = 1.0e6;
        w.ifft_length = 200;
        w.active_indices = detail::index_range(-100, 99);
        break;
    case WaveformKind::wifi100:
        w.center_frequency = 2.45e9;
        w.bandwidth = 100.0e6;
        w.subcarrier_spacing = 0.5e6;
        w.ifft_length = 200;
        w.active_indices = detail::index_range(-100, 99);
        break;
    case WaveformKind::wifi40:
        w.center_frequency = 2.45e9;
        w.bandwidth = 40.0e6;
        w.subcarrier_spacing = 312.5e3;
        w.ifft_length = 128;
        // 114 data and pilot tones; DC and the band edges stay empty.
        w.active_indices = detail::index_range(-58, -2);
        for (int k = 2; k <= 58; ++k)
            w.active_indices.push_back(k);
        break;
    }
    return w;
}

inline std::vector<WaveformConfig> waveform_presets()
{
    return {waveform_preset(WaveformKind::waic), waveform_preset(WaveformKind::wifi100),
            waveform_preset(WaveformKind::wifi40)};
}

inline std::vector<double> subcarrier_frequencies(const WaveformConfig &cfg)
{
    std::vector<double> f;
    f.reserve(cfg.active_indices.size());
    for (int k : cfg.active_indices)
        f.push_back(cfg.center_frequency + double(k) * cfg.subcarrier_spacing);
    return f;
}

// Half a wavelength at the upper band edge keeps grating lobes out of view.
inline double default_element_spacing(const WaveformConfig &cfg)
{
    return 0.5 * kSpeedOfLight / cfg.upper_band_edge();
}

inline AntennaArray default_array(const WaveformConfig &cfg, std::size_t elements = 4, Point2 center = {})
{
    return AntennaArray::uniform_linear(elements, default_element_spacing(cfg), center);
}
} // namespace csiloc

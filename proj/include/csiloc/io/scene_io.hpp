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
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "csiloc/io/config_io.hpp"
#include "csiloc/sim/channel.hpp"
#include "csiloc/sim/scenario.hpp"

// Scene files (JSON):
//
//   {
//     "waveform": "waic",                      optional, default for --waveform
//     "region": {"x": [-1.5, 1.5], "y": [0.5, 3.5]},
//     "array": {"elements": 4, "spacing": 0.0341, "center": [0, 0]},
//     "static_scatterers": [{"position": [x, y], "reflectivity": [re, im]}],
//     "clutter": {"seed": 1, "min_count": 10, ...},   random scatterers, added
//     "n_p": 1,
//     "frame_period": 0.05,
//     "script": [{"t": 0.0, "targets": [[x, y], ...]}, ...],
//     "walk": {"seed": 3, "frames": 200, "targets": 1, "area": {...}, "step": 0.03},
//     "sim": {"snr_db": 20, ...}
//   }
//
// "array.spacing" defaults to half the shortest wavelength of the waveform.
// Exactly one of "script" and "walk" gives the target motion.

namespace csiloc
{
class SceneFileError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

struct SceneSpec
{
    std::optional<WaveformKind> waveform;
    Region region;
    std::size_t elements = 4;
    std::optional<double> spacing;
    Point2 array_center;
    std::vector<Scatterer> static_scatterers;
    std::size_t n_p = 1;
    std::vector<ScriptStep> script;
    SimConfig sim;

    Scene scene(const WaveformConfig &wf) const
    {
        Scene s;
        s.array = AntennaArray::uniform_linear(elements, spacing.value_or(default_element_spacing(wf)), array_center);
        s.static_scatterers = static_scatterers;
        s.region = region;
        return s;
    }
};

namespace detail
{
inline std::size_t line_of_offset(const std::string &text, std::size_t offset)
{
    offset = std::min(offset, text.size());
    return 1 + std::size_t(std::count(text.begin(), text.begin() + std::ptrdiff_t(offset), '\n'));
}

// First line mentioning "key", or 0.
inline std::size_t line_of_key(const std::string &text, const std::string &key)
{
    const auto pos = text.find('"' + key + '"');
    return pos == std::string::npos ? 0 : line_of_offset(text, pos);
}

inline SceneSpec scene_from_json(const json &j)
{
    check_keys(j,
               {"waveform", "region", "array", "static_scatterers", "clutter", "n_p", "frame_period", "script",
                "walk", "sim"},
               "scene");
    SceneSpec s;
    if (j.contains("waveform"))
        s.waveform = parse_waveform_kind(j.at("waveform").get<std::string>());
    s.region = region_from_json(j.at("region"));
    if (j.contains("array"))
    {
        const json &a = j.at("array");
        check_keys(a, {"elements", "spacing", "center"}, "array");
        read_opt(a, "elements", s.elements);
        if (a.contains("spacing") && !a.at("spacing").is_null())
            s.spacing = a.at("spacing").get<double>();
        if (a.contains("center"))
            s.array_center = point_from_json(a.at("center"));
        if (s.elements == 0 || (s.spacing && !(*s.spacing > 0.0)))
            throw std::invalid_argument("array: element count and spacing must be positive");
    }
    if (j.contains("static_scatterers"))
        for (const auto &o : j.at("static_scatterers"))
        {
            check_keys(o, {"position", "reflectivity"}, "static_scatterers");
            Scatterer sc{point_from_json(o.at("position")), {1.0, 0.0}};
            if (o.contains("reflectivity"))
                sc.reflectivity = complex_from_json(o.at("reflectivity"));
            s.static_scatterers.push_back(sc);
        }
    if (j.contains("clutter"))
    {
        json c = j.at("clutter");
        std::uint64_t seed = 1;
        if (c.contains("seed"))
        {
            seed = c.at("seed").get<std::uint64_t>();
            c.erase("seed");
        }
        Rng rng(seed);
        const auto extra = random_clutter(s.region, AntennaArray{}, rng, clutter_spec_from_json(c));
        s.static_scatterers.insert(s.static_scatterers.end(), extra.begin(), extra.end());
    }
    read_opt(j, "n_p", s.n_p);
    double period = 0.05;
    read_opt(j, "frame_period", period);
    if (!(period > 0.0))
        throw std::invalid_argument("frame_period must be positive");
    if (j.contains("script") == j.contains("walk"))
        throw std::invalid_argument("scene: give exactly one of 'script' and 'walk'");
    if (j.contains("script"))
        for (const auto &st : j.at("script"))
        {
            check_keys(st, {"t", "targets"}, "script");
            s.script.push_back({st.at("t").get<double>(), points_from_json(st.at("targets"))});
        }
    else
    {
        const json &w = j.at("walk");
        check_keys(w, {"seed", "frames", "targets", "area", "step", "turn_sigma"}, "walk");
        std::uint64_t seed = 1;
        std::size_t frames = 100, targets = 1;
        read_opt(w, "seed", seed);
        read_opt(w, "frames", frames);
        read_opt(w, "targets", targets);
        const Region area = w.contains("area") ? region_from_json(w.at("area")) : s.region;
        WalkSpec spec;
        read_opt(w, "step", spec.step);
        read_opt(w, "turn_sigma", spec.turn_sigma);
        Rng rng(seed);
        std::vector<std::vector<Point2>> tracks;
        for (std::size_t k = 0; k < targets; ++k)
            tracks.push_back(random_walk(area, frames, rng, spec));
        std::vector<std::vector<Point2>> frames_pos(frames);
        for (std::size_t f = 0; f < frames; ++f)
            for (const auto &tr : tracks)
                frames_pos[f].push_back(tr[f]);
        s.script = make_script(frames_pos, 0.0, period);
    }
    if (j.contains("sim"))
        s.sim = sim_config_from_json(j.at("sim"));
    if (!s.region.valid())
        throw std::invalid_argument("region: empty");
    for (const auto &st : s.script)
    {
        if (st.targets.size() > s.n_p)
            throw std::invalid_argument("script: more targets than n_p");
        for (const auto &p : st.targets)
            if (!s.region.contains(p))
                throw std::invalid_argument("script: target outside the region");
    }
    for (const auto &sc : s.static_scatterers)
        if (!s.region.contains(sc.position))
            throw std::invalid_argument("static_scatterers: position outside the region");
    return s;
}
} // namespace detail

// Parses a scene document. Errors name the source and, where known, the line.
inline SceneSpec parse_scene(const std::string &text, const std::string &source = "<scene>")
{
    json j;
    try
    {
        j = json::parse(text);
    }
    catch (const json::parse_error &e)
    {
        const std::size_t line = detail::line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0);
        throw SceneFileError(source + ":" + std::to_string(line) + ": " + e.what());
    }
    try
    {
        return detail::scene_from_json(j);
    }
    catch (const std::exception &e)
    {
        std::string msg = e.what();
        std::size_t line = 0;
        // Quote-delimited names in the message point at the offending key.
        for (auto a = msg.find('\''); a != std::string::npos && line == 0; a = msg.find('\'', a + 1))
        {
            const auto b = msg.find('\'', a + 1);
            if (b == std::string::npos)
                break;
            line = detail::line_of_key(text, msg.substr(a + 1, b - a - 1));
            a = b;
        }
        if (line == 0)
        {
            const auto colon = msg.find(':');
            if (colon != std::string::npos)
                line = detail::line_of_key(text, msg.substr(0, colon));
        }
        throw SceneFileError(source + (line ? ":" + std::to_string(line) : std::string()) + ": " + msg);
    }
}

inline SceneSpec read_scene(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw SceneFileError(path.string() + ": cannot open scene file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scene(ss.str(), path.string());
}
} // namespace csiloc

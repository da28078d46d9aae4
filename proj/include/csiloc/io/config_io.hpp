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

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>

#include "csiloc/core/json_io.hpp"
#include "csiloc/nn/trainer.hpp"
#include "csiloc/radar/pipeline.hpp"
#include "csiloc/sim/channel.hpp"
#include "csiloc/sim/scenario.hpp"

// JSON forms of the configuration structs. Absent keys keep their defaults;
// unknown keys are rejected so that typos do not pass silently.

namespace csiloc
{
namespace detail
{
inline void check_keys(const json &j, std::initializer_list<std::string_view> allowed, std::string_view where)
{
    if (!j.is_object())
        throw std::invalid_argument(std::string(where) + ": expected an object");
    for (const auto &[key, value] : j.items())
    {
        bool ok = false;
        for (auto a : allowed)
            ok = ok || key == a;
        if (!ok)
            throw std::invalid_argument(std::string(where) + ": unknown key '" + key + "'");
    }
}

template <typename T> void read_opt(const json &j, const char *key, T &out)
{
    if (auto it = j.find(key); it != j.end())
        out = it->get<T>();
}
} // namespace detail

inline json to_json(const SimConfig &s)
{
    return {{"snr_db", s.snr_db},
            {"add_noise", s.add_noise},
            {"include_direct_coupling", s.include_direct_coupling},
            {"rng_seed", s.rng_seed},
            {"tx_power_dbm", s.tx_power_dbm},
            {"coupling_gain", s.coupling_gain},
            {"target_reflectivity", to_json_complex(s.target_reflectivity)},
            {"target_model", s.target_model == TargetModel::point ? "point" : "body"},
            {"body",
             {{"radius", s.body.radius},
              {"facet_angles_deg", s.body.facet_angles_deg},
              {"facet_phase_cycles", s.body.facet_phase_cycles}}}};
}

inline SimConfig sim_config_from_json(const json &j, SimConfig s = {})
{
    detail::check_keys(j,
                       {"snr_db", "add_noise", "include_direct_coupling", "rng_seed", "tx_power_dbm", "coupling_gain",
                        "target_reflectivity", "target_model", "body"},
                       "sim");
    detail::read_opt(j, "snr_db", s.snr_db);
    detail::read_opt(j, "add_noise", s.add_noise);
    detail::read_opt(j, "include_direct_coupling", s.include_direct_coupling);
    detail::read_opt(j, "rng_seed", s.rng_seed);
    detail::read_opt(j, "tx_power_dbm", s.tx_power_dbm);
    detail::read_opt(j, "coupling_gain", s.coupling_gain);
    if (j.contains("target_reflectivity"))
        s.target_reflectivity = complex_from_json(j.at("target_reflectivity"));
    if (j.contains("target_model"))
    {
        const auto m = j.at("target_model").get<std::string>();
        if (m != "point" && m != "body")
            throw std::invalid_argument("sim: target_model must be 'point' or 'body'");
        s.target_model = m == "point" ? TargetModel::point : TargetModel::body;
    }
    if (j.contains("body"))
    {
        const json &b = j.at("body");
        detail::check_keys(b, {"radius", "facet_angles_deg", "facet_phase_cycles"}, "sim.body");
        detail::read_opt(b, "radius", s.body.radius);
        detail::read_opt(b, "facet_angles_deg", s.body.facet_angles_deg);
        detail::read_opt(b, "facet_phase_cycles", s.body.facet_phase_cycles);
    }
    s.validate();
    return s;
}

inline json to_json(const RadarParams &p)
{
    const auto &d = p.detector;
    return {{"k_background", p.k_background},
            {"zero_pad", p.zero_pad},
            {"threshold_db_over_floor", d.threshold_db_over_floor},
            {"gate_radius_m", d.gate_radius_m},
            {"max_targets", d.max_targets},
            {"min_range_m", d.min_range_m},
            {"max_range_m", d.max_range_m},
            {"min_separation_m", d.min_separation_m}};
}

inline RadarParams radar_params_from_json(const json &j, RadarParams p = {})
{
    detail::check_keys(j,
                       {"k_background", "zero_pad", "threshold_db_over_floor", "gate_radius_m", "max_targets",
                        "min_range_m", "max_range_m", "min_separation_m"},
                       "radar");
    detail::read_opt(j, "k_background", p.k_background);
    detail::read_opt(j, "zero_pad", p.zero_pad);
    detail::read_opt(j, "threshold_db_over_floor", p.detector.threshold_db_over_floor);
    detail::read_opt(j, "gate_radius_m", p.detector.gate_radius_m);
    detail::read_opt(j, "max_targets", p.detector.max_targets);
    detail::read_opt(j, "min_range_m", p.detector.min_range_m);
    detail::read_opt(j, "max_range_m", p.detector.max_range_m);
    detail::read_opt(j, "min_separation_m", p.detector.min_separation_m);
    if (p.k_background == 0 || p.zero_pad == 0)
        throw std::invalid_argument("radar: k_background and zero_pad must be positive");
    return p;
}

inline json to_json(const TrainConfig &c)
{
    return {{"hidden", c.hidden},
            {"learning_rate", c.learning_rate},
            {"batch_size", c.batch_size},
            {"epochs", c.epochs},
            {"w_count", c.weights.count},
            {"w_coord", c.weights.coord},
            {"seed", c.seed},
            {"validation_fraction", c.validation_fraction},
            {"optimizer", std::string(to_string(c.optimizer))},
            {"binding", std::string(to_string(c.binding))},
            {"feature_mode", std::string(to_string(c.feature_mode))},
            {"wavelet_levels", c.wavelet_levels},
            {"history", c.history}};
}

inline TrainConfig train_config_from_json(const json &j, TrainConfig c = {})
{
    detail::check_keys(j,
                       {"hidden", "learning_rate", "batch_size", "epochs", "w_count", "w_coord", "seed",
                        "validation_fraction", "optimizer", "binding", "feature_mode", "wavelet_levels", "history"},
                       "train");
    detail::read_opt(j, "hidden", c.hidden);
    detail::read_opt(j, "learning_rate", c.learning_rate);
    detail::read_opt(j, "batch_size", c.batch_size);
    detail::read_opt(j, "epochs", c.epochs);
    detail::read_opt(j, "w_count", c.weights.count);
    detail::read_opt(j, "w_coord", c.weights.coord);
    detail::read_opt(j, "seed", c.seed);
    detail::read_opt(j, "validation_fraction", c.validation_fraction);
    if (j.contains("optimizer"))
        c.optimizer = parse_optimizer(j.at("optimizer").get<std::string>());
    if (j.contains("binding"))
        c.binding = parse_slot_binding(j.at("binding").get<std::string>());
    if (j.contains("feature_mode"))
        c.feature_mode = parse_feature_mode(j.at("feature_mode").get<std::string>());
    detail::read_opt(j, "wavelet_levels", c.wavelet_levels);
    detail::read_opt(j, "history", c.history);
    c.validate();
    return c;
}

inline json to_json(const ClutterSpec &s)
{
    return {{"min_count", s.min_count},
            {"max_count", s.max_count},
            {"min_reflectivity", s.min_reflectivity},
            {"max_reflectivity", s.max_reflectivity},
            {"keep_out", s.keep_out}};
}

inline ClutterSpec clutter_spec_from_json(const json &j, ClutterSpec s = {})
{
    detail::check_keys(j, {"min_count", "max_count", "min_reflectivity", "max_reflectivity", "keep_out"}, "clutter");
    detail::read_opt(j, "min_count", s.min_count);
    detail::read_opt(j, "max_count", s.max_count);
    detail::read_opt(j, "min_reflectivity", s.min_reflectivity);
    detail::read_opt(j, "max_reflectivity", s.max_reflectivity);
    detail::read_opt(j, "keep_out", s.keep_out);
    if (s.min_count > s.max_count || s.min_reflectivity > s.max_reflectivity)
        throw std::invalid_argument("clutter: minimum exceeds maximum");
    return s;
}

inline json to_json(const WalkSpec &s) { return {{"step", s.step}, {"turn_sigma", s.turn_sigma}}; }

inline WalkSpec walk_spec_from_json(const json &j, WalkSpec s = {})
{
    detail::check_keys(j, {"step", "turn_sigma"}, "walk");
    detail::read_opt(j, "step", s.step);
    detail::read_opt(j, "turn_sigma", s.turn_sigma);
    return s;
}

inline json to_json(const AislePairSpec &s)
{
    return {{"aisle_y", s.aisle_y},
            {"half_length", s.half_length},
            {"lateral_sigma", s.lateral_sigma},
            {"min_separation", s.min_separation},
            {"max_separation", s.max_separation},
            {"drift_sigma", s.drift_sigma},
            {"separation_rate", s.separation_rate}};
}

inline AislePairSpec aisle_pair_spec_from_json(const json &j, AislePairSpec s = {})
{
    detail::check_keys(j,
                       {"aisle_y", "half_length", "lateral_sigma", "min_separation", "max_separation", "drift_sigma",
                        "separation_rate"},
                       "pair");
    detail::read_opt(j, "aisle_y", s.aisle_y);
    detail::read_opt(j, "half_length", s.half_length);
    detail::read_opt(j, "lateral_sigma", s.lateral_sigma);
    detail::read_opt(j, "min_separation", s.min_separation);
    detail::read_opt(j, "max_separation", s.max_separation);
    detail::read_opt(j, "drift_sigma", s.drift_sigma);
    detail::read_opt(j, "separation_rate", s.separation_rate);
    if (!(s.min_separation >= 0.0 && s.max_separation >= s.min_separation))
        throw std::invalid_argument("pair: invalid separation range");
    return s;
}
} // namespace csiloc

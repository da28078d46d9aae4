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
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "csiloc/core/constants.hpp"
#include "csiloc/core/csi.hpp"
#include "csiloc/core/waveform.hpp"

namespace csiloc
{
class SingularGeometryError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

enum class TargetModel
{
    point, // one scattering center at the target position
    body   // a person: several scattering centers on the body side facing the array
};

// Person model. Facets sit on a circle of `radius` around the ground-truth
// position, at the listed angles from the direction toward the array
// center. The target reflectivity is split evenly across facets, each with
// its own fixed phase.
struct BodyModel
{
    double radius = 0.2;
    std::vector<double> facet_angles_deg{-60.0, -30.0, 0.0, 30.0, 60.0};
    std::vector<double> facet_phase_cycles{0.1, 0.55, 0.0, 0.3, 0.8};
};

struct SimConfig
{
    double snr_db = 20.0; // mean per-cell signal-to-noise ratio
    bool add_noise = true;
    bool include_direct_coupling = true;
    std::uint64_t rng_seed = 1;
    double tx_power_dbm = 12.0;
    double coupling_gain = 1.0;
    cd target_reflectivity{1.0, 0.0};
    TargetModel target_model = TargetModel::point;
    BodyModel body;

    void validate() const
    {
        if (!std::isfinite(snr_db) || !std::isfinite(tx_power_dbm) || !std::isfinite(coupling_gain))
            throw std::invalid_argument("SimConfig: non-finite parameter");
        if (body.facet_angles_deg.size() != body.facet_phase_cycles.size() || body.facet_angles_deg.empty())
            throw std::invalid_argument("SimConfig: body model facet lists differ in length");
    }
};

// Scattering centers that represent one target under the chosen model.
inline std::vector<Scatterer> target_scatterers(const Scatterer &target, Point2 array_center, const SimConfig &sim)
{
    if (sim.target_model == TargetModel::point)
        return {target};
    const auto &b = sim.body;
    const Point2 to_array = array_center - target.position;
    const double heading = norm(to_array) > 0.0 ? std::atan2(to_array.y, to_array.x) : kPi / 2.0;
    const double share = 1.0 / double(b.facet_angles_deg.size());
    std::vector<Scatterer> out;
    for (std::size_t i = 0; i < b.facet_angles_deg.size(); ++i)
    {
        const double a = heading + b.facet_angles_deg[i] * kPi / 180.0;
        out.push_back({target.position + b.radius * Point2{std::cos(a), std::sin(a)},
                       target.reflectivity * share * std::polar(1.0, kTwoPi * b.facet_phase_cycles[i])});
    }
    return out;
}

// Single-bounce point-scatterer channel for one array and waveform.
// H[i,j,k] = coupling + sum_s rho_s / (r_i r_j) * exp(-j 2 pi f_k (r_i + r_j) / c)
class ChannelModel
{
  public:
    ChannelModel(AntennaArray array, WaveformConfig wf, SimConfig sim)
        : array_(std::move(array)), wf_(std::move(wf)), sim_(std::move(sim)), freqs_(subcarrier_frequencies(wf_)),
          amplitude_(std::sqrt(std::pow(10.0, sim_.tx_power_dbm / 10.0)))
    {
        wf_.validate();
        sim_.validate();
        if (array_.size() == 0)
            throw std::invalid_argument("ChannelModel: empty antenna array");
        static_ = CsiTensor(array_.size(), array_.size(), freqs_.size());
        if (sim_.include_direct_coupling)
            add_coupling(static_);
    }

    const AntennaArray &array() const { return array_; }
    const WaveformConfig &waveform() const { return wf_; }
    const SimConfig &config() const { return sim_; }

    void add_static(const std::vector<Scatterer> &scatterers)
    {
        for (const auto &s : scatterers)
            add_path(static_, s);
    }

    const CsiTensor &static_response() const { return static_; }

    // Noiseless response of the targets alone, no static part.
    CsiTensor target_response(const std::vector<Scatterer> &targets) const
    {
        CsiTensor h(array_.size(), array_.size(), freqs_.size());
        const Point2 c = array_.center();
        for (const auto &t : targets)
            for (const auto &s : target_scatterers(t, c, sim_))
                add_path(h, s);
        return h;
    }

    // `index` selects the noise stream, so snapshots can be produced in any order.
    CsiSnapshot snapshot(const std::vector<Scatterer> &targets, double t, std::uint64_t index) const
    {
        CsiSnapshot snap;
        snap.timestamp = t;
        snap.csi = static_;
        snap.csi += target_response(targets);
        if (sim_.add_noise)
            add_noise(snap.csi, index);
        std::vector<Point2> truth;
        for (const auto &tg : targets)
            truth.push_back(tg.position);
        snap.ground_truth = std::move(truth);
        return snap;
    }

    void add_path(CsiTensor &h, const Scatterer &s) const
    {
        const std::size_t m = array_.size();
        std::vector<double> r(m);
        for (std::size_t i = 0; i < m; ++i)
        {
            r[i] = distance(array_.elements[i], s.position);
            if (!(r[i] > 1e-9))
                throw SingularGeometryError("scatterer coincides with an antenna element");
        }
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
            {
                const double path = r[i] + r[j];
                const cd a = amplitude_ * s.reflectivity / (r[i] * r[j]);
                for (std::size_t k = 0; k < freqs_.size(); ++k)
                    h(i, j, k) += a * std::polar(1.0, -kTwoPi * freqs_[k] * path / kSpeedOfLight);
            }
    }

  private:
    void add_coupling(CsiTensor &h) const
    {
        const std::size_t m = array_.size();
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
            {
                const double d = distance(array_.elements[i], array_.elements[j]);
                for (std::size_t k = 0; k < freqs_.size(); ++k)
                    h(i, j, k) +=
                        amplitude_ * sim_.coupling_gain * std::polar(1.0, -kTwoPi * freqs_[k] * d / kSpeedOfLight);
            }
    }

    void add_noise(CsiTensor &h, std::uint64_t index) const
    {
        const double p_signal = h.energy() / double(h.size());
        if (!(p_signal > 0.0))
            return;
        const double sigma = std::sqrt(0.5 * p_signal / std::pow(10.0, sim_.snr_db / 10.0));
        std::seed_seq seq{std::uint32_t(sim_.rng_seed), std::uint32_t(sim_.rng_seed >> 32), std::uint32_t(index),
                          std::uint32_t(index >> 32)};
        std::mt19937_64 gen(seq);
        std::normal_distribution<double> n(0.0, sigma);
        for (auto &v : h.data())
        {
            const double re = n(gen);
            const double im = n(gen);
            v += cd(re, im);
        }
    }

    AntennaArray array_;
    WaveformConfig wf_;
    SimConfig sim_;
    std::vector<double> freqs_;
    double amplitude_;
    CsiTensor static_;
};

inline CsiSnapshot simulate_snapshot(const Scene &scene, const WaveformConfig &wf, const SimConfig &sim, double t,
                                     std::uint64_t index = 0)
{
    scene.validate(scene.targets.size());
    ChannelModel model(scene.array, wf, sim);
    model.add_static(scene.static_scatterers);
    return model.snapshot(scene.targets, t, index);
}

struct ScriptStep
{
    double t = 0.0;
    std::vector<Point2> targets;
};

// One snapshot per script step; tensors are rounded to float32 so the result
// round-trips through the dataset file unchanged.
inline Dataset simulate_trajectory(const Scene &scene, const std::vector<ScriptStep> &script, const WaveformConfig &wf,
                                   const SimConfig &sim, std::size_t n_p_max, std::uint64_t first_index = 0)
{
    scene.validate(n_p_max);
    for (std::size_t i = 1; i < script.size(); ++i)
        if (!(script[i].t > script[i - 1].t))
            throw std::invalid_argument("simulate_trajectory: script timestamps must increase strictly");

    ChannelModel model(scene.array, wf, sim);
    model.add_static(scene.static_scatterers);

    Dataset d;
    d.waveform = wf;
    d.array = scene.array;
    d.region = scene.region;
    d.n_p_max = n_p_max;
    d.meta.seed = sim.rng_seed;
    d.snapshots.reserve(script.size());
    for (std::size_t i = 0; i < script.size(); ++i)
    {
        const auto &step = script[i];
        if (step.targets.size() > n_p_max)
            throw std::invalid_argument("simulate_trajectory: more targets than n_p_max");
        std::vector<Scatterer> targets;
        for (const auto &p : step.targets)
        {
            if (!scene.region.contains(p))
                throw std::invalid_argument("simulate_trajectory: target outside the region");
            targets.push_back({p, sim.target_reflectivity});
        }
        auto snap = model.snapshot(targets, step.t, first_index + i);
        snap.csi.quantize_to_float();
        d.snapshots.push_back(std::move(snap));
    }
    return d;
}
} // namespace csiloc

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


#include <catch2/catch_amalgamated.hpp>

#include "csiloc/nn/localizer.hpp"
#include "csiloc/sim/scenario.hpp"

#include <numbers>

using namespace csiloc;

namespace
{
Dataset walk_dataset(WaveformKind kind, std::size_t frames, std::uint64_t seed)
{
    const auto wf = waveform_preset(kind);
    Scene scene;
    scene.array = default_array(wf);
    scene.region = {-1.5, 1.5, 0.5, 3.5};
    Rng rng(seed);
    scene.static_scatterers = random_clutter(scene.region, scene.array, rng);
    SimConfig sim;
    sim.rng_seed = seed;
    const auto walk = random_walk({-1.0, 1.0, 1.0, 3.0}, frames, rng);
    return simulate_trajectory(scene, make_script(walk, 0.0, 0.05), wf, sim, 1);
}
} // namespace

TEST_CASE("features - Length and zero vector")
{
    const auto d = walk_dataset(WaveformKind::waic, 1, 1);
    const auto &s = d.snapshots[0];
    CHECK(feature_length(s.csi) == 6400);
    const FeatureVector f = raw_features(s.csi, s.csi);
    REQUIRE(f.size() == 6400);
    CHECK(f.cwiseAbs().maxCoeff() == 0.0);

    CsiTensor bg(4, 4, 200);
    const FeatureVector g = raw_features(s.csi, bg);
    CHECK(g(0) == s.csi.data()[0].real());
    CHECK(g(1) == s.csi.data()[0].imag());
    CHECK(g(6399) == s.csi.data()[3199].imag());

    const FeatureVector mp = raw_features(s.csi, bg, FeatureMode::magnitude_phase);
    CHECK(mp(0) == Catch::Approx(std::abs(s.csi.data()[0])));
    CHECK(mp(1) == Catch::Approx(std::arg(s.csi.data()[0])));

    CHECK(feature_length(walk_dataset(WaveformKind::wifi40, 1, 1).snapshots[0].csi) == 2 * 16 * 114);
    CHECK_THROWS_AS(raw_features(s.csi, CsiTensor(4, 4, 114)), std::invalid_argument);
    FeatureStats stats;
    stats.mean = Eigen::VectorXd::Zero(10);
    stats.stddev = Eigen::VectorXd::Ones(10);
    CHECK_THROWS_AS(extract_features(s, bg, stats), std::invalid_argument);
}

TEST_CASE("features - Standardized training set")
{
    const auto d = walk_dataset(WaveformKind::wifi40, 64, 4);
    Eigen::MatrixXf x = dataset_features(d, 32, 3, FeatureMode::real_imag);
    REQUIRE(x.cols() == 64);
    std::vector<Eigen::Index> cols(64);
    std::iota(cols.begin(), cols.end(), Eigen::Index{0});
    const FeatureStats stats = fit_feature_stats(x, cols);
    Eigen::MatrixXd z = x.cast<double>();
    stats.apply_columns(z);
    const Eigen::VectorXd mean = z.rowwise().mean();
    const Eigen::VectorXd sd = ((z.colwise() - mean).cwiseAbs2().rowwise().mean()).cwiseSqrt();
    CHECK(mean.cwiseAbs().maxCoeff() < 1e-6);
    CHECK((sd.array() - 1.0).abs().maxCoeff() < 1e-3);

    // The single-vector path agrees with the column path.
    const CsiTensor bg = frame_background(d, 40, 32, 3);
    const FeatureVector f = extract_features(d.snapshots[40], bg, stats);
    CHECK((f - z.col(40)).cwiseAbs().maxCoeff() < 1e-3);
}

TEST_CASE("features - Constant features keep unit scale")
{
    Eigen::MatrixXd x(2, 3);
    x << 1.0, 1.0, 1.0, 0.0, 2.0, 4.0;
    const auto s = fit_feature_stats(x, {0, 1, 2});
    CHECK(s.stddev(0) == 1.0);
    CHECK(s.mean(1) == Catch::Approx(2.0));
    CHECK(s.stddev(1) == Catch::Approx(std::sqrt(8.0 / 3.0)));
    CHECK_THROWS_AS(fit_feature_stats(x, {}), std::invalid_argument);
}

TEST_CASE("history_indices - Past frames and start of recording")
{
    CHECK(history_indices(40, 100, 32, 8) == [] {
        std::vector<std::size_t> v;
        for (std::size_t i = 8; i < 40; ++i)
            v.push_back(i);
        return v;
    }());
    const auto early = history_indices(2, 100, 32, 8);
    REQUIRE(early.size() == 32);
    CHECK(early.front() == 34);
    CHECK(early.back() == 3);
    CHECK(history_indices(10, 12, 32, 8).size() == 10);
    CHECK_THROWS_AS(history_indices(0, 5, 32, 8), std::invalid_argument);
    CHECK_THROWS_AS(history_indices(5, 5, 32, 8), std::out_of_range);
}

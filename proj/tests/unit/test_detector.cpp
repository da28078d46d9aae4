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

#include "csiloc/radar/detector.hpp"

#include <random>

using namespace csiloc;

namespace
{
RangeAzimuthMap flat_map(Eigen::Index rows, Eigen::Index cols, double value)
{
    RangeAzimuthMap map;
    map.magnitudes = Eigen::MatrixXd::Constant(rows, cols, value);
    map.range_bin_spacing = 0.1;
    for (Eigen::Index n = 0; n < rows; ++n)
        map.range_axis.push_back(double(n) * 0.1);
    for (Eigen::Index m = 0; m < cols; ++m)
        map.sin_theta_axis.push_back((double(m) - double(cols / 2)) * 2.0 / double(cols));
    return map;
}
} // namespace

TEST_CASE("detect - Zero map")
{
    CHECK(detect(flat_map(60, 16, 0.0), {}).empty());
    CHECK(detect(flat_map(60, 16, 1.0), {}).empty());
}

TEST_CASE("detect - Injected peak")
{
    auto map = flat_map(60, 16, 1.0);
    map.magnitudes(25, 8) = 10.0; // 20 dB above the floor
    const auto dets = detect(map, {});
    REQUIRE(dets.size() == 1);
    CHECK(dets[0].range == Catch::Approx(2.5));
    CHECK(dets[0].azimuth == Catch::Approx(0.0).margin(1e-12));
    CHECK(dets[0].position.x == Catch::Approx(0.0).margin(1e-12));
    CHECK(dets[0].position.y == Catch::Approx(2.5));
    CHECK(dets[0].magnitude == 10.0);
    CHECK(!dets[0].track_id);

    // Below the threshold nothing is reported.
    DetectorParams strict;
    strict.threshold_db_over_floor = 25.0;
    CHECK(detect(map, {}, strict).empty());
}

TEST_CASE("detect - Sub-bin refinement")
{
    auto map = flat_map(60, 16, 1.0);
    map.magnitudes(25, 8) = 10.0;
    map.magnitudes(26, 8) = 5.0;
    map.magnitudes(24, 8) = 2.0;
    const auto dets = detect(map, {});
    REQUIRE(dets.size() == 1);
    const double l = std::log(2.0), c = std::log(10.0), r = std::log(5.0);
    CHECK(dets[0].range == Catch::Approx((25.0 + 0.5 * (l - r) / (l - 2 * c + r)) * 0.1));
}

TEST_CASE("detect - Gating and track ids")
{
    auto map = flat_map(60, 16, 1.0);
    map.magnitudes(25, 8) = 10.0;
    Detection far;
    far.position = {0.0, 5.5};
    far.track_id = 4;
    DetectorParams p;
    p.gate_radius_m = 1.0;
    CHECK(detect(map, std::vector<Detection>{far}, p).empty());

    Detection near = far;
    near.position = {0.2, 2.3};
    near.track_id = 9;
    const auto dets = detect(map, std::vector<Detection>{far, near}, p);
    REQUIRE(dets.size() == 1);
    CHECK(dets[0].track_id == std::optional<std::uint64_t>(9));
}

TEST_CASE("detect - Strongest first and limits")
{
    auto map = flat_map(60, 16, 1.0);
    map.magnitudes(10, 4) = 8.0;
    map.magnitudes(40, 12) = 20.0;
    map.magnitudes(30, 8) = 12.0;
    DetectorParams p;
    p.max_targets = 2;
    const auto dets = detect(map, {}, p);
    REQUIRE(dets.size() == 2);
    CHECK(dets[0].magnitude == 20.0);
    CHECK(dets[1].magnitude == 12.0);
    p.max_range_m = 3.5;
    const auto near = detect(map, {}, p);
    REQUIRE(near.size() == 2);
    CHECK(near[0].magnitude == 12.0);
    CHECK(near[1].magnitude == 8.0);
}

TEST_CASE("detect - Every detection lies inside a gate")
{
    std::mt19937_64 gen(12);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial)
    {
        auto map = flat_map(60, 16, 1.0);
        for (Eigen::Index n = 0; n < 60; ++n)
            for (Eigen::Index m = 0; m < 16; ++m)
                map.magnitudes(n, m) = 0.5 + u(gen) * (u(gen) < 0.02 ? 40.0 : 1.0);
        std::vector<Detection> prev(1 + std::size_t(u(gen) * 3));
        for (auto &d : prev)
            d.position = {4.0 * u(gen) - 2.0, 6.0 * u(gen)};
        DetectorParams p;
        p.max_targets = 3;
        p.gate_radius_m = 0.3 + u(gen);
        for (const auto &d : detect(map, prev, p))
        {
            double best = 1e9;
            for (const auto &q : prev)
                best = std::min(best, distance(q.position, d.position));
            CHECK(best <= p.gate_radius_m);
        }
    }
}

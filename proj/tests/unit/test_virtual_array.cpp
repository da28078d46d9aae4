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

#include "csiloc/radar/virtual_array.hpp"
#include "csiloc/sim/channel.hpp"

#include <cmath>
#include <numbers>

using namespace csiloc;

TEST_CASE("virtual_array - Count law")
{
    for (std::size_t m = 1; m <= 8; ++m)
    {
        const auto va = virtual_array(AntennaArray::uniform_linear(m, 0.05));
        CHECK(va.size() == 2 * m - 1);
        CHECK(va.physical_elements == m);
        std::size_t pairs = 0;
        for (const auto &p : va.pairs)
            pairs += p.size();
        CHECK(pairs == m * m);
    }
    const auto wf = waveform_preset(WaveformKind::waic);
    CHECK(virtual_array(default_array(wf)).size() == 7);
}

TEST_CASE("virtual_array - Phase center positions")
{
    const double d = 0.1;
    const auto va = virtual_array(AntennaArray::uniform_linear(2, d, {1.0, 2.0}));
    REQUIRE(va.size() == 3);
    CHECK(va.positions[0] == Catch::Approx(0.0).margin(1e-15));
    CHECK(va.positions[1] == Catch::Approx(d / 2));
    CHECK(va.positions[2] == Catch::Approx(d));
    CHECK(va.spacing == Catch::Approx(d / 2));
    CHECK(va.origin == Point2{1.0, 2.0});
    CHECK(va.pairs[1].size() == 2);
}

TEST_CASE("virtual_array - Invalid arrays")
{
    CHECK_THROWS_AS(virtual_array(AntennaArray{}), std::invalid_argument);
    AntennaArray bent = AntennaArray::uniform_linear(3, 0.1);
    bent.elements[2].y += 0.01;
    CHECK_THROWS_AS(virtual_array(bent), std::invalid_argument);
    AntennaArray uneven = AntennaArray::uniform_linear(3, 0.1);
    uneven.elements[2].x += 0.01;
    CHECK_THROWS_AS(virtual_array(uneven), std::invalid_argument);
}

TEST_CASE("collapse_to_virtual - Redundant entries agree")
{
    const auto wf = waveform_preset(WaveformKind::waic);
    Scene scene;
    scene.array = default_array(wf);
    const double r = 100.0;
    scene.region = {-10.0, 10.0, 1.0, 200.0};
    scene.targets = {{{0.0, r}, {1.0, 0.0}}};
    SimConfig sim;
    sim.add_noise = false;
    sim.include_direct_coupling = false;
    const auto snap = simulate_snapshot(scene, wf, sim, 0.0);
    const auto va = virtual_array(scene.array);
    const Eigen::MatrixXcd vm = collapse_to_virtual(snap.csi, va);
    REQUIRE(vm.rows() == 7);
    REQUIRE(std::size_t(vm.cols()) == wf.subcarrier_count());

    // Reciprocal pairs are identical. Pairs with a shared phase center but
    // different elements differ by the near-field path term 2 d^2 / r.
    const double d = scene.array.spacing;
    const double lambda_min = kSpeedOfLight / wf.upper_band_edge();
    const double near_field = 4.0 * std::numbers::pi * d * d / (lambda_min * r) * 1.5;
    for (std::size_t v = 0; v < va.size(); ++v)
        for (const auto &[i, j] : va.pairs[v])
            for (std::size_t k = 0; k < wf.subcarrier_count(); ++k)
            {
                const cd avg = vm(Eigen::Index(v), Eigen::Index(k));
                const cd h = snap.csi(i, j, k);
                CHECK(std::abs(h - snap.csi(j, i, k)) <= 1e-9 * std::abs(h));
                CHECK(std::abs(avg - h) <= near_field * std::abs(h));
            }
    CHECK(near_field < 0.01);

    CHECK_THROWS_AS(collapse_to_virtual(CsiTensor(3, 3, 200), va), std::invalid_argument);
}

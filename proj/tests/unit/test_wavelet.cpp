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

#include "csiloc/nn/wavelet.hpp"

#include <cmath>
#include <numeric>
#include <random>

using namespace csiloc;

namespace
{
std::vector<CsiSnapshot> series(const std::vector<cd> &values)
{
    std::vector<CsiSnapshot> out;
    for (auto v : values)
    {
        CsiSnapshot s;
        s.csi = CsiTensor(2, 2, 3);
        for (auto &c : s.csi.data())
            c = v;
        out.push_back(s);
    }
    return out;
}
} // namespace

TEST_CASE("wavelet - Filter identities")
{
    const double sum = std::accumulate(kDb4Lowpass.begin(), kDb4Lowpass.end(), 0.0);
    CHECK(sum == Catch::Approx(std::sqrt(2.0)).epsilon(1e-12));
    double energy = 0.0;
    for (double h : kDb4Lowpass)
        energy += h * h;
    CHECK(energy == Catch::Approx(1.0).epsilon(1e-12));
    // Four vanishing moments of the wavelet filter.
    const auto g = db4_highpass();
    for (int p = 0; p < 4; ++p)
    {
        double m = 0.0;
        for (std::size_t k = 0; k < 8; ++k)
            m += g[k] * std::pow(double(k), p);
        CHECK(std::abs(m) < 1e-9);
    }
}

TEST_CASE("wavelet - Perfect reconstruction")
{
    std::mt19937_64 gen(1);
    std::normal_distribution<double> n;
    for (std::size_t len : {8, 16, 32, 64})
    {
        std::vector<double> x(len), a, d;
        for (auto &v : x)
            v = n(gen);
        dwt_step(x, a, d);
        double e = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
            e += a[i] * a[i] + d[i] * d[i];
        double ex = 0.0;
        for (double v : x)
            ex += v * v;
        CHECK(e == Catch::Approx(ex).epsilon(1e-12));
        const auto y = idwt_step(a, d);
        for (std::size_t i = 0; i < len; ++i)
            CHECK(y[i] == Catch::Approx(x[i]).margin(1e-12));
    }
    std::vector<double> a, d;
    CHECK_THROWS_AS(dwt_step(std::vector<double>(7, 1.0), a, d), std::invalid_argument);
}

TEST_CASE("wavelet_background - Constant history")
{
    const cd c{0.7, -1.3};
    for (std::size_t levels = 1; levels <= 5; ++levels)
    {
        const auto h = series(std::vector<cd>(32, c));
        const CsiTensor bg = wavelet_background(h, levels);
        for (const auto &v : bg.data())
            CHECK(std::abs(v - c) < 1e-12);
        const auto w = lowpass_tail_weights(32, levels);
        CHECK(std::accumulate(w.begin(), w.end(), 0.0) == Catch::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("wavelet_background - Alternating sequence is removed")
{
    const cd c{2.0, 1.0};
    const double eps = 0.25;
    for (std::size_t levels = 1; levels <= 4; ++levels)
    {
        std::vector<cd> v;
        for (std::size_t t = 0; t < 32; ++t)
            v.push_back(c + (t % 2 == 0 ? eps : -eps) * cd(1.0, -1.0));
        const CsiTensor bg = wavelet_background(series(v), levels);
        for (const auto &x : bg.data())
            CHECK(std::abs(x - c) < eps / 10.0);
    }
}

TEST_CASE("wavelet_background - Uses the newest multiple of 2^levels")
{
    std::vector<cd> v(37, cd(5.0, 0.0));
    for (std::size_t t = 0; t < 5; ++t)
        v[t] = cd(-100.0, 0.0); // outside the 32-frame tail
    const CsiTensor bg = wavelet_background(series(v), 3);
    CHECK(std::abs(bg.data()[0] - cd(5.0, 0.0)) < 1e-12);
}

TEST_CASE("wavelet_background - Errors")
{
    CHECK_THROWS_AS(wavelet_background(series(std::vector<cd>(7, 1.0)), 3), std::invalid_argument);
    CHECK_THROWS_AS(wavelet_background(series(std::vector<cd>(8, 1.0)), 0), std::invalid_argument);
    auto h = series(std::vector<cd>(8, 1.0));
    h[3].csi = CsiTensor(1, 1, 1);
    CHECK_THROWS_AS(wavelet_background(h, 3), std::invalid_argument);
    CHECK_THROWS_AS(wavelet_lowpass(std::vector<double>(12, 1.0), 3), std::invalid_argument);
}

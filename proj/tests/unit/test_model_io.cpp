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

#include "csiloc/nn/model_io.hpp"

#include <cstring>
#include <random>
#include <sstream>

using namespace csiloc;

namespace
{
LocalizerModel sample_model()
{
    LocalizerModel m;
    m.head.n_p = 2;
    m.region = {-2.0, 2.0, 0.5, 3.5};
    m.waveform = WaveformKind::wifi100;
    m.feature_mode = FeatureMode::magnitude_phase;
    m.wavelet_levels = 4;
    m.history = 48;
    m.meta = {123, "0123456789abcdef"};
    m.net = Mlp<float>({10, 6, m.head.output_size()});
    std::mt19937_64 gen(2);
    m.net.initialize(gen);
    m.net.biases()[0](3) = -0.25f;
    m.stats.mean = Eigen::VectorXd::LinSpaced(10, -1.0, 1.0 / 3.0);
    m.stats.stddev = Eigen::VectorXd::Constant(10, 0.1);
    return m;
}

std::string bytes(const LocalizerModel &m)
{
    std::ostringstream s;
    write_model(m, s);
    return s.str();
}
} // namespace

TEST_CASE("model_io - Round trip")
{
    const auto m = sample_model();
    const std::string a = bytes(m);
    std::istringstream in(a);
    const auto back = read_model(in);
    CHECK(back.net == m.net);
    CHECK(back.head.n_p == 2);
    CHECK(back.region == m.region);
    CHECK(back.waveform == m.waveform);
    CHECK(back.feature_mode == m.feature_mode);
    CHECK(back.wavelet_levels == 4);
    CHECK(back.history == 48);
    CHECK(back.stats.mean == m.stats.mean);
    CHECK(back.stats.stddev == m.stats.stddev);
    CHECK(back.meta == m.meta);
    CHECK(bytes(back) == a);
}

TEST_CASE("model_io - Layout")
{
    const auto m = sample_model();
    const std::string a = bytes(m);
    const auto nl = a.find('\n');
    const json h = json::parse(a.substr(0, nl));
    CHECK(h["format"] == "csiloc-model");
    CHECK(h["layer_sizes"] == json::array({10, 6, 7}));
    CHECK(a.size() - nl - 1 == m.net.parameter_count() * 4);
    // First weight, little-endian float32.
    float w = 0.0f;
    const unsigned char *p = reinterpret_cast<const unsigned char *>(a.data() + nl + 1);
    std::uint32_t u = std::uint32_t(p[0]) | std::uint32_t(p[1]) << 8 | std::uint32_t(p[2]) << 16 |
                      std::uint32_t(p[3]) << 24;
    std::memcpy(&w, &u, 4);
    CHECK(w == m.net.weights()[0](0, 0));
}

TEST_CASE("model_io - Errors")
{
    const std::string a = bytes(sample_model());
    {
        std::istringstream in(a.substr(0, a.size() - 3));
        CHECK_THROWS_AS(read_model(in), ModelFormatError);
    }
    {
        std::istringstream in("");
        CHECK_THROWS_AS(read_model(in), ModelFormatError);
    }
    {
        std::string bad = a;
        bad.replace(bad.find("csiloc-model"), 12, "other-format");
        std::istringstream in(bad);
        CHECK_THROWS_AS(read_model(in), ModelFormatError);
    }
    {
        std::string bad = a;
        bad.replace(bad.find("\"n_p\":2"), 7, "\"n_p\":3");
        std::istringstream in(bad);
        CHECK_THROWS_AS(read_model(in), ModelFormatError);
    }
    {
        std::istringstream in("{not json\n");
        CHECK_THROWS_AS(read_model(in), ModelFormatError);
    }
    CHECK_THROWS(read_model(std::filesystem::path("/nonexistent/model.csim")));
}

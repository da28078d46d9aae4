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

#include "csiloc/core/dataset_io.hpp"

#include <random>
#include <sstream>

using namespace csiloc;

namespace
{
Dataset random_dataset(WaveformKind kind, std::size_t count, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<float> g;
    Dataset d;
    d.waveform = waveform_preset(kind);
    d.array = default_array(d.waveform);
    d.region = {-1.5, 1.5, 0.5, 3.5};
    d.n_p_max = 2;
    d.meta = {seed, "00000000deadbeef"};
    for (std::size_t i = 0; i < count; ++i)
    {
        CsiSnapshot s;
        s.timestamp = 0.05 * double(i);
        s.csi = CsiTensor(4, 4, d.waveform.subcarrier_count());
        for (auto &v : s.csi.data())
            v = cd(g(rng), g(rng));
        if (i % 3 == 0)
            s.ground_truth = std::vector<Point2>{{0.1 * double(i), 2.0}, {-0.3, 1.25}};
        else if (i % 3 == 1)
            s.ground_truth = std::vector<Point2>{};
        d.snapshots.push_back(std::move(s));
    }
    return d;
}

std::string serialize(const Dataset &d)
{
    std::ostringstream out(std::ios::binary);
    write_dataset(d, out);
    return out.str();
}

DatasetErrorKind read_error(const std::string &bytes)
{
    std::istringstream in(bytes, std::ios::binary);
    try
    {
        read_dataset(in);
    }
    catch (const DatasetError &e)
    {
        return e.kind();
    }
    FAIL("read_dataset accepted a malformed file");
    return DatasetErrorKind::io;
}
} // namespace

TEST_CASE("dataset_io - Round trip")
{
    for (auto kind : {WaveformKind::waic, WaveformKind::wifi40})
    {
        const Dataset d = random_dataset(kind, 10, 11);
        const std::string bytes = serialize(d);
        std::istringstream in(bytes, std::ios::binary);
        const Dataset r = read_dataset(in);
        CHECK(r.waveform == d.waveform);
        CHECK(r.array.elements == d.array.elements);
        CHECK(r.array.spacing == d.array.spacing);
        CHECK(r.region == d.region);
        CHECK(r.n_p_max == d.n_p_max);
        CHECK(r.meta == d.meta);
        REQUIRE(r.snapshots.size() == 10);
        for (std::size_t i = 0; i < 10; ++i)
            CHECK(r.snapshots[i] == d.snapshots[i]);
        // Second pass is byte-identical.
        CHECK(serialize(r) == bytes);
    }
}

TEST_CASE("dataset_io - Empty dataset")
{
    const Dataset d = random_dataset(WaveformKind::wifi100, 0, 1);
    std::istringstream in(serialize(d), std::ios::binary);
    const Dataset r = read_dataset(in);
    CHECK(r.snapshots.empty());
    CHECK(r.waveform == d.waveform);
}

TEST_CASE("dataset_io - Payload layout")
{
    Dataset d = random_dataset(WaveformKind::waic, 1, 2);
    d.snapshots[0].csi.data()[0] = cd(1.0, -2.0);
    const std::string bytes = serialize(d);
    const auto header_end = bytes.find('\n');
    const auto record_end = bytes.find('\n', header_end + 1);
    const std::string payload = bytes.substr(record_end + 1);
    REQUIRE(payload.size() == 4 * 4 * 200 * 8);
    // float32 LE 1.0 = 00 00 80 3f, -2.0 = 00 00 00 c0
    CHECK(static_cast<unsigned char>(payload[3]) == 0x3f);
    CHECK(static_cast<unsigned char>(payload[2]) == 0x80);
    CHECK(static_cast<unsigned char>(payload[7]) == 0xc0);
}

TEST_CASE("dataset_io - Distinct parse errors")
{
    const Dataset d = random_dataset(WaveformKind::wifi40, 2, 5);
    const std::string bytes = serialize(d);
    const auto header_end = bytes.find('\n');

    CHECK(read_error("{not json\n") == DatasetErrorKind::malformed_header);
    CHECK(read_error("") == DatasetErrorKind::malformed_header);
    CHECK(read_error(bytes.substr(0, bytes.size() - 17)) == DatasetErrorKind::truncated_payload);

    // Header for a 200-tone grid in front of 114-tone payloads.
    Dataset waic_header = random_dataset(WaveformKind::waic, 0, 5);
    json h = dataset_header(waic_header);
    h["snapshot_count"] = 2;
    const std::string swapped = h.dump() + bytes.substr(header_end);
    CHECK(read_error(swapped) == DatasetErrorKind::shape_mismatch);

    // Header whose declared n_c disagrees with its own grid.
    json h2 = dataset_header(d);
    h2["n_c"] = 200;
    CHECK(read_error(h2.dump() + bytes.substr(header_end)) == DatasetErrorKind::shape_mismatch);

    // Broken record line.
    CHECK(read_error(bytes.substr(0, header_end + 1) + "{\"t\": 0}\n") == DatasetErrorKind::malformed_record);
}

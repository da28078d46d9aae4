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
#include <sstream>
#include <stdexcept>
#include <string>

#include "csiloc/core/csi.hpp"
#include "csiloc/core/json_io.hpp"
#include "csiloc/util/binary.hpp"

// Dataset file layout:
//   line 1   JSON header (waveform, grid, array, shape, snapshot count, provenance)
//   then per snapshot:
//     JSON record line {"t", "source", "truth", "payload_bytes"}
//     payload_bytes of little-endian float32 (re, im) pairs, (tx, rx, subcarrier) row-major

namespace csiloc
{
enum class DatasetErrorKind
{
    io,
    malformed_header,
    malformed_record,
    truncated_payload,
    shape_mismatch
};

class DatasetError : public std::runtime_error
{
  public:
    DatasetError(DatasetErrorKind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}
    DatasetErrorKind kind() const { return kind_; }

  private:
    DatasetErrorKind kind_;
};

inline constexpr const char *kDatasetFormat = "csiloc-dataset";
inline constexpr int kDatasetVersion = 1;

inline json dataset_header(const Dataset &d)
{
    json h;
    h["format"] = kDatasetFormat;
    h["version"] = kDatasetVersion;
    h["waveform"] = std::string(to_string(d.waveform.kind));
    h["f_center"] = d.waveform.center_frequency;
    h["bandwidth"] = d.waveform.bandwidth;
    h["subcarrier_spacing"] = d.waveform.subcarrier_spacing;
    h["ifft_length"] = d.waveform.ifft_length;
    h["active_indices"] = d.waveform.active_indices;
    h["n_tx"] = d.array.size();
    h["n_rx"] = d.array.size();
    h["n_c"] = d.waveform.subcarrier_count();
    h["n_p"] = d.n_p_max;
    h["array"] = to_json_points(d.array.elements);
    h["array_spacing"] = d.array.spacing;
    h["region"] = to_json_region(d.region);
    h["snapshot_count"] = d.snapshots.size();
    h["seed"] = d.meta.seed;
    h["config_hash"] = d.meta.config_hash;
    return h;
}

inline void write_dataset(const Dataset &d, std::ostream &out)
{
    const std::size_t n_tx = d.array.size();
    const std::size_t n_c = d.waveform.subcarrier_count();
    out << dataset_header(d).dump() << '\n';
    std::vector<char> buf;
    for (const auto &s : d.snapshots)
    {
        if (s.csi.n_tx() != n_tx || s.csi.n_rx() != n_tx || s.csi.n_c() != n_c)
            throw std::invalid_argument("write_dataset: snapshot shape does not match the header");
        json rec;
        rec["t"] = s.timestamp;
        rec["source"] = s.source_id;
        rec["truth"] = s.ground_truth ? to_json_points(*s.ground_truth) : json(nullptr);
        rec["payload_bytes"] = s.csi.size() * 8;
        out << rec.dump() << '\n';
        buf.clear();
        buf.reserve(s.csi.size() * 8);
        for (const auto &v : s.csi.data())
        {
            util::append_f32_le(buf, float(v.real()));
            util::append_f32_le(buf, float(v.imag()));
        }
        out.write(buf.data(), std::streamsize(buf.size()));
    }
    if (!out)
        throw DatasetError(DatasetErrorKind::io, "write_dataset: stream write failed");
}

inline void write_dataset(const Dataset &d, const std::filesystem::path &path)
{
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw DatasetError(DatasetErrorKind::io, "cannot open " + path.string() + " for writing");
    write_dataset(d, f);
}

namespace detail
{
inline json parse_json_line(std::istream &in, DatasetErrorKind kind, const std::string &what)
{
    std::string line;
    if (!std::getline(in, line))
        throw DatasetError(kind == DatasetErrorKind::malformed_record ? DatasetErrorKind::truncated_payload : kind,
                           what + ": unexpected end of file");
    try
    {
        return json::parse(line);
    }
    catch (const json::parse_error &e)
    {
        throw DatasetError(kind, what + ": " + e.what());
    }
}
} // namespace detail

inline Dataset read_dataset(std::istream &in)
{
    Dataset d;
    const json h = detail::parse_json_line(in, DatasetErrorKind::malformed_header, "dataset header");
    std::size_t n_tx = 0, n_rx = 0, n_c = 0, count = 0;
    try
    {
        if (h.at("format").get<std::string>() != kDatasetFormat)
            throw DatasetError(DatasetErrorKind::malformed_header, "dataset header: unknown format tag");
        d.waveform.kind = parse_waveform_kind(h.at("waveform").get<std::string>());
        d.waveform.center_frequency = h.at("f_center").get<double>();
        d.waveform.bandwidth = h.at("bandwidth").get<double>();
        d.waveform.subcarrier_spacing = h.at("subcarrier_spacing").get<double>();
        d.waveform.ifft_length = h.at("ifft_length").get<int>();
        d.waveform.active_indices = h.at("active_indices").get<std::vector<int>>();
        d.waveform.validate();
        n_tx = h.at("n_tx").get<std::size_t>();
        n_rx = h.at("n_rx").get<std::size_t>();
        n_c = h.at("n_c").get<std::size_t>();
        d.n_p_max = h.at("n_p").get<std::size_t>();
        d.array.elements = points_from_json(h.at("array"));
        d.array.spacing = h.at("array_spacing").get<double>();
        d.region = region_from_json(h.at("region"));
        count = h.at("snapshot_count").get<std::size_t>();
        d.meta.seed = h.value("seed", std::uint64_t{0});
        d.meta.config_hash = h.value("config_hash", std::string());
    }
    catch (const DatasetError &)
    {
        throw;
    }
    catch (const std::exception &e)
    {
        throw DatasetError(DatasetErrorKind::malformed_header, std::string("dataset header: ") + e.what());
    }
    if (n_c != d.waveform.subcarrier_count() || n_tx != d.array.size() || n_rx != d.array.size())
        throw DatasetError(DatasetErrorKind::shape_mismatch,
                           "dataset header: declared tensor shape disagrees with waveform grid or array");

    const std::size_t expected_bytes = n_tx * n_rx * n_c * 8;
    std::vector<char> buf;
    d.snapshots.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
    {
        const std::string where = "snapshot " + std::to_string(i);
        const json rec = detail::parse_json_line(in, DatasetErrorKind::malformed_record, where);
        CsiSnapshot s;
        std::size_t payload = 0;
        try
        {
            s.timestamp = rec.at("t").get<double>();
            s.source_id = rec.at("source").get<std::string>();
            if (!rec.at("truth").is_null())
                s.ground_truth = points_from_json(rec.at("truth"));
            payload = rec.at("payload_bytes").get<std::size_t>();
        }
        catch (const std::exception &e)
        {
            throw DatasetError(DatasetErrorKind::malformed_record, where + ": " + e.what());
        }
        if (payload != expected_bytes)
            throw DatasetError(DatasetErrorKind::shape_mismatch,
                               where + ": payload of " + std::to_string(payload) + " bytes, header shape needs " +
                                   std::to_string(expected_bytes));
        if (util::read_block(in, buf, payload) != payload)
            throw DatasetError(DatasetErrorKind::truncated_payload, where + ": payload truncated");
        s.csi = CsiTensor(n_tx, n_rx, n_c);
        auto &data = s.csi.data();
        for (std::size_t k = 0; k < data.size(); ++k)
            data[k] = cd(util::f32_from_le(buf.data() + 8 * k), util::f32_from_le(buf.data() + 8 * k + 4));
        if (!s.csi.all_finite())
            throw DatasetError(DatasetErrorKind::malformed_record, where + ": non-finite CSI value");
        d.snapshots.push_back(std::move(s));
    }
    return d;
}

inline Dataset read_dataset(const std::filesystem::path &path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw DatasetError(DatasetErrorKind::io, "cannot open " + path.string());
    return read_dataset(f);
}
} // namespace csiloc

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

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <vector>

namespace csiloc::util
{
// Little-endian float32 block I/O.

inline void append_f32_le(std::vector<char> &buf, float v)
{
    std::uint32_t u;
    std::memcpy(&u, &v, sizeof u);
    if constexpr (std::endian::native == std::endian::big)
        u = ((u & 0xFFu) << 24) | ((u & 0xFF00u) << 8) | ((u >> 8) & 0xFF00u) | (u >> 24);
    char b[4];
    std::memcpy(b, &u, 4);
    buf.insert(buf.end(), b, b + 4);
}

inline float f32_from_le(const char *p)
{
    std::uint32_t u;
    std::memcpy(&u, p, 4);
    if constexpr (std::endian::native == std::endian::big)
        u = ((u & 0xFFu) << 24) | ((u & 0xFF00u) << 8) | ((u >> 8) & 0xFF00u) | (u >> 24);
    float v;
    std::memcpy(&v, &u, sizeof v);
    return v;
}

// Reads up to n bytes; returns how many arrived.
inline std::size_t read_block(std::istream &in, std::vector<char> &buf, std::size_t n)
{
    buf.resize(n);
    in.read(buf.data(), std::streamsize(n));
    return std::size_t(in.gcount());
}
} // namespace csiloc::util

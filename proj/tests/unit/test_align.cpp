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

#include "csiloc/core/align.hpp"

#include <algorithm>
#include <random>

using namespace csiloc;

namespace
{
std::vector<CsiSnapshot> stream(const std::string &id, std::initializer_list<double> ts)
{
    std::vector<CsiSnapshot> out;
    for (double t : ts)
    {
        CsiSnapshot s;
        s.timestamp = t;
        s.source_id = id;
        s.csi = CsiTensor(1, 1, 1);
        out.push_back(s);
    }
    return out;
}
} // namespace

TEST_CASE("align_snapshots - Basic grouping")
{
    auto r = align_snapshots({stream("a", {0.00, 0.10}), stream("b", {0.001, 0.102})}, 5e-3);
    CHECK(r.groups.size() == 2);
    CHECK(r.dropped == 0);
    for (const auto &g : r.groups)
        CHECK(g.size() == 2);

    r = align_snapshots({stream("a", {0.0, 0.1, 0.2})}, 1e-3);
    CHECK(r.groups.size() == 3);
    CHECK(r.dropped == 0);

    r = align_snapshots({stream("a", {0.00}), stream("b", {0.02})}, 5e-3);
    CHECK(r.groups.empty());
    CHECK(r.dropped == 2);
}

TEST_CASE("align_snapshots - Errors")
{
    CHECK_THROWS_AS(align_snapshots({stream("a", {0.0})}, -1e-3), std::invalid_argument);
    CHECK_THROWS_AS(align_snapshots({stream("a", {0.2, 0.1})}, 1e-3), std::invalid_argument);
}

TEST_CASE("align_snapshots - Pairwise tolerance and one snapshot per source")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> jitter(-2e-3, 2e-3);
    std::vector<std::vector<CsiSnapshot>> streams(3);
    for (int s = 0; s < 3; ++s)
    {
        for (int k = 0; k < 40; ++k)
        {
            CsiSnapshot snap;
            snap.timestamp = 0.05 * k + jitter(rng);
            snap.source_id = "ap" + std::to_string(s);
            snap.csi = CsiTensor(1, 1, 1);
            if (k % 7 != s)
                streams[std::size_t(s)].push_back(snap);
        }
    }
    const double tol = 3e-3;
    const auto r = align_snapshots(streams, tol);
    std::size_t total = 0;
    for (const auto &s : streams)
        total += s.size();
    std::size_t grouped = 0;
    for (const auto &g : r.groups)
    {
        grouped += g.size();
        for (std::size_t i = 0; i < g.size(); ++i)
            for (std::size_t j = i + 1; j < g.size(); ++j)
            {
                CHECK(std::abs(g[i].timestamp - g[j].timestamp) <= tol);
                CHECK(g[i].source_id != g[j].source_id);
            }
    }
    CHECK(grouped + r.dropped == total);
}

TEST_CASE("align_snapshots - Invariant under stream permutation")
{
    std::vector<std::vector<CsiSnapshot>> streams{stream("a", {0.0, 0.1, 0.2, 0.31}), stream("b", {0.0005, 0.1004, 0.25}),
                                                  stream("c", {0.0002, 0.0999, 0.2001, 0.3})};
    const auto ref = align_snapshots(streams, 1e-3);
    std::vector<std::size_t> perm{0, 1, 2};
    while (std::next_permutation(perm.begin(), perm.end()))
    {
        std::vector<std::vector<CsiSnapshot>> p;
        for (auto i : perm)
            p.push_back(streams[i]);
        const auto r = align_snapshots(p, 1e-3);
        CHECK(r.dropped == ref.dropped);
        REQUIRE(r.groups.size() == ref.groups.size());
        for (std::size_t g = 0; g < r.groups.size(); ++g)
            CHECK(r.groups[g] == ref.groups[g]);
    }
}

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

#include "csiloc/util/svg.hpp"

#include <sstream>

using namespace csiloc;

namespace
{
// Every opened element is closed in order.
bool balanced(const std::string &svg)
{
    std::vector<std::string> stack;
    for (std::size_t i = svg.find('<'); i != std::string::npos; i = svg.find('<', i + 1))
    {
        const auto end = svg.find('>', i);
        if (end == std::string::npos)
            return false;
        const std::string tag = svg.substr(i + 1, end - i - 1);
        if (tag.empty() || tag[0] == '?' || tag[0] == '!' || tag.back() == '/')
            continue;
        if (tag[0] == '/')
        {
            if (stack.empty() || stack.back() != tag.substr(1))
                return false;
            stack.pop_back();
        }
        else
            stack.push_back(tag.substr(0, tag.find(' ')));
    }
    return stack.empty();
}
} // namespace

TEST_CASE("svg - Line plot")
{
    util::Series a{"radar <waic>", {{0.0, 0.0}, {0.5, 0.4}, {1.0, 1.0}}};
    util::Series b{"ann & co", {{0.0, 0.0}, {0.2, 1.0}}};
    std::ostringstream out;
    util::write_line_plot(out, "Error CDF", "error [m]", "fraction", {a, b}, "seed=1 -- hash=x");
    const std::string s = out.str();
    CHECK(s.rfind("<?xml", 0) == 0);
    CHECK(s.find("&lt;waic&gt;") != std::string::npos);
    CHECK(s.find("ann &amp; co") != std::string::npos);
    CHECK(s.find("<polyline") != std::string::npos);
    CHECK(balanced(s));
}

TEST_CASE("svg - Heatmap")
{
    std::vector<std::vector<double>> v{{0.0, 1.0, 2.0}, {3.0, 4.0, 5.0}};
    std::ostringstream out;
    util::write_heatmap(out, "map", "x", "y", v, {0.0, 3.0, 0.0, 2.0}, 0.0, 5.0);
    const std::string s = out.str();
    std::size_t rects = 0;
    for (auto i = s.find("<rect"); i != std::string::npos; i = s.find("<rect", i + 1))
        ++rects;
    CHECK(rects >= 6);
    CHECK(balanced(s));
}

TEST_CASE("svg - Axes fitting")
{
    const auto a = util::fit_axes({{"", {{1.0, 2.0}, {3.0, 5.0}}}});
    CHECK(a.x_min == 1.0);
    CHECK(a.x_max == 3.0);
    CHECK(a.y_min == 2.0);
    CHECK(a.y_max == 5.0);
    const auto flat = util::fit_axes({{"", {{1.0, 2.0}}}});
    CHECK(flat.x_max > flat.x_min);
    CHECK(flat.y_max > flat.y_min);
    CHECK(util::xml_escape("a\"b<>&") == "a&quot;b&lt;&gt;&amp;");
}

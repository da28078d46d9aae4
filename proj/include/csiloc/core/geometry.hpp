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

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace csiloc
{
struct Point2
{
    double x = 0.0;
    double y = 0.0;

    friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
    friend constexpr bool operator==(Point2 a, Point2 b) = default;
};

inline double norm(Point2 p) { return std::hypot(p.x, p.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }

// Axis-aligned rectangle, bounds inclusive.
struct Region
{
    double x_min = 0.0;
    double x_max = 0.0;
    double y_min = 0.0;
    double y_max = 0.0;

    bool valid() const { return x_max > x_min && y_max > y_min; }
    bool contains(Point2 p) const { return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max; }
    Point2 clamp(Point2 p) const { return {std::clamp(p.x, x_min, x_max), std::clamp(p.y, y_min, y_max)}; }
    Point2 center() const { return {0.5 * (x_min + x_max), 0.5 * (y_min + y_max)}; }
    double half_width() const { return 0.5 * (x_max - x_min); }
    double half_height() const { return 0.5 * (y_max - y_min); }

    // Maps the region onto [-1, 1] x [-1, 1].
    Point2 normalize(Point2 p) const
    {
        const auto c = center();
        return {(p.x - c.x) / half_width(), (p.y - c.y) / half_height()};
    }
    Point2 denormalize(Point2 q) const
    {
        const auto c = center();
        return {c.x + q.x * half_width(), c.y + q.y * half_height()};
    }
    Region shrunk(double margin) const { return {x_min + margin, x_max - margin, y_min + margin, y_max - margin}; }

    friend bool operator==(const Region &, const Region &) = default;
};

// Antenna elements in the scene plane. The localization chain assumes a
// uniform linear array; `spacing` is the element pitch in meters.
struct AntennaArray
{
    std::vector<Point2> elements;
    double spacing = 0.0;

    std::size_t size() const { return elements.size(); }

    // ULA centered on `center`, elements along +x, boresight along +y.
    static AntennaArray uniform_linear(std::size_t count, double spacing, Point2 center = {})
    {
        if (count == 0)
            throw std::invalid_argument("uniform_linear: element count must be positive");
        if (!(spacing > 0.0) && count > 1)
            throw std::invalid_argument("uniform_linear: spacing must be positive");
        AntennaArray a;
        a.spacing = spacing;
        const double offset = 0.5 * double(count - 1);
        for (std::size_t i = 0; i < count; ++i)
            a.elements.push_back({center.x + (double(i) - offset) * spacing, center.y});
        return a;
    }

    Point2 center() const
    {
        Point2 c{};
        for (const auto &e : elements)
            c = c + e;
        return (1.0 / double(elements.size())) * c;
    }

    // Unit vector from the first to the last element; +x for a single element.
    Point2 axis() const
    {
        if (elements.size() < 2)
            return {1.0, 0.0};
        const Point2 d = elements.back() - elements.front();
        return (1.0 / norm(d)) * d;
    }

    // Boresight: the axis rotated by +90 degrees.
    Point2 boresight() const
    {
        const auto u = axis();
        return {-u.y, u.x};
    }

    friend bool operator==(const AntennaArray &, const AntennaArray &) = default;
};
} // namespace csiloc

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
#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

// Minimal static SVG charts: line plots, scatter overlays and heatmaps.

namespace csiloc::util
{
inline std::string xml_escape(const std::string &s)
{
    std::string out;
    for (char c : s)
    {
        switch (c)
        {
        case '&':
            out += "&amp;";
            break;
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '"':
            out += "&quot;";
            break;
        default:
            out += c;
        }
    }
    return out;
}

inline std::string fmt_num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

struct Series
{
    std::string label;
    std::vector<std::pair<double, double>> points;
    std::string color = "#1f77b4";
    bool line = true; // polyline when true, dots otherwise
};

struct Axes
{
    double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
};

inline Axes fit_axes(const std::vector<Series> &series, double pad = 0.0)
{
    Axes a{1e300, -1e300, 1e300, -1e300};
    for (const auto &s : series)
        for (const auto &[x, y] : s.points)
        {
            a.x_min = std::min(a.x_min, x);
            a.x_max = std::max(a.x_max, x);
            a.y_min = std::min(a.y_min, y);
            a.y_max = std::max(a.y_max, y);
        }
    if (a.x_min > a.x_max)
        return {};
    if (a.x_max - a.x_min < 1e-12)
        a.x_max = a.x_min + 1.0;
    if (a.y_max - a.y_min < 1e-12)
        a.y_max = a.y_min + 1.0;
    const double px = pad * (a.x_max - a.x_min), py = pad * (a.y_max - a.y_min);
    return {a.x_min - px, a.x_max + px, a.y_min - py, a.y_max + py};
}

class SvgCanvas
{
  public:
    static constexpr double kWidth = 640, kHeight = 480, kLeft = 70, kRight = 20, kTop = 40, kBottom = 60;

    SvgCanvas(std::string title, std::string x_label, std::string y_label, Axes axes)
        : title_(std::move(title)), xl_(std::move(x_label)), yl_(std::move(y_label)), a_(axes)
    {
    }

    double px(double x) const { return kLeft + (x - a_.x_min) / (a_.x_max - a_.x_min) * (kWidth - kLeft - kRight); }
    double py(double y) const
    {
        return kHeight - kBottom - (y - a_.y_min) / (a_.y_max - a_.y_min) * (kHeight - kTop - kBottom);
    }

    void add(const std::string &element) { body_ << element << '\n'; }

    void add_series(const Series &s)
    {
        if (s.line)
        {
            std::ostringstream pts;
            for (const auto &[x, y] : s.points)
                pts << fmt_num(px(x)) << ',' << fmt_num(py(y)) << ' ';
            add("<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.5\" points=\"" + pts.str() +
                "\"/>");
        }
        else
            for (const auto &[x, y] : s.points)
                add("<circle cx=\"" + fmt_num(px(x)) + "\" cy=\"" + fmt_num(py(y)) + "\" r=\"1.8\" fill=\"" +
                    s.color + "\"/>");
        legend_.push_back({s.label, s.color});
    }

    void write(std::ostream &out, const std::string &comment = {}) const
    {
        out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
            << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
        if (!comment.empty())
            out << "<!-- " << xml_escape(comment) << " -->\n";
        out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        out << body_.str();
        // Frame, ticks and labels.
        const double x0 = px(a_.x_min), x1 = px(a_.x_max), y0 = py(a_.y_min), y1 = py(a_.y_max);
        out << "<rect x=\"" << fmt_num(x0) << "\" y=\"" << fmt_num(y1) << "\" width=\"" << fmt_num(x1 - x0)
            << "\" height=\"" << fmt_num(y0 - y1) << "\" fill=\"none\" stroke=\"black\"/>\n";
        for (int i = 0; i <= 5; ++i)
        {
            const double xv = a_.x_min + (a_.x_max - a_.x_min) * i / 5.0;
            const double yv = a_.y_min + (a_.y_max - a_.y_min) * i / 5.0;
            out << "<text x=\"" << fmt_num(px(xv)) << "\" y=\"" << fmt_num(y0 + 16)
                << "\" text-anchor=\"middle\">" << fmt_num(xv) << "</text>\n";
            out << "<text x=\"" << fmt_num(x0 - 6) << "\" y=\"" << fmt_num(py(yv) + 4) << "\" text-anchor=\"end\">"
                << fmt_num(yv) << "</text>\n";
        }
        out << "<text x=\"" << fmt_num(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
            << xml_escape(title_) << "</text>\n";
        out << "<text x=\"" << fmt_num((x0 + x1) / 2) << "\" y=\"" << fmt_num(kHeight - 18)
            << "\" text-anchor=\"middle\">" << xml_escape(xl_) << "</text>\n";
        out << "<text transform=\"translate(16," << fmt_num((y0 + y1) / 2)
            << ") rotate(-90)\" text-anchor=\"middle\">" << xml_escape(yl_) << "</text>\n";
        double ly = y1 + 16;
        for (const auto &[label, color] : legend_)
        {
            if (label.empty())
                continue;
            out << "<rect x=\"" << fmt_num(x1 - 150) << "\" y=\"" << fmt_num(ly - 9) << "\" width=\"10\" height=\"10\" fill=\""
                << color << "\"/>\n";
            out << "<text x=\"" << fmt_num(x1 - 135) << "\" y=\"" << fmt_num(ly) << "\">" << xml_escape(label)
                << "</text>\n";
            ly += 16;
        }
        out << "</svg>\n";
    }

  private:
    std::string title_, xl_, yl_;
    Axes a_;
    std::ostringstream body_;
    std::vector<std::pair<std::string, std::string>> legend_;
};

inline const char *palette(std::size_t i)
{
    static const char *colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};
    return colors[i % 6];
}

inline void write_line_plot(std::ostream &out, const std::string &title, const std::string &x_label,
                            const std::string &y_label, std::vector<Series> series, const std::string &comment = {})
{
    for (std::size_t i = 0; i < series.size(); ++i)
        series[i].color = palette(i);
    SvgCanvas c(title, x_label, y_label, fit_axes(series, 0.02));
    for (const auto &s : series)
        c.add_series(s);
    c.write(out, comment);
}

// Row-major grid values[row][col]; rows map to y, columns to x. Colors
// span [lo, hi] on a dark-to-bright ramp.
inline void write_heatmap(std::ostream &out, const std::string &title, const std::string &x_label,
                          const std::string &y_label, const std::vector<std::vector<double>> &values, Axes axes,
                          double lo, double hi, const std::string &comment = {})
{
    SvgCanvas c(title, x_label, y_label, axes);
    const std::size_t rows = values.size();
    const std::size_t cols = rows ? values.front().size() : 0;
    const double dx = (axes.x_max - axes.x_min) / double(std::max<std::size_t>(cols, 1));
    const double dy = (axes.y_max - axes.y_min) / double(std::max<std::size_t>(rows, 1));
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t k = 0; k < cols; ++k)
        {
            const double t = std::clamp((values[r][k] - lo) / std::max(hi - lo, 1e-12), 0.0, 1.0);
            char color[8];
            std::snprintf(color, sizeof color, "#%02x%02x%02x", int(255 * std::sqrt(t)), int(255 * t * t),
                          int(80 + 120 * (1 - t)));
            const double x = axes.x_min + dx * double(k), y = axes.y_min + dy * double(r + 1);
            c.add("<rect x=\"" + fmt_num(c.px(x)) + "\" y=\"" + fmt_num(c.py(y)) + "\" width=\"" +
                  fmt_num(c.px(x + dx) - c.px(x) + 0.5) + "\" height=\"" + fmt_num(c.py(y - dy) - c.py(y) + 0.5) +
                  "\" fill=\"" + color + "\"/>");
        }
    c.write(out, comment);
}
} // namespace csiloc::util

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

#include <array>
#include <span>
#include <stdexcept>
#include <vector>

#include "csiloc/core/csi.hpp"

namespace csiloc
{
// Daubechies wavelet with four vanishing moments (8 taps), scaling filter.
inline constexpr std::array<double, 8> kDb4Lowpass{
    0.23037781330885523,  0.7148465705525415,   0.6308807679295904,  -0.02798376941698385,
    -0.18703481171888114, 0.030841381835986965, 0.032883011666982945, -0.010597401784997278};

inline constexpr std::array<double, 8> db4_highpass()
{
    std::array<double, 8> g{};
    for (std::size_t k = 0; k < 8; ++k)
        g[k] = (k % 2 == 0 ? 1.0 : -1.0) * kDb4Lowpass[7 - k];
    return g;
}

// One level of the periodized orthogonal DWT. Input length must be even.
inline void dwt_step(std::span<const double> x, std::vector<double> &approx, std::vector<double> &detail)
{
    const std::size_t n = x.size();
    if (n == 0 || n % 2 != 0)
        throw std::invalid_argument("dwt_step: length must be even and positive");
    static constexpr auto g = db4_highpass();
    approx.assign(n / 2, 0.0);
    detail.assign(n / 2, 0.0);
    for (std::size_t i = 0; i < n / 2; ++i)
        for (std::size_t k = 0; k < 8; ++k)
        {
            const double v = x[(2 * i + k) % n];
            approx[i] += kDb4Lowpass[k] * v;
            detail[i] += g[k] * v;
        }
}

// Inverse of dwt_step (the transpose, since the transform is orthogonal).
inline std::vector<double> idwt_step(std::span<const double> approx, std::span<const double> detail)
{
    if (approx.size() != detail.size())
        throw std::invalid_argument("idwt_step: coefficient lengths differ");
    static constexpr auto g = db4_highpass();
    const std::size_t n = 2 * approx.size();
    std::vector<double> x(n, 0.0);
    for (std::size_t i = 0; i < approx.size(); ++i)
        for (std::size_t k = 0; k < 8; ++k)
            x[(2 * i + k) % n] += kDb4Lowpass[k] * approx[i] + g[k] * detail[i];
    return x;
}

// Decompose `levels` times, zero every detail band, reconstruct.
inline std::vector<double> wavelet_lowpass(std::span<const double> x, std::size_t levels)
{
    const std::size_t block = std::size_t{1} << levels;
    if (levels == 0 || x.size() < block || x.size() % block != 0)
        throw std::invalid_argument("wavelet_lowpass: length must be a positive multiple of 2^levels");
    std::vector<double> a(x.begin(), x.end()), approx, detail;
    for (std::size_t l = 0; l < levels; ++l)
    {
        dwt_step(a, approx, detail);
        a = approx;
    }
    for (std::size_t l = 0; l < levels; ++l)
    {
        const std::vector<double> zeros(a.size(), 0.0);
        a = idwt_step(a, zeros);
    }
    return a;
}

// Weights w with lowpass(x).back() == sum_t w[t] x[t] for series of length n.
inline std::vector<double> lowpass_tail_weights(std::size_t n, std::size_t levels)
{
    std::vector<double> w(n), e(n, 0.0);
    for (std::size_t t = 0; t < n; ++t)
    {
        e[t] = 1.0;
        w[t] = wavelet_lowpass(e, levels).back();
        e[t] = 0.0;
    }
    return w;
}

// Background from recent history: every tensor cell's time series (real and
// imaginary parts separately) is wavelet low-passed and the newest filtered
// value is kept. Uses the longest tail of `history` whose length is a
// multiple of 2^levels. Entries are ordered oldest first.
inline CsiTensor wavelet_background(std::span<const CsiTensor *const> history, std::size_t levels = 3)
{
    if (levels == 0)
        throw std::invalid_argument("wavelet_background: levels must be positive");
    const std::size_t block = std::size_t{1} << levels;
    if (history.size() < block)
        throw std::invalid_argument("wavelet_background: history shorter than 2^levels");
    const std::size_t n = history.size() / block * block;
    const auto window = history.subspan(history.size() - n);
    const CsiTensor &ref = *window.front();
    for (const auto *s : window)
        if (!s->same_shape(ref))
            throw std::invalid_argument("wavelet_background: snapshot shapes differ");

    const auto w = lowpass_tail_weights(n, levels);
    CsiTensor bg(ref.n_tx(), ref.n_rx(), ref.n_c());
    auto &out = bg.data();
    for (std::size_t t = 0; t < n; ++t)
    {
        const auto &src = window[t]->data();
        for (std::size_t c = 0; c < out.size(); ++c)
            out[c] += w[t] * src[c];
    }
    return bg;
}

inline CsiTensor wavelet_background(std::span<const CsiSnapshot> history, std::size_t levels = 3)
{
    std::vector<const CsiTensor *> ptrs;
    ptrs.reserve(history.size());
    for (const auto &s : history)
        ptrs.push_back(&s.csi);
    return wavelet_background(std::span<const CsiTensor *const>(ptrs), levels);
}
} // namespace csiloc

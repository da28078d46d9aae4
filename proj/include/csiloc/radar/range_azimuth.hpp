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

#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include "csiloc/core/constants.hpp"
#include "csiloc/core/waveform.hpp"
#include "csiloc/radar/virtual_array.hpp"

namespace csiloc
{
// Symmetric Hann window without zero end points.
inline std::vector<double> hann_window(std::size_t n)
{
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i)
        w[i] = 0.5 * (1.0 - std::cos(kTwoPi * double(i + 1) / double(n + 1)));
    return w;
}

struct RangeAzimuthMap
{
    Eigen::MatrixXd magnitudes;        // range_bins x angle_bins
    std::vector<double> range_axis;    // meters per row
    std::vector<double> sin_theta_axis; // per column
    double range_resolution = 0.0;     // c / (2B)
    double max_range = 0.0;            // c / (2 delta_f)
    double range_bin_spacing = 0.0;    // c / (2 B zero_pad) for full grids
    Point2 origin;
    Point2 axis{1.0, 0.0};
    Point2 boresight{0.0, 1.0};

    Eigen::Index range_bins() const { return magnitudes.rows(); }
    Eigen::Index angle_bins() const { return magnitudes.cols(); }

    Point2 to_position(double range, double sin_theta) const
    {
        const double c = std::sqrt(std::max(0.0, 1.0 - sin_theta * sin_theta));
        return origin + range * (sin_theta * axis + c * boresight);
    }
};

// Range-azimuth spectrum of a V x N_C virtual-array matrix.
//
// Rows of the matrix are scattered onto the waveform's full IFFT grid
// (inactive tones stay zero), Hann-weighted along both axes, transformed
// with an inverse DFT of length L * zero_pad along frequency and a forward
// DFT of length V * zero_pad along the array, then fft-shifted along angle:
//
//   X[n, m] = 1/sqrt(Nr Na) * sum_v sum_g w_v w_g G[v, g]
//             * exp(+j 2 pi g n / Nr) * exp(-j 2 pi v (m - Na/2) / Na)
//
// The 1/sqrt(Nr Na) factor makes the transform energy preserving.
inline Eigen::MatrixXcd range_azimuth_spectrum(const Eigen::MatrixXcd &vm, const WaveformConfig &wf,
                                               std::size_t zero_pad)
{
    if (zero_pad < 1)
        throw std::invalid_argument("range_azimuth_map: zero_pad must be at least 1");
    if (std::size_t(vm.cols()) != wf.subcarrier_count())
        throw std::invalid_argument("range_azimuth_map: column count differs from the active subcarrier count");
    if (vm.rows() < 1)
        throw std::invalid_argument("range_azimuth_map: empty virtual array");
    if (!vm.allFinite())
        throw std::invalid_argument("range_azimuth_map: non-finite input");

    const std::size_t v_count = std::size_t(vm.rows());
    const std::size_t grid = std::size_t(wf.ifft_length);
    const std::size_t nr = grid * zero_pad;
    const std::size_t na = v_count * zero_pad;
    const auto w_range = hann_window(grid);
    const auto w_angle = hann_window(v_count);

    Eigen::FFT<double> fft;
    fft.SetFlag(Eigen::FFT<double>::Unscaled);

    // Range compression per virtual element: R is V x Nr.
    Eigen::MatrixXcd r{Eigen::Index(v_count), Eigen::Index(nr)};
    std::vector<cd> in(nr), out(nr);
    for (std::size_t v = 0; v < v_count; ++v)
    {
        std::fill(in.begin(), in.end(), cd{});
        for (std::size_t n = 0; n < wf.active_indices.size(); ++n)
        {
            const auto g = std::size_t(wf.grid_position(wf.active_indices[n]));
            in[g] = w_angle[v] * w_range[g] * vm(Eigen::Index(v), Eigen::Index(n));
        }
        fft.inv(out.data(), in.data(), Eigen::Index(nr));
        for (std::size_t n = 0; n < nr; ++n)
            r(Eigen::Index(v), Eigen::Index(n)) = out[n];
    }

    // Angle transform per range bin, shifted so column na/2 is broadside.
    const double scale = 1.0 / std::sqrt(double(nr) * double(na));
    Eigen::MatrixXcd x{Eigen::Index(nr), Eigen::Index(na)};
    std::vector<cd> ain(na), aout(na);
    const std::size_t half = na / 2;
    for (std::size_t n = 0; n < nr; ++n)
    {
        std::fill(ain.begin(), ain.end(), cd{});
        for (std::size_t v = 0; v < v_count; ++v)
            ain[v] = r(Eigen::Index(v), Eigen::Index(n));
        fft.fwd(aout.data(), ain.data(), Eigen::Index(na));
        for (std::size_t m = 0; m < na; ++m)
            x(Eigen::Index(n), Eigen::Index(m)) = scale * aout[(m + na - half) % na];
    }
    return x;
}

// sin(theta) of fft-shifted angle bin m: (m - Na/2) * lambda_c / (2 dv Na),
// with dv the phase-center spacing (the factor 2 is the round trip).
inline std::vector<double> sin_theta_axis(const WaveformConfig &wf, const VirtualArray &va, std::size_t angle_bins)
{
    std::vector<double> s(angle_bins, 0.0);
    if (va.size() < 2 || va.spacing <= 0.0)
        return s;
    const double lambda = wf.center_wavelength();
    const double half = double(angle_bins / 2);
    for (std::size_t m = 0; m < angle_bins; ++m)
        s[m] = (double(m) - half) * lambda / (2.0 * va.spacing * double(angle_bins));
    return s;
}

inline RangeAzimuthMap range_azimuth_map(const Eigen::MatrixXcd &vm, const WaveformConfig &wf, const VirtualArray &va,
                                         std::size_t zero_pad = 8)
{
    if (std::size_t(vm.rows()) != va.size())
        throw std::invalid_argument("range_azimuth_map: row count differs from the virtual array size");
    const Eigen::MatrixXcd x = range_azimuth_spectrum(vm, wf, zero_pad);

    RangeAzimuthMap map;
    map.magnitudes = x.cwiseAbs();
    map.range_resolution = wf.range_resolution();
    map.max_range = wf.max_range();
    const std::size_t nr = std::size_t(x.rows());
    map.range_bin_spacing = kSpeedOfLight / (2.0 * wf.subcarrier_spacing * double(nr));
    map.range_axis.resize(nr);
    for (std::size_t n = 0; n < nr; ++n)
        map.range_axis[n] = double(n) * map.range_bin_spacing;
    map.sin_theta_axis = sin_theta_axis(wf, va, std::size_t(x.cols()));
    map.origin = va.origin;
    map.axis = va.axis;
    map.boresight = va.boresight;
    return map;
}
} // namespace csiloc

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
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "csiloc/core/csi.hpp"

namespace csiloc
{
enum class FeatureMode
{
    real_imag,      // (re, im) of csi - background
    magnitude_phase // (|z|, arg z) of csi - background
};

inline std::string_view to_string(FeatureMode m)
{
    return m == FeatureMode::real_imag ? "real_imag" : "magnitude_phase";
}

inline FeatureMode parse_feature_mode(std::string_view s)
{
    if (s == "real_imag")
        return FeatureMode::real_imag;
    if (s == "magnitude_phase")
        return FeatureMode::magnitude_phase;
    throw std::invalid_argument("unknown feature mode '" + std::string(s) + "'");
}

using FeatureVector = Eigen::VectorXd;

inline std::size_t feature_length(const CsiTensor &csi) { return 2 * csi.size(); }

// Background-subtracted CSI flattened to interleaved pairs, before scaling.
inline FeatureVector raw_features(const CsiTensor &csi, const CsiTensor &background,
                                  FeatureMode mode = FeatureMode::real_imag)
{
    if (!csi.same_shape(background))
        throw std::invalid_argument("extract_features: snapshot and background shapes differ");
    FeatureVector f(Eigen::Index(feature_length(csi)));
    const auto &a = csi.data();
    const auto &b = background.data();
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        const cd z = a[i] - b[i];
        if (mode == FeatureMode::real_imag)
        {
            f(Eigen::Index(2 * i)) = z.real();
            f(Eigen::Index(2 * i + 1)) = z.imag();
        }
        else
        {
            f(Eigen::Index(2 * i)) = std::abs(z);
            f(Eigen::Index(2 * i + 1)) = std::arg(z);
        }
    }
    return f;
}

// Per-feature standardization fitted on a training set.
struct FeatureStats
{
    Eigen::VectorXd mean;
    Eigen::VectorXd stddev;

    Eigen::Index size() const { return mean.size(); }

    void apply(FeatureVector &f) const
    {
        if (f.size() != mean.size())
            throw std::invalid_argument("FeatureStats: feature length mismatch");
        f = (f - mean).cwiseQuotient(stddev);
    }

    // Columns are samples.
    template <typename Derived> void apply_columns(Eigen::MatrixBase<Derived> &x) const
    {
        using S = typename Derived::Scalar;
        if (x.rows() != mean.size())
            throw std::invalid_argument("FeatureStats: feature length mismatch");
        const auto m = mean.cast<S>().eval();
        const auto inv = stddev.cwiseInverse().cast<S>().eval();
        for (Eigen::Index c = 0; c < x.cols(); ++c)
            x.col(c) = (x.col(c) - m).cwiseProduct(inv);
    }
};

// Population mean and standard deviation per row over the given columns.
// Near-constant features keep unit scale.
template <typename Derived>
FeatureStats fit_feature_stats(const Eigen::MatrixBase<Derived> &x, const std::vector<Eigen::Index> &columns)
{
    if (columns.empty())
        throw std::invalid_argument("fit_feature_stats: no samples");
    FeatureStats s;
    s.mean = Eigen::VectorXd::Zero(x.rows());
    for (auto c : columns)
        s.mean += x.col(c).template cast<double>();
    s.mean /= double(columns.size());
    Eigen::VectorXd var = Eigen::VectorXd::Zero(x.rows());
    for (auto c : columns)
        var += (x.col(c).template cast<double>() - s.mean).cwiseAbs2();
    var /= double(columns.size());
    s.stddev = var.cwiseSqrt();
    for (Eigen::Index i = 0; i < s.stddev.size(); ++i)
        if (!(s.stddev(i) > 1e-12))
            s.stddev(i) = 1.0;
    return s;
}

inline FeatureVector extract_features(const CsiSnapshot &snapshot, const CsiTensor &background,
                                      const FeatureStats &stats, FeatureMode mode = FeatureMode::real_imag)
{
    FeatureVector f = raw_features(snapshot.csi, background, mode);
    stats.apply(f);
    return f;
}
} // namespace csiloc

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
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "csiloc/core/geometry.hpp"

namespace csiloc
{
// Output layout: [N_P + 1 count logits | x_0, y_0, ..., x_{N_P-1}, y_{N_P-1}].
struct HeadLayout
{
    std::size_t n_p = 1;

    std::size_t count_size() const { return n_p + 1; }
    std::size_t coord_offset() const { return n_p + 1; }
    std::size_t output_size() const { return (n_p + 1) + 2 * n_p; }
};

// How truth targets bind to the regression slots.
enum class SlotBinding
{
    canonical,  // truth sorted by x then y
    assignment  // slots matched to truth by minimum squared error
};

inline std::string_view to_string(SlotBinding b) { return b == SlotBinding::canonical ? "canonical" : "assignment"; }

inline SlotBinding parse_slot_binding(std::string_view s)
{
    if (s == "canonical")
        return SlotBinding::canonical;
    if (s == "assignment")
        return SlotBinding::assignment;
    throw std::invalid_argument("unknown slot binding '" + std::string(s) + "'");
}

struct LossWeights
{
    double count = 1.0;
    double coord = 1.0;
};

inline std::vector<Point2> canonical_order(std::vector<Point2> pts)
{
    std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    return pts;
}

// Numerically stable softmax of a logit vector.
template <typename Derived> Eigen::VectorXd softmax(const Eigen::MatrixBase<Derived> &logits)
{
    Eigen::VectorXd z = logits.template cast<double>();
    z.array() -= z.maxCoeff();
    z = z.array().exp().matrix();
    return z / z.sum();
}

namespace detail
{
inline double slot_cost(const double *o, Point2 t) { return (o[0] - t.x) * (o[0] - t.x) + (o[1] - t.y) * (o[1] - t.y); }

// Truth index bound to each of the first c slots.
template <typename Scalar>
std::vector<std::size_t> bind_slots(const Scalar *coords, const std::vector<Point2> &truth, SlotBinding binding)
{
    std::vector<std::size_t> order(truth.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (binding == SlotBinding::canonical || truth.size() < 2)
        return order;
    std::vector<std::size_t> best = order;
    double best_cost = std::numeric_limits<double>::infinity();
    do
    {
        double cost = 0.0;
        for (std::size_t s = 0; s < order.size(); ++s)
        {
            const double o[2] = {double(coords[2 * s]), double(coords[2 * s + 1])};
            cost += slot_cost(o, truth[order[s]]);
        }
        if (cost < best_cost)
        {
            best_cost = cost;
            best = order;
        }
    } while (std::next_permutation(order.begin(), order.end()));
    return best;
}
} // namespace detail

// Loss of one output column and its gradient with respect to that column.
// Truth positions are in normalized units. Canonical binding sorts them.
template <typename Scalar>
double sample_loss(const Eigen::Ref<const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>> &output,
                   const std::vector<Point2> &truth_in, const HeadLayout &head, const LossWeights &weights,
                   SlotBinding binding, Eigen::Matrix<Scalar, Eigen::Dynamic, 1> *grad = nullptr)
{
    if (std::size_t(output.size()) != head.output_size())
        throw std::invalid_argument("loss: output size does not match head layout");
    const std::size_t c = truth_in.size();
    if (c > head.n_p)
        throw std::invalid_argument("loss: truth count exceeds N_P");
    const std::vector<Point2> truth = binding == SlotBinding::canonical ? canonical_order(truth_in) : truth_in;

    const Eigen::VectorXd p = softmax(output.head(Eigen::Index(head.count_size())));
    double loss = -weights.count * std::log(std::max(p(Eigen::Index(c)), std::numeric_limits<double>::min()));

    const Scalar *coords = output.data() + head.coord_offset();
    const auto bound = detail::bind_slots(coords, truth, binding);
    double coord = 0.0;
    for (std::size_t s = 0; s < c; ++s)
    {
        const double o[2] = {double(coords[2 * s]), double(coords[2 * s + 1])};
        coord += detail::slot_cost(o, truth[bound[s]]);
    }
    if (c > 0)
        loss += weights.coord * coord / double(c);

    if (grad)
    {
        grad->setZero(output.size());
        for (std::size_t k = 0; k < head.count_size(); ++k)
            (*grad)(Eigen::Index(k)) = Scalar(weights.count * (p(Eigen::Index(k)) - (k == c ? 1.0 : 0.0)));
        for (std::size_t s = 0; s < c; ++s)
        {
            const Point2 t = truth[bound[s]];
            const double scale = 2.0 * weights.coord / double(c);
            const auto at = Eigen::Index(head.coord_offset() + 2 * s);
            (*grad)(at) = Scalar(scale * (double(coords[2 * s]) - t.x));
            (*grad)(at + 1) = Scalar(scale * (double(coords[2 * s + 1]) - t.y));
        }
    }
    return loss;
}

// Mean loss over the columns of a batch; grad receives d(mean loss)/d(output).
template <typename Scalar>
double batch_loss(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> &output,
                  const std::vector<std::vector<Point2>> &truth, const HeadLayout &head, const LossWeights &weights,
                  SlotBinding binding, Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> *grad = nullptr)
{
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    if (std::size_t(output.cols()) != truth.size())
        throw std::invalid_argument("loss: batch size mismatch");
    if (output.cols() == 0)
        throw std::invalid_argument("loss: empty batch");
    if (grad)
        grad->resize(output.rows(), output.cols());
    double total = 0.0;
    Vector g;
    const double inv = 1.0 / double(output.cols());
    for (Eigen::Index i = 0; i < output.cols(); ++i)
    {
        total += sample_loss<Scalar>(output.col(i), truth[std::size_t(i)], head, weights, binding, grad ? &g : nullptr);
        if (grad)
            grad->col(i) = g * Scalar(inv);
    }
    return total * inv;
}
} // namespace csiloc

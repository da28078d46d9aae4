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
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace csiloc
{
// Fully connected network: ReLU on hidden layers, linear output layer.
// Batches are column-major, one sample per column.
template <typename Scalar> class Mlp
{
  public:
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    struct Cache
    {
        std::vector<Matrix> activations; // input, then each hidden layer's ReLU output
        Matrix output;
    };

    struct Gradients
    {
        std::vector<Matrix> weights;
        std::vector<Vector> biases;
    };

    Mlp() = default;

    // layer_sizes = {input, hidden..., output}; weights start at zero.
    explicit Mlp(std::vector<std::size_t> layer_sizes) : sizes_(std::move(layer_sizes))
    {
        if (sizes_.size() < 2)
            throw std::invalid_argument("Mlp: need at least input and output sizes");
        for (auto s : sizes_)
            if (s == 0)
                throw std::invalid_argument("Mlp: layer sizes must be positive");
        for (std::size_t l = 0; l + 1 < sizes_.size(); ++l)
        {
            w_.push_back(Matrix::Zero(Eigen::Index(sizes_[l + 1]), Eigen::Index(sizes_[l])));
            b_.push_back(Vector::Zero(Eigen::Index(sizes_[l + 1])));
        }
    }

    // Weights uniform in +-1/sqrt(fan_in), zero biases.
    template <typename Engine> void initialize(Engine &rng)
    {
        for (auto &w : w_)
        {
            const double limit = std::sqrt(1.0 / double(w.cols()));
            std::uniform_real_distribution<double> u(-limit, limit);
            for (Eigen::Index c = 0; c < w.cols(); ++c)
                for (Eigen::Index r = 0; r < w.rows(); ++r)
                    w(r, c) = Scalar(u(rng));
        }
        for (auto &b : b_)
            b.setZero();
    }

    const std::vector<std::size_t> &layer_sizes() const { return sizes_; }
    std::size_t layer_count() const { return w_.size(); }
    std::size_t input_size() const { return sizes_.front(); }
    std::size_t output_size() const { return sizes_.back(); }

    std::vector<Matrix> &weights() { return w_; }
    const std::vector<Matrix> &weights() const { return w_; }
    std::vector<Vector> &biases() { return b_; }
    const std::vector<Vector> &biases() const { return b_; }

    std::size_t parameter_count() const
    {
        std::size_t n = 0;
        for (std::size_t l = 0; l < w_.size(); ++l)
            n += std::size_t(w_[l].size() + b_[l].size());
        return n;
    }

    Matrix forward(const Matrix &x) const
    {
        check_input(x);
        Matrix a = x;
        for (std::size_t l = 0; l < w_.size(); ++l)
        {
            Matrix z = (w_[l] * a).colwise() + b_[l];
            if (l + 1 < w_.size())
                z = z.cwiseMax(Scalar(0));
            a = std::move(z);
        }
        return a;
    }

    Matrix forward(const Matrix &x, Cache &cache) const
    {
        check_input(x);
        cache.activations.clear();
        cache.activations.push_back(x);
        for (std::size_t l = 0; l < w_.size(); ++l)
        {
            Matrix z = (w_[l] * cache.activations.back()).colwise() + b_[l];
            if (l + 1 < w_.size())
                cache.activations.push_back(z.cwiseMax(Scalar(0)));
            else
                cache.output = std::move(z);
        }
        return cache.output;
    }

    // Backpropagates d(loss)/d(output) through the cached pass. Gradients
    // are summed over the batch columns.
    Gradients backward(const Cache &cache, const Matrix &d_output) const
    {
        Gradients g;
        g.weights.resize(w_.size());
        g.biases.resize(b_.size());
        Matrix delta = d_output;
        for (std::size_t l = w_.size(); l-- > 0;)
        {
            const Matrix &a_in = cache.activations[l];
            g.weights[l].noalias() = delta * a_in.transpose();
            g.biases[l] = delta.rowwise().sum();
            if (l == 0)
                break;
            Matrix back = w_[l].transpose() * delta;
            // ReLU derivative: pass where the activation is positive.
            delta = back.cwiseProduct((a_in.array() > Scalar(0)).template cast<Scalar>().matrix());
        }
        return g;
    }

    // Product of per-layer spectral norms; a Lipschitz bound of the map.
    double lipschitz_bound() const
    {
        double l = 1.0;
        for (const auto &w : w_)
        {
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(w.template cast<double>());
            l *= svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
        }
        return l;
    }

    template <typename Other> Mlp<Other> cast() const
    {
        Mlp<Other> out(sizes_);
        for (std::size_t l = 0; l < w_.size(); ++l)
        {
            out.weights()[l] = w_[l].template cast<Other>();
            out.biases()[l] = b_[l].template cast<Other>();
        }
        return out;
    }

    friend bool operator==(const Mlp &a, const Mlp &b)
    {
        if (a.sizes_ != b.sizes_)
            return false;
        for (std::size_t l = 0; l < a.w_.size(); ++l)
            if (a.w_[l] != b.w_[l] || a.b_[l] != b.b_[l])
                return false;
        return true;
    }

  private:
    void check_input(const Matrix &x) const
    {
        if (std::size_t(x.rows()) != sizes_.front())
            throw std::invalid_argument("Mlp: input dimension mismatch");
    }

    std::vector<std::size_t> sizes_;
    std::vector<Matrix> w_;
    std::vector<Vector> b_;
};
} // namespace csiloc

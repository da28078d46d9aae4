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

#include "csiloc/nn/localizer.hpp"

#include <random>

using namespace csiloc;

namespace
{
using MatD = Eigen::MatrixXd;

MatD random_input(Eigen::Index rows, Eigen::Index cols, std::mt19937_64 &gen)
{
    std::normal_distribution<double> n;
    MatD x(rows, cols);
    for (Eigen::Index i = 0; i < x.size(); ++i)
        x(i) = n(gen);
    return x;
}

double total_loss(const Mlp<double> &net, const MatD &x, const std::vector<std::vector<Point2>> &truth,
                  const HeadLayout &head)
{
    return batch_loss<double>(net.forward(x), truth, head, {}, SlotBinding::canonical);
}
} // namespace

TEST_CASE("Mlp - Gradient matches finite differences")
{
    std::mt19937_64 gen(3);
    const HeadLayout head{2};
    for (int trial = 0; trial < 4; ++trial)
    {
        Mlp<double> net({6, 9, 7, head.output_size()});
        net.initialize(gen);
        for (auto &b : net.biases())
            b = random_input(b.size(), 1, gen) * 0.1;
        const MatD x = random_input(6, 3, gen);
        const std::vector<std::vector<Point2>> truth{{}, {{0.2, -0.4}}, {{0.5, 0.1}, {-0.3, 0.7}}};

        Mlp<double>::Cache cache;
        MatD grad;
        batch_loss<double>(net.forward(x, cache), truth, head, {}, SlotBinding::canonical, &grad);
        const auto g = net.backward(cache, grad);

        const double h = 1e-5;
        double worst = 0.0;
        auto check = [&](double &param, double analytic) {
            const double keep = param;
            param = keep + h;
            const double up = total_loss(net, x, truth, head);
            param = keep - h;
            const double down = total_loss(net, x, truth, head);
            param = keep;
            const double numeric = (up - down) / (2.0 * h);
            const double scale = std::max({std::abs(analytic), std::abs(numeric), 1e-6});
            worst = std::max(worst, std::abs(analytic - numeric) / scale);
        };
        for (std::size_t l = 0; l < net.layer_count(); ++l)
        {
            for (Eigen::Index i = 0; i < net.weights()[l].size(); ++i)
                check(net.weights()[l](i), g.weights[l](i));
            for (Eigen::Index i = 0; i < net.biases()[l].size(); ++i)
                check(net.biases()[l](i), g.biases[l](i));
        }
        CHECK(worst < 1e-4);
    }
}

TEST_CASE("Mlp - Shapes and validation")
{
    CHECK_THROWS_AS(Mlp<float>({4}), std::invalid_argument);
    CHECK_THROWS_AS(Mlp<float>({4, 0, 2}), std::invalid_argument);
    Mlp<float> net({4, 3, 2});
    CHECK(net.parameter_count() == 4 * 3 + 3 + 3 * 2 + 2);
    CHECK(net.forward(Eigen::MatrixXf::Ones(4, 5)).cols() == 5);
    CHECK(net.forward(Eigen::MatrixXf::Ones(4, 5)).rows() == 2);
    CHECK_THROWS_AS(net.forward(Eigen::MatrixXf::Ones(3, 1)), std::invalid_argument);

    std::mt19937_64 a(9), b(9);
    Mlp<float> n1({4, 3, 2}), n2({4, 3, 2});
    n1.initialize(a);
    n2.initialize(b);
    CHECK(n1 == n2);
    CHECK(n1.cast<double>().cast<float>() == n1);
    const float limit = 1.0f / std::sqrt(4.0f);
    CHECK(n1.weights()[0].cwiseAbs().maxCoeff() <= limit);
}

TEST_CASE("forward - Softmax head is a simplex")
{
    std::mt19937_64 gen(5);
    LocalizerModel model;
    model.head.n_p = 2;
    model.region = {-1.5, 1.5, 0.5, 3.5};
    model.net = Mlp<float>({8, 16, model.head.output_size()});
    model.net.initialize(gen);
    model.stats.mean = Eigen::VectorXd::Zero(8);
    model.stats.stddev = Eigen::VectorXd::Ones(8);
    for (int i = 0; i < 50; ++i)
    {
        const FeatureVector f = random_input(8, 1, gen) * double(1 + 10 * i);
        const auto r = forward(model, f);
        REQUIRE(r.count_probs.size() == 3);
        CHECK(std::abs(r.count_probs.sum() - 1.0) < 1e-9);
        CHECK(r.count_probs.minCoeff() >= 0.0);
        REQUIRE(r.coords.size() == 2);
        for (const auto &p : r.coords)
            CHECK(model.region.contains(p));
    }
    CHECK_THROWS_AS(forward(model, FeatureVector::Zero(7)), std::invalid_argument);

    // Huge logits stay finite.
    Eigen::VectorXf big(model.head.output_size());
    big.setZero();
    big(0) = 1e30f;
    const auto r = decode_output(model, big);
    CHECK(r.count_probs(0) == Catch::Approx(1.0));
}

TEST_CASE("forward - Zero model is uniform")
{
    for (std::size_t n_p : {1, 2, 3})
    {
        LocalizerModel model;
        model.head.n_p = n_p;
        model.region = {-1.0, 1.0, 0.0, 2.0};
        model.net = Mlp<float>({5, 4, model.head.output_size()});
        const auto r = forward(model, FeatureVector::Ones(5));
        for (Eigen::Index k = 0; k < r.count_probs.size(); ++k)
            CHECK(r.count_probs(k) == Catch::Approx(1.0 / double(n_p + 1)).epsilon(1e-12));
        for (const auto &p : r.coords)
            CHECK(p == Point2{0.0, 1.0});
    }
}

TEST_CASE("forward - Lipschitz bound")
{
    std::mt19937_64 gen(8);
    Mlp<double> net({12, 20, 10, 7});
    net.initialize(gen);
    const double l = net.lipschitz_bound();
    CHECK(l > 0.0);
    for (int i = 0; i < 100; ++i)
    {
        const MatD x = random_input(12, 1, gen);
        MatD y = x;
        const auto k = Eigen::Index(i % 12);
        const double delta = 1e-3 * double(1 + i);
        y(k) += delta;
        CHECK((net.forward(y) - net.forward(x)).norm() <= l * delta * (1.0 + 1e-12));
    }
}

TEST_CASE("to_prediction - Count selects slots")
{
    ForwardResult r;
    r.count_probs = Eigen::VectorXd(3);
    r.count_probs << 0.1, 0.2, 0.7;
    r.coords = {{0.1, 1.0}, {0.4, 2.0}};
    const auto p = to_prediction(r);
    CHECK(p.count == 2);
    REQUIRE(p.positions.size() == 2);
    CHECK(p.positions[1] == Point2{0.4, 2.0});
    r.count_probs << 0.8, 0.1, 0.1;
    CHECK(to_prediction(r).positions.empty());
}

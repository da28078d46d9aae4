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
#include <array>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "csiloc/core/geometry.hpp"

namespace csiloc
{
inline double location_error(Point2 pred, Point2 truth) { return distance(pred, truth); }

struct MatchResult
{
    std::vector<std::pair<std::size_t, std::size_t>> pairs; // (prediction, truth), ordered by truth index
    std::vector<double> errors;                             // per pair, meters
    double total_error = 0.0;
    std::vector<std::size_t> missed;       // truth indices without a prediction
    std::vector<std::size_t> false_alarms; // prediction indices without a truth
};

// Minimum-total-distance one-to-one assignment by exhaustive search over
// permutations. Intended for the handful of targets per frame; cost grows
// factorially with the longer list.
inline MatchResult match_targets(const std::vector<Point2> &preds, const std::vector<Point2> &truths)
{
    MatchResult r;
    const std::size_t n = std::min(preds.size(), truths.size());
    const bool preds_longer = preds.size() > truths.size();
    const auto &longer = preds_longer ? preds : truths;
    const auto &shorter = preds_longer ? truths : preds;

    std::vector<std::size_t> perm(longer.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::vector<std::size_t> best = perm;
    double best_cost = std::numeric_limits<double>::infinity();
    if (n > 0)
    {
        do
        {
            double cost = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                cost += distance(shorter[i], longer[perm[i]]);
            if (cost < best_cost)
            {
                best_cost = cost;
                best = perm;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
    }

    std::vector<bool> used(longer.size(), false);
    for (std::size_t i = 0; i < n; ++i)
    {
        used[best[i]] = true;
        const std::size_t p = preds_longer ? best[i] : i;
        const std::size_t t = preds_longer ? i : best[i];
        r.pairs.emplace_back(p, t);
    }
    std::sort(r.pairs.begin(), r.pairs.end(), [](auto a, auto b) { return a.second < b.second; });
    for (const auto &[p, t] : r.pairs)
    {
        r.errors.push_back(location_error(preds[p], truths[t]));
        r.total_error += r.errors.back();
    }
    for (std::size_t j = 0; j < longer.size(); ++j)
        if (!used[j])
            (preds_longer ? r.false_alarms : r.missed).push_back(j);
    return r;
}

// 1 when predicted and true pair distances fall on the same side of the
// distancing threshold, else 0.
inline int threshold_accuracy(const std::array<Point2, 2> &pred_pair, const std::array<Point2, 2> &true_pair,
                              double threshold_m)
{
    if (!(threshold_m > 0.0))
        throw std::invalid_argument("threshold_accuracy: threshold must be positive");
    const bool pred_close = distance(pred_pair[0], pred_pair[1]) < threshold_m;
    const bool true_close = distance(true_pair[0], true_pair[1]) < threshold_m;
    return pred_close == true_close ? 1 : 0;
}
} // namespace csiloc

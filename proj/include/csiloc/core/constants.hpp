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

#include <numbers>

namespace csiloc
{
// Propagation speed. Resolution and unambiguous-range figures of the three
// waveforms are stated with c = 3e8 m/s, so the whole toolkit uses it.
inline constexpr double kSpeedOfLight = 3.0e8;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
} // namespace csiloc

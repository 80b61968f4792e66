// Copyright 2026 The ptp-toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <span>
#include <vector>

namespace ptp {

/// Quantile by linear interpolation of order statistics: for sorted values
/// v[0..n-1] and fraction q in [0,1], the result is v at fractional position
/// p = (n-1)*q, interpolating linearly between neighbours. values need not be
/// pre-sorted; a sorted copy is taken. Empty input is the caller's error.
double quantile_linear(std::span<const double> values, double q);

/// Same, but over values already sorted ascending (no copy).
double quantile_linear_sorted(std::span<const double> sorted, double q);

/// Half-up rounding to a fixed number of decimals, used only at report
/// emission; internal math stays full precision.
double round_half_up(double value, int decimals);

}  // namespace ptp

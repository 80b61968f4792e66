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

#include <cstdint>
#include <random>
#include <vector>

namespace ptp {

// Seeded randomness for splits and synthetic cohorts. The base generator is
// std::mt19937_64, whose output sequence is fixed by the standard; all draws
// derived from it (bounded integers, unit reals, shuffles) are implemented
// here rather than with std:: distributions, which are implementation-defined
// and would break bit-reproducibility of plans across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Unbiased integer in [0, bound) via rejection sampling. bound must be > 0.
    std::uint64_t uniform_below(std::uint64_t bound);

    /// Integer in [lo, hi] inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

    /// Real in [0, 1) with 53 random mantissa bits.
    double uniform01();

    /// Real in [lo, hi).
    double uniform_real(double lo, double hi);

    /// Standard normal deviate (Box-Muller, non-caching form).
    double normal();

    /// Gamma(shape, 1) deviate, shape > 0 (Marsaglia-Tsang squeeze).
    double gamma(double shape);

    /// Beta(alpha, beta) deviate, both parameters > 0.
    double beta(double alpha, double beta);

    /// First k entries of a Fisher-Yates partial shuffle of [0, n): a uniform
    /// k-subset of indices in draw order, without replacement.
    std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k);

private:
    std::mt19937_64 engine_;
};

/// Derives an independent stream seed from a base seed and a stream tag
/// (splitmix64 finalizer), so distinct artifacts never share a stream.
std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t tag) noexcept;

}  // namespace ptp

/*
   Copyright 2026 The fuzzylb Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
 */
#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace fuzzylb {

/// Independent substreams, one per purpose, so that runs which differ only in
/// policy consume identical graph/arrival/demand/speed/placement draws.
enum class Stream : std::uint32_t { Graph = 1, Arrivals = 2, Demands = 3, Speeds = 4, Placement = 5 };

/**
 * Seedable generator with a fixed, portable output sequence.
 *
 * The engine is std::mt19937_64 seeded through std::seed_seq with
 * (seed low word, seed high word, stream id); both are fully specified by the
 * standard. Variates are derived here rather than through <random>
 * distributions, whose algorithms are implementation-defined.
 */
class Rng {
public:
    static constexpr std::string_view kAlgorithm = "mt19937_64/seed_seq(seed_lo,seed_hi,stream)";

    explicit Rng(std::uint64_t seed, std::uint32_t stream = 0);
    Rng(std::uint64_t seed, Stream stream) : Rng(seed, static_cast<std::uint32_t>(stream)) {}

    std::uint64_t next_u64() { return engine_(); }
    /// Uniform on [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    /// Uniform on [lo, hi); returns lo when lo == hi.
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
    /// Exponential with the given rate, by inversion.
    double exponential(double rate);
    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n);

private:
    std::mt19937_64 engine_;
};

}  // namespace fuzzylb

// Copyright 2026 The qfarith Authors
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

// All randomness flows through std::mt19937_64, whose output sequence is
// fixed by the standard. The standard distributions are not, so the
// conversions below are spelled out by hand.

#pragma once

#include <cstdint>
#include <random>

namespace qfarith {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Child seed for node `index` under `parent` in the seed tree.
inline std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) {
    return splitmix64(splitmix64(parent) ^ splitmix64(index + 0x632BE59BD9B4E019ull));
}

inline Rng make_rng(std::uint64_t parent, std::uint64_t index) {
    return Rng(derive_seed(parent, index));
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, bound) by rejection; bound must be positive.
inline std::uint64_t uniform_below(Rng &rng, std::uint64_t bound) {
    const std::uint64_t limit = bound * ((~std::uint64_t{0}) / bound);
    std::uint64_t r;
    do {
        r = rng();
    } while (r >= limit);
    return r % bound;
}

/// Hashes a string into a seed-tree index.
inline std::uint64_t hash_label(const char *text) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (; *text; ++text) {
        h = (h ^ static_cast<unsigned char>(*text)) * 0x100000001B3ull;
    }
    return h;
}

}  // namespace qfarith

/**************************************************************************
 * rng.hpp
 *
 * Copyright 2026 The aelcodes Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 **************************************************************************/

#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace aelcodes {

// Seeds are derived, never shared: every component gets
// splitmix64(root ^ fnv1a(component name)), and per-try streams mix in the
// try index the same way. std::mt19937_64's output sequence is fixed by the
// standard; the distributions in <random> are not, so draws go through the
// helpers below.

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a(std::string_view text) noexcept
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : text) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

constexpr std::uint64_t derive_seed(std::uint64_t root, std::string_view component) noexcept
{
    return splitmix64(root ^ fnv1a(component));
}

constexpr std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) noexcept
{
    return splitmix64(root ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, bound); bound > 0.
    std::uint64_t below(std::uint64_t bound)
    {
        // rejection on the top of the range keeps this exactly uniform
        const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
        std::uint64_t x = engine_();
        while (x >= limit) {
            x = engine_();
        }
        return x % bound;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    bool coin() { return (engine_() >> 63) != 0; }

    template <class T>
    void shuffle(std::vector<T>& items)
    {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::swap(items[i - 1], items[below(i)]);
        }
    }

    std::vector<std::uint32_t> permutation(std::size_t n)
    {
        std::vector<std::uint32_t> p(n);
        for (std::size_t i = 0; i < n; ++i) {
            p[i] = static_cast<std::uint32_t>(i);
        }
        shuffle(p);
        return p;
    }

private:
    std::mt19937_64 engine_;
};

} // namespace aelcodes

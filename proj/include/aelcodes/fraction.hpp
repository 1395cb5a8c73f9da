/**************************************************************************
 * fraction.hpp
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

#include <cmath>
#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include "error.hpp"

namespace aelcodes {

/// Exact rational number with 64-bit numerator and positive denominator.
///
/// All code-distance quantities (fractional Hamming distances, list-decoding
/// slacks, erasure fractions) are carried as Fractions. Intermediate products
/// are formed in 128 bits; a result that does not fit back into 64 bits throws
/// std::overflow_error instead of wrapping.
class Fraction {
public:
    constexpr Fraction() = default;
    constexpr Fraction(std::int64_t value) : num_(value) {} // NOLINT(google-explicit-constructor)

    Fraction(std::int64_t num, std::int64_t den) { assign(num, den); }

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }

    double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// Smallest multiple of 2^-32 that is >= x. Used to turn a floating point
    /// bound into an exact rational one without ever rounding it down.
    static Fraction upper_bound_of(double x)
    {
        constexpr double scale = 4294967296.0;
        if (!std::isfinite(x) || std::fabs(x) > 1e9) {
            throw std::overflow_error("Fraction::upper_bound_of: value out of range");
        }
        return {static_cast<std::int64_t>(std::ceil(x * scale)), std::int64_t{1} << 32};
    }

    /// Parses "a/b", "a", or a finite decimal such as "-0.125".
    static Fraction parse(const std::string& text)
    {
        const auto fail_parse = [&]() -> Fraction {
            fail(ErrorKind::InvalidParameter, "cannot parse fraction '" + text + "'");
        };
        if (text.empty()) {
            return fail_parse();
        }
        try {
            if (auto slash = text.find('/'); slash != std::string::npos) {
                std::size_t used_num = 0;
                std::size_t used_den = 0;
                const auto num_text = text.substr(0, slash);
                const auto den_text = text.substr(slash + 1);
                const std::int64_t n = std::stoll(num_text, &used_num);
                const std::int64_t d = std::stoll(den_text, &used_den);
                if (used_num != num_text.size() || used_den != den_text.size() || d == 0) {
                    return fail_parse();
                }
                return {n, d};
            }
            const auto dot = text.find('.');
            if (dot == std::string::npos) {
                std::size_t used = 0;
                const std::int64_t n = std::stoll(text, &used);
                if (used != text.size()) {
                    return fail_parse();
                }
                return {n};
            }
            const bool negative = text[0] == '-';
            const std::string int_part = text.substr(negative ? 1 : 0, dot - (negative ? 1 : 0));
            const std::string frac_part = text.substr(dot + 1);
            if (frac_part.empty() || frac_part.size() > 17) {
                return fail_parse();
            }
            std::int64_t den = 1;
            for (std::size_t i = 0; i < frac_part.size(); ++i) {
                if (frac_part[i] < '0' || frac_part[i] > '9') {
                    return fail_parse();
                }
                den *= 10;
            }
            for (char c : int_part) {
                if (c < '0' || c > '9') {
                    return fail_parse();
                }
            }
            const std::int64_t whole = int_part.empty() ? 0 : std::stoll(int_part);
            const std::int64_t frac = std::stoll(frac_part);
            Fraction value = Fraction(whole) + Fraction(frac, den);
            return negative ? -value : value;
        } catch (const std::logic_error&) {
            return fail_parse();
        }
    }

    std::string to_string() const
    {
        if (den_ == 1) {
            return std::to_string(num_);
        }
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    friend Fraction operator+(const Fraction& a, const Fraction& b)
    {
        return from_wide(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                         static_cast<__int128>(a.den_) * b.den_);
    }
    friend Fraction operator-(const Fraction& a, const Fraction& b)
    {
        return from_wide(static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_,
                         static_cast<__int128>(a.den_) * b.den_);
    }
    friend Fraction operator*(const Fraction& a, const Fraction& b)
    {
        return from_wide(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
    }
    friend Fraction operator/(const Fraction& a, const Fraction& b)
    {
        if (b.num_ == 0) {
            fail(ErrorKind::DivisionByZero, "fraction division by zero");
        }
        return from_wide(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
    }
    Fraction operator-() const { return from_wide(-static_cast<__int128>(num_), den_); }

    Fraction& operator+=(const Fraction& o) { return *this = *this + o; }
    Fraction& operator-=(const Fraction& o) { return *this = *this - o; }
    Fraction& operator*=(const Fraction& o) { return *this = *this * o; }
    Fraction& operator/=(const Fraction& o) { return *this = *this / o; }

    friend bool operator==(const Fraction& a, const Fraction& b) noexcept
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) noexcept
    {
        const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
        const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
        if (lhs < rhs) {
            return std::strong_ordering::less;
        }
        if (lhs > rhs) {
            return std::strong_ordering::greater;
        }
        return std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Fraction& f) { return os << f.to_string(); }

private:
    static __int128 gcd128(__int128 a, __int128 b)
    {
        if (a < 0) {
            a = -a;
        }
        if (b < 0) {
            b = -b;
        }
        while (b != 0) {
            const __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    static Fraction from_wide(__int128 num, __int128 den)
    {
        if (den == 0) {
            fail(ErrorKind::DivisionByZero, "fraction with zero denominator");
        }
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const __int128 g = gcd128(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        constexpr __int128 lo = INT64_MIN;
        constexpr __int128 hi = INT64_MAX;
        if (num < lo || num > hi || den > hi) {
            throw std::overflow_error("Fraction: result does not fit in 64 bits");
        }
        Fraction out;
        out.num_ = static_cast<std::int64_t>(num);
        out.den_ = static_cast<std::int64_t>(den);
        return out;
    }

    void assign(std::int64_t num, std::int64_t den) { *this = from_wide(num, den); }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

inline Fraction min(const Fraction& a, const Fraction& b) { return b < a ? b : a; }
inline Fraction max(const Fraction& a, const Fraction& b) { return a < b ? b : a; }

} // namespace aelcodes

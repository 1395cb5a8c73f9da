/**************************************************************************
 * outer_code.hpp
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
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "fraction.hpp"
#include "gf.hpp"
#include "linear_code.hpp"

namespace aelcodes {

/// Reed-Solomon code: messages are coefficient vectors (low degree first) of
/// polynomials of degree < k, evaluated at n distinct points.
class RSOuterCode {
public:
    RSOuterCode(Field field, std::size_t dimension, std::vector<Elem> points)
        : field_(std::move(field)), k_(dimension), points_(std::move(points)), code_(build(field_, k_, points_))
    {
    }

    const Field& field() const noexcept { return field_; }
    std::size_t length() const noexcept { return points_.size(); }
    std::size_t dimension() const noexcept { return k_; }
    const std::vector<Elem>& points() const noexcept { return points_; }
    const LinearCode& code() const noexcept { return code_; }

    /// floor((n - k) / 2), the number of errors Berlekamp-Welch corrects.
    std::size_t max_errors() const noexcept { return (length() - k_) / 2; }

    Fraction decoding_radius() const
    {
        return {static_cast<std::int64_t>(max_errors()), static_cast<std::int64_t>(length())};
    }

    /// MDS distance (n - k + 1) / n.
    Fraction distance() const
    {
        return {static_cast<std::int64_t>(length() - k_ + 1), static_cast<std::int64_t>(length())};
    }

    friend bool operator==(const RSOuterCode& a, const RSOuterCode& b)
    {
        return a.field_ == b.field_ && a.k_ == b.k_ && a.points_ == b.points_;
    }

private:
    static LinearCode build(const Field& f, std::size_t k, const std::vector<Elem>& pts)
    {
        require(!pts.empty(), ErrorKind::InvalidParameter, "RS code needs at least one point");
        require(k >= 1 && k <= pts.size(), ErrorKind::InvalidParameter, "need 1 <= k <= n");
        require(f.order() >= pts.size(), ErrorKind::FieldTooSmall, f.name() + " has fewer than n elements");
        for (auto a : pts) {
            require(f.contains(a), ErrorKind::InvalidParameter, "evaluation point outside the field");
        }
        require(std::set<Elem>(pts.begin(), pts.end()).size() == pts.size(), ErrorKind::InvalidParameter,
                "evaluation points must be distinct");
        Matrix gen(k, std::vector<Elem>(pts.size(), 0));
        for (std::size_t j = 0; j < k; ++j) {
            for (std::size_t i = 0; i < pts.size(); ++i) {
                gen[j][i] = f.pow(pts[i], j);
            }
        }
        return {f, pts.size(), std::move(gen)};
    }

    Field field_;
    std::size_t k_;
    std::vector<Elem> points_;
    LinearCode code_;
};

/// RS[n, k] over `field`; default evaluation points are the elements 0..n-1.
inline RSOuterCode make_reed_solomon(const Field& field, std::size_t n, std::size_t k,
                                     std::optional<std::vector<Elem>> points = std::nullopt)
{
    if (!points) {
        require(field.order() >= n, ErrorKind::FieldTooSmall, field.name() + " has fewer than n elements");
        points.emplace();
        for (std::size_t i = 0; i < n; ++i) {
            points->push_back(static_cast<Elem>(i));
        }
    }
    require(points->size() == n, ErrorKind::LengthMismatch, "need exactly n evaluation points");
    return {field, k, std::move(*points)};
}

inline Word rs_outer_encode(const RSOuterCode& code, std::span<const Elem> msg) { return code.code().encode(msg); }

/// Berlekamp-Welch. Returns the codeword within `radius` of `word` when one
/// exists, nullopt otherwise. Never returns a codeword outside the radius.
inline std::optional<Word> rs_unique_decode(const RSOuterCode& code, const Word& word, const Fraction& radius)
{
    require(radius <= code.decoding_radius(), ErrorKind::RadiusTooLarge,
            "radius " + radius.to_string() + " exceeds the unique decoding radius " +
                code.decoding_radius().to_string());
    require(word.size() == code.length(), ErrorKind::LengthMismatch, "received word has wrong length");
    const Field& f = code.field();
    for (auto y : word) {
        require(f.contains(y), ErrorKind::InvalidParameter, "received symbol outside the field");
    }
    if (radius < Fraction(0)) {
        return std::nullopt;
    }
    const std::size_t n = code.length();
    const std::size_t k = code.dimension();
    const Fraction scaled = radius * Fraction(static_cast<std::int64_t>(n));
    const auto e = static_cast<std::size_t>(scaled.num() / scaled.den());

    // unknowns: E_0..E_{e-1} (E monic of degree e), then Q_0..Q_{e+k-1}
    const std::size_t unknowns = e + (e + k);
    Matrix system(n, std::vector<Elem>(unknowns + 1, 0));
    for (std::size_t i = 0; i < n; ++i) {
        const Elem a = code.points()[i];
        const auto y = static_cast<Elem>(word[i]);
        Elem power = 1;
        for (std::size_t j = 0; j < e + k; ++j) {
            if (j < e) {
                system[i][j] = f.neg(f.mul(y, power));
            }
            system[i][e + j] = power;
            if (j == e) { // right-hand side y * a^e from the monic term
                system[i][unknowns] = f.mul(y, power);
            }
            power = f.mul(power, a);
        }
    }
    const auto pivots = row_reduce(f, system);
    if (!pivots.empty() && pivots.back() == unknowns) {
        return std::nullopt;
    }
    std::vector<Elem> solution(unknowns, 0);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        solution[pivots[r]] = system[r][unknowns];
    }
    Poly E(solution.begin(), solution.begin() + static_cast<std::ptrdiff_t>(e));
    E.push_back(1);
    Poly Q(solution.begin() + static_cast<std::ptrdiff_t>(e), solution.end());
    auto [P, rem] = poly::divmod(f, Q, E);
    if (!rem.empty() || poly::degree(P) >= static_cast<int>(k)) {
        return std::nullopt;
    }
    P.resize(k, 0);
    Word decoded = code.code().encode(P);
    if (hamming_distance(decoded, word) > e) {
        return std::nullopt;
    }
    return decoded;
}

} // namespace aelcodes

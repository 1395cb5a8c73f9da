/**************************************************************************
 * gf.hpp
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
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "error.hpp"

namespace aelcodes {

/// Canonical representative of a field element: the coefficient vector of
/// its polynomial residue read as a base-p integer (low coefficient first).
using Elem = std::uint32_t;

inline constexpr std::uint64_t kMaxFieldOrder = std::uint64_t{1} << 20;

namespace detail {

inline bool is_prime(std::uint64_t p)
{
    if (p < 2) {
        return false;
    }
    for (std::uint64_t d = 2; d * d <= p; ++d) {
        if (p % d == 0) {
            return false;
        }
    }
    return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) {
                n /= d;
            }
        }
    }
    if (n > 1) {
        out.push_back(n);
    }
    return out;
}

// Dense polynomials over the prime field GF(p), low coefficient first.
using PrimePoly = std::vector<std::uint32_t>;

inline void trim(PrimePoly& a)
{
    while (!a.empty() && a.back() == 0) {
        a.pop_back();
    }
}

inline std::uint32_t inv_mod_prime(std::uint32_t a, std::uint32_t p)
{
    // Fermat; p is tiny so this is never hot
    std::uint64_t result = 1;
    std::uint64_t base = a % p;
    std::uint64_t e = p - 2;
    while (e > 0) {
        if (e & 1) {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(result);
}

/// Remainder of a modulo b over GF(p); b must be nonzero after trimming.
inline PrimePoly prime_poly_mod(PrimePoly a, PrimePoly b, std::uint32_t p)
{
    trim(a);
    trim(b);
    const std::uint32_t lead_inv = inv_mod_prime(b.back(), p);
    while (a.size() >= b.size()) {
        const std::uint64_t factor = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) {
            const std::uint64_t sub = factor * b[i] % p;
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
        }
        trim(a);
    }
    return a;
}

inline PrimePoly decode_poly(std::uint64_t code, std::uint32_t p)
{
    PrimePoly out;
    while (code > 0) {
        out.push_back(static_cast<std::uint32_t>(code % p));
        code /= p;
    }
    return out;
}

} // namespace detail

/// True iff the polynomial with the given coefficients (low first) is
/// irreducible over GF(p). Trial division by every monic polynomial of degree
/// 1..deg/2, so only meant for the small degrees used here.
inline bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& coeffs)
{
    detail::PrimePoly f = coeffs;
    detail::trim(f);
    if (f.size() < 2) {
        return false;
    }
    const std::size_t deg = f.size() - 1;
    for (std::size_t div_deg = 1; div_deg <= deg / 2; ++div_deg) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < div_deg; ++i) {
            count *= p;
        }
        for (std::uint64_t low = 0; low < count; ++low) {
            detail::PrimePoly g = detail::decode_poly(low, p);
            g.resize(div_deg + 1, 0);
            g[div_deg] = 1;
            if (detail::prime_poly_mod(f, g, p).empty()) {
                return false;
            }
        }
    }
    return true;
}

/// Finite field GF(p^m), p prime, order capped at 2^20.
///
/// Multiplication goes through log/exp tables built once at construction;
/// the tables are shared between copies, so a Field is a cheap immutable
/// value that can be passed across threads.
class Field {
public:
    /// Builds GF(p^m) using the lexicographically smallest monic irreducible
    /// modulus of degree m (smallest integer encoding).
    static Field make(std::uint32_t p, std::uint32_t m)
    {
        require(detail::is_prime(p), ErrorKind::NonPrimeCharacteristic,
                "characteristic " + std::to_string(p) + " is not prime");
        require(m >= 1, ErrorKind::InvalidParameter, "extension degree must be >= 1");
        std::uint64_t q = 1;
        for (std::uint32_t i = 0; i < m; ++i) {
            q *= p;
            require(q <= kMaxFieldOrder, ErrorKind::FieldTooLarge,
                    "GF(" + std::to_string(p) + "^" + std::to_string(m) + ") exceeds 2^20 elements");
        }

        std::vector<std::uint32_t> modulus;
        if (m == 1) {
            modulus = {0, 1};
        } else {
            for (std::uint64_t low = 0; low < q; ++low) {
                auto candidate = detail::decode_poly(low, p);
                candidate.resize(m + 1, 0);
                candidate[m] = 1;
                if (is_irreducible(p, candidate)) {
                    modulus = std::move(candidate);
                    break;
                }
            }
        }
        return Field(p, m, std::move(modulus));
    }

    /// Builds GF(p^m) with an explicit modulus (low coefficient first, monic).
    static Field with_modulus(std::uint32_t p, std::vector<std::uint32_t> modulus)
    {
        require(detail::is_prime(p), ErrorKind::NonPrimeCharacteristic,
                "characteristic " + std::to_string(p) + " is not prime");
        require(modulus.size() >= 2 && modulus.back() == 1, ErrorKind::InvalidParameter,
                "modulus must be monic of degree >= 1");
        for (auto c : modulus) {
            require(c < p, ErrorKind::InvalidParameter, "modulus coefficient out of range");
        }
        const auto m = static_cast<std::uint32_t>(modulus.size() - 1);
        std::uint64_t q = 1;
        for (std::uint32_t i = 0; i < m; ++i) {
            q *= p;
            require(q <= kMaxFieldOrder, ErrorKind::FieldTooLarge, "field exceeds 2^20 elements");
        }
        require(is_irreducible(p, modulus), ErrorKind::InvalidParameter, "modulus is not irreducible");
        return Field(p, m, std::move(modulus));
    }

    std::uint32_t characteristic() const noexcept { return impl_->p; }
    std::uint32_t degree() const noexcept { return impl_->m; }
    std::uint32_t order() const noexcept { return impl_->q; }
    const std::vector<std::uint32_t>& modulus() const noexcept { return impl_->modulus; }

    static constexpr Elem zero() noexcept { return 0; }
    static constexpr Elem one() noexcept { return 1; }

    bool contains(std::uint64_t a) const noexcept { return a < impl_->q; }

    Elem add(Elem a, Elem b) const noexcept
    {
        const auto& im = *impl_;
        if (im.p == 2) {
            return a ^ b;
        }
        if (im.m == 1) {
            const std::uint32_t s = a + b;
            return s >= im.p ? s - im.p : s;
        }
        Elem out = 0;
        Elem place = 1;
        for (std::uint32_t i = 0; i < im.m; ++i) {
            out += ((a % im.p + b % im.p) % im.p) * place;
            a /= im.p;
            b /= im.p;
            place *= im.p;
        }
        return out;
    }

    Elem neg(Elem a) const noexcept
    {
        const auto& im = *impl_;
        if (im.p == 2) {
            return a;
        }
        if (im.m == 1) {
            return a == 0 ? 0 : im.p - a;
        }
        Elem out = 0;
        Elem place = 1;
        for (std::uint32_t i = 0; i < im.m; ++i) {
            out += ((im.p - a % im.p) % im.p) * place;
            a /= im.p;
            place *= im.p;
        }
        return out;
    }

    Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }

    Elem mul(Elem a, Elem b) const noexcept
    {
        if (a == 0 || b == 0) {
            return 0;
        }
        const auto& im = *impl_;
        return im.exp[im.log[a] + im.log[b]];
    }

    Elem inv(Elem a) const
    {
        require(a != 0, ErrorKind::DivisionByZero, "inverse of zero");
        const auto& im = *impl_;
        if (im.q == 2) {
            return 1;
        }
        return im.exp[(im.q - 1 - im.log[a]) % (im.q - 1)];
    }

    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    Elem pow(Elem a, std::uint64_t e) const noexcept
    {
        if (e == 0) {
            return 1;
        }
        if (a == 0) {
            return 0;
        }
        const auto& im = *impl_;
        const std::uint64_t order = im.q - 1;
        return im.exp[static_cast<std::uint32_t>((static_cast<std::uint64_t>(im.log[a]) * (e % order)) % order)];
    }

    /// Smallest (by encoding) element of multiplicative order q-1.
    Elem generator() const noexcept { return impl_->generator; }

    /// Discrete log base generator(); a != 0.
    std::uint32_t log(Elem a) const
    {
        require(a != 0, ErrorKind::DivisionByZero, "log of zero");
        return impl_->log[a];
    }

    std::string name() const
    {
        if (impl_->m == 1) {
            return "GF(" + std::to_string(impl_->p) + ")";
        }
        return "GF(" + std::to_string(impl_->p) + "^" + std::to_string(impl_->m) + ")";
    }

    friend bool operator==(const Field& a, const Field& b) noexcept
    {
        return a.impl_ == b.impl_ || (a.impl_->p == b.impl_->p && a.impl_->modulus == b.impl_->modulus);
    }

private:
    struct Impl {
        std::uint32_t p = 2;
        std::uint32_t m = 1;
        std::uint32_t q = 2;
        std::vector<std::uint32_t> modulus;
        Elem generator = 1;
        std::vector<Elem> exp; // length 2(q-1) so log a + log b never wraps
        std::vector<std::uint32_t> log;
    };

    Field(std::uint32_t p, std::uint32_t m, std::vector<std::uint32_t> modulus)
    {
        auto im = std::make_shared<Impl>();
        im->p = p;
        im->m = m;
        im->q = 1;
        for (std::uint32_t i = 0; i < m; ++i) {
            im->q *= p;
        }
        im->modulus = std::move(modulus);
        im->generator = find_generator(*im);
        build_tables(*im);
        impl_ = std::move(im);
    }

    // Schoolbook product reduced by the modulus; only used before the tables exist.
    static Elem slow_mul(const Impl& im, Elem a, Elem b)
    {
        const auto pa = detail::decode_poly(a, im.p);
        const auto pb = detail::decode_poly(b, im.p);
        if (pa.empty() || pb.empty()) {
            return 0;
        }
        detail::PrimePoly prod(pa.size() + pb.size() - 1, 0);
        for (std::size_t i = 0; i < pa.size(); ++i) {
            for (std::size_t j = 0; j < pb.size(); ++j) {
                prod[i + j] = static_cast<std::uint32_t>(
                    (prod[i + j] + static_cast<std::uint64_t>(pa[i]) * pb[j]) % im.p);
            }
        }
        const auto rem = detail::prime_poly_mod(prod, im.modulus, im.p);
        Elem out = 0;
        Elem place = 1;
        for (auto c : rem) {
            out += c * place;
            place *= im.p;
        }
        return out;
    }

    static Elem slow_pow(const Impl& im, Elem a, std::uint64_t e)
    {
        Elem result = 1;
        Elem base = a;
        while (e > 0) {
            if (e & 1) {
                result = slow_mul(im, result, base);
            }
            base = slow_mul(im, base, base);
            e >>= 1;
        }
        return result;
    }

    static Elem find_generator(const Impl& im)
    {
        if (im.q == 2) {
            return 1;
        }
        const std::uint64_t order = im.q - 1;
        const auto factors = detail::prime_factors(order);
        for (Elem g = 2; g < im.q; ++g) {
            bool primitive = true;
            for (auto r : factors) {
                if (slow_pow(im, g, order / r) == 1) {
                    primitive = false;
                    break;
                }
            }
            if (primitive) {
                return g;
            }
        }
        return 1; // unreachable: F_q^* is cyclic
    }

    static void build_tables(Impl& im)
    {
        const std::uint32_t order = im.q - 1;
        im.exp.assign(2 * static_cast<std::size_t>(order) + 1, 0);
        im.log.assign(im.q, 0);
        Elem x = 1;
        for (std::uint32_t i = 0; i < order; ++i) {
            im.exp[i] = x;
            im.log[x] = i;
            x = slow_mul(im, x, im.generator);
        }
        for (std::uint32_t i = order; i < im.exp.size(); ++i) {
            im.exp[i] = im.exp[i - order];
        }
    }

    std::shared_ptr<const Impl> impl_;
};

/// Field element bound to its field; mixing fields throws FieldMismatch.
class FieldElement {
public:
    FieldElement(Field field, std::uint64_t value) : field_(std::move(field)), value_(static_cast<Elem>(value))
    {
        require(field_.contains(value), ErrorKind::InvalidParameter,
                "value " + std::to_string(value) + " outside " + field_.name());
    }

    const Field& field() const noexcept { return field_; }
    Elem value() const noexcept { return value_; }
    bool is_zero() const noexcept { return value_ == 0; }

    FieldElement inv() const { return {field_, field_.inv(value_)}; }
    FieldElement pow(std::uint64_t e) const { return {field_, field_.pow(value_, e)}; }

    /// Multiplicative order; zero has no order and throws DivisionByZero.
    std::uint64_t order() const
    {
        require(value_ != 0, ErrorKind::DivisionByZero, "zero has no multiplicative order");
        std::uint64_t k = 1;
        Elem x = value_;
        while (x != 1) {
            x = field_.mul(x, value_);
            ++k;
        }
        return k;
    }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b)
    {
        check_same(a, b);
        return {a.field_, a.field_.add(a.value_, b.value_)};
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b)
    {
        check_same(a, b);
        return {a.field_, a.field_.sub(a.value_, b.value_)};
    }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b)
    {
        check_same(a, b);
        return {a.field_, a.field_.mul(a.value_, b.value_)};
    }
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b)
    {
        check_same(a, b);
        return {a.field_, a.field_.div(a.value_, b.value_)};
    }
    FieldElement operator-() const { return {field_, field_.neg(value_)}; }

    friend bool operator==(const FieldElement& a, const FieldElement& b) noexcept
    {
        return a.value_ == b.value_ && a.field_ == b.field_;
    }

    friend std::ostream& operator<<(std::ostream& os, const FieldElement& e) { return os << e.value_; }

private:
    static void check_same(const FieldElement& a, const FieldElement& b)
    {
        require(a.field_ == b.field_, ErrorKind::FieldMismatch,
                "operands from " + a.field_.name() + " and " + b.field_.name());
    }

    Field field_;
    Elem value_;
};

inline FieldElement multiplicative_generator(const Field& field) { return {field, field.generator()}; }

/// Polynomials over a Field, low coefficient first.
using Poly = std::vector<Elem>;

namespace poly {

inline void trim(Poly& a)
{
    while (!a.empty() && a.back() == 0) {
        a.pop_back();
    }
}

/// Degree of a trimmed polynomial; -1 for zero.
inline int degree(const Poly& a)
{
    for (std::size_t i = a.size(); i > 0; --i) {
        if (a[i - 1] != 0) {
            return static_cast<int>(i - 1);
        }
    }
    return -1;
}

inline Elem eval(const Field& f, const Poly& a, Elem x) noexcept
{
    Elem acc = 0;
    for (std::size_t i = a.size(); i > 0; --i) {
        acc = f.add(f.mul(acc, x), a[i - 1]);
    }
    return acc;
}

inline Poly mul(const Field& f, const Poly& a, const Poly& b)
{
    if (a.empty() || b.empty()) {
        return {};
    }
    Poly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) {
            continue;
        }
        for (std::size_t j = 0; j < b.size(); ++j) {
            out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
        }
    }
    trim(out);
    return out;
}

/// Returns {quotient, remainder}; divisor must be nonzero.
inline std::pair<Poly, Poly> divmod(const Field& f, Poly a, Poly b)
{
    trim(a);
    trim(b);
    require(!b.empty(), ErrorKind::DivisionByZero, "polynomial division by zero");
    if (a.size() < b.size()) {
        return {{}, a};
    }
    Poly q(a.size() - b.size() + 1, 0);
    const Elem lead_inv = f.inv(b.back());
    while (a.size() >= b.size()) {
        const Elem factor = f.mul(a.back(), lead_inv);
        const std::size_t shift = a.size() - b.size();
        q[shift] = factor;
        for (std::size_t i = 0; i < b.size(); ++i) {
            a[shift + i] = f.sub(a[shift + i], f.mul(factor, b[i]));
        }
        trim(a);
    }
    trim(q);
    return {q, a};
}

} // namespace poly

} // namespace aelcodes

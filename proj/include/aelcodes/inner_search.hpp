/**************************************************************************
 * inner_search.hpp
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

#include <chrono>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "error.hpp"
#include "fraction.hpp"
#include "gf.hpp"
#include "linear_code.hpp"
#include "plurality.hpp"
#include "rng.hpp"

namespace aelcodes {

// A code C is (delta0, k, eps) average-radius list decodable with erasures
// when for every partially erased center g (erasure fraction s) and every
// H subset of C with |H| <= k:
//
//     sum_{h in H} Delta(g, h) >= (|H| - 1) * (delta0 - s - eps).
//
// Per coordinate, the best center picks the plurality symbol of H, so the
// worst case over all g is a finite computation per H. Erasing a coordinate
// raises the slack by (maxcount - 1)/n >= 0, hence the erasure-free check
// already decides the full definition.

struct ArldCertificate {
    Fraction delta0;
    std::size_t k = 1;
    /// Smallest eps for which the definition holds, clamped at 0.
    Fraction eps_min;
    /// Unclamped max over H of delta0 - sum_h Delta(g*, h)/(|H|-1); equal to
    /// eps_min whenever that is positive. Meaningless when the witness is empty.
    Fraction eps_worst;
    std::vector<std::size_t> witness;
    Word witness_center;
    std::size_t length = 0;
    std::uint64_t codebook_size = 0;
    std::uint64_t subsets_examined = 0;
    /// Minimum plurality total per tuple size 2..k.
    std::vector<std::uint64_t> min_total_by_size;
    double runtime_ms = 0.0;
    /// The s = 0 sweep covers every erasure pattern by slack monotonicity.
    bool covers_erasures = true;
};

/// delta0 - total / (n (m - 1)): the eps a tuple of size m with plurality
/// total `total` forces.
inline Fraction forced_eps(const Fraction& delta0, std::uint64_t total, std::size_t n, std::size_t m)
{
    return delta0 - Fraction(static_cast<std::int64_t>(total), static_cast<std::int64_t>(n * (m - 1)));
}

inline ArldCertificate certificate_from_scan(const Codebook& book, std::size_t k, const Fraction& delta0,
                                             const ScanResult& scan)
{
    ArldCertificate cert;
    cert.delta0 = delta0;
    cert.k = k;
    cert.length = book.length;
    cert.codebook_size = book.size();
    cert.subsets_examined = scan.subsets_examined;
    bool have = false;
    for (const auto& s : scan.by_size) {
        cert.min_total_by_size.push_back(s.min_total);
        if (s.witness.empty()) {
            continue;
        }
        const Fraction eps = forced_eps(delta0, s.min_total, book.length, s.size);
        if (!have || eps > cert.eps_worst) {
            cert.eps_worst = eps;
            cert.witness = s.witness;
            have = true;
        }
    }
    cert.eps_min = have ? max(Fraction(0), cert.eps_worst) : Fraction(0);
    if (have) {
        cert.witness_center = plurality_center(book, cert.witness).center;
    }
    return cert;
}

/// Exact minimal eps over all tuples of size <= k, via plurality centers.
inline ArldCertificate min_arld_slack(const Codebook& book, std::size_t k, const Fraction& delta0,
                                      const ScanOptions& opts = {})
{
    const auto start = std::chrono::steady_clock::now();
    const auto scan = scan_min_plurality_totals(book, k, opts);
    auto cert = certificate_from_scan(book, k, delta0, scan);
    cert.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return cert;
}

inline ArldCertificate min_arld_slack(const LinearCode& code, std::size_t k, const Fraction& delta0,
                                      const ScanOptions& opts = {}, std::uint64_t enumeration_cap = kDefaultEnumerationCap)
{
    return min_arld_slack(enumerate_codewords(code, enumeration_cap), k, delta0, opts);
}

/// Recomputes the eps forced by the stored witness with a fresh plurality
/// center. Equals cert.eps_worst for a sound certificate.
inline std::optional<Fraction> reevaluate_witness(const Codebook& book, const ArldCertificate& cert)
{
    if (cert.witness.empty()) {
        return std::nullopt;
    }
    const auto pc = plurality_center(book, cert.witness);
    return forced_eps(cert.delta0, pc.total, book.length, cert.witness.size());
}

/// sum_h Delta(g, h) - (|H| - 1)(delta0 - s).
inline Fraction erased_slack(const Codebook& book, std::span<const std::size_t> H, const ErasedWord& g,
                             const Fraction& delta0)
{
    std::size_t disagreements = 0;
    for (auto i : H) {
        disagreements += erased_disagreements(g, book.words[i]);
    }
    const auto n = static_cast<std::int64_t>(book.length);
    return Fraction(static_cast<std::int64_t>(disagreements), n) -
           Fraction(static_cast<std::int64_t>(H.size()) - 1) * (delta0 - g.erasure_fraction());
}

struct ArldCounterexample {
    std::vector<std::size_t> H;
    ErasedWord center;
    Fraction lhs;
    Fraction rhs;
};

struct ArldCheckResult {
    bool pass = true;
    std::uint64_t checks = 0;
    std::optional<ArldCounterexample> counterexample;
};

/// Literal sweep of the definition: every H with 2 <= |H| <= k, every erasure
/// set S (all of them when `erasures`, otherwise only the empty set), and every
/// center over the non-erased coordinates. Stops at the first violation.
inline ArldCheckResult exhaustive_arld_check(const Codebook& book, std::size_t k, const Fraction& delta0,
                                             const Fraction& eps, bool erasures,
                                             std::uint64_t cap = kDefaultEnumerationCap)
{
    const std::size_t n = book.length;
    require(n < 63, ErrorKind::EnumerationTooLarge, "block length too large for an erasure sweep");
    require(checked_power(book.alphabet_size, n, cap) <= cap, ErrorKind::EnumerationTooLarge,
            "|Sigma|^n exceeds the center enumeration cap");
    const std::uint64_t q = book.alphabet_size;
    const std::uint64_t erasure_sets = erasures ? (std::uint64_t{1} << n) : 1;

    ArldCheckResult result;
    std::vector<std::size_t> idx;
    std::vector<Symbol> g(n, 0);

    auto check_tuple = [&]() -> bool {
        const std::size_t m = idx.size();
        for (std::uint64_t mask = 0; mask < erasure_sets; ++mask) {
            const auto erased = static_cast<std::size_t>(std::popcount(mask));
            std::vector<std::size_t> open;
            for (std::size_t c = 0; c < n; ++c) {
                if ((mask >> c & 1) == 0) {
                    open.push_back(c);
                }
            }
            const Fraction rhs = Fraction(static_cast<std::int64_t>(m) - 1) *
                                 (delta0 - Fraction(static_cast<std::int64_t>(erased), static_cast<std::int64_t>(n)) - eps);
            const std::uint64_t centers = checked_power(q, open.size(), cap);
            std::fill(g.begin(), g.end(), 0);
            for (std::uint64_t t = 0; t < centers; ++t) {
                std::uint64_t rest = t;
                for (auto c : open) {
                    g[c] = rest % q;
                    rest /= q;
                }
                std::size_t dis = 0;
                for (auto i : idx) {
                    const auto& h = book.words[i];
                    for (auto c : open) {
                        dis += h[c] != g[c] ? 1 : 0;
                    }
                }
                ++result.checks;
                const Fraction lhs(static_cast<std::int64_t>(dis), static_cast<std::int64_t>(n));
                if (lhs < rhs) {
                    ArldCounterexample ce;
                    ce.H = idx;
                    ce.center.symbols.assign(n, std::nullopt);
                    for (auto c : open) {
                        ce.center.symbols[c] = g[c];
                    }
                    ce.lhs = lhs;
                    ce.rhs = rhs;
                    result.pass = false;
                    result.counterexample = std::move(ce);
                    return false;
                }
            }
        }
        return true;
    };

    // lexicographic tuples of size 2..k
    auto recurse = [&](auto&& self, std::size_t start) -> bool {
        for (std::size_t x = start; x < book.size(); ++x) {
            idx.push_back(x);
            if (idx.size() >= 2 && !check_tuple()) {
                return false;
            }
            if (idx.size() < k && !self(self, x + 1)) {
                return false;
            }
            idx.pop_back();
        }
        return true;
    };
    if (k >= 2) {
        recurse(recurse, 0);
    }
    return result;
}

/// Uniform generator matrix, resampled until it has full row rank.
inline LinearCode sample_random_linear_code(const Field& field, std::size_t length, std::size_t dim,
                                            std::uint64_t seed)
{
    require(dim >= 1 && dim <= length, ErrorKind::InvalidParameter,
            "need 1 <= dim <= length, got dim " + std::to_string(dim) + " length " + std::to_string(length));
    Rng rng(seed);
    for (int attempt = 0; attempt < 100; ++attempt) {
        Matrix gen(dim, std::vector<Elem>(length, 0));
        for (auto& row : gen) {
            for (auto& x : row) {
                x = static_cast<Elem>(rng.below(field.order()));
            }
        }
        if (matrix_rank(field, gen) == dim) {
            return {field, length, std::move(gen)};
        }
    }
    fail(ErrorKind::RankFailure, "no full-rank generator in 100 samples");
}

struct InnerSearchResult {
    LinearCode code;
    ArldCertificate certificate;
    std::size_t tries = 0;
    std::uint64_t code_seed = 0;
};

/// Rejection sampling: the first random code (try t uses derive_seed(seed, t))
/// whose exact eps_min is at most eps_target.
inline InnerSearchResult search_inner_code(const Field& field, std::size_t length, std::size_t dim, std::size_t k,
                                           const Fraction& delta0, const Fraction& eps_target, std::uint64_t seed,
                                           std::size_t max_tries, const ScanOptions& opts = {})
{
    for (std::size_t t = 0; t < max_tries; ++t) {
        const std::uint64_t code_seed = derive_seed(seed, static_cast<std::uint64_t>(t));
        auto code = sample_random_linear_code(field, length, dim, code_seed);
        auto cert = min_arld_slack(code, k, delta0, opts);
        if (cert.eps_min <= eps_target) {
            return {std::move(code), std::move(cert), t + 1, code_seed};
        }
    }
    fail(ErrorKind::SearchExhausted, "no code with eps_min <= " + eps_target.to_string() + " in " +
                                         std::to_string(max_tries) + " tries");
}

/// Folded Reed-Solomon code: symbol i is (f(a_i), f(g a_i), ..., f(g^{b-1} a_i))
/// for deg f < rate * b * n, g a generator of F_q^*.
class FoldedRSCode {
public:
    const Field& field() const noexcept { return field_; }
    std::size_t fold() const noexcept { return fold_; }
    std::size_t length() const noexcept { return length_; }
    const Fraction& rate() const noexcept { return rate_; }
    Elem gamma() const noexcept { return gamma_; }
    const std::vector<Elem>& alphas() const noexcept { return alphas_; }
    /// Number of message coefficients, rate * b * n.
    std::size_t message_length() const noexcept { return message_length_; }

    /// All b*n evaluation points, symbol-major.
    std::vector<Elem> evaluation_points() const
    {
        std::vector<Elem> out;
        for (auto a : alphas_) {
            for (std::size_t t = 0; t < fold_; ++t) {
                out.push_back(field_.mul(field_.pow(gamma_, t), a));
            }
        }
        return out;
    }

    /// True iff the b*n evaluation points are pairwise distinct.
    bool appropriate() const
    {
        const auto pts = evaluation_points();
        return std::set<Elem>(pts.begin(), pts.end()).size() == pts.size();
    }

private:
    friend FoldedRSCode make_folded_rs(const Field&, std::size_t, std::size_t, const Fraction&,
                                       std::optional<std::vector<Elem>>);

    FoldedRSCode(Field f) : field_(std::move(f)) {}

    Field field_;
    std::size_t fold_ = 1;
    std::size_t length_ = 0;
    Fraction rate_;
    Elem gamma_ = 1;
    std::vector<Elem> alphas_;
    std::size_t message_length_ = 0;
};

/// Without explicit alphas, a_j = g^{j b} for j = 0..n-1. Appropriateness is
/// always checked.
inline FoldedRSCode make_folded_rs(const Field& field, std::size_t fold, std::size_t length, const Fraction& rate,
                                   std::optional<std::vector<Elem>> alphas = std::nullopt)
{
    require(fold >= 1 && length >= 1, ErrorKind::InvalidParameter, "fold and length must be positive");
    require(static_cast<std::uint64_t>(field.order()) >= fold * length, ErrorKind::FieldTooSmall,
            field.name() + " has fewer than b*n = " + std::to_string(fold * length) + " elements");
    const Fraction k_frac = rate * Fraction(static_cast<std::int64_t>(fold * length));
    require(k_frac.den() == 1 && k_frac.num() >= 1 && k_frac.num() <= static_cast<std::int64_t>(fold * length),
            ErrorKind::InvalidParameter, "rate * b * n must be an integer in [1, b*n]");
    FoldedRSCode code(field);
    code.fold_ = fold;
    code.length_ = length;
    code.rate_ = rate;
    code.gamma_ = field.generator();
    code.message_length_ = static_cast<std::size_t>(k_frac.num());
    if (alphas) {
        require(alphas->size() == length, ErrorKind::LengthMismatch, "need one alpha per position");
        for (auto a : *alphas) {
            require(field.contains(a), ErrorKind::InvalidParameter, "alpha outside the field");
        }
        code.alphas_ = std::move(*alphas);
    } else {
        for (std::size_t j = 0; j < length; ++j) {
            code.alphas_.push_back(field.pow(code.gamma_, j * fold));
        }
    }
    require(code.appropriate(), ErrorKind::NotAppropriate, "evaluation points g^i a_j are not all distinct");
    return code;
}

/// The FRS code as a linear code over F_q with symbols in F_q^b; row j of the
/// generator evaluates x^j.
inline LinearCode frs_as_linear_code(const FoldedRSCode& frs)
{
    const auto pts = frs.evaluation_points();
    const Field& f = frs.field();
    Matrix gen(frs.message_length(), std::vector<Elem>(pts.size(), 0));
    for (std::size_t j = 0; j < gen.size(); ++j) {
        for (std::size_t c = 0; c < pts.size(); ++c) {
            gen[j][c] = f.pow(pts[c], j);
        }
    }
    return {f, frs.length(), std::move(gen), frs.fold()};
}

} // namespace aelcodes

/**************************************************************************
 * list_verify.hpp
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

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ael.hpp"
#include "error.hpp"
#include "fraction.hpp"
#include "inner_search.hpp"
#include "linear_code.hpp"
#include "plurality.hpp"
#include "rng.hpp"

namespace aelcodes {

/// Indices of every codeword h with Delta(g, h) <= beta, in codebook order.
inline std::vector<std::size_t> brute_force_list(const Codebook& book, const ErasedWord& g, const Fraction& beta)
{
    require(g.length() == book.length, ErrorKind::LengthMismatch, "center has wrong length");
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < book.size(); ++i) {
        if (dist_with_erasures(g, book.words[i]) <= beta) {
            out.push_back(i);
        }
    }
    return out;
}

/// Exact k^k.
inline std::int64_t self_power(std::size_t k)
{
    return static_cast<std::int64_t>(checked_power(k, k, std::uint64_t{1} << 40));
}

struct TheoremHypotheses {
    Fraction lambda_bound;
    /// delta_out * eps / (6 k^k).
    Fraction lambda_required;
    bool lambda_ok = false;
    /// eps_min of the supplied inner certificate, if any.
    std::optional<Fraction> inner_eps;
    bool inner_ok = false;

    bool applicable() const { return lambda_ok && inner_ok; }
};

/// Evaluates: inner code (delta0, k, eps/2) list decodable with erasures and
/// lambda <= delta_out * eps / (6 k^k).
inline TheoremHypotheses evaluate_hypotheses(const AelCode& code, std::size_t k, const Fraction& delta0,
                                             const Fraction& eps, const std::optional<ArldCertificate>& inner)
{
    TheoremHypotheses h;
    h.lambda_bound = code.graph().lambda_bound();
    h.lambda_required = code.outer_distance() * eps / Fraction(6 * self_power(k));
    h.lambda_ok = h.lambda_bound <= h.lambda_required;
    if (inner) {
        h.inner_eps = inner->eps_min;
        h.inner_ok = inner->delta0 == delta0 && inner->k >= k && inner->length == code.d() &&
                     inner->codebook_size == code.inner_codebook().size() && inner->eps_min <= eps / Fraction(2);
    }
    return h;
}

struct SingletonReport {
    Fraction delta0;
    std::size_t k = 1;
    Fraction eps;
    ArldCertificate certificate;
    /// min over |H| = m of sum_h Delta_R(g*, h) - (m - 1)(delta0 - eps), m = 2..k.
    std::vector<Fraction> min_slack_by_size;
    TheoremHypotheses hypotheses;
    bool pass = true;

    std::string theorem_status() const
    {
        if (!hypotheses.applicable()) {
            return "NOT APPLICABLE";
        }
        return pass ? "HOLDS" : "VIOLATED";
    }
};

/// Worst-case check of sum_h Delta_R(g, h) >= (|H| - 1)(delta0 - eps) over
/// every H of size <= k and every center, with plurality centers on the
/// right-folded symbols.
inline SingletonReport verify_generalized_singleton(const AelCode& code, const Codebook& book, std::size_t k,
                                                    const Fraction& delta0, const Fraction& eps,
                                                    const ScanOptions& opts = {},
                                                    const std::optional<ArldCertificate>& inner = std::nullopt)
{
    SingletonReport rep;
    rep.delta0 = delta0;
    rep.k = k;
    rep.eps = eps;
    rep.certificate = min_arld_slack(book, k, delta0, opts);
    rep.hypotheses = evaluate_hypotheses(code, k, delta0, eps, inner);
    const auto n = static_cast<std::int64_t>(book.length);
    for (std::size_t m = 2; m <= k && m - 2 < rep.certificate.min_total_by_size.size(); ++m) {
        const auto total = rep.certificate.min_total_by_size[m - 2];
        if (total == UINT64_MAX) {
            continue;
        }
        const Fraction slack = Fraction(static_cast<std::int64_t>(total), n) -
                               Fraction(static_cast<std::int64_t>(m - 1)) * (delta0 - eps);
        rep.min_slack_by_size.push_back(slack);
        if (slack < Fraction(0)) {
            rep.pass = false;
        }
    }
    return rep;
}

inline SingletonReport verify_generalized_singleton(const AelCode& code, std::size_t k, const Fraction& delta0,
                                                    const Fraction& eps, const ScanOptions& opts = {},
                                                    const std::optional<ArldCertificate>& inner = std::nullopt)
{
    return verify_generalized_singleton(code, code.enumerate(), k, delta0, eps, opts, inner);
}

/// Fraction of coordinates where every h in H disagrees with g.
inline Fraction common_error_fraction(const Word& g, std::span<const Word> H)
{
    std::size_t count = 0;
    for (std::size_t r = 0; r < g.size(); ++r) {
        bool all = true;
        for (const auto& h : H) {
            require(h.size() == g.size(), ErrorKind::LengthMismatch, "codeword has wrong length");
            if (h[r] == g[r]) {
                all = false;
                break;
            }
        }
        count += all ? 1 : 0;
    }
    return {static_cast<std::int64_t>(count), static_cast<std::int64_t>(g.size())};
}

struct CommonErrorReport {
    std::uint64_t centers_checked = 0;
    std::uint64_t tuples_checked = 0;
    std::uint64_t violations = 0;
    /// min over tuples of lhs - rhs.
    Fraction min_margin = Fraction(1000);
    std::optional<std::pair<std::size_t, std::vector<std::size_t>>> first_violation;
    /// Balls of radius ((k-1)/k)(delta0 - eps), open, hold at most k-1 codewords.
    std::size_t max_ball_size = 0;
    std::uint64_t ball_violations = 0;

    bool pass() const { return violations == 0 && ball_violations == 0; }
};

/// For each center, takes the `list_cap` codewords nearest to it within beta
/// and checks, for every H of size 1..k drawn from that list,
///
///     sum_h Delta(g, h) >= (|H| - 1)(delta0 - eps) + E_r[prod_h 1{h_r != g_r}].
///
/// Requires a passing singleton report at the same (delta0, k, eps).
inline CommonErrorReport verify_common_error_bound(const Codebook& book, const SingletonReport& prerequisite,
                                                   std::span<const Word> centers, const Fraction& beta,
                                                   std::size_t list_cap = 32)
{
    require(prerequisite.pass, ErrorKind::PrerequisiteNotVerified,
            "the average-radius bound was not verified at these parameters");
    const std::size_t k = prerequisite.k;
    const Fraction margin_base = prerequisite.delta0 - prerequisite.eps;
    const std::size_t n = book.length;
    const std::size_t blocks = (n + 63) / 64;
    const Fraction ball = Fraction(static_cast<std::int64_t>(k - 1), static_cast<std::int64_t>(k)) * margin_base;

    CommonErrorReport rep;
    for (std::size_t c = 0; c < centers.size(); ++c) {
        const Word& g = centers[c];
        require(g.size() == n, ErrorKind::LengthMismatch, "center has wrong length");
        std::vector<std::pair<std::size_t, std::size_t>> near; // (disagreements, index)
        std::size_t in_ball = 0;
        for (std::size_t i = 0; i < book.size(); ++i) {
            const std::size_t dist = hamming_distance(g, book.words[i]);
            if (Fraction(static_cast<std::int64_t>(dist), static_cast<std::int64_t>(n)) <= beta) {
                near.emplace_back(dist, i);
            }
            if (Fraction(static_cast<std::int64_t>(dist), static_cast<std::int64_t>(n)) < ball) {
                ++in_ball;
            }
        }
        rep.max_ball_size = std::max(rep.max_ball_size, in_ball);
        if (k >= 1 && in_ball > k - 1) {
            ++rep.ball_violations;
        }
        std::sort(near.begin(), near.end());
        if (near.size() > list_cap) {
            near.resize(list_cap);
        }
        // disagreement bitsets for the list
        std::vector<std::vector<std::uint64_t>> masks(near.size(), std::vector<std::uint64_t>(blocks, 0));
        for (std::size_t j = 0; j < near.size(); ++j) {
            const Word& h = book.words[near[j].second];
            for (std::size_t r = 0; r < n; ++r) {
                if (h[r] != g[r]) {
                    masks[j][r / 64] |= std::uint64_t{1} << (r % 64);
                }
            }
        }
        ++rep.centers_checked;

        std::vector<std::size_t> idx;
        std::vector<std::vector<std::uint64_t>> common(k + 1, std::vector<std::uint64_t>(blocks, ~std::uint64_t{0}));
        std::vector<std::size_t> sums(k + 1, 0);
        // depth-first over increasing index tuples
        auto visit = [&](auto&& self, std::size_t start) -> void {
            const std::size_t depth = idx.size();
            if (depth > 0) {
                std::size_t common_count = 0;
                for (std::size_t b = 0; b < blocks; ++b) {
                    common_count += static_cast<std::size_t>(std::popcount(common[depth][b]));
                }
                const Fraction lhs(static_cast<std::int64_t>(sums[depth]), static_cast<std::int64_t>(n));
                const Fraction rhs = Fraction(static_cast<std::int64_t>(depth - 1)) * margin_base +
                                     Fraction(static_cast<std::int64_t>(common_count), static_cast<std::int64_t>(n));
                ++rep.tuples_checked;
                rep.min_margin = min(rep.min_margin, lhs - rhs);
                if (lhs < rhs) {
                    ++rep.violations;
                    if (!rep.first_violation) {
                        std::vector<std::size_t> H;
                        for (auto j : idx) {
                            H.push_back(near[j].second);
                        }
                        rep.first_violation = {c, H};
                    }
                }
            }
            if (depth == k) {
                return;
            }
            for (std::size_t j = start; j < near.size(); ++j) {
                idx.push_back(j);
                for (std::size_t b = 0; b < blocks; ++b) {
                    common[depth + 1][b] = common[depth][b] & masks[j][b];
                }
                sums[depth + 1] = sums[depth] + near[j].first;
                self(self, j + 1);
                idx.pop_back();
            }
        };
        // bits past n must not count as common errors
        if (n % 64 != 0) {
            common[0][blocks - 1] = (std::uint64_t{1} << (n % 64)) - 1;
        }
        visit(visit, 0);
    }
    return rep;
}

struct PartitionProfile {
    std::size_t tuple_size = 0;
    /// Restricted growth string per left vertex: part label of each h.
    std::vector<std::vector<std::uint8_t>> per_vertex;
    std::map<std::vector<std::uint8_t>, std::size_t> histogram;
    std::size_t nontrivial_mass = 0;
    /// Most frequent partition with >= 2 parts; ties go to the smaller string.
    std::vector<std::uint8_t> best;
    std::vector<std::size_t> best_support;
    Fraction delta_out;
    /// delta_out * n / k^k.
    Fraction bound;
    bool nontrivial_mass_ok = false;
    bool bound_ok = false;

    bool pass() const { return nontrivial_mass_ok && bound_ok; }
};

/// Partitions of H induced by equality of left views at every left vertex.
inline PartitionProfile partition_profile(const AelCode& code, std::span<const Word> H)
{
    require(!H.empty(), ErrorKind::EmptySet, "empty codeword tuple");
    require(H.size() <= 6, ErrorKind::InvalidParameter, "partition profiles take at most 6 codewords");
    for (std::size_t a = 0; a < H.size(); ++a) {
        for (std::size_t b = a + 1; b < H.size(); ++b) {
            require(H[a] != H[b], ErrorKind::DuplicateCodewords,
                    "codewords " + std::to_string(a) + " and " + std::to_string(b) + " coincide");
        }
    }
    const std::size_t n = code.n();
    std::vector<EdgeWord> edges;
    edges.reserve(H.size());
    for (const auto& h : H) {
        edges.push_back(code.unfold(h));
    }
    PartitionProfile prof;
    prof.tuple_size = H.size();
    prof.per_vertex.resize(n);
    for (std::size_t l = 0; l < n; ++l) {
        std::vector<Word> views;
        auto& rgs = prof.per_vertex[l];
        for (const auto& e : edges) {
            Word v = code.left_view(e, l);
            std::size_t label = views.size();
            for (std::size_t p = 0; p < views.size(); ++p) {
                if (views[p] == v) {
                    label = p;
                    break;
                }
            }
            if (label == views.size()) {
                views.push_back(std::move(v));
            }
            rgs.push_back(static_cast<std::uint8_t>(label));
        }
        ++prof.histogram[rgs];
        if (views.size() >= 2) {
            ++prof.nontrivial_mass;
        }
    }
    std::size_t best_count = 0;
    for (const auto& [rgs, count] : prof.histogram) {
        const bool nontrivial = std::any_of(rgs.begin(), rgs.end(), [](std::uint8_t x) { return x != 0; });
        if (nontrivial && count > best_count) {
            best_count = count;
            prof.best = rgs;
        }
    }
    for (std::size_t l = 0; l < n; ++l) {
        if (best_count > 0 && prof.per_vertex[l] == prof.best) {
            prof.best_support.push_back(l);
        }
    }
    prof.delta_out = code.outer_distance();
    prof.bound = prof.delta_out * Fraction(static_cast<std::int64_t>(n)) / Fraction(self_power(H.size()));
    if (H.size() == 1) {
        // a single codeword has no nontrivial partition and nothing to bound
        prof.nontrivial_mass_ok = true;
        prof.bound_ok = true;
    } else {
        prof.nontrivial_mass_ok =
            Fraction(static_cast<std::int64_t>(prof.nontrivial_mass)) >= prof.delta_out * Fraction(static_cast<std::int64_t>(n));
        prof.bound_ok = Fraction(static_cast<std::int64_t>(best_count)) >= prof.bound;
    }
    return prof;
}

struct SamplingReport {
    /// E_{l in L*}[s_l].
    Fraction mean_local_erasure;
    Fraction s;
    /// s + lambda * n / |L*|.
    Fraction bound;
    Fraction margin;
    bool pass = false;
};

/// Local erasure fractions s_l = (erased right neighbours of l) / d, averaged
/// over L*, against s + lambda n / |L*|. `k` fixes the minimum size of L*.
inline SamplingReport sampling_bound_check(const AelCode& code, const ErasedWord& g,
                                           std::span<const std::size_t> left_subset, std::size_t k)
{
    const std::size_t n = code.n();
    const std::size_t d = code.d();
    require(g.length() == n, ErrorKind::LengthMismatch, "center has wrong length");
    const Fraction size(static_cast<std::int64_t>(left_subset.size()));
    require(!left_subset.empty() &&
                size >= code.outer_distance() * Fraction(static_cast<std::int64_t>(n)) / Fraction(self_power(k)),
            ErrorKind::SubsetTooSmall, "left subset smaller than delta_out * n / k^k");
    std::int64_t erased_edges = 0;
    for (auto l : left_subset) {
        require(l < n, ErrorKind::InvalidParameter, "left vertex out of range");
        for (std::size_t i = 0; i < d; ++i) {
            erased_edges += g.symbols[code.graph().right_neighbor(l, i)].has_value() ? 0 : 1;
        }
    }
    SamplingReport rep;
    rep.mean_local_erasure = Fraction(erased_edges) / (size * Fraction(static_cast<std::int64_t>(d)));
    rep.s = g.erasure_fraction();
    rep.bound = rep.s + code.graph().lambda_bound() * Fraction(static_cast<std::int64_t>(n)) / size;
    rep.margin = rep.bound - rep.mean_local_erasure;
    rep.pass = rep.margin >= Fraction(0);
    return rep;
}

/// Centers for the common-error check: plurality centers of random tuples of
/// 2..k codewords, then uniformly random words.
inline std::vector<Word> generate_centers(const Codebook& book, std::size_t k, std::size_t adversarial,
                                          std::size_t random, std::uint64_t seed)
{
    require(book.size() >= 2 && k >= 2, ErrorKind::InvalidParameter, "need at least two codewords and k >= 2");
    Rng rng(seed);
    std::vector<Word> out;
    for (std::size_t c = 0; c < adversarial; ++c) {
        const std::size_t m = 2 + rng.below(std::min(k, book.size()) - 1);
        std::vector<std::size_t> pick;
        while (pick.size() < m) {
            const auto i = static_cast<std::size_t>(rng.below(book.size()));
            if (std::find(pick.begin(), pick.end(), i) == pick.end()) {
                pick.push_back(i);
            }
        }
        std::sort(pick.begin(), pick.end());
        out.push_back(plurality_center(book, pick).center);
    }
    for (std::size_t c = 0; c < random; ++c) {
        Word w(book.length);
        for (auto& s : w) {
            s = rng.below(book.alphabet_size);
        }
        out.push_back(std::move(w));
    }
    return out;
}

} // namespace aelcodes

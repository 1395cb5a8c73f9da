/**************************************************************************
 * ael.hpp
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
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "expander.hpp"
#include "fraction.hpp"
#include "linear_code.hpp"
#include "outer_code.hpp"

namespace aelcodes {

/// Symbols on the edges of the graph, indexed by edge e = l*d + i.
struct EdgeWord {
    std::vector<Symbol> edges;

    friend bool operator==(const EdgeWord&, const EdgeWord&) = default;
};

/// Distance-amplified code built from (G, C_out, C_in, phi).
///
/// An outer codeword f* is mapped left vertex by left vertex through phi onto
/// inner codewords, which label the d edges at each left vertex; the code
/// symbols are then the d-tuples collected at the right vertices. phi maps an
/// outer symbol (a field element encoding) to an index into the inner
/// codebook, enumerated in lexicographic message order.
class AelCode {
public:
    AelCode(BipartiteGraph graph, LinearCode inner, RSOuterCode outer, std::vector<std::uint64_t> phi = {})
        : graph_(std::move(graph)), inner_(std::move(inner)), outer_(std::move(outer)), phi_(std::move(phi))
    {
        require(graph_.degree() == inner_.length(), ErrorKind::DimensionMismatch,
                "graph degree " + std::to_string(graph_.degree()) + " != inner block length " +
                    std::to_string(inner_.length()));
        require(graph_.n() == outer_.length(), ErrorKind::DimensionMismatch,
                "graph size " + std::to_string(graph_.n()) + " != outer block length " +
                    std::to_string(outer_.length()));
        inner_book_ = enumerate_codewords(inner_);
        const std::uint64_t M = inner_book_.size();
        require(outer_.field().order() == M, ErrorKind::DimensionMismatch,
                "outer alphabet has " + std::to_string(outer_.field().order()) + " symbols but the inner code has " +
                    std::to_string(M) + " codewords");
        const std::uint64_t limit = std::uint64_t{1} << 62;
        require(checked_power(inner_book_.alphabet_size, graph_.degree(), limit) <= limit,
                ErrorKind::InvalidParameter, "right-folded alphabet too large to encode");
        if (phi_.empty()) {
            phi_.resize(M);
            for (std::uint64_t i = 0; i < M; ++i) {
                phi_[i] = i;
            }
        }
        require(phi_.size() == M, ErrorKind::InvalidBijection, "phi needs one entry per outer symbol");
        phi_inv_.assign(M, M);
        for (std::uint64_t s = 0; s < M; ++s) {
            require(phi_[s] < M && phi_inv_[phi_[s]] == M, ErrorKind::InvalidBijection,
                    "phi is not a bijection onto the inner codebook");
            phi_inv_[phi_[s]] = s;
        }
        for (std::uint64_t i = 0; i < M; ++i) {
            inner_index_.emplace(inner_book_.words[i], i);
        }
        inner_distance_ = min_distance(inner_);
    }

    const BipartiteGraph& graph() const noexcept { return graph_; }
    const LinearCode& inner() const noexcept { return inner_; }
    const RSOuterCode& outer() const noexcept { return outer_; }
    const Codebook& inner_codebook() const noexcept { return inner_book_; }
    const std::vector<std::uint64_t>& phi() const noexcept { return phi_; }
    std::size_t n() const noexcept { return graph_.n(); }
    std::size_t d() const noexcept { return graph_.degree(); }

    /// |Sigma_in|.
    std::uint64_t inner_alphabet() const noexcept { return inner_book_.alphabet_size; }

    /// |Sigma| = |Sigma_in|^d.
    std::uint64_t alphabet_size() const { return checked_power(inner_alphabet(), d(), UINT64_MAX - 1); }

    const Fraction& inner_distance() const noexcept { return inner_distance_; }
    Fraction outer_distance() const { return outer_.distance(); }

    /// Inner codebook index phi(s) for an outer symbol s.
    std::uint64_t phi_of(Symbol s) const
    {
        require(s < phi_.size(), ErrorKind::InvalidParameter, "outer symbol out of range");
        return phi_[s];
    }

    /// phi^{-1} on inner codebook indices.
    Symbol phi_inverse(std::uint64_t inner_index) const { return phi_inv_.at(inner_index); }

    /// Inner codebook index of a d-symbol view, if it is an inner codeword.
    std::optional<std::uint64_t> inner_index_of(const Word& view) const
    {
        auto it = inner_index_.find(view);
        if (it == inner_index_.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    /// f_l = phi(f*_l) on the edges of every left vertex. f* is not checked.
    EdgeWord edges_from_outer(const Word& outer_word) const
    {
        require(outer_word.size() == n(), ErrorKind::LengthMismatch, "outer word has wrong length");
        EdgeWord w;
        w.edges.resize(graph_.edge_count());
        for (std::size_t l = 0; l < n(); ++l) {
            const auto& local = inner_book_.words[phi_of(outer_word[l])];
            for (std::size_t i = 0; i < d(); ++i) {
                w.edges[graph_.edge_index(l, i)] = local[i];
            }
        }
        return w;
    }

    /// Folds edge symbols onto the right vertices: symbol r encodes the
    /// d-tuple of its edges in right order, first edge least significant.
    Word fold(const EdgeWord& w) const
    {
        check_edges(w);
        Word out(n(), 0);
        const std::uint64_t q = inner_alphabet();
        for (std::size_t r = 0; r < n(); ++r) {
            const auto& edges = graph_.right_edges(r);
            Symbol s = 0;
            for (std::size_t j = d(); j > 0; --j) {
                s = s * q + w.edges[edges[j - 1]];
            }
            out[r] = s;
        }
        return out;
    }

    EdgeWord unfold(const Word& right) const
    {
        require(right.size() == n(), ErrorKind::LengthMismatch, "right-folded word has wrong length");
        EdgeWord w;
        w.edges.resize(graph_.edge_count());
        const std::uint64_t q = inner_alphabet();
        for (std::size_t r = 0; r < n(); ++r) {
            Symbol s = right[r];
            for (auto e : graph_.right_edges(r)) {
                w.edges[e] = s % q;
                s /= q;
            }
            require(s == 0, ErrorKind::InvalidParameter, "right symbol outside the alphabet");
        }
        return w;
    }

    Word left_view(const EdgeWord& w, std::size_t l) const
    {
        check_edges(w);
        Word view(d());
        for (std::size_t i = 0; i < d(); ++i) {
            view[i] = w.edges[graph_.edge_index(l, i)];
        }
        return view;
    }

    Word right_view(const EdgeWord& w, std::size_t r) const
    {
        check_edges(w);
        Word view(d());
        const auto& edges = graph_.right_edges(r);
        for (std::size_t j = 0; j < d(); ++j) {
            view[j] = w.edges[edges[j]];
        }
        return view;
    }

    /// The outer word phi^{-1}(f_l) read off the left views, or nullopt when
    /// some left view is not an inner codeword.
    std::optional<Word> outer_from_edges(const EdgeWord& w) const
    {
        Word out(n());
        for (std::size_t l = 0; l < n(); ++l) {
            auto idx = inner_index_of(left_view(w, l));
            if (!idx) {
                return std::nullopt;
            }
            out[l] = phi_inverse(*idx);
        }
        return out;
    }

    /// Right-folded AEL codeword for the outer codeword f*.
    Word encode(const Word& outer_word) const
    {
        require(outer_word.size() == n(), ErrorKind::LengthMismatch, "outer word has wrong length");
        require(outer_.code().contains(outer_word), ErrorKind::NotAnOuterCodeword,
                "word is not a codeword of the outer code");
        return fold(edges_from_outer(outer_word));
    }

    Word encode_message(std::span<const Elem> msg) const { return fold(edges_from_outer(rs_outer_encode(outer_, msg))); }

    /// log_{|Sigma|} |C_AEL| / n, exactly.
    Fraction rate() const
    {
        const auto num = static_cast<std::int64_t>(inner_.dimension() * outer_.dimension());
        const auto den = static_cast<std::int64_t>(inner_.symbol_width() * d() * n());
        return {num, den};
    }

    /// Every AEL codeword in outer message order, plus the outer codewords.
    std::pair<Codebook, Codebook> enumerate_with_outer(std::uint64_t cap = kDefaultEnumerationCap) const
    {
        auto outer_book = enumerate_codewords(outer_.code(), cap);
        Codebook book;
        book.alphabet_size = alphabet_size();
        book.length = n();
        book.words.reserve(outer_book.size());
        for (const auto& w : outer_book.words) {
            book.words.push_back(fold(edges_from_outer(w)));
        }
        return {std::move(book), std::move(outer_book)};
    }

    Codebook enumerate(std::uint64_t cap = kDefaultEnumerationCap) const { return enumerate_with_outer(cap).first; }

private:
    void check_edges(const EdgeWord& w) const
    {
        require(w.edges.size() == graph_.edge_count(), ErrorKind::GraphMismatch,
                "edge word has " + std::to_string(w.edges.size()) + " symbols, graph has " +
                    std::to_string(graph_.edge_count()) + " edges");
    }

    BipartiteGraph graph_;
    LinearCode inner_;
    RSOuterCode outer_;
    std::vector<std::uint64_t> phi_;
    std::vector<std::uint64_t> phi_inv_;
    Codebook inner_book_;
    std::map<Word, std::uint64_t> inner_index_;
    Fraction inner_distance_;
};

inline Word ael_encode(const AelCode& code, const Word& outer_word) { return code.encode(outer_word); }

/// Fraction of left vertices whose d-symbol views differ.
inline Fraction delta_L(const AelCode& code, const EdgeWord& f, const EdgeWord& g)
{
    std::size_t diff = 0;
    for (std::size_t l = 0; l < code.n(); ++l) {
        diff += code.left_view(f, l) != code.left_view(g, l) ? 1 : 0;
    }
    return {static_cast<std::int64_t>(diff), static_cast<std::int64_t>(code.n())};
}

/// Fraction of right vertices whose d-symbol views differ.
inline Fraction delta_R(const AelCode& code, const EdgeWord& f, const EdgeWord& g)
{
    std::size_t diff = 0;
    for (std::size_t r = 0; r < code.n(); ++r) {
        diff += code.right_view(f, r) != code.right_view(g, r) ? 1 : 0;
    }
    return {static_cast<std::int64_t>(diff), static_cast<std::int64_t>(code.n())};
}

/// Erased right distance: an erased right vertex hides its whole d-tuple.
inline Fraction delta_R_erased(const ErasedWord& g, const Word& h) { return dist_with_erasures(g, h); }

inline Fraction ael_rate(const AelCode& code)
{
    const Fraction rate = code.rate();
    require(rate >= code.inner().rate() * code.outer().code().rate(), ErrorKind::InvalidParameter,
            "AEL rate below rho_out * rho_in");
    return rate;
}

struct AmplificationReport {
    std::uint64_t pairs_checked = 0;
    Fraction delta_in;
    Fraction delta_out;
    Fraction lambda_bound;
    /// delta_in - lambda/delta_out; vacuous when <= 0.
    Fraction global_bound;
    bool global_vacuous = false;
    Fraction min_delta_R = Fraction(1);
    Fraction min_delta_L = Fraction(1);
    /// min over pairs of Delta_R - (delta_in - lambda/Delta_L).
    Fraction min_pair_margin = Fraction(1);
    std::uint64_t pair_violations = 0;
    std::uint64_t global_violations = 0;
    std::uint64_t zero_distance_pairs = 0;
    /// |L'| delta_in d <= E(L', R') with L', R' the disagreeing vertex sets.
    std::uint64_t counting_violations = 0;
    /// E(L', R') <= d|L'||R'|/n + lambda d sqrt(|L'||R'|).
    std::uint64_t eml_violations = 0;
    std::optional<std::pair<std::size_t, std::size_t>> first_violation;

    bool pass() const
    {
        return pair_violations == 0 && global_violations == 0 && zero_distance_pairs == 0 &&
               counting_violations == 0 && eml_violations == 0;
    }
};

/// Checks Delta_R(f,g) >= delta_in - lambda/Delta_L(f,g) over every distinct
/// pair of codewords, with lambda replaced by an exact upper bound on
/// lambda_hat + 1e-6. The global form with delta_out is asserted only when it
/// is not vacuous. With throw_on_violation the first failing pair raises
/// AmplificationViolation.
inline AmplificationReport verify_distance_amplification(const AelCode& code,
                                                         std::uint64_t cap = kDefaultEnumerationCap,
                                                         bool throw_on_violation = false)
{
    const auto [book, outer_book] = code.enumerate_with_outer(cap);
    const std::size_t n = code.n();
    const std::size_t d = code.d();
    const auto& G = code.graph();

    AmplificationReport rep;
    rep.delta_in = code.inner_distance();
    rep.lambda_bound = G.lambda_bound();
    // actual outer distance from the enumeration
    std::size_t outer_min = n;
    for (std::size_t i = 1; i < outer_book.size(); ++i) {
        outer_min = std::min(outer_min, hamming_distance(outer_book.words[0], outer_book.words[i]));
    }
    rep.delta_out = Fraction(static_cast<std::int64_t>(outer_min), static_cast<std::int64_t>(n));
    rep.global_bound = rep.delta_in - rep.lambda_bound / rep.delta_out;
    rep.global_vacuous = rep.global_bound <= Fraction(0);

    const double lam = G.lambda() + kLambdaSlack;
    std::vector<bool> left_diff(n);
    std::vector<bool> right_diff(n);
    for (std::size_t a = 0; a < book.size(); ++a) {
        for (std::size_t b = a + 1; b < book.size(); ++b) {
            ++rep.pairs_checked;
            std::size_t nl = 0;
            std::size_t nr = 0;
            for (std::size_t i = 0; i < n; ++i) {
                left_diff[i] = outer_book.words[a][i] != outer_book.words[b][i];
                right_diff[i] = book.words[a][i] != book.words[b][i];
                nl += left_diff[i] ? 1 : 0;
                nr += right_diff[i] ? 1 : 0;
            }
            const Fraction dl(static_cast<std::int64_t>(nl), static_cast<std::int64_t>(n));
            const Fraction dr(static_cast<std::int64_t>(nr), static_cast<std::int64_t>(n));
            rep.min_delta_L = min(rep.min_delta_L, dl);
            rep.min_delta_R = min(rep.min_delta_R, dr);
            bool bad = false;
            if (nr == 0) {
                ++rep.zero_distance_pairs;
                bad = true;
            }
            if (nl > 0) {
                const Fraction margin = dr - (rep.delta_in - rep.lambda_bound / dl);
                rep.min_pair_margin = min(rep.min_pair_margin, margin);
                if (margin < Fraction(0)) {
                    ++rep.pair_violations;
                    bad = true;
                }
            }
            if (!rep.global_vacuous && dr < rep.global_bound) {
                ++rep.global_violations;
                bad = true;
            }
            std::uint64_t e_lr = 0;
            for (std::size_t l = 0; l < n; ++l) {
                if (!left_diff[l]) {
                    continue;
                }
                for (std::size_t i = 0; i < d; ++i) {
                    e_lr += right_diff[G.right_neighbor(l, i)] ? 1 : 0;
                }
            }
            // every disagreeing left vertex sends >= delta_in * d differing edges into R'
            if (Fraction(static_cast<std::int64_t>(e_lr)) <
                Fraction(static_cast<std::int64_t>(nl * d)) * rep.delta_in) {
                ++rep.counting_violations;
                bad = true;
            }
            const double eml_rhs = static_cast<double>(d * nl * nr) / static_cast<double>(n) +
                                   lam * static_cast<double>(d) * std::sqrt(static_cast<double>(nl * nr));
            if (static_cast<double>(e_lr) > eml_rhs + 1e-9) {
                ++rep.eml_violations;
                bad = true;
            }
            if (bad && !rep.first_violation) {
                rep.first_violation = {a, b};
                if (throw_on_violation) {
                    fail(ErrorKind::AmplificationViolation,
                         "codewords " + std::to_string(a) + " and " + std::to_string(b));
                }
            }
        }
    }
    return rep;
}

} // namespace aelcodes

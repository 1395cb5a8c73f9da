/**************************************************************************
 * dist_decoder.hpp
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
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ael.hpp"
#include "error.hpp"
#include "fraction.hpp"
#include "outer_code.hpp"

namespace aelcodes {

/// One probability vector per left vertex over the inner codebook, in
/// codebook order.
class InnerDistributionEnsemble {
public:
    InnerDistributionEnsemble() = default;

    explicit InnerDistributionEnsemble(std::vector<std::vector<Fraction>> weights) : weights_(std::move(weights))
    {
        require(!weights_.empty(), ErrorKind::EmptySet, "ensemble has no left vertices");
        const std::size_t M = weights_.front().size();
        for (const auto& row : weights_) {
            require(row.size() == M && M > 0, ErrorKind::DimensionMismatch, "ragged distribution table");
            Fraction sum(0);
            for (const auto& w : row) {
                require(w >= Fraction(0), ErrorKind::InvalidParameter, "negative probability");
                sum = sum + w;
            }
            require(sum == Fraction(1), ErrorKind::InvalidParameter, "distribution does not sum to 1");
        }
    }

    /// Point masses on the given codebook indices.
    static InnerDistributionEnsemble point_masses(std::span<const std::uint64_t> indices, std::size_t M)
    {
        std::vector<std::vector<Fraction>> w(indices.size(), std::vector<Fraction>(M, Fraction(0)));
        for (std::size_t l = 0; l < indices.size(); ++l) {
            require(indices[l] < M, ErrorKind::InvalidParameter, "codebook index out of range");
            w[l][indices[l]] = Fraction(1);
        }
        return InnerDistributionEnsemble(std::move(w));
    }

    std::size_t size() const noexcept { return weights_.size(); }
    std::size_t support() const noexcept { return weights_.empty() ? 0 : weights_.front().size(); }
    const std::vector<std::vector<Fraction>>& weights() const noexcept { return weights_; }

    /// Every prefix sum in [0, 1), sorted; these are the only thresholds at
    /// which the rounding changes.
    std::vector<Fraction> thresholds() const
    {
        std::set<Fraction> ends;
        for (const auto& row : weights_) {
            Fraction acc(0);
            ends.insert(acc);
            for (const auto& w : row) {
                acc = acc + w;
                if (acc < Fraction(1)) {
                    ends.insert(acc);
                }
            }
        }
        return {ends.begin(), ends.end()};
    }

    /// Index m with theta in [P_{m-1}, P_m) for every vertex.
    std::vector<std::uint64_t> round(const Fraction& theta) const
    {
        require(theta >= Fraction(0) && theta < Fraction(1), ErrorKind::InvalidParameter, "threshold outside [0,1)");
        std::vector<std::uint64_t> out(weights_.size(), 0);
        for (std::size_t l = 0; l < weights_.size(); ++l) {
            Fraction acc(0);
            const auto& row = weights_[l];
            for (std::size_t m = 0; m < row.size(); ++m) {
                acc = acc + row[m];
                if (theta < acc) {
                    out[l] = m;
                    break;
                }
            }
        }
        return out;
    }

    /// E_l Pr_{f ~ D_l}[f != target_l].
    Fraction expected_disagreement(std::span<const std::uint64_t> target) const
    {
        require(target.size() == weights_.size(), ErrorKind::LengthMismatch, "target has wrong length");
        Fraction acc(0);
        for (std::size_t l = 0; l < weights_.size(); ++l) {
            acc = acc + (Fraction(1) - weights_[l].at(target[l]));
        }
        return acc / Fraction(static_cast<std::int64_t>(weights_.size()));
    }

private:
    std::vector<std::vector<Fraction>> weights_;
};

struct DecodeResult {
    std::optional<Word> codeword;
    std::optional<Word> outer_codeword;
    std::optional<Fraction> theta;
    /// E_l E_{f ~ D_l}[1{f != h_l}] for the returned codeword.
    std::optional<Fraction> expected_disagreement;
    /// Delta_R(g, h) when decoding a received word.
    std::optional<Fraction> distance;
    std::size_t thresholds_tried = 0;
    /// Distinct codewords that passed the guarantee check; > 1 triggers a warning.
    std::size_t candidates = 0;
    std::vector<std::string> warnings;

    bool ok() const { return codeword.has_value(); }
};

/// Inner codebook indices phi(h*_l) of an outer codeword.
inline std::vector<std::uint64_t> left_indices(const AelCode& code, const Word& outer_word)
{
    std::vector<std::uint64_t> idx(outer_word.size());
    for (std::size_t l = 0; l < outer_word.size(); ++l) {
        idx[l] = code.phi_of(outer_word[l]);
    }
    return idx;
}

/// Threshold rounding: for each interval endpoint theta, round D to inner
/// codewords, pull back through phi, unique-decode the outer code, and keep
/// the first codeword whose expected disagreement with D is at most the
/// outer decoding radius.
inline DecodeResult decode_from_distributions(const AelCode& code, const InnerDistributionEnsemble& D)
{
    require(D.size() == code.n(), ErrorKind::DimensionMismatch, "ensemble needs one distribution per left vertex");
    require(D.support() == code.inner_codebook().size(), ErrorKind::DimensionMismatch,
            "ensemble support must be the inner codebook");
    const Fraction radius = code.outer().decoding_radius();
    DecodeResult res;
    std::set<Word> seen;
    for (const auto& theta : D.thresholds()) {
        ++res.thresholds_tried;
        const auto rounded = D.round(theta);
        Word outer_word(code.n());
        for (std::size_t l = 0; l < code.n(); ++l) {
            outer_word[l] = code.phi_inverse(rounded[l]);
        }
        auto decoded = rs_unique_decode(code.outer(), outer_word, radius);
        if (!decoded || seen.count(*decoded) > 0) {
            continue;
        }
        const Fraction disagreement = D.expected_disagreement(left_indices(code, *decoded));
        if (disagreement > radius) {
            continue;
        }
        seen.insert(*decoded);
        ++res.candidates;
        if (!res.codeword) {
            res.outer_codeword = *decoded;
            res.codeword = code.fold(code.edges_from_outer(*decoded));
            res.theta = theta;
            res.expected_disagreement = disagreement;
        }
    }
    if (res.candidates > 1) {
        res.warnings.push_back(std::to_string(res.candidates) +
                               " codewords satisfy the guarantee; returning the one at the lowest threshold");
    }
    return res;
}

/// Uniform distribution over the inner codewords nearest to each left view.
inline InnerDistributionEnsemble local_views_to_distributions(const AelCode& code, const Word& g)
{
    const EdgeWord edges = code.unfold(g);
    const auto& inner = code.inner_codebook();
    const std::size_t M = inner.size();
    std::vector<std::vector<Fraction>> w(code.n(), std::vector<Fraction>(M, Fraction(0)));
    for (std::size_t l = 0; l < code.n(); ++l) {
        const Word view = code.left_view(edges, l);
        std::size_t best = SIZE_MAX;
        std::vector<std::size_t> argmin;
        for (std::size_t i = 0; i < M; ++i) {
            const std::size_t dist = hamming_distance(view, inner.words[i]);
            if (dist < best) {
                best = dist;
                argmin.clear();
            }
            if (dist == best) {
                argmin.push_back(i);
            }
        }
        const Fraction share(1, static_cast<std::int64_t>(argmin.size()));
        for (auto i : argmin) {
            w[l][i] = share;
        }
    }
    return InnerDistributionEnsemble(std::move(w));
}

/// Local nearest-codeword decoding followed by threshold rounding.
inline DecodeResult ael_unique_decode(const AelCode& code, const Word& g)
{
    auto res = decode_from_distributions(code, local_views_to_distributions(code, g));
    if (res.codeword) {
        res.distance = distance(g, *res.codeword);
    }
    return res;
}

} // namespace aelcodes

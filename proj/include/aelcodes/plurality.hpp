/**************************************************************************
 * plurality.hpp
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
#include <atomic>
#include <bit>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "error.hpp"
#include "linear_code.hpp"

namespace aelcodes {

struct PluralityCenter {
    Word center;
    /// |H| - (multiplicity of the plurality symbol), per coordinate.
    std::vector<std::uint32_t> contributions;
    /// Sum of contributions = n * sum_h Delta(center, h).
    std::uint64_t total = 0;
};

/// Coordinate-wise most frequent symbol of H, ties to the smallest encoding.
/// The center minimizes sum_h Delta(g, h) over all g in Sigma^n.
inline PluralityCenter plurality_center(std::span<const Word> H)
{
    require(!H.empty(), ErrorKind::EmptySet, "plurality center of an empty set");
    const std::size_t n = H.front().size();
    for (const auto& h : H) {
        require(h.size() == n, ErrorKind::LengthMismatch, "codewords of different length");
    }
    PluralityCenter out;
    out.center.resize(n);
    out.contributions.resize(n);
    std::map<Symbol, std::uint32_t> counts;
    for (std::size_t c = 0; c < n; ++c) {
        counts.clear();
        for (const auto& h : H) {
            ++counts[h[c]];
        }
        Symbol best = 0;
        std::uint32_t best_count = 0;
        for (const auto& [sym, cnt] : counts) {
            if (cnt > best_count) { // map order gives the smallest symbol on ties
                best = sym;
                best_count = cnt;
            }
        }
        out.center[c] = best;
        out.contributions[c] = static_cast<std::uint32_t>(H.size()) - best_count;
        out.total += out.contributions[c];
    }
    return out;
}

inline PluralityCenter plurality_center(const Codebook& book, std::span<const std::size_t> indices)
{
    std::vector<Word> H;
    H.reserve(indices.size());
    for (auto i : indices) {
        require(i < book.size(), ErrorKind::InvalidParameter, "codeword index out of range");
        H.push_back(book.words[i]);
    }
    return plurality_center(H);
}

inline constexpr std::uint64_t kDefaultSubsetCap = 200'000'000;

struct ScanOptions {
    unsigned threads = 1;
    std::uint64_t subset_cap = kDefaultSubsetCap;
};

/// Worst tuple of one size found by a subset scan.
struct SizeMinimum {
    std::size_t size = 0;
    /// min over |H| = size of sum_c (|H| - maxcount_c); UINT64_MAX when no tuple.
    std::uint64_t min_total = UINT64_MAX;
    /// Lexicographically smallest index tuple attaining min_total.
    std::vector<std::size_t> witness;
    std::uint64_t examined = 0;
};

struct ScanResult {
    std::vector<SizeMinimum> by_size; // sizes 2..k
    std::uint64_t subsets_examined = 0;
};

inline std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap)
{
    if (k > n) {
        return 0;
    }
    unsigned __int128 acc = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        acc = acc * (n - k + i) / i;
        if (acc > cap) {
            return cap + 1;
        }
    }
    return static_cast<std::uint64_t>(acc);
}

/// Number of subsets of size 1..k of an N-set, or cap + 1 if larger.
inline std::uint64_t subset_count_capped(std::uint64_t n, std::size_t k, std::uint64_t cap)
{
    std::uint64_t total = 0;
    for (std::size_t j = 1; j <= k; ++j) {
        total += binomial_capped(n, j, cap);
        if (total > cap) {
            return cap + 1;
        }
    }
    return total;
}

namespace detail {

struct ScanAccumulator {
    std::vector<SizeMinimum> by_size;

    explicit ScanAccumulator(std::size_t k)
    {
        for (std::size_t m = 2; m <= k; ++m) {
            SizeMinimum s;
            s.size = m;
            by_size.push_back(s);
        }
    }

    void offer(std::size_t m, std::uint64_t total, const std::size_t* idx)
    {
        auto& slot = by_size[m - 2];
        ++slot.examined;
        if (total < slot.min_total) {
            slot.min_total = total;
            slot.witness.assign(idx, idx + m);
        }
    }

    void merge(const ScanAccumulator& other)
    {
        for (std::size_t i = 0; i < by_size.size(); ++i) {
            auto& a = by_size[i];
            const auto& b = other.by_size[i];
            a.examined += b.examined;
            if (b.min_total < a.min_total || (b.min_total == a.min_total && b.witness < a.witness)) {
                a.min_total = b.min_total;
                a.witness = b.witness;
            }
        }
    }
};

// Bit-parallel scan for n <= 64. For the current tuple, ge[j] is the mask of
// coordinates where at least j members share a symbol (ge[1] = all).
class MaskScanner {
public:
    MaskScanner(const Codebook& book, std::size_t k) : book_(book), k_(k), n_(book.length)
    {
        const std::size_t N = book.size();
        full_ = n_ == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n_) - 1);
        eq_.assign(N * N, 0);
        for (std::size_t a = 0; a < N; ++a) {
            for (std::size_t b = a; b < N; ++b) {
                std::uint64_t m = 0;
                for (std::size_t c = 0; c < n_; ++c) {
                    if (book.words[a][c] == book.words[b][c]) {
                        m |= std::uint64_t{1} << c;
                    }
                }
                eq_[a * N + b] = m;
                eq_[b * N + a] = m;
            }
        }
    }

    void run_leading(std::size_t lead, ScanAccumulator& acc)
    {
        idx_[0] = lead;
        ge_[0][1] = full_;
        descend(1, acc);
    }

private:
    static constexpr std::size_t kMaxK = 16;

    void descend(std::size_t depth, ScanAccumulator& acc)
    {
        if (depth == k_) {
            return;
        }
        const std::size_t N = book_.size();
        const std::size_t m = depth + 1;
        const auto& prev = ge_[depth - 1];
        auto& next = ge_[depth];
        for (std::size_t x = idx_[depth - 1] + 1; x < N; ++x) {
            // atleast[j]: coordinates where x agrees with >= j earlier members
            std::uint64_t atleast[kMaxK + 1] = {};
            atleast[0] = full_;
            const std::uint64_t* row = &eq_[x * N];
            for (std::size_t i = 0; i < depth; ++i) {
                const std::uint64_t a = row[idx_[i]];
                for (std::size_t j = i + 1; j >= 1; --j) {
                    atleast[j] |= atleast[j - 1] & a;
                }
            }
            next[1] = full_;
            std::uint64_t agree_sum = 0;
            for (std::size_t j = 2; j <= m; ++j) {
                const std::uint64_t prev_j = j <= depth ? prev[j] : 0;
                next[j] = prev_j | atleast[j - 1];
                agree_sum += static_cast<std::uint64_t>(std::popcount(next[j]));
            }
            idx_[depth] = x;
            // sum_c maxcount_c = n + sum_{j>=2} |ge[j]|
            const std::uint64_t total = static_cast<std::uint64_t>(m) * n_ - n_ - agree_sum;
            acc.offer(m, total, idx_);
            descend(depth + 1, acc);
        }
    }

    const Codebook& book_;
    std::size_t k_;
    std::size_t n_;
    std::uint64_t full_ = 0;
    std::vector<std::uint64_t> eq_;
    std::size_t idx_[kMaxK] = {};
    std::uint64_t ge_[kMaxK][kMaxK + 2] = {};

public:
    static constexpr std::size_t max_k() { return kMaxK; }
};

// Coordinate-count scan for any n; maxcount is updated incrementally.
class CountScanner {
public:
    CountScanner(const Codebook& book, std::size_t k)
        : book_(book), k_(k), n_(book.length), maxcount_(k + 1, std::vector<std::uint32_t>(book.length, 0))
    {
        idx_.resize(k);
    }

    void run_leading(std::size_t lead, ScanAccumulator& acc)
    {
        idx_[0] = lead;
        std::fill(maxcount_[1].begin(), maxcount_[1].end(), 1);
        descend(1, acc);
    }

private:
    void descend(std::size_t depth, ScanAccumulator& acc)
    {
        if (depth == k_) {
            return;
        }
        const std::size_t N = book_.size();
        const std::size_t m = depth + 1;
        for (std::size_t x = idx_[depth - 1] + 1; x < N; ++x) {
            const auto& wx = book_.words[x];
            std::uint64_t sum_max = 0;
            for (std::size_t c = 0; c < n_; ++c) {
                std::uint32_t same = 1;
                for (std::size_t i = 0; i < depth; ++i) {
                    same += book_.words[idx_[i]][c] == wx[c] ? 1 : 0;
                }
                maxcount_[m][c] = std::max(maxcount_[depth][c], same);
                sum_max += maxcount_[m][c];
            }
            idx_[depth] = x;
            acc.offer(m, static_cast<std::uint64_t>(m) * n_ - sum_max, idx_.data());
            descend(depth + 1, acc);
        }
    }

    const Codebook& book_;
    std::size_t k_;
    std::size_t n_;
    std::vector<std::vector<std::uint32_t>> maxcount_;
    std::vector<std::size_t> idx_;
};

template <class Scanner>
ScanResult run_scan(const Codebook& book, std::size_t k, const ScanOptions& opts)
{
    const std::size_t N = book.size();
    const unsigned threads = std::max(1u, opts.threads);
    std::vector<ScanAccumulator> accs(threads, ScanAccumulator(k));
    std::atomic<std::size_t> next_lead{0};
    auto worker = [&](unsigned t) {
        Scanner scanner(book, k);
        for (std::size_t lead = next_lead++; lead < N; lead = next_lead++) {
            scanner.run_leading(lead, accs[t]);
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(worker, t);
        }
        for (auto& th : pool) {
            th.join();
        }
    }
    for (unsigned t = 1; t < threads; ++t) {
        accs[0].merge(accs[t]);
    }
    ScanResult out;
    out.by_size = std::move(accs[0].by_size);
    out.subsets_examined = N; // singletons
    for (const auto& s : out.by_size) {
        out.subsets_examined += s.examined;
    }
    return out;
}

} // namespace detail

enum class ScanEngine { Auto, Mask, Count };

/// For every tuple size 2..k, the minimum over all H of the plurality total
/// sum_c (|H| - maxcount_c) and its lexicographically smallest witness.
/// Deterministic for any thread count.
inline ScanResult scan_min_plurality_totals(const Codebook& book, std::size_t k, const ScanOptions& opts = {},
                                            ScanEngine engine = ScanEngine::Auto)
{
    require(k >= 1, ErrorKind::InvalidParameter, "k must be >= 1");
    const std::uint64_t count = subset_count_capped(book.size(), k, opts.subset_cap);
    require(count <= opts.subset_cap, ErrorKind::SubsetEnumerationTooLarge,
            "subsets of size <= " + std::to_string(k) + " of " + std::to_string(book.size()) +
                " codewords exceed the cap " + std::to_string(opts.subset_cap));
    if (k == 1 || book.size() < 2) {
        ScanResult out;
        for (std::size_t m = 2; m <= k; ++m) {
            SizeMinimum s;
            s.size = m;
            out.by_size.push_back(s);
        }
        out.subsets_examined = book.size();
        return out;
    }
    const bool mask_ok = book.length <= 64 && k <= detail::MaskScanner::max_k() && book.size() <= 4096;
    if (engine == ScanEngine::Mask) {
        require(mask_ok, ErrorKind::InvalidParameter, "mask engine needs n <= 64, k <= 16 and at most 4096 codewords");
    }
    if (engine == ScanEngine::Count || !mask_ok) {
        return detail::run_scan<detail::CountScanner>(book, k, opts);
    }
    return detail::run_scan<detail::MaskScanner>(book, k, opts);
}

} // namespace aelcodes

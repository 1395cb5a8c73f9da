/**************************************************************************
 * linear_code.hpp
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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "fraction.hpp"
#include "gf.hpp"

namespace aelcodes {

/// One code symbol. For codes over F_q this is the element encoding; for
/// folded codes (symbols in F_q^b) and AEL codes (symbols in Sigma_in^d) it is
/// the base-q integer encoding of the tuple, first component least significant.
using Symbol = std::uint64_t;
using Word = std::vector<Symbol>;
using Matrix = std::vector<std::vector<Elem>>;

inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 24;

/// Reduced row echelon form in place; returns the pivot column of each
/// surviving row. Zero rows are dropped.
inline std::vector<std::size_t> row_reduce(const Field& field, Matrix& rows)
{
    std::vector<std::size_t> pivots;
    if (rows.empty()) {
        return pivots;
    }
    const std::size_t cols = rows.front().size();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][c] == 0) {
            ++pivot;
        }
        if (pivot == rows.size()) {
            continue;
        }
        std::swap(rows[rank], rows[pivot]);
        const Elem scale = field.inv(rows[rank][c]);
        for (auto& x : rows[rank]) {
            x = field.mul(x, scale);
        }
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][c] == 0) {
                continue;
            }
            const Elem factor = rows[r][c];
            for (std::size_t k = 0; k < cols; ++k) {
                rows[r][k] = field.sub(rows[r][k], field.mul(factor, rows[rank][k]));
            }
        }
        pivots.push_back(c);
        ++rank;
    }
    rows.resize(rank);
    return pivots;
}

inline std::size_t matrix_rank(const Field& field, Matrix rows) { return row_reduce(field, rows).size(); }

inline std::uint64_t checked_power(std::uint64_t base, std::uint64_t exp, std::uint64_t limit)
{
    std::uint64_t result = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (result > limit / base) {
            return limit + 1;
        }
        result *= base;
    }
    return result;
}

/// A full codebook in a fixed order, with symbols over an alphabet of the
/// given size. This is what every brute-force verifier consumes.
struct Codebook {
    std::uint64_t alphabet_size = 0;
    std::size_t length = 0;
    std::vector<Word> words;

    std::size_t size() const noexcept { return words.size(); }
};

/// Linear code given by a full-rank generator matrix over F_q.
///
/// With symbol_width b > 1 the code is read as a code of length n over the
/// alphabet F_q^b: the generator has n*b columns and symbol i is the tuple of
/// columns i*b .. i*b+b-1. Distances, puncturing and enumeration all work on
/// symbols.
class LinearCode {
public:
    LinearCode(Field field, std::size_t length, Matrix generator, std::size_t symbol_width = 1)
        : field_(std::move(field)), length_(length), width_(symbol_width), generator_(std::move(generator))
    {
        require(width_ >= 1, ErrorKind::InvalidParameter, "symbol width must be >= 1");
        require(length_ >= 1, ErrorKind::InvalidParameter, "block length must be >= 1");
        require(!generator_.empty(), ErrorKind::RankDeficient, "generator has no rows");
        for (const auto& row : generator_) {
            require(row.size() == length_ * width_, ErrorKind::DimensionMismatch,
                    "generator row has " + std::to_string(row.size()) + " columns, expected " +
                        std::to_string(length_ * width_));
            for (auto x : row) {
                require(field_.contains(x), ErrorKind::InvalidParameter, "generator entry outside the field");
            }
        }
        require(generator_.size() <= length_ * width_, ErrorKind::RankDeficient, "more rows than columns");
        require(matrix_rank(field_, generator_) == generator_.size(), ErrorKind::RankDeficient,
                "generator matrix is not full row rank");
    }

    const Field& field() const noexcept { return field_; }
    std::size_t length() const noexcept { return length_; }
    std::size_t dimension() const noexcept { return generator_.size(); }
    std::size_t symbol_width() const noexcept { return width_; }
    const Matrix& generator() const noexcept { return generator_; }

    /// log_{q^b} |C| / n.
    Fraction rate() const
    {
        return {static_cast<std::int64_t>(dimension()), static_cast<std::int64_t>(length_ * width_)};
    }

    std::uint64_t alphabet_size() const
    {
        const std::uint64_t limit = std::uint64_t{1} << 62;
        const auto a = checked_power(field_.order(), width_, limit);
        require(a <= limit, ErrorKind::EnumerationTooLarge, "symbol alphabet too large to encode");
        return a;
    }

    /// q^dim, or cap + 1 when larger than cap.
    std::uint64_t size_capped(std::uint64_t cap) const { return checked_power(field_.order(), dimension(), cap); }

    std::vector<Elem> encode_flat(std::span<const Elem> msg) const
    {
        require(msg.size() == dimension(), ErrorKind::DimensionMismatch,
                "message length " + std::to_string(msg.size()) + " != dimension " + std::to_string(dimension()));
        std::vector<Elem> out(length_ * width_, 0);
        for (std::size_t j = 0; j < msg.size(); ++j) {
            require(field_.contains(msg[j]), ErrorKind::InvalidParameter, "message symbol outside the field");
            if (msg[j] == 0) {
                continue;
            }
            for (std::size_t c = 0; c < out.size(); ++c) {
                out[c] = field_.add(out[c], field_.mul(msg[j], generator_[j][c]));
            }
        }
        return out;
    }

    Word fold(std::span<const Elem> flat) const
    {
        require(flat.size() == length_ * width_, ErrorKind::LengthMismatch, "flat word has wrong length");
        Word out(length_, 0);
        const std::uint64_t q = field_.order();
        for (std::size_t i = 0; i < length_; ++i) {
            Symbol s = 0;
            for (std::size_t t = width_; t > 0; --t) {
                s = s * q + flat[i * width_ + t - 1];
            }
            out[i] = s;
        }
        return out;
    }

    std::vector<Elem> unfold(const Word& word) const
    {
        require(word.size() == length_, ErrorKind::LengthMismatch, "word has wrong length");
        std::vector<Elem> out(length_ * width_, 0);
        const std::uint64_t q = field_.order();
        for (std::size_t i = 0; i < length_; ++i) {
            Symbol s = word[i];
            for (std::size_t t = 0; t < width_; ++t) {
                out[i * width_ + t] = static_cast<Elem>(s % q);
                s /= q;
            }
            require(s == 0, ErrorKind::InvalidParameter, "symbol outside the alphabet");
        }
        return out;
    }

    Word encode(std::span<const Elem> msg) const { return fold(encode_flat(msg)); }

    /// Message with the given index in lexicographic order (first coordinate
    /// most significant).
    std::vector<Elem> message_at(std::uint64_t index) const
    {
        std::vector<Elem> msg(dimension(), 0);
        const std::uint64_t q = field_.order();
        for (std::size_t j = dimension(); j > 0; --j) {
            msg[j - 1] = static_cast<Elem>(index % q);
            index /= q;
        }
        return msg;
    }

    std::uint64_t message_index(std::span<const Elem> msg) const
    {
        require(msg.size() == dimension(), ErrorKind::DimensionMismatch, "message has wrong length");
        std::uint64_t index = 0;
        for (auto x : msg) {
            index = index * field_.order() + x;
        }
        return index;
    }

    /// Solves msg * G = word; nullopt when word is not a codeword.
    std::optional<std::vector<Elem>> solve_message(const Word& word) const
    {
        const auto flat = unfold(word);
        // Row reduce [G^T | w] column-wise: work on the transposed system.
        const std::size_t k = dimension();
        const std::size_t cols = flat.size();
        Matrix aug(cols, std::vector<Elem>(k + 1, 0));
        for (std::size_t c = 0; c < cols; ++c) {
            for (std::size_t j = 0; j < k; ++j) {
                aug[c][j] = generator_[j][c];
            }
            aug[c][k] = flat[c];
        }
        auto reduced = aug;
        const auto pivots = row_reduce(field_, reduced);
        if (!pivots.empty() && pivots.back() == k) {
            return std::nullopt;
        }
        std::vector<Elem> msg(k, 0);
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            msg[pivots[r]] = reduced[r][k];
        }
        return msg;
    }

    bool contains(const Word& word) const { return solve_message(word).has_value(); }

    friend bool operator==(const LinearCode& a, const LinearCode& b)
    {
        return a.field_ == b.field_ && a.length_ == b.length_ && a.width_ == b.width_ && a.generator_ == b.generator_;
    }

private:
    Field field_;
    std::size_t length_;
    std::size_t width_;
    Matrix generator_;
};

/// All q^dim codewords, messages in lexicographic order.
inline Codebook enumerate_codewords(const LinearCode& code, std::uint64_t cap = kDefaultEnumerationCap)
{
    const std::uint64_t count = code.size_capped(cap);
    require(count <= cap, ErrorKind::EnumerationTooLarge,
            "q^dim = " + std::to_string(code.field().order()) + "^" + std::to_string(code.dimension()) +
                " exceeds the enumeration cap " + std::to_string(cap));
    const Field& f = code.field();
    const std::size_t k = code.dimension();
    const std::size_t cols = code.length() * code.symbol_width();

    Codebook book;
    book.alphabet_size = code.alphabet_size();
    book.length = code.length();
    book.words.reserve(count);

    // odometer over messages; the codeword is updated by the change in one digit
    std::vector<Elem> msg(k, 0);
    std::vector<Elem> flat(cols, 0);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        book.words.push_back(code.fold(flat));
        for (std::size_t j = k; j > 0; --j) {
            const Elem old = msg[j - 1];
            const Elem next = (old + 1 == f.order()) ? 0 : old + 1;
            msg[j - 1] = next;
            const Elem delta = f.sub(next, old);
            const auto& row = code.generator()[j - 1];
            for (std::size_t c = 0; c < cols; ++c) {
                flat[c] = f.add(flat[c], f.mul(delta, row[c]));
            }
            if (next != 0) {
                break;
            }
        }
    }
    return book;
}

inline std::size_t hamming_distance(const Word& a, const Word& b)
{
    require(a.size() == b.size(), ErrorKind::LengthMismatch, "words of different length");
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d += a[i] != b[i] ? 1 : 0;
    }
    return d;
}

inline Fraction distance(const Word& a, const Word& b)
{
    require(!a.empty(), ErrorKind::LengthMismatch, "empty words");
    return {static_cast<std::int64_t>(hamming_distance(a, b)), static_cast<std::int64_t>(a.size())};
}

/// Fractional minimum distance, by the minimum weight of a nonzero codeword.
inline Fraction min_distance(const LinearCode& code, std::uint64_t cap = kDefaultEnumerationCap)
{
    const auto book = enumerate_codewords(code, cap);
    std::size_t best = code.length();
    for (std::size_t i = 1; i < book.words.size(); ++i) {
        std::size_t w = 0;
        for (auto s : book.words[i]) {
            w += s != 0 ? 1 : 0;
        }
        best = std::min(best, w);
    }
    return {static_cast<std::int64_t>(best), static_cast<std::int64_t>(code.length())};
}

/// Deletes the symbol positions in `removed`; dimension becomes the rank of
/// the retained columns.
inline LinearCode puncture(const LinearCode& code, const std::set<std::size_t>& removed)
{
    for (auto i : removed) {
        require(i < code.length(), ErrorKind::InvalidParameter, "puncture position out of range");
    }
    require(removed.size() < code.length(), ErrorKind::EmptyResidual, "puncturing removes every position");
    const std::size_t b = code.symbol_width();
    Matrix rows;
    for (const auto& row : code.generator()) {
        std::vector<Elem> kept;
        for (std::size_t i = 0; i < code.length(); ++i) {
            if (removed.count(i) != 0) {
                continue;
            }
            for (std::size_t t = 0; t < b; ++t) {
                kept.push_back(row[i * b + t]);
            }
        }
        rows.push_back(std::move(kept));
    }
    row_reduce(code.field(), rows);
    require(!rows.empty(), ErrorKind::EmptyResidual, "punctured code is the zero code");
    return {code.field(), code.length() - removed.size(), std::move(rows), b};
}

/// Received word over Sigma with erasures (nullopt marks an erased position).
struct ErasedWord {
    std::vector<std::optional<Symbol>> symbols;

    ErasedWord() = default;
    explicit ErasedWord(std::vector<std::optional<Symbol>> s) : symbols(std::move(s)) {}

    static ErasedWord from_word(const Word& w)
    {
        ErasedWord out;
        out.symbols.assign(w.begin(), w.end());
        return out;
    }

    /// Erases every position in `erased`.
    static ErasedWord with_erasures(const Word& w, const std::set<std::size_t>& erased)
    {
        auto out = from_word(w);
        for (auto i : erased) {
            require(i < w.size(), ErrorKind::InvalidParameter, "erasure position out of range");
            out.symbols[i].reset();
        }
        return out;
    }

    std::size_t length() const noexcept { return symbols.size(); }

    std::size_t erasure_count() const noexcept
    {
        return static_cast<std::size_t>(
            std::count_if(symbols.begin(), symbols.end(), [](const auto& s) { return !s.has_value(); }));
    }

    Fraction erasure_fraction() const
    {
        require(!symbols.empty(), ErrorKind::LengthMismatch, "empty word");
        return {static_cast<std::int64_t>(erasure_count()), static_cast<std::int64_t>(symbols.size())};
    }

    friend bool operator==(const ErasedWord&, const ErasedWord&) = default;
};

/// Non-erased disagreements, over the full length n.
inline std::size_t erased_disagreements(const ErasedWord& g, const Word& h)
{
    require(g.length() == h.size(), ErrorKind::LengthMismatch,
            "lengths " + std::to_string(g.length()) + " and " + std::to_string(h.size()));
    std::size_t d = 0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (g.symbols[i].has_value() && *g.symbols[i] != h[i]) {
            ++d;
        }
    }
    return d;
}

inline Fraction dist_with_erasures(const ErasedWord& g, const Word& h)
{
    require(!h.empty(), ErrorKind::LengthMismatch, "empty word");
    return {static_cast<std::int64_t>(erased_disagreements(g, h)), static_cast<std::int64_t>(h.size())};
}

} // namespace aelcodes

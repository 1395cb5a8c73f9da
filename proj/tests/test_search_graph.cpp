/**************************************************************************
 * test_search_graph.cpp
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

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <set>

#include "aelcodes/expander.hpp"
#include "aelcodes/inner_search.hpp"
#include "aelcodes/outer_code.hpp"
#include "aelcodes/plurality.hpp"
#include "aelcodes/rng.hpp"

using namespace aelcodes;

namespace {

template <class F>
ErrorKind kind_of(F&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no aelcodes::Error thrown";
    return ErrorKind::Io;
}

Codebook random_codebook(std::uint64_t seed, std::uint32_t m, std::size_t n, std::size_t dim)
{
    return enumerate_codewords(sample_random_linear_code(Field::make(2, m), n, dim, seed));
}

// Naive oracle: every tuple, every center in Sigma^n, sum of distances.
std::uint64_t brute_min_center_total(const std::vector<Word>& H, std::uint64_t q)
{
    const std::size_t n = H.front().size();
    std::uint64_t best = UINT64_MAX;
    Word g(n, 0);
    while (true) {
        std::uint64_t total = 0;
        for (const auto& h : H) {
            total += hamming_distance(g, h);
        }
        best = std::min(best, total);
        std::size_t i = 0;
        while (i < n && ++g[i] == q) {
            g[i++] = 0;
        }
        if (i == n) {
            break;
        }
    }
    return best;
}

// Naive oracle for the scan: per size, the minimum plurality total over all
// index tuples, by recursive enumeration.
std::vector<std::uint64_t> brute_min_totals(const Codebook& book, std::size_t k)
{
    std::vector<std::uint64_t> best(k + 1, UINT64_MAX);
    std::vector<std::size_t> idx;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (idx.size() >= 2) {
            std::uint64_t total = 0;
            for (std::size_t c = 0; c < book.length; ++c) {
                std::map<Symbol, std::size_t> cnt;
                std::size_t mx = 0;
                for (auto i : idx) {
                    mx = std::max(mx, ++cnt[book.words[i][c]]);
                }
                total += idx.size() - mx;
            }
            best[idx.size()] = std::min(best[idx.size()], total);
        }
        if (idx.size() == k) {
            return;
        }
        for (std::size_t i = start; i < book.size(); ++i) {
            idx.push_back(i);
            self(self, i + 1);
            idx.pop_back();
        }
    };
    rec(rec, 0);
    return best;
}

// lambda of the circulant graph l -> l + s (mod n), s in shifts, from its
// eigenvalues sum_s w^{js}.
double circulant_lambda(std::size_t n, const std::vector<std::size_t>& shifts)
{
    double best = 0.0;
    for (std::size_t j = 1; j < n; ++j) {
        std::complex<double> z = 0.0;
        for (auto s : shifts) {
            z += std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j * s) / static_cast<double>(n));
        }
        best = std::max(best, std::abs(z));
    }
    return best / static_cast<double>(shifts.size());
}

BipartiteGraph circulant(std::size_t n, const std::vector<std::size_t>& shifts)
{
    std::vector<std::vector<std::uint32_t>> adj(n);
    for (std::size_t l = 0; l < n; ++l) {
        for (auto s : shifts) {
            adj[l].push_back(static_cast<std::uint32_t>((l + s) % n));
        }
    }
    return {n, shifts.size(), std::move(adj)};
}

} // namespace

// ---------------------------------------------------------------- plurality

TEST(Plurality, Example)
{
    const std::vector<Word> H{{0, 1, 2}, {0, 1, 3}, {1, 2, 3}};
    const auto pc = plurality_center(H);
    EXPECT_EQ(pc.center, (Word{0, 1, 3}));
    EXPECT_EQ(pc.contributions, (std::vector<std::uint32_t>{1, 1, 1}));
    EXPECT_EQ(pc.total, 3U);
}

TEST(Plurality, TiesGoToSmallestSymbol)
{
    const std::vector<Word> H{{3, 2}, {1, 2}};
    EXPECT_EQ(plurality_center(H).center, (Word{1, 2}));
    EXPECT_EQ(kind_of([] { plurality_center(std::span<const Word>{}); }), ErrorKind::EmptySet);
}

TEST(Plurality, CenterMinimizesTotalDistance)
{
    Rng rng(31);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 1 + rng.below(4);
        const std::uint64_t q = 2 + rng.below(3);
        std::vector<Word> H(1 + rng.below(4), Word(n));
        for (auto& h : H) {
            for (auto& x : h) {
                x = rng.below(q);
            }
        }
        const auto pc = plurality_center(H);
        std::uint64_t total = 0;
        for (const auto& h : H) {
            total += hamming_distance(pc.center, h);
        }
        EXPECT_EQ(total, pc.total);
        EXPECT_EQ(pc.total, brute_min_center_total(H, q));
    }
}

// ---------------------------------------------------------------- scan

TEST(Scan, EnginesAgreeWithNaiveEnumeration)
{
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        const auto book = random_codebook(seed, 2, 6, 2);
        const auto naive = brute_min_totals(book, 4);
        const auto mask = scan_min_plurality_totals(book, 4, {}, ScanEngine::Mask);
        const auto count = scan_min_plurality_totals(book, 4, {}, ScanEngine::Count);
        for (std::size_t m = 2; m <= 4; ++m) {
            EXPECT_EQ(mask.by_size[m - 2].min_total, naive[m]) << "seed " << seed << " size " << m;
            EXPECT_EQ(count.by_size[m - 2].min_total, naive[m]);
            EXPECT_EQ(mask.by_size[m - 2].witness, count.by_size[m - 2].witness);
        }
        EXPECT_EQ(mask.subsets_examined, count.subsets_examined);
    }
}

TEST(Scan, SubsetCountAndDeterminismAcrossThreads)
{
    const auto book = random_codebook(99, 3, 6, 2);
    ScanOptions one;
    ScanOptions four;
    four.threads = 4;
    const auto a = scan_min_plurality_totals(book, 3, one);
    const auto b = scan_min_plurality_totals(book, 3, four);
    // C(64,1) + C(64,2) + C(64,3)
    EXPECT_EQ(a.subsets_examined, 64U + 2016U + 41664U);
    ASSERT_EQ(a.by_size.size(), b.by_size.size());
    for (std::size_t i = 0; i < a.by_size.size(); ++i) {
        EXPECT_EQ(a.by_size[i].min_total, b.by_size[i].min_total);
        EXPECT_EQ(a.by_size[i].witness, b.by_size[i].witness);
    }
}

TEST(Scan, CapIsEnforced)
{
    const auto book = random_codebook(3, 3, 6, 2);
    ScanOptions opts;
    opts.subset_cap = 1000;
    EXPECT_EQ(kind_of([&] { scan_min_plurality_totals(book, 3, opts); }), ErrorKind::SubsetEnumerationTooLarge);
}

// ---------------------------------------------------------------- ARLD

TEST(Arld, ReedSolomonPairsHaveZeroSlackAtItsDistance)
{
    const auto rs = make_reed_solomon(Field::make(2, 2), 4, 2);
    const auto cert = min_arld_slack(rs.code(), 2, Fraction(3, 4));
    EXPECT_EQ(cert.eps_min, Fraction(0));
    EXPECT_EQ(cert.eps_worst, Fraction(0));
    EXPECT_EQ(cert.min_total_by_size, (std::vector<std::uint64_t>{3}));
    EXPECT_EQ(cert.codebook_size, 16U);
    EXPECT_EQ(cert.subsets_examined, 16U + 120U);
    EXPECT_EQ(reevaluate_witness(enumerate_codewords(rs.code()), cert), cert.eps_worst);
}

TEST(Arld, CertificateMatchesDefinitionOnSmallCodes)
{
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const auto book = random_codebook(seed, 1, 5, 2);
        for (std::size_t k : {2U, 3U}) {
            const Fraction delta0(1, 2);
            const auto cert = min_arld_slack(book, k, delta0);
            const auto naive = brute_min_totals(book, k);
            Fraction worst(-1000);
            for (std::size_t m = 2; m <= k; ++m) {
                worst = max(worst, delta0 - Fraction(static_cast<std::int64_t>(naive[m]),
                                                     static_cast<std::int64_t>(5 * (m - 1))));
            }
            EXPECT_EQ(cert.eps_worst, worst);
            EXPECT_EQ(cert.eps_min, max(worst, Fraction(0)));
            // the literal definition with erasures holds at eps_min and not below it
            EXPECT_TRUE(exhaustive_arld_check(book, k, delta0, cert.eps_min, true).pass);
            if (cert.eps_min > Fraction(0)) {
                const auto below = exhaustive_arld_check(book, k, delta0, cert.eps_min - Fraction(1, 100), true);
                EXPECT_FALSE(below.pass);
                ASSERT_TRUE(below.counterexample.has_value());
                EXPECT_LT(below.counterexample->lhs, below.counterexample->rhs);
            }
        }
    }
}

TEST(Arld, ErasuresNeverLowerTheSlack)
{
    const auto book = random_codebook(17, 2, 5, 2);
    Rng rng(5);
    const Fraction delta0(3, 5);
    for (int t = 0; t < 300; ++t) {
        std::vector<std::size_t> H;
        for (auto i : rng.permutation(book.size())) {
            if (H.size() < 2 + rng.below(2)) {
                H.push_back(i);
            }
        }
        const auto pc = plurality_center(book, H);
        const Fraction base = erased_slack(book, H, ErasedWord::from_word(pc.center), delta0);
        std::set<std::size_t> S;
        for (std::size_t c = 0; c < 5; ++c) {
            if (rng.coin()) {
                S.insert(c);
            }
        }
        EXPECT_GE(erased_slack(book, H, ErasedWord::with_erasures(pc.center, S), delta0), base);
    }
}

TEST(Arld, TrivialSizes)
{
    const auto book = random_codebook(1, 1, 4, 1);
    const auto cert = min_arld_slack(book, 1, Fraction(1, 2));
    EXPECT_EQ(cert.eps_min, Fraction(0));
    EXPECT_TRUE(cert.witness.empty());
}

// ---------------------------------------------------------------- search

TEST(InnerSearch, FindsCertifiedCodeDeterministically)
{
    const auto f = Field::make(2, 2);
    const auto a = search_inner_code(f, 6, 2, 3, Fraction(1, 2), Fraction(1, 6), 42, 20);
    const auto b = search_inner_code(f, 6, 2, 3, Fraction(1, 2), Fraction(1, 6), 42, 20);
    EXPECT_LE(a.certificate.eps_min, Fraction(1, 6));
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.tries, b.tries);
    EXPECT_EQ(a.code_seed, derive_seed(std::uint64_t{42}, static_cast<std::uint64_t>(a.tries - 1)));
    EXPECT_EQ(a.code, sample_random_linear_code(f, 6, 2, a.code_seed));
    EXPECT_EQ(min_arld_slack(a.code, 3, Fraction(1, 2)).eps_min, a.certificate.eps_min);
}

TEST(InnerSearch, ExhaustsOnUnreachableTarget)
{
    // delta0 = 1 with three codewords of length 2 over GF(2) cannot reach eps 0
    EXPECT_EQ(kind_of([] {
                  search_inner_code(Field::make(2, 1), 2, 2, 3, Fraction(1), Fraction(0), 1, 3);
              }),
              ErrorKind::SearchExhausted);
    EXPECT_EQ(kind_of([] { sample_random_linear_code(Field::make(2, 1), 3, 4, 1); }), ErrorKind::InvalidParameter);
}

// ---------------------------------------------------------------- folded RS

TEST(FoldedRS, SmallInstance)
{
    const auto frs = make_folded_rs(Field::make(17, 1), 2, 4, Fraction(1, 4));
    EXPECT_TRUE(frs.appropriate());
    EXPECT_EQ(frs.gamma(), 3U);
    EXPECT_EQ(frs.message_length(), 2U);
    EXPECT_EQ(frs.alphas(), (std::vector<Elem>{1, 9, 13, 15})); // 3^0, 3^2, 3^4, 3^6
    const auto code = frs_as_linear_code(frs);
    EXPECT_EQ(code.symbol_width(), 2U);
    EXPECT_EQ(code.alphabet_size(), 289U);
    const auto book = enumerate_codewords(code);
    EXPECT_EQ(book.size(), 289U);
    // a nonzero f of degree < 2 vanishes on at most one of the two distinct
    // points of a block, so every nonzero codeword has full folded weight
    EXPECT_EQ(min_distance(code), Fraction(1));
}

TEST(FoldedRS, ArldCertificateAtThreeQuarters)
{
    const auto code = frs_as_linear_code(make_folded_rs(Field::make(17, 1), 2, 4, Fraction(1, 4)));
    const auto cert = min_arld_slack(code, 3, Fraction(3, 4));
    EXPECT_EQ(cert.eps_min, Fraction(0));
    EXPECT_EQ(cert.eps_worst, Fraction(-1, 4));
    EXPECT_EQ(cert.subsets_examined, 289U + 41616U + 3981264U);
}

TEST(FoldedRS, RejectsBadParameters)
{
    const auto f17 = Field::make(17, 1);
    EXPECT_EQ(kind_of([&] { make_folded_rs(f17, 3, 6, Fraction(1, 2)); }), ErrorKind::FieldTooSmall);
    EXPECT_EQ(kind_of([&] { make_folded_rs(f17, 2, 4, Fraction(1, 3)); }), ErrorKind::InvalidParameter);
    EXPECT_EQ(kind_of([&] { make_folded_rs(f17, 2, 2, Fraction(1, 2), std::vector<Elem>{1, 3}); }),
              ErrorKind::NotAppropriate);
    EXPECT_NO_THROW(make_folded_rs(f17, 2, 2, Fraction(1, 2), std::vector<Elem>{1, 2}));
}

// ---------------------------------------------------------------- expander

TEST(Expander, CompleteGraphHasExactZeroLambda)
{
    const auto g = BipartiteGraph::complete(16);
    EXPECT_LT(g.lambda(), 1e-9);
    EXPECT_EQ(g.lambda_bound(), Fraction(0));
    EXPECT_EQ(g.edge_count(), 256U);
    const auto r = random_regular_bipartite(8, 8, 1, 0.0);
    EXPECT_EQ(r.left_adjacency(), BipartiteGraph::complete(8).left_adjacency());
}

TEST(Expander, PerfectMatchingHasLambdaOne)
{
    EXPECT_NEAR(circulant(10, {0}).lambda(), 1.0, 1e-9);
}

TEST(Expander, CirculantSpectrumDenseAndIterative)
{
    for (auto [n, shifts] : std::vector<std::pair<std::size_t, std::vector<std::size_t>>>{
             {8, {0, 1}}, {31, {0, 1, 3}}, {64, {0, 1, 5, 11}}, {600, {0, 1, 3}}, {700, {0, 2, 7, 19}}}) {
        const auto g = circulant(n, shifts);
        EXPECT_NEAR(g.lambda(), circulant_lambda(n, shifts), 1e-6) << "n=" << n;
        EXPECT_GE(g.lambda_bound().to_double(), g.lambda());
    }
    EXPECT_NEAR(circulant(8, {0, 1}).lambda(), std::cos(std::numbers::pi / 8), 1e-9);
}

TEST(Expander, EdgeOrderingBijections)
{
    const auto g = random_regular_bipartite(32, 5, 7, 1.0);
    std::set<std::uint32_t> seen;
    for (std::size_t r = 0; r < g.n(); ++r) {
        const auto& edges = g.right_edges(r);
        ASSERT_EQ(edges.size(), 5U);
        EXPECT_TRUE(std::is_sorted(edges.begin(), edges.end()));
        for (std::size_t j = 0; j < edges.size(); ++j) {
            const auto e = edges[j];
            EXPECT_EQ(g.right_end(e), (EdgeEnd{static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(j)}));
            EXPECT_EQ(g.edge_index_right(r, j), e);
            const auto le = g.left_end(e);
            EXPECT_EQ(g.edge_index(le.vertex, le.slot), e);
            EXPECT_EQ(g.right_neighbor(le.vertex, le.slot), r);
            seen.insert(e);
        }
    }
    EXPECT_EQ(seen.size(), g.edge_count());
}

TEST(Expander, RandomGraphsMeetTargetAndAreReproducible)
{
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto g = random_regular_bipartite(64, 8, seed, 0.9);
        EXPECT_LE(g.lambda(), 0.9);
        EXPECT_EQ(g, random_regular_bipartite(64, 8, seed, 0.9));
        for (const auto& row : g.left_adjacency()) {
            EXPECT_EQ(std::set<std::uint32_t>(row.begin(), row.end()).size(), 8U);
        }
        // lambda >= 2 sqrt(d-1)/d asymptotically; here only sanity
        EXPECT_GT(g.lambda(), 0.3);
    }
}

TEST(Expander, ErrorPaths)
{
    EXPECT_EQ(kind_of([] { random_regular_bipartite(16, 3, 1, 0.0, 2); }), ErrorKind::TargetUnreachable);
    EXPECT_EQ(kind_of([] { random_regular_bipartite(4, 5, 1, 1.0); }), ErrorKind::InvalidParameter);
    EXPECT_EQ(kind_of([] { BipartiteGraph(2, 2, {{0, 0}, {1, 1}}); }), ErrorKind::InvalidGraph);
    EXPECT_EQ(kind_of([] { BipartiteGraph(2, 1, {{0}, {0}}); }), ErrorKind::InvalidGraph);
}

TEST(Expander, MixingLemmaHoldsOnRandomFunctionsAndSets)
{
    const auto g = random_regular_bipartite(64, 8, 3, 0.8);
    Rng rng(8);
    for (int t = 0; t < 200; ++t) {
        std::vector<double> f(64);
        std::vector<double> h(64);
        for (std::size_t i = 0; i < 64; ++i) {
            f[i] = rng.uniform(-1.0, 1.0);
            h[i] = rng.uniform(-1.0, 1.0);
        }
        EXPECT_TRUE(verify_eml(g, f, h).pass);
        std::vector<bool> S(64);
        std::vector<bool> T(64);
        for (std::size_t i = 0; i < 64; ++i) {
            S[i] = rng.coin();
            T[i] = rng.coin();
        }
        EXPECT_TRUE(verify_eml_sets(g, S, T).pass);
    }
}

TEST(Expander, EdgesBetweenOnCompleteGraph)
{
    const auto g = BipartiteGraph::complete(6);
    const std::vector<bool> S{true, false, true, false, false, true};
    const std::vector<bool> T{false, true, true, false, false, false};
    EXPECT_EQ(edges_between(g, S, T), 6U);
    const auto r = verify_eml_sets(g, S, T);
    EXPECT_DOUBLE_EQ(r.deviation, 0.0);
    EXPECT_TRUE(r.pass);
}

TEST(Expander, MixingLemmaFailsForBadClaimedLambda)
{
    // two disjoint K_{2,2}: sets aligned with one block deviate by d|S||T|/2
    const BipartiteGraph g(4, 2, {{0, 1}, {0, 1}, {2, 3}, {2, 3}});
    EXPECT_NEAR(g.lambda(), 1.0, 1e-9);
    const std::vector<bool> S{true, true, false, false};
    const auto r = verify_eml_sets(g, S, S);
    EXPECT_DOUBLE_EQ(r.deviation, 2.0);
    EXPECT_TRUE(r.pass);
}

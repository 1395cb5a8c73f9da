/**************************************************************************
 * expander.hpp
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
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SVD>

#include "error.hpp"
#include "fraction.hpp"
#include "rng.hpp"

namespace aelcodes {

/// Added to every measured lambda before it enters an inequality, so a
/// floating point SVD can never make a hypothesis look satisfied.
inline constexpr double kLambdaSlack = 1e-6;

/// Largest n for which lambda comes from a dense SVD; above it, power
/// iteration on the deflated Gram matrix.
inline constexpr std::size_t kDenseSvdLimit = 512;

struct EdgeEnd {
    std::uint32_t vertex = 0;
    std::uint32_t slot = 0;

    friend bool operator==(const EdgeEnd&, const EdgeEnd&) = default;
};

double second_singular_value(std::size_t n, std::size_t d, const std::vector<std::vector<std::uint32_t>>& left_adj);

/// Balanced d-regular bipartite graph with a fixed edge ordering.
///
/// Edge e = l*d + i is the i-th edge of left vertex l. Each right vertex
/// orders its edges by increasing edge index. These give the bijections
/// E <-> L x [d] <-> R x [d].
class BipartiteGraph {
public:
    BipartiteGraph(std::size_t n, std::size_t d, std::vector<std::vector<std::uint32_t>> left_adj,
                   std::uint64_t seed = 0)
        : n_(n), d_(d), seed_(seed), left_adj_(std::move(left_adj))
    {
        require(n_ >= 1 && d_ >= 1 && d_ <= n_, ErrorKind::InvalidGraph, "need 1 <= d <= n");
        require(left_adj_.size() == n_, ErrorKind::InvalidGraph, "left adjacency must have n rows");
        right_edges_.assign(n_, {});
        edge_right_.assign(n_ * d_, {});
        for (std::size_t l = 0; l < n_; ++l) {
            require(left_adj_[l].size() == d_, ErrorKind::InvalidGraph,
                    "left vertex " + std::to_string(l) + " has degree " + std::to_string(left_adj_[l].size()));
            auto sorted = left_adj_[l];
            std::sort(sorted.begin(), sorted.end());
            require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(), ErrorKind::InvalidGraph,
                    "parallel edges at left vertex " + std::to_string(l));
            for (std::size_t i = 0; i < d_; ++i) {
                const auto r = left_adj_[l][i];
                require(r < n_, ErrorKind::InvalidGraph, "right endpoint out of range");
                const auto e = static_cast<std::uint32_t>(l * d_ + i);
                edge_right_[e] = {r, static_cast<std::uint32_t>(right_edges_[r].size())};
                right_edges_[r].push_back(e);
            }
        }
        for (std::size_t r = 0; r < n_; ++r) {
            require(right_edges_[r].size() == d_, ErrorKind::InvalidGraph,
                    "right vertex " + std::to_string(r) + " has degree " + std::to_string(right_edges_[r].size()));
        }
        lambda_ = second_singular_value(n_, d_, left_adj_);
    }

    static BipartiteGraph complete(std::size_t n)
    {
        std::vector<std::vector<std::uint32_t>> adj(n);
        for (auto& row : adj) {
            for (std::size_t r = 0; r < n; ++r) {
                row.push_back(static_cast<std::uint32_t>(r));
            }
        }
        return {n, n, std::move(adj)};
    }

    std::size_t n() const noexcept { return n_; }
    std::size_t degree() const noexcept { return d_; }
    std::size_t edge_count() const noexcept { return n_ * d_; }
    std::uint64_t seed() const noexcept { return seed_; }
    const std::vector<std::vector<std::uint32_t>>& left_adjacency() const noexcept { return left_adj_; }

    /// sigma_2(A_G) / d as measured; see second_singular_value.
    double lambda() const noexcept { return lambda_; }

    /// Exact rational upper bound on lambda() + kLambdaSlack. K_{n,n} has
    /// lambda = 0 exactly and gets no slack.
    Fraction lambda_bound() const
    {
        if (d_ == n_) {
            return Fraction(0);
        }
        return Fraction::upper_bound_of(lambda_ + kLambdaSlack);
    }

    std::uint32_t right_neighbor(std::size_t l, std::size_t i) const { return left_adj_[l][i]; }

    std::uint32_t edge_index(std::size_t l, std::size_t i) const { return static_cast<std::uint32_t>(l * d_ + i); }
    std::uint32_t edge_index_right(std::size_t r, std::size_t j) const { return right_edges_[r][j]; }

    EdgeEnd left_end(std::uint32_t e) const
    {
        return {static_cast<std::uint32_t>(e / d_), static_cast<std::uint32_t>(e % d_)};
    }
    EdgeEnd right_end(std::uint32_t e) const { return edge_right_[e]; }

    /// Edge indices at right vertex r in its fixed order.
    const std::vector<std::uint32_t>& right_edges(std::size_t r) const { return right_edges_[r]; }

    friend bool operator==(const BipartiteGraph& a, const BipartiteGraph& b)
    {
        return a.n_ == b.n_ && a.d_ == b.d_ && a.left_adj_ == b.left_adj_;
    }

private:
    std::size_t n_;
    std::size_t d_;
    std::uint64_t seed_;
    std::vector<std::vector<std::uint32_t>> left_adj_;
    std::vector<std::vector<std::uint32_t>> right_edges_;
    std::vector<EdgeEnd> edge_right_;
    double lambda_ = 1.0;
};

/// Second singular value of A_G / d. Dense SVD for n <= 512, otherwise power
/// iteration on A A^T / d^2 - J / n (whose top eigenvalue is sigma_2^2).
inline double second_singular_value(std::size_t n, std::size_t d,
                                    const std::vector<std::vector<std::uint32_t>>& left_adj)
{
    const double inv_d = 1.0 / static_cast<double>(d);
    if (n <= kDenseSvdLimit) {
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        for (std::size_t l = 0; l < n; ++l) {
            for (auto r : left_adj[l]) {
                a(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(r)) += inv_d;
            }
        }
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
        const auto& sv = svd.singularValues();
        return std::clamp(sv(1), 0.0, 1.0);
    }

    // y = A^T x / d, then z = A y / d, then subtract the mean (the J/n part).
    auto apply = [&](const Eigen::VectorXd& x) {
        Eigen::VectorXd y = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
        for (std::size_t l = 0; l < n; ++l) {
            for (auto r : left_adj[l]) {
                y(r) += x(static_cast<Eigen::Index>(l)) * inv_d;
            }
        }
        Eigen::VectorXd z = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
        for (std::size_t l = 0; l < n; ++l) {
            for (auto r : left_adj[l]) {
                z(static_cast<Eigen::Index>(l)) += y(r) * inv_d;
            }
        }
        z.array() -= z.mean();
        return z;
    };
    Eigen::VectorXd x(static_cast<Eigen::Index>(n));
    Rng rng(0x5eed);
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        x(i) = rng.uniform(-1.0, 1.0);
    }
    x.array() -= x.mean();
    x.normalize();
    double mu = 0.0;
    for (int iter = 0; iter < 200000; ++iter) {
        Eigen::VectorXd y = apply(x);
        mu = x.dot(y);
        const double residual = (y - mu * x).norm();
        if (residual <= 1e-10) {
            return std::sqrt(std::clamp(mu, 0.0, 1.0));
        }
        const double norm = y.norm();
        if (norm == 0.0) {
            return 0.0;
        }
        x = y / norm;
    }
    fail(ErrorKind::ConvergenceFailure, "power iteration did not converge for n = " + std::to_string(n));
}

inline double second_singular_value(const BipartiteGraph& g) { return g.lambda(); }

/// Union of d uniformly random perfect matchings without parallel edges,
/// accepted once the measured lambda is <= lambda_target. n == d gives K_{n,n}.
inline BipartiteGraph random_regular_bipartite(std::size_t n, std::size_t d, std::uint64_t seed, double lambda_target,
                                               std::size_t max_tries = 50)
{
    require(d >= 1 && d <= n, ErrorKind::InvalidParameter, "need 1 <= d <= n");
    if (d == n) {
        // lambda(K_{n,n}) = 0 exactly, so any target >= 0 is met
        require(lambda_target >= 0.0, ErrorKind::TargetUnreachable, "negative lambda target");
        auto g = BipartiteGraph::complete(n);
        return BipartiteGraph(n, d, g.left_adjacency(), seed);
    }
    for (std::size_t t = 0; t < max_tries; ++t) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        std::vector<std::vector<std::uint32_t>> adj(n);
        for (std::size_t m = 0; m < d; ++m) {
            bool placed = false;
            for (int restart = 0; restart < 100 && !placed; ++restart) {
                auto perm = rng.permutation(n);
                auto clashes = [&](std::size_t l, std::uint32_t r) {
                    return std::find(adj[l].begin(), adj[l].end(), r) != adj[l].end();
                };
                // repair clashes by swapping with a random partner
                std::size_t budget = 100 * n;
                bool ok = true;
                for (std::size_t l = 0; l < n; ++l) {
                    while (clashes(l, perm[l])) {
                        if (budget-- == 0) {
                            ok = false;
                            break;
                        }
                        const std::size_t other = rng.below(n);
                        if (!clashes(l, perm[other]) && !clashes(other, perm[l])) {
                            std::swap(perm[l], perm[other]);
                        }
                    }
                    if (!ok) {
                        break;
                    }
                }
                if (ok) {
                    for (std::size_t l = 0; l < n; ++l) {
                        adj[l].push_back(perm[l]);
                    }
                    placed = true;
                }
            }
            require(placed, ErrorKind::ParallelEdgeExhaustion,
                    "could not place matching " + std::to_string(m) + " without parallel edges");
        }
        BipartiteGraph g(n, d, std::move(adj), seed);
        if (g.lambda() <= lambda_target) {
            return g;
        }
    }
    fail(ErrorKind::TargetUnreachable, "no graph with lambda <= " + std::to_string(lambda_target) + " in " +
                                           std::to_string(max_tries) + " tries");
}

struct EmlResult {
    double deviation = 0.0;
    double bound = 0.0;
    bool pass = true;
};

/// |E_{(l,r)~E}[f(l) g(r)] - E[f] E[g]| against (lambda + slack) ||f|| ||g||,
/// norms taken as E[f^2]^{1/2}.
inline EmlResult verify_eml(const BipartiteGraph& G, std::span<const double> f, std::span<const double> g)
{
    require(f.size() == G.n() && g.size() == G.n(), ErrorKind::LengthMismatch, "f and g need one value per vertex");
    const double n = static_cast<double>(G.n());
    // compensated sums; the deviation can be tiny and cancellation matters
    long double edge_sum = 0.0L;
    for (std::size_t l = 0; l < G.n(); ++l) {
        for (std::size_t i = 0; i < G.degree(); ++i) {
            edge_sum += static_cast<long double>(f[l]) * static_cast<long double>(g[G.right_neighbor(l, i)]);
        }
    }
    long double fsum = 0.0L;
    long double gsum = 0.0L;
    long double f2 = 0.0L;
    long double g2 = 0.0L;
    for (std::size_t i = 0; i < G.n(); ++i) {
        fsum += f[i];
        gsum += g[i];
        f2 += static_cast<long double>(f[i]) * f[i];
        g2 += static_cast<long double>(g[i]) * g[i];
    }
    const long double ne = static_cast<long double>(G.edge_count());
    const long double dev = edge_sum / ne - (fsum / n) * (gsum / n);
    EmlResult out;
    out.deviation = static_cast<double>(dev < 0 ? -dev : dev);
    out.bound = (G.lambda() + kLambdaSlack) * std::sqrt(static_cast<double>(f2 / n)) *
                std::sqrt(static_cast<double>(g2 / n));
    out.pass = out.deviation <= out.bound;
    return out;
}

/// Number of edges between left set S and right set T (indicator vectors).
inline std::uint64_t edges_between(const BipartiteGraph& G, const std::vector<bool>& S, const std::vector<bool>& T)
{
    require(S.size() == G.n() && T.size() == G.n(), ErrorKind::LengthMismatch, "indicator sets need length n");
    std::uint64_t count = 0;
    for (std::size_t l = 0; l < G.n(); ++l) {
        if (!S[l]) {
            continue;
        }
        for (std::size_t i = 0; i < G.degree(); ++i) {
            count += T[G.right_neighbor(l, i)] ? 1 : 0;
        }
    }
    return count;
}

/// Set form: |E(S,T) - d|S||T|/n| <= (lambda + slack) d sqrt(|S||T|).
inline EmlResult verify_eml_sets(const BipartiteGraph& G, const std::vector<bool>& S, const std::vector<bool>& T)
{
    const auto e = edges_between(G, S, T);
    const auto s = static_cast<std::int64_t>(std::count(S.begin(), S.end(), true));
    const auto t = static_cast<std::int64_t>(std::count(T.begin(), T.end(), true));
    const auto n = static_cast<std::int64_t>(G.n());
    const auto d = static_cast<std::int64_t>(G.degree());
    // n E(S,T) - d |S||T| is an exact integer
    const std::int64_t scaled = n * static_cast<std::int64_t>(e) - d * s * t;
    EmlResult out;
    out.deviation = static_cast<double>(scaled < 0 ? -scaled : scaled) / static_cast<double>(n);
    out.bound = (G.lambda() + kLambdaSlack) * static_cast<double>(d) * std::sqrt(static_cast<double>(s * t));
    out.pass = out.deviation <= out.bound;
    return out;
}

} // namespace aelcodes

/**************************************************************************
 * config.hpp
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
#include <filesystem>
#include <optional>
#include <string>

#include "ael.hpp"
#include "error.hpp"
#include "expander.hpp"
#include "fraction.hpp"
#include "inner_search.hpp"
#include "io.hpp"
#include "linear_code.hpp"
#include "outer_code.hpp"
#include "plurality.hpp"
#include "rng.hpp"

namespace aelcodes {

struct FieldConfig {
    std::uint32_t p = 2;
    std::uint32_t m = 1;
};

struct InnerConfig {
    /// "random", "reed_solomon" or "folded_rs".
    std::string kind = "random";
    FieldConfig field;
    std::size_t length = 0;
    std::size_t dim = 0;
    std::size_t fold = 1;
    Fraction rate;
    std::size_t k = 2;
    Fraction delta0;
    Fraction eps_target = Fraction(1);
    std::size_t max_tries = 50;

    /// Number of inner codewords, q^(message length).
    std::uint64_t codebook_size() const
    {
        const std::uint64_t q = checked_power(field.p, field.m, kMaxFieldOrder + 1);
        const std::uint64_t msg = kind == "folded_rs" ? (rate * Fraction(static_cast<std::int64_t>(fold * length))).num() : dim;
        return checked_power(q, msg, UINT64_MAX - 1);
    }
};

struct GraphConfig {
    std::size_t n = 0;
    std::size_t d = 0;
    double lambda_target = 1.0;
    bool complete = false;
    std::size_t max_tries = 50;
};

struct OuterConfig {
    FieldConfig field;
    std::size_t n = 0;
    std::size_t k = 0;
};

struct VerifyConfig {
    std::size_t k = 2;
    Fraction delta0;
    Fraction eps;
    std::uint64_t subset_cap = kDefaultSubsetCap;
    std::uint64_t enumeration_cap = kDefaultEnumerationCap;
    std::size_t adversarial_centers = 0;
    std::size_t random_centers = 0;
    std::size_t list_cap = 32;
};

struct ExperimentConfig {
    std::string name = "experiment";
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::optional<InnerConfig> inner;
    std::optional<GraphConfig> graph;
    std::optional<OuterConfig> outer;
    std::optional<VerifyConfig> verify;
    std::size_t decode_trials = 0;
    std::size_t eml_trials = 0;
    std::string output = "out";

    /// Cross-section consistency, checked before anything is built.
    void validate() const
    {
        if (inner) {
            require(inner->kind == "random" || inner->kind == "reed_solomon" || inner->kind == "folded_rs",
                    ErrorKind::ConfigInvalid, "inner.kind must be random, reed_solomon or folded_rs");
            require(inner->length >= 1, ErrorKind::ConfigInvalid, "inner.length must be positive");
            if (inner->kind != "folded_rs") {
                require(inner->dim >= 1 && inner->dim <= inner->length, ErrorKind::ConfigInvalid,
                        "inner.dim must be in [1, length]");
            }
        }
        if (graph) {
            require(graph->n >= 1, ErrorKind::ConfigInvalid, "graph.n must be positive");
            require(graph->complete || (graph->d >= 1 && graph->d <= graph->n), ErrorKind::ConfigInvalid,
                    "graph.d must be in [1, n]");
        }
        if (inner && graph) {
            const std::size_t d = graph->complete ? graph->n : graph->d;
            require(d == inner->length, ErrorKind::ConfigInvalid,
                    "graph degree " + std::to_string(d) + " != inner block length " + std::to_string(inner->length));
        }
        if (graph && outer) {
            require(graph->n == outer->n, ErrorKind::ConfigInvalid, "graph.n != outer.n");
        }
        if (inner && outer) {
            const std::uint64_t q_out = checked_power(outer->field.p, outer->field.m, kMaxFieldOrder + 1);
            require(inner->codebook_size() == q_out, ErrorKind::ConfigInvalid,
                    "outer alphabet size " + std::to_string(q_out) + " != inner codebook size " +
                        std::to_string(inner->codebook_size()));
        }
    }
};

namespace detail {

inline FieldConfig field_config(const io::json& j, const std::string& where)
{
    io::check_keys(j, {"p", "m"}, where);
    return {io::get<std::uint32_t>(j, "p", where), io::get<std::uint32_t>(j, "m", where)};
}

} // namespace detail

inline ExperimentConfig config_from_json(const io::json& j)
{
    io::check_version(j, "config");
    io::check_keys(j, {"version", "name", "seed", "threads", "inner", "graph", "outer", "verify", "trials", "output"},
                   "config");
    ExperimentConfig c;
    c.name = io::get_or<std::string>(j, "name", c.name, "config");
    c.seed = io::get<std::uint64_t>(j, "seed", "config");
    c.threads = io::get_or<unsigned>(j, "threads", 0, "config");
    c.output = io::get_or<std::string>(j, "output", c.output, "config");
    if (j.contains("inner")) {
        const auto& s = j.at("inner");
        const std::string w = "inner";
        io::check_keys(s, {"kind", "field", "length", "dim", "fold", "rate", "k", "delta0", "eps_target", "max_tries"},
                       w);
        InnerConfig in;
        in.kind = io::get_or<std::string>(s, "kind", in.kind, w);
        in.field = detail::field_config(io::get<io::json>(s, "field", w), "inner.field");
        in.length = io::get<std::size_t>(s, "length", w);
        in.dim = io::get_or<std::size_t>(s, "dim", 0, w);
        in.fold = io::get_or<std::size_t>(s, "fold", 1, w);
        if (s.contains("rate")) {
            in.rate = io::get_fraction(s, "rate", w);
        }
        in.k = io::get_or<std::size_t>(s, "k", in.k, w);
        if (s.contains("delta0")) {
            in.delta0 = io::get_fraction(s, "delta0", w);
        }
        if (s.contains("eps_target")) {
            in.eps_target = io::get_fraction(s, "eps_target", w);
        }
        in.max_tries = io::get_or<std::size_t>(s, "max_tries", in.max_tries, w);
        c.inner = in;
    }
    if (j.contains("graph")) {
        const auto& s = j.at("graph");
        const std::string w = "graph";
        io::check_keys(s, {"n", "d", "lambda_target", "complete", "max_tries"}, w);
        GraphConfig g;
        g.n = io::get<std::size_t>(s, "n", w);
        g.complete = io::get_or<bool>(s, "complete", false, w);
        g.d = g.complete ? g.n : io::get<std::size_t>(s, "d", w);
        g.lambda_target = io::get_or<double>(s, "lambda_target", g.lambda_target, w);
        g.max_tries = io::get_or<std::size_t>(s, "max_tries", g.max_tries, w);
        c.graph = g;
    }
    if (j.contains("outer")) {
        const auto& s = j.at("outer");
        const std::string w = "outer";
        io::check_keys(s, {"field", "n", "k"}, w);
        OuterConfig o;
        o.field = detail::field_config(io::get<io::json>(s, "field", w), "outer.field");
        o.n = io::get<std::size_t>(s, "n", w);
        o.k = io::get<std::size_t>(s, "k", w);
        c.outer = o;
    }
    if (j.contains("verify")) {
        const auto& s = j.at("verify");
        const std::string w = "verify";
        io::check_keys(s,
                       {"k", "delta0", "eps", "subset_cap", "enumeration_cap", "adversarial_centers",
                        "random_centers", "list_cap"},
                       w);
        VerifyConfig v;
        v.k = io::get<std::size_t>(s, "k", w);
        v.delta0 = io::get_fraction(s, "delta0", w);
        v.eps = io::get_fraction(s, "eps", w);
        v.subset_cap = io::get_or<std::uint64_t>(s, "subset_cap", v.subset_cap, w);
        v.enumeration_cap = io::get_or<std::uint64_t>(s, "enumeration_cap", v.enumeration_cap, w);
        v.adversarial_centers = io::get_or<std::size_t>(s, "adversarial_centers", 0, w);
        v.random_centers = io::get_or<std::size_t>(s, "random_centers", 0, w);
        v.list_cap = io::get_or<std::size_t>(s, "list_cap", v.list_cap, w);
        c.verify = v;
    }
    if (j.contains("trials")) {
        const auto& s = j.at("trials");
        io::check_keys(s, {"decode", "eml"}, "trials");
        c.decode_trials = io::get_or<std::size_t>(s, "decode", 0, "trials");
        c.eml_trials = io::get_or<std::size_t>(s, "eml", 0, "trials");
    }
    c.validate();
    return c;
}

inline ExperimentConfig load_config(const std::filesystem::path& path) { return config_from_json(io::read_json(path)); }

struct BuiltInner {
    LinearCode code;
    /// Present when the code came out of a certified search.
    std::optional<ArldCertificate> certificate;
    std::optional<FoldedRSCode> frs;
    std::size_t tries = 0;
};

/// Builds the inner code; random codes draw from derive_seed(seed, "inner").
inline BuiltInner build_inner(const InnerConfig& c, std::uint64_t root_seed, const ScanOptions& opts = {})
{
    const Field f = Field::make(c.field.p, c.field.m);
    if (c.kind == "random") {
        auto res = search_inner_code(f, c.length, c.dim, c.k, c.delta0, c.eps_target, derive_seed(root_seed, "inner"),
                                     c.max_tries, opts);
        return {std::move(res.code), std::move(res.certificate), std::nullopt, res.tries};
    }
    if (c.kind == "reed_solomon") {
        return {make_reed_solomon(f, c.length, c.dim).code(), std::nullopt, std::nullopt, 0};
    }
    auto frs = make_folded_rs(f, c.fold, c.length, c.rate);
    return {frs_as_linear_code(frs), std::nullopt, frs, 0};
}

/// Builds the graph; random graphs draw from derive_seed(seed, "graph").
inline BipartiteGraph build_graph(const GraphConfig& c, std::uint64_t root_seed)
{
    if (c.complete) {
        return BipartiteGraph::complete(c.n);
    }
    return random_regular_bipartite(c.n, c.d, derive_seed(root_seed, "graph"), c.lambda_target, c.max_tries);
}

inline RSOuterCode build_outer(const OuterConfig& c)
{
    return make_reed_solomon(Field::make(c.field.p, c.field.m), c.n, c.k);
}

} // namespace aelcodes

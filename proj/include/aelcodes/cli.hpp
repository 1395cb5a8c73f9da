/**************************************************************************
 * cli.hpp
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
#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "ael.hpp"
#include "config.hpp"
#include "dist_decoder.hpp"
#include "error.hpp"
#include "expander.hpp"
#include "inner_search.hpp"
#include "io.hpp"
#include "list_verify.hpp"
#include "outer_code.hpp"
#include "rng.hpp"

namespace aelcodes {

inline constexpr int kExitPass = 0;
inline constexpr int kExitAssertion = 1;
inline constexpr int kExitConfig = 2;

namespace cli_detail {

namespace fs = std::filesystem;
using io::json;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const
    {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
};

inline std::string join(const Word& w)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < w.size(); ++i) {
        os << (i ? " " : "") << w[i];
    }
    return os.str();
}

inline std::string join(const ErasedWord& w)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < w.length(); ++i) {
        os << (i ? " " : "");
        if (w.symbols[i]) {
            os << *w.symbols[i];
        } else {
            os << '_';
        }
    }
    return os.str();
}

inline std::vector<std::uint64_t> parse_list(const std::string& text)
{
    std::vector<std::uint64_t> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
        if (item.empty()) {
            continue;
        }
        try {
            std::size_t used = 0;
            out.push_back(std::stoull(item, &used));
            require(used == item.size(), ErrorKind::ConfigInvalid, "not an integer: " + item);
        } catch (const std::logic_error&) {
            fail(ErrorKind::ConfigInvalid, "not an integer: " + item);
        }
    }
    return out;
}

inline Fraction parse_fraction(const std::string& text, const std::string& flag)
{
    try {
        return Fraction::parse(text);
    } catch (const Error& e) {
        fail(ErrorKind::ConfigInvalid, flag + ": " + e.what());
    }
}

inline unsigned resolve_threads(unsigned requested)
{
    if (requested != 0) {
        return requested;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Writes graph, inner, outer and the bundle into `dir`; returns the bundle path.
inline fs::path write_bundle(const fs::path& dir, const BipartiteGraph& g, const LinearCode& inner,
                             const RSOuterCode& outer, const std::vector<std::uint64_t>& phi)
{
    io::write_json(dir / "graph.json", io::to_json(g));
    io::write_json(dir / "inner.json", io::to_json(inner));
    io::write_json(dir / "outer.json", io::to_json(outer));
    io::write_json(dir / "ael.json", io::ael_bundle("graph.json", "inner.json", "outer.json", phi));
    return dir / "ael.json";
}

struct Context {
    std::ostream& out;
    std::ostream& err;
    unsigned threads = 0;
    std::optional<std::uint64_t> seed_override;

    ScanOptions scan(std::uint64_t cap = kDefaultSubsetCap) const { return {resolve_threads(threads), cap}; }
};

inline ExperimentConfig config_or_fail(const std::string& path)
{
    require(!path.empty(), ErrorKind::ConfigInvalid, "--config is required");
    return load_config(path);
}

inline std::uint64_t root_seed(const Context& ctx, const ExperimentConfig& cfg)
{
    return ctx.seed_override ? *ctx.seed_override : cfg.seed;
}

/// AEL code from --ael or, failing that, built from --config.
inline AelCode ael_from(const Context& ctx, const std::string& bundle, const std::string& config)
{
    if (!bundle.empty()) {
        return io::load_ael(bundle);
    }
    const auto cfg = config_or_fail(config);
    require(cfg.inner && cfg.graph && cfg.outer, ErrorKind::ConfigInvalid,
            "config needs inner, graph and outer sections to build an AEL code");
    const auto seed = root_seed(ctx, cfg);
    auto inner = build_inner(*cfg.inner, seed, ctx.scan());
    return {build_graph(*cfg.graph, seed), std::move(inner.code), build_outer(*cfg.outer)};
}

inline int finish(const Context& ctx, const std::string& what, bool pass)
{
    ctx.out << what << ": " << (pass ? "PASS" : "FAIL") << "\n";
    return pass ? kExitPass : kExitAssertion;
}

} // namespace cli_detail

/// Entry point shared by the executable and the tests.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    using namespace cli_detail;
    CLI::App app{"Build AEL-amplified codes and verify average-radius list decoding bounds"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");
    Context ctx{out, err, 0, std::nullopt};
    std::uint64_t seed_flag = 0;
    app.add_option("--threads", ctx.threads, "Worker threads for subset scans (0 = all cores)");
    auto* seed_opt = app.add_option("--seed", seed_flag, "Override the root seed of a config");

    std::string config;
    std::string out_path;
    std::string code_path;
    std::string graph_path;
    std::string inner_path;
    std::string outer_path;
    std::string ael_path;
    std::string word_path;
    std::string cert_path;
    std::string k_text;
    std::string delta0_text;
    std::string eps_text;
    std::uint32_t p = 2;
    std::uint32_t m = 1;
    std::size_t n = 0;
    std::size_t d = 0;
    std::size_t dim = 0;
    std::size_t fold = 1;
    std::string rate_text;
    std::string alphas_text;
    std::string points_text;
    std::string message_text;
    std::string radius_text;
    std::string results_dir;
    double lambda_target = 1.0;
    bool complete = false;
    std::size_t max_tries = 50;
    std::size_t errors = 0;
    std::size_t erasures = 0;
    std::size_t trials = 1000;
    std::size_t centers_adv = 0;
    std::size_t centers_rand = 0;
    std::uint64_t seed = 0;
    std::uint64_t subset_cap = kDefaultSubsetCap;

    std::function<int()> action;

    // build-inner
    auto* build_inner_cmd = app.add_subcommand("build-inner", "Search for a certified random inner code");
    build_inner_cmd->add_option("--config", config, "Experiment config")->required();
    build_inner_cmd->add_option("--out", out_path, "Output directory (default: config output)");
    build_inner_cmd->callback([&] {
        action = [&] {
            const auto cfg = config_or_fail(config);
            require(cfg.inner.has_value(), ErrorKind::ConfigInvalid, "config has no inner section");
            const fs::path dir = out_path.empty() ? fs::path(cfg.output) : fs::path(out_path);
            Timer t;
            auto built = build_inner(*cfg.inner, root_seed(ctx, cfg), ctx.scan());
            io::write_json(dir / "inner.json", io::to_json(built.code));
            if (built.certificate) {
                built.certificate->runtime_ms = t.ms();
                io::write_json(dir / "inner_cert.json", io::to_json(*built.certificate));
                out << "eps_min " << built.certificate->eps_min << " after " << built.tries << " tries\n";
            }
            out << "wrote " << (dir / "inner.json").string() << "\n";
            return kExitPass;
        };
    });

    // verify-inner
    auto* verify_inner_cmd = app.add_subcommand("verify-inner", "Certify an inner code exactly");
    verify_inner_cmd->add_option("--config", config, "Experiment config (builds the inner code)");
    verify_inner_cmd->add_option("--code", code_path, "Code file to certify instead of building one");
    verify_inner_cmd->add_option("--k", k_text, "Largest tuple size");
    verify_inner_cmd->add_option("--delta0", delta0_text, "Distance parameter, e.g. 2/3");
    verify_inner_cmd->add_option("--eps", eps_text, "Pass iff eps_min <= eps");
    verify_inner_cmd->add_option("--out", out_path, "Certificate file (default: <output>/inner_cert.json)");
    verify_inner_cmd->add_option("--subset-cap", subset_cap, "Maximum number of tuples to enumerate");
    verify_inner_cmd->callback([&] {
        action = [&] {
            std::optional<ExperimentConfig> cfg;
            if (!config.empty()) {
                cfg = load_config(config);
                require(cfg->inner.has_value(), ErrorKind::ConfigInvalid, "config has no inner section");
            }
            require(cfg || !code_path.empty(), ErrorKind::ConfigInvalid, "give --config or --code");
            const std::size_t kk = !k_text.empty() ? std::stoul(k_text) : (cfg ? cfg->inner->k : 0);
            require(kk >= 1, ErrorKind::ConfigInvalid, "--k is required");
            require(!delta0_text.empty() || cfg, ErrorKind::ConfigInvalid, "--delta0 is required");
            const Fraction delta0 = !delta0_text.empty() ? parse_fraction(delta0_text, "--delta0") : cfg->inner->delta0;
            std::optional<Fraction> eps;
            if (!eps_text.empty()) {
                eps = parse_fraction(eps_text, "--eps");
            } else if (cfg) {
                eps = cfg->inner->eps_target;
            }
            Timer t;
            LinearCode code = !code_path.empty() ? io::linear_code_from_json(io::read_json(code_path))
                                                 : build_inner(*cfg->inner, root_seed(ctx, *cfg), ctx.scan()).code;
            auto cert = min_arld_slack(code, kk, delta0, ctx.scan(subset_cap));
            cert.runtime_ms = t.ms();
            const fs::path dest = !out_path.empty() ? fs::path(out_path)
                                                    : fs::path(cfg ? cfg->output : ".") / "inner_cert.json";
            io::write_json(dest, io::to_json(cert));
            out << "eps_min " << cert.eps_min << " (" << cert.subsets_examined << " tuples)\n";
            const bool pass = !eps || cert.eps_min <= *eps;
            return finish(ctx, "verify-inner", pass);
        };
    });

    // build-frs
    auto* frs_cmd = app.add_subcommand("build-frs", "Build a folded Reed-Solomon code");
    frs_cmd->add_option("--p", p, "Field characteristic")->required();
    frs_cmd->add_option("--m", m, "Extension degree")->default_val(1);
    frs_cmd->add_option("--fold", fold, "Folding parameter b")->required();
    frs_cmd->add_option("--length", n, "Folded block length")->required();
    frs_cmd->add_option("--rate", rate_text, "Rate, e.g. 1/4")->required();
    frs_cmd->add_option("--alphas", alphas_text, "Comma-separated evaluation bases (default gamma^(jb))");
    frs_cmd->add_option("--out", out_path, "Code file")->required();
    frs_cmd->callback([&] {
        action = [&] {
            const Field f = Field::make(p, m);
            std::optional<std::vector<Elem>> alphas;
            if (!alphas_text.empty()) {
                alphas.emplace();
                for (auto a : parse_list(alphas_text)) {
                    alphas->push_back(static_cast<Elem>(a));
                }
            }
            const auto frs = make_folded_rs(f, fold, n, parse_fraction(rate_text, "--rate"), alphas);
            io::write_json(out_path, io::to_json(frs));
            const auto code = frs_as_linear_code(frs);
            out << "FRS over " << f.name() << ": " << code.size_capped(UINT64_MAX - 1) << " codewords, min distance "
                << min_distance(code) << "\n";
            return kExitPass;
        };
    });

    // build-graph
    auto* graph_cmd = app.add_subcommand("build-graph", "Build a d-regular bipartite expander");
    graph_cmd->add_option("--config", config, "Experiment config");
    graph_cmd->add_option("--n", n, "Vertices per side");
    graph_cmd->add_option("--d", d, "Degree");
    graph_cmd->add_option("--graph-seed", seed, "Generator seed");
    graph_cmd->add_option("--lambda-target", lambda_target, "Accept only graphs with lambda <= target");
    graph_cmd->add_flag("--complete", complete, "Complete bipartite graph K_{n,n}");
    graph_cmd->add_option("--max-tries", max_tries, "Generation attempts");
    graph_cmd->add_option("--out", out_path, "Graph file");
    graph_cmd->callback([&] {
        action = [&] {
            BipartiteGraph g = [&] {
                if (!config.empty()) {
                    const auto cfg = load_config(config);
                    require(cfg.graph.has_value(), ErrorKind::ConfigInvalid, "config has no graph section");
                    if (out_path.empty()) {
                        out_path = (fs::path(cfg.output) / "graph.json").string();
                    }
                    return build_graph(*cfg.graph, root_seed(ctx, cfg));
                }
                require(n >= 1, ErrorKind::ConfigInvalid, "--n is required");
                if (complete) {
                    return BipartiteGraph::complete(n);
                }
                return random_regular_bipartite(n, d, seed, lambda_target, max_tries);
            }();
            require(!out_path.empty(), ErrorKind::ConfigInvalid, "--out is required");
            io::write_json(out_path, io::to_json(g));
            out << "graph n=" << g.n() << " d=" << g.degree() << " lambda=" << g.lambda() << "\n";
            return kExitPass;
        };
    });

    // build-outer
    auto* outer_cmd = app.add_subcommand("build-outer", "Build a Reed-Solomon outer code");
    outer_cmd->add_option("--config", config, "Experiment config");
    outer_cmd->add_option("--p", p, "Field characteristic");
    outer_cmd->add_option("--m", m, "Extension degree");
    outer_cmd->add_option("--n", n, "Block length");
    outer_cmd->add_option("--k", dim, "Dimension");
    outer_cmd->add_option("--points", points_text, "Comma-separated evaluation points (default 0..n-1)");
    outer_cmd->add_option("--out", out_path, "Code file");
    outer_cmd->callback([&] {
        action = [&] {
            RSOuterCode code = [&] {
                if (!config.empty()) {
                    const auto cfg = load_config(config);
                    require(cfg.outer.has_value(), ErrorKind::ConfigInvalid, "config has no outer section");
                    if (out_path.empty()) {
                        out_path = (fs::path(cfg.output) / "outer.json").string();
                    }
                    return build_outer(*cfg.outer);
                }
                std::optional<std::vector<Elem>> pts;
                if (!points_text.empty()) {
                    pts.emplace();
                    for (auto a : parse_list(points_text)) {
                        pts->push_back(static_cast<Elem>(a));
                    }
                }
                return make_reed_solomon(Field::make(p, m), n, dim, pts);
            }();
            require(!out_path.empty(), ErrorKind::ConfigInvalid, "--out is required");
            io::write_json(out_path, io::to_json(code));
            out << "RS[" << code.length() << "," << code.dimension() << "] over " << code.field().name()
                << ", decoding radius " << code.decoding_radius() << "\n";
            return kExitPass;
        };
    });

    // build-ael
    auto* ael_cmd = app.add_subcommand("build-ael", "Assemble an AEL bundle");
    ael_cmd->add_option("--config", config, "Experiment config (builds every component)");
    ael_cmd->add_option("--graph", graph_path, "Graph file");
    ael_cmd->add_option("--inner", inner_path, "Inner code file");
    ael_cmd->add_option("--outer", outer_path, "Outer code file");
    ael_cmd->add_option("--out", out_path, "Bundle file, or output directory with --config");
    ael_cmd->callback([&] {
        action = [&] {
            if (!config.empty()) {
                const auto cfg = load_config(config);
                require(cfg.inner && cfg.graph && cfg.outer, ErrorKind::ConfigInvalid,
                        "config needs inner, graph and outer sections");
                const fs::path dir = out_path.empty() ? fs::path(cfg.output) : fs::path(out_path);
                const auto seed_root = root_seed(ctx, cfg);
                Timer t;
                auto inner = build_inner(*cfg.inner, seed_root, ctx.scan());
                AelCode code(build_graph(*cfg.graph, seed_root), inner.code, build_outer(*cfg.outer));
                const auto bundle = write_bundle(dir, code.graph(), code.inner(), code.outer(), code.phi());
                if (inner.certificate) {
                    inner.certificate->runtime_ms = t.ms();
                    io::write_json(dir / "inner_cert.json", io::to_json(*inner.certificate));
                }
                out << "wrote " << bundle.string() << ", rate " << ael_rate(code) << ", lambda "
                    << code.graph().lambda() << "\n";
                return kExitPass;
            }
            require(!graph_path.empty() && !inner_path.empty() && !outer_path.empty() && !out_path.empty(),
                    ErrorKind::ConfigInvalid, "give --config, or --graph, --inner, --outer and --out");
            AelCode code(io::graph_from_json(io::read_json(graph_path)),
                         io::linear_code_from_json(io::read_json(inner_path)),
                         io::rs_code_from_json(io::read_json(outer_path)));
            const fs::path bundle(out_path);
            const auto base = bundle.has_parent_path() ? bundle.parent_path() : fs::path(".");
            auto rel = [&](const std::string& f) { return fs::relative(fs::absolute(f), fs::absolute(base)).string(); };
            io::write_json(bundle, io::ael_bundle(rel(graph_path), rel(inner_path), rel(outer_path), code.phi()));
            out << "wrote " << bundle.string() << ", rate " << ael_rate(code) << "\n";
            return kExitPass;
        };
    });

    // encode
    auto* encode_cmd = app.add_subcommand("encode", "Encode an outer message into an AEL codeword");
    encode_cmd->add_option("--ael", ael_path, "AEL bundle")->required();
    encode_cmd->add_option("--message", message_text, "Comma-separated outer message symbols")->required();
    encode_cmd->add_option("--out", out_path, "Word file");
    encode_cmd->callback([&] {
        action = [&] {
            const auto code = io::load_ael(ael_path);
            std::vector<Elem> msg;
            for (auto v : parse_list(message_text)) {
                msg.push_back(static_cast<Elem>(v));
            }
            const auto word = code.encode_message(msg);
            if (!out_path.empty()) {
                io::write_json(out_path, io::word_to_json(word, code.alphabet_size()));
            }
            out << join(word) << "\n";
            return kExitPass;
        };
    });

    // corrupt
    auto* corrupt_cmd = app.add_subcommand("corrupt", "Corrupt a word with random errors and erasures");
    corrupt_cmd->add_option("--ael", ael_path, "AEL bundle")->required();
    corrupt_cmd->add_option("--word", word_path, "Word file")->required();
    corrupt_cmd->add_option("--errors", errors, "Number of right vertices to change");
    corrupt_cmd->add_option("--erasures", erasures, "Number of right vertices to erase");
    corrupt_cmd->add_option("--corrupt-seed", seed, "Seed");
    corrupt_cmd->add_option("--out", out_path, "Output word file")->required();
    corrupt_cmd->callback([&] {
        action = [&] {
            const auto code = io::load_ael(ael_path);
            auto word = io::word_from_json(io::read_json(word_path));
            require(word.length() == code.n(), ErrorKind::LengthMismatch, "word length does not match the code");
            require(errors + erasures <= code.n(), ErrorKind::ConfigInvalid, "more corruptions than positions");
            Rng rng(derive_seed(seed, "corrupt"));
            const auto order = rng.permutation(code.n());
            const std::uint64_t q = code.alphabet_size();
            for (std::size_t i = 0; i < errors; ++i) {
                auto& s = word.symbols[order[i]];
                const Symbol old = s.value_or(0);
                s = (old + 1 + rng.below(q - 1)) % q;
            }
            for (std::size_t i = errors; i < errors + erasures; ++i) {
                word.symbols[order[i]] = std::nullopt;
            }
            io::write_json(out_path, io::word_to_json(word, q));
            out << join(word) << "\n";
            return kExitPass;
        };
    });

    // decode
    auto* decode_cmd = app.add_subcommand("decode", "Unique-decode a received word");
    decode_cmd->add_option("--ael", ael_path, "AEL bundle")->required();
    decode_cmd->add_option("--word", word_path, "Received word file")->required();
    decode_cmd->add_option("--out", out_path, "Decoding report");
    decode_cmd->callback([&] {
        action = [&] {
            Timer t;
            const auto code = io::load_ael(ael_path);
            const auto received = io::word_from_json(io::read_json(word_path));
            require(received.length() == code.n(), ErrorKind::LengthMismatch, "word length does not match the code");
            // erased symbols enter the local decoder as zeros
            Word g(code.n());
            for (std::size_t i = 0; i < code.n(); ++i) {
                g[i] = received.symbols[i].value_or(0);
            }
            const auto res = ael_unique_decode(code, g);
            for (const auto& w : res.warnings) {
                err << "warning: " << w << "\n";
            }
            json details = {{"thresholds_tried", res.thresholds_tried}, {"decoded", res.ok()}};
            std::vector<io::Check> checks;
            if (res.ok()) {
                details["codeword"] = *res.codeword;
                details["outer_codeword"] = *res.outer_codeword;
                details["distance"] = res.distance->to_string();
                details["theta"] = res.theta->to_string();
                checks.push_back(io::at_most(ael_path, "expected disagreement", *res.expected_disagreement,
                                             code.outer().decoding_radius()));
                out << join(*res.codeword) << "\n" << "distance " << *res.distance << "\n";
            } else {
                checks.push_back({ael_path, "decoded", "fail", "success", "", false});
                out << "Fail\n";
            }
            if (!out_path.empty()) {
                io::write_json(out_path, io::report_json("decode", checks, details, t.ms()));
            }
            return finish(ctx, "decode", res.ok());
        };
    });

    // list-decode
    auto* list_cmd = app.add_subcommand("list-decode", "Brute-force list around a (possibly erased) word");
    list_cmd->add_option("--ael", ael_path, "AEL bundle")->required();
    list_cmd->add_option("--word", word_path, "Center word file")->required();
    list_cmd->add_option("--radius", radius_text, "List radius, e.g. 1/3")->required();
    list_cmd->add_option("--out", out_path, "List file");
    list_cmd->callback([&] {
        action = [&] {
            const auto code = io::load_ael(ael_path);
            const auto g = io::word_from_json(io::read_json(word_path));
            const Fraction beta = parse_fraction(radius_text, "--radius");
            const auto book = code.enumerate();
            const auto list = brute_force_list(book, g, beta);
            json entries = json::array();
            for (auto i : list) {
                const auto dist = dist_with_erasures(g, book.words[i]);
                entries.push_back({{"index", i}, {"distance", dist.to_string()}, {"codeword", book.words[i]}});
                out << i << " " << dist << "\n";
            }
            if (!out_path.empty()) {
                io::write_json(out_path, {{"version", io::kFormatVersion},
                                          {"radius", beta.to_string()},
                                          {"erasure_fraction", g.erasure_fraction().to_string()},
                                          {"list", entries}});
            }
            out << list.size() << " codewords within " << beta << "\n";
            return kExitPass;
        };
    });

    // verify-singleton
    auto* singleton_cmd = app.add_subcommand("verify-singleton", "Exact average-radius check over all tuples");
    singleton_cmd->add_option("--ael", ael_path, "AEL bundle");
    singleton_cmd->add_option("--config", config, "Experiment config (builds the code; supplies k, delta0, eps)");
    singleton_cmd->add_option("--k", k_text, "Largest tuple size");
    singleton_cmd->add_option("--delta0", delta0_text, "Distance parameter");
    singleton_cmd->add_option("--eps", eps_text, "Slack parameter");
    singleton_cmd->add_option("--inner-cert", cert_path, "Inner certificate for the hypothesis check");
    singleton_cmd->add_option("--adversarial-centers", centers_adv, "Plurality centers for the common-error check");
    singleton_cmd->add_option("--random-centers", centers_rand, "Random centers for the common-error check");
    singleton_cmd->add_option("--subset-cap", subset_cap, "Maximum number of tuples to enumerate");
    singleton_cmd->add_option("--out", out_path, "Verification report");
    singleton_cmd->callback([&] {
        action = [&] {
            Timer t;
            std::optional<ExperimentConfig> cfg;
            if (!config.empty()) {
                cfg = load_config(config);
            }
            const auto code = ael_from(ctx, ael_path, config);
            const bool have_verify = cfg && cfg->verify;
            require(!k_text.empty() || have_verify, ErrorKind::ConfigInvalid, "--k is required");
            require(!delta0_text.empty() || have_verify, ErrorKind::ConfigInvalid, "--delta0 is required");
            require(!eps_text.empty() || have_verify, ErrorKind::ConfigInvalid, "--eps is required");
            const std::size_t kk = !k_text.empty() ? std::stoul(k_text) : cfg->verify->k;
            const Fraction delta0 = !delta0_text.empty() ? parse_fraction(delta0_text, "--delta0") : cfg->verify->delta0;
            const Fraction eps = !eps_text.empty() ? parse_fraction(eps_text, "--eps") : cfg->verify->eps;
            const std::uint64_t cap = have_verify && subset_cap == kDefaultSubsetCap ? cfg->verify->subset_cap : subset_cap;
            const std::size_t adv = centers_adv != 0 ? centers_adv : (have_verify ? cfg->verify->adversarial_centers : 0);
            const std::size_t rnd = centers_rand != 0 ? centers_rand : (have_verify ? cfg->verify->random_centers : 0);
            const std::size_t list_cap = have_verify ? cfg->verify->list_cap : 32;

            const ArldCertificate inner_cert = !cert_path.empty()
                                                   ? io::certificate_from_json(io::read_json(cert_path))
                                                   : min_arld_slack(code.inner(), kk, delta0, ctx.scan(cap));
            const auto book = code.enumerate();
            const auto rep = verify_generalized_singleton(code, book, kk, delta0, eps, ctx.scan(cap), inner_cert);

            const std::string inst = cfg ? cfg->name : fs::path(ael_path).stem().string();
            std::vector<io::Check> checks;
            const auto nn = static_cast<std::int64_t>(code.n());
            for (std::size_t i = 0; i < rep.min_slack_by_size.size(); ++i) {
                const std::size_t size = i + 2;
                const Fraction bound = Fraction(static_cast<std::int64_t>(size - 1)) * (delta0 - eps);
                const Fraction value(static_cast<std::int64_t>(rep.certificate.min_total_by_size[i]), nn);
                checks.push_back(io::at_least(inst, "min sum Delta_R, |H|=" + std::to_string(size), value, bound));
            }
            json details = {{"k", kk},
                            {"delta0", delta0.to_string()},
                            {"eps", eps.to_string()},
                            {"eps_min", rep.certificate.eps_min.to_string()},
                            {"eps_worst", rep.certificate.eps_worst.to_string()},
                            {"witness", rep.certificate.witness},
                            {"witness_center", rep.certificate.witness_center},
                            {"subsets_examined", rep.certificate.subsets_examined},
                            {"lambda_bound", rep.hypotheses.lambda_bound.to_string()},
                            {"lambda_required", rep.hypotheses.lambda_required.to_string()},
                            {"inner_eps", inner_cert.eps_min.to_string()},
                            {"theorem", rep.theorem_status()}};
            out << "eps_min " << rep.certificate.eps_min << " over " << rep.certificate.subsets_examined
                << " tuples; theorem " << rep.theorem_status() << "\n";
            if (!rep.pass && !rep.certificate.witness.empty()) {
                out << "witness H = {";
                for (std::size_t i = 0; i < rep.certificate.witness.size(); ++i) {
                    out << (i ? ", " : "") << rep.certificate.witness[i];
                }
                out << "}, center " << join(rep.certificate.witness_center) << "\n";
            }
            if (rep.pass && adv + rnd > 0) {
                const auto centers =
                    generate_centers(book, kk, adv, rnd, derive_seed(cfg ? root_seed(ctx, *cfg) : seed_flag, "centers"));
                const auto ce = verify_common_error_bound(book, rep, centers, Fraction(1), list_cap);
                checks.push_back({inst, "common-error violations", std::to_string(ce.violations), "0",
                                  ce.min_margin.to_string(), ce.violations == 0});
                checks.push_back({inst, "max codewords in open ball", std::to_string(ce.max_ball_size),
                                  std::to_string(kk - 1), std::to_string(static_cast<long long>(kk - 1) -
                                                                         static_cast<long long>(ce.max_ball_size)),
                                  ce.ball_violations == 0});
                details["common_error_tuples"] = ce.tuples_checked;
                details["centers"] = centers.size();
                out << "common-error bound: " << ce.tuples_checked << " tuples, " << ce.violations << " violations\n";
            }
            bool pass = true;
            for (const auto& c : checks) {
                pass = pass && c.pass;
            }
            const fs::path dest = !out_path.empty() ? fs::path(out_path)
                                                    : fs::path(cfg ? cfg->output : ".") / "singleton_report.json";
            io::write_json(dest, io::report_json("verify-singleton", checks, details, t.ms()));
            return finish(ctx, "verify-singleton", pass);
        };
    });

    // verify-amplification
    auto* amp_cmd = app.add_subcommand("verify-amplification", "Pairwise distance amplification check");
    amp_cmd->add_option("--ael", ael_path, "AEL bundle");
    amp_cmd->add_option("--config", config, "Experiment config (builds the code)");
    amp_cmd->add_option("--out", out_path, "Verification report");
    amp_cmd->callback([&] {
        action = [&] {
            Timer t;
            const auto code = ael_from(ctx, ael_path, config);
            const auto rep = verify_distance_amplification(code);
            const std::string inst = !config.empty() ? load_config(config).name : fs::path(ael_path).stem().string();
            std::vector<io::Check> checks;
            checks.push_back(io::at_least(inst, "min pair margin", rep.min_pair_margin, Fraction(0)));
            checks.push_back({inst, "pair violations", std::to_string(rep.pair_violations), "0", "",
                              rep.pair_violations == 0});
            if (!rep.global_vacuous) {
                checks.push_back(io::at_least(inst, "min Delta_R vs global bound", rep.min_delta_R, rep.global_bound));
            }
            checks.push_back({inst, "counting violations", std::to_string(rep.counting_violations), "0", "",
                              rep.counting_violations == 0});
            checks.push_back(
                {inst, "EML violations", std::to_string(rep.eml_violations), "0", "", rep.eml_violations == 0});
            json details = {{"pairs", rep.pairs_checked},
                            {"delta_in", rep.delta_in.to_string()},
                            {"delta_out", rep.delta_out.to_string()},
                            {"lambda", code.graph().lambda()},
                            {"global_bound", rep.global_bound.to_string()},
                            {"global_vacuous", rep.global_vacuous},
                            {"min_delta_R", rep.min_delta_R.to_string()},
                            {"min_delta_L", rep.min_delta_L.to_string()}};
            out << rep.pairs_checked << " pairs, min Delta_R " << rep.min_delta_R << ", global bound "
                << rep.global_bound << (rep.global_vacuous ? " (vacuous)" : "") << "\n";
            if (!out_path.empty()) {
                io::write_json(out_path, io::report_json("verify-amplification", checks, details, t.ms()));
            }
            return finish(ctx, "verify-amplification", rep.pass());
        };
    });

    // verify-eml
    auto* eml_cmd = app.add_subcommand("verify-eml", "Expander mixing lemma on random vectors and sets");
    eml_cmd->add_option("--graph", graph_path, "Graph file");
    eml_cmd->add_option("--config", config, "Experiment config (builds the graph)");
    eml_cmd->add_option("--trials", trials, "Pairs per form");
    eml_cmd->add_option("--trial-seed", seed, "Seed for the random vectors");
    eml_cmd->add_option("--out", out_path, "Verification report");
    eml_cmd->callback([&] {
        action = [&] {
            Timer t;
            std::string inst = fs::path(graph_path).stem().string();
            std::uint64_t trial_seed = seed;
            BipartiteGraph g = [&] {
                if (!graph_path.empty()) {
                    return io::graph_from_json(io::read_json(graph_path));
                }
                const auto cfg = config_or_fail(config);
                require(cfg.graph.has_value(), ErrorKind::ConfigInvalid, "config has no graph section");
                inst = cfg.name;
                trial_seed = derive_seed(root_seed(ctx, cfg), "eml");
                return build_graph(*cfg.graph, root_seed(ctx, cfg));
            }();
            Rng rng(trial_seed);
            std::size_t real_fail = 0;
            std::size_t set_fail = 0;
            double worst_ratio = 0.0;
            std::vector<double> f(g.n());
            std::vector<double> h(g.n());
            std::vector<bool> S(g.n());
            std::vector<bool> T(g.n());
            for (std::size_t i = 0; i < trials; ++i) {
                for (std::size_t v = 0; v < g.n(); ++v) {
                    f[v] = rng.uniform(-1.0, 1.0);
                    h[v] = rng.uniform(-1.0, 1.0);
                }
                const auto r = verify_eml(g, f, h);
                real_fail += r.pass ? 0 : 1;
                if (r.bound > 0) {
                    worst_ratio = std::max(worst_ratio, r.deviation / r.bound);
                }
                for (std::size_t v = 0; v < g.n(); ++v) {
                    S[v] = rng.coin();
                    T[v] = rng.coin();
                }
                set_fail += verify_eml_sets(g, S, T).pass ? 0 : 1;
            }
            std::vector<io::Check> checks = {
                {inst, "real-valued EML failures", std::to_string(real_fail), "0", "", real_fail == 0},
                {inst, "set EML failures", std::to_string(set_fail), "0", "", set_fail == 0}};
            json details = {{"n", g.n()}, {"d", g.degree()}, {"lambda", g.lambda()}, {"trials", trials}};
            out << "lambda " << g.lambda() << ", " << trials << " trials, worst deviation/bound " << worst_ratio << "\n";
            if (!out_path.empty()) {
                io::write_json(out_path, io::report_json("verify-eml", checks, details, t.ms()));
            }
            return finish(ctx, "verify-eml", real_fail == 0 && set_fail == 0);
        };
    });

    // report
    auto* report_cmd = app.add_subcommand("report", "Collect verification reports into one CSV table");
    report_cmd->add_option("--results", results_dir, "Directory searched recursively for reports")->required();
    report_cmd->add_option("--out", out_path, "CSV file (default: stdout)");
    report_cmd->callback([&] {
        action = [&] {
            require(fs::is_directory(results_dir), ErrorKind::Io, results_dir + " is not a directory");
            std::vector<fs::path> files;
            for (const auto& entry : fs::recursive_directory_iterator(results_dir)) {
                if (entry.is_regular_file() && entry.path().extension() == ".json") {
                    files.push_back(entry.path());
                }
            }
            std::sort(files.begin(), files.end());
            std::string csv = io::csv_header();
            bool pass = true;
            for (const auto& file : files) {
                const auto j = io::read_json(file);
                if (!j.is_object() || !j.contains("checks")) {
                    continue;
                }
                for (const auto& row : j.at("checks")) {
                    const auto c = io::check_from_json(row);
                    csv += io::csv_row(c);
                    pass = pass && c.pass;
                }
            }
            if (out_path.empty()) {
                out << csv;
            } else {
                io::write_text(out_path, csv);
            }
            return pass ? kExitPass : kExitAssertion;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitConfig;
    }
    if (seed_opt->count() > 0) {
        ctx.seed_override = seed_flag;
    }
    try {
        return action();
    } catch (const Error& e) {
        err << "error [" << to_string(e.kind()) << "]: " << e.what() << "\n";
        return e.kind() == ErrorKind::AmplificationViolation ? kExitAssertion : kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}

} // namespace aelcodes

/**************************************************************************
 * io.hpp
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
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ael.hpp"
#include "error.hpp"
#include "expander.hpp"
#include "fraction.hpp"
#include "gf.hpp"
#include "inner_search.hpp"
#include "linear_code.hpp"
#include "outer_code.hpp"

// Artifact files are pretty-printed JSON with sorted keys. Anything that
// depends on wall-clock time lives on the single "timestamp" line so that
// reruns compare equal once that line is dropped.

namespace aelcodes::io {

using json = nlohmann::json;

inline constexpr int kFormatVersion = 1;
inline constexpr int kReportSchemaVersion = 1;

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline json read_json(const std::filesystem::path& path)
{
    std::ifstream in(path);
    require(in.good(), ErrorKind::Io, "cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        fail(ErrorKind::Io, path.string() + ": " + e.what());
    }
}

inline void write_text(const std::filesystem::path& path, const std::string& text)
{
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    require(out.good(), ErrorKind::Io, "cannot write " + path.string());
    out << text;
}

inline void write_json(const std::filesystem::path& path, const json& j) { write_text(path, dump(j)); }

inline std::string timestamp_line(double runtime_ms)
{
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    std::ostringstream os;
    os << buf << " runtime_ms=" << static_cast<long long>(runtime_ms);
    return os.str();
}

// -- checked access ---------------------------------------------------------

inline void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where)
{
    require(j.is_object(), ErrorKind::ConfigInvalid, where + ": expected an object");
    for (const auto& [key, value] : j.items()) {
        require(allowed.count(key) > 0, ErrorKind::ConfigInvalid, where + ": unknown key '" + key + "'");
    }
}

template <class T>
T get(const json& j, const std::string& key, const std::string& where)
{
    require(j.contains(key), ErrorKind::ConfigInvalid, where + ": missing key '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        fail(ErrorKind::ConfigInvalid, where + "." + key + ": " + e.what());
    }
}

template <class T>
T get_or(const json& j, const std::string& key, T fallback, const std::string& where)
{
    return j.contains(key) ? get<T>(j, key, where) : fallback;
}

inline Fraction get_fraction(const json& j, const std::string& key, const std::string& where)
{
    require(j.contains(key), ErrorKind::ConfigInvalid, where + ": missing key '" + key + "'");
    const auto& v = j.at(key);
    if (v.is_number_integer()) {
        return Fraction(v.get<std::int64_t>());
    }
    require(v.is_string(), ErrorKind::ConfigInvalid, where + "." + key + ": expected a fraction string like \"2/3\"");
    try {
        return Fraction::parse(v.get<std::string>());
    } catch (const Error& e) {
        fail(ErrorKind::ConfigInvalid, where + "." + key + ": " + e.what());
    }
}

inline void check_version(const json& j, const std::string& where)
{
    require(j.is_object() && j.contains("version"), ErrorKind::ConfigInvalid, where + ": missing version");
    require(j.at("version") == kFormatVersion, ErrorKind::ConfigInvalid,
            where + ": unsupported version " + j.at("version").dump());
}

// -- fields and codes -------------------------------------------------------

inline json to_json(const Field& f)
{
    return {{"p", f.characteristic()}, {"m", f.degree()}, {"modulus", f.modulus()}};
}

inline Field field_from_json(const json& j)
{
    check_keys(j, {"p", "m", "modulus"}, "field");
    const auto p = get<std::uint32_t>(j, "p", "field");
    const auto m = get<std::uint32_t>(j, "m", "field");
    if (!j.contains("modulus")) {
        return Field::make(p, m);
    }
    auto field = Field::with_modulus(p, get<std::vector<std::uint32_t>>(j, "modulus", "field"));
    require(field.degree() == m, ErrorKind::ConfigInvalid, "field: modulus degree does not match m");
    return field;
}

inline json to_json(const LinearCode& c)
{
    return {{"version", kFormatVersion},
            {"type", "linear"},
            {"field", to_json(c.field())},
            {"n", c.length()},
            {"dim", c.dimension()},
            {"symbol_width", c.symbol_width()},
            {"generator", c.generator()}};
}

inline LinearCode linear_code_from_json(const json& j)
{
    check_version(j, "code");
    check_keys(j, {"version", "type", "field", "n", "dim", "symbol_width", "generator", "frs", "reed_solomon"},
               "code");
    const Field f = field_from_json(j.at("field"));
    auto gen = get<Matrix>(j, "generator", "code");
    const auto width = get_or<std::size_t>(j, "symbol_width", 1, "code");
    LinearCode code(f, get<std::size_t>(j, "n", "code"), std::move(gen), width);
    require(code.dimension() == get<std::size_t>(j, "dim", "code"), ErrorKind::ConfigInvalid,
            "code: dim does not match the generator");
    return code;
}

inline json to_json(const RSOuterCode& c)
{
    json j = to_json(c.code());
    j["type"] = "reed_solomon";
    j["reed_solomon"] = {{"k", c.dimension()}, {"points", c.points()}};
    return j;
}

inline RSOuterCode rs_code_from_json(const json& j)
{
    check_version(j, "outer code");
    require(j.value("type", "") == "reed_solomon" && j.contains("reed_solomon"), ErrorKind::ConfigInvalid,
            "outer code: not a Reed-Solomon code file");
    const auto base = linear_code_from_json(j);
    const auto& rs = j.at("reed_solomon");
    check_keys(rs, {"k", "points"}, "reed_solomon");
    RSOuterCode code(base.field(), get<std::size_t>(rs, "k", "reed_solomon"),
                     get<std::vector<Elem>>(rs, "points", "reed_solomon"));
    require(code.code() == base, ErrorKind::ConfigInvalid, "outer code: generator does not match the points");
    return code;
}

inline json to_json(const FoldedRSCode& c)
{
    json j = to_json(frs_as_linear_code(c));
    j["type"] = "folded_rs";
    j["frs"] = {{"fold", c.fold()},         {"length", c.length()}, {"rate", c.rate().to_string()},
                {"gamma", c.gamma()},       {"alphas", c.alphas()}, {"appropriate", c.appropriate()}};
    return j;
}

// -- graphs -----------------------------------------------------------------

inline json to_json(const BipartiteGraph& g)
{
    return {{"version", kFormatVersion}, {"n", g.n()},           {"d", g.degree()},
            {"left_adj", g.left_adjacency()}, {"lambda", g.lambda()}, {"seed", g.seed()}};
}

inline BipartiteGraph graph_from_json(const json& j)
{
    check_version(j, "graph");
    check_keys(j, {"version", "n", "d", "left_adj", "lambda", "seed"}, "graph");
    return {get<std::size_t>(j, "n", "graph"), get<std::size_t>(j, "d", "graph"),
            get<std::vector<std::vector<std::uint32_t>>>(j, "left_adj", "graph"),
            get_or<std::uint64_t>(j, "seed", 0, "graph")};
}

// -- AEL bundles ------------------------------------------------------------

/// Bundle referencing graph, inner and outer files relative to its own
/// directory.
inline json ael_bundle(const std::string& graph_file, const std::string& inner_file, const std::string& outer_file,
                       const std::vector<std::uint64_t>& phi)
{
    return {{"version", kFormatVersion}, {"graph", graph_file}, {"inner", inner_file},
            {"outer", outer_file},       {"phi", phi},          {"phi_rule", "lexicographic"}};
}

inline AelCode load_ael(const std::filesystem::path& bundle_path)
{
    const json j = read_json(bundle_path);
    check_version(j, "ael");
    check_keys(j, {"version", "graph", "inner", "outer", "phi", "phi_rule"}, "ael");
    const auto dir = bundle_path.parent_path();
    auto graph = graph_from_json(read_json(dir / get<std::string>(j, "graph", "ael")));
    auto inner = linear_code_from_json(read_json(dir / get<std::string>(j, "inner", "ael")));
    auto outer = rs_code_from_json(read_json(dir / get<std::string>(j, "outer", "ael")));
    return {std::move(graph), std::move(inner), std::move(outer),
            get_or<std::vector<std::uint64_t>>(j, "phi", {}, "ael")};
}

// -- words ------------------------------------------------------------------

inline json word_to_json(const ErasedWord& w, std::uint64_t alphabet_size)
{
    json symbols = json::array();
    for (const auto& s : w.symbols) {
        if (s) {
            symbols.push_back(*s);
        } else {
            symbols.push_back(nullptr);
        }
    }
    return {{"version", kFormatVersion},
            {"alphabet_size", alphabet_size},
            {"length", w.length()},
            {"erasures", w.erasure_count()},
            {"symbols", symbols}};
}

inline json word_to_json(const Word& w, std::uint64_t alphabet_size)
{
    return word_to_json(ErasedWord::from_word(w), alphabet_size);
}

inline ErasedWord word_from_json(const json& j)
{
    check_version(j, "word");
    check_keys(j, {"version", "alphabet_size", "length", "erasures", "symbols"}, "word");
    const auto& sym = j.at("symbols");
    require(sym.is_array(), ErrorKind::ConfigInvalid, "word: symbols must be an array");
    ErasedWord w;
    for (const auto& s : sym) {
        if (s.is_null()) {
            w.symbols.emplace_back(std::nullopt);
        } else {
            require(s.is_number_unsigned() || s.is_number_integer(), ErrorKind::ConfigInvalid,
                    "word: symbols must be integers or null");
            w.symbols.emplace_back(s.get<Symbol>());
        }
    }
    require(w.length() == get<std::size_t>(j, "length", "word"), ErrorKind::ConfigInvalid,
            "word: length does not match the symbols");
    return w;
}

// -- certificates -----------------------------------------------------------

inline json to_json(const ArldCertificate& c)
{
    return {{"version", kFormatVersion},
            {"delta0", c.delta0.to_string()},
            {"k", c.k},
            {"eps_min", c.eps_min.to_string()},
            {"eps_worst", c.eps_worst.to_string()},
            {"witness", c.witness},
            {"witness_center", c.witness_center},
            {"length", c.length},
            {"codebook_size", c.codebook_size},
            {"subsets_examined", c.subsets_examined},
            {"min_total_by_size", c.min_total_by_size},
            {"covers_erasures", c.covers_erasures},
            {"timestamp", timestamp_line(c.runtime_ms)}};
}

inline ArldCertificate certificate_from_json(const json& j)
{
    check_version(j, "certificate");
    check_keys(j,
               {"version", "delta0", "k", "eps_min", "eps_worst", "witness", "witness_center", "length",
                "codebook_size", "subsets_examined", "min_total_by_size", "covers_erasures", "timestamp"},
               "certificate");
    ArldCertificate c;
    c.delta0 = get_fraction(j, "delta0", "certificate");
    c.k = get<std::size_t>(j, "k", "certificate");
    c.eps_min = get_fraction(j, "eps_min", "certificate");
    c.eps_worst = get_fraction(j, "eps_worst", "certificate");
    c.witness = get<std::vector<std::size_t>>(j, "witness", "certificate");
    c.witness_center = get<Word>(j, "witness_center", "certificate");
    c.length = get<std::size_t>(j, "length", "certificate");
    c.codebook_size = get<std::uint64_t>(j, "codebook_size", "certificate");
    c.subsets_examined = get<std::uint64_t>(j, "subsets_examined", "certificate");
    c.min_total_by_size = get<std::vector<std::uint64_t>>(j, "min_total_by_size", "certificate");
    c.covers_erasures = get_or<bool>(j, "covers_erasures", true, "certificate");
    return c;
}

/// Same certificate up to runtime.
inline bool same_certificate(const ArldCertificate& a, const ArldCertificate& b)
{
    return a.delta0 == b.delta0 && a.k == b.k && a.eps_min == b.eps_min && a.eps_worst == b.eps_worst &&
           a.witness == b.witness && a.witness_center == b.witness_center && a.length == b.length &&
           a.codebook_size == b.codebook_size && a.subsets_examined == b.subsets_examined &&
           a.min_total_by_size == b.min_total_by_size && a.covers_erasures == b.covers_erasures;
}

// -- verification reports ---------------------------------------------------

/// One row of a verification report: a measured value against its bound.
struct Check {
    std::string instance;
    std::string parameter;
    std::string value;
    std::string bound;
    std::string margin;
    bool pass = false;
};

inline json to_json(const Check& c)
{
    return {{"instance", c.instance}, {"parameter", c.parameter}, {"value", c.value},
            {"bound", c.bound},       {"margin", c.margin},       {"pass", c.pass}};
}

inline Check check_from_json(const json& j)
{
    check_keys(j, {"instance", "parameter", "value", "bound", "margin", "pass"}, "check");
    return {get<std::string>(j, "instance", "check"), get<std::string>(j, "parameter", "check"),
            get<std::string>(j, "value", "check"),    get<std::string>(j, "bound", "check"),
            get<std::string>(j, "margin", "check"),   get<bool>(j, "pass", "check")};
}

/// value >= bound as a check row.
inline Check at_least(const std::string& instance, const std::string& parameter, const Fraction& value,
                      const Fraction& bound)
{
    return {instance, parameter, value.to_string(), bound.to_string(), (value - bound).to_string(), value >= bound};
}

/// value <= bound as a check row.
inline Check at_most(const std::string& instance, const std::string& parameter, const Fraction& value,
                     const Fraction& bound)
{
    return {instance, parameter, value.to_string(), bound.to_string(), (bound - value).to_string(), value <= bound};
}

inline json report_json(const std::string& kind, const std::vector<Check>& checks, json details, double runtime_ms)
{
    json rows = json::array();
    bool pass = true;
    for (const auto& c : checks) {
        rows.push_back(to_json(c));
        pass = pass && c.pass;
    }
    return {{"version", kFormatVersion}, {"kind", kind},     {"checks", rows},
            {"details", std::move(details)}, {"pass", pass}, {"timestamp", timestamp_line(runtime_ms)}};
}

inline std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        out += c;
        if (c == '"') {
            out += '"';
        }
    }
    return out + "\"";
}

inline std::string csv_header() { return "schema_version,instance,parameter,value,bound,margin,pass\n"; }

inline std::string csv_row(const Check& c)
{
    std::ostringstream os;
    os << kReportSchemaVersion << ',' << csv_escape(c.instance) << ',' << csv_escape(c.parameter) << ','
       << csv_escape(c.value) << ',' << csv_escape(c.bound) << ',' << csv_escape(c.margin) << ','
       << (c.pass ? "true" : "false") << '\n';
    return os.str();
}

/// Drops every line containing "timestamp"; used to compare reruns.
inline std::string strip_timestamps(const std::string& text)
{
    std::istringstream in(text);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find("\"timestamp\"") == std::string::npos) {
            out << line << '\n';
        }
    }
    return out.str();
}

inline std::string read_text(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    require(in.good(), ErrorKind::Io, "cannot open " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace aelcodes::io

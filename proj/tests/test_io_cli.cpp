/**************************************************************************
 * test_io_cli.cpp
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

#include <filesystem>
#include <sstream>

#include "aelcodes/cli.hpp"

using namespace aelcodes;
namespace fs = std::filesystem;
using io::json;

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

class TempDir {
public:
    TempDir()
    {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        path_ = fs::temp_directory_path() / ("aelcodes_" + std::string(info->test_suite_name()) + "_" + info->name());
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const fs::path& path() const { return path_; }
    std::string operator/(const std::string& name) const { return (path_ / name).string(); }

private:
    fs::path path_;
};

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "aelcodes_cli");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

json small_config(const std::string& output)
{
    auto j = json::parse(R"({
        "version": 1,
        "name": "small",
        "seed": 7,
        "inner": {"kind": "random", "field": {"p": 2, "m": 2}, "length": 4, "dim": 2,
                  "k": 2, "delta0": "1/2", "eps_target": "1/4", "max_tries": 20},
        "graph": {"n": 12, "d": 4, "lambda_target": 1.0},
        "outer": {"field": {"p": 2, "m": 4}, "n": 12, "k": 2},
        "verify": {"k": 2, "delta0": "1/2", "eps": "1/4", "adversarial_centers": 5, "random_centers": 5},
        "trials": {"decode": 10, "eml": 20}
    })");
    j["output"] = output;
    return j;
}

} // namespace

// ---------------------------------------------------------------- values

TEST(FractionIo, ParseAndPrint)
{
    EXPECT_EQ(Fraction::parse("2/3"), Fraction(2, 3));
    EXPECT_EQ(Fraction::parse("4/6"), Fraction(2, 3));
    EXPECT_EQ(Fraction::parse("-1/4"), Fraction(-1, 4));
    EXPECT_EQ(Fraction::parse("5"), Fraction(5));
    EXPECT_EQ(Fraction(6, 4).to_string(), "3/2");
    EXPECT_EQ(Fraction(-3).to_string(), "-3");
    EXPECT_ANY_THROW(Fraction::parse("1/0"));
    EXPECT_ANY_THROW(Fraction::parse("x"));
}

TEST(FractionIo, UpperBoundOfDouble)
{
    for (double x : {0.0, 0.1, 0.6928203230275509, 1.0 / 3.0, 0.75}) {
        const Fraction f = Fraction::upper_bound_of(x);
        EXPECT_GE(f.to_double(), x);
        EXPECT_LT(f.to_double() - x, 1e-9);
    }
    EXPECT_EQ(Fraction::upper_bound_of(0.75), Fraction(3, 4));
}

TEST(Seeds, DerivationIsStableAndSeparated)
{
    EXPECT_EQ(derive_seed(1, "inner"), derive_seed(1, "inner"));
    EXPECT_NE(derive_seed(1, "inner"), derive_seed(1, "graph"));
    EXPECT_NE(derive_seed(1, "inner"), derive_seed(2, "inner"));
    EXPECT_NE(derive_seed(1, std::uint64_t{0}), derive_seed(1, std::uint64_t{1}));
    Rng a(derive_seed(9, "x"));
    Rng b(derive_seed(9, "x"));
    for (int i = 0; i < 10; ++i) {
        EXPECT_EQ(a.next(), b.next());
    }
}

// ---------------------------------------------------------------- serialization

TEST(Serialization, CodesRoundTrip)
{
    const auto f = Field::make(2, 3);
    EXPECT_EQ(io::field_from_json(io::to_json(f)), f);
    const auto lin = sample_random_linear_code(f, 6, 3, 4);
    EXPECT_EQ(io::linear_code_from_json(io::to_json(lin)), lin);
    const auto rs = make_reed_solomon(Field::make(2, 4), 12, 3);
    EXPECT_EQ(io::rs_code_from_json(io::to_json(rs)), rs);
    EXPECT_EQ(io::linear_code_from_json(io::to_json(rs)), rs.code());
    const auto frs = make_folded_rs(Field::make(17, 1), 2, 4, Fraction(1, 4));
    const json j = io::to_json(frs);
    EXPECT_EQ(j.at("type"), "folded_rs");
    EXPECT_EQ(j.at("frs").at("appropriate"), true);
    EXPECT_EQ(io::linear_code_from_json(j), frs_as_linear_code(frs));
}

TEST(Serialization, GraphRoundTrip)
{
    const auto g = random_regular_bipartite(20, 3, 11, 1.0);
    const auto back = io::graph_from_json(io::to_json(g));
    EXPECT_EQ(back, g);
    EXPECT_EQ(back.seed(), 11U);
    EXPECT_NEAR(back.lambda(), g.lambda(), 1e-12);
}

TEST(Serialization, WordsWithErasures)
{
    const ErasedWord w{{3, std::nullopt, 0}};
    const json j = io::word_to_json(w, 4);
    EXPECT_EQ(j.at("erasures"), 1);
    EXPECT_TRUE(j.at("symbols")[1].is_null());
    EXPECT_EQ(io::word_from_json(j).symbols, w.symbols);
    json bad = j;
    bad["length"] = 4;
    EXPECT_EQ(kind_of([&] { io::word_from_json(bad); }), ErrorKind::ConfigInvalid);
    bad = j;
    bad["extra"] = 1;
    EXPECT_EQ(kind_of([&] { io::word_from_json(bad); }), ErrorKind::ConfigInvalid);
}

TEST(Serialization, CertificateRoundTrip)
{
    const auto cert = min_arld_slack(make_reed_solomon(Field::make(2, 2), 4, 2).code(), 3, Fraction(1, 2));
    const auto back = io::certificate_from_json(io::to_json(cert));
    EXPECT_TRUE(io::same_certificate(cert, back));
    EXPECT_EQ(back.eps_min, cert.eps_min);
}

TEST(Serialization, ReportsAndCsv)
{
    const auto ok = io::at_least("inst", "param", Fraction(3, 4), Fraction(1, 2));
    EXPECT_TRUE(ok.pass);
    EXPECT_EQ(ok.margin, "1/4");
    const auto bad = io::at_most("inst", "param", Fraction(3, 4), Fraction(1, 2));
    EXPECT_FALSE(bad.pass);
    EXPECT_EQ(bad.margin, "-1/4");
    const json rep = io::report_json("kind", {ok, bad}, json::object(), 12.0);
    EXPECT_EQ(rep.at("pass"), false);
    EXPECT_EQ(io::check_from_json(rep.at("checks")[0]).value, "3/4");
    EXPECT_EQ(io::csv_escape("a,b"), "\"a,b\"");
    EXPECT_EQ(io::csv_escape("say \"hi\""), "\"say \"\"hi\"\"\"");
    EXPECT_EQ(io::csv_row(ok), "1,inst,param,3/4,1/2,1/4,true\n");
    const std::string text = io::dump(rep);
    EXPECT_NE(text.find("\"timestamp\""), std::string::npos);
    EXPECT_EQ(io::strip_timestamps(text).find("timestamp"), std::string::npos);
    EXPECT_EQ(io::strip_timestamps(text), io::strip_timestamps(io::dump(io::report_json("kind", {ok, bad}, json::object(), 99.0))));
}

// ---------------------------------------------------------------- config

TEST(Config, ParsesAllSections)
{
    const auto c = config_from_json(small_config("out"));
    EXPECT_EQ(c.name, "small");
    EXPECT_EQ(c.seed, 7U);
    ASSERT_TRUE(c.inner && c.graph && c.outer && c.verify);
    EXPECT_EQ(c.inner->delta0, Fraction(1, 2));
    EXPECT_EQ(c.inner->codebook_size(), 16U);
    EXPECT_EQ(c.verify->eps, Fraction(1, 4));
    EXPECT_EQ(c.verify->list_cap, 32U);
    EXPECT_EQ(c.decode_trials, 10U);
    EXPECT_EQ(c.eml_trials, 20U);
}

TEST(Config, RejectsUnknownKeysAndInconsistentSections)
{
    auto j = small_config("out");
    j["colour"] = "blue";
    EXPECT_EQ(kind_of([&] { config_from_json(j); }), ErrorKind::ConfigInvalid);
    j = small_config("out");
    j["graph"]["d"] = 5;
    EXPECT_EQ(kind_of([&] { config_from_json(j); }), ErrorKind::ConfigInvalid);
    j = small_config("out");
    j["outer"]["field"]["m"] = 3;
    EXPECT_EQ(kind_of([&] { config_from_json(j); }), ErrorKind::ConfigInvalid);
    j = small_config("out");
    j["version"] = 2;
    EXPECT_EQ(kind_of([&] { config_from_json(j); }), ErrorKind::ConfigInvalid);
    j = small_config("out");
    j["verify"]["eps"] = "one half";
    EXPECT_EQ(kind_of([&] { config_from_json(j); }), ErrorKind::ConfigInvalid);
    j = small_config("out");
    j.erase("seed");
    EXPECT_EQ(kind_of([&] { config_from_json(j); }), ErrorKind::ConfigInvalid);
}

TEST(Config, BuildersAreSeededBySection)
{
    const auto c = config_from_json(small_config("out"));
    const auto a = build_inner(*c.inner, 7);
    const auto b = build_inner(*c.inner, 7);
    EXPECT_EQ(a.code, b.code);
    ASSERT_TRUE(a.certificate.has_value());
    EXPECT_LE(a.certificate->eps_min, Fraction(1, 4));
    EXPECT_EQ(build_graph(*c.graph, 7), random_regular_bipartite(12, 4, derive_seed(7, "graph"), 1.0));
    EXPECT_EQ(build_outer(*c.outer), make_reed_solomon(Field::make(2, 4), 12, 2));
}

TEST(Config, ShippedConfigsLoad)
{
    const fs::path dir = fs::path(AELCODES_SOURCE_DIR) / "configs";
    std::size_t count = 0;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() == ".json") {
            EXPECT_NO_THROW(load_config(entry.path())) << entry.path();
            ++count;
        }
    }
    EXPECT_GT(count, 0U);
}

// ---------------------------------------------------------------- CLI

TEST(Cli, HelpAndUsageErrors)
{
    EXPECT_EQ(cli({"--help"}).code, 0);
    EXPECT_EQ(cli({}).code, 2);
    EXPECT_EQ(cli({"no-such-command"}).code, 2);
    EXPECT_EQ(cli({"build-graph", "--n", "x"}).code, 2);
    const auto missing = cli({"decode", "--ael", "/nonexistent/ael.json", "--word", "/nonexistent/w.json"});
    EXPECT_EQ(missing.code, 2);
    EXPECT_NE(missing.err.find("Io"), std::string::npos);
}

TEST(Cli, StandaloneBuilders)
{
    TempDir tmp;
    EXPECT_EQ(cli({"build-graph", "--n", "8", "--complete", "--out", tmp / "k8.json"}).code, 0);
    EXPECT_EQ(io::graph_from_json(io::read_json(tmp / "k8.json")).degree(), 8U);
    EXPECT_EQ(cli({"build-graph", "--n", "16", "--d", "3", "--graph-seed", "2", "--out", tmp / "g.json"}).code, 0);
    EXPECT_EQ(io::graph_from_json(io::read_json(tmp / "g.json")), random_regular_bipartite(16, 3, 2, 1.0));
    EXPECT_EQ(cli({"build-graph", "--n", "16", "--d", "3", "--lambda-target", "0.01", "--max-tries", "2", "--out",
                   tmp / "h.json"})
                  .code,
              2);
    EXPECT_EQ(cli({"build-outer", "--p", "2", "--m", "4", "--n", "12", "--k", "2", "--out", tmp / "o.json"}).code, 0);
    EXPECT_EQ(io::rs_code_from_json(io::read_json(tmp / "o.json")), make_reed_solomon(Field::make(2, 4), 12, 2));
    EXPECT_EQ(cli({"build-frs", "--p", "17", "--fold", "2", "--length", "4", "--rate", "1/4", "--out",
                   tmp / "frs.json"})
                  .code,
              0);
    EXPECT_EQ(cli({"build-frs", "--p", "17", "--fold", "2", "--length", "2", "--rate", "1/2", "--alphas", "1,3",
                   "--out", tmp / "bad.json"})
                  .code,
              2);
    const auto inner = cli({"verify-inner", "--code", tmp / "frs.json", "--k", "3", "--delta0", "3/4", "--eps", "0",
                            "--out", tmp / "cert.json"});
    EXPECT_EQ(inner.code, 0) << inner.err;
    EXPECT_EQ(io::certificate_from_json(io::read_json(tmp / "cert.json")).subsets_examined, 4023169U);
    // every nonzero folded codeword has full weight, so delta0 = 1 certifies too
    EXPECT_EQ(cli({"verify-inner", "--code", tmp / "frs.json", "--k", "3", "--delta0", "1", "--eps", "0", "--out",
                   tmp / "cert2.json"})
                  .code,
              0);
    io::write_json(tmp / "rs.json", io::to_json(make_reed_solomon(Field::make(2, 2), 4, 2).code()));
    EXPECT_EQ(cli({"verify-inner", "--code", tmp / "rs.json", "--k", "2", "--delta0", "1", "--eps", "0", "--out",
                   tmp / "cert3.json"})
                  .code,
              1);
}

TEST(Cli, EndToEndPipeline)
{
    TempDir tmp;
    io::write_json(tmp / "small.json", small_config((tmp.path() / "run").string()));
    const auto built = cli({"build-ael", "--config", tmp / "small.json"});
    ASSERT_EQ(built.code, 0) << built.err;
    const std::string ael = (tmp.path() / "run/ael.json").string();
    ASSERT_TRUE(fs::exists(ael));
    EXPECT_TRUE(fs::exists(tmp.path() / "run/inner_cert.json"));

    const auto code = io::load_ael(ael);
    EXPECT_EQ(code.n(), 12U);

    ASSERT_EQ(cli({"encode", "--ael", ael, "--message", "3,7", "--out", tmp / "c.json"}).code, 0);
    const auto sent = io::word_from_json(io::read_json(tmp / "c.json"));
    EXPECT_EQ(sent.symbols, ErasedWord::from_word(code.encode_message(std::vector<Elem>{3, 7})).symbols);

    ASSERT_EQ(cli({"corrupt", "--ael", ael, "--word", tmp / "c.json", "--errors", "1", "--erasures", "1",
                   "--corrupt-seed", "4", "--out", tmp / "r.json"})
                  .code,
              0);
    const auto recv = io::word_from_json(io::read_json(tmp / "r.json"));
    EXPECT_EQ(recv.erasure_count(), 1U);

    const auto dec = cli({"decode", "--ael", ael, "--word", tmp / "r.json", "--out", tmp / "dec.json"});
    const auto report = io::read_json(tmp / "dec.json");
    EXPECT_EQ(report.at("kind"), "decode");
    if (dec.code == 0) {
        Word expected(sent.length());
        for (std::size_t i = 0; i < expected.size(); ++i) {
            expected[i] = *sent.symbols[i];
        }
        EXPECT_EQ(report.at("details").at("codeword").get<Word>(), expected);
    } else {
        EXPECT_EQ(dec.code, 1);
        EXPECT_NE(dec.out.find("Fail"), std::string::npos);
    }

    const auto list = cli({"list-decode", "--ael", ael, "--word", tmp / "r.json", "--radius", "1/4", "--out",
                           tmp / "list.json"});
    ASSERT_EQ(list.code, 0);
    EXPECT_GE(io::read_json(tmp / "list.json").at("list").size(), 1U);

    const auto amp = cli({"verify-amplification", "--ael", ael, "--out", tmp / "results/amp.json"});
    EXPECT_EQ(amp.code, 0) << amp.out << amp.err;

    const auto single = cli({"verify-singleton", "--config", tmp / "small.json", "--out",
                             tmp / "results/singleton.json"});
    EXPECT_EQ(single.code, 0) << single.out << single.err;
    const auto srep = io::read_json(tmp / "results/singleton.json");
    EXPECT_EQ(srep.at("details").at("theorem"), "NOT APPLICABLE");

    const auto eml = cli({"verify-eml", "--config", tmp / "small.json", "--trials", "50", "--out",
                          tmp / "results/eml.json"});
    EXPECT_EQ(eml.code, 0) << eml.err;

    const auto rep = cli({"report", "--results", tmp / "results", "--out", tmp / "table.csv"});
    EXPECT_EQ(rep.code, 0);
    const std::string csv = io::read_text(tmp / "table.csv");
    EXPECT_EQ(csv.rfind(io::csv_header(), 0), 0U);
    EXPECT_NE(csv.find("set EML failures"), std::string::npos);
}

TEST(Cli, SingletonFailurePrintsWitness)
{
    TempDir tmp;
    io::write_json(tmp / "small.json", small_config((tmp.path() / "run").string()));
    ASSERT_EQ(cli({"build-ael", "--config", tmp / "small.json"}).code, 0);
    const auto res = cli({"verify-singleton", "--ael", (tmp.path() / "run/ael.json").string(), "--k", "2",
                          "--delta0", "1", "--eps", "0", "--out", tmp / "s.json"});
    EXPECT_EQ(res.code, 1);
    EXPECT_NE(res.out.find("witness H = {"), std::string::npos);
    EXPECT_EQ(cli({"report", "--results", tmp.path().string(), "--out", tmp / "t.csv"}).code, 1);
}

TEST(Cli, BundleFromComponentFiles)
{
    TempDir tmp;
    ASSERT_EQ(cli({"build-graph", "--n", "4", "--complete", "--out", tmp / "parts/g.json"}).code, 0);
    ASSERT_EQ(cli({"build-outer", "--p", "2", "--m", "4", "--n", "4", "--k", "2", "--out", tmp / "parts/o.json"})
                  .code,
              0);
    io::write_json(tmp / "parts/i.json", io::to_json(make_reed_solomon(Field::make(2, 2), 4, 2).code()));
    ASSERT_EQ(cli({"build-ael", "--graph", tmp / "parts/g.json", "--inner", tmp / "parts/i.json", "--outer",
                   tmp / "parts/o.json", "--out", tmp / "bundle/ael.json"})
                  .code,
              0);
    const auto j = io::read_json(tmp / "bundle/ael.json");
    EXPECT_EQ(j.at("graph"), "../parts/g.json");
    EXPECT_EQ(j.at("phi_rule"), "lexicographic");
    const auto code = io::load_ael(tmp / "bundle/ael.json");
    EXPECT_EQ(code.n(), 4U);
    EXPECT_EQ(cli({"verify-amplification", "--ael", tmp / "bundle/ael.json"}).code, 0);
}

TEST(Cli, ArtifactsAreReproducible)
{
    TempDir tmp;
    io::write_json(tmp / "a.json", small_config((tmp.path() / "a").string()));
    io::write_json(tmp / "b.json", small_config((tmp.path() / "b").string()));
    ASSERT_EQ(cli({"build-ael", "--config", tmp / "a.json"}).code, 0);
    ASSERT_EQ(cli({"build-ael", "--config", tmp / "b.json"}).code, 0);
    for (const char* f : {"graph.json", "inner.json", "outer.json", "ael.json", "inner_cert.json"}) {
        EXPECT_EQ(io::strip_timestamps(io::read_text(tmp.path() / "a" / f)),
                  io::strip_timestamps(io::read_text(tmp.path() / "b" / f)))
            << f;
    }
    ASSERT_EQ(cli({"--seed", "8", "build-ael", "--config", tmp / "a.json", "--out", tmp / "c"}).code, 0);
    EXPECT_NE(io::read_text(tmp.path() / "a/graph.json"), io::read_text(tmp.path() / "c/graph.json"));
}

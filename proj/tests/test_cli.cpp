#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "mtr/cli.hpp"
#include "mtr/errors.hpp"
#include "mtr/io.hpp"
#include "mtr/matrix.hpp"
#include "mtr/rng.hpp"
#include "testutil.hpp"

using json = nlohmann::json;
using mtr::Int;
using mtr::IntMatrix;
using mtr::RunConfig;
using mtr::Vec;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run(const std::string& cmd, const RunConfig& cfg) {
    std::ostringstream out, err;
    int code = mtr::run_command(cmd, cfg, out, err);
    return {code, out.str(), err.str()};
}

RunConfig with_matrix(const std::string& text) {
    RunConfig cfg;
    cfg.matrix_text = text;
    return cfg;
}

} // namespace

TEST_CASE("matrix parsing") {
    CHECK(mtr::parse_matrix("0 1; 1 1") == IntMatrix({{0, 1}, {1, 1}}));
    CHECK(mtr::parse_matrix("[[1,0],[0,1]]") == IntMatrix::identity(2));
    CHECK(mtr::parse_matrix(" [[1, 0] ,\n [0, 1]] ") == IntMatrix::identity(2));
    CHECK(mtr::parse_matrix("-3") == IntMatrix({{-3}}));
    CHECK(mtr::parse_matrix("1 2; 3 4;") == IntMatrix({{1, 2}, {3, 4}}));
    CHECK(mtr::parse_matrix("+5 -6; 7 8") == IntMatrix({{5, -6}, {7, 8}}));

    IntMatrix big(1, 1);
    big.at(0, 0) = Int("123456789012345678901234567890");
    CHECK(mtr::parse_matrix("123456789012345678901234567890") == big);

    CHECK_THROWS_AS(mtr::parse_matrix(""), mtr::ParseError);
    CHECK_THROWS_AS(mtr::parse_matrix("   \n "), mtr::ParseError);
    CHECK_THROWS_AS(mtr::parse_matrix("1 2; 3"), mtr::ParseError);
    CHECK_THROWS_AS(mtr::parse_matrix("1 x; 3 4"), mtr::ParseError);
    CHECK_THROWS_AS(mtr::parse_matrix("[1,2],[3,4]"), mtr::ParseError);
    CHECK_THROWS_AS(mtr::parse_matrix("[[1,2],[3,4]] x"), mtr::ParseError);
    CHECK_THROWS_AS(mtr::parse_matrix("[[1,a],[3,4]]"), mtr::ParseError);
    CHECK_THROWS_AS(mtr::parse_matrix("[[1,2],[3,4]"), mtr::ParseError);
    CHECK_THROWS_AS(mtr::parse_matrix("1 2 3; 4 5 6"), mtr::NonSquare);
    CHECK_THROWS_AS(mtr::parse_matrix("[[1,2,3],[4,5,6]]"), mtr::NonSquare);

    try {
        mtr::parse_matrix("1 2;\n3");
        FAIL("expected ParseError");
    } catch (const mtr::ParseError& e) {
        std::string msg = e.what();
        CHECK(msg.find("row 2") != std::string::npos);
        CHECK(msg.find("(line 2, column 2)") != std::string::npos);
    }
    try {
        mtr::parse_matrix("1 x; 3 4");
        FAIL("expected ParseError");
    } catch (const mtr::ParseError& e) {
        CHECK(std::string(e.what()).find("(line 1, column 3)") != std::string::npos);
    }
}

TEST_CASE("matrix emit round trip") {
    const IntMatrix fib({{0, 1}, {1, 1}});
    CHECK(mtr::emit_matrix(fib) == "0 1; 1 1");
    CHECK(mtr::emit_matrix_nested(fib) == "[[0,1],[1,1]]");
    CHECK(mtr::parse_matrix(mtr::emit_matrix(fib)) == fib);
    CHECK(mtr::parse_matrix(mtr::emit_matrix_nested(fib)) == fib);

    mtr::testutil::TestRng rng(0x5eed7001);
    for (int t = 0; t < 30; ++t) {
        std::size_t d = static_cast<std::size_t>(rng.range(1, 4));
        IntMatrix m = mtr::testutil::random_matrix(d, -999, 999, rng);
        CHECK(mtr::parse_matrix(mtr::emit_matrix(m)) == m);
        CHECK(mtr::parse_matrix(mtr::emit_matrix_nested(m)) == m);
    }
}

TEST_CASE("delta command csv bytes") {
    RunConfig cfg = with_matrix("0 1; 1 1");
    cfg.nmax = 6;
    cfg.format = "csv";
    RunResult r = run("delta", cfg);
    CHECK(r.code == 0);
    CHECK(r.out == "n,delta,is_rank2_power\n1,1,1\n2,1,1\n3,2,0\n4,3,0\n5,5,0\n6,8,0\n");

    // rotation: finite orbit, index infinite off the fixed powers
    RunConfig rot = with_matrix("0 -1; 1 0");
    rot.nmax = 4;
    rot.format = "csv";
    RunResult rr = run("delta", rot);
    CHECK(rr.code == 0);
    CHECK(rr.out == "n,delta,is_rank2_power\n1,1,1\n2,inf,0\n3,1,1\n4,inf,0\n");
}

TEST_CASE("json reports are deterministic and well formed") {
    RunConfig cfg = with_matrix("0 1; 1 1");
    cfg.nmax = 6;
    cfg.format = "json";
    RunResult a = run("delta", cfg);
    RunResult b = run("delta", cfg);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);

    json doc = json::parse(a.out);
    CHECK(doc["command"] == "delta");
    CHECK(doc["matrix"] == json::parse(R"([["0","1"],["1","1"]])"));
    CHECK(doc["timings"].is_null());
    CHECK(doc["config"]["nmax"] == 6);
    CHECK(doc["results"]["witness"]["v"] == json::parse(R"(["1","0"])"));
    CHECK(doc["results"]["values"].size() == 6);
    CHECK(doc["results"]["values"][5]["delta"] == "8");
    CHECK(doc["results"]["values"][5]["signed"] == "8");
    CHECK(doc["results"]["rank2_powers"] == json::parse("[1,2]"));
}

TEST_CASE("rank2 and rank and vrank commands") {
    RunConfig cfg = with_matrix("0 1; 1 1");
    cfg.format = "json";
    RunResult r = run("rank2", cfg);
    CHECK(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["results"]["verdict"] == "Rank2");
    CHECK(doc["results"]["witness"]["v"] == json::parse(R"(["1","0"])"));
    CHECK(doc["results"]["orbit_form"]["a"] == "1");

    RunConfig text = with_matrix("0 1; 1 1");
    RunResult t = run("rank2", text);
    CHECK(t.out.find("verdict: Rank2") != std::string::npos);
    CHECK(t.out.find("witness: (1, 0)") != std::string::npos);

    RunConfig vr = with_matrix("[[1,0],[0,1]]");
    vr.format = "json";
    RunResult v = run("vrank", vr);
    CHECK(json::parse(v.out)["results"]["vrank"] == 3);

    RunConfig rk = with_matrix("0 1; 1 1");
    rk.format = "json";
    RunResult k = run("rank", rk);
    json kd = json::parse(k.out);
    CHECK(kd["results"]["verdict"] == "Rank2");
    CHECK(kd["results"]["vrank"] == 2);
    CHECK(kd["results"]["filters"]["pass"] == true);
}

TEST_CASE("powers command") {
    RunConfig cfg = with_matrix("0 1; 1 1");
    cfg.nmax = 12;
    cfg.format = "json";
    RunResult r = run("powers", cfg);
    CHECK(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["results"]["recurrence"]["order"] == 2);
    CHECK(doc["results"]["recurrence"]["coeffs"] == json::parse(R"(["1","1"])"));
    CHECK(doc["results"]["cn"][11]["c"] == "144");
    CHECK(doc["results"]["min_2gen"]["index"] == "144");
    CHECK(doc["results"]["min_2gen"]["best_m"] == 1);

    cfg.format = "csv";
    RunResult c = run("powers", cfg);
    CHECK(c.out.substr(0, 24) == "n,delta,is_rank2_power\n1");
}

TEST_CASE("nielsen command") {
    RunConfig cfg = with_matrix("2 1; 1 1");
    cfg.format = "json";
    RunResult r = run("nielsen", cfg);
    CHECK(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["results"]["verdict"] == "FiniteCount");
    CHECK(doc["results"]["count"] == "2");
    CHECK(doc["results"]["exponent"] == "2");
    CHECK(doc["results"]["fundamental_unit"]
          == json::parse(R"([["1","1"],["1","0"]])"));
    CHECK(doc["results"]["classes"]["exact_d2_count"] == "2");
    CHECK(doc["results"]["classes"]["reps"].size() == 2);

    // derogatory block: probe path, no cyclic witness for the class listing
    RunConfig blk = with_matrix("0 1 0 0; 1 1 0 0; 0 0 0 1; 0 0 1 1");
    blk.height = 1;
    blk.format = "json";
    RunResult b = run("nielsen", blk);
    CHECK(b.code == 0);
    json bd = json::parse(b.out);
    CHECK(bd["results"]["verdict"] == "InfiniteWitness");
    CHECK_FALSE(bd["results"]["witness_h"].is_null());
    CHECK(bd["results"]["classes"].is_null());
    CHECK(bd["results"]["classes_note"] == "no cyclic witness within the search bound");

    // cubic companion: all commuting units are powers of M, probe stays Unknown
    RunConfig cub = with_matrix("0 0 1; 1 0 1; 0 1 0");
    cub.format = "json";
    cub.strict = true;
    RunResult u = run("nielsen", cub);
    CHECK(u.code == 2);
    CHECK(json::parse(u.out)["results"]["verdict"] == "Unknown");
}

TEST_CASE("spectral command") {
    RunConfig cfg = with_matrix("0 1; 1 1");
    cfg.format = "json";
    RunResult r = run("spectral", cfg);
    CHECK(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["results"]["charpoly"] == json::parse(R"(["-1","-1","1"])"));
    REQUIRE(doc["results"]["spectrum"].size() == 2);
    double phi = std::stod(doc["results"]["spectrum"][1]["re"].get<std::string>());
    CHECK(phi == doctest::Approx(1.6180339887).epsilon(1e-9));
    CHECK(doc["results"]["growth"]["moduli_distinct"] == true);
    double k = std::stod(doc["results"]["growth"]["k"].get<std::string>());
    CHECK(k == doctest::Approx(1.6180339887).epsilon(1e-9));
    CHECK(doc["results"]["comparison"]["skipped"] == false);
}

TEST_CASE("corpus command") {
    RunConfig cfg;
    cfg.dim = 2;
    cfg.count = 5;
    cfg.seed = 7;
    cfg.format = "csv";
    RunResult r = run("corpus", cfg);
    CHECK(r.code == 0);
    CHECK(r.out
          == "index,dim,det,verdict\n0,2,1,Rank3\n1,2,-1,Rank3\n2,2,-1,Rank3\n"
             "3,2,-1,Rank3\n4,2,-1,Rank3\n");

    cfg.format = "json";
    cfg.count = 40;
    cfg.seed = 3;
    RunResult a = run("corpus", cfg);
    RunResult b = run("corpus", cfg);
    CHECK(a.out == b.out);
    json doc = json::parse(a.out);
    CHECK(doc["results"]["entries"].size() == 40);
    long total = 0;
    for (const auto& [key, value] : doc["results"]["summary"].items()) {
        (void)key;
        total += value.get<long>();
    }
    CHECK(total == 40);
    for (const auto& e : doc["results"]["entries"]) {
        std::string d = e["det"].get<std::string>();
        CHECK((d == "1" || d == "-1"));
    }
}

TEST_CASE("exit codes") {
    RunConfig cfg = with_matrix("0 1; 1 1");

    RunResult bad_cmd = run("bogus", cfg);
    CHECK(bad_cmd.code == 1);
    CHECK(bad_cmd.err.find("unknown command") != std::string::npos);

    RunConfig bad_fmt = with_matrix("0 1; 1 1");
    bad_fmt.format = "yaml";
    CHECK(run("rank2", bad_fmt).code == 1);

    RunConfig none;
    RunResult no_matrix = run("rank2", none);
    CHECK(no_matrix.code == 1);
    CHECK(no_matrix.err.find("no matrix") != std::string::npos);

    RunConfig both = with_matrix("0 1; 1 1");
    both.file = "also.txt";
    CHECK(run("rank2", both).code == 1);

    RunConfig ragged = with_matrix("1 2; 3");
    RunResult pe = run("rank2", ragged);
    CHECK(pe.code == 1);
    CHECK(pe.err.find("parse error") != std::string::npos);

    RunConfig nocsv = with_matrix("0 1; 1 1");
    nocsv.format = "csv";
    RunResult nc = run("rank2", nocsv);
    CHECK(nc.code == 1);
    CHECK(nc.err.find("no CSV form") != std::string::npos);

    // no cyclic witness at all: the scan cannot start
    RunConfig ident = with_matrix("1 0; 0 1");
    RunResult iw = run("delta", ident);
    CHECK(iw.code == 1);
    CHECK_FALSE(iw.err.empty());

    // conjugated cubic companion: filters pass, witness out of reach
    RunConfig unk = with_matrix("-599 356 2967; 613 -361 -3026; -194 115 960");
    unk.bound = 2;
    RunResult lax = run("rank", unk);
    CHECK(lax.code == 0);
    unk.strict = true;
    RunResult strict = run("rank", unk);
    CHECK(strict.code == 2);
    unk.format = "json";
    CHECK(json::parse(run("rank", unk).out)["results"]["verdict"] == "Unknown");
}

TEST_CASE("file input matches inline input") {
    const char* path = "test_cli_matrix.tmp";
    {
        std::ofstream f(path);
        f << "[[0,1],\n [1,1]]\n";
    }
    RunConfig from_file;
    from_file.file = path;
    from_file.format = "json";
    RunConfig inline_cfg = with_matrix("0 1; 1 1");
    inline_cfg.format = "json";
    CHECK(run("rank2", from_file).out == run("rank2", inline_cfg).out);
    std::remove(path);

    RunConfig missing;
    missing.file = "does_not_exist.tmp";
    CHECK(run("rank2", missing).code == 1);
}

TEST_CASE("seeded unimodular generator") {
    CHECK(mtr::random_unimodular(3, 0, 123) == IntMatrix::identity(3));
    CHECK(mtr::random_unimodular(3, 12, 99) == mtr::random_unimodular(3, 12, 99));
    CHECK(mtr::random_unimodular(3, 12, 99) != mtr::random_unimodular(3, 12, 100));

    mtr::Rng rng(0x5eed7002);
    for (int t = 0; t < 1000; ++t) {
        std::size_t d = static_cast<std::size_t>(1 + t % 4);
        IntMatrix m = mtr::random_unimodular(d, 12, rng);
        Int dm = mtr::testutil::cofactor_det(m);
        CHECK((dm == 1 || dm == -1));
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "mtr/errors.hpp"
#include "mtr/linalg.hpp"
#include "mtr/matrix.hpp"
#include "mtr/poly.hpp"
#include "mtr/rank2.hpp"
#include "mtr/rng.hpp"
#include "testutil.hpp"

using mtr::CyclicWitness;
using mtr::Int;
using mtr::IntMatrix;
using mtr::Poly;
using mtr::RankVerdict;
using mtr::Vec;
using mtr::testutil::TestRng;

namespace {

const IntMatrix kFib({{0, 1}, {1, 1}});
const IntMatrix kShear({{1, 2}, {0, 1}});

IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b) {
    std::size_t n = a.rows() + b.rows();
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            m.at(a.rows() + i, a.cols() + j) = b.at(i, j);
    return m;
}

IntMatrix unimodular_inverse(const IntMatrix& u) {
    Int d = mtr::det(u);
    REQUIRE((d == 1 || d == -1));
    return mtr::adjugate(u) * d;
}

IntMatrix conjugate(const IntMatrix& m, const IntMatrix& u) {
    return u * m * unimodular_inverse(u);
}

Vec vec2(long x, long y) { return Vec{Int(x), Int(y)}; }

} // namespace

TEST_CASE("companion matrices") {
    IntMatrix fib = mtr::companion_of(Poly({-1, -1, 1}));
    CHECK(fib == kFib);

    IntMatrix one = mtr::companion_of(Poly({-5, 1}));
    CHECK(one == IntMatrix({{5}}));

    Poly cubic({1, -2, 0, 1});
    IntMatrix c = mtr::companion_of(cubic);
    CHECK(c.at(0, 2) == -1);
    CHECK(c.at(1, 2) == 2);
    CHECK(c.at(2, 2) == 0);
    CHECK(c.at(1, 0) == 1);
    CHECK(c.at(2, 1) == 1);
    CHECK(mtr::charpoly(c) == cubic);

    CHECK_THROWS_AS(mtr::companion_of(Poly({1, 2})), mtr::PreconditionViolated);
    CHECK_THROWS_AS(mtr::companion_of(Poly({1})), mtr::PreconditionViolated);
}

TEST_CASE("orbit matrices and cyclic vectors") {
    IntMatrix w = mtr::orbit_matrix(kFib, vec2(1, 0));
    CHECK(w == IntMatrix::identity(2));
    CHECK(mtr::is_cyclic(kFib, vec2(1, 0)));
    CHECK(mtr::is_cyclic(kFib, vec2(0, 1)));

    IntMatrix minus_i({{-1, 0}, {0, -1}});
    CHECK_FALSE(mtr::is_cyclic(minus_i, vec2(1, 0)));
    CHECK_FALSE(mtr::is_cyclic(minus_i, vec2(3, -2)));

    CHECK_THROWS_AS(mtr::is_cyclic(IntMatrix({{2, 0}, {0, 1}}), vec2(1, 0)),
                    mtr::NotUnimodular);
    CHECK_THROWS_AS(mtr::make_cyclic_witness(kFib, vec2(2, 0)), mtr::InvalidWitness);

    CyclicWitness cw = mtr::make_cyclic_witness(kFib, vec2(0, 1));
    CHECK(cw.det_w == -1);
    CHECK(cw.w.at(0, 1) == 1);
}

TEST_CASE("canonical enumeration order") {
    auto s1 = mtr::shell_vectors(1, 1);
    REQUIRE(s1.size() == 2);
    CHECK(s1[0] == Vec{Int(1)});
    CHECK(s1[1] == Vec{Int(-1)});

    auto s2 = mtr::shell_vectors(2, 1);
    REQUIRE(s2.size() == 8);
    CHECK(s2[0] == vec2(1, 0));
    CHECK(s2[1] == vec2(-1, 0));
    CHECK(s2[2] == vec2(0, 1));
    CHECK(s2[3] == vec2(1, 1));
    CHECK(s2[4] == vec2(-1, 1));
    CHECK(s2[5] == vec2(0, -1));
    CHECK(s2[6] == vec2(1, -1));
    CHECK(s2[7] == vec2(-1, -1));

    // shell sizes (2r+1)^d - (2r-1)^d, no duplicates
    auto s32 = mtr::shell_vectors(3, 2);
    CHECK(s32.size() == 98);
    std::set<std::vector<Int>> uniq(s32.begin(), s32.end());
    CHECK(uniq.size() == s32.size());
    for (const Vec& v : s32) {
        Int mx = 0;
        for (const Int& x : v)
            if (abs(x) > mx) mx = abs(x);
        CHECK(mx == 2);
    }

    auto box = mtr::box_vectors(2, 2);
    CHECK(box.size() == 25);
    CHECK(box[0] == vec2(0, 0));
    CHECK(box[1] == vec2(1, 0));
    CHECK(box[9] == vec2(2, 0));
}

TEST_CASE("necessary filters") {
    auto good = mtr::necessary_filters(kFib);
    CHECK(good.pass);
    CHECK(good.minpoly_equals_charpoly);
    for (const auto& [p, ok] : good.prime_verdicts) CHECK(ok);

    // shear is cyclic over Q but not modulo 2
    auto sh = mtr::necessary_filters(kShear);
    CHECK_FALSE(sh.pass);
    CHECK(sh.minpoly_equals_charpoly);
    bool p2 = true;
    for (const auto& [p, ok] : sh.prime_verdicts)
        if (p == 2) p2 = ok;
    CHECK_FALSE(p2);
    CHECK_FALSE(sh.reason.empty());

    auto minus_i = mtr::necessary_filters(IntMatrix({{-1, 0}, {0, -1}}));
    CHECK_FALSE(minus_i.pass);
    CHECK_FALSE(minus_i.minpoly_equals_charpoly);

    auto cubic = mtr::necessary_filters(mtr::companion_of(Poly({1, -2, 0, 1})));
    CHECK(cubic.pass);
}

TEST_CASE("cyclic search") {
    auto fib = mtr::cyclic_search(kFib, 1);
    REQUIRE(fib.has_value());
    CHECK(fib->v == vec2(1, 0));
    CHECK(fib->det_w == 1);

    CHECK_FALSE(mtr::cyclic_search(kShear, 50).has_value());
    CHECK_FALSE(mtr::cyclic_search(IntMatrix({{1, 2}, {3, 7}}), 10).has_value());

    auto d1 = mtr::cyclic_search(IntMatrix({{1}}), 3);
    REQUIRE(d1.has_value());
    CHECK(d1->v == Vec{Int(1)});

    auto c3 = mtr::cyclic_search(mtr::companion_of(Poly({1, -2, 0, 1})), 2);
    REQUIRE(c3.has_value());
    CHECK(c3->v == Vec{Int(1), Int(0), Int(0)});
    CHECK(c3->w == IntMatrix::identity(3));
}

TEST_CASE("orbit form matches the pair determinant") {
    auto q = mtr::orbit_form(kFib);
    CHECK(q.a == 1);
    CHECK(q.b == 1);
    CHECK(q.c == -1);
    CHECK(q.disc() == 5);

    auto qs = mtr::orbit_form(kShear);
    CHECK(qs.a == 0);
    CHECK(qs.b == 0);
    CHECK(qs.c == -2);

    TestRng rng(0x5eed3001);
    for (int t = 0; t < 200; ++t) {
        IntMatrix m = mtr::testutil::random_matrix(2, -9, 9, rng);
        auto form = mtr::orbit_form(m);
        Vec v = vec2(rng.range(-6, 6), rng.range(-6, 6));
        IntMatrix pair(2, 2);
        pair.set_col(0, v);
        pair.set_col(1, m.apply(v));
        CHECK(form.eval(v[0], v[1]) == mtr::det(pair));
    }
}

TEST_CASE("rank decision for pinned 2x2 inputs") {
    auto fib = mtr::decide_rank2_d2(kFib);
    CHECK(fib.verdict == RankVerdict::Rank2);
    REQUIRE(fib.witness.has_value());
    CHECK(fib.witness->v == vec2(1, 0));

    auto twos = mtr::decide_rank2_d2(IntMatrix({{2, 1}, {1, 1}}));
    CHECK(twos.verdict == RankVerdict::Rank2);
    REQUIRE(twos.witness.has_value());
    CHECK(twos.witness->v == vec2(1, 0));

    CHECK(mtr::decide_rank2_d2(kShear).verdict == RankVerdict::Rank3);
    CHECK_FALSE(mtr::decide_rank2_d2(kShear).witness.has_value());
    CHECK(mtr::decide_rank2_d2(IntMatrix::identity(2)).verdict == RankVerdict::Rank3);
    CHECK(mtr::decide_rank2_d2(IntMatrix({{-1, 0}, {0, -1}})).verdict ==
          RankVerdict::Rank3);
    CHECK(mtr::decide_rank2_d2(IntMatrix({{1, 2}, {3, 7}})).verdict ==
          RankVerdict::Rank3);

    auto rot = mtr::decide_rank2_d2(IntMatrix({{0, -1}, {1, 0}}));
    CHECK(rot.verdict == RankVerdict::Rank2);

    CHECK_THROWS_AS(mtr::decide_rank2_d2(IntMatrix::identity(3)), mtr::WrongDimension);
}

TEST_CASE("rank decision survives conjugation off the small shells") {
    // Conjugating moves witnesses far from the origin, forcing each
    // discriminant branch to do real work.
    struct Pin {
        IntMatrix m;
        RankVerdict verdict;
    };
    const std::vector<Pin> pins = {
        {kFib, RankVerdict::Rank2},                          // disc 5, cycle walk
        {IntMatrix({{1, 2}, {3, 7}}), RankVerdict::Rank3}, // disc 60, cycle walk
        {IntMatrix({{0, -1}, {1, 0}}), RankVerdict::Rank2},  // disc -4, definite
        {IntMatrix({{0, -2}, {2, 0}}), RankVerdict::Rank3},  // disc -16, definite
        {IntMatrix({{1, 0}, {1, 1}}), RankVerdict::Rank2},   // disc 0, degenerate
        {IntMatrix({{1, 0}, {4, 1}}), RankVerdict::Rank3},   // disc 0, degenerate
        {IntMatrix({{0, 1}, {1, 0}}), RankVerdict::Rank2},   // disc 4, split
        {IntMatrix({{0, 0}, {0, 3}}), RankVerdict::Rank3},   // disc 9, split
    };
    mtr::Rng rng(0x5eed3002);
    for (const auto& pin : pins) {
        for (int t = 0; t < 12; ++t) {
            IntMatrix u = mtr::random_unimodular(2, 25, rng);
            auto dec = mtr::decide_rank2_d2(conjugate(pin.m, u));
            CHECK(dec.verdict == pin.verdict);
            if (dec.verdict == RankVerdict::Rank2) {
                REQUIRE(dec.witness.has_value());
                CHECK((dec.witness->det_w == 1 || dec.witness->det_w == -1));
                auto s = mtr::snf(dec.witness->w);
                CHECK(s.d == IntMatrix::identity(2));
            }
        }
    }
}

TEST_CASE("decision agrees with exhaustive search on random unimodular matrices") {
    mtr::Rng rng(0x5eed3003);
    int rank2_seen = 0, rank3_seen = 0;
    for (int t = 0; t < 150; ++t) {
        IntMatrix m = mtr::random_unimodular(2, rng.range(1, 12), rng);
        auto dec = mtr::decide_rank2_d2(m);
        auto found = mtr::cyclic_search(m, 8);
        if (found) {
            CHECK(dec.verdict == RankVerdict::Rank2);
            ++rank2_seen;
        }
        if (dec.verdict == RankVerdict::Rank3) {
            CHECK_FALSE(found.has_value());
            ++rank3_seen;
        }
        long expect = (dec.verdict == RankVerdict::Rank2) ? 2 : 3;
        CHECK(mtr::f2_mapping_torus_rank(m) == expect);
    }
    // the sample must exercise both outcomes to mean anything
    CHECK(rank2_seen > 20);
    CHECK(rank3_seen > 5);
}

TEST_CASE("filters are sound for found witnesses") {
    TestRng rng(0x5eed3004);
    int witnessed = 0;
    for (int t = 0; t < 120; ++t) {
        std::size_t d = static_cast<std::size_t>(rng.range(2, 4));
        IntMatrix m = mtr::testutil::random_matrix(d, -4, 4, rng);
        if (auto w = mtr::cyclic_search(m, 2)) {
            ++witnessed;
            auto rep = mtr::necessary_filters(m);
            CHECK(rep.pass);
            CHECK(mtr::lattice_index(w->w) == Int(1));
        }
    }
    CHECK(witnessed > 10);
}

TEST_CASE("vrank counts rational canonical blocks") {
    CHECK(mtr::vrank(kFib) == 2);
    CHECK(mtr::vrank(mtr::companion_of(Poly({1, -2, 0, 1}))) == 2);
    CHECK(mtr::vrank(kShear) == 2);
    CHECK(mtr::vrank(IntMatrix::identity(2)) == 3);
    CHECK(mtr::vrank(IntMatrix::identity(3)) == 4);
    CHECK(mtr::vrank(block_diag(kFib, kFib)) == 3);

    IntMatrix mixed = block_diag(kFib, mtr::companion_of(Poly({1, -3, 1})));
    CHECK(mtr::vrank(mixed) == 2);

    mtr::Rng rng(0x5eed3005);
    const IntMatrix cases[] = {block_diag(kFib, kFib), mixed, IntMatrix::identity(3)};
    for (const IntMatrix& m : cases) {
        long base = mtr::vrank(m);
        for (int t = 0; t < 10; ++t) {
            IntMatrix u = mtr::random_unimodular(m.rows(), 15, rng);
            CHECK(mtr::vrank(conjugate(m, u)) == base);
        }
        CHECK(mtr::vrank(m.transpose()) == base);
    }
}

TEST_CASE("rank reports") {
    auto fib = mtr::rank_report(kFib);
    CHECK(fib.verdict == RankVerdict::Rank2);
    CHECK(fib.lower_bound == 2);
    CHECK(fib.upper_bound == 2);
    CHECK(fib.witness.has_value());
    CHECK(fib.filters.pass);

    auto hard = mtr::rank_report(IntMatrix({{1, 2}, {3, 7}}));
    CHECK(hard.verdict == RankVerdict::Rank3);
    CHECK(hard.lower_bound == 3);
    CHECK(hard.upper_bound == 3);
    CHECK(hard.filters.pass);   // filters are necessary, not sufficient
    CHECK(hard.vrank == 2);

    auto cubic = mtr::rank_report(mtr::companion_of(Poly({1, -2, 0, 1})), 4);
    CHECK(cubic.verdict == RankVerdict::Rank2);
    CHECK(cubic.witness.has_value());
    CHECK(cubic.upper_bound == 2);

    auto dbl = mtr::rank_report(block_diag(kFib, kFib), 4);
    CHECK(dbl.verdict == RankVerdict::RankAtLeast3);
    CHECK_FALSE(dbl.witness.has_value());
    CHECK(dbl.vrank == 3);
    CHECK(dbl.lower_bound == 3);
    CHECK(dbl.upper_bound == 3);
    CHECK_FALSE(dbl.filters.pass);
    CHECK_FALSE(dbl.filters.reason.empty());

    auto id3 = mtr::rank_report(IntMatrix::identity(3), 2);
    CHECK(id3.verdict == RankVerdict::RankAtLeast3);
    CHECK(id3.lower_bound == 4);
    CHECK(id3.upper_bound == 4);

    auto d1 = mtr::rank_report(IntMatrix({{1}}));
    CHECK(d1.verdict == RankVerdict::Rank2);
    CHECK(d1.witness.has_value());

    // coprime blocks: decisive or not, the bounds must stay consistent
    auto mixed = mtr::rank_report(block_diag(kFib, mtr::companion_of(Poly({1, -3, 1}))), 3);
    CHECK(mixed.lower_bound <= mixed.upper_bound);
    CHECK(mixed.upper_bound <= 5);
    if (mixed.verdict == RankVerdict::Rank2) CHECK(mixed.witness.has_value());

    CHECK_THROWS_AS(mtr::rank_report(IntMatrix(2, 3)), mtr::NonSquare);
}

TEST_CASE("mapping torus rank for the free-fiber case") {
    CHECK(mtr::f2_mapping_torus_rank(kFib) == 2);
    CHECK(mtr::f2_mapping_torus_rank(kShear) == 3);
    CHECK(mtr::f2_mapping_torus_rank(IntMatrix({{2, 1}, {1, 1}})) == 2);
    CHECK(mtr::f2_mapping_torus_rank(IntMatrix({{1, 2}, {3, 7}})) == 3);
    CHECK_THROWS_AS(mtr::f2_mapping_torus_rank(IntMatrix::identity(3)),
                    mtr::WrongDimension);
}

TEST_CASE("verdict names") {
    CHECK(mtr::to_string(RankVerdict::Rank2) == "Rank2");
    CHECK(mtr::to_string(RankVerdict::Rank3) == "Rank3");
    CHECK(mtr::to_string(RankVerdict::RankAtLeast3) == "RankAtLeast3");
    CHECK(mtr::to_string(RankVerdict::Unknown) == "Unknown");
}

#include <doctest.h>

#include <random>

#include "subshift/words.hpp"

using namespace subshift;

namespace {
ParamSeq p22() { return ParamSeq::from_list({2, 2}); }
}  // namespace

TEST_SUITE_BEGIN("words");

TEST_CASE("lengths at n=(2,2)") {
    WordFactory f(p22());
    CHECK(f.length_L(0) == 1);
    CHECK(f.length_L(1) == 2049);
    CHECK(f.length_L(2) == 4198401);
    // L_k / L_{k+1} < 1/n_k
    CHECK(rat(f.length_L(1), f.length_L(2)) < rat(1, 2));
}

TEST_CASE("level-1 words have the documented shapes") {
    WordFactory f(p22());
    // a_{1,1} = (a_{0,1}^64 a_{0,2}^64)^16, a_{1,2} = (a_{0,1}^256 a_{0,2}^256)^4
    CHECK(f.feldman(1, 1)->length() == 2048);
    CHECK(f.feldman(1, 2)->length() == 2048);
    Seq a11 = f.feldman(1, 1)->materialize();
    CHECK(a11.size() == 2048);
    for (std::size_t i = 0; i < 64; ++i) CHECK(a11[i] == 0);
    for (std::size_t i = 64; i < 128; ++i) CHECK(a11[i] == 1);
    CHECK(a11[128] == 0);
    Seq a12 = f.feldman(1, 2)->materialize();
    for (std::size_t i = 0; i < 256; ++i) CHECK(a12[i] == 0);
    CHECK(a12[256] == 1);

    // b_{1,1} = a_{1,1} c_0; c_1 = c_0^2047 a_{0,1} a_{0,2}
    Seq b11 = f.extended(1, 1)->materialize();
    CHECK(b11.size() == 2049);
    CHECK(Seq(b11.begin(), b11.end() - 1) == a11);
    CHECK(b11.back() == 2);
    Seq c1 = f.cword(1)->materialize();
    CHECK(c1.size() == 2049);
    for (std::size_t i = 0; i < 2047; ++i) CHECK(c1[i] == 2);
    CHECK(c1[2047] == 0);
    CHECK(c1[2048] == 1);
}

TEST_CASE("level-0 words are terminals") {
    WordFactory f(p22());
    CHECK(f.feldman(0, 1)->length() == 1);
    CHECK(f.feldman(0, 2)->materialize() == Seq{1});
    CHECK(f.cword(0)->materialize() == Seq{2});
}

TEST_CASE("length at n=(2,3)") {
    WordFactory f(ParamSeq::from_list({2, 3}));
    CHECK(f.length_L(1) == 32769);  // 1 + 2^15
    CHECK(f.extended(1, 3)->length() == 32769);
}

TEST_CASE("random access examples") {
    WordFactory f(p22());
    auto b11 = f.extended(1, 1);
    CHECK(b11->symbol_at(0) == 0);
    CHECK(b11->symbol_at(2048) == 2);
    CHECK(f.cword(1)->symbol_at(2047) == 0);
    CHECK_THROWS(b11->symbol_at(2049));
    CHECK_THROWS(b11->symbol_at(Int(-1)));
}

TEST_CASE("extract examples and oracle agreement") {
    WordFactory f(p22());
    auto b11 = f.extended(1, 1);
    CHECK(b11->extract(0, 3) == Seq({0, 0, 0}));
    CHECK(b11->extract(0, 0) == Seq{});
    CHECK(f.cword(1)->extract(2046, 3) == Seq({2, 0, 1}));
    CHECK_THROWS(b11->extract(2047, 3));

    std::mt19937_64 rng(7);
    auto c2 = f.cword(2);
    for (int t = 0; t < 20; ++t) {
        std::uniform_int_distribution<long> ds(0, 4198300);
        std::uniform_int_distribution<std::size_t> dl(0, 100);
        long s = ds(rng);
        std::size_t l = dl(rng);
        Seq got = c2->extract(s, l);
        REQUIRE(got.size() == l);
        for (std::size_t j = 0; j < l; ++j)
            CHECK(got[j] == c2->symbol_at(Int(s) + static_cast<long>(j)));
    }
}

TEST_CASE("symbol_at agrees with full materialization at level 1") {
    WordFactory f(p22());
    for (auto w : {f.extended(1, 1), f.extended(1, 2), f.cword(1)}) {
        Seq m = w->materialize();
        for (std::size_t i = 0; i < m.size(); ++i)
            CHECK(w->symbol_at(Int(static_cast<unsigned long>(i))) == m[i]);
    }
}

TEST_CASE("orbit prefixes nest") {
    WordFactory f(p22());
    auto b2 = f.orbit_prefix(Tower::B, 2).word;
    auto c2 = f.orbit_prefix(Tower::C, 2).word;
    CHECK(b2->extract(0, 2049) == f.extended(1, 1)->materialize());
    CHECK(c2->extract(0, 2049) == f.cword(1)->materialize());
}

TEST_CASE("equal lengths across a level") {
    WordFactory f(p22());
    for (long k : {1L, 2L}) {
        Int L = f.length_L(k);
        CHECK(f.extended(k, 1)->length() == L);
        CHECK(f.extended(k, 2)->length() == L);
        CHECK(f.cword(k)->length() == L);
    }
}

TEST_CASE("materialization cap is enforced") {
    WordFactory f(p22());
    CHECK_THROWS(f.cword(2)->materialize(1000));
    CHECK_THROWS(f.cword(2)->extract(0, 2000, 1000));
}

TEST_CASE("gap scans") {
    WordFactory f(p22());
    auto g0 = f.min_gap(Seq{0}, 2);
    REQUIRE(g0.max_gap.has_value());
    CHECK(*g0.max_gap <= 2 * f.length_L(1));

    auto gb = f.min_gap(f.extended(1, 1)->materialize(), 2);
    REQUIRE(gb.max_gap.has_value());
    CHECK(*gb.max_gap <= 2 * f.length_L(2));

    auto gw = f.min_gap(f.extended(2, 1)->materialize(), 2);
    CHECK_FALSE(gw.max_gap.has_value());
    CHECK(gw.occurrences == 1);

    CHECK_THROWS(f.min_gap(Seq{3}, 1));  // symbol never occurs
}

TEST_CASE("word DAGs stay small") {
    WordFactory f(p22());
    CHECK(f.extended(2, 1)->node_count() < 64);
    WordFactory big(ParamSeq::from_list({4, 4, 4}));
    CHECK(big.length_L(3) > Int("100000000000000000"));
    CHECK(big.extended(3, 1)->node_count() < 256);  // never materialized
}

TEST_CASE("symbol names") {
    auto p = p22();
    CHECK(symbol_name(p, 0) == "a0_1");
    CHECK(symbol_name(p, 1) == "a0_2");
    CHECK(symbol_name(p, 2) == "c0");
}

TEST_SUITE_END();

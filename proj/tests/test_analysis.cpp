#include <doctest.h>

#include <random>
#include <set>

#include "subshift/analysis.hpp"

using namespace subshift;

namespace {

Seq rnd(std::mt19937_64& rng, std::size_t len, int alphabet) {
    std::uniform_int_distribution<int> d(0, alphabet - 1);
    Seq w(len);
    for (auto& s : w) s = static_cast<Sym>(d(rng));
    return w;
}

Int distinct_brute(const Seq& s, std::size_t n) {
    std::set<Seq> seen;
    for (std::size_t i = 0; i + n <= s.size(); ++i)
        seen.insert(Seq(s.begin() + i, s.begin() + i + n));
    return Int(static_cast<unsigned long>(seen.size()));
}

}  // namespace

TEST_SUITE_BEGIN("analysis");

TEST_CASE("hash route, automaton route and brute force agree") {
    std::mt19937_64 rng(201);
    for (int t = 0; t < 60; ++t) {
        std::uniform_int_distribution<std::size_t> dl(1, 300);
        int alphabet = 2 + t % 4;
        Seq s = rnd(rng, dl(rng), alphabet);
        auto counts = distinct_factor_counts(s, alphabet, std::min<std::size_t>(s.size(), 12));
        for (std::size_t n = 1; n <= std::min<std::size_t>(s.size(), 12); ++n) {
            Int want = distinct_brute(s, n);
            CHECK(distinct_windows_hash(s, n) == want);
            CHECK(counts[n] == want);
        }
    }
}

TEST_CASE("right-special accounting identity on random strings") {
    std::mt19937_64 rng(202);
    for (int t = 0; t < 60; ++t) {
        Seq s = rnd(rng, 80 + t, 3);
        for (std::size_t n : {1u, 2u, 3u, 5u}) {
            auto rs = right_special(s, n);
            CHECK(distinct_windows_hash(s, n + 1) == rs.excess + rs.inner_distinct);
            CHECK(rs.inner_distinct <= distinct_windows_hash(s, n));
            CHECK(rs.count <= rs.excess);
        }
    }
}

TEST_CASE("double bracket membership") {
    Seq ab{0, 1};
    CHECK(in_double_bracket(ab, ab));
    CHECK(in_double_bracket(ab, Seq{1, 0}));   // cyclic shift
    CHECK_FALSE(in_double_bracket(ab, Seq{0, 0}));
    CHECK_THROWS(in_double_bracket(ab, Seq{0}));  // length mismatch
}

TEST_CASE("double bracket has at most |omega| members, all cyclic windows") {
    std::mt19937_64 rng(203);
    for (int t = 0; t < 40; ++t) {
        std::uniform_int_distribution<std::size_t> dl(1, 24);
        Seq omega = rnd(rng, dl(rng), 2);
        Seq oo = omega;
        oo.insert(oo.end(), omega.begin(), omega.end());
        std::set<Seq> members;
        for (std::size_t i = 0; i + omega.size() <= oo.size(); ++i) {
            Seq w(oo.begin() + i, oo.begin() + i + omega.size());
            CHECK(in_double_bracket(omega, w));
            members.insert(w);
        }
        CHECK(members.size() <= omega.size());
    }
}

TEST_CASE("bracket matcher equals the naive window loop") {
    std::mt19937_64 rng(204);
    for (int t = 0; t < 30; ++t) {
        Seq omega1 = rnd(rng, 6, 3), omega2 = rnd(rng, 6, 3);
        Seq s = rnd(rng, 200, 3);
        BracketMatcher m({omega1, omega2}, 3);
        auto got = m.window_membership(s);
        REQUIRE(got.size() == s.size() - 5);
        for (std::size_t i = 0; i + 6 <= s.size(); ++i) {
            Seq w(s.begin() + i, s.begin() + i + 6);
            bool want = in_double_bracket(omega1, w) || in_double_bracket(omega2, w);
            CHECK(static_cast<bool>(got[i]) == want);
        }
    }
}

TEST_CASE("block complexity at n=(2,2)") {
    WordFactory f(ParamSeq::from_list({2, 2}));
    auto e1 = complexity_brute(f, 1, 2);
    CHECK(e1.count == 3);  // full alphabet appears
    CHECK(e1.stable);
    // two independent counting routes on the same scan
    Seq scan = f.extended(2, 1)->materialize();
    for (std::size_t n : {2u, 4u, 8u, 16u, 64u}) {
        CHECK(complexity_brute(f, n, 2).count == distinct_windows_automaton(scan, 3, n));
    }
    // window sets only grow with the scanned prefix
    for (std::size_t n : {2u, 8u, 64u}) {
        CHECK(complexity_brute(f, n, 1).count <= complexity_brute(f, n, 2).count);
    }
}

TEST_CASE("structural complexity bound at n=(2,2), k=0") {
    WordFactory f(ParamSeq::from_list({2, 2}));
    auto sb = complexity_structural(f, 0);
    CHECK(sb.m == 64);
    CHECK(sb.closed_form == 768);
    CHECK(sb.itemized_le_closed);
    CHECK(complexity_brute(f, 64, 2).count <= sb.closed_form);
}

TEST_CASE("structural itemized sum stays under the closed form for k <= 3") {
    WordFactory f(ParamSeq::from_list({3, 3, 3, 3}));
    for (long k = 0; k <= 3; ++k) {
        auto sb = complexity_structural(f, k);
        CHECK(sb.itemized_le_closed);
        CHECK(sb.itemized_total <= sb.closed_form);
    }
}

TEST_CASE("interior/multiplicity counting identities at n=(2,2)") {
    WordFactory f(ParamSeq::from_list({2, 2}));
    SUBCASE("C-tower m=0, k=1: formula 2046, true count 2047") {
        auto im = interior_multiplicity(f, 0, 1, Tower::C);
        CHECK(im.interior == 2046);
        CHECK(im.multiplicity == 1);  // empty product at k = m+1
        REQUIRE(im.true_count.has_value());
        CHECK(*im.true_count == 2047);
        CHECK(im.formula_le_true);
    }
    SUBCASE("B-tower m=0, k=1") {
        auto im = interior_multiplicity(f, 0, 1, Tower::B);
        CHECK(im.multiplicity == 1);
        REQUIRE(im.true_count.has_value());
        CHECK(im.formula_le_true);
    }
    SUBCASE("deeper levels keep the lower-bound property") {
        for (Tower tw : {Tower::B, Tower::C}) {
            auto im = interior_multiplicity(f, 0, 2, tw);
            if (im.true_count) CHECK(im.formula_le_true);
            auto im1 = interior_multiplicity(f, 1, 2, tw);
            if (im1.true_count) CHECK(im1.formula_le_true);
        }
    }
}

TEST_CASE("frequency report fixtures at n=(2,2)") {
    WordFactory f(ParamSeq::from_list({2, 2}));
    std::vector<Seq> b1f = {f.extended(1, 1)->materialize(), f.extended(1, 2)->materialize()};
    auto rep = frequency(f, Tower::B, b1f, "[[B_1^F]]", 2);
    CHECK(rep.N == 4198401);
    CHECK(rep.freq == rat_parse("4134815/4198401"));
    CHECK(rep.tail_discarded == 2048);
    CHECK(rep.freq <= 1);
}

TEST_CASE("disjoint target frequencies sum to at most 1") {
    WordFactory f(ParamSeq::from_list({2, 2}));
    auto r1 = frequency(f, Tower::B, {f.extended(1, 1)->materialize()}, "[[b11]]", 2);
    auto r2 = frequency(f, Tower::B, {f.extended(1, 2)->materialize()}, "[[b12]]", 2);
    CHECK(r1.freq + r2.freq <= 1);
}

TEST_CASE("asequal gap fixtures at n=(2,2)") {
    WordFactory f(ParamSeq::from_list({2, 2}));
    auto g = asequal_gap(f, 1, 1, 2, 2);
    CHECK(g.diff == rat_parse("1/4198401"));
    CHECK(g.dn_bound == 1);  // 2/n_1 with n_1 = 2
    auto g_same = asequal_gap(f, 1, 1, 1, 2);
    CHECK(g_same.diff == 0);
    auto g_swap = asequal_gap(f, 1, 2, 1, 2);
    CHECK(g_swap.diff == g.diff);
}

TEST_SUITE_END();

#include <doctest.h>

#include <random>

#include "subshift/fbar.hpp"

using namespace subshift;

namespace {

Seq rnd(std::mt19937_64& rng, std::size_t len, int alphabet) {
    std::uniform_int_distribution<int> d(0, alphabet - 1);
    Seq w(len);
    for (auto& s : w) s = static_cast<Sym>(d(rng));
    return w;
}

// Independent oracle: enumerate every subsequence of the shorter word and
// keep the longest one that embeds in the other.
std::size_t lcs_brute(Seq x, Seq y) {
    if (x.size() > y.size()) std::swap(x, y);
    std::size_t best = 0;
    for (std::uint32_t mask = 0; mask < (1u << x.size()); ++mask) {
        Seq sub;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (mask & (1u << i)) sub.push_back(x[i]);
        std::size_t j = 0;
        for (Sym c : y)
            if (j < sub.size() && sub[j] == c) ++j;
        if (j == sub.size()) best = std::max(best, sub.size());
    }
    return best;
}

}  // namespace

TEST_SUITE_BEGIN("fbar");

TEST_CASE("point examples") {
    Seq ab{0, 1}, aa{0, 0}, bb{1, 1}, aba{0, 1, 0}, ba{1, 0};
    CHECK(fbar(ab, ab).fbar == 0);
    auto disjoint = fbar(aa, bb);
    CHECK(disjoint.pi == 0);
    CHECK(disjoint.fbar == 1);
    auto m = fbar(aba, ba);
    CHECK(lcs_dp(aba, ba) == 2);
    CHECK(m.pi == 4);
    CHECK(m.fbar == rat_parse("1/5"));
    CHECK(m.fbar_c == rat_parse("4/5"));
}

TEST_CASE("empty inputs are rejected") {
    Seq a{0}, e;
    CHECK_THROWS(fbar(a, e));
    CHECK_THROWS(fbar(e, a));
}

TEST_CASE("DP equals the exhaustive oracle") {
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<std::size_t> dl(1, 12);
    for (int t = 0; t < 1200; ++t) {
        Seq x = rnd(rng, dl(rng), 4);
        Seq y = rnd(rng, std::min<std::size_t>(24 - x.size(), dl(rng)) + 1, 4);
        if (y.size() > 12) y.resize(12);
        CHECK(lcs_dp(x, y) == lcs_brute(x, y));
    }
}

TEST_CASE("bit-parallel equals DP, including across the 64-bit word boundary") {
    std::mt19937_64 rng(102);
    for (std::size_t len : {1u, 63u, 64u, 65u, 127u, 129u, 1000u}) {
        for (int t = 0; t < 10; ++t) {
            Seq x = rnd(rng, len, 7);
            Seq y = rnd(rng, (len * 3) / 2 + 1, 7);
            CHECK(lcs_bitparallel(x, y) == lcs_dp(x, y));
        }
    }
}

TEST_CASE("metric properties on random samples") {
    std::mt19937_64 rng(103);
    for (int t = 0; t < 200; ++t) {
        std::uniform_int_distribution<std::size_t> dl(1, 40);
        Seq x = rnd(rng, dl(rng), 3), y = rnd(rng, dl(rng), 3), z = rnd(rng, dl(rng), 3);
        auto fxy = fbar(x, y).fbar, fyx = fbar(y, x).fbar;
        CHECK(fxy == fyx);
        CHECK(fbar(x, x).fbar == 0);
        CHECK(fxy + fbar(y, z).fbar >= fbar(x, z).fbar);  // normalized indel metric
    }
}

TEST_CASE("doubling both words never shrinks the match ratio") {
    std::mt19937_64 rng(104);
    for (int t = 0; t < 100; ++t) {
        std::uniform_int_distribution<std::size_t> dl(1, 30);
        Seq x = rnd(rng, dl(rng), 3), y = rnd(rng, dl(rng), 3);
        Seq xx = x, yy = y;
        xx.insert(xx.end(), x.begin(), x.end());
        yy.insert(yy.end(), y.begin(), y.end());
        CHECK(fbar(xx, yy).fbar_c >= fbar(x, y).fbar_c);
    }
}

TEST_CASE("alignment recovery is a valid optimal match") {
    std::mt19937_64 rng(105);
    for (int t = 0; t < 50; ++t) {
        std::uniform_int_distribution<std::size_t> dl(1, 60);
        Seq x = rnd(rng, dl(rng), 3), y = rnd(rng, dl(rng), 3);
        auto m = fbar(x, y, false, true);
        REQUIRE(m.alignment.has_value());
        CHECK(Int(2 * m.alignment->size()) == m.pi);
        std::size_t pi = 0, pj = 0;
        bool first = true;
        for (auto [i, j] : *m.alignment) {
            CHECK(x[i] == y[j]);
            if (!first) {
                CHECK(i > pi);
                CHECK(j > pj);
            }
            pi = i, pj = j, first = false;
        }
    }
}

TEST_CASE("gerber deletion lemma") {
    Seq b{0, 1, 2, 0, 1, 2};
    SUBCASE("no deletions, identical words") {
        auto g = gerber_check(b, b, {}, {}, rat(1, 100));
        CHECK(g.on_b.fbar == 0);
        CHECK(g.on_a.fbar == 0);
        CHECK(g.slack == rat(2, 100));
        CHECK(g.pass);
    }
    SUBCASE("deletion budget is enforced") {
        // floor(rho*(n+m)) = floor(12/100) = 0 but one index is deleted
        CHECK_THROWS(gerber_check(b, b, {0}, {}, rat(1, 100)));
        CHECK_THROWS(gerber_check(b, b, {99}, {}, rat(1, 2)));  // out of range
    }
    SUBCASE("random cases always satisfy the inequality") {
        std::mt19937_64 rng(106);
        for (int t = 0; t < 300; ++t) {
            std::uniform_int_distribution<std::size_t> dl(2, 120);
            Seq b1 = rnd(rng, dl(rng), 4), b2 = rnd(rng, dl(rng), 4);
            std::vector<std::size_t> d1, d2;
            for (std::size_t i = 0; i < b1.size(); i += 3) d1.push_back(i);
            for (std::size_t i = 1; i < b2.size(); i += 4) d2.push_back(i);
            if (d1.size() >= b1.size()) d1.pop_back();
            Rat rho = rat(Int(static_cast<unsigned long>(d1.size() + d2.size())),
                          Int(static_cast<unsigned long>(b1.size() + b2.size())));
            auto g = gerber_check(b1, b2, d1, d2, rho);
            CHECK(g.pass);
            CHECK(g.slack >= 0);
        }
    }
}

TEST_CASE("word-level fixtures at n=(2,2)") {
    WordFactory f(ParamSeq::from_list({2, 2}));
    CHECK(fbar_words(f, {'a', 1, 1, 1}, {'a', 1, 1, 1}).fbar == 0);
    auto fa = fbar_words(f, {'a', 1, 1, 1}, {'a', 1, 2, 1});
    auto fb = fbar_words(f, {'b', 1, 1, 1}, {'b', 1, 2, 1});
    CHECK(fa.fbar == rat_parse("3/8"));
    CHECK(fb.fbar == rat_parse("256/683"));
    // deletion lemma with the two c_0 symbols actually deleted
    CHECK(fb.fbar >= fa.fbar - 2 * rat(2, 2 * 2049));
}

TEST_CASE("cap violations report the required size") {
    WordFactory f(ParamSeq::from_list({2, 2}));
    CHECK_THROWS_AS(fbar_words(f, {'b', 2, 1, 1}, {'b', 2, 2, 1}, 1000),
                    std::length_error);
}

TEST_CASE("lb_test") {
    WordFactory f(ParamSeq::from_list({2, 2}));
    Seq b11 = f.extended(1, 1)->materialize();
    Seq b12 = f.extended(1, 2)->materialize();
    SUBCASE("singleton always passes") {
        auto r = lb_test({b11}, rat(1, 1000000));
        CHECK(r.pass);
        CHECK(r.max_fbar == 0);
    }
    SUBCASE("distant pair fails at eps = 1/10") {
        auto r = lb_test({b11, b12}, rat(1, 10));
        CHECK_FALSE(r.pass);
        CHECK(r.max_fbar == rat_parse("256/683"));
        CHECK(r.witness == std::make_pair<std::size_t, std::size_t>(0, 1));
    }
    SUBCASE("mixed lengths are rejected") {
        Seq shorter(b11.begin(), b11.begin() + 10);
        CHECK_THROWS(lb_test({b11, shorter}, rat(1, 2)));
    }
}

TEST_SUITE_END();

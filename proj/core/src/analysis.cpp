#include "subshift/analysis.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>
#include <unordered_map>

namespace subshift {

namespace {

constexpr std::uint64_t kMod = (1ull << 61) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % kMod);
}

struct RollingHasher {
    std::uint64_t base1, base2;
    std::uint64_t pow1, pow2;  // base^(n-1) for removal

    RollingHasher(std::size_t n, std::uint64_t b1 = 1'000'003, std::uint64_t b2 = 998'244'353)
        : base1(b1), base2(b2), pow1(1), pow2(1) {
        for (std::size_t i = 1; i < n; ++i) {
            pow1 = mulmod(pow1, base1);
            pow2 = mulmod(pow2, base2);
        }
    }
};

bool window_equal(const Seq& s, std::size_t i, std::size_t j, std::size_t n) {
    return std::memcmp(s.data() + i, s.data() + j, n * sizeof(Sym)) == 0;
}

// Iterates all windows of length n; calls visit(start, is_new_distinct_rep).
// Representative starts are verified by exact comparison, so the distinct
// grouping is collision-free.
template <typename Visit>
void group_windows(const Seq& s, std::size_t n, Visit&& visit) {
    if (n == 0 || s.size() < n) return;
    RollingHasher rh(n);
    std::uint64_t h1 = 0, h2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        h1 = (mulmod(h1, rh.base1) + s[i] + 1) % kMod;
        h2 = (mulmod(h2, rh.base2) + s[i] + 1) % kMod;
    }
    // key: combined hash -> verified representative starts
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> reps;
    reps.reserve(s.size() - n + 1);
    for (std::size_t i = 0;; ++i) {
        std::uint64_t key = h1 ^ (h2 << 1) ^ (h2 >> 63);
        auto& bucket = reps[key];
        std::size_t rep = i;
        bool fresh = true;
        for (std::size_t r : bucket)
            if (window_equal(s, r, i, n)) {
                rep = r;
                fresh = false;
                break;
            }
        if (fresh) bucket.push_back(i);
        visit(i, rep, fresh);
        if (i + n == s.size()) break;
        h1 = (mulmod(h1 + kMod - mulmod(s[i] + 1, rh.pow1), rh.base1) + s[i + n] + 1) % kMod;
        h2 = (mulmod(h2 + kMod - mulmod(s[i] + 1, rh.pow2), rh.base2) + s[i + n] + 1) % kMod;
    }
}

}  // namespace

Int distinct_windows_hash(const Seq& s, std::size_t n) {
    if (n == 0) throw std::invalid_argument("distinct_windows_hash: n == 0");
    if (s.size() < n) return 0;
    unsigned long distinct = 0;
    group_windows(s, n, [&](std::size_t, std::size_t, bool fresh) {
        if (fresh) ++distinct;
    });
    return Int(distinct);
}

namespace {

struct Sam {
    struct State {
        std::int32_t link;
        std::int32_t len;
    };
    std::vector<State> st;
    std::vector<std::int32_t> trans;  // st.size() x alphabet
    int alphabet;
    std::int32_t last;

    explicit Sam(int a) : alphabet(a) {
        st.push_back({-1, 0});
        trans.assign(static_cast<std::size_t>(a), -1);
        last = 0;
    }

    std::int32_t node(std::int32_t link, std::int32_t len) {
        st.push_back({link, len});
        trans.resize(trans.size() + static_cast<std::size_t>(alphabet), -1);
        return static_cast<std::int32_t>(st.size()) - 1;
    }

    std::int32_t& tr(std::int32_t s, Sym c) {
        return trans[static_cast<std::size_t>(s) * alphabet + c];
    }
    std::int32_t tr(std::int32_t s, Sym c) const {
        return trans[static_cast<std::size_t>(s) * alphabet + c];
    }

    void extend(Sym c) {
        std::int32_t cur = node(0, st[last].len + 1);
        std::int32_t p = last;
        while (p != -1 && tr(p, c) == -1) {
            tr(p, c) = cur;
            p = st[p].link;
        }
        if (p != -1) {
            std::int32_t q = tr(p, c);
            if (st[p].len + 1 == st[q].len) {
                st[cur].link = q;
            } else {
                std::int32_t clone = node(st[q].link, st[p].len + 1);
                for (int a = 0; a < alphabet; ++a) tr(clone, static_cast<Sym>(a)) = tr(q, static_cast<Sym>(a));
                while (p != -1 && tr(p, c) == q) {
                    tr(p, c) = clone;
                    p = st[p].link;
                }
                st[q].link = clone;
                st[cur].link = clone;
            }
        }
        last = cur;
    }

    static Sam build(const Seq& s, int alphabet) {
        Sam sam(alphabet);
        sam.st.reserve(2 * s.size() + 2);
        sam.trans.reserve((2 * s.size() + 2) * static_cast<std::size_t>(alphabet));
        for (Sym c : s) {
            if (c >= alphabet) throw std::invalid_argument("suffix automaton: symbol out of alphabet");
            sam.extend(c);
        }
        return sam;
    }
};

}  // namespace

std::vector<Int> distinct_factor_counts(const Seq& s, int alphabet, std::size_t max_n) {
    Sam sam = Sam::build(s, alphabet);
    // each state covers lengths (len(link), len]; diff-accumulate
    std::vector<long long> diff(std::min(max_n, s.size()) + 2, 0);
    std::size_t cap = diff.size() - 2;
    for (std::size_t i = 1; i < sam.st.size(); ++i) {
        std::size_t lo = static_cast<std::size_t>(sam.st[sam.st[i].link].len) + 1;
        std::size_t hi = static_cast<std::size_t>(sam.st[i].len);
        if (lo > cap) continue;
        hi = std::min(hi, cap);
        diff[lo] += 1;
        diff[hi + 1] -= 1;
    }
    std::vector<Int> out(max_n + 1, 0);
    long long acc = 0;
    for (std::size_t n = 1; n <= cap; ++n) {
        acc += diff[n];
        out[n] = Int(static_cast<long>(acc));
    }
    return out;
}

Int distinct_windows_automaton(const Seq& s, int alphabet, std::size_t n) {
    if (n == 0) throw std::invalid_argument("distinct_windows_automaton: n == 0");
    if (s.size() < n) return 0;
    return distinct_factor_counts(s, alphabet, n)[n];
}

RightSpecialCount right_special(const Seq& s, std::size_t n) {
    if (n == 0 || s.size() <= n)
        throw std::invalid_argument("right_special: need a scan longer than n");
    // per distinct window (representative start): set of observed next symbols
    std::unordered_map<std::size_t, std::vector<Sym>> exts;
    group_windows(s, n, [&](std::size_t i, std::size_t rep, bool) {
        if (i + n >= s.size()) return;  // no right extension inside the scan
        auto& v = exts[rep];
        Sym next = s[i + n];
        if (std::find(v.begin(), v.end(), next) == v.end()) v.push_back(next);
    });
    RightSpecialCount r{0, 0, 0};
    unsigned long count = 0, excess = 0;
    for (const auto& [rep, v] : exts) {
        if (v.size() >= 2) {
            ++count;
            excess += v.size() - 1;
        }
    }
    r.count = Int(count);
    r.excess = Int(excess);
    r.inner_distinct = Int(static_cast<unsigned long>(exts.size()));
    return r;
}

ComplexityEntry complexity_brute(WordFactory& factory, std::size_t n, long K, std::size_t cap) {
    if (n == 0) throw std::invalid_argument("complexity_brute: n == 0");
    Int LK = factory.length_L(K);
    if (LK > static_cast<long>(cap)) throw std::length_error("complexity_brute: scan cap exceeded");
    Seq scan = factory.extended(K, 1)->materialize(cap);
    ComplexityEntry e;
    e.n = n;
    e.prefix_len = LK;
    e.count = distinct_windows_hash(scan, n);
    e.stable = false;
    if (K >= 1) {
        Int Lprev = factory.length_L(K - 1);
        if (Lprev >= static_cast<long>(n)) {
            Seq prev(scan.begin(), scan.begin() + static_cast<long>(Lprev.get_ui()));
            e.stable = distinct_windows_hash(prev, n) == e.count;
        }
    }
    return e;
}

StructuralBound complexity_structural(WordFactory& factory, long k) {
    const ParamSeq& p = factory.params();
    Int nk = p.n(k);
    Int Lk = factory.length_L(k);
    Int e = 2 * p.n(k + 1) + 2;
    if (!e.fits_ulong_p()) throw std::length_error("complexity_structural: exponent too large");
    StructuralBound b;
    b.m = Lk * ipow(nk, e.get_ui());
    b.items["b_repeated_kword"] = Lk * nk;
    b.items["b_kword_boundary"] = b.m * nk;
    b.items["b_tail"] = Lk;
    b.items["c_repeated"] = Lk;
    b.items["c_tail"] = nk * Lk;
    b.items["level_boundaries"] = 4 * b.m;
    b.itemized_total = 0;
    for (const auto& [_, v] : b.items) b.itemized_total += v;
    b.closed_form = b.m * (3 * nk + 6);
    b.itemized_le_closed = b.itemized_total <= b.closed_form;
    return b;
}

bool in_double_bracket(const Seq& omega, const Seq& w) {
    if (omega.size() != w.size()) throw std::invalid_argument("in_double_bracket: length mismatch");
    Seq twice;
    twice.reserve(2 * omega.size());
    twice.insert(twice.end(), omega.begin(), omega.end());
    twice.insert(twice.end(), omega.begin(), omega.end());
    return std::search(twice.begin(), twice.end(), w.begin(), w.end()) != twice.end();
}

struct BracketMatcher::Automaton {
    Sam sam;
    explicit Automaton(Sam s) : sam(std::move(s)) {}
};

BracketMatcher::BracketMatcher(std::vector<Seq> targets, int alphabet) {
    if (targets.empty()) throw std::invalid_argument("BracketMatcher: no targets");
    window_ = targets.front().size();
    if (window_ == 0) throw std::invalid_argument("BracketMatcher: empty target word");
    for (auto& t : targets) {
        if (t.size() != window_) throw std::invalid_argument("BracketMatcher: mixed target lengths");
        Seq twice;
        twice.reserve(2 * t.size());
        twice.insert(twice.end(), t.begin(), t.end());
        twice.insert(twice.end(), t.begin(), t.end());
        automata_.push_back(std::make_shared<Automaton>(Sam::build(twice, alphabet)));
    }
}

std::vector<char> BracketMatcher::window_membership(const Seq& s) const {
    if (s.size() < window_) return {};
    std::vector<char> member(s.size() - window_ + 1, 0);
    for (const auto& aut : automata_) {
        const Sam& sam = aut->sam;
        std::int32_t cur = 0;
        std::size_t matched = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            Sym c = s[i];
            if (c >= sam.alphabet) {
                cur = 0;
                matched = 0;
                continue;
            }
            while (cur != 0 && sam.tr(cur, c) == -1) {
                cur = sam.st[cur].link;
                matched = static_cast<std::size_t>(sam.st[cur].len);
            }
            if (sam.tr(cur, c) != -1) {
                cur = sam.tr(cur, c);
                ++matched;
            } else {
                matched = 0;
            }
            if (matched >= window_ && i + 1 >= window_) member[i + 1 - window_] = 1;
        }
    }
    return member;
}

FrequencyReport frequency(WordFactory& factory, Tower tower, std::vector<Seq> targets,
                          std::string target_name, long k_scan, std::size_t cap) {
    Int N = factory.length_L(k_scan);
    if (N > static_cast<long>(cap)) throw std::length_error("frequency: scan cap exceeded");
    Seq scan = factory.orbit_prefix(tower, k_scan).word->materialize(cap);
    int alphabet = static_cast<int>(factory.params().n(0).get_ui()) + 1;
    BracketMatcher matcher(std::move(targets), alphabet);
    auto member = matcher.window_membership(scan);
    unsigned long count = 0;
    for (char m : member) count += m ? 1 : 0;
    FrequencyReport r;
    r.tower = tower;
    r.target = std::move(target_name);
    r.N = N;
    r.window = matcher.window_length();
    r.count = Int(count);
    r.freq = rat(r.count, r.N);
    r.tail_discarded = Int(static_cast<long>(matcher.window_length())) - 1;
    return r;
}

InteriorMultiplicity interior_multiplicity(WordFactory& factory, long m, long k, Tower tower,
                                           std::size_t cap) {
    if (m >= k) throw std::invalid_argument("interior_multiplicity: need m < k");
    const ParamSeq& p = factory.params();
    Int Lm = factory.length_L(m), Lm1 = factory.length_L(m + 1);
    InteriorMultiplicity r;
    if (tower == Tower::B) {
        Int e = 2 * p.n(m + 1) + 3;
        if (!e.fits_ulong_p()) throw std::length_error("interior_multiplicity: exponent too large");
        r.interior = Lm1 - Lm - Lm * ipow(p.n(m), e.get_ui());
    } else {
        r.interior = Lm1 - Lm * (p.n(m) + 1);
    }
    r.multiplicity = 1;
    for (long i = m + 2; i <= k; ++i) {
        Int ratio = factory.length_L(i) / factory.length_L(i - 1);
        r.multiplicity *= tower == Tower::B ? Int(ratio - 1) : Int(ratio - p.n(i - 1));
    }
    r.product = r.interior * r.multiplicity;
    // true count by enumeration when the scan fits
    if (factory.length_L(k) <= static_cast<long>(cap) && Lm <= static_cast<long>(cap)) {
        std::vector<Seq> targets;
        if (tower == Tower::B) {
            long nm = p.n(m).get_si();
            for (long i = 1; i <= nm; ++i)
                targets.push_back(factory.extended(m, i)->materialize(cap));
        } else {
            targets.push_back(factory.cword(m)->materialize(cap));
        }
        auto rep = frequency(factory, tower, std::move(targets),
                             tower == Tower::B ? "[[B_m^F]]" : "[[c_m]]", k, cap);
        r.true_count = rep.count;
        r.formula_le_true = r.product <= *r.true_count;
    }
    return r;
}

AsequalGap asequal_gap(WordFactory& factory, long k, long m, long j, long k_scan,
                       std::size_t cap) {
    auto fm = frequency(factory, Tower::B, {factory.extended(k, m)->materialize(cap)},
                        "[[b_k,m]]", k_scan, cap);
    auto fj = frequency(factory, Tower::B, {factory.extended(k, j)->materialize(cap)},
                        "[[b_k,j]]", k_scan, cap);
    AsequalGap g;
    g.freq_m = fm.freq;
    g.freq_j = fj.freq;
    g.diff = fm.freq >= fj.freq ? fm.freq - fj.freq : fj.freq - fm.freq;
    g.dn_bound = rat(Int(2), factory.params().n(k));
    g.tail = rat(factory.length_L(k) - 1, fm.N);
    return g;
}

}  // namespace subshift

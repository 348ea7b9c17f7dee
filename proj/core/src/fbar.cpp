#include "subshift/fbar.hpp"

#include <algorithm>
#include <stdexcept>

namespace subshift {

std::size_t lcs_dp(SeqView x, SeqView y) {
    if (x.size() < y.size()) std::swap(x, y);
    // y is the shorter side; one rolling row
    std::vector<std::size_t> row(y.size() + 1, 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::size_t diag = 0;  // row[j] from the previous iteration
        for (std::size_t j = 0; j < y.size(); ++j) {
            std::size_t up = row[j + 1];
            row[j + 1] = x[i] == y[j] ? diag + 1 : std::max(up, row[j]);
            diag = up;
        }
    }
    return row[y.size()];
}

std::size_t lcs_bitparallel(SeqView x, SeqView y) {
    if (x.empty() || y.empty()) return 0;
    Sym maxsym = 0;
    for (Sym s : x) maxsym = std::max(maxsym, s);
    const std::size_t m = x.size();
    const std::size_t words = (m + 63) / 64;
    // match masks over positions of x, one mask per symbol
    std::vector<std::uint64_t> pm(static_cast<std::size_t>(maxsym + 1) * words, 0);
    for (std::size_t i = 0; i < m; ++i)
        pm[static_cast<std::size_t>(x[i]) * words + i / 64] |= 1ull << (i % 64);

    std::vector<std::uint64_t> v(words, ~0ull), add(words), sub(words);
    for (Sym c : y) {
        const std::uint64_t* mask =
            c <= maxsym ? pm.data() + static_cast<std::size_t>(c) * words : nullptr;
        unsigned carry = 0, borrow = 0;
        for (std::size_t w = 0; w < words; ++w) {
            std::uint64_t uw = mask ? (v[w] & mask[w]) : 0;
            unsigned __int128 s =
                static_cast<unsigned __int128>(v[w]) + uw + carry;
            add[w] = static_cast<std::uint64_t>(s);
            carry = static_cast<unsigned>(s >> 64);
            unsigned __int128 d =
                static_cast<unsigned __int128>(v[w]) - uw - borrow;
            sub[w] = static_cast<std::uint64_t>(d);
            borrow = (d >> 64) ? 1 : 0;
        }
        for (std::size_t w = 0; w < words; ++w) v[w] = add[w] | sub[w];
    }
    // LCS = number of zero bits among the first m positions of v
    std::size_t zeros = 0;
    for (std::size_t w = 0; w < words; ++w) {
        std::uint64_t bits = ~v[w];
        if (w == words - 1 && m % 64 != 0) bits &= (1ull << (m % 64)) - 1;
        zeros += static_cast<std::size_t>(__builtin_popcountll(bits));
    }
    return zeros;
}

namespace {

bool bitparallel_applicable(SeqView x, SeqView y) {
    Sym maxsym = 0;
    for (Sym s : x) maxsym = std::max(maxsym, s);
    for (Sym s : y) maxsym = std::max(maxsym, s);
    return maxsym < kBitParallelMaxAlphabet;
}

// Hirschberg linear-space recovery of one optimal alignment.
void lcs_forward_row(SeqView x, SeqView y, std::vector<std::size_t>& row) {
    row.assign(y.size() + 1, 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::size_t diag = 0;
        for (std::size_t j = 0; j < y.size(); ++j) {
            std::size_t up = row[j + 1];
            row[j + 1] = x[i] == y[j] ? diag + 1 : std::max(up, row[j]);
            diag = up;
        }
    }
}

void hirschberg(SeqView x, SeqView y, std::size_t xoff, std::size_t yoff,
                std::vector<std::pair<std::size_t, std::size_t>>& out) {
    if (x.empty() || y.empty()) return;
    if (x.size() == 1) {
        for (std::size_t j = 0; j < y.size(); ++j)
            if (y[j] == x[0]) {
                out.emplace_back(xoff, yoff + j);
                return;
            }
        return;
    }
    std::size_t h = x.size() / 2;
    std::vector<std::size_t> fwd, bwd;
    lcs_forward_row(x.subspan(0, h), y, fwd);
    // backward pass on reversed halves
    Seq xr(x.begin() + static_cast<long>(h), x.end());
    Seq yr(y.begin(), y.end());
    std::reverse(xr.begin(), xr.end());
    std::reverse(yr.begin(), yr.end());
    lcs_forward_row(xr, yr, bwd);
    std::size_t best = 0, split = 0;
    for (std::size_t j = 0; j <= y.size(); ++j) {
        std::size_t v = fwd[j] + bwd[y.size() - j];
        if (v > best || j == 0) {
            best = v;
            split = j;
        }
    }
    hirschberg(x.subspan(0, h), y.subspan(0, split), xoff, yoff, out);
    hirschberg(x.subspan(h), y.subspan(split), xoff + h, yoff + split, out);
}

}  // namespace

MatchResult fbar(SeqView x, SeqView y, bool use_bitparallel, bool with_alignment) {
    if (x.empty() || y.empty()) throw std::invalid_argument("fbar: empty input");
    std::size_t lcs = (use_bitparallel && bitparallel_applicable(x, y))
                          ? lcs_bitparallel(x, y)
                          : lcs_dp(x, y);
    MatchResult r;
    r.pi = Int(2 * static_cast<unsigned long>(lcs));
    Int total = Int(static_cast<unsigned long>(x.size() + y.size()));
    r.fbar_c = rat(r.pi, total);
    r.fbar = Rat(1) - r.fbar_c;
    if (with_alignment) {
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        hirschberg(x, y, 0, 0, pairs);
        r.alignment = std::move(pairs);
    }
    return r;
}

GerberResult gerber_check(SeqView b1, SeqView b2, const std::vector<std::size_t>& del1,
                          const std::vector<std::size_t>& del2, const Rat& rho,
                          bool use_bitparallel) {
    auto erase = [](SeqView w, const std::vector<std::size_t>& del) {
        std::vector<bool> drop(w.size(), false);
        for (std::size_t i : del) {
            if (i >= w.size()) throw std::out_of_range("gerber_check: deletion index out of range");
            drop[i] = true;
        }
        Seq out;
        out.reserve(w.size());
        for (std::size_t i = 0; i < w.size(); ++i)
            if (!drop[i]) out.push_back(w[i]);
        return out;
    };
    Int total = Int(static_cast<unsigned long>(b1.size() + b2.size()));
    Rat budget = rho * rat(total, 1);
    Int allowed = budget.get_num() / budget.get_den();  // floor(rho*(n+m))
    if (Int(static_cast<unsigned long>(del1.size() + del2.size())) > allowed)
        throw std::invalid_argument("gerber_check: more deletions than floor(rho*(n+m))");
    Seq a1 = erase(b1, del1), a2 = erase(b2, del2);
    if (a1.empty() || a2.empty())
        throw std::invalid_argument("gerber_check: deletions emptied a word");
    GerberResult r;
    r.on_b = fbar(b1, b2, use_bitparallel);
    r.on_a = fbar(a1, a2, use_bitparallel);
    r.rho = rho;
    r.slack = r.on_b.fbar - (r.on_a.fbar - Rat(2) * rho);
    r.pass = r.slack >= 0;
    return r;
}

LbTestResult lb_test(const std::vector<Seq>& words, const Rat& eps, bool use_bitparallel) {
    if (words.empty()) throw std::invalid_argument("lb_test: empty word set");
    for (const auto& w : words)
        if (w.size() != words.front().size())
            throw std::invalid_argument("lb_test: mixed word lengths");
    LbTestResult r;
    r.max_fbar = Rat(0);
    r.witness = {0, 0};
    for (std::size_t i = 0; i < words.size(); ++i)
        for (std::size_t j = i + 1; j < words.size(); ++j) {
            Rat f = fbar(words[i], words[j], use_bitparallel).fbar;
            ++r.pairs;
            if (f > r.max_fbar) {
                r.max_fbar = f;
                r.witness = {i, j};
            }
        }
    r.pass = r.max_fbar < eps;
    return r;
}

Seq materialize_side(WordFactory& factory, const WordSide& side, std::size_t cap) {
    GrammarWord::Ptr w;
    switch (side.kind) {
        case 'a': w = factory.feldman(side.level, side.index); break;
        case 'b': w = factory.extended(side.level, side.index); break;
        case 'c': w = factory.cword(side.level); break;
        default: throw std::invalid_argument("unknown word kind");
    }
    Int need = w->length() * Int(side.power);
    if (need > static_cast<long>(cap))
        throw std::length_error("materialization cap exceeded; required " + need.get_str());
    Seq one = w->materialize(cap);
    Seq out;
    out.reserve(one.size() * static_cast<std::size_t>(side.power));
    for (long r = 0; r < side.power; ++r) out.insert(out.end(), one.begin(), one.end());
    return out;
}

MatchResult fbar_words(WordFactory& factory, const WordSide& lhs, const WordSide& rhs,
                       std::size_t cap, bool use_bitparallel) {
    Seq x = materialize_side(factory, lhs, cap);
    Seq y = materialize_side(factory, rhs, cap);
    return fbar(x, y, use_bitparallel);
}

}  // namespace subshift

// fbar.hpp -- exact computation of the fbar match metric between symbol
// strings: fbar(x,y) = 1 - |pi|/(m+n) with |pi| = 2 * LCS(x,y).
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "subshift/numeric.hpp"
#include "subshift/words.hpp"

namespace subshift {

using SeqView = std::span<const Sym>;

// Row-rolling dynamic program, O(mn) time, O(min(m,n)) memory.
std::size_t lcs_dp(SeqView x, SeqView y);

// Multi-word bit-vector LCS via carry/borrow column updates. Exact; intended for
// alphabets of at most 64 symbols.
std::size_t lcs_bitparallel(SeqView x, SeqView y);

constexpr int kBitParallelMaxAlphabet = 64;

struct MatchResult {
    Int pi;      // best match size, always even
    Rat fbar_c;  // |pi| / (m+n)
    Rat fbar;    // 1 - fbar_c
    std::optional<std::vector<std::pair<std::size_t, std::size_t>>> alignment;
};

// Exact optimum. use_bitparallel selects the fast path (falls back to the
// plain DP when the alphabet is too wide); results are identical either way.
MatchResult fbar(SeqView x, SeqView y, bool use_bitparallel = false,
                 bool with_alignment = false);

struct GerberResult {
    MatchResult on_b;  // fbar(b1, b2)
    MatchResult on_a;  // fbar(a1, a2) after deletions
    Rat rho;
    Rat slack;  // fbar(b1,b2) - (fbar(a1,a2) - 2 rho)
    bool pass;  // slack >= 0
};

// Deletion lemma check: a1, a2 are b1, b2 with the given (sorted or not)
// index sets removed; total deletions must not exceed floor(rho*(n+m)).
GerberResult gerber_check(SeqView b1, SeqView b2, const std::vector<std::size_t>& del1,
                          const std::vector<std::size_t>& del2, const Rat& rho,
                          bool use_bitparallel = false);

struct LbTestResult {
    bool pass;
    Rat max_fbar;
    std::pair<std::size_t, std::size_t> witness;  // indices of the extremal pair
    std::size_t pairs = 0;
};

// Pairwise fbar over a set of equal-length words; pass iff max < eps.
LbTestResult lb_test(const std::vector<Seq>& words, const Rat& eps,
                     bool use_bitparallel = true);

struct WordSide {
    char kind;   // 'a', 'b' or 'c'
    long level;
    long index;  // ignored for 'c'
    long power = 1;
};

// Materializes both sides through the words module and delegates to fbar.
// Throws std::length_error (reporting the required cap) when a side exceeds cap.
MatchResult fbar_words(WordFactory& factory, const WordSide& lhs, const WordSide& rhs,
                       std::size_t cap = kDefaultMaterializeCap,
                       bool use_bitparallel = false);

Seq materialize_side(WordFactory& factory, const WordSide& side, std::size_t cap);

}  // namespace subshift

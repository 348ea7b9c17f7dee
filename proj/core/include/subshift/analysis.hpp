// analysis.hpp -- block complexity, double-bracket sets, empirical orbit
// frequencies and the counting identities behind the frequency bounds.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "subshift/numeric.hpp"
#include "subshift/words.hpp"

namespace subshift {

// --- distinct-window counting, two independent routes ---

// Rolling double-hash with verified representatives; exact.
Int distinct_windows_hash(const Seq& s, std::size_t n);

// Suffix-automaton route: distinct factor counts for every length 1..max_n.
std::vector<Int> distinct_factor_counts(const Seq& s, int alphabet, std::size_t max_n);

Int distinct_windows_automaton(const Seq& s, int alphabet, std::size_t n);

struct RightSpecialCount {
    Int count;           // windows with >= 2 distinct right extensions
    Int excess;          // sum over windows of (#extensions - 1)
    Int inner_distinct;  // distinct n-windows that have at least one extension
};

// Right-extension accounting over a scanned prefix. The exact identity is
// P(n+1) = excess + inner_distinct; inner_distinct equals P(n) unless the
// length-n suffix of s occurs nowhere else.
RightSpecialCount right_special(const Seq& s, std::size_t n);

struct ComplexityEntry {
    std::size_t n;
    Int count;       // distinct n-windows over the scanned prefix (hash route)
    Int prefix_len;  // L_K
    bool stable;     // count unchanged versus the L_{K-1} prefix
};

// Scans the first L_K symbols of the B-tower point b_{infty,1}.
ComplexityEntry complexity_brute(WordFactory& factory, std::size_t n, long K,
                                 std::size_t cap = kDefaultMaterializeCap);

struct StructuralBound {
    Int m;  // L_k * n_k^{2 n_{k+1} + 2}
    std::map<std::string, Int> items;
    Int itemized_total;
    Int closed_form;  // m (3 n_k + 6)
    bool itemized_le_closed;
};

// The case-analysis bound on P_X(m) at the complexity scale m.
StructuralBound complexity_structural(WordFactory& factory, long k);

// --- double brackets and frequencies ---

// true iff w is a factor of omega omega; requires |w| == |omega|.
bool in_double_bracket(const Seq& omega, const Seq& w);

// Streaming membership oracle for [[omega_1]] u ... u [[omega_t]] with all
// base words the same length.
class BracketMatcher {
public:
    BracketMatcher(std::vector<Seq> targets, int alphabet);

    std::size_t window_length() const { return window_; }
    // membership of every window of s (size |s| - window + 1)
    std::vector<char> window_membership(const Seq& s) const;

private:
    struct Automaton;
    std::vector<std::shared_ptr<const Automaton>> automata_;
    std::size_t window_;
};

struct FrequencyReport {
    Tower tower;
    std::string target;
    Int N;               // scanned orbit prefix length
    std::size_t window;  // |omega|
    Int count;           // windows fully inside the prefix that lie in the target
    Rat freq;            // count / N
    Int tail_discarded;  // window - 1 positions at the end carry no window
};

FrequencyReport frequency(WordFactory& factory, Tower tower, std::vector<Seq> targets,
                          std::string target_name, long k_scan,
                          std::size_t cap = kDefaultMaterializeCap);

struct InteriorMultiplicity {
    Int interior;      // I_m formula value
    Int multiplicity;  // M_m formula value
    Int product;       // I_m * M_m
    std::optional<Int> true_count;  // exact scan count when under cap
    bool formula_le_true = false;
};

// Lower-bound formulas of the frequency propositions plus, at scannable
// scales, the true window count they bound.
InteriorMultiplicity interior_multiplicity(WordFactory& factory, long m, long k, Tower tower,
                                           std::size_t cap = kDefaultMaterializeCap);

struct AsequalGap {
    Rat freq_m, freq_j;
    Rat diff;      // |freq_m - freq_j|
    Rat dn_bound;  // 2 / n_k
    Rat tail;      // (L_k - 1) / N, the boundary positions discarded
};

// Empirical gap between [[b_{k,m}]] and [[b_{k,j}]] along the B-tower scan.
AsequalGap asequal_gap(WordFactory& factory, long k, long m, long j, long k_scan,
                       std::size_t cap = kDefaultMaterializeCap);

}  // namespace subshift

// params.hpp -- construction parameters {n_k}, target complexity {p_n},
// and exact-rational validation of every growth condition.
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "subshift/numeric.hpp"

namespace subshift {

// Geometric rule n_k = base^(k+offset), base >= 2.
struct SeqRule {
    Int base;
    long offset = 0;

    Int eval(long k) const { return ipow(base, static_cast<unsigned long>(k + offset)); }
};

// The sequence {n_k}. Either an explicit finite list or a geometric rule.
// An explicit list is extended beyond its last index by repeating the final
// entry; validation only ever looks at explicit entries (or the rule), the
// extension exists so that small fixtures like n=(2,2) admit level-2 words.
struct ParamSeq {
    std::vector<Int> entries;
    std::optional<SeqRule> rule;

    Int n(long k) const;
    // true when the sequence is defined for all k (rule-backed)
    bool unbounded() const { return rule.has_value(); }
    // number of explicitly given entries (LONG_MAX when rule-backed)
    long explicit_len() const;

    static ParamSeq from_list(std::vector<long> xs);
    static ParamSeq from_rule(Int base, long offset);
};

// Target complexity sequence p_n. Either an explicit list (p_1, p_2, ...)
// or the power rule p_n = n^power.
struct PSpec {
    std::vector<Int> list;
    std::optional<long> power;

    bool defined() const { return power.has_value() || !list.empty(); }
    std::optional<Int> eval(const Int& n) const;
};

enum class CondStatus { Pass, Fail, Inconclusive, Skipped };

std::string to_string(CondStatus s);

struct ConditionResult {
    std::string id;           // "a".."e" plus sub-index for (d)/(e)
    std::string description;
    CondStatus status = CondStatus::Skipped;
    std::optional<Rat> value;      // exact value or rigorous bound used
    std::optional<Rat> threshold;
    std::optional<Rat> slack;      // signed distance to the threshold
    bool finite_horizon = false;   // no tail bound was available
    bool bounded_eval = false;     // huge factors were handled by bit-length bounds
    std::string note;
};

struct ConditionReport {
    std::vector<ConditionResult> conditions;

    bool all_pass() const;
    const ConditionResult* find(const std::string& id) const;
};

// Per-condition exact checks of the growth requirements:
//   (a) prod n_k/(n_k-2) <= 2
//   (b) sum 2/n_k <= 1/32
//   (c) prod n_k^{4n_{k+1}+3}/(n_k^{4n_{k+1}+3}+1) > 7/8
//   (d) prod_{k>=m} (1 - 1/n_k) > 1 - 1/4^{m+1} for each m <= horizon
//   (e) p_m > k(6+3n_k)m at m = L_k n_k^{2n_{k+1}+2}
// For rule-backed sequences a conservative geometric tail bound is applied;
// for explicit lists the result is flagged finite_horizon. Condition (e)
// needs L_k, injected as a pure function to avoid a module cycle.
ConditionReport validate(const ParamSeq& params, long horizon, bool strict = false,
                         const PSpec* p = nullptr,
                         const std::function<Int(long)>* length_L = nullptr);

struct GammaSeq {
    std::vector<Rat> gamma;  // Gamma_0 .. Gamma_K
    bool leq_one_eighth = true;
};

// Gamma_k = sum_{i<k} (prod_{j=i}^{k-1} n_j/(n_j-2))^2 * 2/n_i, via the
// one-step recurrence. Throws if some n_i <= 2 for i < K.
GammaSeq gamma(const ParamSeq& params, long K);

// Independent closed-form evaluation of a single Gamma_k.
Rat gamma_closed(const ParamSeq& params, long k);

}  // namespace subshift

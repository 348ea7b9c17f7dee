#include "subshift/params.hpp"

#include <climits>
#include <stdexcept>

namespace subshift {

Int ParamSeq::n(long k) const {
    if (k < 0) throw std::out_of_range("ParamSeq::n: negative index");
    if (rule) return rule->eval(k);
    if (entries.empty()) throw std::invalid_argument("ParamSeq: empty sequence");
    auto idx = static_cast<std::size_t>(k);
    if (idx >= entries.size()) return entries.back();
    return entries[idx];
}

long ParamSeq::explicit_len() const {
    return rule ? LONG_MAX : static_cast<long>(entries.size());
}

ParamSeq ParamSeq::from_list(std::vector<long> xs) {
    ParamSeq p;
    p.entries.reserve(xs.size());
    for (long x : xs) p.entries.emplace_back(x);
    return p;
}

ParamSeq ParamSeq::from_rule(Int base, long offset) {
    ParamSeq p;
    p.rule = SeqRule{std::move(base), offset};
    return p;
}

std::optional<Int> PSpec::eval(const Int& n) const {
    if (power) return ipow(n, static_cast<unsigned long>(*power));
    if (!list.empty() && n >= 1 && n <= static_cast<long>(list.size()))
        return list[n.get_ui() - 1];
    return std::nullopt;
}

std::string to_string(CondStatus s) {
    switch (s) {
        case CondStatus::Pass: return "pass";
        case CondStatus::Fail: return "fail";
        case CondStatus::Inconclusive: return "inconclusive";
        case CondStatus::Skipped: return "skipped";
    }
    return "?";
}

bool ConditionReport::all_pass() const {
    for (const auto& c : conditions)
        if (c.status == CondStatus::Fail) return false;
    return true;
}

const ConditionResult* ConditionReport::find(const std::string& id) const {
    for (const auto& c : conditions)
        if (c.id == id) return &c;
    return nullptr;
}

namespace {

// Factors whose exact value would exceed this many bits are replaced by a
// rigorous bit-length bound in condition (c).
constexpr std::size_t kExactBitBudget = 1u << 20;
// Exponent cap for the 2^-s terms of the bound route; keeps denominators small.
constexpr unsigned long kBoundExpCap = 4096;

// For a rule n_k = b^(k+o): sum_{k>=K} 1/n_k = (1/n_K) * b/(b-1), exactly.
Rat geometric_tail_recip_sum(const SeqRule& rule, long K) {
    Int nK = rule.eval(K);
    return rat(rule.base, (rule.base - 1) * nK);
}

void check_wellformed(const ParamSeq& params, long horizon, bool strict) {
    if (!params.rule && params.entries.empty())
        throw std::invalid_argument("validate: empty sequence");
    if (params.n(0) < 2) throw std::invalid_argument("validate: n_0 < 2");
    long lim = params.rule ? horizon : std::min<long>(horizon, params.explicit_len());
    for (long k = 0; k + 1 < lim; ++k) {
        Int a = params.n(k), b = params.n(k + 1);
        if (a <= 0 || b <= 0) throw std::invalid_argument("validate: nonpositive entry");
        if (strict ? (b <= a) : (b < a))
            throw std::invalid_argument("validate: sequence not monotone");
    }
}

}  // namespace

ConditionReport validate(const ParamSeq& params, long horizon, bool strict,
                         const PSpec* p, const std::function<Int(long)>* length_L) {
    check_wellformed(params, horizon, strict);
    ConditionReport report;
    const bool has_tail = params.unbounded();
    const long H = params.rule ? horizon : std::min<long>(horizon, params.explicit_len());

    // (a) prod n_k/(n_k-2) <= 2
    {
        ConditionResult r;
        r.id = "a";
        r.description = "prod n_k/(n_k-2) <= 2";
        r.threshold = rat(2, 1);
        r.finite_horizon = !has_tail;
        bool degenerate = false;
        Rat prod(1);
        for (long k = 0; k < H; ++k) {
            Int nk = params.n(k);
            if (nk <= 2) {
                degenerate = true;
                r.note = "n_k <= 2 at k=" + std::to_string(k) + ": factor undefined or nonpositive";
                break;
            }
            prod *= rat(nk, nk - 2);
        }
        if (degenerate) {
            r.status = CondStatus::Fail;
        } else {
            Rat bound = prod;
            if (has_tail) {
                // prod_{k>=H} 1/(1 - 2/n_k) <= 1/(1 - S) when S = sum_{k>=H} 2/n_k < 1
                Rat S = Rat(2) * geometric_tail_recip_sum(*params.rule, H);
                if (S < 1) {
                    bound = prod / (Rat(1) - S);
                } else {
                    r.finite_horizon = true;
                    r.note = "tail sum >= 1; tail bound unavailable";
                }
            }
            r.value = bound;
            r.slack = *r.threshold - bound;
            r.status = bound <= *r.threshold ? CondStatus::Pass : CondStatus::Fail;
            if (r.status == CondStatus::Pass && r.finite_horizon && has_tail)
                r.status = CondStatus::Inconclusive;
        }
        report.conditions.push_back(std::move(r));
    }

    // (b) sum 2/n_k <= 1/32
    {
        ConditionResult r;
        r.id = "b";
        r.description = "sum 2/n_k <= 1/32";
        r.threshold = rat(1, 32);
        r.finite_horizon = !has_tail;
        Rat sum(0);
        bool degenerate = false;
        for (long k = 0; k < H; ++k) {
            Int nk = params.n(k);
            if (nk <= 0) { degenerate = true; break; }
            sum += rat(2, nk);
        }
        if (degenerate) {
            r.status = CondStatus::Fail;
            r.note = "nonpositive entry";
        } else {
            if (has_tail) sum += Rat(2) * geometric_tail_recip_sum(*params.rule, H);
            r.value = sum;
            r.slack = *r.threshold - sum;
            r.status = sum <= *r.threshold ? CondStatus::Pass : CondStatus::Fail;
        }
        report.conditions.push_back(std::move(r));
    }

    // (c) prod x_k/(x_k+1) > 7/8 with x_k = n_k^{4 n_{k+1} + 3}
    {
        ConditionResult r;
        r.id = "c";
        r.description = "prod n_k^(4n_{k+1}+3)/(n_k^(4n_{k+1}+3)+1) > 7/8";
        r.threshold = rat(7, 8);
        // needs n_{k+1}: one fewer factor for explicit lists
        long Hc = params.rule ? horizon : std::min<long>(horizon, params.explicit_len() - 1);
        r.finite_horizon = !has_tail;
        Rat lower(1);
        bool ok = true;
        for (long k = 0; k < Hc; ++k) {
            Int nk = params.n(k);
            Int nk1 = params.n(k + 1);
            if (nk < 2 || !nk1.fits_ulong_p()) { ok = false; break; }
            Int e = 4 * nk1 + 3;
            if (!e.fits_ulong_p()) { ok = false; break; }
            unsigned long eu = e.get_ui();
            std::size_t bits_estimate = static_cast<std::size_t>(eu) * bit_length(nk);
            if (bits_estimate <= kExactBitBudget) {
                Int x = ipow(nk, eu);
                lower *= rat(x, x + 1);
            } else {
                // x_k >= 2^s with s = e*(bitlen(n_k)-1), so the factor is
                // >= 1 - 2^-min(s, cap).
                r.bounded_eval = true;
                unsigned long s = eu;
                std::size_t nb = bit_length(nk) - 1;
                if (nb > 1 && s < kBoundExpCap) s = std::min<unsigned long>(s * nb, kBoundExpCap);
                s = std::min(s, kBoundExpCap);
                lower *= Rat(1) - rat(Int(1), ipow(2ul, s));
            }
        }
        if (!ok) {
            r.status = CondStatus::Inconclusive;
            r.note = "exponent 4n_{k+1}+3 not machine-representable";
        } else {
            if (has_tail) {
                // every tail factor exceeds 1 - 2^-s with s >= 4n_{H+1}, and the
                // exponents at least double, so the tail product is > 1 - 2^-(s-1)
                Int e = 4 * params.n(Hc + 1) + 3;
                unsigned long s = e.fits_ulong_p()
                                      ? std::min<unsigned long>(e.get_ui(), kBoundExpCap)
                                      : kBoundExpCap;
                if (s >= 2) lower *= Rat(1) - rat(Int(1), ipow(2ul, s - 1));
                r.bounded_eval = true;
            }
            r.value = lower;
            r.slack = lower - *r.threshold;
            if (lower > *r.threshold) {
                r.status = CondStatus::Pass;
            } else {
                // a failed lower bound is not an exact failure
                r.status = r.bounded_eval ? CondStatus::Inconclusive : CondStatus::Fail;
            }
        }
        report.conditions.push_back(std::move(r));
    }

    // (d) for each m <= horizon: prod_{k>=m} (1 - 1/n_k) > 1 - 1/4^{m+1}
    for (long m = 0; m <= horizon; ++m) {
        if (!params.rule && m >= params.explicit_len()) break;
        ConditionResult r;
        r.id = "d" + std::to_string(m);
        r.description = "prod_{k>=" + std::to_string(m) + "} (1-1/n_k) > 1 - 1/4^" +
                        std::to_string(m + 1);
        r.threshold = Rat(1) - rat(Int(1), ipow(4ul, static_cast<unsigned long>(m + 1)));
        r.finite_horizon = !has_tail;
        Rat prod(1);
        bool degenerate = false;
        for (long k = m; k < H; ++k) {
            Int nk = params.n(k);
            if (nk <= 1) { degenerate = true; break; }
            prod *= Rat(1) - rat(Int(1), nk);
        }
        if (degenerate) {
            r.status = CondStatus::Fail;
            r.note = "n_k <= 1";
        } else {
            if (has_tail) {
                Rat S = geometric_tail_recip_sum(*params.rule, H);
                if (S < 1) prod *= Rat(1) - S;  // prod(1-e_k) >= 1 - sum e_k
            }
            r.value = prod;
            r.slack = prod - *r.threshold;
            if (prod > *r.threshold) {
                r.status = CondStatus::Pass;
            } else if (has_tail) {
                // only the conservative lower bound fell short; the true
                // product may still clear the threshold
                r.status = CondStatus::Inconclusive;
            } else {
                // partial products only shrink, so falling short is final
                r.status = CondStatus::Fail;
                r.note = "finite-horizon partial product";
            }
        }
        report.conditions.push_back(std::move(r));
    }

    // (e) p_m > k(6+3n_k)m at m = L_k n_k^{2 n_{k+1} + 2}
    for (long k = 0; k <= horizon; ++k) {
        if (!p || !p->defined() || !length_L) break;
        if (!params.rule && k + 1 >= params.explicit_len()) break;
        ConditionResult r;
        r.id = "e" + std::to_string(k);
        r.description = "p_m > k(6+3n_k)m at m = L_k n_k^(2n_{k+1}+2), k=" + std::to_string(k);
        Int nk = params.n(k);
        Int e = 2 * params.n(k + 1) + 2;
        if (!e.fits_ulong_p() ||
            static_cast<std::size_t>(e.get_ui()) * bit_length(nk) > kExactBitBudget) {
            r.status = CondStatus::Skipped;
            r.note = "m not computable under bit budget";
            report.conditions.push_back(std::move(r));
            continue;
        }
        Int m = (*length_L)(k) * ipow(nk, e.get_ui());
        auto pm = p->eval(m);
        if (!pm) {
            r.status = CondStatus::Skipped;
            r.note = "p_m unavailable for m=" + m.get_str();
            report.conditions.push_back(std::move(r));
            continue;
        }
        Int rhs = Int(k) * (6 + 3 * nk) * m;
        r.value = rat(*pm, 1);
        r.threshold = rat(rhs, 1);
        r.slack = rat(*pm - rhs, 1);
        r.status = *pm > rhs ? CondStatus::Pass : CondStatus::Fail;
        report.conditions.push_back(std::move(r));
    }

    return report;
}

GammaSeq gamma(const ParamSeq& params, long K) {
    GammaSeq g;
    g.gamma.reserve(static_cast<std::size_t>(K) + 1);
    g.gamma.emplace_back(0);
    Rat eighth = rat(1, 8);
    for (long k = 0; k < K; ++k) {
        Int nk = params.n(k);
        if (nk <= 2) throw std::invalid_argument("gamma: n_k <= 2 at k=" + std::to_string(k));
        Rat q = rat(nk, nk - 2);
        // Gamma_{k+1} = (n_k/(n_k-2))^2 (Gamma_k + 2/n_k): pulling the new
        // i = k summand out of the closed form rescales every older summand
        // by q^2 and adds q^2 * 2/n_k.
        g.gamma.push_back(q * q * (g.gamma.back() + rat(2, nk)));
    }
    g.leq_one_eighth = g.gamma.back() <= eighth;
    return g;
}

Rat gamma_closed(const ParamSeq& params, long k) {
    Rat sum(0);
    for (long i = 0; i < k; ++i) {
        Rat prod(1);
        for (long j = i; j < k; ++j) {
            Int nj = params.n(j);
            if (nj <= 2) throw std::invalid_argument("gamma_closed: n_j <= 2");
            prod *= rat(nj, nj - 2);
        }
        sum += prod * prod * rat(2, params.n(i));
    }
    return sum;
}

}  // namespace subshift

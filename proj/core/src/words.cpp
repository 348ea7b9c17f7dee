#include "subshift/words.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace subshift {

std::string symbol_name(const ParamSeq& params, Sym id) {
    Int n0 = params.n(0);
    if (Int(id) == n0) return "c0";
    return "a0_" + std::to_string(id + 1);
}

GrammarWord::Ptr GrammarWord::terminal(Sym s) {
    auto w = std::shared_ptr<GrammarWord>(new GrammarWord());
    w->kind_ = Kind::Terminal;
    w->sym_ = s;
    w->length_ = 1;
    return w;
}

GrammarWord::Ptr GrammarWord::power(Ptr child, Int exponent) {
    if (!child) throw std::invalid_argument("power: null child");
    if (exponent < 1) throw std::invalid_argument("power: exponent < 1");
    if (exponent == 1) return child;
    auto w = std::shared_ptr<GrammarWord>(new GrammarWord());
    w->kind_ = Kind::Power;
    w->length_ = exponent * child->length();
    w->exponent_ = std::move(exponent);
    w->children_.push_back(std::move(child));
    return w;
}

GrammarWord::Ptr GrammarWord::concat(std::vector<Ptr> children) {
    if (children.empty()) throw std::invalid_argument("concat: no children");
    if (children.size() == 1) return children.front();
    auto w = std::shared_ptr<GrammarWord>(new GrammarWord());
    w->kind_ = Kind::Concat;
    Int len = 0;
    for (const auto& c : children) {
        if (!c) throw std::invalid_argument("concat: null child");
        len += c->length();
    }
    w->length_ = std::move(len);
    w->children_ = std::move(children);
    return w;
}

const std::vector<Int>& GrammarWord::cumulative() const {
    std::call_once(cum_once_, [this] {
        cum_.reserve(children_.size());
        Int acc = 0;
        for (const auto& c : children_) {
            acc += c->length();
            cum_.push_back(acc);
        }
    });
    return cum_;
}

Sym GrammarWord::symbol_at(const Int& pos) const {
    if (pos < 0 || pos >= length_) throw std::out_of_range("symbol_at: position out of range");
    const GrammarWord* node = this;
    Int p = pos;
    for (;;) {
        switch (node->kind_) {
            case Kind::Terminal:
                return node->sym_;
            case Kind::Power: {
                const auto& c = node->children_.front();
                p %= c->length();
                node = c.get();
                break;
            }
            case Kind::Concat: {
                const auto& cum = node->cumulative();
                auto it = std::upper_bound(cum.begin(), cum.end(), p);
                auto idx = static_cast<std::size_t>(it - cum.begin());
                if (idx > 0) p -= cum[idx - 1];
                node = node->children_[idx].get();
                break;
            }
        }
    }
}

namespace {

class Extractor {
public:
    explicit Extractor(std::size_t cap) : cap_(cap) {}

    void run(const GrammarWord* node, Int start, std::size_t len, Seq& out) {
        while (len > 0) {
            switch (node->kind()) {
                case GrammarWord::Kind::Terminal:
                    out.push_back(node->symbol());
                    return;
                case GrammarWord::Kind::Power: {
                    const GrammarWord* c = node->child().get();
                    const Int& lc = c->length();
                    Int off = start % lc;
                    while (len > 0) {
                        Int avail = lc - off;
                        std::size_t take = avail >= static_cast<long>(len)
                                               ? len
                                               : static_cast<std::size_t>(avail.get_ui());
                        if (off == 0 && take == len && lc > static_cast<long>(len)) {
                            // partial prefix of one repetition: descend
                            node = c;
                            start = 0;
                            break;
                        }
                        if (off == 0 && avail <= static_cast<long>(len)) {
                            emit_full(c, out);
                        } else {
                            run(c, off, take, out);
                        }
                        len -= take;
                        off = 0;
                    }
                    if (len == 0) return;
                    break;
                }
                case GrammarWord::Kind::Concat: {
                    const auto& children = node->children();
                    // locate the child containing `start`
                    std::size_t idx = 0;
                    Int acc = 0;
                    {
                        Int probe = start;
                        // linear walk over the children to locate the start
                        while (idx < children.size() &&
                               acc + children[idx]->length() <= probe) {
                            acc += children[idx]->length();
                            ++idx;
                        }
                    }
                    Int off = start - acc;
                    while (len > 0 && idx < children.size()) {
                        const GrammarWord* c = children[idx].get();
                        Int avail = c->length() - off;
                        std::size_t take = avail >= static_cast<long>(len)
                                               ? len
                                               : static_cast<std::size_t>(avail.get_ui());
                        if (off == 0 && avail <= static_cast<long>(len)) {
                            emit_full(c, out);
                        } else {
                            run(c, off, take, out);
                        }
                        len -= take;
                        off = 0;
                        ++idx;
                    }
                    return;
                }
            }
        }
    }

private:
    void emit_full(const GrammarWord* node, Seq& out) {
        auto it = cache_.find(node);
        if (it == cache_.end()) {
            Seq buf;
            buf.reserve(node->length().get_ui());
            run(node, 0, static_cast<std::size_t>(node->length().get_ui()), buf);
            it = cache_.emplace(node, std::move(buf)).first;
        }
        out.insert(out.end(), it->second.begin(), it->second.end());
    }

    std::size_t cap_;
    std::unordered_map<const GrammarWord*, Seq> cache_;
};

}  // namespace

Seq GrammarWord::extract(const Int& start, std::size_t len, std::size_t cap) const {
    if (len > cap) throw std::length_error("extract: materialization cap exceeded");
    if (start < 0 || start + static_cast<long>(len) > length_)
        throw std::out_of_range("extract: range out of bounds");
    Seq out;
    out.reserve(len);
    if (len > 0) Extractor(cap).run(this, start, len, out);
    return out;
}

Seq GrammarWord::materialize(std::size_t cap) const {
    if (length_ > static_cast<long>(cap))
        throw std::length_error("materialize: word longer than the cap");
    return extract(0, static_cast<std::size_t>(length_.get_ui()), cap);
}

std::size_t GrammarWord::node_count() const {
    std::unordered_set<const GrammarWord*> seen;
    std::vector<const GrammarWord*> stack{this};
    while (!stack.empty()) {
        const GrammarWord* n = stack.back();
        stack.pop_back();
        if (!seen.insert(n).second) continue;
        for (const auto& c : n->children_) stack.push_back(c.get());
    }
    return seen.size();
}

std::size_t GrammarWord::depth() const {
    std::unordered_map<const GrammarWord*, std::size_t> memo;
    struct Rec {
        std::unordered_map<const GrammarWord*, std::size_t>& memo;
        std::size_t operator()(const GrammarWord* n) {
            auto it = memo.find(n);
            if (it != memo.end()) return it->second;
            std::size_t d = 0;
            for (const auto& c : n->children_) d = std::max(d, (*this)(c.get()));
            memo[n] = d + 1;
            return d + 1;
        }
    } rec{memo};
    return rec(this);
}

long WordFactory::n_long(long k) const {
    Int n = params_.n(k);
    if (!n.fits_slong_p() || n.get_si() > 10'000'000)
        throw std::length_error("n_k too large to build a level-" + std::to_string(k) + " word");
    return n.get_si();
}

unsigned long WordFactory::pow_exponent(const Int& e) const {
    if (!e.fits_ulong_p()) throw std::length_error("exponent exceeds machine range");
    return e.get_ui();
}

Int WordFactory::length_L(long k) const {
    if (k < 0) throw std::out_of_range("length_L: negative level");
    if (k == 0) return 1;
    auto it = lengths_.find(k);
    if (it != lengths_.end()) return it->second;
    Int e = 4 * params_.n(k) + 3;
    Int L = (1 + ipow(params_.n(k - 1), pow_exponent(e))) * length_L(k - 1);
    lengths_.emplace(k, L);
    return L;
}

GrammarWord::Ptr WordFactory::feldman(long k, long i) {
    if (k < 0) throw std::out_of_range("feldman: negative level");
    if (i < 1 || Int(i) > params_.n(k)) throw std::out_of_range("feldman: index out of range");
    auto& level = feldman_[k];
    if (level.empty()) level.resize(static_cast<std::size_t>(n_long(k)));
    auto& slot = level[static_cast<std::size_t>(i - 1)];
    if (slot) return slot;
    if (k == 0) {
        slot = GrammarWord::terminal(static_cast<Sym>(i - 1));
        return slot;
    }
    long nprev = n_long(k - 1);
    Int np = params_.n(k - 1);
    Int inner_e = ipow(np, pow_exponent(2 * (Int(i) + params_.n(k))));
    Int outer_e = ipow(np, pow_exponent(2 * (params_.n(k) - Int(i) + 1)));
    std::vector<GrammarWord::Ptr> parts;
    parts.reserve(static_cast<std::size_t>(nprev));
    for (long h = 1; h <= nprev; ++h)
        parts.push_back(GrammarWord::power(feldman(k - 1, h), inner_e));
    slot = GrammarWord::power(GrammarWord::concat(std::move(parts)), outer_e);
    return slot;
}

GrammarWord::Ptr WordFactory::extended(long k, long i) {
    if (k < 0) throw std::out_of_range("extended: negative level");
    if (i < 1 || Int(i) > params_.n(k)) throw std::out_of_range("extended: index out of range");
    auto& level = extended_[k];
    if (level.empty()) level.resize(static_cast<std::size_t>(n_long(k)));
    auto& slot = level[static_cast<std::size_t>(i - 1)];
    if (slot) return slot;
    if (k == 0) {
        slot = GrammarWord::terminal(static_cast<Sym>(i - 1));
        return slot;
    }
    long nprev = n_long(k - 1);
    Int np = params_.n(k - 1);
    Int inner_e = ipow(np, pow_exponent(2 * (Int(i) + params_.n(k))));
    Int outer_e = ipow(np, pow_exponent(2 * (params_.n(k) - Int(i) + 1)));
    std::vector<GrammarWord::Ptr> parts;
    parts.reserve(static_cast<std::size_t>(nprev));
    for (long h = 1; h <= nprev; ++h)
        parts.push_back(GrammarWord::power(extended(k - 1, h), inner_e));
    slot = GrammarWord::concat(
        {GrammarWord::power(GrammarWord::concat(std::move(parts)), outer_e), cword(k - 1)});
    return slot;
}

GrammarWord::Ptr WordFactory::cword(long k) {
    if (k < 0) throw std::out_of_range("cword: negative level");
    auto it = cwords_.find(k);
    if (it != cwords_.end()) return it->second;
    GrammarWord::Ptr w;
    if (k == 0) {
        Int n0 = params_.n(0);
        if (!n0.fits_ulong_p() || n0.get_ui() > 65535)
            throw std::length_error("alphabet too large for the symbol type");
        w = GrammarWord::terminal(static_cast<Sym>(n0.get_ui()));
    } else {
        long nprev = n_long(k - 1);
        Int reps = length_L(k) / length_L(k - 1) - params_.n(k - 1);
        std::vector<GrammarWord::Ptr> parts;
        parts.reserve(static_cast<std::size_t>(nprev) + 1);
        parts.push_back(GrammarWord::power(cword(k - 1), reps));
        for (long h = 1; h <= nprev; ++h) parts.push_back(extended(k - 1, h));
        w = GrammarWord::concat(std::move(parts));
    }
    cwords_.emplace(k, w);
    return w;
}

OrbitPrefix WordFactory::orbit_prefix(Tower tower, long k) {
    return OrbitPrefix{tower, k, tower == Tower::B ? extended(k, 1) : cword(k)};
}

namespace {

// occurrence starts of pattern in text (KMP)
std::vector<std::size_t> find_occurrences(const Seq& text, const Seq& pat) {
    std::vector<std::size_t> occ;
    if (pat.empty() || pat.size() > text.size()) return occ;
    std::vector<std::size_t> fail(pat.size(), 0);
    for (std::size_t i = 1, j = 0; i < pat.size(); ++i) {
        while (j > 0 && pat[i] != pat[j]) j = fail[j - 1];
        if (pat[i] == pat[j]) ++j;
        fail[i] = j;
    }
    for (std::size_t i = 0, j = 0; i < text.size(); ++i) {
        while (j > 0 && text[i] != pat[j]) j = fail[j - 1];
        if (text[i] == pat[j]) ++j;
        if (j == pat.size()) {
            occ.push_back(i + 1 - pat.size());
            j = fail[j - 1];
        }
    }
    return occ;
}

}  // namespace

GapScan WordFactory::min_gap(const Seq& u, long k_scan, std::size_t cap) {
    if (u.empty()) throw std::invalid_argument("min_gap: empty pattern");
    Seq text = extended(k_scan, 1)->materialize(cap);
    auto occ = find_occurrences(text, u);
    if (occ.empty()) throw std::runtime_error("min_gap: pattern does not occur in the scan");
    GapScan r;
    r.occurrences = static_cast<long>(occ.size());
    if (occ.size() >= 2) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < occ.size(); ++i) best = std::max(best, occ[i] - occ[i - 1]);
        r.max_gap = static_cast<long>(best);
    }
    return r;
}

}  // namespace subshift

// words.hpp -- Feldman words, extended Feldman words and c-words as
// grammar-compressed DAGs with big-integer lengths and random access.
#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "subshift/numeric.hpp"
#include "subshift/params.hpp"

namespace subshift {

// Symbol ids: 0..n_0-1 are a_{0,1}..a_{0,n_0}; id n_0 is c_0.
using Sym = std::uint16_t;
using Seq = std::vector<Sym>;

std::string symbol_name(const ParamSeq& params, Sym id);

constexpr std::size_t kDefaultMaterializeCap = 100'000'000;

class GrammarWord {
public:
    using Ptr = std::shared_ptr<const GrammarWord>;

    enum class Kind { Terminal, Power, Concat };

    static Ptr terminal(Sym s);
    static Ptr power(Ptr child, Int exponent);  // exponent >= 1
    static Ptr concat(std::vector<Ptr> children);

    Kind kind() const { return kind_; }
    const Int& length() const { return length_; }
    Sym symbol() const { return sym_; }
    const Ptr& child() const { return children_.front(); }
    const Int& exponent() const { return exponent_; }
    const std::vector<Ptr>& children() const { return children_; }

    Sym symbol_at(const Int& pos) const;

    // Materializes [start, start+len); throws when the range is invalid or
    // len exceeds cap.
    Seq extract(const Int& start, std::size_t len,
                std::size_t cap = kDefaultMaterializeCap) const;
    Seq materialize(std::size_t cap = kDefaultMaterializeCap) const;

    std::size_t node_count() const;
    std::size_t depth() const;

private:
    GrammarWord() = default;

    const std::vector<Int>& cumulative() const;  // Concat only, built lazily

    Kind kind_ = Kind::Terminal;
    Sym sym_ = 0;
    Int length_;
    Int exponent_;
    std::vector<Ptr> children_;

    mutable std::once_flag cum_once_;
    mutable std::vector<Int> cum_;
};

enum class Tower { B, C };

struct OrbitPrefix {
    Tower tower;
    long level;
    GrammarWord::Ptr word;
};

struct GapScan {
    Int occurrences;
    std::optional<Int> max_gap;  // nullopt when there is no second occurrence
};

// Builds the recursive words over a fixed parameter sequence, sharing
// subterms so that level K creates O(K * max n_k) distinct nodes.
class WordFactory {
public:
    explicit WordFactory(ParamSeq params) : params_(std::move(params)) {}

    const ParamSeq& params() const { return params_; }

    Int length_L(long k) const;

    GrammarWord::Ptr feldman(long k, long i);   // a_{k,i}, 1 <= i <= n_k
    GrammarWord::Ptr extended(long k, long i);  // b_{k,i}; b_{0,i} = a_{0,i}
    GrammarWord::Ptr cword(long k);             // c_k; c_0 is the extra terminal

    OrbitPrefix orbit_prefix(Tower tower, long k);

    // Max gap between consecutive occurrence starts of u in b_{k_scan,1}.
    // Throws when u does not occur in the scanned prefix.
    GapScan min_gap(const Seq& u, long k_scan,
                    std::size_t cap = kDefaultMaterializeCap);

private:
    long n_long(long k) const;
    unsigned long pow_exponent(const Int& e) const;

    ParamSeq params_;
    std::unordered_map<long, GrammarWord::Ptr> cwords_;
    std::unordered_map<long, std::vector<GrammarWord::Ptr>> feldman_, extended_;
    mutable std::unordered_map<long, Int> lengths_;
};

}  // namespace subshift

// numeric.hpp -- exact arbitrary-precision arithmetic aliases and helpers
#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <string>

namespace subshift {

using Int = mpz_class;
using Rat = mpq_class;

inline Int ipow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Int ipow(unsigned long base, unsigned long e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, e);
    return r;
}

// number of bits in |x|; 0 for x == 0
inline std::size_t bit_length(const Int& x) {
    return x == 0 ? 0 : mpz_sizeinbase(x.get_mpz_t(), 2);
}

inline Rat rat(const Int& num, const Int& den) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Rat rat(long num, long den) { return rat(Int(num), Int(den)); }

// "p/q" (or just "p" when q == 1)
inline std::string rat_str(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rat rat_parse(const std::string& s) {
    Rat q(s);
    q.canonicalize();
    return q;
}

inline double rat_double(const Rat& q) { return q.get_d(); }

}  // namespace subshift

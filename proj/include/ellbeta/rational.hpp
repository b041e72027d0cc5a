#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "ellbeta/error.hpp"

namespace ellbeta {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) { return Rat(num, den); }

// 2-adic valuation of a nonzero integer.
inline long val2(const Int& z) {
    ELLBETA_CHECK(z != 0);
    return static_cast<long>(mpz_scan1(z.get_mpz_t(), 0));
}

// p-adic valuation of a nonzero integer for odd p.
inline long valp(const Int& z, unsigned long p) {
    ELLBETA_CHECK(z != 0);
    Int t = z, q, r;
    long v = 0;
    for (;;) {
        mpz_fdiv_qr_ui(q.get_mpz_t(), r.get_mpz_t(), t.get_mpz_t(), p);
        if (r != 0) return v;
        t = q;
        ++v;
    }
}

inline Int pow2(unsigned long k) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, k);
    return r;
}

inline Int ipow(unsigned long base, unsigned long k) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, k);
    return r;
}

// True when the denominator is a power of 3, i.e. the value lies in Z[1/3].
inline bool is_3integral(const Rat& x) {
    Int d = x.get_den();
    while (mpz_divisible_ui_p(d.get_mpz_t(), 3)) mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), 3);
    return d == 1;
}

// 2-adic valuation of a nonzero rational with odd denominator.
inline long val2(const Rat& x) {
    ELLBETA_CHECK(x != 0);
    ELLBETA_CHECK_MSG(mpz_odd_p(x.get_den().get_mpz_t()), "even denominator");
    return val2(x.get_num());
}

// x is in 2^k * Z[1/3]: 3-integral and numerator divisible by 2^k.
inline bool in_2k_z3(const Rat& x, unsigned long k) {
    if (!is_3integral(x)) return false;
    if (x == 0) return true;
    return mpz_divisible_2exp_p(x.get_num().get_mpz_t(), k) != 0;
}

inline Rat rat_pow(const Rat& x, unsigned long k) {
    Rat r = 1;
    Rat b = x;
    unsigned long e = k;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

inline std::string rat_str(const Rat& x) { return x.get_str(); }

inline Rat rat_parse(const std::string& s) {
    Rat r;
    ELLBETA_CHECK_MSG(r.set_str(s, 10) == 0, "bad rational literal: " << s);
    r.canonicalize();
    return r;
}

// Inverse of an odd residue modulo 2^k, k <= 63.
inline std::uint64_t inv_odd_mod2k(std::uint64_t a, unsigned k) {
    ELLBETA_CHECK(a & 1);
    std::uint64_t x = 1;
    for (int i = 0; i < 6; ++i) x *= 2 - a * x;  // Newton iteration doubles precision
    if (k >= 64) return x;
    return x & ((std::uint64_t(1) << k) - 1);
}

}  // namespace ellbeta

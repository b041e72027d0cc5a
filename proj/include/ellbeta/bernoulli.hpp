#pragma once

#include <vector>

#include "ellbeta/rational.hpp"

namespace ellbeta {

// Quadratic character mod 3: 0, 1, -1 for d = 0, 1, 2 mod 3.
inline int legendre3(unsigned long d) {
    switch (d % 3) {
        case 1: return 1;
        case 2: return -1;
        default: return 0;
    }
}

inline Int binomial(unsigned long n, unsigned long k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// Bernoulli number B_n with B_1 = -1/2.
Rat bernoulli_number(unsigned long n);

// Value of the Bernoulli polynomial B_w at x = 1/3.
Rat bernoulli_poly_third(unsigned long w);

// Generalized Bernoulli number attached to the mod-3 character:
// 2 * 3^(w-1) * B_w(1/3) for w >= 1.
Rat generalized_bernoulli_chi(unsigned long w);

}  // namespace ellbeta

#pragma once

#include "ellbeta/vpoly.hpp"

namespace ellbeta {

// Characteristic power series Q(x) of the orientation, to x^xmax, with q-series
// coefficients to qprec.
XSeries genus_series(long xmax, long qprec);

// Genus of the complex projective space of complex dimension n: [x^n] Q(x)^(n+1).
QSeries cp_genus(long n, long qprec);

// Images of the projective-space generators and the 2-typical generators they
// produce: w_j for j = 1, 3, 7 and v_1, v_2, v_3, all as exact forms.
struct HazewinkelImages {
    ModForm w1, w3, w7;
    ModForm v1, v2, v3;
};
HazewinkelImages hazewinkel_images(long qprec);

// Sequence of v1-exponent bounds: 1, 2, 6, 12, 24, ...
long a_bound(long k);

// Powers of the degree-3 generator family: x_0 = v2, then the three seeded
// polynomials, then repeated squaring; lies in Z[v1, v2], weight 3 * 2^n.
VPoly x_element(long n);

// z_{i,m} = v1^(m 2^i) - m 2^(i+1) v1^(m 2^i - 3) v2 for i, m >= 1;
// a Laurent polynomial when m 2^i < 4.
VPoly z_element(long i, long m);

// y_0 = v1, y_1 = v1^2 - 4 v1^{-1} v2, then squaring.
VPoly y_element(long i);

// The q-expansion of z_{i,m} is congruent to 1 mod 2^(i+2), coefficientwise.
bool z_is_one_mod(long i, long m, long prec);

}  // namespace ellbeta

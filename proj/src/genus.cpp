#include "ellbeta/genus.hpp"

#include "ellbeta/bernoulli.hpp"

namespace ellbeta {

static Rat factorial(long n) {
    Int f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return Rat(f);
}

XSeries genus_series(long xmax, long qprec) {
    XSeries expo(xmax, qprec);
    for (long w = 2; w <= xmax; w += 2)
        expo.term[static_cast<size_t>(w)] =
            scale(eisenstein_even_star(w, qprec), Scalar(Rat(3) / factorial(w)));
    for (long w = 1; w <= xmax; w += 2) {
        long k = (w - 1) / 2;
        Rat coef = Rat(ipow(3, static_cast<unsigned long>(2 * k))) *
                   bernoulli_poly_third(static_cast<unsigned long>(w)) / Rat(w) / factorial(w);
        expo.term[static_cast<size_t>(w)] =
            scale(eisenstein_odd(w, qprec), -Scalar::delta() * Scalar(coef));
    }
    return exp_series(expo);
}

QSeries cp_genus(long n, long qprec) {
    XSeries q = genus_series(n, qprec);
    XSeries p(n, qprec);
    p.term[0] = QSeries::constant(Scalar(1), qprec);
    unsigned long e = static_cast<unsigned long>(n) + 1;
    XSeries b = q;
    while (e) {
        if (e & 1) p = mul(p, b);
        if (e >>= 1) b = mul(b, b);
    }
    return p.term[static_cast<size_t>(n)];
}

HazewinkelImages hazewinkel_images(long qprec) {
    ELLBETA_CHECK(qprec >= 12);
    HazewinkelImages h;
    h.w1 = recognize(cp_genus(1, qprec), 1);
    h.w3 = recognize(cp_genus(3, qprec), 3);
    h.w7 = recognize(cp_genus(7, qprec), 7);
    Scalar half(Rat(1, 2));
    h.v1 = h.w1;
    h.v2 = ModForm(3, scale(h.w3.poly - pow(h.w1.poly, 3), half));
    EPoly v3 = scale(h.w7.poly, Scalar(Rat(1, 4))) -
               scale(pow(h.w1.poly, 7) + h.w1.poly * pow(h.w3.poly, 2), Scalar(Rat(1, 8)));
    h.v3 = ModForm(7, v3);
    return h;
}

long a_bound(long k) {
    ELLBETA_CHECK(k >= 0);
    if (k == 0) return 1;
    if (k == 1) return 2;
    return 3L << (k - 1);
}

VPoly x_element(long n) {
    ELLBETA_CHECK(n >= 0);
    static const VPoly x0 = VPoly::monomial(0, 1);
    if (n == 0) return x0;
    if (n == 1) {
        // v2^2 - 3 v1^3 (v2 + v1^3)
        VPoly p = VPoly::monomial(0, 2);
        p.add_term(3, 1, Scalar(-3));
        p.add_term(6, 0, Scalar(-3));
        return p;
    }
    if (n == 2) {
        // v2^4 - 7 v1^3 v2^3 + 15 v1^9 v2 + 9 v1^12
        VPoly p = VPoly::monomial(0, 4);
        p.add_term(3, 3, Scalar(-7));
        p.add_term(9, 1, Scalar(15));
        p.add_term(12, 0, Scalar(9));
        return p;
    }
    VPoly p = x_element(2);
    for (long k = 3; k <= n; ++k) p = p * p;
    return p;
}

VPoly z_element(long i, long m) {
    ELLBETA_CHECK(i >= 1 && m >= 1);
    long j = m << i;
    VPoly p = VPoly::monomial(j, 0);
    p.add_term(j - 3, 1, Scalar(Rat(-m * (2L << i))));
    return p;
}

VPoly y_element(long i) {
    ELLBETA_CHECK(i >= 0);
    if (i == 0) return VPoly::monomial(1, 0);
    VPoly p = VPoly::monomial(2, 0);
    p.add_term(-1, 1, Scalar(-4));
    for (long k = 2; k <= i; ++k) p = p * p;
    return p;
}

bool z_is_one_mod(long i, long m, long prec) {
    QSeries z = expand(to_epoly(z_element(i, m)), prec);
    unsigned long k = static_cast<unsigned long>(i) + 2;
    for (long n = 0; n < prec; ++n) {
        Scalar c = z.c[static_cast<size_t>(n)];
        if (n == 0) c -= Scalar(1);
        if (!c.integral_2k(k)) return false;
    }
    return true;
}

}  // namespace ellbeta

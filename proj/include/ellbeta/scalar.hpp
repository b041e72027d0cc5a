#pragma once

#include <string>

#include "ellbeta/rational.hpp"

namespace ellbeta {

// Element of Q(delta) with delta^2 = -3, stored as re + im*delta.
// The ring of integers (away from 3) has basis {1, zeta} with zeta = (delta-1)/2,
// a primitive cube root of unity; the coordinates in that basis are
//   u = re + im,  v = 2*im,
// so integrality questions are answered on (u, v), not on (re, im).
struct Scalar {
    Rat re, im;

    Scalar() : re(0), im(0) {}
    Scalar(const Rat& r) : re(r), im(0) {}  // NOLINT(google-explicit-constructor)
    Scalar(long r) : re(r), im(0) {}        // NOLINT(google-explicit-constructor)
    Scalar(const Rat& r, const Rat& i) : re(r), im(i) {}

    static Scalar delta() { return Scalar(Rat(0), Rat(1)); }
    static Scalar zeta() { return Scalar(Rat(-1, 2), Rat(1, 2)); }
    static Scalar from_uv(const Rat& u, const Rat& v) {
        return Scalar(u - v / 2, v / 2);
    }

    Rat u() const { return re + im; }
    Rat v() const { return 2 * im; }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_rational() const { return im == 0; }

    Scalar conj() const { return Scalar(re, -im); }

    // re^2 + 3*im^2, the norm to Q.
    Rat norm() const { return re * re + 3 * im * im; }

    Scalar& operator+=(const Scalar& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Scalar& operator-=(const Scalar& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    Scalar& operator*=(const Scalar& o) {
        Rat r = re * o.re - 3 * im * o.im;
        Rat i = re * o.im + im * o.re;
        re = r;
        im = i;
        return *this;
    }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator-(const Scalar& a) { return Scalar(-a.re, -a.im); }
    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    Scalar inv() const {
        Rat n = norm();
        ELLBETA_CHECK_MSG(n != 0, "inverse of zero scalar");
        return Scalar(re / n, -im / n);
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inv(); }

    Scalar pow(unsigned long k) const {
        Scalar r(1), b = *this;
        unsigned long e = k;
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }

    // Membership in 2^k * (integers away from 3), tested on the {1, zeta} coordinates.
    bool integral_2k(unsigned long k = 0) const {
        return in_2k_z3(u(), k) && in_2k_z3(v(), k);
    }

    std::string str() const {
        if (im == 0) return re.get_str();
        std::string s = "(" + re.get_str();
        s += (im > 0) ? "+" : "-";
        s += Rat(abs(im)).get_str() + "d)";
        return s;
    }
};

// Certificate that a scalar lies in 2^k * Z[zeta][1/3]: records the coordinates
// u, v with the power of 3 cleared from each denominator.
struct IntegralityWitness {
    bool ok = false;
    unsigned long two_power = 0;
    Rat u, v;
    long three_power_u = 0, three_power_v = 0;

    static IntegralityWitness of(const Scalar& c, unsigned long k) {
        IntegralityWitness w;
        w.two_power = k;
        w.u = c.u();
        w.v = c.v();
        auto three_part = [](const Rat& x) {
            long e = 0;
            Int d = x.get_den();
            while (mpz_divisible_ui_p(d.get_mpz_t(), 3)) {
                mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), 3);
                ++e;
            }
            return e;
        };
        w.three_power_u = three_part(w.u);
        w.three_power_v = three_part(w.v);
        w.ok = c.integral_2k(k);
        return w;
    }
};

}  // namespace ellbeta

#pragma once

#include <cstdint>
#include <map>

#include "ellbeta/forms.hpp"

namespace ellbeta {

// Polynomial in the degree-1 and degree-3 generators v1, v2, keyed by
// (e1, e2) with weight e1 + 3*e2; e1 may be negative (v1 is a unit q-series).
struct VPoly {
    std::map<std::pair<long, long>, Scalar> c;

    static VPoly monomial(long e1, long e2, const Scalar& s = Scalar(1)) {
        VPoly p;
        if (!s.is_zero()) p.c[{e1, e2}] = s;
        return p;
    }
    static VPoly constant(const Scalar& s) { return monomial(0, 0, s); }

    bool is_zero() const { return c.empty(); }
    void add_term(long e1, long e2, const Scalar& s) {
        if (s.is_zero()) return;
        auto it = c.find({e1, e2});
        if (it == c.end()) {
            c[{e1, e2}] = s;
        } else {
            it->second += s;
            if (it->second.is_zero()) c.erase(it);
        }
    }
    std::optional<long> homogeneous_weight() const;

    friend VPoly operator+(const VPoly& x, const VPoly& y);
    friend VPoly operator-(const VPoly& x, const VPoly& y);
    friend VPoly operator*(const VPoly& x, const VPoly& y);
    friend bool operator==(const VPoly& x, const VPoly& y) { return x.c == y.c; }
};

VPoly scale(const VPoly& p, const Scalar& s);
VPoly pow(const VPoly& p, unsigned long k);

// v1 = (delta/3) E1, v2 = (delta/27)(4 E1^3 - E3), and back.
EPoly to_epoly(const VPoly& p);
VPoly to_vpoly(const EPoly& p);

// Residue of a v-polynomial in Z[zeta][1/3][v1, v2] / (2^K, v1^J): coefficients
// become (u, v) pairs mod 2^K (3 inverted), monomials with e1 >= J drop.
struct QuotientPoly {
    unsigned K = 0;
    long J = 0;
    std::map<std::pair<long, long>, std::pair<std::uint64_t, std::uint64_t>> c;

    friend bool operator==(const QuotientPoly& a, const QuotientPoly& b) {
        return a.K == b.K && a.J == b.J && a.c == b.c;
    }
    std::string str() const;
};
QuotientPoly quotient_reduce(const VPoly& p, unsigned K, long J);

}  // namespace ellbeta

#include "ellbeta/vpoly.hpp"

#include <sstream>

namespace ellbeta {

std::optional<long> VPoly::homogeneous_weight() const {
    std::optional<long> w;
    for (const auto& [k, v] : c) {
        long mw = k.first + 3 * k.second;
        if (!w) {
            w = mw;
        } else if (*w != mw) {
            return std::nullopt;
        }
    }
    return w ? w : std::optional<long>(0);
}

VPoly operator+(const VPoly& x, const VPoly& y) {
    VPoly r = x;
    for (const auto& [k, v] : y.c) r.add_term(k.first, k.second, v);
    return r;
}

VPoly operator-(const VPoly& x, const VPoly& y) {
    VPoly r = x;
    for (const auto& [k, v] : y.c) r.add_term(k.first, k.second, -v);
    return r;
}

VPoly operator*(const VPoly& x, const VPoly& y) {
    VPoly r;
    for (const auto& [kx, vx] : x.c)
        for (const auto& [ky, vy] : y.c)
            r.add_term(kx.first + ky.first, kx.second + ky.second, vx * vy);
    return r;
}

VPoly scale(const VPoly& p, const Scalar& s) {
    VPoly r;
    if (s.is_zero()) return r;
    for (const auto& [k, v] : p.c) r.c[k] = v * s;
    return r;
}

VPoly pow(const VPoly& p, unsigned long k) {
    VPoly r = VPoly::constant(Scalar(1));
    VPoly b = p;
    while (k) {
        if (k & 1) r = r * b;
        if (k >>= 1) b = b * b;
    }
    return r;
}

static Scalar scalar_ipow(const Scalar& s, long e) {
    if (e >= 0) return s.pow(static_cast<unsigned long>(e));
    return s.inv().pow(static_cast<unsigned long>(-e));
}

EPoly to_epoly(const VPoly& p) {
    Scalar d3 = Scalar::delta() * Scalar(Rat(1, 3));  // v1 / E1
    EPoly v2(EPoly::monomial(3, 0, Scalar::delta() * Scalar(Rat(4, 27))));
    v2.add_term(0, 1, Scalar::delta() * Scalar(Rat(-1, 27)));
    EPoly r;
    for (const auto& [k, s] : p.c) {
        auto [e1, e2] = k;
        ELLBETA_CHECK(e2 >= 0);
        EPoly term = EPoly::monomial(e1, 0, s * scalar_ipow(d3, e1));
        if (e2) term = term * pow(v2, static_cast<unsigned long>(e2));
        r = r + term;
    }
    return r;
}

VPoly to_vpoly(const EPoly& p) {
    Scalar md = -Scalar::delta();  // E1 / v1
    VPoly e3(VPoly::monomial(3, 0, Scalar::delta() * Scalar(12)));
    e3.add_term(0, 1, Scalar::delta() * Scalar(9));
    VPoly r;
    for (const auto& [k, s] : p.c) {
        auto [a, b] = k;
        ELLBETA_CHECK(b >= 0);
        VPoly term = VPoly::monomial(a, 0, s * scalar_ipow(md, a));
        if (b) term = term * pow(e3, static_cast<unsigned long>(b));
        r = r + term;
    }
    return r;
}

QuotientPoly quotient_reduce(const VPoly& p, unsigned K, long J) {
    ELLBETA_CHECK(K >= 1 && K <= 62 && J >= 1);
    std::uint64_t mod = std::uint64_t(1) << K;
    auto reduce = [&](const Rat& x) -> std::uint64_t {
        Int den = x.get_den();
        long e3 = 0;
        while (mpz_divisible_ui_p(den.get_mpz_t(), 3)) {
            mpz_divexact_ui(den.get_mpz_t(), den.get_mpz_t(), 3);
            ++e3;
        }
        ELLBETA_CHECK_MSG(den == 1, "coefficient not 3-integral: " << x.get_str());
        Int num = x.get_num();
        std::uint64_t n = mpz_fdiv_ui(num.get_mpz_t(), mod);
        std::uint64_t inv3 = inv_odd_mod2k(3, K);
        for (long i = 0; i < e3; ++i) n = (n * inv3) & (mod - 1);
        return n & (mod - 1);
    };
    QuotientPoly q;
    q.K = K;
    q.J = J;
    for (const auto& [k, s] : p.c) {
        ELLBETA_CHECK_MSG(k.first >= 0, "Laurent term in quotient_reduce");
        if (k.first >= J) continue;
        std::uint64_t u = reduce(s.u()), v = reduce(s.v());
        if (u || v) q.c[k] = {u, v};
    }
    return q;
}

std::string QuotientPoly::str() const {
    std::ostringstream os;
    os << "mod(2^" << K << ", v1^" << J << "):";
    if (c.empty()) os << " 0";
    for (const auto& [k, uv] : c) {
        os << " + ";
        if (uv.second == 0) {
            os << uv.first;
        } else {
            os << "(" << uv.first << "," << uv.second << "z)";
        }
        if (k.first) os << " v1^" << k.first;
        if (k.second) os << " v2^" << k.second;
    }
    return os.str();
}

}  // namespace ellbeta

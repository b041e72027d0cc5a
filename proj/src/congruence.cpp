#include "ellbeta/congruence.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace ellbeta {

namespace {

long val3_den(const Rat& x) {
    Int d = x.get_den();
    long e = 0;
    while (mpz_divisible_ui_p(d.get_mpz_t(), 3)) {
        mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), 3);
        ++e;
    }
    ELLBETA_CHECK_MSG(d == 1, "denominator not a power of 3: " << x.get_str());
    return e;
}

std::uint64_t rat_mod2k(const Rat& x, long k) {
    Int num = x.get_num(), den = x.get_den();
    ELLBETA_CHECK_MSG(mpz_odd_p(den.get_mpz_t()), "even denominator in modular reduction");
    Int r;
    mpz_fdiv_r_2exp(r.get_mpz_t(), num.get_mpz_t(), 64);
    std::uint64_t n = mpz_get_ui(r.get_mpz_t());
    mpz_fdiv_r_2exp(r.get_mpz_t(), den.get_mpz_t(), 64);
    std::uint64_t d = mpz_get_ui(r.get_mpz_t());
    std::uint64_t v = n * inv_odd_mod2k(d, 64);
    return k >= 64 ? v : (v & ((std::uint64_t(1) << k) - 1));
}

std::vector<Int> integer_series(const QSeries& f) {
    std::vector<Int> r(static_cast<size_t>(f.prec));
    for (long n = 0; n < f.prec; ++n) {
        const Scalar& c = f.at(n);
        ELLBETA_CHECK_MSG(c.is_rational() && c.re.get_den() == 1,
                          "series not integral at q^" << n << ": " << c.str());
        r[static_cast<size_t>(n)] = c.re.get_num();
    }
    return r;
}

std::vector<Int> imul_trunc(const std::vector<Int>& a, const std::vector<Int>& b, long prec) {
    std::vector<Int> r(static_cast<size_t>(prec), Int(0));
    for (long i = 0; i < prec && i < static_cast<long>(a.size()); ++i) {
        if (a[static_cast<size_t>(i)] == 0) continue;
        long jmax = std::min<long>(prec - i, static_cast<long>(b.size()));
        for (long j = 0; j < jmax; ++j) {
            if (b[static_cast<size_t>(j)] == 0) continue;
            mpz_addmul(r[static_cast<size_t>(i + j)].get_mpz_t(), a[static_cast<size_t>(i)].get_mpz_t(),
                       b[static_cast<size_t>(j)].get_mpz_t());
        }
    }
    return r;
}

}  // namespace

UnitSplit unit_normalize(const EPoly& mu) {
    ELLBETA_CHECK_MSG(!mu.is_zero(), "zero multiplier");
    auto w = mu.homogeneous_weight();
    ELLBETA_CHECK_MSG(w.has_value(), "multiplier must be weight-homogeneous");
    long p = ((*w % 2) + 2) % 2;
    EPoly m = p ? scale(mu, Scalar::delta()) : mu;
    long emax = 0;
    for (const auto& [key, s] : m.c) {
        ELLBETA_CHECK_MSG(s.is_rational(), "multiplier not a unit times a rational form");
        emax = std::max(emax, val3_den(s.re));
    }
    EPoly scaled = scale(m, Scalar(Rat(ipow(3, static_cast<unsigned long>(emax)))));
    long gmin = -1;
    for (const auto& [key, s] : scaled.c) {
        ELLBETA_CHECK(s.re.get_den() == 1);
        long v = valp(s.re.get_num(), 3);
        gmin = gmin < 0 ? v : std::min(gmin, v);
    }
    if (gmin > 0) scaled = scale(scaled, Scalar(Rat(1, ipow(3, static_cast<unsigned long>(gmin)))));
    UnitSplit us;
    us.reduced = scaled;
    us.delta_exp = p;
    us.three_exp = emax - std::max<long>(gmin, 0);
    Rat q3 = rat_pow(Rat(1, 3), static_cast<unsigned long>(std::max<long>(us.three_exp, 0)));
    if (us.three_exp < 0) q3 = rat_pow(Rat(3), static_cast<unsigned long>(-us.three_exp));
    us.unit = p ? Scalar(Rat(0), -q3 / 3) : Scalar(q3);
    // unit * reduced must reproduce mu exactly
    ELLBETA_CHECK(scale(us.reduced, us.unit) == mu);
    return us;
}

std::optional<std::vector<std::uint64_t>> solve_mod_2k(
    const std::vector<std::vector<std::uint64_t>>& rows, long dim, long k) {
    ELLBETA_CHECK(k >= 1 && k <= 62);
    const std::uint64_t mask = (std::uint64_t(1) << k) - 1;
    std::vector<std::vector<std::uint64_t>> piv(static_cast<size_t>(dim));
    std::vector<long> pval(static_cast<size_t>(dim), -1);
    bool rhs_hit = false;

    auto normalize = [&](std::vector<std::uint64_t>& r, long col, long v) {
        std::uint64_t inv = inv_odd_mod2k(r[static_cast<size_t>(col)] >> v, 64);
        for (auto& e : r) e = (e * inv) & mask;
    };

    for (const auto& row0 : rows) {
        std::vector<std::uint64_t> r(row0.size());
        ELLBETA_CHECK(static_cast<long>(row0.size()) == dim + 1);
        for (size_t i = 0; i < row0.size(); ++i) r[i] = row0[i] & mask;
        for (long col = 0; col < dim; ++col) {
            std::uint64_t e = r[static_cast<size_t>(col)];
            if (!e) continue;
            long v = __builtin_ctzll(e);
            if (pval[static_cast<size_t>(col)] < 0) {
                normalize(r, col, v);
                piv[static_cast<size_t>(col)] = std::move(r);
                pval[static_cast<size_t>(col)] = v;
                r.clear();
                break;
            }
            long vp = pval[static_cast<size_t>(col)];
            if (v < vp) {
                std::swap(r, piv[static_cast<size_t>(col)]);
                normalize(piv[static_cast<size_t>(col)], col, v);
                pval[static_cast<size_t>(col)] = v;
                vp = v;
            }
            const auto& p = piv[static_cast<size_t>(col)];
            std::uint64_t f = r[static_cast<size_t>(col)] >> vp;
            for (long i = col; i <= dim; ++i)
                r[static_cast<size_t>(i)] = (r[static_cast<size_t>(i)] - f * p[static_cast<size_t>(i)]) & mask;
        }
        if (!r.empty() && (r[static_cast<size_t>(dim)] & mask)) rhs_hit = true;
    }
    if (rhs_hit) return std::nullopt;

    std::vector<std::uint64_t> y(static_cast<size_t>(dim), 0);
    for (long col = dim - 1; col >= 0; --col) {
        if (pval[static_cast<size_t>(col)] < 0) continue;
        const auto& p = piv[static_cast<size_t>(col)];
        std::uint64_t acc = p[static_cast<size_t>(dim)];
        for (long c = col + 1; c < dim; ++c) acc -= p[static_cast<size_t>(c)] * y[static_cast<size_t>(c)];
        acc &= mask;
        long v = pval[static_cast<size_t>(col)];
        if (v > 0) {
            // a failed division here does not prove inconsistency: a different
            // branch through an earlier positive-valuation pivot might work
            ELLBETA_CHECK_MSG((acc & ((std::uint64_t(1) << v) - 1)) == 0,
                              "ambiguous modular back-substitution (pivot valuation "
                                  << v << "); raise precision or modulus headroom");
            acc >>= v;
        }
        y[static_cast<size_t>(col)] = acc & (mask >> v);
    }
    // every original row is in the echelon row span, so this can only fire on
    // an arithmetic fault or an ambiguous branch -- either way, fail loudly
    for (const auto& row0 : rows) {
        std::uint64_t acc = row0[static_cast<size_t>(dim)];
        for (long c = 0; c < dim; ++c) acc -= row0[static_cast<size_t>(c)] * y[static_cast<size_t>(c)];
        ELLBETA_CHECK_MSG((acc & mask) == 0, "modular solution fails row re-check");
    }
    return y;
}

namespace {

// Exact integrality scan of an EPoly's expansion after division by 2^a.
bool expansion_in_2a(const EPoly& x, long prec, long a, std::string* diag) {
    QSeries e = expand(x, prec);
    for (long n = 0; n < prec; ++n) {
        if (!e.at(n).integral_2k(static_cast<unsigned long>(a))) {
            if (diag) *diag = "coefficient of q^" + std::to_string(n) + " not in 2^" +
                              std::to_string(a) + " Z[zeta,1/3]: " + e.at(n).str();
            return false;
        }
    }
    return true;
}

}  // namespace

MemberWitness is_member(const EPoly& x, const SubgroupSpec& g) {
    long t = g.top_weight, a = g.two_exp;
    ELLBETA_CHECK(t >= 0 && a >= 0);
    long P = precision_policy(t);
    MemberWitness w;

    if (g.rational_edges) {
        ELLBETA_CHECK_MSG(!g.multiplier, "multiplier together with rational edges is not used");
        ELLBETA_CHECK_MSG(!x.is_laurent(), "edge membership needs a polynomial form");
        ELLBETA_CHECK_MSG(x.top_weight() <= t, "form exceeds top weight");
        Rat half = rat_pow(Rat(1, 2), static_cast<unsigned long>(a));
        EPoly xs = scale(x, Scalar(half));
        std::vector<Rat> xu, xv;
        epoly_to_vec(xs, t, xu, xv);
        auto L = d_lattice(t);
        std::vector<Rat> du, dv;
        if (!L->contains_mod_edges(xu, &du)) {
            w.diagnostic = "u-component not in lattice + edges";
            return w;
        }
        if (!L->contains_mod_edges(xv, &dv)) {
            w.diagnostic = "v-component not in lattice + edges";
            return w;
        }
        w.d = vec_to_epoly(du, dv, t);
        EPoly rem = xs - w.d;
        Int two_a = pow2(static_cast<unsigned long>(a));
        for (const auto& [key, s] : rem.c) {
            long mw = monomial_weight(key.first, key.second);
            ELLBETA_CHECK_MSG(mw == 0 || mw == t, "edge remainder off the edge rows");
            Scalar lifted = s * Scalar(Rat(two_a));
            if (mw == 0)
                w.c0 = lifted;
            else
                w.ht.add_term(key.first, key.second, lifted);
        }
        ELLBETA_CHECK_MSG(expansion_in_2a(w.d, 2 * P, 0, nullptr),
                          "edge witness lattice part fails integral expansion");
        w.member = true;
        return w;
    }

    if (!g.multiplier) {
        std::string diag;
        if (!expansion_in_2a(x, 2 * P, a, &diag)) {
            w.diagnostic = diag;
            return w;
        }
        w.d = scale(x, Scalar(rat_pow(Rat(1, 2), static_cast<unsigned long>(a))));
        w.member = true;
        return w;
    }

    // multiplier path: x = 2^a d + mu h; work with the unit-free mu
    ELLBETA_CHECK_MSG(a >= 1, "multiplier membership with modulus 1 is not a congruence");
    const EPoly& mu = *g.multiplier;
    UnitSplit us = unit_normalize(mu);
    long j = *mu.homogeneous_weight();
    ELLBETA_CHECK_MSG(g.complement_weight == t - j,
                      "complement weight " << g.complement_weight << " != " << t - j);
    auto mons = monomial_basis(t - j);
    long dimh = static_cast<long>(mons.size());

    std::vector<Int> mser = integer_series(expand(us.reduced, P));
    std::vector<std::vector<Int>> cols;
    cols.reserve(static_cast<size_t>(dimh));
    for (auto [am, bm] : mons)
        cols.push_back(imul_trunc(mser, monomial_expansion(am, bm, P), P));

    QSeries xe = expand(x, P);
    std::vector<std::vector<std::uint64_t>> urows(static_cast<size_t>(P)),
        vrows(static_cast<size_t>(P));
    for (long r = 0; r < P; ++r) {
        auto& ur = urows[static_cast<size_t>(r)];
        auto& vr = vrows[static_cast<size_t>(r)];
        ur.resize(static_cast<size_t>(dimh) + 1);
        for (long c = 0; c < dimh; ++c)
            ur[static_cast<size_t>(c)] = rat_mod2k(Rat(cols[static_cast<size_t>(c)][static_cast<size_t>(r)]), a);
        vr = ur;
        ur[static_cast<size_t>(dimh)] = rat_mod2k(xe.at(r).u(), a);
        vr[static_cast<size_t>(dimh)] = rat_mod2k(xe.at(r).v(), a);
    }
    auto yu = solve_mod_2k(urows, dimh, a);
    auto yv = solve_mod_2k(vrows, dimh, a);
    if (!yu || !yv) {
        w.diagnostic = std::string(!yu ? "u" : "v") + "-component cofactor system inconsistent mod 2^" +
                       std::to_string(a);
        return w;
    }
    EPoly h;  // cofactor of the unit-free multiplier, integer coefficients
    for (long c = 0; c < dimh; ++c)
        h.add_term(mons[static_cast<size_t>(c)].first, mons[static_cast<size_t>(c)].second,
                   Scalar::from_uv(Rat(Int((*yu)[static_cast<size_t>(c)])),
                                   Rat(Int((*yv)[static_cast<size_t>(c)]))));
    EPoly d0 = x - us.reduced * h;
    std::string diag;
    if (!expansion_in_2a(d0, 2 * P, a, &diag)) {
        w.diagnostic = "cofactor found mod 2^" + std::to_string(a) +
                       " but residual fails doubled-precision check: " + diag;
        return w;
    }
    // express the witness against the original mu: mu * (normalizer * h) = reduced * h
    Scalar normalizer = Scalar::delta().pow(static_cast<unsigned long>(us.delta_exp)) *
                        Scalar(us.three_exp >= 0 ? Rat(ipow(3, static_cast<unsigned long>(us.three_exp)))
                                                 : rat_pow(Rat(1, 3), static_cast<unsigned long>(-us.three_exp)));
    w.h = scale(h, normalizer);
    w.d = scale(d0, Scalar(rat_pow(Rat(1, 2), static_cast<unsigned long>(a))));
    w.member = true;
    return w;
}

FInvariantClass scale_class(const FInvariantClass& f, const Rat& c) {
    return {f.index_weight, scale(f.representative, Scalar(c))};
}

bool finv_equal(const FInvariantClass& f, const FInvariantClass& g) {
    ELLBETA_CHECK_MSG(f.index_weight == g.index_weight,
                      "class weights differ: " << f.index_weight << " vs " << g.index_weight);
    long k = f.index_weight;
    EPoly diff = f.representative - g.representative;
    if (diff.is_zero()) return true;
    ELLBETA_CHECK_MSG(!diff.is_laurent() && diff.top_weight() <= k, "class representative out of range");
    std::vector<Rat> du, dv;
    epoly_to_vec(diff, k, du, dv);
    auto L = d_lattice(k);
    return L->contains_mod_edges(du) && L->contains_mod_edges(dv);
}

SolveResult elliptic_beta_solve(const EPoly& xform, long a, const EPoly& mu, long i1,
                                long guard) {
    ELLBETA_CHECK(a >= 1 && i1 >= 1 && guard >= 0);
    auto tw = xform.homogeneous_weight();
    ELLBETA_CHECK_MSG(tw.has_value(), "solver input must be weight-homogeneous");
    long t = *tw;
    auto jw = mu.homogeneous_weight();
    ELLBETA_CHECK_MSG(jw.has_value(), "multiplier must be weight-homogeneous");
    long tp = t - i1 * *jw;
    ELLBETA_CHECK(tp >= 0 && tp <= t);
    long P = precision_policy(t) + guard;

    // premise: (mu^i1 - 1)/2^a expands integrally; this reduces the congruence
    // x == mu^i1 phi to x == phi over the same subgroup
    EPoly mupow = pow(mu, static_cast<unsigned long>(i1));
    {
        EPoly pm = mupow;
        pm.add_term(0, 0, Scalar(-1));
        std::string diag;
        ELLBETA_CHECK_MSG(expansion_in_2a(pm, 2 * P, a, &diag),
                          "multiplier premise (mu^i1 - 1)/2^a not integral: " << diag);
    }

    auto L = d_lattice(tp, P);
    long d = L->dim;
    long alpha = val2(L->den);
    Int odd;
    mpz_fdiv_q_2exp(odd.get_mpz_t(), L->den.get_mpz_t(), static_cast<unsigned long>(alpha));
    std::uint64_t odd_inv = inv_odd_mod2k(rat_mod2k(Rat(odd), 64), 64);

    QSeries xe = expand(xform, 2 * P);
    std::vector<std::vector<std::uint64_t>> urows(static_cast<size_t>(P)),
        vrows(static_cast<size_t>(P));
    const std::uint64_t mask = (std::uint64_t(1) << a) - 1;
    for (long r = 0; r < P; ++r) {
        auto& ur = urows[static_cast<size_t>(r)];
        auto& vr = vrows[static_cast<size_t>(r)];
        ur.resize(static_cast<size_t>(d) + 1);
        for (long c = 0; c < d; ++c) {
            const Int& e = L->expn[static_cast<size_t>(c)][static_cast<size_t>(r)];
            Int sh, red;
            mpz_fdiv_q_2exp(sh.get_mpz_t(), e.get_mpz_t(), static_cast<unsigned long>(alpha));
            mpz_fdiv_r_2exp(red.get_mpz_t(), sh.get_mpz_t(), 64);
            ur[static_cast<size_t>(c)] = (mpz_get_ui(red.get_mpz_t()) * odd_inv) & mask;
        }
        vr = ur;
        ur[static_cast<size_t>(d)] = rat_mod2k(xe.at(r).u(), a);
        vr[static_cast<size_t>(d)] = rat_mod2k(xe.at(r).v(), a);
    }
    auto yu = solve_mod_2k(urows, d, a);
    auto yv = solve_mod_2k(vrows, d, a);
    ELLBETA_CHECK_MSG(yu && yv, "not invariant: no cofactor matches mod 2^" << a
                                    << " at weight " << t);

    std::vector<Rat> phiu(static_cast<size_t>(d), Rat(0)), phiv(static_cast<size_t>(d), Rat(0));
    for (long c = 0; c < d; ++c) {
        std::uint64_t cu = (*yu)[static_cast<size_t>(c)], cv = (*yv)[static_cast<size_t>(c)];
        if (!cu && !cv) continue;
        for (long i = 0; i < d; ++i) {
            const Int& b = L->basis[static_cast<size_t>(c)][static_cast<size_t>(i)];
            if (b == 0) continue;
            if (cu) phiu[static_cast<size_t>(i)] += Rat(b * Int(cu));
            if (cv) phiv[static_cast<size_t>(i)] += Rat(b * Int(cv));
        }
    }
    for (long i = 0; i < d; ++i) {
        phiu[static_cast<size_t>(i)] /= Rat(L->den);
        phiv[static_cast<size_t>(i)] /= Rat(L->den);
    }
    EPoly phi = vec_to_epoly(phiu, phiv, tp);

    // expansion of phi on 2P rows straight from the monomial matrix
    auto M2 = monomial_matrix(tp, 2 * P);
    QSeries phie(2 * P);
    for (long c = 0; c < d; ++c) {
        Rat pu = phiu[static_cast<size_t>(c)], pv = phiv[static_cast<size_t>(c)];
        if (pu == 0 && pv == 0) continue;
        const auto& colm = (*M2)[static_cast<size_t>(c)];
        for (long r = 0; r < 2 * P; ++r) {
            const Int& m = colm[static_cast<size_t>(r)];
            if (m == 0) continue;
            Scalar& tgt = phie.at(r);
            tgt += Scalar::from_uv(pu * Rat(m), pv * Rat(m));
        }
    }

    // defect (x - phi)/2^a: integral on all 2P rows
    for (long r = 0; r < 2 * P; ++r) {
        Scalar c = xe.at(r) - phie.at(r);
        ELLBETA_CHECK_MSG(c.integral_2k(static_cast<unsigned long>(a)),
                          "defect fails integrality at q^" << r);
    }
    // full residual (x - mu^i1 phi)/2^a at doubled precision
    {
        QSeries mue = expand(mupow, 2 * P);
        QSeries prod = mul(mue, phie);
        for (long r = 0; r < 2 * P; ++r) {
            Scalar c = xe.at(r) - prod.at(r);
            ELLBETA_CHECK_MSG(c.integral_2k(static_cast<unsigned long>(a)),
                              "multiplier residual fails integrality at q^" << r);
        }
    }

    SolveResult res;
    Rat half_a = rat_pow(Rat(1, 2), static_cast<unsigned long>(a));
    res.phi = phi;
    res.defect = scale(xform - phi, Scalar(half_a));
    res.two_exp = a;
    res.top_weight = t;
    res.cls = {tp, scale(phi, Scalar(half_a))};
    return res;
}

// --- integer-series backend (uint64 wrap arithmetic, exact mod 2^64) ---

std::vector<std::uint64_t> mod2_reduce(const std::vector<Int>& a, long prec) {
    ELLBETA_CHECK(static_cast<long>(a.size()) >= prec);
    std::vector<std::uint64_t> r(static_cast<size_t>(prec));
    Int red;
    for (long i = 0; i < prec; ++i) {
        mpz_fdiv_r_2exp(red.get_mpz_t(), a[static_cast<size_t>(i)].get_mpz_t(), 64);
        r[static_cast<size_t>(i)] = mpz_get_ui(red.get_mpz_t());
    }
    return r;
}

std::vector<std::uint64_t> mod2_mul(const std::vector<std::uint64_t>& a,
                                    const std::vector<std::uint64_t>& b) {
    ELLBETA_CHECK(a.size() == b.size());
    long prec = static_cast<long>(a.size());
    std::vector<std::uint64_t> r(a.size(), 0);
    for (long i = 0; i < prec; ++i) {
        std::uint64_t ai = a[static_cast<size_t>(i)];
        if (!ai) continue;
        for (long j = 0; j + i < prec; ++j) r[static_cast<size_t>(i + j)] += ai * b[static_cast<size_t>(j)];
    }
    return r;
}

std::vector<std::uint64_t> mod2_pow(const std::vector<std::uint64_t>& a, unsigned long e) {
    std::vector<std::uint64_t> r(a.size(), 0);
    r[0] = 1;
    std::vector<std::uint64_t> base = a;
    while (e) {
        if (e & 1) r = mod2_mul(r, base);
        e >>= 1;
        if (e) base = mod2_mul(base, base);
    }
    return r;
}

std::vector<std::uint64_t> mod2_e1(long prec) { return mod2_reduce(e1_int(prec), prec); }
std::vector<std::uint64_t> mod2_e3(long prec) { return mod2_reduce(e3_int(prec), prec); }

std::vector<std::uint64_t> mod2_e1_inv(long prec) {
    auto e1 = mod2_e1(prec);
    std::vector<std::uint64_t> r(static_cast<size_t>(prec), 0);
    r[0] = 1;  // e1 has leading coefficient 1
    for (long n = 1; n < prec; ++n) {
        std::uint64_t acc = 0;
        for (long k = 1; k <= n; ++k) acc += e1[static_cast<size_t>(k)] * r[static_cast<size_t>(n - k)];
        r[static_cast<size_t>(n)] = std::uint64_t(0) - acc;
    }
    return r;
}

std::vector<std::uint64_t> mod2_omega(long prec) {
    const auto& e1 = e1_int(prec);
    std::vector<std::uint64_t> A(static_cast<size_t>(prec), 0);
    Int red;
    for (long n = 1; n < prec; ++n) {
        Int q = e1[static_cast<size_t>(n)] / 6;
        ELLBETA_CHECK(q * 6 == e1[static_cast<size_t>(n)]);
        mpz_fdiv_r_2exp(red.get_mpz_t(), q.get_mpz_t(), 64);
        A[static_cast<size_t>(n)] = mpz_get_ui(red.get_mpz_t());
    }
    auto A2 = mod2_mul(A, A);
    std::vector<std::uint64_t> r(static_cast<size_t>(prec));
    for (long n = 0; n < prec; ++n)
        r[static_cast<size_t>(n)] = 3 * A[static_cast<size_t>(n)] + 9 * A2[static_cast<size_t>(n)];
    return r;
}

namespace {

struct WeightColumns {
    long prec = 0;
    std::vector<long> e1exp;                          // E1 exponent per column
    std::vector<std::vector<std::uint64_t>> cols;     // expansions of weight-t monomials
};

std::mutex g_wc_mtx;
std::map<long, WeightColumns> g_wc_cache;

const WeightColumns& weight_columns(long t, long prec) {
    std::lock_guard<std::mutex> lock(g_wc_mtx);
    auto& e = g_wc_cache[t];
    if (e.prec >= prec) return e;
    e.prec = prec;
    e.e1exp.clear();
    e.cols.clear();
    auto step = mod2_mul(mod2_e3(prec), mod2_pow(mod2_e1_inv(prec), 3));
    std::vector<std::uint64_t> cur = mod2_pow(mod2_e1(prec), static_cast<unsigned long>(t));
    for (long b = 0; 3 * b <= t; ++b) {
        e.e1exp.push_back(t - 3 * b);
        e.cols.push_back(cur);
        if (3 * (b + 1) <= t) cur = mod2_mul(cur, step);
    }
    return e;
}

}  // namespace

bool integer_member_mod2(const std::vector<std::uint64_t>& x, long t, long a, long j,
                         std::string* diag) {
    ELLBETA_CHECK(a >= 1 && a <= 60 && t >= 1);
    long P = precision_policy(t);
    ELLBETA_CHECK_MSG(static_cast<long>(x.size()) >= 2 * P,
                      "series too short for weight " << t << ": need " << 2 * P << " rows");
    const std::uint64_t mask = (std::uint64_t(1) << a) - 1;
    if (j < 0) {
        for (long r = 0; r < 2 * P; ++r)
            if (x[static_cast<size_t>(r)] & mask) {
                if (diag) *diag = "coefficient of q^" + std::to_string(r) + " not divisible by 2^" +
                                  std::to_string(a);
                return false;
            }
        return true;
    }
    ELLBETA_CHECK(j <= t);
    const auto& wc = weight_columns(t, 2 * P);
    std::vector<long> sel;
    for (size_t c = 0; c < wc.e1exp.size(); ++c)
        if (wc.e1exp[c] >= j) sel.push_back(static_cast<long>(c));
    long dimh = static_cast<long>(sel.size());
    ELLBETA_CHECK(dimh == dim_forms(t - j));

    std::vector<std::vector<std::uint64_t>> rows(static_cast<size_t>(P));
    for (long r = 0; r < P; ++r) {
        auto& row = rows[static_cast<size_t>(r)];
        row.resize(static_cast<size_t>(dimh) + 1);
        for (long c = 0; c < dimh; ++c)
            row[static_cast<size_t>(c)] = wc.cols[static_cast<size_t>(sel[static_cast<size_t>(c)])]
                                                 [static_cast<size_t>(r)] & mask;
        row[static_cast<size_t>(dimh)] = x[static_cast<size_t>(r)] & mask;
    }
    auto y = solve_mod_2k(rows, dimh, a);
    if (!y) {
        if (diag) *diag = "cofactor system inconsistent mod 2^" + std::to_string(a);
        return false;
    }
    for (long r = 0; r < 2 * P; ++r) {
        std::uint64_t acc = x[static_cast<size_t>(r)];
        for (long c = 0; c < dimh; ++c)
            acc -= (*y)[static_cast<size_t>(c)] *
                   wc.cols[static_cast<size_t>(sel[static_cast<size_t>(c)])][static_cast<size_t>(r)];
        if (acc & mask) {
            if (diag) *diag = "residual fails divisibility by 2^" + std::to_string(a) + " at q^" +
                              std::to_string(r);
            return false;
        }
    }
    return true;
}

}  // namespace ellbeta

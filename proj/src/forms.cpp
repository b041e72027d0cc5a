#include "ellbeta/forms.hpp"

#include <mutex>

#include "ellbeta/bernoulli.hpp"

namespace ellbeta {

std::optional<long> EPoly::homogeneous_weight() const {
    std::optional<long> w;
    for (const auto& [k, v] : c) {
        long mw = monomial_weight(k.first, k.second);
        if (!w) {
            w = mw;
        } else if (*w != mw) {
            return std::nullopt;
        }
    }
    return w ? w : std::optional<long>(0);
}

EPoly operator+(const EPoly& x, const EPoly& y) {
    EPoly r = x;
    for (const auto& [k, v] : y.c) r.add_term(k.first, k.second, v);
    return r;
}

EPoly operator-(const EPoly& x, const EPoly& y) {
    EPoly r = x;
    for (const auto& [k, v] : y.c) r.add_term(k.first, k.second, -v);
    return r;
}

EPoly operator*(const EPoly& x, const EPoly& y) {
    EPoly r;
    for (const auto& [kx, vx] : x.c)
        for (const auto& [ky, vy] : y.c)
            r.add_term(kx.first + ky.first, kx.second + ky.second, vx * vy);
    return r;
}

EPoly scale(const EPoly& p, const Scalar& s) {
    EPoly r;
    if (s.is_zero()) return r;
    for (const auto& [k, v] : p.c) r.c[k] = v * s;
    return r;
}

EPoly pow(const EPoly& p, unsigned long k) {
    EPoly r = EPoly::constant(Scalar(1));
    EPoly b = p;
    while (k) {
        if (k & 1) r = r * b;
        if (k >>= 1) b = b * b;
    }
    return r;
}

ModForm::ModForm(long w, EPoly p) : weight(w), poly(std::move(p)) {
    auto hw = poly.homogeneous_weight();
    ELLBETA_CHECK_MSG(poly.is_zero() || (hw && *hw == w),
                      "not homogeneous of weight " << w);
    for (const auto& [k, v] : poly.c) ELLBETA_CHECK(k.first >= 0 && k.second >= 0);
}

std::vector<std::pair<long, long>> monomial_basis(long k) {
    ELLBETA_CHECK(k >= 0);
    std::vector<std::pair<long, long>> r;
    for (long a = k; a >= 0; a -= 3) r.push_back({a, (k - a) / 3});
    return r;
}

long dim_forms(long k) { return k / 3 + 1; }

long dim_forms_upto(long t) {
    long s = 0;
    for (long w = 0; w <= t; ++w) s += dim_forms(w);
    return s;
}

std::vector<FlatMonomial> all_monomials(long t) {
    std::vector<FlatMonomial> r;
    for (long w = 0; w <= t; ++w)
        for (auto [a, b] : monomial_basis(w)) r.push_back({w, a, b});
    return r;
}

long precision_policy(long t) { return dim_forms_upto(t) + 10; }

// sigma_{chi,e}(n) = sum_{d | n} chi(d) d^e, tabulated for n < prec.
static std::vector<Int> twisted_divisor_sums(long e, long prec) {
    std::vector<Int> s(static_cast<size_t>(prec), Int(0));
    for (long d = 1; d < prec; ++d) {
        int ch = legendre3(static_cast<unsigned long>(d));
        if (ch == 0) continue;
        Int de = ipow(static_cast<unsigned long>(d), static_cast<unsigned long>(e));
        if (ch < 0) de = -de;
        for (long n = d; n < prec; n += d) s[static_cast<size_t>(n)] += de;
    }
    return s;
}

static std::vector<Int> divisor_sums(long e, long prec) {
    std::vector<Int> s(static_cast<size_t>(prec), Int(0));
    for (long d = 1; d < prec; ++d) {
        Int de = ipow(static_cast<unsigned long>(d), static_cast<unsigned long>(e));
        for (long n = d; n < prec; n += d) s[static_cast<size_t>(n)] += de;
    }
    return s;
}

QSeries eisenstein_odd(long w, long prec) {
    ELLBETA_CHECK(w >= 1 && w % 2 == 1);
    Rat coef = Rat(-2 * w) / generalized_bernoulli_chi(static_cast<unsigned long>(w));
    auto s = twisted_divisor_sums(w - 1, prec);
    QSeries r(prec);
    if (prec > 0) r.c[0] = Scalar(1);
    for (long n = 1; n < prec; ++n) r.c[static_cast<size_t>(n)] = Scalar(coef * Rat(s[static_cast<size_t>(n)]));
    return r;
}

QSeries eisenstein_even_star(long w, long prec) {
    ELLBETA_CHECK(w >= 2 && w % 2 == 0);
    long n2 = w / 2;
    Int p3 = ipow(3, static_cast<unsigned long>(w - 1));
    auto s = divisor_sums(w - 1, prec);
    QSeries r(prec);
    if (prec > 0) r.c[0] = Scalar(-bernoulli_number(static_cast<unsigned long>(w)) / Rat(4 * n2) * (1 - Rat(p3)));
    for (long m = 1; m < prec; ++m) {
        Rat c(s[static_cast<size_t>(m)]);
        if (m % 3 == 0) c -= Rat(p3) * Rat(s[static_cast<size_t>(m / 3)]);
        r.c[static_cast<size_t>(m)] = Scalar(c);
    }
    return r;
}

namespace {

struct SeriesCache {
    std::mutex mtx;
    std::vector<Int> e1, e3;

    void ensure(long prec) {
        if (static_cast<long>(e1.size()) >= prec) return;
        long p = std::max(prec, static_cast<long>(e1.size()) * 2);
        auto s0 = twisted_divisor_sums(0, p);
        auto s2 = twisted_divisor_sums(2, p);
        e1.assign(static_cast<size_t>(p), Int(0));
        e3.assign(static_cast<size_t>(p), Int(0));
        e1[0] = 1;
        e3[0] = 1;
        for (long n = 1; n < p; ++n) {
            e1[static_cast<size_t>(n)] = 6 * s0[static_cast<size_t>(n)];
            e3[static_cast<size_t>(n)] = -9 * s2[static_cast<size_t>(n)];
        }
    }
};

SeriesCache& series_cache() {
    static SeriesCache c;
    return c;
}

std::vector<Int> imul(const std::vector<Int>& a, const std::vector<Int>& b, long prec) {
    std::vector<Int> r(static_cast<size_t>(prec), Int(0));
    for (long i = 0; i < prec; ++i) {
        if (a[static_cast<size_t>(i)] == 0) continue;
        for (long j = 0; i + j < prec; ++j) {
            if (b[static_cast<size_t>(j)] == 0) continue;
            r[static_cast<size_t>(i + j)] += a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)];
        }
    }
    return r;
}

std::vector<Int> ipow_series(const std::vector<Int>& a, unsigned long k, long prec) {
    std::vector<Int> r(static_cast<size_t>(prec), Int(0));
    r[0] = 1;
    std::vector<Int> b(a.begin(), a.begin() + prec);
    while (k) {
        if (k & 1) r = imul(r, b, prec);
        if (k >>= 1) b = imul(b, b, prec);
    }
    return r;
}

}  // namespace

const std::vector<Int>& e1_int(long prec) {
    auto& c = series_cache();
    std::lock_guard<std::mutex> lock(c.mtx);
    c.ensure(prec);
    return c.e1;
}

const std::vector<Int>& e3_int(long prec) {
    auto& c = series_cache();
    std::lock_guard<std::mutex> lock(c.mtx);
    c.ensure(prec);
    return c.e3;
}

std::vector<Int> monomial_expansion(long a, long b, long prec) {
    ELLBETA_CHECK(a >= 0 && b >= 0);
    std::vector<Int> u, w;
    {
        auto& c = series_cache();
        std::lock_guard<std::mutex> lock(c.mtx);
        c.ensure(prec);
        u.assign(c.e1.begin(), c.e1.begin() + prec);
        w.assign(c.e3.begin(), c.e3.begin() + prec);
    }
    auto r = ipow_series(u, static_cast<unsigned long>(a), prec);
    if (b) r = imul(r, ipow_series(w, static_cast<unsigned long>(b), prec), prec);
    return r;
}

QSeries expand(const EPoly& p, long prec) {
    QSeries e1(prec), e3(prec);
    {
        auto& c = series_cache();
        std::lock_guard<std::mutex> lock(c.mtx);
        c.ensure(prec);
        for (long n = 0; n < prec; ++n) {
            e1.c[static_cast<size_t>(n)] = Scalar(Rat(c.e1[static_cast<size_t>(n)]));
            e3.c[static_cast<size_t>(n)] = Scalar(Rat(c.e3[static_cast<size_t>(n)]));
        }
    }
    QSeries e1inv;
    bool need_inv = p.is_laurent();
    if (need_inv) e1inv = invert_unit(e1);

    QSeries r(prec);
    // group by E3 exponent, walk E1 exponent incrementally
    std::map<long, std::map<long, Scalar>> by_b;
    for (const auto& [k, v] : p.c) by_b[k.second][k.first] = v;
    for (const auto& [b, terms] : by_b) {
        QSeries base = pow(e3, static_cast<unsigned long>(b));
        long cur = 0;
        QSeries acc = base;
        for (const auto& [a, coef] : terms) {
            while (cur < a) {
                acc = mul(acc, e1);
                ++cur;
            }
            while (cur > a) {
                acc = mul(acc, e1inv);
                --cur;
            }
            r = add(r, scale(acc, coef));
        }
    }
    return r;
}

ModForm recognize(const QSeries& f, long k) {
    auto basis = monomial_basis(k);
    long d = static_cast<long>(basis.size());
    ELLBETA_CHECK_MSG(f.prec >= d + 4, "series too short to recognize weight " << k);
    std::vector<std::vector<Int>> cols;
    for (auto [a, b] : basis) cols.push_back(monomial_expansion(a, b, f.prec));

    // solve the first d rows by Gaussian elimination over Q, for u and v parts
    auto solve_part = [&](auto getter) {
        std::vector<std::vector<Rat>> m(static_cast<size_t>(d),
                                        std::vector<Rat>(static_cast<size_t>(d) + 1));
        for (long r = 0; r < d; ++r) {
            for (long c = 0; c < d; ++c) m[r][c] = Rat(cols[static_cast<size_t>(c)][static_cast<size_t>(r)]);
            m[r][static_cast<size_t>(d)] = getter(f.c[static_cast<size_t>(r)]);
        }
        std::vector<Rat> x(static_cast<size_t>(d), Rat(0));
        long row = 0;
        std::vector<long> pivot_col;
        for (long c = 0; c < d && row < d; ++c) {
            long pr = -1;
            for (long r = row; r < d; ++r)
                if (m[static_cast<size_t>(r)][static_cast<size_t>(c)] != 0) {
                    pr = r;
                    break;
                }
            if (pr < 0) continue;
            std::swap(m[static_cast<size_t>(row)], m[static_cast<size_t>(pr)]);
            for (long r = 0; r < d; ++r) {
                if (r == row || m[static_cast<size_t>(r)][static_cast<size_t>(c)] == 0) continue;
                Rat fct = m[static_cast<size_t>(r)][static_cast<size_t>(c)] /
                          m[static_cast<size_t>(row)][static_cast<size_t>(c)];
                for (long cc = c; cc <= d; ++cc)
                    m[static_cast<size_t>(r)][static_cast<size_t>(cc)] -=
                        fct * m[static_cast<size_t>(row)][static_cast<size_t>(cc)];
            }
            pivot_col.push_back(c);
            ++row;
        }
        for (long r = 0; r < row; ++r) {
            long c = pivot_col[static_cast<size_t>(r)];
            x[static_cast<size_t>(c)] = m[static_cast<size_t>(r)][static_cast<size_t>(d)] /
                                        m[static_cast<size_t>(r)][static_cast<size_t>(c)];
        }
        for (long r = row; r < d; ++r)
            ELLBETA_CHECK_MSG(m[static_cast<size_t>(r)][static_cast<size_t>(d)] == 0,
                              "inconsistent system in recognize");
        return x;
    };
    auto xu = solve_part([](const Scalar& s) { return s.u(); });
    auto xv = solve_part([](const Scalar& s) { return s.v(); });

    EPoly p;
    for (long c = 0; c < d; ++c)
        p.add_term(basis[static_cast<size_t>(c)].first, basis[static_cast<size_t>(c)].second,
                   Scalar::from_uv(xu[static_cast<size_t>(c)], xv[static_cast<size_t>(c)]));

    // verify against every available coefficient
    QSeries back = expand(p, f.prec);
    for (long n = 0; n < f.prec; ++n)
        ELLBETA_CHECK_MSG(back.c[static_cast<size_t>(n)] == f.c[static_cast<size_t>(n)],
                          "series is not a weight-" << k << " form (q^" << n << ")");
    return ModForm(k, p);
}

void series_uv(const QSeries& f, std::vector<Rat>& u, std::vector<Rat>& v) {
    u.resize(static_cast<size_t>(f.prec));
    v.resize(static_cast<size_t>(f.prec));
    for (long n = 0; n < f.prec; ++n) {
        u[static_cast<size_t>(n)] = f.c[static_cast<size_t>(n)].u();
        v[static_cast<size_t>(n)] = f.c[static_cast<size_t>(n)].v();
    }
}

void epoly_to_vec(const EPoly& p, long t, std::vector<Rat>& u, std::vector<Rat>& v) {
    auto mons = all_monomials(t);
    u.assign(mons.size(), Rat(0));
    v.assign(mons.size(), Rat(0));
    std::map<std::pair<long, long>, size_t> index;
    for (size_t i = 0; i < mons.size(); ++i) index[{mons[i].a, mons[i].b}] = i;
    for (const auto& [k, s] : p.c) {
        auto it = index.find(k);
        ELLBETA_CHECK_MSG(it != index.end(),
                          "monomial E1^" << k.first << " E3^" << k.second
                                         << " outside weight range " << t);
        u[it->second] = s.u();
        v[it->second] = s.v();
    }
}

EPoly vec_to_epoly(const std::vector<Rat>& u, const std::vector<Rat>& v, long t) {
    auto mons = all_monomials(t);
    ELLBETA_CHECK(u.size() == mons.size() && v.size() == mons.size());
    EPoly p;
    for (size_t i = 0; i < mons.size(); ++i)
        p.add_term(mons[i].a, mons[i].b, Scalar::from_uv(u[i], v[i]));
    return p;
}

}  // namespace ellbeta

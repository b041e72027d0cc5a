#include "ellbeta/qseries.hpp"

namespace ellbeta {

QSeries QSeries::truncated(long p) const {
    ELLBETA_CHECK(p <= prec);
    QSeries r(p);
    for (long n = 0; n < p; ++n) r.c[n] = c[n];
    return r;
}

static long common_prec(const QSeries& a, const QSeries& b) {
    ELLBETA_CHECK_MSG(a.prec == b.prec, "precision mismatch " << a.prec << " vs " << b.prec);
    return a.prec;
}

QSeries add(const QSeries& a, const QSeries& b) {
    long p = common_prec(a, b);
    QSeries r(p);
    for (long n = 0; n < p; ++n) r.c[n] = a.c[n] + b.c[n];
    return r;
}

QSeries sub(const QSeries& a, const QSeries& b) {
    long p = common_prec(a, b);
    QSeries r(p);
    for (long n = 0; n < p; ++n) r.c[n] = a.c[n] - b.c[n];
    return r;
}

QSeries mul(const QSeries& a, const QSeries& b) {
    long p = common_prec(a, b);
    QSeries r(p);
    for (long i = 0; i < p; ++i) {
        if (a.c[i].is_zero()) continue;
        for (long j = 0; i + j < p; ++j) {
            if (b.c[j].is_zero()) continue;
            r.c[i + j] += a.c[i] * b.c[j];
        }
    }
    return r;
}

QSeries scale(const QSeries& a, const Scalar& s) {
    QSeries r(a.prec);
    for (long n = 0; n < a.prec; ++n) r.c[n] = a.c[n] * s;
    return r;
}

QSeries pow(const QSeries& a, unsigned long k) {
    QSeries r = QSeries::constant(Scalar(1), a.prec);
    QSeries b = a;
    while (k) {
        if (k & 1) r = mul(r, b);
        if (k >>= 1) b = mul(b, b);
    }
    return r;
}

QSeries invert_unit(const QSeries& a) {
    ELLBETA_CHECK(a.prec > 0);
    Scalar u0 = a.c[0].inv();
    QSeries r(a.prec);
    r.c[0] = u0;
    for (long n = 1; n < a.prec; ++n) {
        Scalar s;
        for (long k = 1; k <= n; ++k) s += a.c[k] * r.c[n - k];
        r.c[n] = -(u0 * s);
    }
    return r;
}

QSeries dilate(const QSeries& a, long k) {
    ELLBETA_CHECK(k >= 1);
    QSeries r(a.prec);
    for (long n = 0; n * k < a.prec; ++n) r.c[n * k] = a.c[n];
    return r;
}

XSeries mul(const XSeries& a, const XSeries& b) {
    ELLBETA_CHECK(a.qprec == b.qprec);
    long xm = a.xmax();
    ELLBETA_CHECK(b.xmax() == xm);
    XSeries r(xm, a.qprec);
    for (long i = 0; i <= xm; ++i)
        for (long j = 0; i + j <= xm; ++j)
            r.term[i + j] = add(r.term[i + j], mul(a.term[i], b.term[j]));
    return r;
}

XSeries exp_series(const XSeries& a) {
    long xm = a.xmax();
    for (const Scalar& s : a.term[0].c) ELLBETA_CHECK_MSG(s.is_zero(), "exp needs zero constant term");
    XSeries e(xm, a.qprec);
    e.term[0] = QSeries::constant(Scalar(1), a.qprec);
    // n e_n = sum_{k=1..n} k a_k e_{n-k}
    for (long n = 1; n <= xm; ++n) {
        QSeries s(a.qprec);
        for (long k = 1; k <= n; ++k)
            s = add(s, scale(mul(a.term[k], e.term[n - k]), Scalar(Rat(k))));
        e.term[n] = scale(s, Scalar(Rat(1, n)));
    }
    return e;
}

}  // namespace ellbeta

#pragma once

#include <vector>

#include "ellbeta/scalar.hpp"

namespace ellbeta {

// Truncated power series in q: coefficients for q^0 .. q^(prec-1).
struct QSeries {
    long prec = 0;
    std::vector<Scalar> c;

    QSeries() = default;
    explicit QSeries(long p) : prec(p), c(static_cast<size_t>(p)) { ELLBETA_CHECK(p >= 0); }

    static QSeries constant(const Scalar& s, long prec) {
        QSeries r(prec);
        if (prec > 0) r.c[0] = s;
        return r;
    }

    const Scalar& at(long n) const {
        ELLBETA_CHECK(n >= 0 && n < prec);
        return c[static_cast<size_t>(n)];
    }
    Scalar& at(long n) {
        ELLBETA_CHECK(n >= 0 && n < prec);
        return c[static_cast<size_t>(n)];
    }

    QSeries truncated(long p) const;

    bool operator==(const QSeries& o) const { return prec == o.prec && c == o.c; }
};

QSeries add(const QSeries& a, const QSeries& b);
QSeries sub(const QSeries& a, const QSeries& b);
QSeries mul(const QSeries& a, const QSeries& b);
QSeries scale(const QSeries& a, const Scalar& s);
QSeries pow(const QSeries& a, unsigned long k);

// Reciprocal of a series whose constant term is invertible.
QSeries invert_unit(const QSeries& a);

// Substitute q -> q^k (supported on exponents divisible by k).
QSeries dilate(const QSeries& a, long k);

// Truncated series in a formal variable x whose coefficients are q-series.
// Term k is the coefficient of x^k; all share the same q-precision.
struct XSeries {
    long qprec = 0;
    std::vector<QSeries> term;  // size = xmax + 1

    XSeries() = default;
    XSeries(long xmax, long qprec_) : qprec(qprec_), term(static_cast<size_t>(xmax) + 1) {
        for (auto& t : term) t = QSeries(qprec_);
    }
    long xmax() const { return static_cast<long>(term.size()) - 1; }
};

XSeries mul(const XSeries& a, const XSeries& b);

// exp of an x-series with zero constant term.
XSeries exp_series(const XSeries& a);

}  // namespace ellbeta

#include <random>

#include "doctest.h"
#include "ellbeta/error.hpp"
#include "ellbeta/qseries.hpp"

using namespace ellbeta;

namespace {

QSeries from_longs(std::initializer_list<long> cs) {
    QSeries r(static_cast<long>(cs.size()));
    long n = 0;
    for (long x : cs) r.c[n++] = Scalar(Rat(x));
    return r;
}

QSeries rand_series(std::mt19937& rng, long prec) {
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 6);
    QSeries r(prec);
    for (long n = 0; n < prec; ++n) {
        Rat re(num(rng), den(rng)), im(num(rng), den(rng));
        re.canonicalize();
        im.canonicalize();
        r.c[n] = Scalar(re, im);
    }
    return r;
}

QSeries naive_mul(const QSeries& a, const QSeries& b) {
    QSeries r(a.prec);
    for (long n = 0; n < r.prec; ++n) {
        Scalar s;
        for (long i = 0; i <= n; ++i) s = s + a.c[i] * b.c[n - i];
        r.c[n] = s;
    }
    return r;
}

}  // namespace

TEST_CASE("series ring basics") {
    QSeries a = from_longs({1, 1, 0});   // 1 + q
    QSeries b = from_longs({1, -1, 0});  // 1 - q
    CHECK(mul(a, b) == from_longs({1, 0, -1}));
    QSeries u = from_longs({1, 6, 0});
    CHECK(mul(u, u) == from_longs({1, 12, 36}));
    CHECK(pow(u, 2) == mul(u, u));
    CHECK(add(a, b) == from_longs({2, 0, 0}));
    CHECK(sub(a, a) == QSeries(3));
}

TEST_CASE("binary ops demand matching precision") {
    QSeries a(5), b(3);
    CHECK_THROWS_AS(add(a, b), CheckError);
    CHECK_THROWS_AS(mul(a, b), CheckError);
    CHECK(mul(a.truncated(3), b).prec == 3);
}

TEST_CASE("truncation") {
    QSeries a = from_longs({1, 2, 3, 4});
    CHECK(a.truncated(2) == from_longs({1, 2}));
    CHECK_THROWS_AS(a.truncated(5), CheckError);
}

TEST_CASE("unit inversion") {
    CHECK(invert_unit(from_longs({1, 1, 0})) == from_longs({1, -1, 1}));
    CHECK(invert_unit(from_longs({1, 6, 0})) == from_longs({1, -6, 36}));
    QSeries half = invert_unit(QSeries::constant(Scalar(Rat(2)), 2));
    CHECK(half.at(0) == Scalar(Rat(1, 2)));
    CHECK_THROWS_WITH_AS(invert_unit(QSeries(4)), doctest::Contains("inverse of zero"),
                         CheckError);
    QSeries no_const(3);
    no_const.c[1] = Scalar(Rat(1));
    CHECK_THROWS_AS(invert_unit(no_const), CheckError);
}

TEST_CASE("inversion involutes and inverts") {
    std::mt19937 rng(17);
    for (int t = 0; t < 30; ++t) {
        QSeries a = rand_series(rng, 12);
        a.c[0] = Scalar(Rat(1), Rat(1));  // force a unit constant
        QSeries inv = invert_unit(a);
        CHECK(mul(a, inv) == QSeries::constant(Scalar(Rat(1)), 12));
        CHECK(invert_unit(inv) == a);
    }
}

TEST_CASE("multiplication against schoolbook convolution") {
    std::mt19937 rng(23);
    for (int t = 0; t < 30; ++t) {
        QSeries a = rand_series(rng, 10), b = rand_series(rng, 10);
        CHECK(mul(a, b) == naive_mul(a, b));
    }
}

TEST_CASE("scaling") {
    QSeries a = from_longs({1, 2, 3});
    QSeries s = scale(a, Scalar(Rat(1, 2)));
    CHECK(s.at(1) == Scalar(Rat(1)));
    CHECK(s.at(2) == Scalar(Rat(3, 2)));
}

TEST_CASE("dilation substitutes powers of q") {
    QSeries a = from_longs({5, 7, 0, 0, 0, 0});
    QSeries d = dilate(a, 3);
    CHECK(d.at(0) == Scalar(Rat(5)));
    CHECK(d.at(3) == Scalar(Rat(7)));
    CHECK(d.at(1) == Scalar());
    CHECK(dilate(a, 1) == a);
}

TEST_CASE("exponential of a power series in x") {
    XSeries x(3, 4);
    x.term[1] = QSeries::constant(Scalar(Rat(1)), 4);
    XSeries e = exp_series(x);
    CHECK(e.term[0] == QSeries::constant(Scalar(Rat(1)), 4));
    CHECK(e.term[1] == QSeries::constant(Scalar(Rat(1)), 4));
    CHECK(e.term[2] == QSeries::constant(Scalar(Rat(1, 2)), 4));
    CHECK(e.term[3] == QSeries::constant(Scalar(Rat(1, 6)), 4));

    XSeries zero(3, 4);
    XSeries one = exp_series(zero);
    CHECK(one.term[0] == QSeries::constant(Scalar(Rat(1)), 4));
    CHECK(one.term[1] == QSeries(4));
}

TEST_CASE("exponential homomorphism") {
    std::mt19937 rng(31);
    for (int t = 0; t < 8; ++t) {
        XSeries a(4, 5), b(4, 5);
        for (long i = 1; i <= 4; ++i) {
            a.term[i] = rand_series(rng, 5);
            b.term[i] = rand_series(rng, 5);
        }
        XSeries sum(4, 5);
        for (long i = 1; i <= 4; ++i) sum.term[i] = add(a.term[i], b.term[i]);
        XSeries lhs = exp_series(sum);
        XSeries rhs = mul(exp_series(a), exp_series(b));
        for (long i = 0; i <= 4; ++i) CHECK(lhs.term[i] == rhs.term[i]);
    }
}

TEST_CASE("exponential rejects a constant term") {
    XSeries a(2, 3);
    a.term[0] = QSeries::constant(Scalar(Rat(1)), 3);
    CHECK_THROWS_WITH_AS(exp_series(a), doctest::Contains("zero constant"), CheckError);
}

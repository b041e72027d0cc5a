#include <random>
#include <vector>

#include "doctest.h"
#include "ellbeta/bernoulli.hpp"
#include "ellbeta/error.hpp"
#include "ellbeta/jsonio.hpp"
#include "ellbeta/scalar.hpp"

using namespace ellbeta;

namespace {

// Independent Bernoulli oracle: Akiyama-Tanigawa triangle over exact rationals.
// The triangle yields the B(1) = +1/2 convention; flip the odd entry.
Rat bernoulli_at(unsigned long n) {
    std::vector<Rat> a(n + 1);
    for (unsigned long m = 0; m <= n; ++m) {
        a[m] = Rat(1, static_cast<long>(m) + 1);
        for (unsigned long j = m; j >= 1; --j) {
            a[j - 1] = Rat(static_cast<long>(j)) * (a[j - 1] - a[j]);
            a[j - 1].canonicalize();
        }
    }
    return n == 1 ? Rat(-a[0]) : a[0];
}

Scalar rand_scalar(std::mt19937& rng) {
    std::uniform_int_distribution<long> num(-20, 20);
    std::uniform_int_distribution<long> den(1, 12);
    Rat re(num(rng), den(rng));
    Rat im(num(rng), den(rng));
    re.canonicalize();
    im.canonicalize();
    return Scalar(re, im);
}

}  // namespace

TEST_CASE("legendre symbol mod 3") {
    CHECK(legendre3(1) == 1);
    CHECK(legendre3(2) == -1);
    CHECK(legendre3(3) == 0);
    CHECK(legendre3(4) == 1);
    CHECK(legendre3(6) == 0);
    CHECK(legendre3(7) == 1);
}

TEST_CASE("bernoulli numbers") {
    CHECK(bernoulli_number(0) == Rat(1));
    CHECK(bernoulli_number(1) == Rat(-1, 2));
    CHECK(bernoulli_number(2) == Rat(1, 6));
    CHECK(bernoulli_number(3) == Rat(0));
    CHECK(bernoulli_number(12) == Rat(-691, 2730));
    for (unsigned long n = 0; n <= 40; ++n)
        CHECK(bernoulli_number(n) == bernoulli_at(n));
}

TEST_CASE("bernoulli polynomial at one third") {
    CHECK(bernoulli_poly_third(1) == Rat(-1, 6));
    // B_2(x) = x^2 - x + 1/6 at 1/3.
    CHECK(bernoulli_poly_third(2) == Rat(-1, 18));
    CHECK(bernoulli_poly_third(3) == Rat(1, 27));
}

TEST_CASE("generalized bernoulli numbers for the quadratic character") {
    CHECK(generalized_bernoulli_chi(1) == Rat(-1, 3));
    CHECK(generalized_bernoulli_chi(3) == Rat(2, 3));
    // chi is odd, so even weights carry no value.
    CHECK_THROWS_AS(generalized_bernoulli_chi(2), CheckError);
    // Cross-check against the defining sum B_{w,chi} = 2 * 3^{w-1} * B_w(1/3).
    for (unsigned long w = 1; w <= 15; w += 2) {
        Rat expect = Rat(2) * Rat(ipow(3, w - 1)) * bernoulli_poly_third(w);
        expect.canonicalize();
        CHECK(generalized_bernoulli_chi(w) == expect);
    }
}

TEST_CASE("scalar ring constants") {
    Scalar d = Scalar::delta();
    CHECK(d * d == Scalar(Rat(-3)));
    CHECK(d * d * d == Scalar(Rat(0), Rat(-3)));
    CHECK(Scalar::zeta() == Scalar(Rat(-1, 2), Rat(1, 2)));
    // delta is a unit: delta * (-delta/3) = 1.
    CHECK(d * Scalar(Rat(0), Rat(-1, 3)) == Scalar(Rat(1)));
    CHECK(d.inv() == Scalar(Rat(0), Rat(-1, 3)));
}

TEST_CASE("scalar uv coordinates") {
    Scalar s(Rat(2), Rat(5));
    CHECK(s.u() == Rat(7));
    CHECK(s.v() == Rat(10));
    CHECK(Scalar::from_uv(s.u(), s.v()) == s);
    std::mt19937 rng(11);
    for (int t = 0; t < 200; ++t) {
        Scalar a = rand_scalar(rng);
        CHECK(Scalar::from_uv(a.u(), a.v()) == a);
    }
}

TEST_CASE("scalar field axioms on random triples") {
    std::mt19937 rng(7);
    for (int t = 0; t < 1000; ++t) {
        Scalar a = rand_scalar(rng), b = rand_scalar(rng), c = rand_scalar(rng);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == Scalar());
        if (!(a == Scalar())) CHECK(a * a.inv() == Scalar(Rat(1)));
    }
}

TEST_CASE("scalar powers") {
    Scalar z = Scalar::zeta();
    CHECK(z.pow(3) == Scalar(Rat(1)));
    CHECK(z.pow(0) == Scalar(Rat(1)));
    Scalar d = Scalar::delta();
    CHECK(d.pow(4) == Scalar(Rat(9)));
}

TEST_CASE("2k-integrality over the ring with 3 inverted") {
    CHECK(Scalar(Rat(1, 3)).integral_2k());
    CHECK(Scalar(Rat(1, 9), Rat(-5, 27)).integral_2k());
    CHECK_FALSE(Scalar(Rat(1, 2)).integral_2k());
    CHECK(Scalar(Rat(4, 3)).integral_2k(2));
    CHECK_FALSE(Scalar(Rat(2, 3)).integral_2k(2));
    CHECK(Scalar(Rat(8), Rat(-8, 3)).integral_2k(3));
    auto w = IntegralityWitness::of(Scalar(Rat(1, 2)), 0);
    CHECK_FALSE(w.ok);
    auto w2 = IntegralityWitness::of(Scalar(Rat(4)), 2);
    CHECK(w2.ok);
}

TEST_CASE("uv coordinates track divisibility") {
    // s in 2^k Z[zeta] iff both uv coordinates are 2-adically divisible by 2^k.
    Scalar s = Scalar(Rat(1), Rat(1)) * Scalar(Rat(4));
    CHECK(s.integral_2k(2));
    CHECK(in_2k_z3(s.u(), 2));
    CHECK(in_2k_z3(s.v(), 2));
}

TEST_CASE("rational string round trips") {
    CHECK(rat_str(Rat(-5, 3)) == "-5/3");
    CHECK(rat_parse("-5/3") == Rat(-5, 3));
    CHECK(rat_parse("7") == Rat(7));
    std::mt19937 rng(3);
    std::uniform_int_distribution<long> num(-1000, 1000);
    std::uniform_int_distribution<long> den(1, 997);
    for (int t = 0; t < 200; ++t) {
        Rat x(num(rng), den(rng));
        x.canonicalize();
        CHECK(rat_parse(rat_str(x)) == x);
    }
}

TEST_CASE("scalar json round trip") {
    Scalar s(Rat(-7, 12), Rat(5, 9));
    json j = to_json(s);
    CHECK(j.contains("re"));
    CHECK(j.contains("im"));
    CHECK(scalar_from_json(j) == s);
}

TEST_CASE("two adic valuations") {
    CHECK(val2(Int(48)) == 4);
    CHECK(val2(Rat(12)) == 2);
    CHECK(val2(Rat(9, 7)) == 0);
    // rational val2 is only defined away from 2
    CHECK_THROWS_AS(val2(Rat(3, 8)), CheckError);
    // 3-integral means the reduced denominator is a power of 3
    CHECK(is_3integral(Rat(5, 7)) == false);
    CHECK(is_3integral(Rat(5, 3)) == true);
    CHECK(is_3integral(Rat(5, 9)) == true);
    CHECK(is_3integral(Rat(1, 2)) == false);
    Rat unreduced(6, 2);
    unreduced.canonicalize();
    CHECK(is_3integral(unreduced) == true);
}

TEST_CASE("odd inverse mod powers of two") {
    for (std::uint64_t a : {3ull, 5ull, 7ull, 1234567ull}) {
        std::uint64_t inv = inv_odd_mod2k(a, 64);
        CHECK(a * inv == 1ull);
        std::uint64_t inv8 = inv_odd_mod2k(a, 8);
        CHECK(((a * inv8) & 0xffull) == 1ull);
    }
}

#include <optional>

#include "doctest.h"
#include "ellbeta/congruence.hpp"
#include "ellbeta/error.hpp"
#include "ellbeta/genus.hpp"
#include "ellbeta/vpoly.hpp"

using namespace ellbeta;

namespace {

EPoly mono(long a, long b, const Scalar& c) {
    EPoly p;
    p.add_term(a, b, c);
    return p;
}

EPoly v1_image() { return mono(1, 0, Scalar(Rat(0), Rat(1, 3))); }

// (E3 - 1) - (E1^2 - 1)/4, the integral combination behind the basic congruence
EPoly basic_combo() {
    return mono(0, 1, Scalar(Rat(1))) + mono(0, 0, Scalar(Rat(-3, 4))) +
           mono(2, 0, Scalar(Rat(-1, 4)));
}

}  // namespace

TEST_CASE("linear solver mod powers of two") {
    using Row = std::vector<std::uint64_t>;
    auto sol = solve_mod_2k({Row{1, 0, 7}, Row{0, 1, 2}}, 2, 3);
    REQUIRE(sol.has_value());
    CHECK((*sol)[0] == 7);
    CHECK((*sol)[1] == 2);

    auto s2 = solve_mod_2k({Row{1, 2, 5}, Row{0, 4, 4}}, 2, 3);
    REQUIRE(s2.has_value());
    CHECK((((*s2)[0] + 2 * (*s2)[1]) & 7u) == 5u);
    CHECK(((4 * (*s2)[1]) & 7u) == 4u);

    // a positive-valuation pivot that cannot divide the rhs throws rather
    // than returning an unsound negative; a rhs pivot is a clean negative
    CHECK_THROWS_AS(solve_mod_2k({Row{2, 1}}, 1, 3), CheckError);
    CHECK_FALSE(solve_mod_2k({Row{0, 1}}, 1, 3).has_value());
    // redundant consistent rows are fine
    auto s3 = solve_mod_2k({Row{2, 0, 6}, Row{1, 0, 3}}, 2, 3);
    REQUIRE(s3.has_value());
    CHECK((*s3)[0] == 3);
}

TEST_CASE("multiplier normalization") {
    UnitSplit s = unit_normalize(v1_image());
    CHECK(s.reduced == mono(1, 0, Scalar(Rat(-1))));
    CHECK(scale(s.reduced, s.unit) == v1_image());
    for (const auto& [k, c] : s.reduced.c) {
        CHECK(c.u().get_den() == 1);
        CHECK(c.v().get_den() == 1);
    }

    EPoly z11 = to_epoly(z_element(1, 1));
    UnitSplit t = unit_normalize(z11);
    CHECK(scale(t.reduced, t.unit) == z11);
    CHECK(t.reduced.is_laurent());
    for (const auto& [k, c] : t.reduced.c) CHECK(c.integral_2k());
}

TEST_CASE("basic congruence membership") {
    EPoly x = basic_combo();
    MemberWitness w = is_member(x, SubgroupSpec{1, 3});
    CHECK(w.member);
    // at the doubled exponent the q^2 coefficient 18 obstructs division by 4
    MemberWitness w2 = is_member(x, SubgroupSpec{2, 3});
    CHECK_FALSE(w2.member);
    CHECK(!w2.diagnostic.empty());
    MemberWitness z = is_member(EPoly{}, SubgroupSpec{2, 3});
    CHECK(z.member);
}

TEST_CASE("membership with a multiplier part") {
    EPoly mu = v1_image();
    SubgroupSpec g{3, 3, mu, 2, false};
    EPoly x = mu * mono(2, 0, Scalar(Rat(1, 3)));
    MemberWitness w = is_member(x, g);
    CHECK(w.member);
    EPoly y = mono(0, 0, Scalar(Rat(1, 2)));
    MemberWitness neg = is_member(y, SubgroupSpec{1, 3});
    CHECK_FALSE(neg.member);
}

TEST_CASE("membership with free edges") {
    SubgroupSpec g{1, 3, std::nullopt, 0, true};
    // omega + 1 absorbs: E1^2/4 + 3/4 = E3 - 2 * (basic congruence element)
    EPoly x = mono(2, 0, Scalar(Rat(1, 4))) + mono(0, 0, Scalar(Rat(3, 4)));
    CHECK(is_member(x, g).member);
    // E1/2 absorbs too: E1 + 3*E1^3 = 4*E1*(1 + 3*omega), top row free
    EPoly half_e1 = mono(1, 0, Scalar(Rat(1, 2)));
    CHECK(is_member(half_e1, g).member);
    // half the omega cube stays pinned at the interior weight-six row
    EPoly omega = mono(2, 0, Scalar(Rat(1, 4))) + mono(0, 0, Scalar(Rat(-1, 4)));
    EPoly om3 = omega * omega * omega;
    SubgroupSpec g8{0, 8, std::nullopt, 0, true};
    CHECK(is_member(om3, g8).member);
    CHECK_FALSE(is_member(scale(om3, Scalar(Rat(1, 2))), g8).member);
}

TEST_CASE("quotient ring reduction") {
    QuotientPoly r = quotient_reduce(x_element(0), 1, 1);
    QuotientPoly expect;
    expect.K = 1;
    expect.J = 1;
    expect.c[{0, 1}] = {1, 0};
    CHECK(r == expect);

    QuotientPoly r3 = quotient_reduce(x_element(3), 2, 6);
    QuotientPoly e3;
    e3.K = 2;
    e3.J = 6;
    e3.c[{0, 8}] = {1, 0};
    e3.c[{3, 7}] = {2, 0};
    CHECK(r3 == e3);
}

TEST_CASE("sixth power splitting identity") {
    VPoly lhs = pow(VPoly::monomial(1, 0), 6);
    VPoly rhs = z_element(1, 1) * pow(VPoly::monomial(1, 0), 4) +
                scale(VPoly::monomial(3, 1), Scalar(Rat(4)));
    CHECK(lhs == rhs);
}

TEST_CASE("class comparison") {
    EPoly omega = mono(2, 0, Scalar(Rat(1, 4))) + mono(0, 0, Scalar(Rat(-1, 4)));
    EPoly om3 = omega * omega * omega;
    FInvariantClass f{8, scale(om3, Scalar(Rat(1, 2)))};
    CHECK(finv_equal(f, f));

    // weight-0 and top-weight edges are free
    FInvariantClass g{8, f.representative + mono(0, 0, Scalar(Rat(1, 2)))};
    CHECK(finv_equal(f, g));
    FInvariantClass h{8, f.representative + mono(2, 2, Scalar(Rat(3, 16)))};
    CHECK(finv_equal(f, h));

    // adding an integral-expansion element changes nothing
    FInvariantClass k{8, f.representative + om3 + mono(0, 1, Scalar(Rat(2)))};
    CHECK(finv_equal(f, k));

    CHECK_THROWS_AS(finv_equal(f, FInvariantClass{6, EPoly{}}), CheckError);
}

TEST_CASE("class comparison separates an odd half") {
    // quarters at weight three absorb into the free top row
    FInvariantClass zero3{3, EPoly{}};
    FInvariantClass quarter{3, mono(1, 0, Scalar(Rat(1, 4)))};
    CHECK(finv_equal(zero3, quarter));
    FInvariantClass half{3, mono(1, 0, Scalar(Rat(1, 2)))};
    CHECK(finv_equal(zero3, half));
    // E3/2 and the shifted quarter agree up to the basic congruence element
    FInvariantClass a{3, mono(0, 1, Scalar(Rat(1, 2)))};
    FInvariantClass b{3, mono(0, 0, Scalar(Rat(1, 4))) + mono(2, 0, Scalar(Rat(1, 8)))};
    CHECK(finv_equal(a, b));
    // half the omega cube does not absorb: its weight-six row is interior
    EPoly omega = mono(2, 0, Scalar(Rat(1, 4))) + mono(0, 0, Scalar(Rat(-1, 4)));
    EPoly om3 = omega * omega * omega;
    FInvariantClass zero8{8, EPoly{}};
    CHECK(finv_equal(zero8, FInvariantClass{8, om3}));
    CHECK_FALSE(finv_equal(zero8, FInvariantClass{8, scale(om3, Scalar(Rat(1, 2)))}));
}

TEST_CASE("class scaling") {
    EPoly omega = mono(2, 0, Scalar(Rat(1, 4))) + mono(0, 0, Scalar(Rat(-1, 4)));
    EPoly om3 = omega * omega * omega;
    FInvariantClass f{8, scale(om3, Scalar(Rat(1, 2)))};
    FInvariantClass doubled = scale_class(f, Rat(2));
    CHECK(finv_equal(doubled, FInvariantClass{8, EPoly{}}));
    CHECK_FALSE(finv_equal(f, FInvariantClass{8, EPoly{}}));
}

TEST_CASE("beta solve on the first seeded generators") {
    EPoly v1 = v1_image();
    EPoly x3 = to_epoly(pow(x_element(0), 3));
    SolveResult r = elliptic_beta_solve(x3, 1, v1, 1);
    CHECK(r.two_exp == 1);
    CHECK(r.top_weight == 9);
    CHECK(r.cls.index_weight == 8);

    EPoly omega = mono(2, 0, Scalar(Rat(1, 4))) + mono(0, 0, Scalar(Rat(-1, 4)));
    EPoly om3 = omega * omega * omega;
    CHECK(finv_equal(r.cls, FInvariantClass{8, scale(om3, Scalar(Rat(1, 2)))}));

    // x = phi + 2 * defect exactly, both pieces integral
    EPoly back = r.phi + scale(r.defect, Scalar(Rat(2)));
    CHECK(back == x3);

    // a guard precision changes nothing
    SolveResult rg = elliptic_beta_solve(x3, 1, v1, 1, 6);
    CHECK(finv_equal(r.cls, rg.cls));
}

TEST_CASE("integer series arithmetic mod two to the sixty four") {
    auto e1 = mod2_e1(20);
    const auto& ref = e1_int(20);
    for (long n = 0; n < 20; ++n) {
        std::uint64_t expect = static_cast<std::uint64_t>(ref[n].get_si());
        CHECK(e1[n] == expect);
    }
    auto sq = mod2_mul(e1, e1);
    CHECK(sq[1] == 12);
    CHECK(mod2_pow(e1, 2) == sq);
    auto inv = mod2_e1_inv(20);
    auto prod = mod2_mul(e1, inv);
    CHECK(prod[0] == 1);
    for (long n = 1; n < 20; ++n) CHECK(prod[n] == 0);
    auto om = mod2_omega(20);
    CHECK(om[0] == 0);
    CHECK(om[1] == 3);
    for (long n = 0; n < 20; ++n)
        CHECK((sq[n] - (4 * om[n] + (n == 0 ? 1 : 0))) == 0);
}

TEST_CASE("integer membership fast path") {
    long t = 3;
    long P = 2 * precision_policy(t);
    auto e3 = mod2_e3(P);
    auto om = mod2_omega(P);
    std::vector<std::uint64_t> x(e3.size());
    for (size_t n = 0; n < x.size(); ++n)
        x[n] = e3[n] - om[n] - (n == 0 ? 1 : 0);
    CHECK(integer_member_mod2(x, t, 1, -1));
    std::string diag;
    CHECK_FALSE(integer_member_mod2(x, t, 2, -1, &diag));
    CHECK(!diag.empty());
}

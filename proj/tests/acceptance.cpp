#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "ellbeta/beta.hpp"
#include "ellbeta/bernoulli.hpp"
#include "ellbeta/congruence.hpp"
#include "ellbeta/error.hpp"
#include "ellbeta/genus.hpp"

using namespace ellbeta;

namespace {

EPoly mono(long a, long b, const Scalar& c) {
    EPoly p;
    p.add_term(a, b, c);
    return p;
}

Scalar dscale(long p, long q) {
    Rat r(p, q);
    r.canonicalize();
    return Scalar(Rat(0), r);
}

Rat frac(long p, long q) {
    Rat r(p, q);
    r.canonicalize();
    return r;
}

EPoly omega_power(long e, const Rat& c) {
    EPoly om = mono(2, 0, Scalar(Rat(1, 4))) + mono(0, 0, Scalar(Rat(-1, 4)));
    EPoly r = mono(0, 0, Scalar(Rat(1)));
    for (long k = 0; k < e; ++k) r = r * om;
    return scale(r, Scalar(c));
}

int suite_jobs() { return 4; }

bool check_eisenstein(std::string& note) {
    long P = 1000;
    const auto& e1 = e1_int(P);
    const auto& e3 = e3_int(P);
    if (e1[0] != 1 || e1[1] != 6 || e1[2] != 0 || e1[3] != 6) {
        note = "weight-one head mismatch";
        return false;
    }
    if (e3[0] != 1 || e3[1] != -9 || e3[2] != 27) {
        note = "weight-three head mismatch";
        return false;
    }
    for (long n = 1; n < P; ++n) {
        Int s1 = 0, s3 = 0;
        for (long d = 1; d * d <= n; ++d) {
            if (n % d != 0) continue;
            long e = n / d;
            s1 += legendre3(static_cast<unsigned long>(d));
            s3 += Int(legendre3(static_cast<unsigned long>(d))) * d * d;
            if (e != d) {
                s1 += legendre3(static_cast<unsigned long>(e));
                s3 += Int(legendre3(static_cast<unsigned long>(e))) * e * e;
            }
        }
        if (e1[n] != Int(6) * s1) {
            note = "sigma mismatch at q^" + std::to_string(n) + " for weight 1";
            return false;
        }
        if (e3[n] != Int(-9) * s3) {
            note = "sigma mismatch at q^" + std::to_string(n) + " for weight 3";
            return false;
        }
    }
    note = "q-expansions match direct divisor sums to q^1000";
    return true;
}

bool check_basic_congruence(std::string& note) {
    long P = 200;
    const auto& e3 = e3_int(2 * P);
    // exact integer check of ((E3 - 1) - (E1^2 - 1)/4) / 2 on the first 200 terms
    const auto& e1 = e1_int(2 * P);
    std::vector<Int> omega(2 * P);
    for (long n = 0; n < 2 * P; ++n) {
        Int s = 0;
        for (long k = 0; k <= n; ++k) s += e1[k] * e1[n - k];
        if (n == 0) s -= 1;
        if (s % 4 != 0) {
            note = "(E1^2-1)/4 failed integrality at q^" + std::to_string(n);
            return false;
        }
        omega[n] = s / 4;
    }
    for (long n = 0; n < P; ++n) {
        Int x = e3[n] - omega[n] - (n == 0 ? 1 : 0);
        if (x % 2 != 0) {
            note = "odd coefficient at q^" + std::to_string(n);
            return false;
        }
    }
    bool found = false;
    long where = -1;
    for (long n = 0; n < 2 * P; ++n) {
        Int x = e3[n] - omega[n] - (n == 0 ? 1 : 0);
        if (x % 4 != 0) {
            found = true;
            where = n;
            break;
        }
    }
    if (!found) {
        note = "negative control found no obstruction mod 4";
        return false;
    }
    EPoly x = mono(0, 1, Scalar(Rat(1))) + mono(0, 0, Scalar(Rat(-3, 4))) +
              mono(2, 0, Scalar(Rat(-1, 4)));
    if (!is_member(x, SubgroupSpec{1, 3}).member) {
        note = "engine rejects the division by 2";
        return false;
    }
    if (is_member(x, SubgroupSpec{2, 3}).member) {
        note = "engine accepts the division by 4";
        return false;
    }
    note = "integral to q^200; division by 4 obstructed at q^" + std::to_string(where);
    return true;
}

bool check_genus_terms(std::string& note) {
    long P = precision_policy(21);
    XSeries g = genus_series(7, P);
    std::vector<EPoly> pins(8);
    pins[0] = mono(0, 0, Scalar(Rat(1)));
    pins[1] = mono(1, 0, dscale(1, 6));
    pins[2] = mono(2, 0, Scalar(Rat(1, 12)));
    pins[3] = mono(3, 0, dscale(1, 54)) + mono(0, 1, dscale(-1, 54));
    pins[4] = mono(4, 0, Scalar(frac(13, 2160))) + mono(1, 1, Scalar(frac(-16, 2160)));
    pins[5] = mono(5, 0, dscale(1, 648)) + mono(2, 1, dscale(-1, 648));
    pins[6] = mono(6, 0, Scalar(frac(121, 272160))) + mono(3, 1, Scalar(frac(-152, 272160))) +
              mono(0, 2, Scalar(frac(40, 272160)));
    pins[7] = mono(7, 0, dscale(7, 58320)) + mono(4, 1, dscale(-11, 58320)) +
              mono(1, 2, dscale(4, 58320));
    for (long n = 0; n <= 7; ++n) {
        ModForm m = recognize(g.term[static_cast<size_t>(n)], n);
        if (!(m.poly == pins[static_cast<size_t>(n)])) {
            note = "term x^" + std::to_string(n) + " differs from the displayed form";
            return false;
        }
    }
    note = "all eight expansion terms recognized against the displayed forms";
    return true;
}

bool check_orientation(std::string& note) {
    auto h = hazewinkel_images(precision_policy(21));
    EPoly w1 = mono(1, 0, dscale(1, 3));
    EPoly w3 = mono(3, 0, dscale(5, 27)) + mono(0, 1, dscale(-2, 27));
    EPoly w7 = mono(4, 1, dscale(70, 729)) + mono(1, 2, dscale(-14, 729)) +
               mono(7, 0, dscale(-65, 729));
    if (!(h.w1.poly == w1 && h.w3.poly == w3 && h.w7.poly == w7)) {
        note = "projective-space images differ from the closed forms";
        return false;
    }
    EPoly v1 = h.v1.poly, v2 = h.v2.poly;
    EPoly rhs = scale(v1 * v2 * (v2 + v1 * v1 * v1), Scalar(Rat(3)));
    if (!(h.v3.poly == rhs)) {
        note = "third generator decomposition fails";
        return false;
    }
    VPoly x1 = x_element(1);
    VPoly alt = x1 * x1 - VPoly::monomial(3, 3) -
                scale(VPoly::monomial(6, 2), Scalar(Rat(3))) -
                scale(VPoly::monomial(9, 1), Scalar(Rat(3)));
    if (!(x_element(2) == alt)) {
        note = "the two expressions for the degree-four generator differ";
        return false;
    }
    note = "orientation images and generator identities hold";
    return true;
}

bool run_suite(const char* name, long W, std::string& note) {
    auto rows = verify_suite(name, SuiteOptions{W, suite_jobs(), 0});
    long fails = 0;
    std::string first;
    for (const auto& r : rows)
        if (!r.pass) {
            if (!fails) first = r.name + (r.detail.empty() ? "" : ": " + r.detail);
            ++fails;
        }
    if (fails) {
        note = std::to_string(fails) + " of " + std::to_string(rows.size()) +
               " rows failed; first: " + first;
        return false;
    }
    note = "all " + std::to_string(rows.size()) + " rows pass";
    return !rows.empty();
}

bool check_lemmas(std::string& note) { return run_suite("lemmas", 48, note); }

bool check_theorem1(std::string& note) { return run_suite("theorem1", 36, note); }

bool check_theorem2(std::string& note) {
    if (!run_suite("theorem2", 24, note)) return false;
    std::string base = note;
    BetaIndex big{1, 4, 4, 1, BetaKind::higher};
    FInvariantClass f = compute_finv(big);
    if (!finv_equal(f, expected_finv(big))) {
        note = big.name() + " disagrees with the closed form";
        return false;
    }
    note = base + "; " + big.name() + " matches at weight 48";
    return true;
}

bool check_relations(std::string& note) {
    if (!run_suite("relations", 36, note)) return false;
    std::string base = note;
    for (long s : {1L, 3L}) {
        BetaIndex lo{s, 2, 2, 1, BetaKind::simple};
        BetaIndex hi{s, 2, 2, 0, BetaKind::simple};
        if (!finv_equal(scale_class(compute_finv(lo), Rat(2)), compute_finv(hi))) {
            note = "doubling fails for s=" + std::to_string(s);
            return false;
        }
    }
    BetaIndex h{1, 4, 4, 1, BetaKind::higher};
    BetaIndex sp{1, 4, 4, 2, BetaKind::simple};
    if (!finv_equal(compute_finv(h), compute_finv(sp))) {
        note = "order coincidence fails at the even cofactor";
        return false;
    }
    note = base + "; doubling and coincidence instances agree";
    return true;
}

bool check_perturbations(std::string& note) {
    std::vector<BetaIndex> picks = {
        {3, 0, 1, 0, BetaKind::simple},
        {1, 2, 4, 0, BetaKind::simple},
        {1, 2, 2, 1, BetaKind::simple},
        {1, 3, 2, 1, BetaKind::higher},
    };
    std::mt19937_64 rng(0x3b7a11);
    std::uniform_int_distribution<long> coef(-3, 3);
    for (int trial = 0; trial < 20; ++trial) {
        const BetaIndex& b = picks[static_cast<size_t>(trial) % picks.size()];
        FInvariantClass f = compute_finv(b);
        auto L = d_lattice(f.index_weight);
        std::vector<Rat> u(static_cast<size_t>(L->dim)), v(u.size());
        for (long c = 0; c < L->dim; ++c) {
            long cu = coef(rng), cv = coef(rng);
            if (!cu && !cv) continue;
            for (long r = 0; r < L->dim; ++r) {
                Rat e(L->basis[static_cast<size_t>(c)][static_cast<size_t>(r)], L->den);
                e.canonicalize();
                u[static_cast<size_t>(r)] += Rat(cu) * e;
                v[static_cast<size_t>(r)] += Rat(cv) * e;
            }
        }
        EPoly d = vec_to_epoly(u, v, f.index_weight);
        FInvariantClass g{f.index_weight, f.representative + d};
        if (!finv_equal(f, g)) {
            note = "perturbation " + std::to_string(trial) + " moved the class of " + b.name();
            return false;
        }
    }
    note = "20 lattice perturbations leave the classes fixed";
    return true;
}

bool check_beta_one(std::string& note) {
    FInvariantClass f = compute_finv({1, 0, 1, 0, BetaKind::simple});
    if (!finv_equal(f, FInvariantClass{f.index_weight, EPoly{}})) {
        note = "class of beta_1 is nonzero";
        return false;
    }
    FInvariantClass b3 = compute_finv({3, 0, 1, 0, BetaKind::simple});
    if (finv_equal(b3, FInvariantClass{b3.index_weight, EPoly{}})) {
        note = "control class beta_3 collapsed to zero";
        return false;
    }
    note = "beta_1 vanishes; beta_3 does not";
    return true;
}

struct Criterion {
    int id;
    const char* label;
    double budget_s;
    std::function<bool(std::string&)> run;
};

}  // namespace

int main() {
    std::vector<Criterion> crits = {
        {1, "eisenstein oracle", 5, check_eisenstein},
        {2, "basic congruence", 5, check_basic_congruence},
        {3, "genus expansion pins", 30, check_genus_terms},
        {4, "orientation pins", 10, check_orientation},
        {5, "lemma suite", 120, check_lemmas},
        {6, "order-two family", 300, check_theorem1},
        {7, "higher-order family", 600, check_theorem2},
        {8, "family relations", 120, check_relations},
        {9, "perturbation stability", 120, check_perturbations},
        {10, "degenerate first index", 10, check_beta_one},
    };
    bool all = true;
    for (const auto& c : crits) {
        std::string note;
        bool ok = false;
        auto t0 = std::chrono::steady_clock::now();
        try {
            ok = c.run(note);
        } catch (const std::exception& e) {
            ok = false;
            note = std::string("error: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (ok && secs > c.budget_s) {
            ok = false;
            note += " (exceeded " + std::to_string(c.budget_s) + " s budget)";
        }
        all = all && ok;
        std::printf("%s criterion %2d: %s (%.2f s) - %s\n", ok ? "PASS" : "FAIL", c.id,
                    c.label, secs, note.c_str());
        std::fflush(stdout);
    }
    std::printf("%s\n", all ? "ALL CRITERIA PASS" : "CRITERIA FAILED");
    return all ? 0 : 1;
}

#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ellbeta/qseries.hpp"

namespace ellbeta {

// Weight of the monomial E1^a * E3^b.
inline long monomial_weight(long a, long b) { return a + 3 * b; }

// Polynomial in E1, E3 with scalar coefficients, keyed by (a, b).
// A negative E1 exponent makes it a Laurent form (E1 is a unit q-series).
struct EPoly {
    std::map<std::pair<long, long>, Scalar> c;

    static EPoly monomial(long a, long b, const Scalar& s = Scalar(1)) {
        EPoly p;
        if (!s.is_zero()) p.c[{a, b}] = s;
        return p;
    }
    static EPoly constant(const Scalar& s) { return monomial(0, 0, s); }

    bool is_zero() const { return c.empty(); }
    bool is_laurent() const {
        for (const auto& [k, v] : c)
            if (k.first < 0) return true;
        return false;
    }
    // Highest total weight among monomials (0 for the zero polynomial).
    long top_weight() const {
        long w = 0;
        for (const auto& [k, v] : c) w = std::max(w, monomial_weight(k.first, k.second));
        return w;
    }
    // Weight if homogeneous, nullopt otherwise.
    std::optional<long> homogeneous_weight() const;

    void add_term(long a, long b, const Scalar& s) {
        if (s.is_zero()) return;
        auto it = c.find({a, b});
        if (it == c.end()) {
            c[{a, b}] = s;
        } else {
            it->second += s;
            if (it->second.is_zero()) c.erase(it);
        }
    }

    friend EPoly operator+(const EPoly& x, const EPoly& y);
    friend EPoly operator-(const EPoly& x, const EPoly& y);
    friend EPoly operator*(const EPoly& x, const EPoly& y);
    friend bool operator==(const EPoly& x, const EPoly& y) { return x.c == y.c; }
};

EPoly scale(const EPoly& p, const Scalar& s);
EPoly pow(const EPoly& p, unsigned long k);

// Homogeneous modular form of one weight.
struct ModForm {
    long weight = 0;
    EPoly poly;

    ModForm() = default;
    ModForm(long w, EPoly p);  // checks homogeneity
};

// Mixed weights, ordinary polynomial exponents.
using InhomForm = EPoly;
// Mixed weights, E1 exponent allowed negative.
using LaurentForm = EPoly;

// Monomials (a, b) with a + 3b = k, a decreasing; size k/3 + 1.
std::vector<std::pair<long, long>> monomial_basis(long k);

// All monomials of weight 0..t in flat order (weight-major, a decreasing within weight).
struct FlatMonomial {
    long w, a, b;
};
std::vector<FlatMonomial> all_monomials(long t);
long dim_forms(long k);        // k/3 + 1
long dim_forms_upto(long t);   // total flat count

// Rows of q-expansion needed to pin down weight-t questions: the total monomial
// count up to t plus a guard.
long precision_policy(long t);

// q-expansions. E1 = 1 + 6 sum sigma_chi,0 q^n; E3 = 1 - 9 sum sigma_chi,2 q^n;
// higher odd weights via the generalized Bernoulli constant.
QSeries eisenstein_odd(long w, long prec);
// Level-3 star form of weight 2n built from the classical weight-2n series:
// G_2n(tau) - 3^(2n-1) G_2n(3 tau).
QSeries eisenstein_even_star(long w, long prec);

// Integer q-expansions of E1, E3 and of E1^a E3^b (a >= 0); cached.
const std::vector<Int>& e1_int(long prec);
const std::vector<Int>& e3_int(long prec);
std::vector<Int> monomial_expansion(long a, long b, long prec);

QSeries expand(const EPoly& p, long prec);

// Exact coefficients of a q-series in the weight-k monomial basis.
// Fails if the series is not a form of that weight to its precision.
ModForm recognize(const QSeries& f, long k);

// (u, v) coordinate split of a scalar series.
void series_uv(const QSeries& f, std::vector<Rat>& u, std::vector<Rat>& v);

// Coefficient vector of an EPoly over all_monomials(t), split into (u, v) parts.
void epoly_to_vec(const EPoly& p, long t, std::vector<Rat>& u, std::vector<Rat>& v);
EPoly vec_to_epoly(const std::vector<Rat>& u, const std::vector<Rat>& v, long t);

}  // namespace ellbeta

#include "ellbeta/lattice.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>

namespace ellbeta {

namespace {

void mask_mod(Int& z, const Int& m) { mpz_fdiv_r(z.get_mpz_t(), z.get_mpz_t(), m.get_mpz_t()); }

Int inv_mod(const Int& u, const Int& m) {
    Int r;
    int ok = mpz_invert(r.get_mpz_t(), u.get_mpz_t(), m.get_mpz_t());
    ELLBETA_CHECK(ok);
    return r;
}

Int prime_pow(unsigned long p, unsigned long e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), p, e);
    return r;
}

// Row echelon of the expansion matrix modulo p^B with minimal-valuation pivots;
// pivot rows are normalized to leading entry exactly p^v.
struct LocalEchelon {
    long d = 0;
    unsigned long p = 2;
    unsigned long B = 0;
    Int pB;
    std::vector<std::vector<Int>> row;  // per pivot column; empty = none
    std::vector<long> val;              // pivot p-valuation per column, -1 = none
    long vmax = 0;

    LocalEchelon(long d_, unsigned long p_, unsigned long B_)
        : d(d_), p(p_), B(B_), pB(prime_pow(p_, B_)),
          row(static_cast<size_t>(d_)), val(static_cast<size_t>(d_), -1) {}

    Int unscale(const Int& z, long v) const {  // z / p^v, exact
        if (v == 0) return z;
        Int r;
        Int pv = prime_pow(p, static_cast<unsigned long>(v));
        mpz_divexact(r.get_mpz_t(), z.get_mpz_t(), pv.get_mpz_t());
        return r;
    }

    void insert(std::vector<Int> r) {
        for (long col = 0; col < d; ++col) {
            if (r[static_cast<size_t>(col)] == 0) continue;
            long vr = valp(r[static_cast<size_t>(col)], p);
            if (static_cast<unsigned long>(vr) >= B) {
                r[static_cast<size_t>(col)] = 0;
                continue;
            }
            if (val[static_cast<size_t>(col)] < 0) {
                Int inv = inv_mod(unscale(r[static_cast<size_t>(col)], vr), pB);
                for (auto& e : r) {
                    e *= inv;
                    mask_mod(e, pB);
                }
                val[static_cast<size_t>(col)] = vr;
                vmax = std::max(vmax, vr);
                row[static_cast<size_t>(col)] = std::move(r);
                return;
            }
            long vp = val[static_cast<size_t>(col)];
            if (vr < vp) {
                // the candidate takes over the pivot slot; the displaced row
                // (valuation vp > vr) is reduced against it below
                std::swap(r, row[static_cast<size_t>(col)]);
                auto& npr = row[static_cast<size_t>(col)];
                Int inv = inv_mod(unscale(npr[static_cast<size_t>(col)], vr), pB);
                for (auto& e : npr) {
                    e *= inv;
                    mask_mod(e, pB);
                }
                val[static_cast<size_t>(col)] = vr;
                vmax = std::max(vmax, vp);
                vp = vr;
            }
            Int f = unscale(r[static_cast<size_t>(col)], vp);
            const auto& pr = row[static_cast<size_t>(col)];
            for (long i = col; i < d; ++i) {
                if (pr[static_cast<size_t>(i)] == 0) continue;
                mpz_submul(r[static_cast<size_t>(i)].get_mpz_t(), f.get_mpz_t(), pr[static_cast<size_t>(i)].get_mpz_t());
                mask_mod(r[static_cast<size_t>(i)], pB);
            }
        }
    }

    bool complete() const {
        return std::all_of(val.begin(), val.end(), [](long v) { return v >= 0; });
    }
};

// Generic exact column echelon (insertion with extended gcd), used for merging
// generator sets; operates in place on integer columns of length nrows.
void echelon_insert(std::vector<std::vector<Int>>& pivots, std::vector<long>& pivot_row,
                    std::vector<Int> col, long nrows) {
    for (long r = 0; r < nrows; ++r) {
        if (col[static_cast<size_t>(r)] == 0) continue;
        long slot = -1;
        for (size_t k = 0; k < pivot_row.size(); ++k)
            if (pivot_row[k] == r) {
                slot = static_cast<long>(k);
                break;
            }
        if (slot < 0) {
            pivots.push_back(std::move(col));
            pivot_row.push_back(r);
            return;
        }
        auto& p = pivots[static_cast<size_t>(slot)];
        Int a = p[static_cast<size_t>(r)], b = col[static_cast<size_t>(r)];
        Int g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        Int fa = a / g, fb = b / g;
        for (long i = 0; i < nrows; ++i) {
            Int pi = p[static_cast<size_t>(i)], ci = col[static_cast<size_t>(i)];
            p[static_cast<size_t>(i)] = s * pi + t * ci;
            col[static_cast<size_t>(i)] = fa * ci - fb * pi;
        }
    }
}

// Canonical column Hermite form of a full-rank square integer matrix: columns
// reordered so column j has its first nonzero at row j, positive diagonal,
// entries below a pivot row in other columns reduced into [0, pivot).
void hermite_square(std::vector<std::vector<Int>>& cols, long d) {
    std::vector<std::vector<Int>> pv;
    std::vector<long> pr;
    for (auto& c : cols) echelon_insert(pv, pr, std::move(c), d);
    ELLBETA_CHECK_MSG(static_cast<long>(pv.size()) == d, "rank deficient in hermite_square");
    // order by pivot row
    std::vector<std::vector<Int>> out(static_cast<size_t>(d));
    for (size_t k = 0; k < pv.size(); ++k) out[static_cast<size_t>(pr[k])] = std::move(pv[k]);
    for (long j = 0; j < d; ++j) {
        if (out[static_cast<size_t>(j)][static_cast<size_t>(j)] < 0)
            for (auto& e : out[static_cast<size_t>(j)]) e = -e;
    }
    for (long r = 0; r < d; ++r) {
        const Int& piv = out[static_cast<size_t>(r)][static_cast<size_t>(r)];
        for (long j = 0; j < r; ++j) {
            Int& e = out[static_cast<size_t>(j)][static_cast<size_t>(r)];
            if (e == 0) continue;
            Int f;
            mpz_fdiv_q(f.get_mpz_t(), e.get_mpz_t(), piv.get_mpz_t());
            if (f == 0) continue;
            for (long i = r; i < d; ++i)
                mpz_submul(out[static_cast<size_t>(j)][static_cast<size_t>(i)].get_mpz_t(), f.get_mpz_t(),
                           out[static_cast<size_t>(r)][static_cast<size_t>(i)].get_mpz_t());
        }
    }
    cols = std::move(out);
}

std::vector<unsigned long> odd_primes_upto(long n) {
    std::vector<unsigned long> ps;
    for (long p = 5; p <= n; ++p) {
        if (p % 3 == 0) continue;
        bool prime = true;
        for (long q = 2; q * q <= p; ++q)
            if (p % q == 0) {
                prime = false;
                break;
            }
        if (prime) ps.push_back(static_cast<unsigned long>(p));
    }
    return ps;
}

struct MatrixCacheEntry {
    long prec = 0;
    std::shared_ptr<const std::vector<std::vector<Int>>> cols;
};

std::mutex g_matrix_mtx;
std::map<long, MatrixCacheEntry> g_matrix_cache;

std::mutex g_lattice_mtx;
std::map<std::pair<long, long>, std::shared_ptr<const DLattice>> g_lattice_cache;

}  // namespace

std::shared_ptr<const std::vector<std::vector<Int>>> monomial_matrix(long t, long prec) {
    {
        std::lock_guard<std::mutex> lock(g_matrix_mtx);
        auto it = g_matrix_cache.find(t);
        if (it != g_matrix_cache.end() && it->second.prec >= prec) return it->second.cols;
    }
    auto mons = all_monomials(t);
    auto cols = std::make_shared<std::vector<std::vector<Int>>>();
    cols->reserve(mons.size());
    for (const auto& m : mons) cols->push_back(monomial_expansion(m.a, m.b, prec));
    std::lock_guard<std::mutex> lock(g_matrix_mtx);
    auto& e = g_matrix_cache[t];
    if (e.prec < prec) {
        e.prec = prec;
        e.cols = cols;
    }
    return e.cols;
}

static std::shared_ptr<DLattice> build_lattice(long t, long prec) {
    long d = dim_forms_upto(t);
    ELLBETA_CHECK_MSG(prec >= d + 4, "precision " << prec << " too low for weight " << t
                                                  << " (rank needs > " << d << " rows); raise the guard");
    auto A = monomial_matrix(t, prec);

    // local saturation prime by prime (3 is inverted throughout; odd primes
    // above t+1 cannot divide): row echelon of the expansion matrix mod p^B,
    // then a triangular dual basis with pure p-power denominators, entries
    // reduced mod 1 against the integral monomial vectors
    std::vector<unsigned long> primes{2};
    for (unsigned long p : odd_primes_upto(t + 1)) primes.push_back(p);
    std::vector<std::vector<Rat>> xs;
    for (unsigned long p : primes) {
        unsigned long B = 64;
        LocalEchelon ech(d, p, B);
        for (;;) {
            ech = LocalEchelon(d, p, B);
            for (long r = 0; r < prec; ++r) {
                std::vector<Int> row(static_cast<size_t>(d));
                for (long c = 0; c < d; ++c) {
                    row[static_cast<size_t>(c)] = (*A)[static_cast<size_t>(c)][static_cast<size_t>(r)];
                    mask_mod(row[static_cast<size_t>(c)], ech.pB);
                }
                ech.insert(std::move(row));
            }
            ELLBETA_CHECK_MSG(ech.complete(),
                              "expansion matrix rank-deficient at weight " << t << ", precision " << prec
                                                                           << "; raise the guard");
            if (2 * static_cast<unsigned long>(ech.vmax) + 48 <= B) break;
            B *= 2;
        }
        if (ech.vmax == 0) continue;  // already saturated at p
        for (long j = 0; j < d; ++j) {
            std::vector<Rat> x(static_cast<size_t>(d), Rat(0));
            long vj = ech.val[static_cast<size_t>(j)];
            x[static_cast<size_t>(j)] = Rat(1) / Rat(prime_pow(p, static_cast<unsigned long>(vj)));
            for (long i = j - 1; i >= 0; --i) {
                Rat s(0);
                const auto& hr = ech.row[static_cast<size_t>(i)];
                for (long k = i + 1; k <= j; ++k) {
                    if (x[static_cast<size_t>(k)] == 0 || hr[static_cast<size_t>(k)] == 0) continue;
                    s += Rat(hr[static_cast<size_t>(k)]) * x[static_cast<size_t>(k)];
                }
                if (s == 0) continue;
                Int fl;
                mpz_fdiv_q(fl.get_mpz_t(), s.get_num().get_mpz_t(), s.get_den().get_mpz_t());
                Rat frac = s - Rat(fl);
                if (frac == 0) continue;
                x[static_cast<size_t>(i)] =
                    -frac / Rat(prime_pow(p, static_cast<unsigned long>(ech.val[static_cast<size_t>(i)])));
            }
            bool integral = std::all_of(x.begin(), x.end(), [](const Rat& e) { return e.get_den() == 1; });
            if (!integral) xs.push_back(std::move(x));
        }
    }

    // merge with the integral monomial lattice over a common denominator and
    // echelonize over Z
    Int den = 1;
    for (const auto& x : xs)
        for (const Rat& e : x)
            if (e != 0) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), e.get_den().get_mpz_t());
    std::vector<std::vector<Int>> gen;
    for (const auto& x : xs) {
        std::vector<Int> c(static_cast<size_t>(d));
        for (long i = 0; i < d; ++i) {
            Rat e = x[static_cast<size_t>(i)] * Rat(den);
            ELLBETA_CHECK(e.get_den() == 1);
            c[static_cast<size_t>(i)] = e.get_num();
        }
        gen.push_back(std::move(c));
    }
    for (long j = 0; j < d; ++j) {
        std::vector<Int> c(static_cast<size_t>(d), Int(0));
        c[static_cast<size_t>(j)] = den;
        gen.push_back(std::move(c));
    }
    std::vector<std::vector<Int>> basis;
    {
        std::vector<long> prow;
        for (auto& c : gen) echelon_insert(basis, prow, std::move(c), d);
        ELLBETA_CHECK(static_cast<long>(basis.size()) == d);
    }

    // expansions of the current basis columns: expn = A * basis (over den)
    auto matmul = [&](const std::vector<std::vector<Int>>& G) {
        std::vector<std::vector<Int>> E(G.size());
        for (size_t j = 0; j < G.size(); ++j) {
            auto& col = E[j];
            col.assign(static_cast<size_t>(prec), Int(0));
            for (long k = 0; k < d; ++k) {
                const Int& g = G[j][static_cast<size_t>(k)];
                if (g == 0) continue;
                const auto& ac = (*A)[static_cast<size_t>(k)];
                for (long r = 0; r < prec; ++r)
                    mpz_addmul(col[static_cast<size_t>(r)].get_mpz_t(), ac[static_cast<size_t>(r)].get_mpz_t(),
                               g.get_mpz_t());
            }
        }
        return E;
    };

    hermite_square(basis, d);
    std::vector<std::vector<Int>> expn = matmul(basis);

    // certify: every expansion entry over den lies in Z[1/3]
    Int den3 = den;
    long cleared = 0;
    while (mpz_divisible_ui_p(den3.get_mpz_t(), 3)) {
        mpz_divexact_ui(den3.get_mpz_t(), den3.get_mpz_t(), 3);
        ++cleared;
    }
    for (long c = 0; c < d; ++c)
        for (long r = 0; r < prec; ++r)
            ELLBETA_CHECK_MSG(
                mpz_divisible_p(expn[static_cast<size_t>(c)][static_cast<size_t>(r)].get_mpz_t(),
                                den3.get_mpz_t()),
                "lattice certification failed at weight " << t << " col " << c << " row " << r);

    auto L = std::make_shared<DLattice>();
    L->top_weight = t;
    L->prec = prec;
    L->dim = d;
    L->monoms = all_monomials(t);
    L->den = den;
    L->cleared_power = cleared;
    L->basis = std::move(basis);
    L->expn = std::move(expn);
    return L;
}

std::shared_ptr<const DLattice> d_lattice(long t, long prec) {
    long want = prec >= 0 ? prec : precision_policy(t);
    {
        std::lock_guard<std::mutex> lock(g_lattice_mtx);
        if (prec < 0) {
            for (const auto& [key, L] : g_lattice_cache)
                if (key.first == t && key.second >= want) return L;
        } else {
            auto it = g_lattice_cache.find({t, prec});
            if (it != g_lattice_cache.end()) return it->second;
        }
    }
    auto L = build_lattice(t, want);
    std::lock_guard<std::mutex> lock(g_lattice_mtx);
    auto [it, fresh] = g_lattice_cache.try_emplace({t, want}, L);
    return it->second;
}

std::vector<Rat> DLattice::combine(const std::vector<Rat>& y) const {
    ELLBETA_CHECK(static_cast<long>(y.size()) == dim);
    std::vector<Rat> r(static_cast<size_t>(dim), Rat(0));
    for (long j = 0; j < dim; ++j) {
        if (y[static_cast<size_t>(j)] == 0) continue;
        for (long i = 0; i < dim; ++i) {
            const Int& g = basis[static_cast<size_t>(j)][static_cast<size_t>(i)];
            if (g != 0) r[static_cast<size_t>(i)] += Rat(g) * y[static_cast<size_t>(j)];
        }
    }
    return r;
}

bool DLattice::contains(const std::vector<Rat>& x) const {
    ELLBETA_CHECK(static_cast<long>(x.size()) == dim);
    std::vector<Rat> y(static_cast<size_t>(dim), Rat(0));
    for (long r = 0; r < dim; ++r) {
        Rat acc = x[static_cast<size_t>(r)] * Rat(den);
        for (long j = 0; j < r; ++j) {
            if (y[static_cast<size_t>(j)] == 0) continue;
            const Int& g = basis[static_cast<size_t>(j)][static_cast<size_t>(r)];
            if (g != 0) acc -= Rat(g) * y[static_cast<size_t>(j)];
        }
        y[static_cast<size_t>(r)] = acc / Rat(basis[static_cast<size_t>(r)][static_cast<size_t>(r)]);
        if (!is_3integral(y[static_cast<size_t>(r)])) return false;
    }
    return true;
}

// Edge projection: echelon of the basis columns restricted to non-edge rows
// (weights strictly between 0 and top_weight); full-length copies of the
// echelonized columns are kept so a witness lattice element can be rebuilt.
struct DLattice::Projection {
    std::vector<long> keep;                  // kept coordinate rows
    std::vector<std::vector<Int>> cols;      // echelon columns over kept rows
    std::vector<long> prow;                  // pivot (kept-)row per column
    std::vector<std::vector<Int>> full;      // same columns over all rows
};

const DLattice::Projection& DLattice::projection() const {
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    if (proj_) return *proj_;
    auto P = std::make_shared<Projection>();
    for (long i = 0; i < dim; ++i)
        if (monoms[static_cast<size_t>(i)].w > 0 && monoms[static_cast<size_t>(i)].w < top_weight)
            P->keep.push_back(i);
    long nk = static_cast<long>(P->keep.size());
    // echelon over kept rows, mirroring every column operation on full columns
    for (long j = 0; j < dim; ++j) {
        std::vector<Int> col(static_cast<size_t>(nk));
        for (long i = 0; i < nk; ++i)
            col[static_cast<size_t>(i)] = basis[static_cast<size_t>(j)][static_cast<size_t>(P->keep[static_cast<size_t>(i)])];
        std::vector<Int> fcol = basis[static_cast<size_t>(j)];
        bool placed = false;
        for (long r = 0; r < nk && !placed; ++r) {
            if (col[static_cast<size_t>(r)] == 0) continue;
            long slot = -1;
            for (size_t k = 0; k < P->prow.size(); ++k)
                if (P->prow[k] == r) {
                    slot = static_cast<long>(k);
                    break;
                }
            if (slot < 0) {
                P->cols.push_back(std::move(col));
                P->full.push_back(std::move(fcol));
                P->prow.push_back(r);
                placed = true;
                break;
            }
            auto& p = P->cols[static_cast<size_t>(slot)];
            auto& pf = P->full[static_cast<size_t>(slot)];
            Int a = p[static_cast<size_t>(r)], b = col[static_cast<size_t>(r)];
            Int g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
            Int fa = a / g, fb = b / g;
            for (long i = 0; i < nk; ++i) {
                Int pi = p[static_cast<size_t>(i)], ci = col[static_cast<size_t>(i)];
                p[static_cast<size_t>(i)] = s * pi + t * ci;
                col[static_cast<size_t>(i)] = fa * ci - fb * pi;
            }
            for (long i = 0; i < dim; ++i) {
                Int pi = pf[static_cast<size_t>(i)], ci = fcol[static_cast<size_t>(i)];
                pf[static_cast<size_t>(i)] = s * pi + t * ci;
                fcol[static_cast<size_t>(i)] = fa * ci - fb * pi;
            }
        }
    }
    proj_ = P;
    return *proj_;
}

bool DLattice::contains_mod_edges(const std::vector<Rat>& x, std::vector<Rat>* lattice_part) const {
    const auto& P = projection();
    long nk = static_cast<long>(P.keep.size());
    std::vector<Rat> rem(static_cast<size_t>(nk));
    for (long i = 0; i < nk; ++i)
        rem[static_cast<size_t>(i)] = x[static_cast<size_t>(P.keep[static_cast<size_t>(i)])] * Rat(den);
    std::vector<std::pair<long, size_t>> order;
    for (size_t k = 0; k < P.cols.size(); ++k) order.push_back({P.prow[k], k});
    std::sort(order.begin(), order.end());
    std::vector<Rat> qs(P.cols.size(), Rat(0));
    for (auto [r, k] : order) {
        if (rem[static_cast<size_t>(r)] == 0) continue;
        Rat q = rem[static_cast<size_t>(r)] / Rat(P.cols[k][static_cast<size_t>(r)]);
        if (!is_3integral(q)) return false;
        qs[k] = q;
        for (long i = 0; i < nk; ++i) {
            const Int& e = P.cols[k][static_cast<size_t>(i)];
            if (e != 0) rem[static_cast<size_t>(i)] -= q * Rat(e);
        }
    }
    if (!std::all_of(rem.begin(), rem.end(), [](const Rat& v) { return v == 0; })) return false;
    if (lattice_part) {
        lattice_part->assign(static_cast<size_t>(dim), Rat(0));
        for (size_t k = 0; k < qs.size(); ++k) {
            if (qs[k] == 0) continue;
            for (long i = 0; i < dim; ++i) {
                const Int& e = P.full[k][static_cast<size_t>(i)];
                if (e != 0) (*lattice_part)[static_cast<size_t>(i)] += qs[k] * Rat(e);
            }
        }
        for (auto& v : *lattice_part) v /= Rat(den);
    }
    return true;
}

}  // namespace ellbeta

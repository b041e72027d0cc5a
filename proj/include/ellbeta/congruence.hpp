#pragma once

#include <optional>
#include <string>

#include "ellbeta/lattice.hpp"

namespace ellbeta {

// Every multiplier in scope (v1^j, z_{i,m}) is a unit of Z[zeta_3, 1/3] times a
// polynomial (or Laurent polynomial) in E1, E3 with integer coefficients; the
// split below makes that explicit so cofactor systems stay over the integers
// and mu * M_{t-j} = reduced * M_{t-j} as subgroups.
struct UnitSplit {
    EPoly reduced;    // = delta^delta_exp * 3^three_exp * mu, integer coefficients
    Scalar unit;      // mu = unit * reduced
    long delta_exp = 0;
    long three_exp = 0;
};
UnitSplit unit_normalize(const EPoly& mu);

// Subgroup 2^a * D_t [+ mu * (weight-(t-j) forms)] [+ Q*1 + M_t (x) Q] of the
// divided-congruence group at top weight t.
struct SubgroupSpec {
    long two_exp = 0;
    long top_weight = 0;
    std::optional<EPoly> multiplier;
    long complement_weight = 0;
    bool rational_edges = false;
};

struct MemberWitness {
    bool member = false;
    std::string diagnostic;  // names the failing stage on a negative
    EPoly d;                 // x = 2^a d + mu h + c0 + ht
    EPoly h;
    Scalar c0;
    EPoly ht;
};

// Decides x in 2^a D_t + mu*M_{t-j} (+ edges); positive witnesses re-verified by
// exact expansion at doubled precision.
MemberWitness is_member(const EPoly& x, const SubgroupSpec& g);

// Class in the quotient of D_k (x) Q by D_k + M_0 (x) Q + M_k (x) Q.
struct FInvariantClass {
    long index_weight = 0;
    EPoly representative;
};

bool finv_equal(const FInvariantClass& f, const FInvariantClass& g);
FInvariantClass scale_class(const FInvariantClass& f, const Rat& c);

struct SolveResult {
    FInvariantClass cls;  // class of phi / 2^a at weight t - i1*|mu|
    EPoly phi;            // representative numerator, integral expansion
    EPoly defect;         // (x - phi) / 2^a, integral expansion
    long two_exp = 0;
    long top_weight = 0;
};

// Finds phi in the D_{t-i1*|mu|} lattice with x == mu^i1 * phi mod 2^a D_t,
// using the reduction to x == phi once (mu^i1 - 1)/2^a is checked to expand
// integrally; returns the class of phi/2^a. Throws CheckError("not invariant")
// when no solution exists.
SolveResult elliptic_beta_solve(const EPoly& xform, long a, const EPoly& mu, long i1,
                                long guard = 0);

// Linear solve mod 2^k over augmented uint64 rows [coeffs | rhs] of width
// dim + 1. Returns one solution or nullopt when the system is inconsistent
// (a pivot lands in the rhs column, or a pivot equation is unsatisfiable at
// valuation-zero pivots). A back-substitution blocked by a positive-valuation
// pivot raises CheckError rather than returning an unsound negative.
std::optional<std::vector<std::uint64_t>> solve_mod_2k(
    const std::vector<std::vector<std::uint64_t>>& rows, long dim, long k);

// Integer q-series arithmetic with uint64 wrap-around (exact mod 2^64);
// divisibility by 2^a is certified for a <= 62.
std::vector<std::uint64_t> mod2_reduce(const std::vector<Int>& a, long prec);
std::vector<std::uint64_t> mod2_mul(const std::vector<std::uint64_t>& a,
                                    const std::vector<std::uint64_t>& b);
std::vector<std::uint64_t> mod2_pow(const std::vector<std::uint64_t>& a, unsigned long e);
std::vector<std::uint64_t> mod2_e1(long prec);
std::vector<std::uint64_t> mod2_e3(long prec);
std::vector<std::uint64_t> mod2_e1_inv(long prec);
// (E1^2 - 1)/4 = 3A + 9A^2 where E1 = 1 + 6A; an integer series.
std::vector<std::uint64_t> mod2_omega(long prec);

// Large-weight membership fast path: decides x in 2^a D_t + E1^j M_{t-j}
// (j < 0: no multiplier part) for an INTEGER q-series x given mod 2^64 to
// at least 2*precision_policy(t) terms. Sound because only 2-divisibility is
// at stake for integer series; the solved cofactor is re-verified on all
// supplied rows. a <= 60.
bool integer_member_mod2(const std::vector<std::uint64_t>& x, long t, long a, long j,
                         std::string* diag = nullptr);

}  // namespace ellbeta

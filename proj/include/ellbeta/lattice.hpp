#pragma once

#include <memory>
#include <vector>

#include "ellbeta/forms.hpp"

namespace ellbeta {

// Lattice of inhomogeneous forms of weight <= top_weight whose q-expansions are
// 3-integral, in coordinates over all_monomials(top_weight).
//
// basis is a d x d integer matrix in column Hermite form over one global
// denominator den; cleared_power is the exponent of the 3-part of den.
// expn is the prec x d matrix of basis-column q-expansions times den
// (integer, certified divisible into Z[1/3] entries by construction).
struct DLattice {
    long top_weight = 0;
    long prec = 0;
    long dim = 0;
    std::vector<FlatMonomial> monoms;
    Int den;
    long cleared_power = 0;
    std::vector<std::vector<Int>> basis;  // [col][row], dim x dim
    std::vector<std::vector<Int>> expn;   // [col][row], dim cols x prec rows

    // Coefficient vector (over all_monomials(top_weight)) of den * (basis
    // combination with coordinates y): basis * y.
    std::vector<Rat> combine(const std::vector<Rat>& y) const;

    // Exact membership of a rational coordinate vector in the lattice tensored
    // with Z[1/3]: solve against the Hermite basis, coordinates must be 3-integral.
    bool contains(const std::vector<Rat>& x) const;

    // Membership of the vector in lattice + Q*span(edge rows): used for class
    // comparisons where the weight-0 line and the top-weight block are free.
    // On success, lattice_part (if given) receives the coordinates of a lattice
    // element agreeing with x away from the edge rows.
    bool contains_mod_edges(const std::vector<Rat>& x, std::vector<Rat>* lattice_part = nullptr) const;

private:
    struct Projection;
    mutable std::shared_ptr<Projection> proj_;
    const Projection& projection() const;
};

// Build (or fetch from cache) the lattice for weight t at the given expansion
// precision; prec < 0 means "any cached precision >= precision_policy(t), else
// build at the policy precision".
std::shared_ptr<const DLattice> d_lattice(long t, long prec = -1);

// Integer expansion matrix of all_monomials(t) at the given precision,
// column-major; shared cache.
std::shared_ptr<const std::vector<std::vector<Int>>> monomial_matrix(long t, long prec);

}  // namespace ellbeta

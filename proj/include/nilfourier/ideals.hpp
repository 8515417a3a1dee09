#pragma once

#include <vector>

#include "nilfourier/matrix.hpp"
#include "nilfourier/numfield.hpp"

namespace nilfourier {

/** Nonzero ideal of the order, stored as the Hermite normal form of its
    Z-basis in basis coordinates (rows span the ideal lattice). */
class IdealLattice {
public:
    FieldPtr field;
    IMat basis_matrix; // D x D, upper-triangular HNF
    Int norm;          // index of the lattice = |det|

    IdealLattice() = default;

    /// Ideal generated by integral elements (at least one nonzero).
    static IdealLattice from_generators(const FieldPtr& f, const std::vector<FieldElement>& gens);
    static IdealLattice principal(const FieldElement& a);
    static IdealLattice whole_ring(const FieldPtr& f);

    bool contains(const FieldElement& x) const;
    IdealLattice product(const IdealLattice& other) const;
    IdealLattice pow(unsigned k) const;

    bool operator==(const IdealLattice& o) const { return basis_matrix == o.basis_matrix; }
    bool operator<(const IdealLattice& o) const { return basis_matrix < o.basis_matrix; }
};

struct PrimeFactor {
    IdealLattice ideal;
    unsigned e; // ramification index
    unsigned f; // residue degree, norm = p^f
};

/** Prime ideals above a rational prime p, via factorization of the defining
    polynomial mod p. Requires a monogenic field and p not dividing the index
    (Dedekind's criterion); otherwise throws unsupported_error. */
std::vector<PrimeFactor> primes_above(const FieldPtr& field, const Int& p);

/// Largest k with n in J^k, by iterated lattice products; n integral nonzero.
unsigned valuation(const FieldElement& n, const IdealLattice& J);

/// (-1)^k when (n) is a product of k distinct prime ideals, else 0; units map to 1.
int mobius_K(const FieldElement& n);

/// |I ∩ R_{N,B}| / (2N+1)^D by exact lattice-point counting.
Rat density_estimate(const IdealLattice& I, long N);

} // namespace nilfourier

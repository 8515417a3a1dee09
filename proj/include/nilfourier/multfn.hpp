#pragma once

#include <map>
#include <string>
#include <vector>

#include "nilfourier/grid.hpp"
#include "nilfourier/ideals.hpp"
#include "nilfourier/numfield.hpp"

namespace nilfourier {

enum class MultKind {
    mobiusK,
    liouvilleK,
    constant_one,
    completely_multiplicative,
    periodic_character,
};

/** Multiplicative function of modulus at most 1 on the ring of a field. */
struct MultFnSpec {
    MultKind kind = MultKind::constant_one;
    FieldPtr field;

    // completely_multiplicative: values at prime elements, keyed by coordinates
    std::map<std::vector<Int>, cplx> prime_values;

    // periodic_character: modulus lattice and values keyed by reduced residue
    IdealLattice modulus;
    std::map<std::vector<Int>, cplx> residue_values;

    static MultFnSpec make(MultKind k, FieldPtr f);

    /// `kind=mobiusK|liouvilleK|one|cm|character` plus parameter lines.
    static MultFnSpec parse(const std::string& text, const FieldPtr& field);
};

/// Reduce integral coordinates modulo an ideal lattice (HNF residue).
std::vector<Int> residue_of(const IdealLattice& I, const FieldElement& n);

/// chi(n); chi(0) = 0 by convention.
cplx eval(const MultFnSpec& chi, const FieldElement& n);

/// chi composed with the coordinate map on [N]^D, zero elsewhere on Z_Ntilde^D.
GridFn truncate(const MultFnSpec& chi, long N, long Ntilde);

/// max_P |(2N+1)^{-D} sum_{n in R_N} 1_P(n) chi(iota(n))| over the catalog.
double aperiodicity_stat(const MultFnSpec& chi, long N, const std::vector<APSpec>& catalog);

/// All APs with a common step <= 8 per axis, bases on a coarse sub-grid of R_N.
std::vector<APSpec> default_catalog(std::size_t D, long N);

} // namespace nilfourier

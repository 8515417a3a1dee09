#pragma once

#include <complex>
#include <vector>

#include "nilfourier/numfield.hpp"

namespace nilfourier {

/** Archimedean embeddings up to conjugation, realized through a primitive
    element: every x is written as a polynomial in gamma and evaluated at the
    numeric roots of gamma's minimal polynomial. Real embeddings come first. */
struct ArchEmbedding {
    FieldPtr field;
    unsigned r1 = 0, r2 = 0;
    std::vector<std::complex<double>> roots; // r1 real + r2 pair representatives
    FieldElement gamma;
    QMat ginv; // coords -> coefficients of the polynomial in gamma

    static ArchEmbedding compute(const FieldPtr& f);

    /// sigma_i(x) for the r1+r2 representative embeddings.
    std::vector<std::complex<double>> operator()(const FieldElement& x) const;

    /// W(x) = (log|sigma_1(x)|, ..., log|sigma_r(x)|), r = r1+r2-1.
    std::vector<double> log_vector(const FieldElement& x) const;
};

struct UnitSystem {
    FieldPtr field;
    ArchEmbedding embedding;
    std::vector<FieldElement> units;
    std::vector<std::vector<double>> log_vectors;
    unsigned rank = 0; // r1 + r2 - 1
    bool complete = false;
};

/** Exhaustive search over coordinate boxes [-height,height]^D for elements of
    norm +-1, kept greedily (by increasing sup-norm shell, then lexicographic)
    while their log vectors stay linearly independent. A continued-fraction
    fast path covers real quadratic power bases t^2 - d. */
UnitSystem find_units(const FieldPtr& field, long height);

struct RegularizeResult {
    FieldElement unit;
    FieldElement regularized;
    double achieved_C;
};

/** Picks integer exponents x so that eps = prod eps_j^{x_j} brings every
    log|sigma_i(eps a)| close to (1/D) log|N(a)|; rounding is followed by a
    +-1 local search. achieved_C is measured over N in {10, 40, 160}. */
RegularizeResult regularize(const FieldElement& a, const UnitSystem& system);

/// Exact check that every integral z with a*z in R_N has |z|_inf <= C |N(a)|^{-1/D} N.
bool regularity_check(const FieldElement& a, double C, long N);

} // namespace nilfourier

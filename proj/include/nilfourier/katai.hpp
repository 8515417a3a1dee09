#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "nilfourier/grid.hpp"
#include "nilfourier/multfn.hpp"
#include "nilfourier/numfield.hpp"

namespace nilfourier {

/** Regularized prime elements with pairwise coprime integer norms. */
struct PrimeSet {
    FieldPtr field;
    std::vector<FieldElement> elements;
    double achieved_C = 0;
    Rat A_P = 0;                // sum of 1/|N(p)|
    std::vector<Int> skipped;   // rational primes with no degree-1 generator in the box
};

class partial_set_error : public std::runtime_error {
public:
    PrimeSet found;
    partial_set_error(std::string msg, PrimeSet f)
        : std::runtime_error(std::move(msg)), found(std::move(f)) {}
};

/** One generator of integer norm +-p per rational prime, ascending p, searched
    in [-height,height]^D (ties broken lexicographically), regularized by the
    field's unit system. */
PrimeSet build_prime_set(const FieldPtr& field, unsigned count, long height);

struct TkResult {
    double lhs;       // sum over the box of |omega_P(z) - A_P|
    double rhs_scale; // sqrt(A_P + 1) (2N+1)^D
    double ratio;
};

TkResult tk_statistic(const PrimeSet& P, long N);

using LatticeFn = std::function<cplx(const std::vector<long>&)>;

struct KataiResult {
    cplx S;     // E_{n in R_N} chi(iota(n)) h(n)
    double C_P; // normalized pair sum over dilated index sets
    Rat A_P;
};

KataiResult katai_terms(const MultFnSpec& chi, const LatticeFn& h, const PrimeSet& P, long N);

} // namespace nilfourier

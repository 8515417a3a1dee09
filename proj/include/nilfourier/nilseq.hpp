#pragma once

#include <map>
#include <optional>
#include <vector>

#include "nilfourier/grid.hpp"
#include "nilfourier/rat.hpp"

namespace nilfourier {

using MIdx = std::vector<unsigned>; // multi-index, one entry per input axis

/** Polynomial map Z^D -> R^s of degree <= k, stored in the binomial basis
    g(n) = sum_j alpha_j binom(n, j) with a cached monomial expansion. Exact
    rational coefficients are kept alongside doubles when available. */
class PolySeq {
public:
    std::size_t D = 1, s = 1;
    unsigned degree = 0;
    std::map<MIdx, std::vector<double>> binom, monom;
    std::optional<std::map<MIdx, std::vector<Rat>>> binom_q, monom_q;

    static PolySeq from_binomial(std::size_t D, std::size_t s,
                                 const std::map<MIdx, std::vector<double>>& coeffs);
    static PolySeq from_monomial(std::size_t D, std::size_t s,
                                 const std::map<MIdx, std::vector<double>>& coeffs);
    static PolySeq from_binomial_exact(std::size_t D, std::size_t s,
                                       const std::map<MIdx, std::vector<Rat>>& coeffs);
    static PolySeq from_monomial_exact(std::size_t D, std::size_t s,
                                       const std::map<MIdx, std::vector<Rat>>& coeffs);

    std::vector<double> eval(const std::vector<long>& n) const;
    std::vector<Rat> eval_exact(const std::vector<long>& n) const; // needs exact coeffs

    /// discrete derivative g(n+h) - g(n); degree drops by at least one
    PolySeq derivative(const std::vector<long>& h) const;

    /// scalar sequence l . g for an integer character l
    PolySeq contract(const std::vector<long>& l) const;
};

enum class CoeffFlavor { binomial, monomial };

/// max_{j != 0} (2N+1)^{|j|} ||alpha_j||_{T^s}, torus norm summed over outputs.
double smooth_norm(const PolySeq& g, long N, CoeffFlavor flavor);

struct HorizChar {
    std::vector<long> l;
    long norm = 0; // sum |l_i|
};

/// exhaustive scan of nonzero l with sum|l_i| <= C minimizing smooth_norm(l.g).
std::pair<HorizChar, double> char_search(const PolySeq& g, long N, long C);

struct Witness {
    APSpec P;
    double correlation;
};

/** Largest centered sub-box on which e(eta.g) stays within 1/2 of its value at
    0, with the correlation |E_{n in R_N} 1_P e(eta.g(n))|. Throws numeric_error
    carrying the measured smooth norm when it exceeds C0. */
Witness leibman_witness(const PolySeq& g, const HorizChar& eta, long N, double C0);

/** Heisenberg group element in coordinates, law (x,y;z)(x',y';z') =
    (x+x', y+y'; z+z'+x y'). */
struct HeisElem {
    Rat x = 0, y = 0, z = 0;
    bool operator==(const HeisElem&) const = default;
};

HeisElem heis_mul(const HeisElem& a, const HeisElem& b);
HeisElem heis_inv(const HeisElem& a);
HeisElem heis_commutator(const HeisElem& a, const HeisElem& b);
/// [[...[g1,g2],g3]...,gd]
HeisElem heis_bracket(const std::vector<HeisElem>& gs);
/// unique representative with x,y,z in [0,1), by right-multiplying lattice elements
HeisElem heis_reduce(const HeisElem& a);

struct EquidReport {
    double max_correlation = 0;
    std::size_t best_char = 0, best_ap = 0;
    bool equidistributed = true;
};

/// torus orbit: test functions e(xi . g(n)) over the character/AP catalogs
EquidReport equid_correlation(const PolySeq& g, long N, const std::vector<std::vector<long>>& chars,
                              const std::vector<APSpec>& aps, double eps);

/** Heisenberg orbit (s = 3 coordinates): vertical frequency l with a
    boundary-vanishing bump in (x,y) so the test function descends to the
    quotient. */
EquidReport equid_correlation_heis(const PolySeq& g, long N, const std::vector<long>& vert_freqs,
                                   const std::vector<APSpec>& aps, double eps);

} // namespace nilfourier

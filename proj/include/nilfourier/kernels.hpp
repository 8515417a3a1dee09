#pragma once

#include <utility>
#include <vector>

#include "nilfourier/grid.hpp"

namespace nilfourier {

struct KernelSpec {
    long Ntilde = 1;
    long m = 1;
    long Q = 1;
    std::size_t D = 1;
};

/// Fejer-type kernel: spectrum {-(m-1),...,m-1}^D with hat values prod(1-|xi_i|/m).
GridFn fejer(long Ntilde, long m, std::size_t D);

/// fejer evaluated at Q^{-1} x (componentwise mod Ntilde); a kernel with
/// spectrum {xi : ||Q xi_i / Ntilde||_T < m/Ntilde for all i}.
GridFn phi_kernel(const KernelSpec& spec);

/// distance of x to the nearest integer
double torus_dist(double x);

/// (structured, uniform) = (chiN * phi, chiN - chiN * phi); phi must be a kernel.
std::pair<GridFn, GridFn> decompose(const GridFn& chiN, const GridFn& phi);

struct SpectralLine {
    std::vector<long> xi;      // signed representatives in (-Ntilde/2, Ntilde/2]
    std::vector<long> p;       // nearest numerators for xi_i/Ntilde ~ p_i/Q_report
    std::vector<double> dist;  // |xi_i/Ntilde - p_i/Q_report|
    double weight;             // |hat of structured part at xi|
};

struct StructureReport {
    double max_shift_diff;     // max_{n,i} |s(n + Q_report e_i) - s(n)|
    double fourier_shift_bound; // spectral-side bound on the same quantity
    std::vector<SpectralLine> lines;
    double max_rational_dist;
    double uniform_norm;       // ||chiN - s||_{U^d}
    double structured_norm;    // ||s||_{U^d}
};

StructureReport structure_report(const GridFn& chiN, const KernelSpec& spec, long Q_report,
                                 unsigned d);

/// least prime greater than Omega*N (the working modulus)
long choose_modulus(long N, long Omega);

} // namespace nilfourier

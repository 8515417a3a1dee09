#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <vector>

namespace nilfourier {

using cplx = std::complex<double>;

/** Dense function on Z_mod^D, row-major (last coordinate fastest). */
class GridFn {
public:
    std::size_t D = 1;
    long mod = 1;
    std::vector<cplx> values;

    GridFn() = default;
    GridFn(std::size_t d, long m);
    static GridFn constant(std::size_t d, long m, cplx v);

    std::size_t size() const { return values.size(); }

    /// linear index of a coordinate vector, wrapping mod `mod`
    std::size_t index(const std::vector<long>& c) const;
    cplx& at(const std::vector<long>& c) { return values[index(c)]; }
    const cplx& at(const std::vector<long>& c) const { return values[index(c)]; }

    double sup_norm() const;
};

/// f_hat(xi) = E_n f(n) e(-n.xi/mod), by FFT.
GridFn dft(const GridFn& f);
/// f(n) = sum_xi f_hat(xi) e(n.xi/mod); inverse of dft.
GridFn idft(const GridFn& f);

/// f*g(n) = E_m f(n-m) g(m), via the transform domain.
GridFn convolve(const GridFn& f, const GridFn& g);

/// Multiplicative derivative f(.+m) conj(f).
GridFn mult_derivative(const GridFn& f, const std::vector<long>& m);

/// Gowers uniformity norm ||f||_{U^d(Z_mod^D)}, d >= 1.
double gowers_norm(const GridFn& f, unsigned d);

/** ||1_{[N]^D} f||_{U^d} / ||1_{[N]^D}||_{U^d} over Z_{Nstar}^D, with f given
    row-major on [N]^D = {1..N}^D. Independent of Nstar once Nstar > 2N. */
double gowers_interval_norm(const std::vector<cplx>& f, std::size_t D, long N, unsigned d,
                            long Nstar);

struct APSpec {
    std::vector<long> base;
    std::vector<long> steps;
    std::vector<long> lengths;
};

/// E_{n in Z_mod^D} 1_P(n) f(n); points hit twice by wrapping count once.
cplx ap_average(const GridFn& f, const APSpec& P);

void write_csv(const GridFn& f, std::ostream& out);
GridFn read_csv(std::istream& in);

} // namespace nilfourier

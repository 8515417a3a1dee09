#include "nilfourier/kernels.hpp"

#include <cmath>
#include <numbers>

#include "nilfourier/errors.hpp"
#include "nilfourier/rat.hpp"

namespace nilfourier {

namespace {

// one-axis Fejer value (1/m)(sin(pi m x)/sin(pi x))^2 at x = n/Ntilde
double fejer_axis(long n, long Ntilde, long m) {
    long r = n % Ntilde;
    if (r == 0) return static_cast<double>(m);
    double x = std::numbers::pi * static_cast<double>(r) / static_cast<double>(Ntilde);
    double s = std::sin(static_cast<double>(m) * x) / std::sin(x);
    return s * s / static_cast<double>(m);
}

long mod_inverse(long q, long n) {
    long r0 = n, r1 = ((q % n) + n) % n, t0 = 0, t1 = 1;
    while (r1 != 0) {
        long k = r0 / r1;
        long r2 = r0 - k * r1, t2 = t0 - k * t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if (r0 != 1) throw precondition_error("Q not invertible mod Ntilde");
    return ((t0 % n) + n) % n;
}

} // namespace

double torus_dist(double x) { return std::fabs(x - std::round(x)); }

GridFn fejer(long Ntilde, long m, std::size_t D) {
    if (m < 1) throw precondition_error("kernel width must be >= 1");
    if (2 * m >= Ntilde) throw precondition_error("kernel width too large: need 2m < Ntilde");
    GridFn f(D, Ntilde);
    std::vector<double> axis(Ntilde);
    for (long n = 0; n < Ntilde; ++n) axis[n] = fejer_axis(n, Ntilde, m);
    std::vector<long> c(D, 0);
    for (std::size_t lin = 0;; ++lin) {
        double v = 1;
        for (std::size_t i = 0; i < D; ++i) v *= axis[c[i]];
        f.values[lin] = v;
        std::size_t k = D;
        while (k > 0 && c[k - 1] == Ntilde - 1) c[--k] = 0;
        if (k == 0) break;
        ++c[k - 1];
    }
    return f;
}

GridFn phi_kernel(const KernelSpec& spec) {
    GridFn base = fejer(spec.Ntilde, spec.m, spec.D);
    long qinv = mod_inverse(spec.Q, spec.Ntilde);
    GridFn f(spec.D, spec.Ntilde);
    std::vector<long> c(spec.D, 0), qc(spec.D);
    for (std::size_t lin = 0;; ++lin) {
        for (std::size_t i = 0; i < spec.D; ++i) qc[i] = (qinv * c[i]) % spec.Ntilde;
        f.values[lin] = base.at(qc);
        std::size_t k = spec.D;
        while (k > 0 && c[k - 1] == spec.Ntilde - 1) c[--k] = 0;
        if (k == 0) break;
        ++c[k - 1];
    }
    return f;
}

std::pair<GridFn, GridFn> decompose(const GridFn& chiN, const GridFn& phi) {
    if (chiN.D != phi.D || chiN.mod != phi.mod) throw precondition_error("decompose: shape mismatch");
    double mean = 0;
    for (const auto& v : phi.values) {
        if (v.real() < -1e-9 || std::fabs(v.imag()) > 1e-9)
            throw precondition_error("phi is not a kernel (negative or complex values)");
        mean += v.real();
    }
    mean /= static_cast<double>(phi.size());
    if (std::fabs(mean - 1.0) > 1e-9) throw precondition_error("phi is not a kernel (mean != 1)");

    GridFn structured = convolve(chiN, phi);
    GridFn uniform = chiN;
    for (std::size_t i = 0; i < uniform.size(); ++i) uniform.values[i] -= structured.values[i];
    return {structured, uniform};
}

StructureReport structure_report(const GridFn& chiN, const KernelSpec& spec, long Q_report,
                                 unsigned d) {
    if (Q_report < 1) throw precondition_error("Q_report must be positive");
    GridFn phi = phi_kernel(spec);
    auto [s, u] = decompose(chiN, phi);
    const long M = chiN.mod;
    const std::size_t D = chiN.D;

    StructureReport rep;
    rep.max_shift_diff = 0;
    std::vector<long> c(D, 0), cs(D);
    for (std::size_t lin = 0;; ++lin) {
        for (std::size_t i = 0; i < D; ++i) {
            cs = c;
            cs[i] += Q_report;
            rep.max_shift_diff = std::max(rep.max_shift_diff, std::abs(s.at(cs) - s.values[lin]));
        }
        std::size_t k = D;
        while (k > 0 && c[k - 1] == M - 1) c[--k] = 0;
        if (k == 0) break;
        ++c[k - 1];
    }

    GridFn sh = dft(s);
    rep.fourier_shift_bound = 0;
    rep.max_rational_dist = 0;
    std::fill(c.begin(), c.end(), 0L);
    for (std::size_t lin = 0;; ++lin) {
        double w = std::abs(sh.values[lin]);
        if (w > 1e-12) {
            SpectralLine line;
            line.weight = w;
            double phase = 0;
            for (std::size_t i = 0; i < D; ++i) {
                long xi = c[i] <= M / 2 ? c[i] : c[i] - M;
                line.xi.push_back(xi);
                double x = static_cast<double>(xi) / static_cast<double>(M);
                long p = std::lround(x * static_cast<double>(Q_report));
                line.p.push_back(p);
                double dist = std::fabs(x - static_cast<double>(p) / static_cast<double>(Q_report));
                line.dist.push_back(dist);
                rep.max_rational_dist = std::max(rep.max_rational_dist, dist);
                phase += torus_dist(static_cast<double>(Q_report) * x);
            }
            rep.fourier_shift_bound += 2 * std::numbers::pi * phase * w;
            rep.lines.push_back(std::move(line));
        }
        std::size_t k = D;
        while (k > 0 && c[k - 1] == M - 1) c[--k] = 0;
        if (k == 0) break;
        ++c[k - 1];
    }

    rep.uniform_norm = gowers_norm(u, d);
    rep.structured_norm = gowers_norm(s, d);
    return rep;
}

long choose_modulus(long N, long Omega) {
    if (N < 1 || Omega < 1) throw precondition_error("bad modulus parameters");
    return static_cast<long>(least_prime_above(static_cast<std::int64_t>(Omega) * N));
}

} // namespace nilfourier

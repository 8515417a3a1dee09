#include "nilfourier/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "nilfourier/errors.hpp"

namespace nilfourier {

namespace {

long powl_checked(long base, std::size_t e) {
    long r = 1;
    for (std::size_t i = 0; i < e; ++i) {
        if (r > (1L << 31) / base) throw precondition_error("grid too large");
        r *= base;
    }
    return r;
}

GridFn transform(const GridFn& f, int sign, bool normalize) {
    GridFn out(f.D, f.mod);
    std::vector<int> dims(f.D, static_cast<int>(f.mod));
    fftw_plan plan = fftw_plan_dft(
        static_cast<int>(f.D), dims.data(),
        reinterpret_cast<fftw_complex*>(const_cast<cplx*>(f.values.data())),
        reinterpret_cast<fftw_complex*>(out.values.data()), sign, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    if (normalize) {
        double inv = 1.0 / static_cast<double>(f.size());
        for (auto& v : out.values) v *= inv;
    }
    return out;
}

} // namespace

GridFn::GridFn(std::size_t d, long m) : D(d), mod(m) {
    if (d < 1 || m < 1) throw precondition_error("bad grid shape");
    values.assign(static_cast<std::size_t>(powl_checked(m, d)), cplx(0, 0));
}

GridFn GridFn::constant(std::size_t d, long m, cplx v) {
    GridFn f(d, m);
    std::fill(f.values.begin(), f.values.end(), v);
    return f;
}

std::size_t GridFn::index(const std::vector<long>& c) const {
    if (c.size() != D) throw precondition_error("coordinate dimension mismatch");
    std::size_t idx = 0;
    for (std::size_t i = 0; i < D; ++i) {
        long v = c[i] % mod;
        if (v < 0) v += mod;
        idx = idx * static_cast<std::size_t>(mod) + static_cast<std::size_t>(v);
    }
    return idx;
}

double GridFn::sup_norm() const {
    double m = 0;
    for (const auto& v : values) m = std::max(m, std::abs(v));
    return m;
}

GridFn dft(const GridFn& f) { return transform(f, FFTW_FORWARD, true); }

GridFn idft(const GridFn& f) { return transform(f, FFTW_BACKWARD, false); }

GridFn convolve(const GridFn& f, const GridFn& g) {
    if (f.D != g.D || f.mod != g.mod) throw precondition_error("convolve: shape mismatch");
    GridFn fh = dft(f), gh = dft(g);
    for (std::size_t i = 0; i < fh.size(); ++i) fh.values[i] *= gh.values[i];
    return idft(fh);
}

GridFn mult_derivative(const GridFn& f, const std::vector<long>& m) {
    if (m.size() != f.D) throw precondition_error("shift dimension mismatch");
    GridFn g(f.D, f.mod);
    std::vector<long> c(f.D, 0), cm(f.D);
    for (std::size_t lin = 0;; ++lin) {
        for (std::size_t i = 0; i < f.D; ++i) cm[i] = c[i] + m[i];
        g.values[lin] = f.at(cm) * std::conj(f.values[lin]);
        std::size_t k = f.D;
        while (k > 0 && c[k - 1] == f.mod - 1) c[--k] = 0;
        if (k == 0) break;
        ++c[k - 1];
    }
    return g;
}

namespace {

// ||f||_{U^2}^4 = E_m |E_n f(n+m) conj(f(n))|^2, by direct autocorrelation
double u2_norm(const GridFn& f) {
    const std::size_t M = f.size();
    const long mod = f.mod;
    double acc = 0;
    if (f.D == 1) {
        for (long m = 0; m < mod; ++m) {
            cplx c(0, 0);
            for (long n = 0; n < mod; ++n)
                c += f.values[static_cast<std::size_t>((n + m) % mod)] *
                     std::conj(f.values[static_cast<std::size_t>(n)]);
            acc += std::norm(c) / static_cast<double>(M * M);
        }
    } else {
        std::vector<long> m(f.D, 0);
        while (true) {
            GridFn g = mult_derivative(f, m);
            cplx c(0, 0);
            for (const auto& v : g.values) c += v;
            acc += std::norm(c) / static_cast<double>(M * M);
            std::size_t k = f.D;
            while (k > 0 && m[k - 1] == mod - 1) m[--k] = 0;
            if (k == 0) break;
            ++m[k - 1];
        }
    }
    return std::pow(acc / static_cast<double>(M), 0.25);
}

double gowers_pow(const GridFn& f, unsigned d) {
    // ||f||_{U^d}^{2^d}
    if (d == 1) {
        cplx c(0, 0);
        for (const auto& v : f.values) c += v;
        c /= static_cast<double>(f.size());
        return std::norm(c);
    }
    double acc = 0;
    std::vector<long> m(f.D, 0);
    while (true) {
        acc += gowers_pow(mult_derivative(f, m), d - 1);
        std::size_t k = f.D;
        while (k > 0 && m[k - 1] == f.mod - 1) m[--k] = 0;
        if (k == 0) break;
        ++m[k - 1];
    }
    return acc / static_cast<double>(f.size());
}

} // namespace

double gowers_norm(const GridFn& f, unsigned d) {
    if (d < 1) throw precondition_error("gowers_norm: d >= 1 required");
    if (d == 2) return u2_norm(f);
    double p = gowers_pow(f, d);
    return std::pow(std::max(p, 0.0), 1.0 / std::pow(2.0, static_cast<double>(d)));
}

double gowers_interval_norm(const std::vector<cplx>& f, std::size_t D, long N, unsigned d,
                            long Nstar) {
    if (d < 2) throw precondition_error("interval norm needs d >= 2");
    if (Nstar <= 2 * N) throw precondition_error("window too small: need Nstar > 2N");
    std::size_t boxsize = 1;
    for (std::size_t i = 0; i < D; ++i) boxsize *= static_cast<std::size_t>(N);
    if (f.size() != boxsize) throw precondition_error("value array does not match [N]^D");

    GridFn g(D, Nstar), ind(D, Nstar);
    std::vector<long> c(D, 1);
    for (std::size_t lin = 0;; ++lin) {
        g.at(c) = f[lin];
        ind.at(c) = 1;
        std::size_t k = D;
        while (k > 0 && c[k - 1] == N) c[--k] = 1;
        if (k == 0) break;
        ++c[k - 1];
    }
    return gowers_norm(g, d) / gowers_norm(ind, d);
}

cplx ap_average(const GridFn& f, const APSpec& P) {
    if (P.base.size() != f.D || P.steps.size() != f.D || P.lengths.size() != f.D)
        throw precondition_error("AP dimension mismatch");
    for (std::size_t i = 0; i < f.D; ++i)
        if (P.steps[i] < 1 || P.lengths[i] < 1) throw precondition_error("AP steps/lengths must be positive");
    std::unordered_set<std::size_t> seen;
    std::vector<long> n(f.D, 0), c(f.D);
    cplx acc(0, 0);
    while (true) {
        for (std::size_t i = 0; i < f.D; ++i) c[i] = P.base[i] + P.steps[i] * n[i];
        std::size_t idx = f.index(c);
        if (seen.insert(idx).second) acc += f.values[idx];
        std::size_t k = f.D;
        while (k > 0 && n[k - 1] == P.lengths[k - 1] - 1) n[--k] = 0;
        if (k == 0) break;
        ++n[k - 1];
    }
    return acc / static_cast<double>(f.size());
}

void write_csv(const GridFn& f, std::ostream& out) {
    out << "# D=" << f.D << " mod=" << f.mod << "\n";
    for (std::size_t i = 0; i < f.D; ++i) out << "i" << i << ",";
    out << "re,im\n";
    std::vector<long> c(f.D, 0);
    for (std::size_t lin = 0;; ++lin) {
        for (long v : c) out << v << ",";
        out << f.values[lin].real() << "," << f.values[lin].imag() << "\n";
        std::size_t k = f.D;
        while (k > 0 && c[k - 1] == f.mod - 1) c[--k] = 0;
        if (k == 0) break;
        ++c[k - 1];
    }
}

GridFn read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw precondition_error("empty grid file");
    std::size_t D;
    long mod;
    if (std::sscanf(line.c_str(), "# D=%zu mod=%ld", &D, &mod) != 2)
        throw precondition_error("bad grid header");
    std::getline(in, line); // column names
    GridFn f(D, mod);
    std::vector<long> c(D);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string tok;
        for (std::size_t i = 0; i < D; ++i) {
            std::getline(ss, tok, ',');
            c[i] = std::stol(tok);
        }
        std::getline(ss, tok, ',');
        double re = std::stod(tok);
        std::getline(ss, tok, ',');
        double im = std::stod(tok);
        f.at(c) = cplx(re, im);
    }
    return f;
}

} // namespace nilfourier

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nilfourier/errors.hpp"
#include "nilfourier/kernels.hpp"
#include "nilfourier/multfn.hpp"

using namespace nilfourier;

namespace {
cplx e(double t) { return std::exp(cplx(0, 2 * std::numbers::pi * t)); }

// spectral-sum oracle for the Fejer kernel
GridFn fejer_oracle(long Ntilde, long m, std::size_t D) {
    GridFn f(D, Ntilde);
    std::vector<long> c(D, 0);
    for (std::size_t lin = 0;; ++lin) {
        cplx acc = 0;
        std::vector<long> xi(D, -(m - 1));
        while (true) {
            double w = 1;
            double phase = 0;
            for (std::size_t i = 0; i < D; ++i) {
                w *= 1.0 - std::fabs(static_cast<double>(xi[i])) / static_cast<double>(m);
                phase += static_cast<double>(c[i] * xi[i]) / static_cast<double>(Ntilde);
            }
            acc += w * e(phase);
            std::size_t k = D;
            while (k > 0 && xi[k - 1] == m - 1) xi[--k] = -(m - 1);
            if (k == 0) break;
            ++xi[k - 1];
        }
        f.values[lin] = acc;
        std::size_t k = D;
        while (k > 0 && c[k - 1] == Ntilde - 1) c[--k] = 0;
        if (k == 0) break;
        ++c[k - 1];
    }
    return f;
}
} // namespace

TEST_CASE("fejer worked examples") {
    GridFn f = fejer(31, 4, 1);
    CHECK(std::abs(f.values[0] - cplx(4, 0)) < 1e-12);
    cplx mean = 0;
    for (auto& v : f.values) mean += v;
    CHECK(std::abs(mean / 31.0 - cplx(1, 0)) < 1e-12);
    for (auto& v : f.values) CHECK(v.real() > -1e-12);

    GridFn f2 = fejer(11, 3, 2);
    CHECK(std::abs(f2.values[0] - cplx(9, 0)) < 1e-12);

    GridFn one = fejer(17, 1, 1);
    for (auto& v : one.values) CHECK(std::abs(v - cplx(1, 0)) < 1e-12);

    CHECK_THROWS_AS(fejer(16, 8, 1), precondition_error);
}

TEST_CASE("fejer matches the spectral oracle") {
    for (auto [Nt, m, D] : {std::tuple<long, long, std::size_t>{31, 4, 1}, {101, 9, 1}, {11, 3, 2}}) {
        GridFn f = fejer(Nt, m, D);
        GridFn o = fejer_oracle(Nt, m, D);
        for (std::size_t i = 0; i < f.size(); ++i) CHECK(std::abs(f.values[i] - o.values[i]) < 1e-9);
    }
}

TEST_CASE("fejer Fourier support") {
    long Nt = 31, m = 4;
    GridFn fh = dft(fejer(Nt, m, 1));
    for (long x = 0; x < Nt; ++x) {
        long xi = x <= Nt / 2 ? x : x - Nt;
        double want = std::abs(xi) < m ? 1.0 - std::fabs(static_cast<double>(xi)) / m : 0.0;
        CHECK(std::abs(fh.values[x] - cplx(want, 0)) < 1e-10);
    }
}

TEST_CASE("phi_kernel") {
    KernelSpec id{101, 5, 1, 1};
    GridFn f = fejer(101, 5, 1), p = phi_kernel(id);
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(std::abs(f.values[i] - p.values[i]) < 1e-12);

    KernelSpec spec{101, 6, 7, 1};
    GridFn phi = phi_kernel(spec);
    cplx mean = 0;
    for (auto& v : phi.values) {
        CHECK(v.real() > -1e-12);
        mean += v;
    }
    CHECK(std::abs(mean / 101.0 - cplx(1, 0)) < 1e-10);

    // hat values on the spectrum
    GridFn ph = dft(phi);
    for (long x = 0; x < 101; ++x) {
        double t = torus_dist(7.0 * x / 101.0);
        double want = t < 6.0 / 101.0 ? 1.0 - t * 101.0 / 6.0 : 0.0;
        CHECK(std::abs(ph.values[x] - cplx(want, 0)) < 1e-9);
    }

    // xi with Q xi = 1 mod Ntilde lies in the spectrum iff m > 1
    long xistar = 29; // 7*29 = 203 = 2*101 + 1
    GridFn h1 = dft(phi_kernel({101, 1, 7, 1}));
    GridFn h2 = dft(phi_kernel({101, 2, 7, 1}));
    CHECK(std::abs(h1.values[xistar]) < 1e-10);
    CHECK(std::abs(h2.values[xistar]) > 1e-6);

    // hat monotone when m widens
    GridFn a = dft(phi_kernel({101, 4, 7, 1})), b = dft(phi_kernel({101, 6, 7, 1}));
    for (long x = 0; x < 101; ++x) {
        CHECK(a.values[x].real() > -1e-12);
        CHECK(b.values[x].real() >= a.values[x].real() - 1e-10);
    }

    CHECK_THROWS_AS(phi_kernel({12, 2, 8, 1}), precondition_error);
}

TEST_CASE("decompose") {
    KernelSpec spec{101, 6, 7, 1};
    GridFn phi = phi_kernel(spec);
    GridFn one = GridFn::constant(1, 101, 1.0);
    auto [s, u] = decompose(one, phi);
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(std::abs(s.values[i] - cplx(1, 0)) < 1e-10);
        CHECK(std::abs(u.values[i]) < 1e-10);
    }

    auto Q = FieldSpec::builtin("Q");
    GridFn chi = truncate(MultFnSpec::make(MultKind::mobiusK, Q), 33, 101);
    auto [cs, cu] = decompose(chi, phi);
    GridFn ph = dft(phi), sh = dft(cs);
    for (std::size_t i = 0; i < chi.size(); ++i) {
        CHECK(std::abs(cs.values[i] + cu.values[i] - chi.values[i]) < 1e-12);
        if (std::abs(ph.values[i]) < 1e-12) CHECK(std::abs(sh.values[i]) < 1e-10);
    }

    // linearity
    GridFn lin(1, 101);
    for (std::size_t i = 0; i < lin.size(); ++i) lin.values[i] = 2.0 * chi.values[i] + cplx(0, 0.5);
    auto [ls, lu] = decompose(lin, phi);
    auto [os, ou] = decompose(GridFn::constant(1, 101, cplx(0, 0.5)), phi);
    for (std::size_t i = 0; i < lin.size(); ++i)
        CHECK(std::abs(ls.values[i] - (2.0 * cs.values[i] + os.values[i])) < 1e-9);

    GridFn bad(1, 101);
    for (long n = 0; n < 101; ++n) bad.values[n] = e(n / 101.0);
    CHECK_THROWS_AS(decompose(chi, bad), precondition_error);
    CHECK_THROWS_AS(decompose(chi, GridFn(1, 102)), precondition_error);
}

TEST_CASE("structure_report") {
    KernelSpec spec{101, 6, 7, 1};
    GridFn one = GridFn::constant(1, 101, 1.0);
    auto rep1 = structure_report(one, spec, 7, 2);
    CHECK(rep1.max_shift_diff < 1e-9);

    auto Q = FieldSpec::builtin("Q");
    long N = 128, Nt = choose_modulus(N, 3);
    KernelSpec ks{Nt, 8, 12, 1};
    GridFn chi = truncate(MultFnSpec::make(MultKind::mobiusK, Q), N, Nt);
    auto rep = structure_report(chi, ks, 12, 2);

    CHECK(rep.uniform_norm <= gowers_norm(chi, 2) * 1.01);
    CHECK(rep.max_shift_diff <= rep.fourier_shift_bound + 1e-9);
    double weight_sum = 0;
    for (const auto& line : rep.lines) {
        weight_sum += line.weight;
        for (std::size_t i = 0; i < line.xi.size(); ++i) {
            CHECK(line.dist[i] <= 0.5 / 12.0 + 1e-12);
            CHECK(torus_dist(12.0 * line.xi[i] / static_cast<double>(Nt)) < 8.0 / Nt);
        }
    }
    // spectral-side estimate scales with m/Ntilde
    CHECK(rep.fourier_shift_bound <=
          2 * std::numbers::pi * 12.0 * 8.0 / static_cast<double>(Nt) * weight_sum + 1e-9);
}

TEST_CASE("choose_modulus") {
    CHECK(choose_modulus(512, 3) == 1543);
    CHECK(choose_modulus(4, 2) == 11);
}

#include <doctest.h>

#include <cmath>
#include <random>

#include "nilfourier/errors.hpp"
#include "nilfourier/multfn.hpp"

using namespace nilfourier;

namespace {
FieldElement elem(const FieldPtr& f, std::initializer_list<long> v) {
    std::vector<Int> c;
    for (long x : v) c.emplace_back(x);
    return FieldElement::from_ints(f, c);
}

MultFnSpec char_mod3() {
    auto Q = FieldSpec::builtin("Q");
    return MultFnSpec::parse("kind=character\nmodgen=3\nvalue=0:0\nvalue=1:1\nvalue=2:-1\n", Q);
}
} // namespace

TEST_CASE("eval worked examples") {
    auto Fi = FieldSpec::builtin("Qi");
    auto mu = MultFnSpec::make(MultKind::mobiusK, Fi);
    CHECK(eval(mu, elem(Fi, {1, 1})) == cplx(-1, 0));
    CHECK(eval(mu, FieldElement::zero(Fi)) == cplx(0, 0));

    auto Q = FieldSpec::builtin("Q");
    auto lam = MultFnSpec::make(MultKind::liouvilleK, Q);
    CHECK(eval(lam, elem(Q, {12})) == cplx(-1, 0));
    CHECK(eval(lam, elem(Q, {4})) == cplx(1, 0));
    CHECK(eval(lam, elem(Q, {-1})) == cplx(1, 0));

    auto one = MultFnSpec::make(MultKind::constant_one, Fi);
    CHECK(eval(one, elem(Fi, {7, -3})) == cplx(1, 0));
}

TEST_CASE("completely multiplicative spec") {
    auto Fi = FieldSpec::builtin("Qi");
    auto chi = MultFnSpec::parse("kind=cm\nprime=1,1:0,1\n", Fi);
    CHECK(std::abs(eval(chi, elem(Fi, {1, 1})) - cplx(0, 1)) < 1e-12);
    // 2 = -i (1+i)^2, units evaluate to 1
    CHECK(std::abs(eval(chi, elem(Fi, {2, 0})) - cplx(-1, 0)) < 1e-12);
    CHECK_THROWS_AS(eval(chi, elem(Fi, {3, 0})), unsupported_error);
    CHECK_THROWS_AS(MultFnSpec::parse("kind=cm\nprime=1,1:2,0\n", Fi), precondition_error);
}

TEST_CASE("periodic character") {
    auto chi = char_mod3();
    auto Q = FieldSpec::builtin("Q");
    for (long n = -9; n <= 9; ++n) {
        if (n == 0) continue;
        long r = ((n % 3) + 3) % 3;
        double want = r == 0 ? 0 : (r == 1 ? 1 : -1);
        CHECK(std::abs(eval(chi, elem(Q, {n})) - cplx(want, 0)) < 1e-12);
    }
    // multiplicative on random coprime pairs
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<long> d(1, 60);
    for (int t = 0; t < 100; ++t) {
        long m = d(rng), n = d(rng);
        if (gcd(Int(m), Int(n)) != 1) continue;
        cplx lhs = eval(chi, elem(Q, {m * n}));
        cplx rhs = eval(chi, elem(Q, {m})) * eval(chi, elem(Q, {n}));
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("truncate worked examples") {
    auto Q = FieldSpec::builtin("Q");
    auto one = MultFnSpec::make(MultKind::constant_one, Q);
    GridFn g = truncate(one, 4, 11);
    for (long n = 0; n < 11; ++n)
        CHECK(std::abs(g.values[n] - cplx(n >= 1 && n <= 4 ? 1 : 0, 0)) < 1e-12);

    auto mu = MultFnSpec::make(MultKind::mobiusK, Q);
    GridFn m = truncate(mu, 6, 13);
    double want[] = {0, 1, -1, -1, 0, -1, 1, 0, 0, 0, 0, 0, 0};
    for (long n = 0; n < 13; ++n) CHECK(std::abs(m.values[n] - cplx(want[n], 0)) < 1e-12);

    auto Fi = FieldSpec::builtin("Qi");
    auto muK = MultFnSpec::make(MultKind::mobiusK, Fi);
    GridFn gk = truncate(muK, 2, 5);
    for (long a = 1; a <= 2; ++a)
        for (long b = 1; b <= 2; ++b)
            CHECK(std::abs(gk.at({a, b}) - eval(muK, elem(Fi, {a, b}))) < 1e-12);
    CHECK(std::abs(gk.at({0, 0})) == 0);

    CHECK_THROWS_AS(truncate(one, 6, 6), precondition_error);
}

TEST_CASE("aperiodicity statistic") {
    auto Q = FieldSpec::builtin("Q");
    auto one = MultFnSpec::make(MultKind::constant_one, Q);
    long N = 50;
    APSpec full{{-N}, {1}, {2 * N + 1}};
    // chi(0) = 0, so the full box reaches 2N/(2N+1)
    CHECK(aperiodicity_stat(one, N, {full}) ==
          doctest::Approx(2.0 * N / (2.0 * N + 1.0)).epsilon(1e-12));

    // character mod 3 spikes on {3k+1}
    auto chi = char_mod3();
    APSpec p1{{-47}, {3}, {32}};
    CHECK(aperiodicity_stat(chi, N, {p1}) > 0.25);

    auto lam = MultFnSpec::make(MultKind::liouvilleK, Q);
    CHECK(aperiodicity_stat(lam, 4096, default_catalog(1, 4096)) < 0.1);
}

TEST_CASE("one-sided and two-sided AP statistics agree in verdict") {
    auto Q = FieldSpec::builtin("Q");
    const long N = 500;
    const double thresh = 0.05;
    std::vector<MultFnSpec> fns = {MultFnSpec::make(MultKind::liouvilleK, Q), char_mod3(),
                                   MultFnSpec::make(MultKind::constant_one, Q)};
    for (const auto& chi : fns) {
        double two_sided = 0, one_sided = 0;
        for (long a = 1; a <= 8; ++a) {
            for (long b = 0; b < a; ++b) {
                long L = (N - b) / a + 1;
                cplx acc(0, 0);
                for (long m = 0; m < L; ++m) {
                    long n = a * m + b;
                    if (n < 1 || n > N) continue;
                    std::vector<Int> c = {Int(n)};
                    acc += eval(chi, FieldElement::from_ints(Q, c));
                }
                one_sided = std::max(one_sided, std::abs(acc) / static_cast<double>(N));
                long base = b - a * ((b + N) / a); // same residue class across all of R_N
                APSpec P{{base}, {a}, {(N - base) / a + 1}};
                two_sided = std::max(two_sided, aperiodicity_stat(chi, N, {P}));
            }
        }
        CHECK((one_sided >= thresh) == (two_sided >= thresh));
    }
}

TEST_CASE("default catalog stays inside the box") {
    auto cat = default_catalog(2, 12);
    CHECK(!cat.empty());
    CHECK(cat.size() <= 100000);
    for (const auto& P : cat)
        for (std::size_t i = 0; i < 2; ++i) {
            CHECK(P.base[i] >= -12);
            CHECK(P.base[i] + P.steps[i] * (P.lengths[i] - 1) <= 12);
        }
}

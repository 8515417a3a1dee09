#include <doctest.h>

#include <random>

#include "nilfourier/errors.hpp"
#include "nilfourier/factor.hpp"
#include "nilfourier/ideals.hpp"

using namespace nilfourier;

namespace {
FieldElement elem(const FieldPtr& f, std::initializer_list<long> v) {
    std::vector<Int> c;
    for (long x : v) c.emplace_back(x);
    return FieldElement::from_ints(f, c);
}
} // namespace

TEST_CASE("factor_integer") {
    auto f = factor_integer(Int(360));
    CHECK(f[Int(2)] == 3);
    CHECK(f[Int(3)] == 2);
    CHECK(f[Int(5)] == 1);
    auto big = factor_integer(Int("1000036000099")); // 1000003 * 1000033, past the trial bound
    REQUIRE(big.size() == 2);
    CHECK(big[Int(1000003)] == 1);
    CHECK(big[Int(1000033)] == 1);
    CHECK(miller_rabin(Int(1000003)));
    CHECK_FALSE(miller_rabin(Int("1000036000099")));
}

TEST_CASE("primes_above worked examples") {
    auto Fi = FieldSpec::builtin("Qi");
    auto p2 = primes_above(Fi, 2);
    REQUIRE(p2.size() == 1);
    CHECK(p2[0].e == 2);
    CHECK(p2[0].f == 1);
    CHECK(p2[0].ideal.norm == 2);

    auto p5 = primes_above(Fi, 5);
    REQUIRE(p5.size() == 2);
    for (auto& pf : p5) {
        CHECK(pf.e == 1);
        CHECK(pf.f == 1);
        CHECK(pf.ideal.norm == 5);
    }

    auto F4 = FieldSpec::builtin("Qsqrt2sqrt3");
    auto q5 = primes_above(F4, 5);
    REQUIRE(q5.size() == 2);
    for (auto& pf : q5) CHECK(pf.f == 2);

    CHECK_THROWS_AS(primes_above(F4, 2), unsupported_error);
}

TEST_CASE("sum of e*f equals the degree for supported primes") {
    for (const auto& name : FieldSpec::builtin_names()) {
        auto F = FieldSpec::builtin(name);
        for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L, 41L, 43L, 47L}) {
            std::vector<PrimeFactor> pf;
            try {
                pf = primes_above(F, p);
            } catch (const unsupported_error&) {
                continue;
            }
            unsigned s = 0;
            for (auto& x : pf) s += x.e * x.f;
            CHECK(s == F->D);
            CHECK(pf.size() <= F->D);
        }
    }
}

TEST_CASE("valuation worked examples") {
    auto Fi = FieldSpec::builtin("Qi");
    auto J = primes_above(Fi, 2)[0].ideal;
    CHECK(valuation(elem(Fi, {4, 0}), J) == 4);
    CHECK(valuation(elem(Fi, {3, 0}), J) == 0);
    CHECK(valuation(FieldElement::one(Fi), J) == 0);
    CHECK_THROWS_AS(valuation(FieldElement::zero(Fi), J), precondition_error);
}

TEST_CASE("ideal product norms multiply on prime powers") {
    auto Fi = FieldSpec::builtin("Qi");
    auto P = primes_above(Fi, 5)[0].ideal;
    auto Q = primes_above(Fi, 13)[1].ideal;
    CHECK(P.pow(3).norm == 125);
    CHECK(P.product(Q).norm == 65);
}

TEST_CASE("mobius_K worked examples") {
    auto Fi = FieldSpec::builtin("Qi");
    CHECK(mobius_K(elem(Fi, {1, 1})) == -1);
    CHECK(mobius_K(elem(Fi, {2, 0})) == 0);
    CHECK(mobius_K(FieldElement::one(Fi)) == 1);
    // classical values on Z
    auto Q = FieldSpec::builtin("Q");
    int expect[] = {1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0};
    for (long n = 1; n <= 12; ++n) CHECK(mobius_K(elem(Q, {n})) == expect[n - 1]);
}

TEST_CASE("mobius_K agrees with direct valuations on a Z[i] box") {
    auto Fi = FieldSpec::builtin("Qi");
    for (long a = -6; a <= 6; ++a)
        for (long b = -6; b <= 6; ++b) {
            if (a == 0 && b == 0) continue;
            FieldElement n = elem(Fi, {a, b});
            Int nv = num(knorm(n));
            int direct;
            if (abs(nv) == 1) {
                direct = 1;
            } else {
                unsigned k = 0;
                bool sq = false;
                for (const auto& [p, e] : factor_integer(nv)) {
                    (void)e;
                    for (const auto& pf : primes_above(Fi, p)) {
                        unsigned v = valuation(n, pf.ideal);
                        if (v >= 2) sq = true;
                        if (v == 1) ++k;
                    }
                }
                direct = sq ? 0 : (k % 2 == 0 ? 1 : -1);
            }
            CHECK(mobius_K(n) == direct);
        }
}

TEST_CASE("mobius_K multiplicativity on coprime norms") {
    auto Fi = FieldSpec::builtin("Qi");
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> d(-8, 8);
    int done = 0;
    while (done < 100) {
        FieldElement x = elem(Fi, {d(rng), d(rng)}), y = elem(Fi, {d(rng), d(rng)});
        if (x.is_zero() || y.is_zero()) continue;
        Int nx = num(knorm(x)), ny = num(knorm(y));
        if (gcd(nx, ny) != 1) continue;
        CHECK(mobius_K(x * y) == mobius_K(x) * mobius_K(y));
        ++done;
    }
}

TEST_CASE("density_estimate") {
    auto Fi = FieldSpec::builtin("Qi");
    auto I = primes_above(Fi, 2)[0].ideal;
    Rat d = density_estimate(I, 50);
    CHECK(to_double(abs(d - Rat(1, 2))) <= 0.02);
    CHECK(density_estimate(IdealLattice::whole_ring(Fi), 10) == 1);

    auto Q = FieldSpec::builtin("Q");
    auto I3 = IdealLattice::principal(elem(Q, {3}));
    CHECK(density_estimate(I3, 100) == Rat(67, 201));
}

TEST_CASE("density converges to 1/norm") {
    auto Fi = FieldSpec::builtin("Qi");
    auto P = primes_above(Fi, 5)[0].ideal;
    for (long N : {20L, 40L, 80L}) {
        Rat d = density_estimate(P, N);
        CHECK(to_double(abs(d - Rat(1, 5))) <= 3.0 / static_cast<double>(N));
    }
}

TEST_CASE("principal ideal norm matches |N_K(a)|") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> d(-7, 7);
    for (const auto& name : {"Qi", "Qsqrt2", "Qsqrtm3"}) {
        auto F = FieldSpec::builtin(name);
        int done = 0;
        while (done < 30) {
            std::vector<Int> c(F->D);
            for (auto& x : c) x = d(rng);
            FieldElement a = FieldElement::from_ints(F, c);
            if (a.is_zero()) continue;
            CHECK(IdealLattice::principal(a).norm == abs(num(knorm(a))));
            ++done;
        }
    }
}

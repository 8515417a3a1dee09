#include <doctest.h>

#include <cmath>
#include <random>

#include "nilfourier/numfield.hpp"

using namespace nilfourier;

namespace {

FieldElement elem(const FieldPtr& f, std::initializer_list<long> v) {
    std::vector<Int> c;
    for (long x : v) c.emplace_back(x);
    return FieldElement::from_ints(f, c);
}

FieldElement random_elem(const FieldPtr& f, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> d(-9, 9);
    std::vector<Int> c(f->D);
    for (auto& x : c) x = d(rng);
    return FieldElement::from_ints(f, c);
}

} // namespace

TEST_CASE("embed_matrix on Z[sqrt2]") {
    auto F = FieldSpec::builtin("Qsqrt2");
    QMat A = embed_matrix(elem(F, {3, 1}));
    CHECK(A(0, 0) == 3);
    CHECK(A(0, 1) == 1);
    CHECK(A(1, 0) == 2);
    CHECK(A(1, 1) == 3);

    // general m + n sqrt2 pattern
    QMat B = embed_matrix(elem(F, {-4, 7}));
    CHECK(B(0, 0) == -4);
    CHECK(B(0, 1) == 7);
    CHECK(B(1, 0) == 14);
    CHECK(B(1, 1) == -4);
}

TEST_CASE("embed_matrix of 1 is the identity") {
    for (const auto& name : FieldSpec::builtin_names()) {
        auto F = FieldSpec::builtin(name);
        CHECK(embed_matrix(FieldElement::one(F)) == QMat::identity(F->D));
    }
}

TEST_CASE("knorm worked values") {
    auto F = FieldSpec::builtin("Qsqrt2");
    CHECK(knorm(elem(F, {2, 1})) == 2);
    CHECK(knorm(elem(F, {2, 1}).pow(4)) == 16);
    CHECK(knorm(FieldElement::one(F)) == 1);
}

TEST_CASE("knorm agrees with the embedding determinant at all coordinate sizes") {
    std::mt19937_64 rng(31337);
    // exercise both integer determinant paths (machine word and big int)
    for (long scale : {1L, 1000000000L}) {
        std::uniform_int_distribution<long> d(-9, 9);
        for (const auto& name : FieldSpec::builtin_names()) {
            auto F = FieldSpec::builtin(name);
            for (int t = 0; t < 50; ++t) {
                std::vector<Int> c(F->D);
                for (auto& x : c) x = Int(d(rng)) * scale;
                FieldElement x = FieldElement::from_ints(F, c);
                CHECK(knorm(x) == embed_matrix(x).det());
            }
        }
    }
    // non integral coordinates take the rational path
    auto F = FieldSpec::builtin("Qsqrt2");
    FieldElement h(F, {Rat(1, 2), Rat(3, 4)});
    CHECK(knorm(h) == embed_matrix(h).det());
    CHECK(knorm(h) == Rat(-7, 8));
}

TEST_CASE("min_poly worked values") {
    auto F2 = FieldSpec::builtin("Qsqrt2");
    CHECK(min_poly(elem(F2, {0, 1})) == Poly({Rat(-2), Rat(0), Rat(1)}));
    CHECK(min_poly(FieldElement::one(F2)) == Poly({Rat(-1), Rat(1)}));
    auto Fi = FieldSpec::builtin("Qi");
    CHECK(min_poly(elem(Fi, {1, 1})) == Poly({Rat(2), Rat(-2), Rat(1)}));
}

TEST_CASE("eigen_data on Z[sqrt2]") {
    auto F = FieldSpec::builtin("Qsqrt2");
    auto ev = eigen_data(elem(F, {3, 2}), 1e-10); // 3 + 2 sqrt2
    REQUIRE(ev.size() == 2);
    CHECK(ev[0].is_real);
    CHECK(ev[1].is_real);
    CHECK(ev[0].value.real() == doctest::Approx(3 - 2 * std::sqrt(2.0)).epsilon(1e-9));
    CHECK(ev[1].value.real() == doctest::Approx(3 + 2 * std::sqrt(2.0)).epsilon(1e-9));

    auto ev4 = eigen_data(elem(F, {2, 1}).pow(4), 1e-10);
    CHECK(ev4[1].value.real() == doctest::Approx(135.882).epsilon(1e-4));
    CHECK(ev4[0].value.real() == doctest::Approx(0.117749).epsilon(1e-4));
}

TEST_CASE("eigen_data on 1 and on complex fields") {
    auto Fi = FieldSpec::builtin("Qi");
    auto ev1 = eigen_data(FieldElement::one(Fi), 1e-10);
    REQUIRE(ev1.size() == 2);
    for (auto& e : ev1) CHECK(e.value == std::complex<double>(1.0, 0.0));

    auto evi = eigen_data(elem(Fi, {0, 1}), 1e-10);
    REQUIRE(evi.size() == 2);
    CHECK(!evi[0].is_real);
    CHECK(evi[0].value.imag() == doctest::Approx(1.0));
    CHECK(evi[1].value.imag() == doctest::Approx(-1.0));
}

TEST_CASE("homomorphism and norm multiplicativity on random pairs") {
    std::mt19937_64 rng(20240817);
    for (const auto& name : FieldSpec::builtin_names()) {
        auto F = FieldSpec::builtin(name);
        for (int t = 0; t < 200; ++t) {
            FieldElement x = random_elem(F, rng), y = random_elem(F, rng);
            CHECK(embed_matrix(x) * embed_matrix(y) == embed_matrix(x * y));
            CHECK(embed_matrix(x) + embed_matrix(y) == embed_matrix(x + y));
            CHECK(knorm(x) * knorm(y) == knorm(x * y));
        }
    }
}

TEST_CASE("min_poly annihilates the multiplication matrix exactly") {
    std::mt19937_64 rng(7);
    for (const auto& name : FieldSpec::builtin_names()) {
        auto F = FieldSpec::builtin(name);
        for (int t = 0; t < 25; ++t) {
            FieldElement x = random_elem(F, rng);
            Poly mp = min_poly(x);
            CHECK(poly_at(mp, embed_matrix(x)).is_zero());
            // irreducible over Q implies squarefree
            CHECK(poly_gcd(mp, mp.derivative()).degree() == 0);
        }
    }
}

TEST_CASE("numeric eigenvalues are roots of min_poly and multiply to the norm") {
    std::mt19937_64 rng(99);
    double prec = 1e-10;
    for (const auto& name : FieldSpec::builtin_names()) {
        auto F = FieldSpec::builtin(name);
        for (int t = 0; t < 20; ++t) {
            FieldElement x = random_elem(F, rng);
            if (x.is_zero()) continue;
            Poly mp = min_poly(x);
            auto ev = eigen_data(x, prec);
            REQUIRE(ev.size() == F->D);
            std::complex<double> prod = 1;
            double scale = 1;
            for (const auto& e : ev) {
                std::complex<double> acc = 0;
                for (auto it = mp.c.rbegin(); it != mp.c.rend(); ++it)
                    acc = acc * e.value + to_double(*it);
                CHECK(std::abs(acc) < 1e-6 * std::max(1.0, std::pow(std::abs(e.value), mp.degree())));
                prod *= e.value;
                scale *= std::max(1.0, std::abs(e.value));
            }
            CHECK(std::abs(prod - to_double(knorm(x))) < 1e-7 * scale);
            if (static_cast<std::size_t>(mp.degree()) == F->D) {
                for (std::size_t i = 0; i < ev.size(); ++i)
                    for (std::size_t j = i + 1; j < ev.size(); ++j)
                        CHECK(std::abs(ev[i].value - ev[j].value) > 1e-8);
            }
        }
    }
}

TEST_CASE("inverse and integrality") {
    auto F = FieldSpec::builtin("Qi");
    FieldElement x = elem(F, {1, 1});
    CHECK((x * x.inverse()) == FieldElement::one(F));
    CHECK(x.is_integral());
    CHECK(!x.inverse().is_integral());
}

TEST_CASE("field spec validation and file format") {
    // Z[sqrt2] by explicit table
    auto F = FieldSpec::parse("label = tbl\n"
                              "degree = 2\n"
                              "table[0][0] = 0:1\n"
                              "table[0][1] = 1:1\n"
                              "table[1][0] = 1:1\n"
                              "table[1][1] = 0:2\n"
                              "one = 1,0\n");
    CHECK(knorm(elem(F, {2, 1})) == 2);

    auto G = FieldSpec::parse("label = poly\ndegree = 2\npoly = -2,0,1\n");
    CHECK(knorm(elem(G, {2, 1})) == 2);

    CHECK_THROWS(FieldSpec::parse("label = bad\n"
                                  "degree = 2\n"
                                  "table[0][0] = 0:1\n"
                                  "table[0][1] = 1:1\n"
                                  "table[1][0] = 1:2\n" // breaks commutativity
                                  "table[1][1] = 0:2\n"
                                  "one = 1,0\n"));
}

TEST_CASE("unit_rank per builtin field") {
    CHECK(unit_rank(*FieldSpec::builtin("Q")) == 0);
    CHECK(unit_rank(*FieldSpec::builtin("Qi")) == 0);
    CHECK(unit_rank(*FieldSpec::builtin("Qsqrtm3")) == 0);
    CHECK(unit_rank(*FieldSpec::builtin("Qsqrt2")) == 1);
    CHECK(unit_rank(*FieldSpec::builtin("Qsqrt2sqrt3")) == 3);
}

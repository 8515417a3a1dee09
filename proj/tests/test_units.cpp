#include <doctest.h>

#include <cmath>

#include "nilfourier/errors.hpp"
#include "nilfourier/units.hpp"

using namespace nilfourier;

namespace {
FieldElement elem(const FieldPtr& f, std::initializer_list<long> v) {
    std::vector<Int> c;
    for (long x : v) c.emplace_back(x);
    return FieldElement::from_ints(f, c);
}
} // namespace

TEST_CASE("find_units on Z[sqrt2]") {
    auto F = FieldSpec::builtin("Qsqrt2");
    auto S = find_units(F, 2);
    CHECK(S.rank == 1);
    CHECK(S.complete);
    REQUIRE(S.units.size() == 1);
    CHECK(S.units[0] == elem(F, {-1, 1}));
    CHECK(S.log_vectors[0][0] == doctest::Approx(std::log(std::sqrt(2.0) - 1.0)).epsilon(1e-9));
}

TEST_CASE("rank-zero fields") {
    auto S = find_units(FieldSpec::builtin("Qi"), 3);
    CHECK(S.rank == 0);
    CHECK(S.complete);
    for (auto& v : S.log_vectors) CHECK(v.empty());

    auto Q = FieldSpec::builtin("Q");
    auto SQ = find_units(Q, 5);
    CHECK(SQ.rank == 0);
    REQUIRE(SQ.units.size() == 2);
    CHECK(SQ.units[0] == FieldElement::one(Q));
    CHECK(SQ.units[1] == -FieldElement::one(Q));
}

TEST_CASE("every returned unit has norm +-1") {
    for (const auto& name : FieldSpec::builtin_names()) {
        auto S = find_units(FieldSpec::builtin(name), 3);
        for (auto& u : S.units) {
            Rat n = knorm(u);
            CHECK((n == 1 || n == -1));
        }
    }
}

TEST_CASE("quartic field unit system") {
    auto F = FieldSpec::builtin("Qsqrt2sqrt3");
    auto S = find_units(F, 4);
    CHECK(S.rank == 3);
    CHECK(S.complete);
    REQUIRE(S.units.size() == 3);
    for (std::size_t i = 0; i < S.units.size(); ++i) {
        Rat n = knorm(S.units[i]);
        CHECK((n == 1 || n == -1));
    }

    std::vector<Int> c = {1, 1, 0, 0}; // 1 + theta, norm -8
    FieldElement a = FieldElement::from_ints(F, c);
    auto res = regularize(a, S);
    CHECK(abs(knorm(res.unit)) == 1);
    CHECK(res.regularized == res.unit * a);
    for (long N : {4L, 8L}) CHECK(regularity_check(res.regularized, res.achieved_C + 1e-6, N));
}

TEST_CASE("regularize worked example") {
    auto F = FieldSpec::builtin("Qsqrt2");
    auto S = find_units(F, 2);
    FieldElement a = elem(F, {2, 1}).pow(4);
    auto res = regularize(a, S);
    CHECK(res.regularized == elem(F, {4, 0}));
    CHECK(res.unit == elem(F, {-1, 1}).pow(4));
    CHECK(res.achieved_C <= 1.0 + 1e-9);
    for (long N : {10L, 40L, 160L}) CHECK(regularity_check(res.regularized, res.achieved_C + 1e-6, N));
}

TEST_CASE("regularize is trivial when nothing to balance") {
    auto Fi = FieldSpec::builtin("Qi");
    auto Si = find_units(Fi, 2);
    FieldElement a = elem(Fi, {3, 1});
    auto res = regularize(a, Si);
    CHECK(res.unit == FieldElement::one(Fi));
    CHECK(res.regularized == a);

    auto F = FieldSpec::builtin("Qsqrt2");
    auto S = find_units(F, 2);
    auto r4 = regularize(elem(F, {4, 0}), S);
    CHECK(r4.unit == FieldElement::one(F));
}

TEST_CASE("regularize idempotence") {
    auto F = FieldSpec::builtin("Qsqrt2");
    auto S = find_units(F, 2);
    FieldElement a = elem(F, {2, 1}).pow(4);
    auto once = regularize(a, S);
    auto twice = regularize(once.regularized, S);
    CHECK(twice.unit == FieldElement::one(F));
    CHECK(twice.regularized == once.regularized);
}

TEST_CASE("regularity_check worked examples") {
    auto F = FieldSpec::builtin("Qsqrt2");
    CHECK(regularity_check(elem(F, {4, 0}), 1.0, 40));
    CHECK_FALSE(regularity_check(elem(F, {2, 1}).pow(4), 1.0, 40));
    CHECK(regularity_check(FieldElement::one(F), 1.0, 25));
    CHECK_THROWS_AS(regularity_check(FieldElement::zero(F), 1.0, 10), precondition_error);
}

TEST_CASE("regularize rejects incomplete systems") {
    auto F = FieldSpec::builtin("Qsqrt2sqrt3");
    UnitSystem S;
    S.field = F;
    S.embedding = ArchEmbedding::compute(F);
    S.rank = 3;
    S.complete = false;
    CHECK_THROWS_AS(regularize(FieldElement::one(F), S), precondition_error);
}

import math
from fractions import Fraction

import nilfourier as nf


def test_builtin_fields():
    names = nf.Field.builtin_names()
    assert "Qsqrt2" in names
    K = nf.Field.builtin("Qsqrt2")
    assert K.degree == 2
    assert K.monogenic
    assert K.unit_rank == 1


def test_element_arithmetic():
    K = nf.Field.builtin("Qsqrt2")
    x = K.element([2, 1])
    assert x.norm() == Fraction(2)
    y = x * x
    assert y.coords == [Fraction(6), Fraction(4)]
    assert (x * x.inverse()) == K.one()
    assert x.min_poly() == [Fraction(2), Fraction(-4), Fraction(1)]


def test_mobius_and_primes():
    K = nf.Field.builtin("Qi")
    i = K.element([0, 1])
    two = K.element([2, 0])
    assert nf.mobius(i) == 1
    assert nf.mobius(two) == 0
    above5 = nf.primes_above(K, 5)
    assert len(above5) == 2
    assert all(p["e"] == 1 and p["f"] == 1 for p in above5)


def test_density():
    K = nf.Field.builtin("Qi")
    one_plus_i = K.element([1, 1])
    d = nf.density_estimate(one_plus_i, 100)
    assert abs(d - Fraction(1, 2)) <= Fraction(3, 100)


def test_gowers_interval_norm():
    vals = [1.0 + 0j] * 32
    n = nf.gowers_interval_norm(vals, 1, 32, 2, 65)
    assert abs(n - 1.0) < 1e-9
    lam = [(-1.0) ** bin(k).count("1") + 0j for k in range(1, 513)]
    assert nf.gowers_interval_norm(lam, 1, 512, 2, 1025) < 1.0


def test_regularize():
    K = nf.Field.builtin("Qsqrt2")
    a = (K.element([2, 1])) ** 4
    r = nf.regularize(a)
    assert [abs(c) for c in r["regularized"]] == [Fraction(4), Fraction(0)]
    reg = K.element(r["regularized"])
    assert nf.regularity_check(reg, r["achieved_C"] * 1.01, 40)


def test_forms_round_trip():
    v = nf.hat(2, 2, 1, {(1, 1): ["1/2"]})
    assert v[(1, 1)] == [Fraction(1)]
    u = nf.check(2, 2, 1, {(1, 1): ["1"]})
    assert u[(1, 1)] == [Fraction(1, 2)]


def test_char_search():
    l, norm = nf.char_search(1, 1, {(1,): [math.sqrt(2)]}, 100, 6)
    assert l == [5]
    assert norm < 15.0


def test_partreg():
    spec = nf.quad_parametrization(9, 16, -1)
    assert spec["case"] == 2
    trials, evals = nf.verify_quad(9, 16, -1, trials=20, seed=3)
    assert (trials, evals) == (20, 40)
    trials, evals = nf.verify_gerardin(trials=10)
    assert (trials, evals) == (10, 20)


def test_folner_and_mult_average():
    K = nf.Field.builtin("Q")
    phi1 = nf.folner_set(K, 1)
    assert [c[0] for c in phi1] == [Fraction(-2), Fraction(-1), Fraction(1), Fraction(2)]
    value, degenerate = nf.mult_average(K, "one", [K.zero()], [K.one()], 25)
    assert abs(value - 1.0) < 1e-12
    assert degenerate == 0.0


def test_error_mapping():
    K = nf.Field.builtin("Qsqrt2sqrt3")
    # norm of 1 + theta is even, and 2 divides the index of the power basis
    try:
        nf.mobius(K.element([1, 1, 0, 0]))
    except NotImplementedError:
        pass
    else:
        raise AssertionError("expected NotImplementedError")
    try:
        K.element([1, 2])
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")


if __name__ == "__main__":
    fns = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for fn in fns:
        fn()
        print(f"{fn.__name__}: ok")
    print(f"{len(fns)} python smoke tests passed")

"""Coefficient ring: exact arithmetic, atoms, calculus, substitution."""

import random
from fractions import Fraction

import pytest

from spincheck.gauss import GRat, GR_ONE
from spincheck.geomring import (EPS, HBAR, ONE, Q, R, S, W, X, Y, Z, ZERO,
                                GeomScalar)
from spincheck.minilang import parse_scalar as P


def rand_grat(rng):
    return GRat(Fraction(rng.randint(-6, 6), rng.randint(1, 4)),
                Fraction(rng.randint(-4, 4), rng.randint(1, 3)))


def rand_elem(rng, depth=4):
    gens = [X, Y, Z, R, W, ONE, HBAR, EPS, GeomScalar.const("alpha7"),
            GeomScalar.const("alpha1"), GeomScalar.func("f1"),
            GeomScalar.func("V5"), GeomScalar.s_power(-1),
            GeomScalar.q_power(-1)]
    e = GeomScalar.from_grat(GRat(rng.randint(-3, 3), rng.randint(-2, 2)))
    for _ in range(depth):
        g = rng.choice(gens)
        roll = rng.random()
        if roll < 0.5:
            e = e * g
        elif roll < 0.85:
            e = e + g
        else:
            e = e - g
    return e


def test_grat_field_ops():
    rng = random.Random(11)
    for _ in range(200):
        a, b = rand_grat(rng), rand_grat(rng)
        assert (a + b) - b == a
        assert a * b == b * a
        if not b.is_zero():
            assert (a / b) * b == a
    i = GRat(0, 1)
    assert i * i == GRat(-1)
    assert GRat(Fraction(3, 4)).inv() == GRat(Fraction(4, 3))


def test_atom_squares():
    assert R * R == S
    assert W * W == Q
    assert EPS * EPS == ONE
    assert (W ** 3) * GeomScalar.q_power(-1) == W


def test_rationalization():
    rinv = ONE / R
    assert rinv == R * GeomScalar.s_power(-1)
    winv = ONE / W
    assert winv == W * GeomScalar.q_power(-1)
    # x/r and x*r/s are identical elements
    assert X / R == X * R * GeomScalar.s_power(-1)
    assert (X / R) + (X * R * GeomScalar.s_power(-1)) == \
        (X * R * GeomScalar.s_power(-1)).mul_grat(GRat(2))


def test_add_examples():
    assert R + R == R.mul_grat(GRat(2))
    assert R * R + ZERO == X * X + Y * Y + Z * Z


def test_is_zero_examples():
    assert (R * R - X * X - Y * Y - Z * Z).is_zero()
    assert (W * W - P("2+alpha7*hbar^2*r^2")).is_zero()
    assert not X.is_zero()


def test_partial_examples():
    assert (X * X).partial("x") == X.mul_grat(GRat(2))
    assert (ONE / R).partial("x") == -(X * R * GeomScalar.s_power(-2))
    v5 = GeomScalar.func("V5")
    assert v5.partial("x") == X * R * GeomScalar.s_power(-1) \
        * GeomScalar.func("V5", 1)
    assert W.partial("x") == P("alpha7*hbar^2") * X * W \
        * GeomScalar.q_power(-1)


def test_laplacian_of_inverse_radius_vanishes():
    rinv = ONE / R
    lap = GeomScalar.sum_many([rinv.partial(i).partial(i) for i in range(3)])
    assert lap.is_zero()


def test_ring_axioms_random():
    rng = random.Random(23)
    for _ in range(200):
        a, b, c = (rand_elem(rng, 3) for _ in range(3))
        assert ((a + b) + c - (a + (b + c))).is_zero()
        assert (a * b - b * a).is_zero()
        assert (a * (b + c) - (a * b + a * c)).is_zero()
        assert (a - a).is_zero()


def test_mixed_partials_and_leibniz_random():
    rng = random.Random(37)
    for _ in range(200):
        a, b = rand_elem(rng, 3), rand_elem(rng, 3)
        assert a.partial(0).partial(1) == a.partial(1).partial(0)
        assert (a * b).partial(0) == a.partial(0) * b + a * b.partial(0)


def test_denominator_cancellation_random():
    rng = random.Random(41)
    for _ in range(200):
        a = rand_elem(rng, 3)
        assert (a * S) * GeomScalar.s_power(-1) == a
        assert (a * Q) * GeomScalar.q_power(-1) == a


def test_substitution_examples():
    binding = P("-1/(2*r^2) + alpha1")
    v5p = GeomScalar.func("V5", 1)
    assert v5p.substitute(funcs={"V5": binding}) == R * GeomScalar.s_power(-2)
    e = rand_elem(random.Random(5), 4)
    assert e.substitute() == e
    assert (EPS * W).substitute(consts={"eps": GR_ONE}) == W


def test_substitution_commutes_with_partial():
    rng = random.Random(53)
    binding = {"f1": P("2 - 1/r^2 + alpha1*r^2")}
    for _ in range(60):
        e = rand_elem(rng, 3)
        lhs = e.substitute(funcs=binding).partial(0)
        rhs = e.partial(0).substitute(funcs=binding)
        assert lhs == rhs


def test_derivative_matches_finite_difference():
    # d/dx of V5(r) at random points, against a central difference of a
    # concrete radial profile
    binding = {"V5": P("-1/(2*r^2) + 3*r^2")}
    g = GeomScalar.func("V5").substitute(funcs=binding)
    dg = GeomScalar.func("V5").partial("x").substitute(funcs=binding)
    rng = random.Random(61)
    for _ in range(10):
        pt = [rng.uniform(0.5, 2.0) for _ in range(3)]
        h = 1e-6
        up = g.evaluate((pt[0] + h, pt[1], pt[2]), {})
        dn = g.evaluate((pt[0] - h, pt[1], pt[2]), {})
        fd = (up - dn) / (2 * h)
        exact = dg.evaluate(pt, {})
        assert abs(fd - exact) < 1e-5 * (1 + abs(exact))


def test_binding_alpha7_with_radical_rejected():
    e = W * GeomScalar.func("f1")
    with pytest.raises(ValueError):
        e.substitute(funcs={"f1": ONE}, consts={"alpha7": GR_ONE})


def test_invert_errors():
    with pytest.raises(ValueError):
        (X + Y).invert()
    with pytest.raises(ValueError):
        GeomScalar.func("V0").invert()
    with pytest.raises(ZeroDivisionError):
        ZERO.invert()


def test_radiality_check():
    assert P("1/r^2 + alpha1*sqrt(2+alpha7*hbar^2*r^2)").is_radial()
    assert not (X * R).is_radial()

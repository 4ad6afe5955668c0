"""Sequential-application oracle: exact field residuals and numerics."""

import random
from fractions import Fraction

import pytest

from spincheck.gauss import GRat
from spincheck.geomring import GeomScalar, ONE, ZERO, X
from spincheck.minilang import parse_scalar as P
from spincheck.opalg import Operator, angular, momentum
from spincheck.spinalg import sigma_dot_sigma
from spincheck.builders import PotentialSpec, build_hamiltonian, build_integral
from spincheck.oracle import (TestField, apply_operator, commutator_residual,
                              evaluate_at, random_field, random_point,
                              sample_radial)


def _e1(g):
    return TestField((g, ZERO, ZERO, ZERO))


def test_apply_momentum_to_polynomial():
    psi = _e1(X * X)
    out = apply_operator(momentum(0), psi)
    assert out.components[0] == (X * P("hbar")).mul_grat(GRat(0, -2))
    assert all(c.is_zero() for c in out.components[1:])


def test_apply_angular_to_radial_field():
    psi = _e1(P("r^2"))
    out = apply_operator(angular(2), psi)
    assert out.is_zero()


def test_apply_spin_matrix_mixes_components():
    op = Operator.from_matrix(sigma_dot_sigma())
    psi = TestField((ZERO, ONE, ZERO, ZERO))
    out = apply_operator(op, psi)
    # (sigma1,sigma2) maps e2 to 2 e3 - e2 in the product basis
    assert out.components[1] == -ONE
    assert out.components[2] == ONE + ONE
    assert out.components[0].is_zero() and out.components[3].is_zero()


def test_apply_requires_concrete_operator():
    op = Operator.from_scalar(GeomScalar.func("V0"))
    with pytest.raises(ValueError):
        apply_operator(op, _e1(ONE))


def test_self_commutator_residual_vanishes():
    spec = PotentialSpec({"V0": P("1/r^2"), "V1": ZERO, "V2": ZERO,
                          "V3": ZERO, "V4": ZERO, "V5": ZERO})
    h = build_hamiltonian(spec)
    psi = _e1(X * X + P("r^2"))
    assert commutator_residual(h, h, psi).is_zero()


def test_item_one_residual_is_exact_zero_field():
    spec = PotentialSpec({
        "V0": P("alpha2"), "V1": P("-hbar/(2*r^2)+3*alpha1*hbar"),
        "V2": P("alpha1*hbar^2/2"), "V3": ZERO, "V4": ZERO,
        "V5": P("-1/(2*r^2)+alpha1")})
    h = build_hamiltonian(spec)
    y = build_integral("Y6")
    psi = _e1(X * GeomScalar.coordinate(1)
              + GeomScalar.coordinate(2) ** 3)
    assert commutator_residual(h, y, psi).is_zero()
    # perturbing one potential must break the residual
    bad = PotentialSpec({
        "V0": P("alpha2"), "V1": P("hbar/(2*r^2)+3*alpha1*hbar"),
        "V2": P("alpha1*hbar^2/2"), "V3": ZERO, "V4": ZERO,
        "V5": P("-1/(2*r^2)+alpha1")})
    assert not commutator_residual(build_hamiltonian(bad), y, psi).is_zero()


def test_paths_agree_normal_ordering_vs_sequential():
    rng = random.Random(31)
    spec = PotentialSpec({
        "V0": sample_radial(rng), "V1": sample_radial(rng),
        "V2": sample_radial(rng), "V3": ZERO, "V4": ZERO,
        "V5": sample_radial(rng)})
    h = build_hamiltonian(spec)
    y = build_integral("Y7")
    comm = h.commutator(y)
    for _ in range(5):
        psi = random_field(rng)
        direct = apply_operator(comm, psi)
        sequential = commutator_residual(h, y, psi)
        assert (direct - sequential).is_zero()


def test_evaluate_at_examples():
    zero = TestField((ZERO, ZERO, ZERO, ZERO))
    assert evaluate_at(zero, (1, 2, 3), {}) == (0j, 0j, 0j, 0j)
    f = _e1(ONE / GeomScalar.atom_r())
    vals = evaluate_at(f, (3, 4, 0), {})
    assert abs(vals[0] - 0.2) < 1e-15
    with pytest.raises(ValueError):
        evaluate_at(f, (0, 0, 0), {})


def test_seeded_generators_are_reproducible():
    a = random_field(random.Random(42))
    b = random_field(random.Random(42))
    assert (a - b).is_zero()
    assert random_point(random.Random(3)) == random_point(random.Random(3))

"""Determining equations: extraction, matching, closure."""

import random

import pytest

from spincheck.gauss import GRat
from spincheck.geomring import GeomScalar, ONE, X, Y, ZERO
from spincheck.minilang import parse_scalar as P
from spincheck.builders import GeneralScalarSpec, PotentialSpec
from spincheck.determining import (derivability_certificate, derive_system,
                                   match_equation, normalize_equation,
                                   reference_equations, split_radial,
                                   verify_closure)


def test_order3_system_matches_all_seven_displayed():
    system = derive_system(order_filter=3)
    for ident, expr in reference_equations(3):
        assert match_equation(expr, system), ident
    assert all(eq.order == 3 for eq in system)


def test_order3_span_equivalence():
    """The extracted order-3 classes and the seven displayed equations
    generate the same linear constraints on the weights."""
    system = derive_system(order_filter=3)
    displayed = [expr for _, expr in reference_equations(3)]

    class _Wrap:
        def __init__(self, e):
            self.expression = e

    displayed_sys = [_Wrap(normalize_equation(e)) for e in displayed]
    for eq in system:
        assert derivability_certificate(
            eq.expression, displayed_sys, multipliers=["1"]) is not None
    for e in displayed:
        assert derivability_certificate(e, system,
                                        multipliers=["1"]) is not None


def test_order3_vanishes_without_spin_momentum_coupling():
    assert derive_system(order_filter=3, substitutions={"V4": "0"}) == []


def test_seq_targets_in_order2_system():
    system = derive_system(order_filter=2, substitutions={"V4": "0"})
    ref = dict(reference_equations(2))
    assert match_equation(ref["o2-04"], system)      # f8' + f9' = 0
    cert = derivability_certificate(ref["o2-01"], system)
    assert cert is not None and len(cert) <= 3


def test_match_equation_rejects_vacuous_zero():
    system = derive_system(order_filter=3)
    with pytest.raises(ValueError):
        match_equation(ZERO, system)


def test_split_radial_examples():
    g = X * GeomScalar.func("f1") + Y * GeomScalar.func("f2")
    got = {repr(e) for e in split_radial(g)}
    assert got == {"f1", "f2"}
    assert split_radial(ZERO) == []


def test_normalize_strips_units():
    a = normalize_equation(P("hbar^2*r^2*(f8'+f9')"))
    b = normalize_equation(P("f8'+f9'"))
    assert a == b
    c = normalize_equation(P("eps*hbar*(f5-f6)/r^3"))
    d = normalize_equation(P("f5-f6"))
    assert c == d


def test_verify_closure_item_one_weights():
    # the sixth displayed integral comes from f10 = -1/r^2 alone... use the
    # (sigma1,x)(sigma2,x)/r^2 weights: f4 = 1/r^2
    pots = PotentialSpec({
        "V0": P("alpha2"), "V1": P("-hbar/(2*r^2)+3*alpha1*hbar"),
        "V2": P("alpha1*hbar^2/2"), "V3": ZERO, "V4": ZERO,
        "V5": P("-1/(2*r^2)+alpha1")})
    wts = GeneralScalarSpec({"f4": P("1/r^2")}, default_zero=True)
    ok, residuals = verify_closure(pots, wts, mode="direct")
    assert ok and not residuals


def test_verify_closure_trivial_sigma_for_arbitrary_potentials():
    wts = GeneralScalarSpec({"f3": ONE}, default_zero=True)
    ok, _ = verify_closure(PotentialSpec.symbolic(), wts, mode="direct")
    assert ok


def test_verify_closure_detects_perturbation():
    pots = PotentialSpec({
        "V0": P("alpha2"), "V1": P("hbar/(2*r^2)+3*alpha1*hbar"),  # sign flip
        "V2": P("alpha1*hbar^2/2"), "V3": ZERO, "V4": ZERO,
        "V5": P("-1/(2*r^2)+alpha1")})
    wts = GeneralScalarSpec({"f4": P("1/r^2")}, default_zero=True)
    ok, residuals = verify_closure(pots, wts, mode="direct")
    assert not ok and residuals


def _random_radial(rng):
    g = GeomScalar.from_grat(GRat(rng.randint(-3, 3)))
    g = g + GeomScalar.s_power(-1).mul_grat(GRat(rng.randint(-2, 2)))
    g = g + GeomScalar.s_power(1).mul_grat(GRat(rng.randint(-1, 1)))
    return g if not g.is_zero() else ONE


def test_closure_paths_agree_on_random_pairs():
    """System substitution and the direct commutator must agree."""
    rng = random.Random(211)
    system = derive_system()
    for _ in range(20):
        pots = PotentialSpec({name: _random_radial(rng)
                              for name in ("V0", "V1", "V2", "V3", "V4", "V5")})
        wts = GeneralScalarSpec(
            {f"f{j}": _random_radial(rng) if rng.random() < 0.5 else ZERO
             for j in range(1, 11)}, default_zero=True)
        ok, _ = verify_closure(pots, wts, system=system, mode="both")
        assert isinstance(ok, bool)

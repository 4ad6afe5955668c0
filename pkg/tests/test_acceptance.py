"""Acceptance suite: one check per shipped criterion, with a printed
pass/fail line each.  Run with `pytest tests/test_acceptance.py -v -s`.

Known-discrepancy outcomes are classifications, not silent repairs: a
criterion only counts as satisfied when every verbatim failure carries a
machine-verified minimal repair and an attached residual.
"""

import random
import time

import pytest

from spincheck.gauss import GRat
from spincheck.geomring import GeomScalar, ONE, R
from spincheck.minilang import parse_scalar as P
from spincheck.opalg import Operator
from spincheck.spinalg import (LABELS, label_product, mat_mul, realize_label,
                               sigma_dot_sigma)
from spincheck.builders import (GeneralScalarSpec, PotentialSpec,
                                build_gauge_matrix, build_general_scalar,
                                build_hamiltonian, m_xx,
                                gauge_conjugated_scalar_hamiltonian,
                                gauge_induced_spec, printed_general_scalar)
from spincheck.catalog import classify, get_entry, verify_all, verify_entry
from spincheck.determining import (derivability_certificate, derive_system,
                                   match_equation, reference_equations)


def _report(criterion, status, detail=""):
    tail = f" - {detail}" if detail else ""
    print(f"criterion {criterion}: {status}{tail}")


def test_criterion_1_pauli_realization():
    t0 = time.perf_counter()
    for l1 in LABELS:
        for l2 in LABELS:
            unit, label = label_product(l1, l2)
            direct = mat_mul(realize_label(l1), realize_label(l2))
            expected = tuple(tuple(unit * v for v in row)
                             for row in realize_label(label))
            assert direct == expected
    dt = time.perf_counter() - t0
    _report(1, "PASS", f"256 products match the explicit matrices "
                       f"({dt:.2f}s)")
    assert dt < 1.0


def test_criterion_2_symmetrizer_golden():
    t0 = time.perf_counter()
    computed = build_general_scalar(GeneralScalarSpec.symbolic())
    printed = printed_general_scalar()
    diff = printed - computed
    dt = time.perf_counter() - t0
    if diff.is_zero():
        _report(2, "PASS", f"printed display reproduced ({dt:.2f}s)")
        return
    # the term-for-term report of the mismatch, slot by slot
    slots = []
    for d, mat in sorted(diff.terms.items()):
        for label in sorted(mat.coeffs):
            g = mat.coeffs[label]
            if not g.is_zero():
                slots.append((d, label))
                print(f"  display mismatch at derivative {d}, "
                      f"basis {label}: {g!r}")
    # every deviation sits in the position-position coefficient and is
    # exactly the anti-Hermitian defect of the display (the missing 1/r
    # on f5'+f6'); the computed operator is the symmetric one.
    defect = ((P("f5'") + P("f6'")) * (ONE - R * GeomScalar.s_power(-1))) \
        .mul_grat(GRat(0, -1)) * P("hbar/2")
    assert diff == Operator.from_matrix(m_xx().scale(defect))
    assert computed.adjoint() == computed
    assert not (printed.adjoint() == printed)
    _report(2, "PASS WITH KNOWN DISCREPANCY",
            "display lacks 1/r on the f5'+f6' contribution; computed "
            f"operator is the Hermitian one ({dt:.2f}s)")
    assert dt < 5.0


def test_criterion_3_determining_equation_goldens():
    t0 = time.perf_counter()
    sys3 = derive_system(order_filter=3)
    for ident, expr in reference_equations(3):
        assert match_equation(expr, sys3), ident
    sys2 = derive_system(order_filter=2, substitutions={"V4": "0"})
    ref2 = dict(reference_equations(2))
    assert match_equation(ref2["o2-04"], sys2)
    seq1_matched = match_equation(ref2["o2-01"], sys2)
    cert = None
    if not seq1_matched:
        cert = derivability_certificate(ref2["o2-01"], sys2)
        assert cert is not None, "first displayed radial equation is not " \
                                 "even a linear consequence"
    dt = time.perf_counter() - t0
    if seq1_matched:
        _report(3, "PASS", f"order-3 set and both radial targets matched "
                           f"({dt:.1f}s)")
    else:
        for coeff, mult, eq in cert:
            print(f"  combination witness: ({coeff!r}) * {mult} * "
                  f"[{eq.expression!r}]")
        _report(3, "PASS WITH KNOWN DISCREPANCY",
                "order-3 set (7/7) and the f8'+f9' target matched; the "
                "first radial target is an exact linear combination of "
                f"extracted equations, not a unit multiple ({dt:.1f}s)")
    assert dt < 30.0


@pytest.fixture(scope="module")
def symbolic_records():
    t0 = time.perf_counter()
    records = verify_all(mode="symbolic", eps="both")
    return records, time.perf_counter() - t0


@pytest.fixture(scope="module")
def oracle_records():
    t0 = time.perf_counter()
    records = verify_all(mode="oracle", eps="both")
    return records, time.perf_counter() - t0


def test_criterion_4_theorem_verification(symbolic_records):
    records, dt = symbolic_records
    ids = {r["id"] for r in records}
    assert ids == {str(i) for i in range(1, 31)} | {"G1", "G2"}
    failures = [r for r in records if r["verdict"] == "failure"]
    assert not failures, failures
    discrepancies = [r for r in records if r["verdict"] == "discrepancy"]
    for r in discrepancies:
        assert r["diagnosis"], r
        assert r["residual_terms"], r
    eps_branches = {r["branch"] for r in records if r["id"] in
                    ("8", "9", "10") and r["check"] == "commutator"}
    assert eps_branches == {"sym", "eps=+1", "eps=-1"}
    flagged = sorted({(r["id"], r["integral"]) for r in discrepancies})
    print(f"  {len(records)} checks, {len(discrepancies)} classified "
          f"discrepancies: {flagged}")
    _report(4, "PASS WITH KNOWN DISCREPANCIES" if discrepancies else "PASS",
            f"30 systems + 2 gauge systems, every verbatim failure "
            f"diagnosed ({dt:.1f}s)")
    assert dt < 60.0


def test_criterion_5_gauge_sector(symbolic_records):
    t0 = time.perf_counter()
    u = build_gauge_matrix()
    from spincheck.spinalg import TwoSpinMatrix
    assert (u.adjoint() * u) == TwoSpinMatrix.identity()
    assert gauge_conjugated_scalar_hamiltonian() == \
        build_hamiltonian(gauge_induced_spec())
    spec = gauge_induced_spec()
    assert spec["V1"] == P("2*hbar/r^2")
    assert spec["V2"] == P("hbar^2/r^2")
    assert spec["V3"] == P("-hbar^2/r^4")
    assert spec["V4"].is_zero() and spec["V5"].is_zero()
    records, _ = symbolic_records
    brackets = [r for r in records if r["check"] == "bracket"]
    assert len(brackets) == 27 + 45
    assert all(r["verdict"] == "zero" for r in brackets)
    dt = time.perf_counter() - t0
    _report(5, "PASS", f"unitarity, induced potentials and all {len(brackets)}"
                       f" bracket relations exact ({dt:.1f}s)")
    assert dt < 10.0


def test_criterion_6_trivial_integrals():
    t0 = time.perf_counter()
    h = build_hamiltonian(PotentialSpec.symbolic())
    assert h.commutator(Operator.identity()).is_zero()
    assert h.commutator(
        Operator.from_matrix(sigma_dot_sigma())).is_zero()
    dt = time.perf_counter() - t0
    _report(6, "PASS", f"identity and the spin-spin invariant commute with "
                       f"the fully symbolic Hamiltonian ({dt:.2f}s)")


def test_criterion_7_oracle_agreement(oracle_records, symbolic_records):
    records, dt = oracle_records
    failures = [r for r in records if r["verdict"] == "failure"]
    assert not failures, failures
    sym_records, _ = symbolic_records
    sym_verdicts = {(r["id"], r["integral"], r["branch"]): r["verdict"]
                    for r in sym_records if r["check"] == "commutator"}
    for r in records:
        key = (r["id"], r["integral"], r["branch"])
        if key in sym_verdicts:
            assert r["verdict"] == sym_verdicts[key], key
    print(f"  {len(records)} oracle checks agree with the symbolic "
          f"verdicts")
    _report(7, "PASS", f"exact zero fields and numeric residuals below "
                       f"tolerance on both paths ({dt:.1f}s)")
    assert dt < 120.0


def test_criterion_8_property_suites():
    t0 = time.perf_counter()
    from tests import test_gauss_ring as ring
    from tests import test_opalg as ops
    ring.test_ring_axioms_random()
    ring.test_mixed_partials_and_leibniz_random()
    ring.test_denominator_cancellation_random()
    ops.test_jacobi_identity_random()
    ops.test_adjoint_antihomomorphism_random()
    ops.test_normal_order_idempotent_random()
    dt = time.perf_counter() - t0
    _report(8, "PASS", f"ring axioms, mixed partials, Leibniz, Jacobi, "
                       f"adjoint anti-homomorphism and normal-ordering "
                       f"idempotence, 200 seeded instances each ({dt:.1f}s)")

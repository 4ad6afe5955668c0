"""Expression mini-language: parsing, errors, print round trips."""

import random

import pytest

from spincheck.gauss import GRat
from spincheck.geomring import GeomScalar, ONE, R, W
from spincheck.minilang import ParseError, format_scalar, parse_scalar


def test_basic_parses():
    assert parse_scalar("0").is_zero()
    assert parse_scalar("r^2") == parse_scalar("x^2+y^2+z^2")
    assert parse_scalar("sqrt(2+alpha7*hbar^2*r^2)") == W
    assert parse_scalar("1/2 + 1/2") == ONE
    assert parse_scalar("i*i") == -ONE
    assert parse_scalar("-hbar/(2*r^2) + 3*alpha1*hbar") == \
        parse_scalar("3*alpha1*hbar - hbar/2/r^2")


def test_item_eight_style_radical_term():
    e = parse_scalar("eps*hbar/(r^2*sqrt(2+alpha7*hbar^2*r^2))")
    manual = parse_scalar("eps*hbar") * GeomScalar.s_power(-1) * W \
        * GeomScalar.q_power(-1)
    assert e == manual


def test_primes_are_derivative_orders():
    assert parse_scalar("V5'") == GeomScalar.func("V5", 1)
    assert parse_scalar("f10''") == GeomScalar.func("f10", 2)


def test_negative_powers():
    assert parse_scalar("r^-2") == GeomScalar.s_power(-1)
    assert parse_scalar("r^-3") == R * GeomScalar.s_power(-2)


def test_syntax_error_reports_position():
    with pytest.raises(ParseError) as err:
        parse_scalar("alpha1 + + 2")
    assert "position" in str(err.value)


def test_inadmissible_radical_rejected():
    with pytest.raises(ParseError):
        parse_scalar("sqrt(1+r^2)")
    with pytest.raises(ParseError):
        parse_scalar("sqrt(r)")


def test_bad_division_rejected():
    with pytest.raises(ParseError):
        parse_scalar("1/(1+r)")
    with pytest.raises(ParseError):
        parse_scalar("1/x")
    with pytest.raises(ParseError):
        parse_scalar("1/V0")


def test_unknown_name_rejected():
    with pytest.raises(ParseError):
        parse_scalar("alpha99")
    with pytest.raises(ParseError):
        parse_scalar("hbar'")


def test_round_trip_catalog_expressions():
    from spincheck.catalog import ENTRIES
    for entry in ENTRIES:
        for text in entry.potentials.values():
            if text == "ARBITRARY":
                continue
            e = parse_scalar(text)
            assert parse_scalar(format_scalar(e)) == e


def test_round_trip_random_elements():
    from tests.test_gauss_ring import rand_elem
    rng = random.Random(97)
    for _ in range(200):
        e = rand_elem(rng, 4)
        assert parse_scalar(format_scalar(e)) == e

"""Catalog data, serialization, and entry verification plumbing."""

import os

import pytest

from spincheck.catalog import (ENTRIES, ENTRY_IDS, all_entries, classify,
                               dumps_entry, get_entry, parses_entry,
                               verify_entry)


def test_thirty_plus_two_entries():
    assert len(ENTRIES) == 32
    assert [e.ident for e in ENTRIES[:30]] == [str(i) for i in range(1, 31)]
    assert ENTRY_IDS[-2:] == ("G1", "G2")


def test_eps_branches_flagged_on_radical_entries():
    assert [e.ident for e in ENTRIES if e.eps_branches] == ["8", "9", "10"]


def test_family_entries_carry_free_weights():
    assert get_entry("29").family_weights == ("f1", "f7")
    assert get_entry("30").family_weights == ("f1",)


def test_unknown_entry():
    with pytest.raises(KeyError):
        get_entry("31")


def test_serialization_round_trip():
    for entry in ENTRIES:
        text = dumps_entry(entry)
        back = parses_entry(text)
        assert back == entry


def test_parse_entry_errors():
    with pytest.raises(ValueError):
        parses_entry("id: 1\nintegrals: Y1\n")  # missing potentials
    with pytest.raises(ValueError):
        parses_entry("garbage line without colon")


def test_directory_override(tmp_path, monkeypatch):
    entry = get_entry("25")
    changed = parses_entry(dumps_entry(entry).replace(
        "integrals: Y6", "integrals: Y6, Y8"))
    path = tmp_path / "25.entry"
    path.write_text(dumps_entry(changed), encoding="utf-8")
    monkeypatch.setenv("SPINCHECK_CATALOG_DIR", str(tmp_path))
    assert get_entry("25").integral_ids == ("Y6", "Y8")
    assert len(all_entries()) == 32
    monkeypatch.delenv("SPINCHECK_CATALOG_DIR")
    assert get_entry("25").integral_ids == ("Y6",)


def test_verify_entry_smoke_clean_case():
    recs = verify_entry(get_entry("25"), mode="symbolic")
    assert classify(recs) == "ok"
    assert {r["integral"] for r in recs} == {"Y6"}


def test_verify_entry_smoke_discrepancy_case():
    recs = verify_entry(get_entry("16"), mode="symbolic")
    assert classify(recs) == "discrepancy"
    rec = recs[0]
    assert rec["verdict"] == "discrepancy"
    assert rec["residual_terms"]
    assert "beta-weighted" in rec["diagnosis"]


def test_gauge_entry_bracket_checks():
    recs = verify_entry(get_entry("G1"), mode="symbolic")
    brackets = [r for r in recs if r["check"] == "bracket"]
    assert len(brackets) == 27
    assert all(r["verdict"] == "zero" for r in brackets)
    assert classify(recs) == "ok"

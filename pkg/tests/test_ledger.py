"""Ledger assembly, registry consistency and serialization."""

import csv
import io
import json
from fractions import Fraction as F

import pytest

from fowler4 import ledger as lg


@pytest.fixture(scope="module")
def entries():
    return lg.build_ledger()


def test_registry_is_exactly_the_mismatch_set(entries):
    ok, undocumented, silent = lg.check_ledger(entries)
    assert ok, (undocumented, silent)


def test_no_silent_match_for_known_mismatches(entries):
    mism = set(lg.mismatch_symbols(entries))
    for sym in lg.DOCUMENTED_MISMATCHES:
        assert sym in mism


def test_sign_convention_only_on_odd_family(entries):
    for e in entries:
        e.require_valid()
    bad = lg.LedgerEntry(symbol="K0 somewhere", location="x", printed="1",
                         oracle="-1", verdict=lg.SIGN_CONVENTION)
    with pytest.raises(ValueError):
        bad.require_valid()


def test_headline_items_present(entries):
    by = {e.symbol: e.verdict for e in entries}
    assert by["K1 at lower exponent (table)"] == lg.MISMATCH
    assert by["lim t*K~0 vs theorem constant"] == lg.MISMATCH
    assert by["J40(n,s) appendix formula"] == lg.MISMATCH
    assert by["K3 at lower exponent (table)"] == lg.SIGN_CONVENTION
    assert by["p0(n,t) printed vs definitional"] == lg.MISMATCH
    assert by["p2(n,t) printed vs definitional"] == lg.MISMATCH
    assert by["l*(n) level sign"] == lg.MISMATCH
    assert by["K0(n,s) printed formula"] == lg.MATCH
    assert by["K~20,K~21 second-order time-dependent block"] == lg.MATCH


def test_json_roundtrip(entries):
    doc = json.loads(lg.ledger_to_json(entries))
    assert len(doc) == len(entries)
    assert {"symbol", "location", "printed", "oracle", "verdict", "note"} <= set(doc[0])


def test_csv_columns(entries):
    rows = list(csv.reader(io.StringIO(lg.ledger_to_csv(entries))))
    assert rows[0] == ["symbol", "location", "printed", "oracle", "verdict", "note"]
    assert len(rows) == len(entries) + 1


def test_format_number():
    assert lg.format_number(F(25, 16)) == "25/16"
    assert lg.format_number(F(14)) == "14"
    assert lg.format_number(0.1) == "0.10000000000000001"
    assert lg.format_number(3) == "3"


def test_format_tpoly():
    from fowler4.polys import UPoly
    assert lg.format_tpoly(UPoly([F(2), F(-1, 2)])) == "2 + -1/2/t"
    assert lg.format_tpoly({1: F(3), -2: F(1, 4)}) == "3*t + 1/4/t^2"

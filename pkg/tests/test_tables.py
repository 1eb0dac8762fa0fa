import json
import re

import pytest

from gf2m_qsynth import tables
from gf2m_qsynth.tables import (
    EXPO_REFERENCE,
    TABLE_FIELDS,
    exponentiation_table,
    improvement,
    render_json,
    render_text,
    squaring_table,
)


@pytest.fixture(scope="module")
def sq_rows():
    return squaring_table()


@pytest.fixture(scope="module")
def ex_rows():
    return exponentiation_table()


def test_improvement_rounding():
    assert improvement(16, 6) == 62.5
    assert improvement(180, 100) == 44.44
    assert improvement(20, 10) == 50.0


def test_fixture_qubits_are_2n():
    for n, (q, _, _) in tables.SQUARING_REFERENCE.items():
        assert q == 2 * n


def test_squaring_rows(sq_rows):
    assert [r.n for r in sq_rows] == list(TABLE_FIELDS)
    for r in sq_rows:
        assert r.qubits_ours == r.n and r.qubit_improvement == 50.0
    by_n = {r.n: r for r in sq_rows}
    assert (by_n[10].gates_ours, by_n[10].depth_ours, by_n[10].gate_improvement) == (6, 2, 62.5)
    assert by_n[10].polynomial == "x^10+x^3+1"
    assert not by_n[10].differs_from_published
    assert by_n[64].differs_from_published and by_n[64].gaussian_fallback
    assert by_n[100].differs_from_published and by_n[100].gates_ours == 57


def test_exponentiation_rows(ex_rows):
    by_n = {r.n: r for r in ex_rows}
    assert (by_n[10].gates_ours, by_n[10].qubits_ours) == (54, 100)
    assert (by_n[10].gate_improvement, by_n[10].qubit_improvement) == (62.5, 44.44)
    assert (by_n[127].gate_improvement, by_n[127].qubit_improvement) == (66.84, 49.6)
    for r in ex_rows:
        assert r.qubits_ours == r.n ** 2
        assert r.gates_ref == EXPO_REFERENCE[r.n][0]


def test_ours_columns_are_live(monkeypatch):
    # tampering with the published fixture must not move the computed columns
    monkeypatch.setitem(tables.SQUARING_PUBLISHED, 10, (1, 1, 1))
    row = squaring_table(fields=(10,))[0]
    assert row.gates_ours == 6 and row.differs_from_published


def numbers(text):
    return sorted(re.findall(r"\d+(?:\.\d+)?", text))


@pytest.mark.parametrize("kind", ["squaring", "exponentiation"])
def test_text_and_json_agree(kind, sq_rows, ex_rows):
    rows = sq_rows if kind == "squaring" else ex_rows
    text = render_text(rows, kind)
    data = json.loads(render_json(rows, kind))
    assert data["table"] == kind and len(data["rows"]) == len(TABLE_FIELDS)
    body = text.splitlines()[1:1 + len(rows)]
    for line, d in zip(body, data["rows"]):
        cells = line.split()
        assert cells[0].rstrip("*") == str(d["n"])
        if kind == "squaring":
            expected = [d["qubits_ref"], d["qubits_ours"], f"{d['qubit_improvement']:.2f}",
                        d["gates_ref"], d["gates_ours"], f"{d['gate_improvement']:.2f}"]
        else:
            expected = [d["gates_ref"], d["gates_ours"], f"{d['gate_improvement']:.2f}",
                        d["qubits_ref"], d["qubits_ours"], f"{d['qubit_improvement']:.2f}"]
        assert cells[1:7] == [str(v) for v in expected]
        assert cells[0].endswith("*") == d["differs_from_published"]


def test_footnotes(sq_rows):
    text = render_text(sq_rows, "squaring")
    notes = [line for line in text.splitlines() if line.startswith("* n=")]
    flagged = [r.n for r in sq_rows if r.differs_from_published]
    assert [int(re.match(r"\* n=(\d+)", s).group(1)) for s in notes] == flagged
    assert any("n=64" in s and "Gaussian fallback" in s for s in notes)
    assert "NA" in text

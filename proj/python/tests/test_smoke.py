import json
import pathlib

import jsonschema
import pytest

import modbrauer

SCHEMA = json.loads((pathlib.Path(__file__).resolve().parents[2] / "docs" / "report.schema.json").read_text())


def test_so10_report():
    doc = modbrauer.analyze("SO(10) d=1")
    jsonschema.validate(doc, SCHEMA)
    assert doc["classification"] == "SO(10)"
    assert doc["stack_brauer"]["group"]["invariant_factors"] == [2] * 16
    assert doc["cross_check"]["status"] == "pass"


@pytest.mark.parametrize("spec", ["SL(4)", "Sp(6)", "PSp(8) d=1", "Spin(11) d=1 twisted", "PSO(12) d=1", "E7", "G2"])
def test_reports_match_schema(spec):
    result = modbrauer.run(spec)
    assert result.exit_code in (0, 2)
    jsonschema.validate(json.loads(result.document), SCHEMA)


def test_graded_only_exit_code():
    result = modbrauer.run("PGL(2)", mode="moduli")
    assert result.exit_code == 2
    doc = json.loads(result.document)
    assert doc["moduli_brauer"]["resolved"] is False


def test_genus_override_and_low_genus():
    doc = modbrauer.analyze("SO(10) d=1", genus=4)
    assert doc["input"]["genus"] == 4
    assert modbrauer.run("SO(10) d=1", genus=2).exit_code == 1
    low = modbrauer.run("SO(10) d=1", genus=2, allow_low_genus=True)
    assert low.exit_code == 0
    assert low.warnings


def test_parse_error_document():
    result = modbrauer.run("SO(10) d=3")
    assert result.exit_code == 1
    doc = json.loads(result.document)
    jsonschema.validate(doc, SCHEMA)
    assert doc["position"] == 9
    with pytest.raises(ValueError):
        modbrauer.analyze("nonsense")
    with pytest.raises(ValueError):
        modbrauer.normalize("nonsense")


def test_normalize_round_trip():
    raw = modbrauer.normalize("SO(10) d=1")
    assert raw.startswith("type=D5")
    assert modbrauer.normalize(raw) == raw


def test_markdown_output():
    assert modbrauer.run("Sp(6)", output="md").document.startswith("# ")


def test_finite_abelian_groups():
    a = modbrauer.FinAbGroup([2, 4])
    assert a.invariant_factors == [2, 4]
    assert a.order == 8
    assert modbrauer.exterior_square(a) == modbrauer.FinAbGroup([2])
    for orders in ([2, 2], [2, 4], [3, 3], [2, 2, 2], [4, 4], [2, 6]):
        g = modbrauer.FinAbGroup(orders)
        assert modbrauer.schur_multiplier(g) == modbrauer.exterior_square(g)
    with pytest.raises(ValueError):
        modbrauer.schur_multiplier(modbrauer.FinAbGroup([17]))


def test_big_orders_are_python_ints():
    g = modbrauer.FinAbGroup([2] * 70)
    assert g.order == 2**70


def test_smith_normal_form():
    m = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    U, S, V = modbrauer.smith_normal_form(m)
    prod = [[sum(U[i][k] * m[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
    prod = [[sum(prod[i][k] * V[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
    assert prod == S
    assert [S[i][i] for i in range(3)] == [2, 6, 12]


def test_table_has_no_mismatches():
    rows = modbrauer.table(3)
    assert len(rows) > 100
    assert all(r["pass"] for r in rows)

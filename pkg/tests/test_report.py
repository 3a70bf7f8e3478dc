import math
from fractions import Fraction

import pytest

from artifact.graphs import crown, cycle, hypercube, petersen, single_edge
from artifact.report import (
    BOUNDS,
    NotApplicable,
    compute_report,
    format_value,
    to_csv_rows,
    to_table,
    validate,
)


def test_format_value():
    assert format_value(Fraction(2, 3)) == "2/3"
    assert format_value(Fraction(4, 2)) == "2"
    assert format_value(7) == "7"
    assert format_value(25 / 24) == "1.041667"
    assert format_value(math.sqrt(2) / 2) == "0.7071068"


def test_full_report_on_crown():
    rep = compute_report(crown(5))
    assert rep.ok
    v = rep.values()
    assert set(v) == set(BOUNDS)
    assert v["h"] == Fraction(1, 2)
    assert v["h1"] == pytest.approx(0.5, abs=1e-6)
    assert v["g1"] == pytest.approx(25 / 24, abs=1e-6)
    assert v["h_hat"] == pytest.approx(0.5, abs=1e-9)
    assert v["phi"] == pytest.approx(2 * v["h1"], abs=1e-6)


def test_sequential_and_threaded_reports_agree():
    a = compute_report(hypercube(3), workers=1).values()
    b = compute_report(hypercube(3), workers=4).values()
    assert list(a) == list(b)
    for k in a:
        assert a[k] == pytest.approx(b[k], abs=1e-12)


def test_irregular_graph_drops_closed_forms():
    rep = compute_report(single_edge())
    assert "h_hat" not in rep.entries and "hoffman" not in rep.entries
    assert rep.ok
    with pytest.raises(NotApplicable):
        compute_report(single_edge(), ["h_hat"], strict=True)


def test_general_graph_report():
    rep = compute_report(petersen())
    assert rep.graph_type == "general"
    v = rep.values()
    assert v["theta"] == pytest.approx(4, abs=1e-6)
    assert v["hoffman"] == pytest.approx(4, abs=1e-9)
    with pytest.raises(NotApplicable):
        compute_report(cycle(5), ["h1"], strict=True)


def test_bipartite_general_graph_is_two_coloured():
    rep = compute_report(cycle(6), ["h1"])
    assert rep.graph_type == "bipartite"
    assert rep.values()["h1"] == pytest.approx(0.5, abs=1e-6)


def test_unknown_bound():
    with pytest.raises(NotApplicable):
        compute_report(crown(4), ["nope"])


def test_validate_flags_violations():
    assert validate({"h": Fraction(1, 2), "h1_prime": 0.5}) == []
    bad = validate({"h": Fraction(1), "h1_prime": 0.5})
    assert [b["relation"] for b in bad] == ["h <= h1_prime"]


def test_outputs():
    rep = compute_report(crown(4), ["h", "h1"])
    text = to_table(rep)
    assert "h1" in text and "1/2" in text
    rows = to_csv_rows(rep)
    assert rows[0] == ["graph", "bound", "value", "method", "status", "runtime"]
    assert rows[1][1:3] == ["h", "1/2"]
    d = rep.to_dict()
    assert d["bounds"]["h"]["value"] == {"num": 1, "den": 2}
    assert d["ok"]

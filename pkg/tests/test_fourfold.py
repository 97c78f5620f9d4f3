from __future__ import annotations

import json

import pytest

from fano_lines.fourfold import (FixtureError, SingularCubicFourfold, contains_plane_candidate,
                                 line_through_node, load, make_fixture, no_line_certificate,
                                 sigma_membership, validate)
from fano_lines.lines import ProjectiveLine


def test_fixtures_validate(fixtures):
    for name, Y in fixtures.items():
        rep = validate(Y, probes=200)
        assert rep.ok, (name, rep.failed())


def test_kinds(fixtures):
    assert fixtures["FX-N1"].kind == "nodal"
    assert fixtures["FX-C1"].kind == "cuspidal_cyclic"
    assert not fixtures["FX-C1"].q.involves("x5")
    assert fixtures["FX-C1"].cusp_coefficient != 0


def test_no_line_certificates(n1, c1):
    for Y in (n1, c1):
        assert no_line_certificate(Y)["certified"]


def test_designed_lines(n2, c2):
    for Y in (n2, c2):
        a, b = Y.lines[0]
        assert contains_plane_candidate(Y, ProjectiveLine(a, b))
        assert not no_line_certificate(Y)["certified"]


def test_sigma_membership_and_node_line(n1):
    s = n1.points[0]
    assert sigma_membership(n1, s)
    assert line_through_node(n1, s).contains((1, 0, 0, 0, 0, 0))
    with pytest.raises(ValueError):
        sigma_membership(n1, (1, 0, 0, 0, 0, 0))
    with pytest.raises(ValueError):
        line_through_node(n1, (0, 1, 1, 1, 1, 1))


def test_json_round_trip(fixtures):
    for Y in fixtures.values():
        again = SingularCubicFourfold.from_json(json.loads(Y.dumps()))
        assert again.dumps() == Y.dumps()


@pytest.mark.parametrize("mutate, field", [
    (lambda d: d.pop("q"), "q"),
    (lambda d: d.update(kind="smooth"), "kind"),
    (lambda d: d.update(points=[["0", "1"]]), "points"),
    (lambda d: d["k"][0].update(c="abc"), "k"),
    (lambda d: d.update(seed="zero"), "seed"),
])
def test_malformed_fixture_names_field(tmp_path, n1, mutate, field):
    data = json.loads(n1.dumps())
    mutate(data)
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(data))
    with pytest.raises(FixtureError) as exc:
        load(p)
    assert exc.value.field == field


def test_invalid_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(FixtureError) as exc:
        load(p)
    assert exc.value.field == "<json>"


def test_degenerate_q_fails_validation(n1):
    from fano_lines.poly import VARS, Poly

    x = Poly.gens(VARS)
    Y = SingularCubicFourfold("nodal", x[1] * x[2], n1.k, points=[])
    rep = validate(Y, probes=0)
    assert "q_rank" in rep.failed()


def test_make_fixture_new_seed_is_valid():
    Y = make_fixture("nodal", [(0, 1, 0, 0, 0, 0), (0, 0, 1, 0, 0, 0), (0, 1, 1, 1, 1, 1)],
                     seed=7, probes=50)
    assert validate(Y, probes=50).ok


def test_make_fixture_bad_input():
    with pytest.raises(ValueError):
        make_fixture("smooth")
    with pytest.raises(ValueError):
        make_fixture("nodal", [(1, 0, 0, 0, 0, 0)])

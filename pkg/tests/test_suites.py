from __future__ import annotations

import pytest

from fano_lines.trace import check_index, fixtures_for
from fano_lines.suites import GROUPS, NA, PASS, Context, jsonable, run_checks, schemes


@pytest.mark.parametrize("name", ["FX-N1", "FX-C2"])
def test_all_suites_pass(fixtures, name):
    recs = run_checks(Context(fixtures[name], seed=1, samples=30), GROUPS["all"])
    bad = [(r.name, r.witness) for r in recs if r.status not in (PASS, NA)]
    assert not bad
    names = [r.name for r in recs]
    assert names == sorted(names) and len(set(names)) == len(names)
    # every check is traced, and runs exactly on the fixtures the table lists
    index = check_index()
    for r in recs:
        assert r.name in index
        assert (r.status != NA) == (name in fixtures_for(r.name)), r.name


def test_scheme_sampler_share(n1):
    xs = schemes(n1, 40, 0)
    from fano_lines.lines import Nonreduced

    assert sum(isinstance(x, Nonreduced) for x in xs) == 12


def test_jsonable():
    from fractions import Fraction

    from fano_lines.fields import QuadElement

    assert jsonable({"b": (Fraction(1, 2), QuadElement(1, 1, 2)), "a": None}) == {"a": None, "b": ["1/2", "1+1*r2"]}

from __future__ import annotations

import re
from pathlib import Path

from fano_lines import trace, worked

SRC = Path(trace.__file__).parent


def _emitted_names() -> set[str]:
    suites = (SRC / "suites.py").read_text()
    names = set(re.findall(r'"((?:phi|phi_inv|roundtrip|local|sing|divisors|lattice|symmetry|validate)\.[a-z_0-9]+)"',
                           suites))
    names |= {"validate." + n for n in re.findall(r'Check\("([A-Za-z_]+)"', (SRC / "fourfold.py").read_text())}
    return names


def test_traceability_doc_is_current():
    assert trace.DOC.read_text(encoding="utf-8") == trace.render()


def test_every_check_traced_once():
    index = trace.check_index()
    assert set(index) == _emitted_names()
    assert sum(len(e.checks) for e in trace.ENTRIES) == len(index)


def test_trace_fixtures_are_shipped():
    shipped = {p.stem for p in (SRC.parents[1] / "fixtures").glob("*.json")}
    for e in trace.ENTRIES:
        assert e.fixtures and set(e.fixtures) <= shipped
        assert e.quote and e.anchor
    for check, fx in trace.APPLIES.items():
        assert set(fx) <= set(trace.check_index()[check].fixtures)


def test_worked_examples_doc_is_current():
    assert worked.DOC.read_text(encoding="utf-8") == worked.render()


def test_docs_style():
    for p in (trace.DOC, worked.DOC, SRC.parents[1] / "README.md"):
        text = p.read_text(encoding="utf-8")
        assert "—" not in text, p

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fano_lines.lattice import (A2, DELTA, DELTA_SQUARE, H, H_SQUARE, InconsistentIntersections,
                                IntegralLattice, NSClass, U, bbf, count_on_subspace, direct_sum,
                                intersection_table, lattice_isometric, nef_rays, orthogonal_ray,
                                signature, solve_divisor_class)
from fano_lines.poly import Poly

classes = st.builds(NSClass, st.integers(-20, 20), st.integers(-20, 20))


def test_bbf_constants():
    assert bbf(H, H) == H_SQUARE == 6
    assert bbf(DELTA, DELTA) == DELTA_SQUARE == -2
    assert bbf(H, DELTA) == 0
    assert bbf(NSClass(1, -2), NSClass(1, -2)) == 6 - 8


@settings(max_examples=80, deadline=None)
@given(classes, classes, classes, st.integers(-5, 5))
def test_bbf_symmetric_bilinear(u, v, w, n):
    assert bbf(u, v) == bbf(v, u)
    assert bbf(u + v, w) == bbf(u, w) + bbf(v, w)
    assert bbf(u * n, v) == n * bbf(u, v)


@settings(max_examples=80, deadline=None)
@given(classes)
def test_orthogonal_ray(c):
    if c.a == 0 and c.b == 0:
        return
    r = orthogonal_ray(c)
    assert bbf(r, c) == 0


def test_solve_divisor_class():
    psi = solve_divisor_class(6, 6, 0, 2, 0, -1)
    assert (psi.a, psi.b) == (1, -2)
    e = solve_divisor_class(0, 6, 0, -2, 0, -1)
    assert (e.a, e.b) == (0, 2)


def test_solve_divisor_class_inconsistent():
    with pytest.raises(InconsistentIntersections):
        solve_divisor_class(6, 6, 0, 2, 0, -1, extra=[(1, 1, 1)])
    with pytest.raises(InconsistentIntersections):
        solve_divisor_class(6, 6, 0, 2, 0, 0)


def test_nef_rays():
    assert [(r.a, r.b) for r in nef_rays()] == [(1, 0), (2, -3)]


def test_count_conic_and_line():
    x, y, z = Poly.gens(("x", "y", "z"))
    basis = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    res = count_on_subspace([x * x - y * z, x + y + z], basis, seed=0)
    assert res.value == 2 and res.oracle_agrees and len(res.oracle) >= 3


def test_count_tangency_with_multiplicity():
    x, y, z = Poly.gens(("x", "y", "z"))
    basis = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    res = count_on_subspace([x * x - y * z, y], basis, seed=1)
    assert res.value == 2 and res.oracle_agrees


def test_intersection_table_nodal(n1):
    t = intersection_table(n1, seed=3)
    got = {k: t[k].value for k in ("gamma_h", "gamma_delta", "gamma_psi", "gamma_psi_lemma",
                                    "lambda_h", "lambda_delta", "lambda_psi", "lambda_psi_lemma")}
    assert got == {"gamma_h": 6, "gamma_delta": 0, "gamma_psi": 6, "gamma_psi_lemma": 6,
                   "lambda_h": 0, "lambda_delta": -1, "lambda_psi": 2, "lambda_psi_lemma": 2}
    assert all(t[k].oracle_agrees for k in got)


sym3 = st.lists(st.integers(-6, 6), min_size=6, max_size=6).map(
    lambda v: [[v[0], v[1], v[2]], [v[1], v[3], v[4]], [v[2], v[4], v[5]]])


@settings(max_examples=80, deadline=None)
@given(sym3)
def test_signature_matches_eigenvalues(g):
    ev = np.linalg.eigvalsh(np.array(g, dtype=float))
    tol = 1e-9
    assert signature(g) == (int((ev > tol).sum()), int((ev < -tol).sum()))


def test_lattice_invariants():
    L1 = IntegralLattice(direct_sum(U(3), [[-2]]))
    L2 = IntegralLattice(direct_sum([[6]], A2(-1)))
    assert L1.det() == L2.det() == 18
    assert L1.signature() == L2.signature() == (1, 2)


def test_isometry_certificate():
    L1 = IntegralLattice(direct_sum(U(3), [[-2]]))
    L2 = IntegralLattice(direct_sum([[6]], A2(-1)))
    res = lattice_isometric(L1, L2, 5)
    assert res.found
    M = np.array(res.matrix)
    assert (M.T @ np.array(L1.gram) @ M == np.array(L2.gram)).all()
    assert abs(res.checks["det_M"]) == 1


def test_isometry_obstruction():
    res = lattice_isometric(IntegralLattice([[6]]), IntegralLattice([[-6]]), 3)
    assert not res.found and "signature" in res.obstruction
    res = lattice_isometric(IntegralLattice(U(1)), IntegralLattice(U(2)), 3)
    assert not res.found and res.obstruction

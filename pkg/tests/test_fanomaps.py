from __future__ import annotations

from fractions import Fraction

import pytest

from fano_lines.fanomaps import (DomainError, PlaneInQhat, PlaneInY, double_line_multiplicity,
                                 fibre_conic, fibre_points, phi, phi_inverse, plane_factorization,
                                 residual_conic, residual_conic_identity, togliatti_quintic,
                                 trident_membership)
from fano_lines.fourfold import conjugate_pair_points
from fano_lines.lines import NODE, Nonreduced, ProjectiveLine, Reduced, line_in_Y, random_length_two
from fano_lines.localmodel import adapt_frame, fibre_pair
from fano_lines.poly import Poly


def test_phi_lands_in_Y(n1, c1):
    for Y in (n1, c1):
        for seed in range(10):
            for variant in ("reduced", "nonreduced"):
                line = phi(Y, random_length_two(Y, seed, variant))
                assert line_in_Y(Y, line)


def test_plane_factorization(n1):
    fac = plane_factorization(n1, random_length_two(n1, 1))
    assert fac.check()
    assert fac.residual.homogeneous_degree() == 1


def test_round_trip_reduced_and_nonreduced(n1, c1):
    for Y in (n1, c1):
        for seed in range(15):
            for variant in ("reduced", "nonreduced"):
                xi = random_length_two(Y, seed, variant)
                line = phi(Y, xi)
                if line.contains(NODE):
                    assert trident_membership(Y, xi)
                    continue
                assert phi_inverse(Y, line) == xi


def test_trident_pair(n1):
    i, j = n1.trident_pairs[0]
    xi = Reduced(n1.points[i], n1.points[j])
    assert trident_membership(n1, xi)
    assert phi(n1, xi).contains(NODE)
    with pytest.raises(DomainError):
        phi_inverse(n1, phi(n1, xi))


def test_conjugate_pair_round_trip(n1):
    xi = Reduced(*conjugate_pair_points(n1.conjugate_pairs[0]))
    line = phi(n1, xi)
    assert all(isinstance(c, Fraction) for c in line.plucker_vector())
    assert phi_inverse(n1, line) == xi


def test_designed_plane(n2, c2):
    for Y in (n2, c2):
        a, b = Y.lines[0]
        assert isinstance(phi(Y, Reduced(a, b)), PlaneInY)
        assert isinstance(phi(Y, Nonreduced(a, b)), PlaneInY)


def test_phi_inverse_rejects_bad_lines(n1):
    with pytest.raises(ValueError):
        phi_inverse(n1, ProjectiveLine((0, 1, 0, 0, 0, 0), (0, 0, 1, 0, 0, 0)))


def test_plane_in_cone_over_Q():
    from fano_lines.fourfold import SingularCubicFourfold
    from fano_lines.poly import VARS

    x = Poly.gens(VARS)
    q = x[1] * x[3] + x[2] * x[4] + x[5] * x[5]
    k = x[1] ** 2 * x[4] - x[2] ** 2 * x[3] + x[5] ** 3 + x[3] ** 3 + x[4] ** 3
    Y = SingularCubicFourfold("nodal", q, k)
    # q and k vanish on span(e1, e2), so the plane through the node and that line lies in Y
    line = ProjectiveLine((1, 0, 0, 0, 0, 0), (0, 1, 0, 0, 0, 0))
    assert line_in_Y(Y, line)
    other = ProjectiveLine((1, 0, 1, 0, 0, 0), (0, 1, 0, 0, 0, 0))
    assert line_in_Y(Y, other)
    assert isinstance(phi_inverse(Y, other), PlaneInQhat)


def test_double_line_multiplicity(n1):
    xi = random_length_two(n1, 2, "nonreduced")
    assert double_line_multiplicity(n1, xi) >= 2


def test_fibre_conics(n1, c1):
    for s in n1.points[:4]:
        fc = fibre_conic(adapt_frame(n1, s))
        assert fc.kind == "nonsingular_conic" and fc.rank == 3
    for s in c1.points[:4]:
        fc = fibre_conic(adapt_frame(c1, s))
        assert fc.kind == "two_lines" and fc.rank == 2
        assert tuple(fc.singular_point) == (0, 0, 0, 1)
        assert fc.lines[0] != fc.lines[1]


def test_residual_conic(n1, c1):
    for Y in (n1, c1):
        fr = adapt_frame(Y, Y.points[0])
        for a in [(1, 0, 0, 0), (1, 2, -1, 3), (0, 1, 1, 1)]:
            assert residual_conic_identity(fr, a)
    t2 = Poly.var("t2", ("t0", "t1", "t2"))
    for s in c1.points:
        if not s[5]:
            assert residual_conic(adapt_frame(c1, s), (0, 0, 0, 1)) == t2 * t2


def test_togliatti_quintic(n1, n2):
    for Y in (n1, n2):
        fr = adapt_frame(Y, Y.points[0])
        T = togliatti_quintic(fr)
        assert T.homogeneous_degree() == 5
        pts = fibre_points(fr, 10, seed=1)
        assert len(pts) == 10
        h1, q1 = fibre_pair(fr)
        for a in pts:
            assert not h1.evaluate(list(a)) and not q1.evaluate(list(a))
            assert not any(T.gradient_at(list(a)))

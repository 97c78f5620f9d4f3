from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from sympy.polys.subresultants_qq_zz import sylvester
from hypothesis import given, settings
from hypothesis import strategies as st

from fano_lines.poly import (VARS, FrameNotAdapted, Poly, decompose_adapted, gram_matrix,
                             quadratic_rank, restrict_to_subspace, resultant_eliminate)

XYZ = ("x", "y", "z")
coef = st.integers(-4, 4)


@st.composite
def polys(draw, max_terms=5, max_deg=3):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        e = tuple(draw(st.integers(0, max_deg)) for _ in XYZ)
        terms[e] = draw(coef)
    return Poly(XYZ, terms)


points = st.tuples(coef, coef, coef)


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(f, g, h):
    assert (f + g) * h == f * h + g * h
    assert (f * g) * h == f * (g * h)
    assert f * g == g * f
    assert (f - f).is_zero()


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), points)
def test_evaluation_is_a_ring_map(f, g, p):
    assert (f * g)(p) == f(p) * g(p)
    assert (f + g)(p) == f(p) + g(p)


@settings(max_examples=40, deadline=None)
@given(polys(), polys(), polys(), polys())
def test_substitution_composes(f, a, b, c):
    comp = f.substitute([a, b, c], XYZ)
    pt = (Fraction(1), Fraction(-2), Fraction(3))
    assert comp(pt) == f((a(pt), b(pt), c(pt)))


@settings(max_examples=40, deadline=None)
@given(polys(), polys())
def test_leibniz(f, g):
    assert (f * g).partial("x") == f.partial("x") * g + f * g.partial("x")


@settings(max_examples=40, deadline=None)
@given(polys(), polys())
def test_divmod_reconstructs(f, g):
    if g.is_zero():
        return
    q, r = f.divmod(g)
    assert q * g + r == f


@settings(max_examples=40, deadline=None)
@given(polys())
def test_json_round_trip(f):
    assert Poly.from_json(f.to_json(), XYZ) == f


def test_exact_div_rejects_non_divisor():
    x, y, _ = Poly.gens(XYZ)
    assert (x * x - y * y).exact_div(x - y) == x + y
    with pytest.raises(ArithmeticError):
        (x * x + y).exact_div(x - y)


def test_gram_and_rank():
    x, y, z = Poly.gens(XYZ)
    q = x * y + z * z
    g = gram_matrix(q)
    assert g[0][1] == Fraction(1, 2) and g[2][2] == 1
    assert quadratic_rank(q) == 3
    assert quadratic_rank(x * x + 2 * x * y + y * y) == 1


def test_restrict_to_subspace():
    x, y, z = Poly.gens(XYZ)
    f = x * y - z * z
    r = restrict_to_subspace(f, [(1, 0, 1), (0, 1, 1)], ("s", "t"))
    s, t = Poly.gens(("s", "t"))
    assert r == s * t - (s + t) ** 2


@settings(max_examples=25, deadline=None)
@given(polys(max_terms=4, max_deg=2), polys(max_terms=4, max_deg=2))
def test_resultant_matches_sympy(f, g):
    if f.degree_in("x") <= 0 or g.degree_in("x") <= 0:
        return
    x, y, z = sympy.symbols("x y z")

    def to_sympy(p):
        return sum(sympy.Rational(c.numerator, c.denominator) * x ** e[0] * y ** e[1] * z ** e[2]
                   for e, c in p.terms.items())

    ours = resultant_eliminate(f, g, "x")
    theirs = sympy.expand(sylvester(to_sympy(f), to_sympy(g), x).det())
    assert sympy.expand(to_sympy(ours) - theirs) == 0


def test_adapted_decomposition_reconstructs(n1, c1):
    from fano_lines.localmodel import adapt_frame

    for Y in (n1, c1):
        fr = adapt_frame(Y, Y.points[0])
        d = fr.decomposition()
        q, k = fr.q, fr.k
        assert d.reconstruct() == (q, k)


def test_unadapted_frame_rejected():
    x = Poly.gens(VARS)
    with pytest.raises(FrameNotAdapted):
        decompose_adapted(x[1] * x[1], x[2] ** 3)

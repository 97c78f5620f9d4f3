"""Lines in P^5, the affine Plucker chart at a line through the singular point,
and length-two subschemes of the surface of lines through it.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import linalg
from .fields import normalize, to_str, from_str
from .poly import AdaptedDecomposition, Poly

NODE = (Fraction(1), Fraction(0), Fraction(0), Fraction(0), Fraction(0), Fraction(0))

CHART_VARS = ("p02", "p03", "p04", "p05", "p12", "p13", "p14", "p15")
P0 = CHART_VARS[:4]
P1 = CHART_VARS[4:]


def canonical_point(x) -> tuple:
    """Scale a projective point so its first nonzero coordinate is 1."""
    x = [normalize(c) for c in x]
    lead = next((c for c in x if c), None)
    if lead is None:
        raise ValueError("the zero vector is not a projective point")
    return tuple(normalize(c / lead) for c in x)


def point_key(x) -> tuple:
    return tuple(to_str(c) for c in x)


def same_point(x, y) -> bool:
    return canonical_point(x) == canonical_point(y)


class ProjectiveLine:
    """A line of P^5, stored through the reduced row echelon form of a spanning pair."""

    __slots__ = ("span",)

    def __init__(self, a, b):
        rows, pivots = linalg.rref([list(a), list(b)])
        if len(pivots) != 2:
            raise ValueError("points do not span a line (proportional inputs)")
        self.span = (tuple(rows[0]), tuple(rows[1]))

    @property
    def plucker(self) -> dict[tuple[int, int], object]:
        a, b = self.span
        return {(i, j): normalize(a[i] * b[j] - a[j] * b[i])
                for i, j in combinations(range(len(a)), 2)}

    def plucker_vector(self) -> list:
        p = self.plucker
        return [p[k] for k in sorted(p)]

    def contains(self, x) -> bool:
        return linalg.rank([list(self.span[0]), list(self.span[1]), list(x)]) == 2

    def parametrize(self, variables=("lam", "mu")) -> list[Poly]:
        """Coordinates ``lam*a + mu*b`` of the span pair as linear polys."""
        lam, mu = Poly.gens(variables)
        a, b = self.span
        return [lam * ai + mu * bi for ai, bi in zip(a, b)]

    def __eq__(self, other):
        return isinstance(other, ProjectiveLine) and self.span == other.span

    def __hash__(self):
        return hash(self.span)

    def to_json(self):
        return [[to_str(c) for c in row] for row in self.span]

    @classmethod
    def from_json(cls, data) -> ProjectiveLine:
        if len(data) != 2:
            raise ValueError("a line needs exactly two spanning rows")
        return cls([from_str(str(c)) for c in data[0]], [from_str(str(c)) for c in data[1]])

    def __repr__(self):
        return f"ProjectiveLine({self.to_json()})"


def plucker_of_span(a, b) -> ProjectiveLine:
    return ProjectiveLine(a, b)


def plucker_relations(p: dict) -> list:
    """The Grassmann-Plucker quadrics ``p_ij p_kl - p_ik p_jl + p_il p_jk`` for i<j<k<l."""
    n = max(j for _, j in p) + 1
    return [normalize(p[i, j] * p[k, l] - p[i, k] * p[j, l] + p[i, l] * p[j, k])
            for i, j, k, l in combinations(range(n), 4)]


def restrict_to_line(f: Poly, line: ProjectiveLine) -> Poly:
    """``f(lam*a + mu*b)`` as a binary form."""
    return f.substitute(line.parametrize())


def line_in_Y(Y, line: ProjectiveLine) -> bool:
    """True iff the cubic equation of ``Y`` vanishes identically on ``line``."""
    F = Y if isinstance(Y, Poly) else Y.F
    return restrict_to_line(F, line).is_zero()


# ---------------------------------------------------------------------------
# the Plucker chart centred at l0 = {x2 = ... = x5 = 0}


@dataclass(frozen=True)
class PluckerChart:
    """Chart point ``(p0, p1)``: the line through ``(1:0:-p1)`` and ``(0:1:p0)``.

    Orientation: the chart line is parametrised as ``x0 = lam, x1 = mu,
    (x2..x5) = -lam*p1 + mu*p0``; so ``p1`` enters with a minus sign.
    """

    p0: tuple
    p1: tuple

    def line(self) -> ProjectiveLine:
        a = (1, 0) + tuple(-c for c in self.p1)
        b = (0, 1) + tuple(self.p0)
        return ProjectiveLine(a, b)

    def values(self) -> list:
        return list(self.p0) + list(self.p1)

    @classmethod
    def of_line(cls, line: ProjectiveLine) -> PluckerChart | None:
        """Chart coordinates of ``line``, or ``None`` if it lies outside the chart."""
        a, b = line.span
        m = [[a[0], a[1]], [b[0], b[1]]]
        if not linalg.det(m):
            return None
        inv = linalg.inv(m)
        r0 = [normalize(inv[0][0] * x + inv[0][1] * y) for x, y in zip(a, b)]
        r1 = [normalize(inv[1][0] * x + inv[1][1] * y) for x, y in zip(a, b)]
        return cls(tuple(r1[2:]), tuple(normalize(-c) for c in r0[2:]))


def _chart_images(vector_vars: Sequence[str], ring) -> list[Poly]:
    """Images of x0..x5 sending (x2..x5) to the chart variables ``vector_vars``."""
    zero = Poly(ring)
    return [zero, zero] + [Poly.var(v, ring) for v in vector_vars]


def eval_piece(f: Poly, vector_vars: Sequence[str], ring=CHART_VARS) -> Poly:
    """Evaluate a form in x2..x5 at the vector of chart variables ``vector_vars``."""
    return f.substitute(_chart_images(vector_vars, ring), ring)


def polarization(f: Poly, u_vars, v_vars, ring=CHART_VARS) -> Poly:
    """``b(u, v)`` for the quadratic form ``f`` on x2..x5."""
    uv = [Poly.var(a, ring) + Poly.var(b, ring) for a, b in zip(u_vars, v_vars)]
    zero = Poly(ring)
    fuv = f.substitute([zero, zero] + uv, ring)
    return (fuv - eval_piece(f, u_vars, ring) - eval_piece(f, v_vars, ring)) * Fraction(1, 2)


def bidegree_piece(f: Poly, u_vars, v_vars, du: int, dv: int, ring=CHART_VARS) -> Poly:
    """The part of ``f(s*u + t*v)`` of bidegree ``(du, dv)`` in ``(s, t)``, at s = t = 1."""
    ext = tuple(ring) + ("_s", "_t")
    s, t = Poly.var("_s", ext), Poly.var("_t", ext)
    imgs = [Poly(ext), Poly(ext)] + [Poly.var(a, ext) * s + Poly.var(b, ext) * t
                                     for a, b in zip(u_vars, v_vars)]
    g = f.substitute(imgs, ext)
    keep = {}
    for e, c in g.terms.items():
        if e[-2] == du and e[-1] == dv:
            keep[e[:-2]] = c
    return Poly(ring, keep)


def chart_equations(d: AdaptedDecomposition) -> dict[str, Poly]:
    """The four local equations of the Fano scheme in the chart ``(p0, p1)``.

    Built from the decomposition pieces.  Signs are those produced by direct
    restriction of ``F = x0 q + k`` to the chart line; ``psi30`` carries
    ``-k1(p1)`` and ``psi12`` carries ``-k1^{1,2}``.
    """
    k1 = d.k1_full
    h1p0, h1p1 = eval_piece(d.h1, P0), eval_piece(d.h1, P1)
    h2p0, h2p1 = eval_piece(d.h2, P0), eval_piece(d.h2, P1)
    return {
        "psi30": eval_piece(d.q1, P1) - eval_piece(k1, P1),
        "psi03": h2p0 + eval_piece(d.q2, P0) + eval_piece(k1, P0),
        "psi21": (-h1p1 - polarization(d.q1, P1, P0) * 2 + eval_piece(d.q2, P1)
                  + bidegree_piece(k1, P1, P0, 2, 1)),
        "psi12": (h1p0 - h2p1 + eval_piece(d.q1, P0) - polarization(d.q2, P1, P0) * 2
                  - bidegree_piece(k1, P1, P0, 1, 2)),
    }


def chart_equations_direct(F: Poly) -> dict[str, Poly]:
    """Coefficients of ``lam^i mu^(3-i)`` in ``F`` restricted to the chart line."""
    ring = CHART_VARS + ("lam", "mu")
    lam, mu = Poly.var("lam", ring), Poly.var("mu", ring)
    imgs = [lam, mu] + [Poly.var(b, ring) * mu - Poly.var(a, ring) * lam
                        for a, b in zip(P1, P0)]
    g = F.substitute(imgs, ring)
    out = {}
    for i in range(4):
        keep = {e[:-2]: c for e, c in g.terms.items() if e[-2] == i and e[-1] == 3 - i}
        out[f"psi{i}{3 - i}"] = Poly(CHART_VARS, keep)
    return out


CHART_ORDER = ("psi30", "psi03", "psi21", "psi12")


def jacobian(equations: dict[str, Poly], point, order=CHART_ORDER, variables=CHART_VARS):
    """Jacobian matrix (rows: equations in ``order``) at ``point``."""
    return [[equations[name].partial(v).evaluate(list(point)) for v in variables]
            for name in order]


# ---------------------------------------------------------------------------
# length-two subschemes


class LengthTwoScheme:
    """Base class for the two kinds of length-two subscheme of the surface."""

    def canonical(self):
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, LengthTwoScheme) and self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())


class Reduced(LengthTwoScheme):
    """Two distinct points (coordinates in P^5 with x0 = 0)."""

    def __init__(self, p, q):
        if same_point(p, q):
            raise ValueError("a reduced length-two scheme needs two distinct points")
        self.points = (tuple(p), tuple(q))

    def canonical(self):
        a, b = (canonical_point(x) for x in self.points)
        return ("reduced",) + tuple(sorted((a, b), key=point_key))

    def to_json(self):
        return {"variant": "reduced",
                "points": [[to_str(c) for c in p] for p in self.canonical()[1:]]}

    def __repr__(self):
        return f"Reduced({self.to_json()['points']})"


class Nonreduced(LengthTwoScheme):
    """A point together with a tangent direction ``v`` (a vector not proportional to it)."""

    def __init__(self, x, v):
        if linalg.rank([list(x), list(v)]) != 2:
            raise ValueError("tangent direction proportional to the point")
        self.point = tuple(x)
        self.direction = tuple(v)

    def canonical(self):
        x = canonical_point(self.point)
        piv = next(i for i, c in enumerate(x) if c)
        v = [normalize(c - self.direction[piv] * xc) for c, xc in zip(self.direction, x)]
        return ("nonreduced", x, canonical_point(v))

    def to_json(self):
        c = self.canonical()
        return {"variant": "nonreduced", "point": [to_str(v) for v in c[1]],
                "direction": [to_str(v) for v in c[2]]}

    def __repr__(self):
        j = self.to_json()
        return f"Nonreduced({j['point']}, {j['direction']})"


def scheme_from_json(data) -> LengthTwoScheme:
    try:
        variant = data["variant"]
        if variant == "reduced":
            p, q = data["points"]
            return Reduced([from_str(str(c)) for c in p], [from_str(str(c)) for c in q])
        if variant == "nonreduced":
            return Nonreduced([from_str(str(c)) for c in data["point"]],
                              [from_str(str(c)) for c in data["direction"]])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"bad length-two scheme: {exc}") from exc
    raise ValueError(f"unknown variant {variant!r}")


def tangent_space(Y, x) -> list[list]:
    """Basis of ``T_x Q cap T_x K`` inside H0, as 6-vectors with x0 = 0."""
    gq = Y.q.gradient_at(list(x))[1:]
    gk = Y.k.gradient_at(list(x))[1:]
    return [[Fraction(0)] + v for v in linalg.kernel([gq, gk], 5)]


def is_valid_scheme(Y, xi: LengthTwoScheme) -> bool:
    if isinstance(xi, Reduced):
        return all(x[0] == 0 and Y.on_sigma(x) for x in xi.points)
    x, v = xi.point, xi.direction
    if x[0] or v[0] or not Y.on_sigma(x):
        return False
    return not linalg.dot(Y.q.gradient_at(list(x)), v) and not linalg.dot(Y.k.gradient_at(list(x)), v)


def random_length_two(Y, seed: int, variant: str = "reduced", points=None) -> LengthTwoScheme:
    """A deterministic pseudo-random length-two scheme built on known points of the surface."""
    rng = random.Random(seed)
    pts = list(points if points is not None else Y.points)
    if variant == "reduced":
        if len(pts) < 2:
            raise ValueError("need at least two known points on the surface")
        i, j = rng.sample(range(len(pts)), 2)
        return Reduced(pts[i], pts[j])
    if variant != "nonreduced":
        raise ValueError(f"unknown variant {variant!r}")
    if not pts:
        raise ValueError("no known points on the surface")
    x = pts[rng.randrange(len(pts))]
    basis = tangent_space(Y, x)
    while True:
        coeffs = [rng.randint(-4, 4) for _ in basis]
        v = [normalize(sum((c * b[i] for c, b in zip(coeffs, basis)), Fraction(0)))
             for i in range(6)]
        if linalg.rank([list(x), v]) == 2:
            return Nonreduced(x, v)

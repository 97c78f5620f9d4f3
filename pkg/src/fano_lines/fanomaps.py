"""The residual-line map from length-two subschemes of Sigma to lines of Y,
its inverse, the trident test, fibre conics and the Togliatti quintic.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .fields import FieldMismatch, QuadElement, is_rational, normalize, sqrt, squarefree_part
from .lines import (NODE, Nonreduced, ProjectiveLine, Reduced, canonical_point, is_valid_scheme,
                    restrict_to_line)
from .localmodel import A_VARS, InvariantViolation, fibre_pair
from .poly import Poly, gram_matrix, quadratic_rank

T_VARS = ("t0", "t1", "t2")


class DomainError(ValueError):
    pass


@dataclass
class PlaneInY:
    """The plane spanned by the data lies in Y; the map is undefined there."""

    plane: tuple


@dataclass
class PlaneInQhat:
    """The plane through the node spanned by the line lies in the cone over Q."""

    plane: tuple


@dataclass
class PlaneCubicFactorization:
    plane: tuple
    restricted_cubic: Poly
    known_linear_factors: list
    residual: Poly

    def check(self) -> bool:
        prod = self.residual
        for f in self.known_linear_factors:
            prod = prod * f
        return prod == self.restricted_cubic


def restrict_to_plane(f: Poly, plane) -> Poly:
    t = Poly.gens(T_VARS)
    images = [t[0] * a + t[1] * b + t[2] * c for a, b, c in zip(*plane)]
    return f.substitute(images, T_VARS)


def plane_factorization(Y, xi) -> PlaneCubicFactorization | None:
    """Factor F on the plane spanned by the node and ``xi``; ``None`` if F vanishes there."""
    if isinstance(xi, Reduced):
        plane = (NODE, xi.points[0], xi.points[1])
    else:
        plane = (NODE, xi.point, xi.direction)
    if linalg.rank([list(p) for p in plane]) != 3:
        raise DomainError("data does not span a plane with the node")
    cubic = restrict_to_plane(Y.F, plane)
    if cubic.is_zero():
        return None
    t1, t2 = Poly.var("t1", T_VARS), Poly.var("t2", T_VARS)
    known = [t1, t2] if isinstance(xi, Reduced) else [t2, t2]
    rest = cubic
    for f in known:
        try:
            rest = rest.exact_div(f)
        except ArithmeticError as exc:
            raise InvariantViolation("known line is not a factor of F on the plane") from exc
    return PlaneCubicFactorization(plane, cubic, known, rest)


def _line_of_linear_form(L: Poly, plane) -> ProjectiveLine:
    coeffs = [L.coefficient(tuple(int(i == j) for i in range(3))) for j in range(3)]
    ker = linalg.kernel([coeffs], 3)
    pts = [[normalize(sum((c * p[i] for c, p in zip(v, plane)), Fraction(0))) for i in range(6)]
           for v in ker]
    return ProjectiveLine(pts[0], pts[1])


def phi(Y, xi):
    """Residual line of the plane spanned by the node and ``xi``, or :class:`PlaneInY`."""
    if not is_valid_scheme(Y, xi):
        raise ValueError("invalid length-two scheme")
    fac = plane_factorization(Y, xi)
    if fac is None:
        plane = (NODE,) + ((xi.points) if isinstance(xi, Reduced) else (xi.point, xi.direction))
        return PlaneInY(plane)
    return _line_of_linear_form(fac.residual, fac.plane)


def double_line_multiplicity(Y, xi: Nonreduced) -> int:
    """Multiplicity of the factor t2 (the line through node and x) in F on the plane."""
    fac = plane_factorization(Y, xi)
    if fac is None:
        raise DomainError("plane lies in Y")
    t2 = Poly.var("t2", T_VARS)
    m, rest = 2, fac.residual
    while True:
        quo, rem = rest.divmod(t2)
        if rem or rest.is_zero():
            return m
        m += 1
        rest = quo


def _base_change_sqrt(disc):
    r = sqrt(disc)
    if r is not None:
        return r
    if not is_rational(disc):
        raise FieldMismatch("splitting needs a quadratic extension of a quadratic field")
    disc = Fraction(disc)
    f, D = squarefree_part(disc.numerator * disc.denominator)
    return QuadElement(0, Fraction(f, disc.denominator), D)


def phi_inverse(Y, line: ProjectiveLine):
    """Length-two scheme whose residual line is ``line``, or :class:`PlaneInQhat`."""
    if not restrict_to_line(Y.F, line).is_zero():
        raise ValueError("line is not contained in Y")
    if line.contains(NODE):
        raise DomainError("line passes through the singular point")
    u, w = ([Fraction(0)] + list(r[1:]) for r in line.span)
    u = [normalize(c) for c in u]
    w = [normalize(c) for c in w]
    from .poly import bilinear_form

    b = bilinear_form(Y.q)
    A, B, C = Y.q(u), b(u, w), Y.q(w)
    if not A and not B and not C:
        return PlaneInQhat((NODE,) + line.span)
    disc = normalize(B * B - A * C)
    if not disc:
        s, t = ((-B, A) if A else (Fraction(1), Fraction(0)))
        x = [normalize(s * a + t * c) for a, c in zip(u, w)]
        v = u if linalg.rank([x, u]) == 2 else w
        return Nonreduced(x, v)
    r = _base_change_sqrt(disc)
    roots = [(-B + r, A), (-B - r, A)] if A else [(Fraction(1), Fraction(0)), (C, -2 * B)]
    pts = [[normalize(s * a + t * c) for a, c in zip(u, w)] for s, t in roots]
    for p in pts:
        if Y.k(p):
            raise InvariantViolation("recovered point is not on K")
    return Reduced(pts[0], pts[1])


def trident_membership(Y, xi) -> bool:
    """True iff q vanishes on the line of H0 spanned by ``xi``."""
    if isinstance(xi, Reduced):
        a, b = xi.points
    else:
        a, b = xi.point, xi.direction
    return restrict_to_line(Y.q, ProjectiveLine(a, b)).is_zero()


# ---------------------------------------------------------------------------
# fibres over a point of Sigma (adapted frame)


@dataclass
class FibreConic:
    h1: Poly
    q1: Poly
    kind: str
    rank: int
    singular_point: tuple | None = None
    lines: list | None = None
    tritangent: tuple | None = None


def _ker_h1_basis(h1: Poly):
    coeffs = [h1.coefficient(tuple(int(i == j) for i in range(4))) for j in range(4)]
    return linalg.kernel([coeffs], 4)


def fibre_conic(frame) -> FibreConic:
    """Classify the curve {h1 = q1 = 0} in the a-space P^3."""
    h1, q1 = fibre_pair(frame)
    basis = _ker_h1_basis(h1)
    restricted = _restrict(q1, basis)
    r = quadratic_rank(restricted)
    if frame.kind == "nodal":
        if r != 3:
            raise InvariantViolation(f"fibre conic is singular (rank {r})")
        return FibreConic(h1, q1, "nonsingular_conic", r)
    if r != 2:
        raise InvariantViolation(f"cuspidal fibre has rank {r}, expected two distinct lines")
    G = gram_matrix(restricted)
    ker = linalg.kernel(G, 3)
    kappa = [normalize(sum((c * b[i] for c, b in zip(ker[0], basis)), Fraction(0))) for i in range(4)]
    sing = canonical_point(kappa)
    comp = linalg.complete_basis(ker, 3)[1:]
    bq = _restrict(restricted, comp)
    a, bb, c = bq.coefficient((2, 0)), bq.coefficient((1, 1)) / 2, bq.coefficient((0, 2))
    disc = normalize(bb * bb - a * c)
    rt = _base_change_sqrt(disc)
    roots = [(-bb + rt, a), (-bb - rt, a)] if a else [(Fraction(1), Fraction(0)), (c, -2 * bb)]
    lines = []
    for s, t in roots:
        u = [normalize(s * x + t * y) for x, y in zip(comp[0], comp[1])]
        pt = [normalize(sum((ui * b[i] for ui, b in zip(u, basis)), Fraction(0))) for i in range(4)]
        lines.append((tuple(sing), tuple(pt)))
    tri = tuple(Fraction(int(i == 3)) for i in range(4))
    return FibreConic(h1, q1, "two_lines", r, singular_point=sing, lines=lines, tritangent=tri)


def _restrict(f: Poly, basis) -> Poly:
    names = tuple(f"u{i}" for i in range(len(basis)))
    us = Poly.gens(names)
    imgs = []
    for j in range(f.nvars):
        im = Poly(names)
        for u, b in zip(us, basis):
            if b[j]:
                im = im + u * b[j]
        imgs.append(im)
    return f.substitute(imgs, names)


def _at_a(f: Poly, a):
    return f.evaluate([0, 0] + list(a))


def residual_conic(frame, a) -> Poly:
    """The conic C_a in (t0, t1, t2) with F on the plane P_a equal to t2 * C_a."""
    d = frame.decomposition()
    t0, t1, t2 = Poly.gens(T_VARS)
    return (t0 * t1 * _at_a(d.h1, a) + t0 * t2 * _at_a(d.q1, a) + t1 * t1 * _at_a(d.h2, a)
            + t1 * t2 * _at_a(d.q2, a) + t2 * t2 * _at_a(d.k1_full, a))


def plane_of_a(a) -> tuple:
    e0 = tuple(Fraction(int(i == 0)) for i in range(6))
    e1 = tuple(Fraction(int(i == 1)) for i in range(6))
    return (e0, e1, (Fraction(0), Fraction(0)) + tuple(a))


def residual_conic_identity(frame, a) -> bool:
    """Exact check of F|P_a = t2 * C_a in the frame coordinates."""
    restricted = restrict_to_plane(frame.F, plane_of_a(a))
    return restricted == Poly.var("t2", T_VARS) * residual_conic(frame, a)


def togliatti_quintic(frame) -> Poly:
    """Determinant of [[0, h1, q1], [h1, 2 h2, q2], [q1, q2, 2 k1]] as a quintic in a."""
    d = frame.decomposition()
    z = Poly(A_VARS)
    img = [z, z] + Poly.gens(A_VARS)
    h1, q1, h2, q2, k1 = (f.substitute(img, A_VARS) for f in (d.h1, d.q1, d.h2, d.q2, d.k1_full))
    # expansion along the first row
    return -h1 * (h1 * k1 * 2 - q2 * q1) + q1 * (h1 * q2 - h2 * q1 * 2)


def fibre_points(frame, count: int, seed: int = 0) -> list[tuple]:
    """Exact points of {h1 = q1 = 0}, each over Q or a quadratic field.

    Intersects the curve with random rational lines of the plane ker h1.
    """
    rng = random.Random(seed)
    h1, q1 = fibre_pair(frame)
    basis = _ker_h1_basis(h1)
    restricted = _restrict(q1, basis)
    out = []
    seen = set()
    attempts = 0
    while len(out) < count and attempts < 50 * count:
        attempts += 1
        u1 = [Fraction(rng.randint(-5, 5)) for _ in range(3)]
        u2 = [Fraction(rng.randint(-5, 5)) for _ in range(3)]
        if linalg.rank([u1, u2]) < 2:
            continue
        A, C = restricted(u1), restricted(u2)
        B = (restricted([x + y for x, y in zip(u1, u2)]) - A - C) / 2
        if not A and not B and not C:
            continue
        disc = normalize(B * B - A * C)
        if not A:
            continue
        r = _base_change_sqrt(disc)
        for s, t in ((-B + r, A), (-B - r, A)):
            u = [normalize(s * x + t * y) for x, y in zip(u1, u2)]
            pt = tuple(normalize(sum((ui * b[i] for ui, b in zip(u, basis)), Fraction(0)))
                       for i in range(4))
            if not any(pt):
                continue
            key = canonical_point(pt)
            if key in seen:
                continue
            seen.add(key)
            out.append(pt)
    return out[:count]

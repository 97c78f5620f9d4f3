"""Adapted frames along a line of Sigma, the local equations of the Fano scheme
there, the transversal singularity type, and the a5 != 0 blowup chart.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .fields import normalize
from .lines import (CHART_ORDER, CHART_VARS, P0, chart_equations,
                    chart_equations_direct, jacobian)
from .poly import VARS, AdaptedDecomposition, Poly, decompose_adapted, linear_images, quadratic_rank

BLOWUP_VARS = ("p02", "p03", "p04", "p05", "a2", "a3", "a4", "p15")
A_VARS = ("a2", "a3", "a4", "a5")


class InvariantViolation(ArithmeticError):
    """A property proved to hold for every valid input failed."""


@dataclass
class AdaptedFrame:
    """Columns ``f0..f5`` of ``transform``: old coordinates are ``x = transform * y``."""

    transform: list
    point: tuple
    kind: str
    q: Poly = field(repr=False)
    k: Poly = field(repr=False)

    @property
    def mode(self) -> str:
        return "nodal" if self.kind == "nodal" else "cuspidal"

    @property
    def F(self) -> Poly:
        return Poly.var("x0", VARS) * self.q + self.k

    def decomposition(self) -> AdaptedDecomposition:
        return decompose_adapted(self.q, self.k, self.mode)

    def to_frame(self, x) -> list:
        """Frame coordinates of an old-coordinate point or vector."""
        return linalg.solve(self.transform, list(x))

    def from_frame(self, y) -> list:
        return linalg.matvec(self.transform, list(y))


def _transform_forms(Y, T):
    images = linear_images(T, VARS)
    return Y.q.substitute(images, VARS), Y.k.substitute(images, VARS)


def adapt_frame(Y, s, hyperplane=None) -> AdaptedFrame:
    """Coordinates with the node at e0, ``s`` at e1 and ``h1 = x2``, ``h2 = x3`` (+ c*x5).

    Choices are made by reduced row echelon solving, so the result is
    deterministic.  ``hyperplane`` (coefficients on x1..x5) optionally forces
    f2..f5 into that hyperplane of H0; it must not contain ``s``.
    In cuspidal mode f5 is the vertex of Q and f2..f4 lie in {x5 = 0}.
    """
    s = [normalize(c) for c in s]
    if s[0] or not Y.on_sigma(s):
        raise ValueError("point is not on Sigma")
    s5 = s[1:]
    gq = Y.q.gradient_at(s)[1:]
    gk = Y.k.gradient_at(s)[1:]
    if linalg.rank([gq, gk]) != 2:
        raise InvariantViolation("h1 and h2 are proportional at this point")
    extra = []
    if hyperplane is not None:
        hyp = [normalize(c) for c in hyperplane]
        if linalg.dot(hyp, s5) == 0:
            raise ValueError("hyperplane contains the point")
        extra.append(hyp)
    cusp = Y.kind != "nodal"
    if cusp:
        extra.append([0, 0, 0, 0, 1])
    zero = Fraction(0)

    def particular(a, b):
        rows = [gq, gk] + extra
        sol = linalg.solve(rows, [Fraction(a), Fraction(b)] + [zero] * len(extra))
        if sol is None:
            raise InvariantViolation("cannot normalise h1, h2 in the requested subspace")
        return sol

    f2 = particular(1, 0)
    f3 = particular(0, 1)
    null = linalg.kernel([gq, gk] + extra, 5)
    vertex = [zero] * 4 + [Fraction(1)]
    if cusp and hyperplane is not None and linalg.dot(extra[0], vertex):
        raise ValueError("cuspidal frames need the hyperplane to contain the vertex")
    tail = [vertex] if cusp else []
    cols = None
    # shifting f3 by kernel vectors keeps h1(f3) = 0, h2(f3) = 1; needed when s
    # already lies in span(f3, vertex)
    for shift in [[zero] * 5] + null:
        g3 = [a + b for a, b in zip(f3, shift)]
        trial = [s5, f2, g3]
        for v in null:
            if len(trial) + len(tail) == 5:
                break
            if linalg.rank(trial + tail + [v]) > len(trial) + len(tail):
                trial.append(v)
        trial += tail
        if linalg.rank(trial) == 5:
            cols = trial
            break
    if cols is None:
        raise InvariantViolation("frame vectors are dependent")
    T = [[Fraction(int(i == 0 and j == 0)) for j in range(6)] for i in range(6)]
    for j, c in enumerate(cols, start=1):
        for i in range(5):
            T[i + 1][j] = normalize(c[i])
    q, k = _transform_forms(Y, T)
    frame = AdaptedFrame(T, tuple(s), Y.kind, q, k)
    d = frame.decomposition()
    x2, x3 = Poly.var("x2", VARS), Poly.var("x3", VARS)
    if d.h1 != x2:
        raise InvariantViolation(f"h1 = {d.h1}, expected x2")
    if (d.h2 - x3).involves("x2") or (d.h2 - x3).involves("x3") or (d.h2 - x3).involves("x4"):
        raise InvariantViolation(f"h2 = {d.h2}, expected x3 (+ c x5)")
    return frame


class AdaptedModel:
    """Stand-alone adapted model ``(q, k)`` already in an adapted frame."""

    def __init__(self, q: Poly, k: Poly, kind: str = "nodal"):
        self.q, self.k, self.kind = q, k, kind

    @property
    def mode(self):
        return "nodal" if self.kind == "nodal" else "cuspidal"

    @property
    def F(self):
        return Poly.var("x0", VARS) * self.q + self.k

    def decomposition(self):
        return decompose_adapted(self.q, self.k, self.mode)


def local_equations(frame) -> dict[str, Poly]:
    return chart_equations(frame.decomposition())


def jacobian_at_center(frame):
    """4x8 Jacobian of the chart equations at p0 = p1 = 0 (rows psi30, psi03, psi21, psi12).

    The psi30 row vanishes and the other three rows are independent as soon as
    grad h1 and grad h2 are, so the rank is 3 (embedding dimension 5).
    """
    eqs = local_equations(frame)
    J = jacobian(eqs, [0] * 8)
    if linalg.rank(J) != 3:
        raise InvariantViolation(f"Jacobian at the centre has rank {linalg.rank(J)}")
    return J


def expected_jacobian_pattern(frame):
    """The block pattern built from grad h1 and grad h2 alone."""
    d = frame.decomposition()
    gh1 = [d.h1.coefficient(tuple(int(i == j) for i in range(6))) for j in range(2, 6)]
    gh2 = [d.h2.coefficient(tuple(int(i == j) for i in range(6))) for j in range(2, 6)]
    z = [Fraction(0)] * 4
    neg = lambda v: [normalize(-c) for c in v]  # noqa: E731
    return [z + z, gh2 + z, z + neg(gh1), gh1 + neg(gh2)]


# ---------------------------------------------------------------------------
# truncated power series solving


def _solve_series(eqs: list[Poly], unknowns: list[str], order: int) -> dict[str, Poly]:
    """Solve ``eqs = 0`` for ``unknowns`` as power series in the other variables.

    The linear part of ``eqs`` in ``unknowns`` must be invertible at 0.
    Iterates ``y <- y - A^{-1} E(y)`` with truncation; every pass fixes one
    more order.
    """
    ring = eqs[0].variables
    A = [[e.partial(u).evaluate([0] * len(ring)) for u in unknowns] for e in eqs]
    try:
        Ainv = linalg.inv(A)
    except linalg.SingularMatrix as exc:
        raise InvariantViolation("implicit function step: linear part not invertible") from exc
    sol = {u: Poly(ring) for u in unknowns}
    for _ in range(order + 1):
        images = [sol[v] if v in sol else Poly.var(v, ring) for v in ring]
        vals = [e.substitute(images, ring).truncate(order) for e in eqs]
        for i, u in enumerate(unknowns):
            corr = Poly(ring)
            for j, v in enumerate(vals):
                if Ainv[i][j]:
                    corr = corr + v * Ainv[i][j]
            sol[u] = (sol[u] - corr).truncate(order)
    return sol


@dataclass
class SingularityVerdict:
    type: str
    witness: dict


def classify_transversal_type(frame, order: int = 3) -> SingularityVerdict:
    """Transversal type of F(Y) along Sigma at the frame's line.

    On the slice p04 = p05 = 0 transversal to Sigma, p02, p03 are solved from
    psi03, psi12 and p12 from psi21; what remains of psi30 is a function of
    (p13, p14, p15) whose 2-jet (and 3-jet along its kernel) decides the type.
    """
    d = frame.decomposition()
    eqs = chart_equations(d)
    ring = CHART_VARS
    zero = Poly(ring)
    sl = [zero if v in ("p04", "p05") else Poly.var(v, ring) for v in ring]
    e = {n: eqs[n].substitute(sl, ring) for n in CHART_ORDER}
    s1 = _solve_series([e["psi03"], e["psi12"]], ["p02", "p03"], order)
    img = [s1.get(v, Poly.var(v, ring)) if v not in ("p04", "p05") else zero for v in ring]
    g21 = e["psi21"].substitute(img, ring).truncate(order)
    g30 = e["psi30"].substitute(img, ring).truncate(order)
    s2 = _solve_series([g21], ["p12"], order)
    p12 = s2["p12"]
    img2 = [s2.get(v, Poly.var(v, ring)) for v in ring]
    f = g30.substitute(img2, ring).truncate(order)
    rest = ("p13", "p14", "p15")
    f = f.change_ring(rest)
    quad = f.homogeneous_part(2)
    cubic = f.homogeneous_part(3)
    r = quadratic_rank(quad)
    # direct witness: q1 restricted to ker h1 inside the a-space
    q1_restricted = d.q1.substitute([Poly(rest), Poly(rest), Poly(rest)] + Poly.gens(rest), rest)
    direct_rank = quadratic_rank(q1_restricted)
    from .poly import gram_matrix

    ker = linalg.kernel(gram_matrix(quad), 3)
    witness = {
        "quadratic_part": quad,
        "rank": r,
        "q1_on_ker_h1": q1_restricted,
        "q1_on_ker_h1_rank": direct_rank,
        "p12_series": p12,
        "p12_linear_term": p12.homogeneous_part(1),
        "cubic_part": cubic,
        "p15_cubed": cubic.coefficient((0, 0, 3)),
        "kernel": ker,
    }
    if r != direct_rank:
        raise InvariantViolation(f"series rank {r} differs from q1|ker h1 rank {direct_rank}")
    if p12.homogeneous_part(1):
        raise InvariantViolation("eliminated p12 series has a linear term")
    if r == 3:
        return SingularityVerdict("A1", witness)
    if r == 2 and len(ker) == 1:
        along = cubic.evaluate(ker[0])
        witness["cubic_along_kernel"] = along
        if along:
            return SingularityVerdict("A2", witness)
    raise InvariantViolation(f"unexpected transversal type: rank {r}, witness {witness}")


# ---------------------------------------------------------------------------
# blowup chart a5 != 0


def _blow(v: str, ring):
    """Image of chart variable ``v`` under ``p1i = a_i * p15``."""
    if v in ("p12", "p13", "p14"):
        return Poly.var("a" + v[2], ring) * Poly.var("p15", ring)
    return Poly.var(v, ring)


def blowup_pullback(eqs: dict[str, Poly]) -> dict[str, Poly]:
    """Substitute ``p1i = a_i p15`` and divide psi30 by p15^2, psi21 by p15."""
    imgs = [_blow(v, BLOWUP_VARS) for v in CHART_VARS]
    p15 = Poly.var("p15", BLOWUP_VARS)
    out = {}
    for name in CHART_ORDER:
        g = eqs[name].substitute(imgs, BLOWUP_VARS)
        if name == "psi30":
            g = g.exact_div(p15 * p15)
        elif name == "psi21":
            g = g.exact_div(p15)
        out[name] = g
    return out


def _at_atilde(f: Poly, ring=BLOWUP_VARS) -> Poly:
    """Evaluate a form in x2..x5 at ``(a2, a3, a4, 1)``."""
    z = Poly(ring)
    return f.substitute([z, z] + [Poly.var(a, ring) for a in ("a2", "a3", "a4")] + [Poly.const(1, ring)],
                        ring)


def _at(f: Poly, vec_vars, ring=BLOWUP_VARS) -> Poly:
    z = Poly(ring)
    return f.substitute([z, z] + [Poly.var(v, ring) for v in vec_vars], ring)


def blowup_chart_equations(frame) -> dict[str, Poly]:
    """The four blown-up equations in (p0, a2, a3, a4, p15), written from the pieces."""
    d = frame.decomposition()
    ring = BLOWUP_VARS
    k1 = d.k1_full
    p15 = Poly.var("p15", ring)
    ring_ext = ring + ("_s", "_t")
    s, t = Poly.var("_s", ring_ext), Poly.var("_t", ring_ext)
    atil = [Poly.var(a, ring_ext) for a in ("a2", "a3", "a4")] + [Poly.const(1, ring_ext)]
    p0 = [Poly.var(v, ring_ext) for v in P0]
    z = Poly(ring_ext)

    def piece(f, du, dv):
        g = f.substitute([z, z] + [a * s + b * t for a, b in zip(atil, p0)], ring_ext)
        return Poly(ring, {e[:-2]: c for e, c in g.terms.items() if e[-2] == du and e[-1] == dv})

    def bil(f):
        return piece(f, 1, 1) * Fraction(1, 2)

    h1a, q1a = _at_atilde(d.h1), _at_atilde(d.q1)
    return {
        "psi30": q1a - _at_atilde(k1) * p15,
        "psi03": _at(d.h2, P0) + _at(d.q2, P0) + _at(k1, P0),
        "psi21": -h1a - bil(d.q1) * 2 + _at_atilde(d.q2) * p15 + piece(k1, 2, 1) * p15,
        "psi12": (_at(d.h1, P0) - _at_atilde(d.h2) * p15 + _at(d.q1, P0)
                  - bil(d.q2) * 2 * p15 - piece(k1, 1, 2) * p15),
    }


def exceptional_fibre(frame) -> tuple[Poly, Poly]:
    """Blown-up equations at p0 = 0, p15 = 0, homogenised in (a2:a3:a4:a5)."""
    eqs = blowup_chart_equations(frame)
    ring = BLOWUP_VARS
    z = Poly(ring)
    sl = [z if v in P0 or v == "p15" else Poly.var(v, ring) for v in ring]
    out = []
    for name in ("psi30", "psi21"):
        g = eqs[name].substitute(sl, ring)
        out.append(_homogenise(g))
    for name in ("psi03", "psi12"):
        if not eqs[name].substitute(sl, ring).is_zero():
            raise InvariantViolation(f"{name} does not vanish on the exceptional fibre")
    return out[0], out[1]


def _homogenise(g: Poly) -> Poly:
    """Affine poly in a2..a4 (inside BLOWUP_VARS) to a form in a2..a5."""
    idx = [BLOWUP_VARS.index(a) for a in ("a2", "a3", "a4")]
    deg = max((sum(e[i] for i in idx) for e in g.terms), default=0)
    terms = {}
    for e, c in g.terms.items():
        m = tuple(e[i] for i in idx)
        terms[m + (deg - sum(m),)] = c
    return Poly(A_VARS, terms)


def fibre_pair(frame) -> tuple[Poly, Poly]:
    """``(h1, q1)`` as forms in the a-coordinates (a2:a3:a4:a5)."""
    d = frame.decomposition()
    z = Poly(A_VARS)
    img = [z, z] + Poly.gens(A_VARS)
    return d.h1.substitute(img, A_VARS), d.q1.substitute(img, A_VARS)


def same_up_to_unit(f: Poly, g: Poly) -> bool:
    if f.is_zero() or g.is_zero():
        return f.is_zero() and g.is_zero()
    e = next(iter(f.terms))
    if g.coefficient(e) == 0:
        return False
    u = g.coefficient(e) / f.coefficient(e)
    return f * u == g


def chart_point_of_line(frame, line) -> tuple | None:
    """Chart coordinates (p0, p1) of a line given in old coordinates."""
    from .lines import PluckerChart, ProjectiveLine

    a, b = (frame.to_frame(r) for r in line.span)
    ch = PluckerChart.of_line(ProjectiveLine(a, b))
    return None if ch is None else tuple(ch.values())


__all__ = [
    "AdaptedFrame", "AdaptedModel", "SingularityVerdict", "InvariantViolation", "adapt_frame",
    "jacobian_at_center", "expected_jacobian_pattern", "classify_transversal_type",
    "blowup_chart_equations", "blowup_pullback", "exceptional_fibre", "fibre_pair",
    "same_up_to_unit", "chart_point_of_line", "local_equations", "chart_equations_direct",
    "BLOWUP_VARS", "A_VARS",
]

"""The order-3 automorphism x5 -> zeta*x5 of a cuspidal cyclic cubic fourfold
and the actions it induces on Sigma, lines, length-two schemes and charts.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .fanomaps import PlaneInY, fibre_points, phi, phi_inverse
from .fields import ModP, Zeta3Element, inverse, is_rational, normalize
from .lines import (CHART_ORDER, Nonreduced, ProjectiveLine, Reduced, canonical_point,
                    tangent_space)
from .localmodel import BLOWUP_VARS, adapt_frame, blowup_chart_equations, fibre_pair, local_equations
from .poly import Poly

LEVELS = ("ambient_P5", "sigma_surface", "grassmannian", "hilb2", "plucker_chart",
          "blowup_chart", "a_space")
ZETA = Zeta3Element.zeta()


class FieldLacksZeta(ValueError):
    pass


def _check_zeta(zeta):
    if isinstance(zeta, (Zeta3Element, ModP)):
        if zeta ** 3 == 1 and zeta != 1:
            return zeta
    raise FieldLacksZeta(f"{zeta!r} is not a primitive cube root of unity")


@dataclass(frozen=True)
class CyclicAction:
    zeta: object = ZETA
    level: str = "ambient_P5"

    def __post_init__(self):
        _check_zeta(self.zeta)
        if self.level not in LEVELS:
            raise ValueError(f"unknown level {self.level!r}")

    def __call__(self, obj):
        return act(self.level, obj, self.zeta)


def _scale(v, idx, factor):
    return tuple(normalize(c * factor) if i in idx else c for i, c in enumerate(v))


def act(level: str, obj, zeta=ZETA):
    """Apply the generator of the cyclic group at the given level."""
    _check_zeta(zeta)
    if level in ("ambient_P5", "sigma_surface"):
        return _scale(obj, {5}, zeta)
    if level == "grassmannian":
        a, b = obj.span
        return ProjectiveLine(act("ambient_P5", a, zeta), act("ambient_P5", b, zeta))
    if level == "hilb2":
        if isinstance(obj, Reduced):
            return Reduced(*(act("ambient_P5", p, zeta) for p in obj.points))
        return Nonreduced(act("ambient_P5", obj.point, zeta), act("ambient_P5", obj.direction, zeta))
    if level == "plucker_chart":
        # (p02, p03, p04, p05, p12, p13, p14, p15)
        return _scale(obj, {3, 7}, zeta)
    if level == "blowup_chart":
        # (p02, p03, p04, p05, a2, a3, a4, p15); a_i = a_i/a5 picks up zeta^-1
        zi = inverse(zeta)
        v = _scale(obj, {3, 7}, zeta)
        return _scale(v, {4, 5, 6}, zi)
    if level == "a_space":
        return _scale(obj, {3}, zeta)
    raise ValueError(f"unknown level {level!r}")


def same(level, x, y) -> bool:
    if level in ("ambient_P5", "sigma_surface", "a_space"):
        return canonical_point(x) == canonical_point(y)
    if level in ("plucker_chart", "blowup_chart"):
        return tuple(normalize(c) for c in x) == tuple(normalize(c) for c in y)
    return x == y


def order_is_three(level, obj, zeta=ZETA) -> bool:
    once = act(level, obj, zeta)
    thrice = act(level, act(level, once, zeta), zeta)
    return same(level, thrice, obj)


# ---------------------------------------------------------------------------
# equivariance of the residual-line map


def equivariance_samples(Y, n: int, seed: int = 0) -> list:
    """Length-two schemes over Q(zeta3): images of rational ones under powers of the action."""
    rng = random.Random(seed)
    pts = list(Y.points)
    out = []
    while len(out) < n:
        i, j = rng.sample(range(len(pts)), 2)
        e1, e2 = rng.randrange(3), rng.randrange(3)
        if rng.random() < 0.5:
            a, b = pts[i], pts[j]
            for _ in range(e1):
                a = act("ambient_P5", a)
            for _ in range(e2):
                b = act("ambient_P5", b)
            try:
                out.append(Reduced(a, b))
            except ValueError:
                continue
        else:
            x = pts[i]
            basis = tangent_space(Y, x)
            coeffs = [rng.randint(-3, 3) for _ in basis]
            v = [normalize(sum((c * bv[k] for c, bv in zip(coeffs, basis)), Fraction(0)))
                 for k in range(6)]
            if linalg.rank([list(x), v]) < 2:
                continue
            xi = Nonreduced(x, v)
            for _ in range(e1):
                xi = act("hilb2", xi)
            out.append(xi)
    return out


@dataclass
class EquivarianceReport:
    results: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r["pass"] for r in self.results)


def check_equivariance_phi(Y, samples, zeta=ZETA) -> EquivarianceReport:
    rep = EquivarianceReport()
    for xi in samples:
        lhs = phi(Y, act("hilb2", xi, zeta))
        rhs = phi(Y, xi)
        if isinstance(rhs, PlaneInY) or isinstance(lhs, PlaneInY):
            ok = isinstance(rhs, PlaneInY) and isinstance(lhs, PlaneInY)
        else:
            ok = lhs == act("grassmannian", rhs, zeta)
        rep.results.append({"xi": repr(xi), "pass": ok})
    return rep


# ---------------------------------------------------------------------------
# fixed loci


VERTEX = tuple(Fraction(int(i == 5)) for i in range(6))


def is_fixed(point, zeta=ZETA) -> bool:
    return same("ambient_P5", act("ambient_P5", point, zeta), point)


def fixed_locus_check(Y, samples=None, ambient_samples=(), zeta=ZETA) -> dict:
    """Pointwise checks of the fixed loci on Sigma and in P^5."""
    samples = list(samples if samples is not None else Y.points)
    sigma = []
    for s in samples:
        fixed = is_fixed(s, zeta)
        entry = {"point": s, "fixed": fixed, "x5_zero": not s[5]}
        if fixed:
            entry["on_curve"] = not Y.q(list(s)) and not Y.g(list(s)) and not s[5]
        else:
            orbit = [s, act("sigma_surface", s, zeta), act("sigma_surface", act("sigma_surface", s, zeta), zeta)]
            entry["orbit_size"] = len({canonical_point(p) for p in orbit})
            entry["orbit_on_sigma"] = all(Y.on_sigma(p) for p in orbit)
        entry["pass"] = (fixed == entry["x5_zero"]) and (entry.get("on_curve", True)) and \
            entry.get("orbit_size", 3) == 3 and entry.get("orbit_on_sigma", True)
        sigma.append(entry)
    ambient = []
    for x in ambient_samples:
        fixed = is_fixed(x, zeta)
        expected = (not x[5]) or not any(x[:5])
        ambient.append({"point": x, "fixed": fixed, "pass": fixed == expected})
    vertex = {"fixed": is_fixed(VERTEX, zeta), "on_sigma": Y.on_sigma(VERTEX),
              "node_fixed": is_fixed(Y.node, zeta)}
    vertex["pass"] = vertex["fixed"] and not vertex["on_sigma"] and vertex["node_fixed"]
    ok = all(e["pass"] for e in sigma + ambient) and vertex["pass"]
    return {"sigma": sigma, "ambient": ambient, "vertex": vertex, "pass": ok}


def fixed_lines_check(Y, zeta=ZETA) -> dict:
    """Lines coming from pairs of points on {x5 = 0} are fixed, and map back to such pairs."""
    c4 = [p for p in Y.points if not p[5]]
    rows = []
    for i in range(len(c4)):
        for j in range(i + 1, len(c4)):
            xi = Reduced(c4[i], c4[j])
            line = phi(Y, xi)
            if isinstance(line, PlaneInY) or line.contains(Y.node):
                continue
            fixed = act("grassmannian", line, zeta) == line
            back = phi_inverse(Y, line)
            support = back.points if isinstance(back, Reduced) else (back.point,)
            rows.append({"pass": fixed and all(not p[5] for p in support)})
    return {"pairs": len(rows), "pass": all(r["pass"] for r in rows)}


# ---------------------------------------------------------------------------
# chart and blowup actions


def _is_x5_compatible(frame) -> bool:
    T = frame.transform
    return all(not T[5][j] for j in range(5)) and all(not T[i][5] for i in range(5)) and bool(T[5][5])


def _act_poly(f: Poly, scales: dict) -> Poly:
    ring = f.variables
    imgs = [Poly.var(v, ring) * scales[v] if v in scales else Poly.var(v, ring) for v in ring]
    return f.substitute(imgs, ring)


def _unit_multiple(f: Poly, g: Poly):
    if f.is_zero() or g.is_zero():
        return 1 if f.is_zero() and g.is_zero() else None
    e = next(iter(g.terms))
    if not f.coefficient(e):
        return None
    u = normalize(f.coefficient(e) / g.coefficient(e))
    return u if f == g * u else None


def chart_equivariance_check(Y, s, zeta=ZETA) -> dict:
    """Chart equations at a point of {x5 = 0} are invariant under p_j5 -> zeta p_j5."""
    frame = adapt_frame(Y, s)
    if not _is_x5_compatible(frame):
        raise ValueError("frame does not commute with the x5-scaling")
    eqs = local_equations(frame)
    scales = {"p05": zeta, "p15": zeta}
    units = {n: _unit_multiple(_act_poly(eqs[n], scales), eqs[n]) for n in CHART_ORDER}
    # F itself is invariant
    F_inv = _act_poly(Y.F, {"x5": zeta}) == Y.F
    return {"units": units, "F_invariant": F_inv,
            "pass": F_inv and all(u is not None for u in units.values())}


def blowup_equivariance_check(Y, s, zeta=ZETA, fibre_samples: int = 6) -> dict:
    """The blown-up chart equations are permuted up to units by the lifted action."""
    if s[5]:
        raise ValueError("base point must lie on {x5 = 0}")
    frame = adapt_frame(Y, s)
    if not _is_x5_compatible(frame):
        raise ValueError("frame is not compatible with the cyclic action")
    eqs = blowup_chart_equations(frame)
    zi = inverse(zeta)
    scales = {"p05": zeta, "p15": zeta, "a2": zi, "a3": zi, "a4": zi}
    images = {n: _act_poly(eqs[n], scales) for n in CHART_ORDER}
    matches = {}
    for n, img in images.items():
        hit = None
        for m in CHART_ORDER:
            u = _unit_multiple(img, eqs[m])
            if u is not None:
                hit = (m, str(u))
                break
        matches[n] = hit
    # blowup relations p1i = a_i * p15 are preserved
    ring = BLOWUP_VARS
    rel_ok = all(_act_poly(Poly.var(a, ring) * Poly.var("p15", ring), scales)
                 == Poly.var(a, ring) * Poly.var("p15", ring) for a in ("a2", "a3", "a4"))
    # fixed points of diag(1, 1, 1, zeta) on the a-space: the two eigenspaces
    M = [[Fraction(int(i == j)) if i < 3 else (zeta if j == 3 else Fraction(0)) for j in range(4)]
         for i in range(4)]
    eig1 = linalg.kernel([[normalize(M[i][j] - (1 if i == j else 0)) for j in range(4)] for i in range(4)], 4)
    eigz = linalg.kernel([[normalize(M[i][j] - (zeta if i == j else 0)) for j in range(4)] for i in range(4)], 4)
    eigen_ok = (len(eig1) == 3 and all(not v[3] for v in eig1)
                and len(eigz) == 1 and canonical_point(eigz[0]) == (0, 0, 0, 1))
    # the fibre {h1 = q1 = 0} is stable, and its fixed points are those with a5 = 0 or a = e5
    h1, q1 = fibre_pair(frame)
    stable = all(_unit_multiple(_act_poly(f, {"a5": zeta}), f) is not None for f in (h1, q1))
    # points over quadratic fields do not mix with zeta; keep the rational ones
    pts = [a for a in fibre_points(frame, fibre_samples, seed=0) if all(is_rational(c) for c in a)]
    pts.append(tuple(Fraction(int(i == 3)) for i in range(4)))
    fixed_ok = True
    for a in pts:
        fixed = same("a_space", act("a_space", a, zeta), a)
        expected = (not a[3]) or not any(a[:3])
        fixed_ok &= fixed == expected
    ok = all(m is not None for m in matches.values()) and rel_ok and eigen_ok and stable and fixed_ok
    return {"matches": matches, "relations": rel_ok, "eigenspaces": eigen_ok,
            "fibre_stable": stable, "fibre_fixed_points": fixed_ok, "pass": ok}

"""Nodal and cuspidal cyclic cubic fourfolds ``F = x0*q + k``, their surface
``Sigma = {x0 = q = k = 0}``, validation, and the fixture generator.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from . import ffield, linalg
from .fields import QuadElement, from_str, normalize, to_str
from .lines import NODE, ProjectiveLine, restrict_to_line
from .poly import VARS, Poly, monomials, quadratic_rank

KINDS = ("nodal", "cuspidal_cyclic")
VERTEX = tuple(Fraction(int(i == 5)) for i in range(6))
PROBE_PRIMES = (1009, 1013, 1019, 1021, 1031)


class FixtureError(ValueError):
    """Malformed fixture data; ``field`` names the offending entry."""

    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


class FixtureGenerationError(RuntimeError):
    pass


def _embed_h0_monomials(nvars_used: int, degree: int) -> list[tuple]:
    """Exponents over x0..x5 for monomials in x1..x_{nvars_used}."""
    out = []
    for e in monomials(nvars_used, degree):
        out.append((0,) + e + (0,) * (5 - nvars_used))
    return out


@dataclass
class SingularCubicFourfold:
    kind: str
    q: Poly
    k: Poly
    seed: int = 0
    name: str = ""
    points: list = field(default_factory=list)
    conjugate_pairs: list = field(default_factory=list)
    lines: list = field(default_factory=list)
    trident_pairs: list = field(default_factory=list)
    recipe: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise FixtureError("kind", f"expected one of {KINDS}, got {self.kind!r}")
        self.q = self.q.change_ring(VARS)
        self.k = self.k.change_ring(VARS)

    @property
    def F(self) -> Poly:
        return Poly.var("x0", VARS) * self.q + self.k

    @property
    def node(self) -> tuple:
        return NODE

    @property
    def cusp_coefficient(self):
        return self.k.coefficient((0, 0, 0, 0, 0, 3))

    @property
    def g(self) -> Poly:
        """Cubic part without the x5^3 term (cuspidal kind)."""
        c = self.cusp_coefficient
        return self.k - Poly(VARS, {(0, 0, 0, 0, 0, 3): c})

    @property
    def cubic_part(self) -> Poly:
        return self.g if self.kind == "cuspidal_cyclic" else self.k

    def on_sigma(self, s) -> bool:
        return not s[0] and not self.q(list(s)) and not self.k(list(s))

    def jacobian_rank(self, s) -> int:
        gq = self.q.gradient_at(list(s))[1:]
        gk = self.k.gradient_at(list(s))[1:]
        return linalg.rank([gq, gk])

    def sigma_points(self, include_conjugates: bool = True) -> list:
        pts = [tuple(p) for p in self.points]
        if include_conjugates:
            for pair in self.conjugate_pairs:
                pts.extend(conjugate_pair_points(pair))
        return pts

    # serialisation ----------------------------------------------------------
    def to_json(self) -> dict:
        def vec(v):
            return [to_str(c) for c in v]

        return {
            "name": self.name,
            "kind": self.kind,
            "seed": self.seed,
            "q": self.q.to_json(),
            "k": self.k.to_json(),
            "points": [vec(p) for p in self.points],
            "conjugate_pairs": [{"d": c["d"], "p": vec(c["p"]), "r": vec(c["r"])}
                                for c in self.conjugate_pairs],
            "lines": [[vec(a), vec(b)] for a, b in self.lines],
            "trident_pairs": [list(t) for t in self.trident_pairs],
            "recipe": self.recipe,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, data) -> SingularCubicFourfold:
        if not isinstance(data, dict):
            raise FixtureError("<root>", "fixture must be a JSON object")

        def need(key):
            if key not in data:
                raise FixtureError(key, "missing")
            return data[key]

        def form(key):
            try:
                return Poly.from_json(need(key), VARS)
            except FixtureError:
                raise
            except (TypeError, ValueError, KeyError) as exc:
                raise FixtureError(key, f"bad sparse form ({exc})") from exc

        def vec(v, key):
            try:
                out = [from_str(str(c)) for c in v]
            except (TypeError, ValueError) as exc:
                raise FixtureError(key, f"bad coordinate ({exc})") from exc
            if len(out) != 6:
                raise FixtureError(key, "points need 6 coordinates")
            return tuple(out)

        kind = need("kind")
        if kind not in KINDS:
            raise FixtureError("kind", f"expected one of {KINDS}, got {kind!r}")
        seed = data.get("seed", 0)
        if not isinstance(seed, int):
            raise FixtureError("seed", "must be an integer")
        try:
            pairs = [{"d": int(c["d"]), "p": vec(c["p"], "conjugate_pairs"),
                      "r": vec(c["r"], "conjugate_pairs")}
                     for c in data.get("conjugate_pairs", [])]
            lines = [(vec(a, "lines"), vec(b, "lines")) for a, b in data.get("lines", [])]
            tridents = [tuple(int(i) for i in t) for t in data.get("trident_pairs", [])]
        except FixtureError:
            raise
        except (TypeError, ValueError, KeyError) as exc:
            raise FixtureError("conjugate_pairs/lines/trident_pairs", str(exc)) from exc
        return cls(kind=kind, q=form("q"), k=form("k"), seed=seed, name=data.get("name", ""),
                   points=[vec(p, "points") for p in data.get("points", [])],
                   conjugate_pairs=pairs, lines=lines, trident_pairs=tridents,
                   recipe=data.get("recipe", {}))


def load(path) -> SingularCubicFourfold:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FixtureError("<json>", f"not valid JSON ({exc.msg} at line {exc.lineno})") from exc
    return SingularCubicFourfold.from_json(data)


def conjugate_pair_points(pair) -> list[tuple]:
    d = pair["d"]
    return [tuple(normalize(QuadElement(a, s * b, d)) for a, b in zip(pair["p"], pair["r"]))
            for s in (1, -1)]


# ---------------------------------------------------------------------------
# basic operations


def sigma_membership(Y: SingularCubicFourfold, s) -> bool:
    if len(s) != 6:
        raise ValueError("points of P^5 have 6 coordinates")
    if s[0]:
        raise ValueError("point is not in the hyperplane x0 = 0")
    return Y.on_sigma(s)


def line_through_node(Y: SingularCubicFourfold, s) -> ProjectiveLine:
    if not sigma_membership(Y, s):
        raise ValueError("point is not on Sigma")
    return ProjectiveLine(NODE, s)


def contains_plane_candidate(Y: SingularCubicFourfold, line: ProjectiveLine) -> bool:
    """True iff ``line`` (inside x0 = 0) lies on Sigma, i.e. span(node, line) lies in Y."""
    if any(row[0] for row in line.span):
        raise ValueError("line is not contained in x0 = 0")
    return restrict_to_line(Y.q, line).is_zero() and restrict_to_line(Y.k, line).is_zero()


# ---------------------------------------------------------------------------
# validation


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class ValidationReport:
    checks: list

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def __getitem__(self, name) -> Check:
        return next(c for c in self.checks if c.name == name)


def _shape_problems(Y: SingularCubicFourfold) -> list[str]:
    out = []
    if not Y.q.is_homogeneous() or Y.q.homogeneous_degree() != 2:
        out.append("q is not a quadratic form")
    if not Y.k.is_homogeneous() or Y.k.homogeneous_degree() != 3:
        out.append("k is not a cubic form")
    if Y.q.involves("x0") or Y.k.involves("x0"):
        out.append("q or k involves x0")
    if Y.kind == "cuspidal_cyclic":
        if Y.q.involves("x5"):
            out.append("q involves x5")
        if Y.g.involves("x5"):
            out.append("g involves x5")
        if not Y.cusp_coefficient:
            out.append("no x5^3 term")
    return out


def validate(Y: SingularCubicFourfold, samples=None, probes: int = 1000, primes=PROBE_PRIMES,
             seed: int = 0) -> ValidationReport:
    checks = []
    problems = _shape_problems(Y)
    checks.append(Check("shape", not problems, "; ".join(problems)))

    qvars = Y.q.change_ring(VARS)
    r = quadratic_rank(qvars)
    want = 5 if Y.kind == "nodal" else 4
    checks.append(Check("q_rank", r == want, f"rank {r}, expected {want}"
                        + ("" if r == want else ": q degenerate")))
    if Y.kind == "cuspidal_cyclic":
        kv = Y.k(list(VERTEX))
        checks.append(Check("vertex_off_K", bool(kv), f"k(vertex) = {to_str(kv)}"))

    F = Y.F
    grad = F.gradient_at(list(NODE))
    checks.append(Check("singular_point", not F(list(NODE)) and not any(grad),
                        "F and grad F vanish at (1:0:0:0:0:0)"))

    samples = list(samples) if samples is not None else Y.sigma_points()
    off = [i for i, s in enumerate(samples) if not Y.on_sigma(s)]
    checks.append(Check("samples_on_sigma", not off, f"{len(samples)} samples; off: {off}"))
    bad = [i for i, s in enumerate(samples) if i not in off and Y.jacobian_rank(s) != 2]
    checks.append(Check("sigma_transversal_at_samples", not bad,
                        f"Jacobian of (q, k) has rank 2 at {len(samples) - len(bad) - len(off)} samples"))
    sing = [i for i, s in enumerate(samples) if not any(F.gradient_at(list(s)))]
    checks.append(Check("no_other_singular_sample", not sing,
                        f"singular samples: {sing}"))

    if probes:
        res = probe_sigma_smoothness(Y, probes, primes=primes, seed=seed)
        checks.append(Check("finite_field_probe", res["singular"] == 0 and res["probes"] >= probes,
                            f"{res['probes']} probe points over primes {res['primes']}, "
                            f"{res['singular']} singular"))
    return ValidationReport(checks)


# ---------------------------------------------------------------------------
# finite-field probes


def _reduced_forms(Y: SingularCubicFourfold, p: int):
    q = ffield.reduce_terms(Y.q.terms, p)
    k = ffield.reduce_terms(Y.k.terms, p)
    return q, k


def _bilinear_mod(q, u, v, p):
    s = [(a + b) % p for a, b in zip(u, v)]
    return (ffield.eval_terms(q, s, p) - ffield.eval_terms(q, u, p) - ffield.eval_terms(q, v, p)) \
        * pow(2, -1, p) % p


def _rank2_mod(rows, p) -> bool:
    a, b = rows
    return any((a[i] * b[j] - a[j] * b[i]) % p for i in range(len(a)) for j in range(i + 1, len(a)))


def _point_on_quadric_mod(q, p, rng):
    from sympy.ntheory import sqrt_mod

    while True:
        a = [0] + [rng.randrange(p) for _ in range(5)]
        b = [0] + [rng.randrange(p) for _ in range(5)]
        c0, c1, c2 = ffield.eval_terms(q, a, p), 2 * _bilinear_mod(q, a, b, p) % p, ffield.eval_terms(q, b, p)
        if not c2:
            continue
        disc = (c1 * c1 - 4 * c0 * c2) % p
        r = sqrt_mod(disc, p)
        r = None if r is None else int(r)
        if r is None:
            continue
        t = (-c1 + r) * pow(2 * c2, -1, p) % p
        s = [(x + t * y) % p for x, y in zip(a, b)]
        if any(s):
            return s


def probe_sigma_smoothness(Y: SingularCubicFourfold, probes: int = 1000, primes=PROBE_PRIMES,
                           seed: int = 0) -> dict:
    """Enumerate points of Sigma over F_p on random conics of Q and test the Jacobian rank.

    Each probe plane is spanned by a fixed F_p-point ``s`` of Q and two random
    vectors; its conic on Q is parametrised by projection from ``s``, and the
    cubic restricted to the conic gives a degree-6 polynomial whose F_p-roots
    are points of Sigma.  Returns counts of probe points and singular ones.
    """
    rng = random.Random(seed)
    coeffs = list(Y.q.terms.values()) + list(Y.k.terms.values())
    usable = []
    for p in primes:
        if not ffield.good_prime(coeffs, p):
            continue
        usable.append(p)
    if len(usable) < 3:
        raise ValueError("fewer than three primes of good reduction available")
    per_prime = -(-probes // len(usable))
    found = singular = 0
    bad_points = []
    for p in usable:
        q, k = _reduced_forms(Y, p)
        dq = [ffield.derivative_terms(q, i, p) for i in range(1, 6)]
        dk = [ffield.derivative_terms(k, i, p) for i in range(1, 6)]
        s = _point_on_quadric_mod(q, p, rng)
        got = 0
        attempts = 0
        while got < per_prime and attempts < 50 * per_prime:
            attempts += 1
            w1 = [0] + [rng.randrange(p) for _ in range(5)]
            w2 = [0] + [rng.randrange(p) for _ in range(5)]

            def conic_point(t):
                w = [(a + t * b) % p for a, b in zip(w1, w2)]
                qw = ffield.eval_terms(q, w, p)
                bsw = _bilinear_mod(q, s, w, p)
                return [(qw * si - 2 * bsw * wi) % p for si, wi in zip(s, w)]

            ts = list(range(7))
            vals = [ffield.eval_terms(k, conic_point(t), p) for t in ts]
            poly = ffield.interpolate(ts, vals, p)
            if not poly:
                continue
            for t in ffield.roots(poly, p):
                y = conic_point(t)
                if not any(y) or not _rank2_mod([s[1:], y[1:]], p):
                    continue
                got += 1
                gq = [ffield.eval_terms(d, y, p) for d in dq]
                gk = [ffield.eval_terms(d, y, p) for d in dk]
                if not _rank2_mod([gq, gk], p):
                    singular += 1
                    bad_points.append((p, y))
        found += got
    return {"probes": found, "singular": singular, "primes": usable, "bad_points": bad_points}


def find_lines_mod_p(Y: SingularCubicFourfold, p: int, limit: int = 1) -> list:
    """Lines on Sigma over F_p found by enumerating Sigma(F_p); stops after ``limit``."""
    q, k = _reduced_forms(Y, p)
    pts = []
    for x in _projective_points(5, p):
        y = [0] + list(x)
        if not ffield.eval_terms(q, y, p) and not ffield.eval_terms(k, y, p):
            pts.append(y)
    found = []
    for a, b in combinations(pts, 2):
        ok = True
        for lam in (1, 2, 3):
            z = [(u + lam * v) % p for u, v in zip(a, b)]
            if ffield.eval_terms(q, z, p) or ffield.eval_terms(k, z, p):
                ok = False
                break
        if ok:
            found.append((a, b))
            if len(found) >= limit:
                break
    return found


def _projective_points(n: int, p: int):
    for lead in range(n):
        tail = n - lead - 1
        for idx in range(p ** tail):
            x = [0] * n
            x[lead] = 1
            for j in range(tail):
                x[lead + 1 + j] = idx % p
                idx //= p
            yield x


def no_line_certificate(Y: SingularCubicFourfold, primes=(7, 11, 13)) -> dict:
    """Look for a prime of good reduction over which Sigma has no line.

    A rational line on Sigma would reduce to a line over every such prime, so
    one line-free prime certifies that Sigma has no rational line.
    """
    coeffs = list(Y.q.terms.values()) + list(Y.k.terms.values())
    tried = []
    for p in primes:
        if not ffield.good_prime(coeffs, p):
            continue
        tried.append(p)
        if not find_lines_mod_p(Y, p):
            return {"certified": True, "prime": p, "tried": tried}
    return {"certified": False, "prime": None, "tried": tried}


# ---------------------------------------------------------------------------
# fixture generator


def _mon_polys(exps):
    return [Poly(VARS, {e: Fraction(1)}) for e in exps]


def _split_rational(values) -> list[list]:
    """Split field values into rational components (one list per component)."""
    parts = [[], []]
    for v in values:
        v = normalize(v)
        if isinstance(v, QuadElement):
            parts[0].append(v.a)
            parts[1].append(v.b)
        else:
            parts[0].append(Fraction(v))
            parts[1].append(Fraction(0))
    return parts


def _functional_rows(conditions, mons, fixed: Poly | None):
    """Rows and right-hand sides of the linear conditions on the coefficient vector."""
    rows, rhs = [], []
    zero = Poly(VARS)
    fixed = fixed if fixed is not None else zero
    for cond in conditions:
        values_per_mon = [cond(m) for m in mons]
        fixed_vals = cond(fixed)
        ncomp = len(fixed_vals)
        for j in range(ncomp):
            col = [vals[j] for vals in values_per_mon]
            re, im = _split_rational(col)
            fre, fim = _split_rational([fixed_vals[j]])
            rows.append(re)
            rhs.append(-fre[0])
            if any(im) or fim[0]:
                rows.append(im)
                rhs.append(-fim[0])
    return rows, rhs


def _point_condition(P):
    return lambda f: [f(list(P))]


def _tangent_condition(P, v):
    return lambda f: [linalg.dot(f.gradient_at(list(P)), v)]


def _line_coeffs(A, B, deg):
    ring = ("s", "t")
    s, t = Poly.gens(ring)
    imgs = [s * a + t * b for a, b in zip(A, B)]

    def cond(f):
        g = f.substitute(imgs, ring)
        return [g.coefficient((deg - i, i)) for i in range(deg + 1)]

    return cond


def _polar_condition(A, B):
    ring = ("s", "t")
    s, t = Poly.gens(ring)
    imgs = [s * a + t * b for a, b in zip(A, B)]
    return lambda f: [f.substitute(imgs, ring).coefficient((1, 1))]


def _solve_coefficients(rows, rhs, ncoef, rng, spread=3):
    if not rows:
        part = [Fraction(0)] * ncoef
        ker = linalg.identity(ncoef)
    else:
        part = linalg.solve(rows, rhs)
        if part is None:
            raise FixtureGenerationError("prescriptions are inconsistent")
        ker = [linalg.primitive_integer(v) for v in linalg.kernel(rows, ncoef)]
    if not ker:
        raise FixtureGenerationError("prescriptions leave no freedom")
    coeffs = list(part)
    for v in ker:
        r = rng.randint(-spread, spread)
        coeffs = [c + r * x for c, x in zip(coeffs, v)]
    return coeffs


def make_fixture(kind: str, points=(), tangents=(), line=None, want_line_on_sigma: bool = False,
                 seed: int = 0, trident_pairs=(), conjugate_pairs=(), retries: int = 25,
                 probes: int = 300, name: str = "") -> SingularCubicFourfold:
    """Solve for (q, k) through the prescriptions and return a validated fourfold.

    ``points`` are 6-vectors with x0 = 0; ``tangents`` pairs (P, v) forcing
    ``v`` tangent to both Q and K at P; ``line`` a pair of points spanning a
    line to put on Sigma; ``trident_pairs`` index pairs (i, j) of ``points``
    whose span must lie on Q; ``conjugate_pairs`` dicts {d, p, r} meaning the
    points ``p +- sqrt(d) r``.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    if len(points) > 12:
        raise ValueError("at most 12 prescribed points")
    points = [tuple(Fraction(c) for c in P) for P in points]
    if any(P[0] for P in points):
        raise ValueError("prescribed points must lie in x0 = 0")
    if want_line_on_sigma and line is None:
        line = ((0, 0, 1, 0, 1, 0), (0, 0, 0, 1, 0, -1)) if kind == "nodal" else \
            ((0, 0, 1, 0, 1, 1), (0, 0, 0, 1, 0, -1))
    if line is not None:
        line = tuple(tuple(Fraction(c) for c in v) for v in line)
    cpairs = [{"d": int(c["d"]), "p": tuple(Fraction(x) for x in c["p"]),
               "r": tuple(Fraction(x) for x in c["r"])} for c in conjugate_pairs]

    if kind == "nodal":
        q_exps = _embed_h0_monomials(5, 2)
        k_exps = _embed_h0_monomials(5, 3)
        k_fixed = None
    else:
        q_exps = _embed_h0_monomials(4, 2)
        k_exps = _embed_h0_monomials(4, 3)
        k_fixed = Poly(VARS, {(0, 0, 0, 0, 0, 3): Fraction(1)})
    q_mons, k_mons = _mon_polys(q_exps), _mon_polys(k_exps)

    q_conds, k_conds = [], []
    for P in points:
        q_conds.append(_point_condition(P))
        k_conds.append(_point_condition(P))
    for c in cpairs:
        P = conjugate_pair_points(c)[0]
        q_conds.append(_point_condition(P))
        k_conds.append(_point_condition(P))
    for P, v in tangents:
        q_conds.append(_tangent_condition(P, v))
        k_conds.append(_tangent_condition(P, v))
    if line is not None:
        q_conds.append(_line_coeffs(line[0], line[1], 2))
        k_conds.append(_line_coeffs(line[0], line[1], 3))
    for i, j in trident_pairs:
        q_conds.append(_polar_condition(points[i], points[j]))

    q_rows, q_rhs = _functional_rows(q_conds, q_mons, None)
    k_rows, k_rhs = _functional_rows(k_conds, k_mons, k_fixed)
    failures = []
    for attempt in range(retries):
        rng = random.Random(f"{seed}:{attempt}")
        qc = _solve_coefficients(q_rows, q_rhs, len(q_mons), rng)
        kc = _solve_coefficients(k_rows, k_rhs, len(k_mons), rng)
        q = Poly(VARS, dict(zip(q_exps, qc)))
        k = Poly(VARS, dict(zip(k_exps, kc)))
        if k_fixed is not None:
            k = k + k_fixed
        Y = SingularCubicFourfold(kind, q, k, seed=seed, name=name, points=points,
                                  conjugate_pairs=cpairs,
                                  lines=[line] if line is not None else [],
                                  trident_pairs=[tuple(t) for t in trident_pairs],
                                  recipe={"attempt": attempt})
        extra = [tuple(line[0]), tuple(line[1])] if line is not None else []
        rep = validate(Y, Y.sigma_points() + extra, probes=probes, seed=seed)
        if rep.ok:
            return Y
        failures.append(rep.failed())
    raise FixtureGenerationError(f"no valid fixture after {retries} attempts; failed checks: {failures}")

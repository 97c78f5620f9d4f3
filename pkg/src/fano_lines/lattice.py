"""Neron-Severi arithmetic on the Hilbert square of Sigma: pairing, intersection
counts by elimination (with a finite-field cross-check), the class of the
trident divisor, nef rays, and a bounded search for lattice isometries.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from . import ffield, linalg
from .fields import normalize, reduce_mod_p
from .localmodel import A_VARS, adapt_frame, fibre_pair
from .poly import Poly, resultant_eliminate, restrict_to_subspace

H_SQUARE = 6
DELTA_SQUARE = -2
LAMBDA_DELTA = -1  # imported constant: degree of delta on the curve of schemes supported at a point
ORACLE_PRIMES = (1009, 1013, 1019, 1021, 1031)


@dataclass(frozen=True)
class NSClass:
    a: int
    b: int

    def pair(self, other: NSClass) -> int:
        return bbf(self, other)

    def __add__(self, other):
        return NSClass(self.a + other.a, self.b + other.b)

    def __mul__(self, n: int):
        return NSClass(self.a * n, self.b * n)

    __rmul__ = __mul__

    def __str__(self):
        return f"{self.a}h{self.b:+d}delta"


H = NSClass(1, 0)
DELTA = NSClass(0, 1)


def bbf(u: NSClass, v: NSClass) -> int:
    return H_SQUARE * u.a * v.a + DELTA_SQUARE * u.b * v.b


class InconsistentIntersections(ValueError):
    pass


class NonGenericCurve(ArithmeticError):
    """Positive-dimensional intersection: reseed the curve data."""


def solve_divisor_class(gamma_psi, gamma_h, gamma_delta, lambda_psi, lambda_h,
                        lambda_delta=LAMBDA_DELTA, extra=()) -> NSClass:
    """Integral (a, b) with a*(C.h) + b*(C.delta) = C.D for the test curves.

    ``extra`` holds further rows ``(C.D, C.h, C.delta)`` that must agree.
    """
    M = [[Fraction(gamma_h), Fraction(gamma_delta)], [Fraction(lambda_h), Fraction(lambda_delta)]]
    if not linalg.det(M):
        raise InconsistentIntersections("singular system of test curves")
    sol = linalg.solve(M, [Fraction(gamma_psi), Fraction(lambda_psi)])
    if any(x.denominator != 1 for x in sol):
        raise InconsistentIntersections(f"non-integral solution {sol}")
    a, b = (int(x) for x in sol)
    for d, h, dl in extra:
        if a * h + b * dl != d:
            raise InconsistentIntersections(f"row {(d, h, dl)} disagrees with {a}h{b:+d}delta")
    return NSClass(a, b)


def orthogonal_ray(c: NSClass) -> NSClass:
    if c.a == 0 and c.b == 0:
        raise ValueError("zero class")
    a, b = -DELTA_SQUARE * c.b, H_SQUARE * c.a
    g = gcd(a, b)
    a, b = a // g, b // g
    if a < 0 or (a == 0 and b < 0):
        a, b = -a, -b
    return NSClass(a, b)


def nef_rays(contracted=(DELTA, NSClass(1, -2))) -> list[NSClass]:
    return [orthogonal_ray(c) for c in contracted]


# ---------------------------------------------------------------------------
# counting zero-dimensional loci


@dataclass
class Gamma:
    """Schemes {x, a} with a moving on the hyperplane section C of Sigma."""

    x: tuple
    C: tuple  # coefficients on x1..x5


@dataclass
class Lambda:
    """Nonreduced schemes supported at x."""

    x: tuple


@dataclass
class CountResult:
    value: int
    route: str
    univariate_degree: int | None = None
    oracle: list = field(default_factory=list)

    @property
    def oracle_agrees(self) -> bool:
        counts = [o["count"] for o in self.oracle]
        if not counts:
            return True
        agree = sum(c == self.value for c in counts)
        return agree * 2 > len(counts)

    def witness(self) -> dict:
        return {"value": self.value, "route": self.route, "degree": self.univariate_degree,
                "oracle": [{k: v for k, v in o.items()} for o in self.oracle]}


def _subspace(constraints, dim=6):
    """Basis (6-vectors with x0 = 0) of the subspace of H0 cut by linear constraints."""
    rows = [[Fraction(1)] + [Fraction(0)] * (dim - 1)] + [list(c) for c in constraints]
    return linalg.kernel(rows, dim)


def _random_invertible(n, rng):
    while True:
        M = [[Fraction(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)]
        if linalg.det(M):
            return M


def _change(basis, M):
    """New basis vectors ``sum_i M[i][j] basis_i``."""
    n = len(basis)
    return [[normalize(sum((M[i][j] * basis[i][c] for i in range(n)), Fraction(0)))
             for c in range(len(basis[0]))] for j in range(n)]


def count_on_subspace(forms, basis, seed=0, primes=ORACLE_PRIMES, nprimes=3,
                      route="") -> CountResult:
    """Count common zeros with multiplicity of ``forms`` on the projective space of ``basis``.

    Supports one form on a line or two forms on a plane.
    """
    rng = random.Random(seed)
    n = len(basis)
    if (n, len(forms)) not in ((2, 1), (3, 2)):
        raise ValueError(f"unsupported system: {len(forms)} forms on P^{n - 1}")
    names = ("u0", "u1", "u2")[:n]
    for _ in range(20):
        b = _change(basis, _random_invertible(n, rng))
        rf = [restrict_to_subspace(f, b, names) for f in forms]
        if any(f.is_zero() for f in rf):
            raise NonGenericCurve("a form vanishes on the whole subspace")
        last = names[-1]
        lead_ok = all(f.coefficient(tuple(int(v == last) * f.homogeneous_degree() for v in names))
                      for f in rf)
        if not lead_ok:
            continue
        if n == 2:
            R = rf[0]
        else:
            R = resultant_eliminate(rf[0], rf[1], "u2").change_ring(("u0", "u1"))
            if R.is_zero():
                raise NonGenericCurve("resultant vanishes identically: non-generic curve data, reseed")
        bez = R.homogeneous_degree()
        # dehomogenise at u1 = 1; the root at infinity u1 = 0 is excluded by R(1, 0) != 0
        if not R.coefficient((bez, 0)):
            continue
        uni = {e[0]: c for e, c in R.terms.items()}
        deg = max(uni)
        res = CountResult(deg, route or "resultant", deg)
        bezout = 1
        for f in rf:
            bezout *= f.homogeneous_degree()
        res.oracle = _oracle(rf, names, bezout, primes, nprimes)
        return res
    raise NonGenericCurve("no admissible projection found")


def _oracle(rf, names, bound, primes, nprimes):
    out = []
    coeffs = [c for f in rf for c in f.terms.values()]
    for p in primes:
        if len(out) >= nprimes:
            break
        if not ffield.good_prime(coeffs, p):
            continue
        try:
            count, distinct = _count_mod_p(rf, names, bound, p)
        except ArithmeticError:
            continue
        out.append({"prime": p, "count": count, "distinct_rational_roots": distinct})
    if len(out) < 3:
        raise ArithmeticError("fewer than three usable oracle primes")
    return out


def _specialise(f: Poly, y: int, p: int) -> list[int]:
    """Coefficients in the last variable of f(y, 1, u_last) mod p, highest first."""
    deg = f.homogeneous_degree()
    coeffs = [0] * (deg + 1)
    for e, c in f.terms.items():
        k = e[-1]
        val = reduce_mod_p(c, p).v * pow(y, e[0], p) % p
        coeffs[deg - k] = (coeffs[deg - k] + val) % p
    return coeffs


def _count_mod_p(rf, names, bound, p):
    """Evaluate the eliminant at every y in F_p, interpolate and count roots."""
    if len(names) == 2:
        values = [ffield.evaluate(_specialise_binary(rf[0], p), y, p) for y in range(p)]
    else:
        values = []
        for y in range(p):
            f, g = _specialise(rf[0], y, p), _specialise(rf[1], y, p)
            if not f[0] or not g[0]:
                raise ArithmeticError("leading coefficient vanishes mod p")
            values.append(ffield.resultant(f, g, p))
    xs = list(range(bound + 3))
    poly = ffield.interpolate(xs, [values[x] for x in xs], p)
    if any(ffield.evaluate(poly, y, p) != values[y] for y in range(p)):
        raise ArithmeticError("eliminant exceeds the degree bound mod p")
    if not poly:
        raise ArithmeticError("eliminant vanishes mod p")
    return ffield.multiplicity_count(poly, p), len(ffield.roots(poly, p))


def _specialise_binary(f: Poly, p: int) -> list[int]:
    deg = f.homogeneous_degree()
    coeffs = [0] * (deg + 1)
    for e, c in f.terms.items():
        coeffs[deg - e[0]] = (coeffs[deg - e[0]] + reduce_mod_p(c, p).v) % p
    return coeffs


def _h0_vec(C):
    return [Fraction(0)] + [Fraction(c) for c in C]


def count_curve_divisor_intersection(Y, curve, divisor: str, seed: int = 0, route: str = "containment",
                                     primes=ORACLE_PRIMES) -> CountResult:
    """Intersection number of a test curve with h, delta or the trident divisor Psi.

    ``route`` selects how the trident locus is described: ``containment``
    (the line spanned by the scheme lies in Q) or ``lemma`` (vanishing of the
    adapted pieces h1, q1, k1 resp. h1, h2, q1 in a frame at x).
    """
    rng = random.Random(seed)
    x = [Fraction(c) for c in curve.x]
    if not Y.on_sigma(x):
        raise ValueError("curve base point is not on Sigma")
    if isinstance(curve, Gamma):
        Cv = _h0_vec(curve.C)
        if not linalg.dot(Cv, x):
            raise ValueError("the point x lies on the curve C")
        if divisor == "delta":
            # Gamma meets the exceptional divisor only where a = x, impossible off C
            return CountResult(0, "support", None, [])
        if divisor == "h":
            while True:
                H2 = _h0_vec([rng.randint(-4, 4) for _ in range(5)])
                basis = _subspace([Cv, H2])
                if len(basis) == 3:
                    break
            return count_on_subspace([Y.q, Y.k], basis, seed, primes, route="resultant")
        if divisor == "Psi":
            if route == "containment":
                polar = Y.q.gradient_at(x)
                basis = _subspace([Cv, polar])
                return count_on_subspace([Y.q, Y.k], basis, seed, primes, route="containment")
            frame = adapt_frame(Y, x, hyperplane=curve.C)
            d = frame.decomposition()
            h1, q1 = fibre_pair(frame)
            z = Poly(A_VARS)
            k1 = d.k1_full.substitute([z, z] + Poly.gens(A_VARS), A_VARS)
            basis = linalg.kernel([[h1.coefficient(tuple(int(i == j) for i in range(4)))
                                    for j in range(4)]], 4)
            return count_on_subspace([q1, k1], basis, seed, primes, route="lemma")
    elif isinstance(curve, Lambda):
        if divisor == "h":
            while True:
                H2 = _h0_vec([rng.randint(-4, 4) for _ in range(5)])
                if linalg.dot(H2, x):
                    return CountResult(0, "support", None, [])
        if divisor == "delta":
            return CountResult(LAMBDA_DELTA, "imported", None, [])
        if divisor == "Psi":
            if route == "containment":
                T = _subspace([Y.q.gradient_at(x), Y.k.gradient_at(x)])
                # directions: T modulo x, represented by a complement of x inside T
                basis = []
                for v in T:
                    if linalg.rank([x] + basis + [v]) > len(basis) + 1:
                        basis.append(v)
                return count_on_subspace([Y.q], basis, seed, primes, route="containment")
            frame = adapt_frame(Y, x)
            h1, q1 = fibre_pair(frame)
            d = frame.decomposition()
            z = Poly(A_VARS)
            h2 = d.h2.substitute([z, z] + Poly.gens(A_VARS), A_VARS)
            rows = [[f.coefficient(tuple(int(i == j) for i in range(4))) for j in range(4)]
                    for f in (h1, h2)]
            basis = linalg.kernel(rows, 4)
            return count_on_subspace([q1], basis, seed, primes, route="lemma")
    raise ValueError(f"unknown curve/divisor combination {type(curve).__name__}/{divisor}")


def random_gamma(Y, seed: int, points=None) -> Gamma:
    """Seeded test curve: a known point of Sigma and a hyperplane of H0 missing it.

    For cuspidal fourfolds the hyperplane contains the vertex of Q, so the
    adapted frame at x can be taken with f2..f5 inside it.
    """
    rng = random.Random(seed)
    pts = list(points if points is not None else Y.points)
    x = pts[rng.randrange(len(pts))]
    while True:
        C = [rng.randint(-4, 4) for _ in range(5)]
        if Y.kind != "nodal":
            C[4] = 0
        if linalg.dot([0] + C, x):
            return Gamma(tuple(x), tuple(C))


def intersection_table(Y, seed: int = 0) -> dict:
    """All six intersection numbers on one seeded pair of test curves, both routes for Psi."""
    gamma = random_gamma(Y, seed)
    lam = Lambda(gamma.x)
    out = {}
    out["gamma_h"] = count_curve_divisor_intersection(Y, gamma, "h", seed)
    out["gamma_delta"] = count_curve_divisor_intersection(Y, gamma, "delta", seed)
    out["gamma_psi"] = count_curve_divisor_intersection(Y, gamma, "Psi", seed, "containment")
    out["gamma_psi_lemma"] = count_curve_divisor_intersection(Y, gamma, "Psi", seed, "lemma")
    out["lambda_h"] = count_curve_divisor_intersection(Y, lam, "h", seed)
    out["lambda_delta"] = count_curve_divisor_intersection(Y, lam, "delta", seed)
    out["lambda_psi"] = count_curve_divisor_intersection(Y, lam, "Psi", seed, "containment")
    out["lambda_psi_lemma"] = count_curve_divisor_intersection(Y, lam, "Psi", seed, "lemma")
    out["curve"] = {"x": gamma.x, "C": gamma.C}
    return out


# ---------------------------------------------------------------------------
# small integral lattices


@dataclass
class IntegralLattice:
    gram: list

    def __post_init__(self):
        g = [[int(v) for v in row] for row in self.gram]
        if any(g[i][j] != g[j][i] for i in range(len(g)) for j in range(len(g))):
            raise ValueError("Gram matrix is not symmetric")
        self.gram = g

    @property
    def rank(self) -> int:
        return len(self.gram)

    def det(self) -> int:
        return int(linalg.det([[Fraction(v) for v in row] for row in self.gram]))

    def signature(self) -> tuple[int, int]:
        return signature(self.gram)


def direct_sum(*grams) -> list:
    n = sum(len(g) for g in grams)
    out = [[0] * n for _ in range(n)]
    off = 0
    for g in grams:
        for i, row in enumerate(g):
            for j, v in enumerate(row):
                out[off + i][off + j] = v
        off += len(g)
    return out


def U(n: int = 1):
    return [[0, n], [n, 0]]


def A2(scale: int = 1):
    return [[2 * scale, -scale], [-scale, 2 * scale]]


def signature(gram) -> tuple[int, int]:
    """(positive, negative) index by exact congruence diagonalisation."""
    a = [[Fraction(v) for v in row] for row in gram]
    n = len(a)
    pos = neg = 0
    for i in range(n):
        if not a[i][i]:
            j = next((j for j in range(i + 1, n) if a[j][j]), None)
            if j is not None:
                a[i], a[j] = a[j], a[i]
                for row in a:
                    row[i], row[j] = row[j], row[i]
            else:
                j = next((j for j in range(i + 1, n) if a[i][j]), None)
                if j is None:
                    continue
                # replace e_i by e_i + e_j: the new diagonal entry is 2 a_ij != 0
                for c in range(n):
                    a[i][c] += a[j][c]
                for r in range(n):
                    a[r][i] += a[r][j]
        piv = a[i][i]
        if not piv:
            continue
        pos += piv > 0
        neg += piv < 0
        for r in range(i + 1, n):
            f = a[r][i] / piv
            if f:
                for c in range(n):
                    a[r][c] -= f * a[i][c]
                for c in range(n):
                    a[c][r] = a[r][c] if c != r else a[r][r]
        for r in range(i + 1, n):
            a[i][r] = a[r][i] = Fraction(0)
    return pos, neg


@dataclass
class IsometryResult:
    matrix: list | None
    obstruction: str | None
    checks: dict

    @property
    def found(self) -> bool:
        return self.matrix is not None


def lattice_isometric(L1: IntegralLattice, L2: IntegralLattice, bound: int) -> IsometryResult:
    """Search integral M with entries in [-bound, bound] and M^T G1 M = G2."""
    checks = {"rank": (L1.rank, L2.rank), "det": (L1.det(), L2.det()),
              "signature": (L1.signature(), L2.signature())}
    if L1.rank != L2.rank:
        return IsometryResult(None, "ranks differ", checks)
    if L1.signature() != L2.signature():
        return IsometryResult(None, "signatures differ", checks)
    if L1.det() != L2.det():
        return IsometryResult(None, "determinants differ", checks)
    n = L1.rank
    G1, G2 = L1.gram, L2.gram

    def ip(u, v):
        return sum(u[i] * G1[i][j] * v[j] for i in range(n) for j in range(n))

    vecs = list(itertools.product(range(-bound, bound + 1), repeat=n))
    cands = [[v for v in vecs if ip(v, v) == G2[j][j]] for j in range(n)]
    cols: list = []

    def search(j):
        if j == n:
            return True
        for v in cands[j]:
            if all(ip(cols[i], v) == G2[i][j] for i in range(j)):
                cols.append(v)
                if search(j + 1):
                    return True
                cols.pop()
        return False

    if search(0):
        M = [[cols[j][i] for j in range(n)] for i in range(n)]
        d = linalg.det([[Fraction(v) for v in row] for row in M])
        checks["det_M"] = int(d)
        return IsometryResult(M, None, checks)
    return IsometryResult(None, f"no isometry with entries bounded by {bound}", checks)

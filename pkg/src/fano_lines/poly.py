"""Sparse exact multivariate polynomials.

A :class:`Poly` is a map ``exponent tuple -> nonzero coefficient`` over a fixed
ordered tuple of variable names.  Coefficients can be any element type from
:mod:`fano_lines.fields`.  Homogeneous forms are just polys for which
:meth:`Poly.homogeneous_degree` succeeds; no separate class is needed.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import linalg
from .fields import from_str, inverse, is_rational, normalize, to_str


class VariableMismatch(ValueError):
    pass


def _clean(c):
    return normalize(c)


class Poly:
    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple, object] | None = None):
        self.variables = tuple(variables)
        n = len(self.variables)
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != n:
                raise ValueError(f"exponent {e} has wrong length for {self.variables}")
            if c:
                clean[e] = _clean(c)
        self.terms = clean

    # construction -------------------------------------------------------
    @classmethod
    def const(cls, c, variables) -> Poly:
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, name: str, variables) -> Poly:
        variables = tuple(variables)
        e = tuple(int(v == name) for v in variables)
        if sum(e) != 1:
            raise VariableMismatch(f"{name} not in {variables}")
        return cls(variables, {e: Fraction(1)})

    @classmethod
    def gens(cls, variables) -> list[Poly]:
        return [cls.var(v, variables) for v in variables]

    @classmethod
    def linear(cls, coeffs, variables) -> Poly:
        n = len(variables)
        return cls(variables, {tuple(int(i == j) for j in range(n)): c
                               for i, c in enumerate(coeffs)})

    @classmethod
    def from_monomials(cls, variables, degree: int, coeffs) -> Poly:
        mons = monomials(len(variables), degree)
        return cls(variables, dict(zip(mons, coeffs)))

    # basic queries ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def homogeneous_degree(self) -> int:
        """Degree of a homogeneous form; the zero form has no degree and gives -1."""
        degs = {sum(e) for e in self.terms}
        if len(degs) > 1:
            raise ValueError("polynomial is not homogeneous")
        return degs.pop() if degs else -1

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def degree_in(self, var: str) -> int:
        i = self.variables.index(var)
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def coefficient(self, exp) -> object:
        return self.terms.get(tuple(exp), Fraction(0))

    def involves(self, var: str) -> bool:
        i = self.variables.index(var)
        return any(e[i] for e in self.terms)

    # arithmetic ---------------------------------------------------------
    def _check(self, other: Poly):
        if self.variables != other.variables:
            raise VariableMismatch(f"{self.variables} vs {other.variables}")

    def _lift(self, other) -> Poly:
        if isinstance(other, Poly):
            self._check(other)
            return other
        return Poly.const(other, self.variables)

    def __add__(self, other):
        other = self._lift(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t[e] + c if e in t else c
        return Poly(self.variables, t)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            if not other:
                return Poly(self.variables)
            return Poly(self.variables, {e: c * other for e, c in self.terms.items()})
        self._check(other)
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = c1 * c2
                t[e] = t[e] + v if e in t else v
        return Poly(self.variables, t)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = Poly.const(1, self.variables)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> Poly:
        return self * c

    def __truediv__(self, c):
        if isinstance(c, Poly):
            return self.exact_div(c)
        return self * inverse(c)

    def __eq__(self, other):
        if isinstance(other, Poly):
            if self.variables != other.variables:
                return False
            return self.terms == other.terms
        if not other:
            return not self.terms
        return self.terms == {(0,) * self.nvars: _clean(other)}

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    # evaluation and substitution ---------------------------------------
    def __call__(self, *point):
        if len(point) == 1 and isinstance(point[0], (list, tuple)):
            point = tuple(point[0])
        return self.evaluate(point)

    def evaluate(self, point):
        if len(point) != self.nvars:
            raise ValueError(f"point of length {len(point)} for {self.nvars} variables")
        total = Fraction(0)
        for e, c in self.terms.items():
            m = c
            for x, k in zip(point, e):
                if k:
                    m = m * x ** k
            total = total + m
        return _clean(total)

    def substitute(self, images: Sequence, target_vars: Sequence[str] | None = None) -> Poly:
        """Compose with ``variables[i] -> images[i]``.

        Images are polys in ``target_vars`` or plain scalars.  With only scalars
        and no ``target_vars`` this is the same as evaluation, but returns a
        constant poly in zero variables.
        """
        if len(images) != self.nvars:
            raise ValueError(f"arity mismatch: {len(images)} images for {self.nvars} variables")
        if target_vars is None:
            polys = [im for im in images if isinstance(im, Poly)]
            target_vars = polys[0].variables if polys else ()
        target_vars = tuple(target_vars)
        imgs = [im if isinstance(im, Poly) else Poly.const(im, target_vars) for im in images]
        for im in imgs:
            if im.variables != target_vars:
                raise VariableMismatch("images live in different rings")
        cache: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                cache[key] = imgs[i] ** k
            return cache[key]

        result = Poly(target_vars)
        for e, c in self.terms.items():
            m = Poly.const(c, target_vars)
            for i, k in enumerate(e):
                if k:
                    m = m * power(i, k)
            result = result + m
        return result

    def partial(self, var: str | int) -> Poly:
        i = var if isinstance(var, int) else self.variables.index(var)
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                t[tuple(e2)] = c * e[i]
        return Poly(self.variables, t)

    def gradient(self) -> list[Poly]:
        return [self.partial(i) for i in range(self.nvars)]

    def gradient_at(self, point) -> list:
        return [g.evaluate(point) for g in self.gradient()]

    # structural helpers -------------------------------------------------
    def coeffs_in(self, var: str) -> dict[int, Poly]:
        """Split as ``sum_k var**k * c_k``; returns ``{k: c_k}`` with ``c_k`` free of var."""
        i = self.variables.index(var)
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            k = e[i]
            e2 = list(e)
            e2[i] = 0
            out.setdefault(k, {})[tuple(e2)] = c
        return {k: Poly(self.variables, t) for k, t in out.items()}

    def homogeneous_part(self, d: int, among: Sequence[str] | None = None) -> Poly:
        """Terms of total degree ``d`` (in the variables ``among`` if given)."""
        idx = range(self.nvars) if among is None else [self.variables.index(v) for v in among]
        return Poly(self.variables, {e: c for e, c in self.terms.items()
                                     if sum(e[i] for i in idx) == d})

    def truncate(self, order: int) -> Poly:
        """Drop all terms of total degree greater than ``order``."""
        return Poly(self.variables, {e: c for e, c in self.terms.items() if sum(e) <= order})

    def lowest_degree(self) -> int:
        if not self.terms:
            return -1
        return min(sum(e) for e in self.terms)

    def change_ring(self, variables: Sequence[str]) -> Poly:
        """Re-express in a ring whose variables contain every variable this poly uses."""
        variables = tuple(variables)
        t = {}
        for e, c in self.terms.items():
            new = [0] * len(variables)
            for name, k in zip(self.variables, e):
                if k:
                    if name not in variables:
                        raise VariableMismatch(f"{name} missing from target ring")
                    new[variables.index(name)] = k
            t[tuple(new)] = c
        return Poly(variables, t)

    def map_coeffs(self, f) -> Poly:
        return Poly(self.variables, {e: f(c) for e, c in self.terms.items()})

    def leading_term(self):
        """Lex-largest exponent and its coefficient."""
        e = max(self.terms)
        return e, self.terms[e]

    def exact_div(self, divisor: Poly) -> Poly:
        """Quotient ``self / divisor``; raises ``ArithmeticError`` on a nonzero remainder."""
        q, r = self.divmod(divisor)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def divmod(self, divisor: Poly):
        """Multivariate division by a single poly with lex leading terms."""
        self._check(divisor)
        if not divisor:
            raise ZeroDivisionError("division by the zero polynomial")
        le, lc = divisor.leading_term()
        lc_inv = inverse(lc)
        rem = dict(self.terms)
        quot: dict = {}
        r_out: dict = {}
        while rem:
            e = max(rem)
            c = rem.pop(e)
            if all(a >= b for a, b in zip(e, le)):
                qe = tuple(a - b for a, b in zip(e, le))
                qc = c * lc_inv
                quot[qe] = quot[qe] + qc if qe in quot else qc
                for de, dc in divisor.terms.items():
                    if de == le:
                        continue
                    te = tuple(a + b for a, b in zip(qe, de))
                    v = rem.get(te, Fraction(0)) - qc * dc
                    if v:
                        rem[te] = v
                    else:
                        rem.pop(te, None)
            else:
                r_out[e] = c
        return Poly(self.variables, quot), Poly(self.variables, r_out)

    # printing / serialisation ------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: t[0], reverse=True)

    def to_json(self) -> list[dict]:
        return [{"exp": list(e), "c": to_str(c)} for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data: Iterable[Mapping], variables: Sequence[str]) -> Poly:
        terms = {}
        for i, item in enumerate(data):
            try:
                e = tuple(int(k) for k in item["exp"])
                c = from_str(str(item["c"]))
            except (KeyError, TypeError, ValueError) as exc:
                raise ValueError(f"term {i}: {exc}") from exc
            terms[e] = c
        return cls(variables, terms)

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mon = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, e) if k)
            cs = to_str(c)
            if not mon:
                parts.append(cs)
            elif cs == "1":
                parts.append(mon)
            elif cs == "-1":
                parts.append("-" + mon)
            else:
                parts.append(f"({cs})*{mon}" if not is_rational(c) or "/" in cs else f"{cs}*{mon}")
        return " + ".join(parts).replace("+ -", "- ")


def monomials(nvars: int, degree: int) -> list[tuple]:
    """All exponent vectors of the given weight, in a fixed (lex descending) order."""
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(set(out), reverse=True)


# ---------------------------------------------------------------------------
# form-level operations


def bilinear_form(f: Poly):
    """Polarisation of a quadratic form: ``b(u, v) = (f(u+v) - f(u) - f(v)) / 2``."""
    if f.homogeneous_degree() not in (2, -1):
        raise ValueError("bilinear_form needs a quadratic form")
    g = gram_matrix(f)

    def b(u, v):
        return linalg.dot(u, linalg.matvec(g, v))

    return b


def gram_matrix(f: Poly):
    """Symmetric matrix ``G`` with ``f(x) = x^T G x``."""
    n = f.nvars
    g = [[Fraction(0)] * n for _ in range(n)]
    for e, c in f.terms.items():
        idx = [i for i, k in enumerate(e) for _ in range(k)]
        if len(idx) != 2:
            raise ValueError("gram_matrix needs a quadratic form")
        i, j = idx
        if i == j:
            g[i][i] = g[i][i] + c
        else:
            g[i][j] = g[i][j] + c / 2
            g[j][i] = g[j][i] + c / 2
    return g


def quadratic_from_gram(g, variables) -> Poly:
    xs = Poly.gens(variables)
    out = Poly(variables)
    n = len(variables)
    for i in range(n):
        for j in range(n):
            if g[i][j]:
                out = out + xs[i] * xs[j] * g[i][j]
    return out


def gradient(f: Poly, x) -> list:
    return f.gradient_at(list(x))


def quadratic_rank(f: Poly) -> int:
    return linalg.rank(gram_matrix(f))


def restrict_to_subspace(f: Poly, basis: Sequence[Sequence], names: Sequence[str] | None = None) -> Poly:
    """Pull ``f`` back along ``t -> sum t_i basis_i``."""
    if linalg.rank([list(b) for b in basis]) != len(basis):
        raise ValueError("restrict_to_subspace: basis vectors are dependent")
    names = tuple(names or [f"t{i}" for i in range(len(basis))])
    ts = Poly.gens(names)
    images = []
    for j in range(f.nvars):
        im = Poly(names)
        for t, b in zip(ts, basis):
            if b[j]:
                im = im + t * b[j]
        images.append(im)
    return f.substitute(images, names)


def linear_images(matrix, source_vars: Sequence[str]) -> list[Poly]:
    """Images ``x_i -> sum_j matrix[i][j] y_j`` for a linear change of variables."""
    ys = Poly.gens(source_vars)
    out = []
    for row in matrix:
        im = Poly(source_vars)
        for y, c in zip(ys, row):
            if c:
                im = im + y * c
        out.append(im)
    return out


def linear_coefficients(f: Poly) -> list:
    if f.homogeneous_degree() not in (1, -1):
        raise ValueError("not a linear form")
    return [f.coefficient(tuple(int(i == j) for j in range(f.nvars))) for i in range(f.nvars)]


def sylvester_matrix(f: Poly, g: Poly, var: str):
    """Sylvester matrix in ``var`` with rows of f first; entries are polys."""
    cf, cg = f.coeffs_in(var), g.coeffs_in(var)
    m, n = f.degree_in(var), g.degree_in(var)
    zero = Poly(f.variables)
    size = m + n
    rows = []
    for i in range(n):
        row = [zero] * size
        for k in range(m + 1):
            row[i + m - k] = cf.get(k, zero)
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for k in range(n + 1):
            row[i + n - k] = cg.get(k, zero)
        rows.append(row)
    return rows


def poly_det(mat) -> Poly:
    """Determinant of a square matrix of polys (fraction-free Bareiss)."""
    a = [list(r) for r in mat]
    n = len(a)
    if n == 0:
        raise ValueError("empty matrix")
    variables = a[0][0].variables
    sign = 1
    prev = Poly.const(1, variables)
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return Poly(variables)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]).exact_div(prev)
        prev = a[k][k]
    return a[n - 1][n - 1] * sign


def resultant_eliminate(f: Poly, g: Poly, var: str) -> Poly:
    """Sylvester resultant of f and g with respect to ``var``."""
    if not f or not g:
        raise ValueError("resultant of the zero polynomial")
    if f.degree_in(var) <= 0 and g.degree_in(var) <= 0:
        raise ValueError(f"both polynomials are constant in {var}")
    if f.degree_in(var) == 0:
        return f ** g.degree_in(var)
    if g.degree_in(var) == 0:
        return g ** f.degree_in(var)
    return poly_det(sylvester_matrix(f, g, var))


# ---------------------------------------------------------------------------
# adapted decomposition along the line x2 = ... = x5 = 0

VARS = ("x0", "x1", "x2", "x3", "x4", "x5")


class FrameNotAdapted(ValueError):
    pass


class AdaptedDecomposition:
    """Pieces of ``q = x1 h1 + q1`` and ``k = x1^2 h2 + x1 q2 + k1 (+ c x5^3)``.

    All pieces are forms in the six projective variables that do not involve
    x0 or x1.  ``cube`` is the split-off coefficient of x5^3 (cuspidal mode);
    it is zero in nodal mode, where the x5^3 term stays inside k1.
    """

    __slots__ = ("h1", "q1", "h2", "q2", "k1", "cube", "mode")

    def __init__(self, h1, q1, h2, q2, k1, cube=Fraction(0), mode="nodal"):
        self.h1, self.q1, self.h2, self.q2, self.k1 = h1, q1, h2, q2, k1
        self.cube = cube
        self.mode = mode

    @property
    def ambient_vars(self) -> tuple[str, ...]:
        return ("x2", "x3", "x4", "x5") if self.mode == "nodal" else ("x2", "x3", "x4")

    @property
    def k1_full(self) -> Poly:
        """k1 together with the split-off x5^3 term."""
        return self.k1 + Poly.var("x5", self.k1.variables) ** 3 * self.cube

    def reconstruct(self):
        x1 = Poly.var("x1", self.h1.variables)
        q = x1 * self.h1 + self.q1
        k = x1 * x1 * self.h2 + x1 * self.q2 + self.k1_full
        return q, k

    def as_dict(self):
        return {"h1": self.h1, "q1": self.q1, "h2": self.h2, "q2": self.q2,
                "k1": self.k1, "cube": self.cube}


def decompose_adapted(q: Poly, k: Poly, mode: str = "nodal") -> AdaptedDecomposition:
    if mode not in ("nodal", "cuspidal"):
        raise ValueError(f"unknown mode {mode!r}")
    for f in (q, k):
        if f.involves("x0"):
            raise FrameNotAdapted("forms must not involve x0")
    qc = q.coeffs_in("x1")
    kc = k.coeffs_in("x1")
    if 2 in qc:
        raise FrameNotAdapted("q has an x1^2 term: frame not adapted")
    if 3 in kc:
        raise FrameNotAdapted("k has an x1^3 term: frame not adapted")
    zero = Poly(q.variables)
    h1, q1 = qc.get(1, zero), qc.get(0, zero)
    h2, q2, k1 = kc.get(2, zero), kc.get(1, zero), kc.get(0, zero)
    cube = Fraction(0)
    if mode == "cuspidal":
        e5 = (0, 0, 0, 0, 0, 3)
        cube = k1.coefficient(e5)
        k1 = k1 - Poly(k1.variables, {e5: cube})
        if q.involves("x5"):
            raise FrameNotAdapted("cuspidal q must be free of x5")
    return AdaptedDecomposition(h1, q1, h2, q2, k1, cube, mode)

"""Exact dense linear algebra over any of the coefficient fields.

Matrices are lists of rows.  Nothing here knows which field it works in: the
entries only need ``+ - * /`` and truthiness for zero tests.
"""
from __future__ import annotations

from fractions import Fraction

from .fields import inverse, normalize


class SingularMatrix(ArithmeticError):
    pass


def _copy(m):
    return [[normalize(x) for x in row] for row in m]


def rref(m):
    """Reduced row echelon form.  Returns ``(rows, pivot_columns)``."""
    a = _copy(m)
    if not a:
        return a, []
    nrows, ncols = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = inverse(a[r][c])
        a[r] = [normalize(x * inv) for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [normalize(x - f * y) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return a, pivots


def rank(m) -> int:
    if not m or not m[0]:
        return 0
    return len(rref(m)[1])


def kernel(m, ncols: int | None = None):
    """Basis of the right null space ``{v : m v = 0}``, one vector per free column."""
    if ncols is None:
        ncols = len(m[0]) if m else 0
    if not m:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    r, pivots = rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(r, pivots):
            v[pc] = normalize(-row[f])
        basis.append(v)
    return basis


def solve(m, b):
    """One solution of ``m x = b`` (free variables set to zero), or ``None``."""
    ncols = len(m[0])
    aug = [list(row) + [rhs] for row, rhs in zip(m, b)]
    r, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, pc in zip(r, pivots):
        x[pc] = row[ncols]
    return x


def det(m):
    """Determinant by Gaussian elimination."""
    a = _copy(m)
    n = len(a)
    result = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            result = -result
        result = result * a[c][c]
        inv = inverse(a[c][c])
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return normalize(result)


def inv(m):
    n = len(m)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    r, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrix("matrix is not invertible")
    return [row[n:] for row in r]


def matmul(a, b):
    bt = list(zip(*b))
    return [[normalize(sum((x * y for x, y in zip(row, col)), Fraction(0))) for col in bt]
            for row in a]


def matvec(a, v):
    return [normalize(sum((x * y for x, y in zip(row, v)), Fraction(0))) for row in a]


def transpose(a):
    return [list(r) for r in zip(*a)]


def dot(u, v):
    return normalize(sum((x * y for x, y in zip(u, v)), Fraction(0)))


def identity(n: int):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def complete_basis(vectors, dim: int):
    """Extend independent ``vectors`` by standard basis vectors to a basis of the space."""
    basis = [list(v) for v in vectors]
    for i in range(dim):
        e = [Fraction(int(i == j)) for j in range(dim)]
        if rank(basis + [e]) > len(basis):
            basis.append(e)
        if len(basis) == dim:
            break
    return basis


def primitive_integer(v):
    """Scale a rational vector to a primitive integer vector with positive leading entry."""
    from math import gcd, lcm

    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return ints
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x)
    return [-x for x in ints] if lead < 0 else ints

"""Univariate polynomials over F_p as dense integer lists (highest degree first).

Factorisation and square-free decomposition are delegated to sympy's
``galoistools``; interpolation and the Euclidean resultant are small enough to
keep here.
"""
from __future__ import annotations

from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_factor, gf_sqf_list, gf_strip

from .fields import BadPrime, reduce_mod_p


def reduce_terms(terms: dict, p: int) -> dict:
    """Reduce the coefficients of a term map mod p, dropping zeros."""
    out = {}
    for e, c in terms.items():
        v = reduce_mod_p(c, p).v
        if v:
            out[e] = v
    return out


def eval_terms(terms: dict, x, p: int) -> int:
    total = 0
    for e, c in terms.items():
        m = c
        for xi, k in zip(x, e):
            if k:
                m = m * pow(xi, k, p) % p
        total += m
    return total % p


def derivative_terms(terms: dict, i: int, p: int) -> dict:
    out = {}
    for e, c in terms.items():
        if e[i]:
            e2 = list(e)
            e2[i] -= 1
            v = c * e[i] % p
            if v:
                out[tuple(e2)] = v
    return out


def strip(f: list[int], p: int) -> list[int]:
    return gf_strip([c % p for c in f])


def degree(f: list[int]) -> int:
    return len(f) - 1 if f else -1


def interpolate(xs: list[int], ys: list[int], p: int) -> list[int]:
    """Lagrange interpolation; result highest degree first."""
    n = len(xs)
    coeffs = [0] * n  # lowest degree first while accumulating
    for i in range(n):
        num = [1]
        den = 1
        for j in range(n):
            if j == i:
                continue
            num = _mul_low(num, [-xs[j] % p, 1], p)
            den = den * (xs[i] - xs[j]) % p
        scale = ys[i] * pow(den, -1, p) % p
        for k, c in enumerate(num):
            coeffs[k] = (coeffs[k] + scale * c) % p
    return strip(coeffs[::-1], p)


def _mul_low(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return out


def evaluate(f: list[int], x: int, p: int) -> int:
    v = 0
    for c in f:
        v = (v * x + c) % p
    return v


def roots(f: list[int], p: int) -> list[int]:
    """Distinct roots in F_p of a nonzero polynomial."""
    f = strip(f, p)
    if degree(f) <= 0:
        return []
    _, factors = gf_factor(f, p, ZZ)
    return sorted(int(-g[1]) % p for g, _ in factors if len(g) == 2)


def multiplicity_count(f: list[int], p: int) -> int:
    """Number of roots over the algebraic closure counted with multiplicity.

    Summed from the square-free decomposition ``f = c * prod s_i^i`` as
    ``sum i * deg s_i``; for a nonzero polynomial this is just its degree,
    so the decomposition doubles as a consistency check.
    """
    f = strip(f, p)
    if not f:
        raise ValueError("zero polynomial has no finite root count")
    _, parts = gf_sqf_list(f, p, ZZ)
    total = sum(m * degree(list(s)) for s, m in parts)
    if total != degree(f):
        raise ArithmeticError("square-free decomposition does not account for the degree")
    return total


def resultant(f: list[int], g: list[int], p: int) -> int:
    """Resultant of two univariate polynomials via the Euclidean algorithm."""
    f, g = strip(f, p), strip(g, p)
    if not f or not g:
        return 0
    res = 1
    while True:
        m, n = degree(f), degree(g)
        if n == 0:
            return res * pow(g[0], m, p) % p
        r = _rem(f, g, p)
        if not r:
            return 0
        k = degree(r)
        res = res * pow(g[0], m - k, p) % p
        if m % 2 and n % 2:
            res = -res % p
        f, g = g, r


def _rem(f, g, p):
    f = list(f)
    inv = pow(g[0], -1, p)
    while len(f) >= len(g) and f:
        c = f[0] * inv % p
        for i in range(len(g)):
            f[i] = (f[i] - c * g[i]) % p
        f = strip(f, p)
    return f


def good_prime(values, p: int) -> bool:
    try:
        for v in values:
            reduce_mod_p(v, p)
    except BadPrime:
        return False
    return True

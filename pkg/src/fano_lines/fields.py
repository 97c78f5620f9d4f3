"""Exact coefficient fields.

Rationals are plain :class:`fractions.Fraction` (or ``int``) values.  On top of
them live three small element types:

* :class:`QuadElement`  -- ``a + b*sqrt(d)`` in Q(sqrt d), d squarefree
* :class:`Zeta3Element` -- ``a + b*z`` in Q(z), z a primitive cube root of 1
* :class:`ModP`         -- residues modulo a prime p > 3

Integers and fractions coerce into every field.  Any other mix of tags is
rejected with :class:`FieldMismatch`.
"""
from __future__ import annotations

import functools
import math
import re
from fractions import Fraction
from numbers import Rational


class FieldMismatch(TypeError):
    """Raised when elements of two different fields are combined."""


class BadPrime(ArithmeticError):
    """Raised when a rational cannot be reduced modulo p."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot read {x!r} as a rational")


def is_rational(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def squarefree_part(n: int) -> tuple[int, int]:
    """Return ``(s, d)`` with ``n = s**2 * d`` and ``d`` squarefree (sign kept in d)."""
    from sympy import factorint

    if n == 0:
        raise ValueError("0 has no squarefree part")
    s, d = 1, -1 if n < 0 else 1
    for p, e in factorint(abs(n)).items():
        p, e = int(p), int(e)  # sympy may hand back gmpy2 integers
        s *= p ** (e // 2)
        d *= p ** (e % 2)
    return s, d


@functools.lru_cache(maxsize=256)
def _squarefree(d: int) -> bool:
    return squarefree_part(d)[0] == 1


def rational_sqrt(x) -> Fraction | None:
    x = _frac(x)
    if x < 0:
        return None
    n, m = x.numerator, x.denominator
    rn, rm = math.isqrt(n), math.isqrt(m)
    if rn * rn == n and rm * rm == m:
        return Fraction(rn, rm)
    return None


class QuadElement:
    """An element ``a + b*sqrt(d)`` of the quadratic field Q(sqrt d)."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int):
        if d in (0, 1) or not _squarefree(d):
            raise ValueError(f"d={d} must be squarefree and different from 0, 1")
        self.a = _frac(a)
        self.b = _frac(b)
        self.d = d

    def _coerce(self, other):
        if isinstance(other, QuadElement):
            if other.d != self.d:
                raise FieldMismatch(f"Q(sqrt {self.d}) vs Q(sqrt {other.d})")
            return other
        if is_rational(other):
            return QuadElement(other, 0, self.d)
        if isinstance(other, (Zeta3Element, ModP)):
            raise FieldMismatch(f"Q(sqrt {self.d}) vs {field_tag(other)}")
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElement(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadElement(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElement(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElement(self.a * o.a + self.d * self.b * o.b,
                           self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def conjugate(self) -> QuadElement:
        return QuadElement(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def inverse(self) -> QuadElement:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt %d)" % self.d)
        c = self.conjugate()
        return QuadElement(c.a / n, c.b / n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        return _power(self, n)

    def __eq__(self, other):
        if isinstance(other, QuadElement):
            return (self.a, self.b, self.d) == (other.a, other.b, other.d) or (
                self.b == 0 and other.b == 0 and self.a == other.a)
        if is_rational(other):
            return self.b == 0 and self.a == other
        return False

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __repr__(self):
        return f"QuadElement({self.a}, {self.b}, {self.d})"

    def __str__(self):
        return f"{self.a}{'+' if self.b >= 0 else '-'}{abs(self.b)}*r{self.d}"


class Zeta3Element:
    """An element ``a + b*z`` of Q(z) where ``z**2 + z + 1 = 0``."""

    __slots__ = ("a", "b")

    def __init__(self, a, b=0):
        self.a = _frac(a)
        self.b = _frac(b)

    @staticmethod
    def zeta() -> Zeta3Element:
        return Zeta3Element(0, 1)

    def _coerce(self, other):
        if isinstance(other, Zeta3Element):
            return other
        if is_rational(other):
            return Zeta3Element(other, 0)
        if isinstance(other, (QuadElement, ModP)):
            raise FieldMismatch(f"Q(zeta3) vs {field_tag(other)}")
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Zeta3Element(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return Zeta3Element(-self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Zeta3Element(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        # z**2 = -1 - z
        bb = self.b * o.b
        return Zeta3Element(self.a * o.a - bb, self.a * o.b + self.b * o.a - bb)

    __rmul__ = __mul__

    def conjugate(self) -> Zeta3Element:
        # z -> z**2 = -1 - z
        return Zeta3Element(self.a - self.b, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - self.a * self.b + self.b * self.b

    def inverse(self) -> Zeta3Element:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(zeta3)")
        c = self.conjugate()
        return Zeta3Element(c.a / n, c.b / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        return _power(self, n)

    def __eq__(self, other):
        if isinstance(other, Zeta3Element):
            return self.a == other.a and self.b == other.b
        if is_rational(other):
            return self.b == 0 and self.a == other
        return False

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash(("z3", self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __repr__(self):
        return f"Zeta3Element({self.a}, {self.b})"

    def __str__(self):
        return f"{self.a}{'+' if self.b >= 0 else '-'}{abs(self.b)}*z3"


class ModP:
    """A residue class modulo a prime ``p > 3``."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        if p <= 3:
            raise ValueError("prime fields need p > 3")
        self.p = p
        self.v = v % p

    def _coerce(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise FieldMismatch(f"F_{self.p} vs F_{other.p}")
            return other
        if is_rational(other):
            return reduce_mod_p(other, self.p)
        if isinstance(other, (QuadElement, Zeta3Element)):
            raise FieldMismatch(f"F_{self.p} vs {field_tag(other)}")
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v + o.v, self.p)

    __radd__ = __add__

    def __neg__(self):
        return ModP(-self.v, self.p)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v - o.v, self.p)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v * o.v, self.p)

    __rmul__ = __mul__

    def inverse(self) -> ModP:
        if self.v == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return ModP(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return ModP(pow(self.v, n, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, ModP):
            return self.p == other.p and self.v == other.v
        if is_rational(other):
            try:
                return self.v == reduce_mod_p(other, self.p).v
            except BadPrime:
                return False
        return False

    def __hash__(self):
        return hash(self.v) if self.v == 0 else hash(("modp", self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"ModP({self.v}, {self.p})"

    def __str__(self):
        return f"{self.v} mod {self.p}"


def _power(x, n: int):
    if n < 0:
        return _power(x.inverse(), -n)
    result = x._coerce(1)
    base = x
    while n:
        if n & 1:
            result = result * base
        base = base * base
        n >>= 1
    return result


def reduce_mod_p(x, p: int) -> ModP:
    """Image of a rational number in F_p.  Raises :class:`BadPrime` if p divides the denominator."""
    if isinstance(x, ModP):
        if x.p != p:
            raise FieldMismatch(f"F_{x.p} vs F_{p}")
        return x
    x = _frac(x)
    if x.denominator % p == 0:
        raise BadPrime(f"denominator {x.denominator} divisible by {p}")
    return ModP(x.numerator * pow(x.denominator, -1, p), p)


def field_tag(x) -> str:
    if isinstance(x, QuadElement):
        return f"quadratic({x.d})"
    if isinstance(x, Zeta3Element):
        return "cyclotomic3"
    if isinstance(x, ModP):
        return f"prime({x.p})"
    if is_rational(x):
        return "rational"
    raise TypeError(f"not a field element: {x!r}")


def common_tag(values) -> str:
    """The field tag shared by ``values`` (rationals are absorbed by any tag)."""
    tag = "rational"
    for v in values:
        t = field_tag(v)
        if t == "rational":
            continue
        if tag == "rational":
            tag = t
        elif t != tag:
            raise FieldMismatch(f"{tag} vs {t}")
    return tag


def conjugate(x):
    """Galois conjugate (identity on rationals and residues)."""
    if isinstance(x, (QuadElement, Zeta3Element)):
        return x.conjugate()
    return x


def inverse(x):
    if is_rational(x):
        if x == 0:
            raise ZeroDivisionError("division by zero in Q")
        return 1 / _frac(x)
    return x.inverse()


def normalize(x):
    """Collapse extension elements with zero irrational part to Fractions."""
    if isinstance(x, (QuadElement, Zeta3Element)) and x.b == 0:
        return x.a
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    return x


def sqrt(x):
    """A square root of ``x`` inside its own field, or ``None`` if there is none.

    Rationals return a rational root when one exists.  For Q(zeta3) elements we
    use Q(zeta3) = Q(sqrt -3).
    """
    if is_rational(x):
        return rational_sqrt(x)
    if isinstance(x, QuadElement):
        # (u + v r)^2 = u^2 + d v^2 + 2uv r
        n = rational_sqrt(x.norm())
        if n is None:
            return None
        for cand in ((x.a + n) / 2, (x.a - n) / 2):
            u = rational_sqrt(cand)
            if u is not None and u != 0:
                return QuadElement(u, x.b / (2 * u), x.d)
            if u == 0 and x.b == 0:
                # x = d v^2
                v = rational_sqrt(x.a / x.d)
                if v is not None:
                    return QuadElement(0, v, x.d)
        return None
    if isinstance(x, Zeta3Element):
        # write x = u + w*s with s = sqrt(-3) = 1 + 2z
        w = x.b / 2
        u = x.a - w
        root = sqrt(QuadElement(u, w, -3)) if w != 0 else None
        if w == 0:
            r = rational_sqrt(u)
            if r is not None:
                return Zeta3Element(r, 0)
            v = rational_sqrt(u / -3)
            if v is None:
                return None
            root = QuadElement(0, v, -3)
        if root is None:
            return None
        # u' + w' s = u' + w' + 2 w' z
        return Zeta3Element(root.a + root.b, 2 * root.b)
    if isinstance(x, ModP):
        return _sqrt_mod_p(x)
    raise TypeError(f"not a field element: {x!r}")


def _sqrt_mod_p(x: ModP):
    p = x.p
    if x.v == 0:
        return x
    if pow(x.v, (p - 1) // 2, p) != 1:
        return None
    # Tonelli-Shanks
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(x.v, q, p), pow(x.v, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return ModP(r, p)


def cube_roots_of_unity_mod_p(p: int) -> list[int]:
    return sorted(x for x in range(1, p) if pow(x, 3, p) == 1)


def primitive_cube_root(p: int) -> ModP:
    roots = [r for r in cube_roots_of_unity_mod_p(p) if r != 1]
    if not roots:
        raise ValueError(f"F_{p} has no primitive cube root of unity (p != 1 mod 3)")
    return ModP(roots[0], p)


def to_str(x) -> str:
    """Exact string form used in reports: ``3/2``, ``1+2*r2``, ``1-1*z3``, ``4 mod 7``."""
    if isinstance(x, bool):
        raise TypeError("bool is not a field element")
    x = normalize(x)
    if isinstance(x, Fraction):
        return str(x)
    return str(x)


_QUAD_RE = re.compile(r"^(-?[0-9/]+)([+-])([0-9/]+)\*r(-?[0-9]+)$")
_Z3_RE = re.compile(r"^(-?[0-9/]+)([+-])([0-9/]+)\*z3$")
_MOD_RE = re.compile(r"^(-?[0-9]+) mod ([0-9]+)$")


def from_str(s: str):
    """Inverse of :func:`to_str`."""
    s = s.strip()
    m = _QUAD_RE.match(s)
    if m:
        b = Fraction(m.group(3)) * (1 if m.group(2) == "+" else -1)
        return normalize(QuadElement(Fraction(m.group(1)), b, int(m.group(4))))
    m = _Z3_RE.match(s)
    if m:
        b = Fraction(m.group(3)) * (1 if m.group(2) == "+" else -1)
        return normalize(Zeta3Element(Fraction(m.group(1)), b))
    m = _MOD_RE.match(s)
    if m:
        return ModP(int(m.group(1)), int(m.group(2)))
    return Fraction(s)


def embed(x, like):
    """Coerce the rational ``x`` into the field of ``like``."""
    if isinstance(like, QuadElement):
        return QuadElement(x, 0, like.d) if is_rational(x) else x
    if isinstance(like, Zeta3Element):
        return Zeta3Element(x, 0) if is_rational(x) else x
    if isinstance(like, ModP):
        return reduce_mod_p(x, like.p) if is_rational(x) else x
    return x


__all__ = [
    "BadPrime", "FieldMismatch", "ModP", "QuadElement", "Rational", "Zeta3Element",
    "common_tag", "conjugate", "cube_roots_of_unity_mod_p", "embed", "field_tag",
    "from_str", "inverse", "is_rational", "normalize", "primitive_cube_root",
    "rational_sqrt", "reduce_mod_p", "sqrt", "squarefree_part", "to_str",
]

"""Exact arithmetic in Z[A, 1/A] and its fraction field Q(A).

Both types are immutable.  ``LaurentPoly`` stores ``A**val * p(A)`` with
``p`` a flint ``fmpq_poly`` whose constant term is nonzero; ``RationalFn``
stores ``A**val * n(A) / d(A)`` in the canonical form described on the class.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

import flint
import numpy as np

__all__ = [
    "LaurentPoly",
    "RationalFn",
    "PoleError",
    "common_denominator",
    "A",
    "ONE",
    "ZERO",
    "qint",
    "delta_closed",
    "DELTA",
    "eval_complex",
    "rsum",
    "ProductSum",
]

_Q = flint.fmpq_poly
_Z = flint.fmpz_poly

Scalar = Union[int, Fraction]


class PoleError(ArithmeticError):
    """Raised when a rational function is evaluated at (numerically) a pole."""


def _fmpq(c) -> flint.fmpq:
    if isinstance(c, Fraction):
        return flint.fmpq(c.numerator, c.denominator)
    if isinstance(c, int):
        return flint.fmpq(c)
    if isinstance(c, (flint.fmpq, flint.fmpz)):
        return flint.fmpq(c)
    raise TypeError(f"not an exact rational: {c!r}")


def _frac(c) -> Fraction:
    c = flint.fmpq(c)
    return Fraction(int(c.p), int(c.q))


def _strip(v: int, p: _Q) -> tuple[int, _Q]:
    """Move low-order zero coefficients of ``p`` into the exponent ``v``."""
    if p.is_zero():
        return 0, p
    if p[0] != 0:
        return v, p
    j = 1
    while p[j] == 0:
        j += 1
    return v + j, p.right_shift(j)


def _from_mapping(coeffs: Mapping[int, Scalar]) -> tuple[int, _Q]:
    items = [(int(e), c) for e, c in coeffs.items() if c != 0]
    if not items:
        return 0, _Q(0)
    lo = min(e for e, _ in items)
    hi = max(e for e, _ in items)
    dense = [flint.fmpq(0)] * (hi - lo + 1)
    for e, c in items:
        dense[e - lo] = dense[e - lo] + _fmpq(c)
    return _strip(lo, _Q(dense))


class LaurentPoly:
    """Element of Q[A, 1/A]; coefficients are exact rationals.

    ``LaurentPoly({2: 1, -2: 1})`` is ``A^2 + A^-2``.
    """

    __slots__ = ("_v", "_p", "_hash")

    def __init__(self, coeffs: Mapping[int, Scalar] | None = None):
        v, p = _from_mapping(coeffs or {})
        self._v = v
        self._p = p
        self._hash = None

    @classmethod
    def _raw(cls, v: int, p: _Q) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj._v, obj._p = _strip(v, p)
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, exponent: int, coeff: Scalar = 1) -> "LaurentPoly":
        return cls({exponent: coeff})

    @classmethod
    def constant(cls, c: Scalar) -> "LaurentPoly":
        return cls({0: c})

    # -- inspection -------------------------------------------------------
    @property
    def coeffs(self) -> dict[int, Fraction]:
        out = {}
        for j, c in enumerate(self._p.coeffs()):
            if c != 0:
                out[self._v + j] = _frac(c)
        return out

    def terms(self) -> list[tuple[int, Fraction]]:
        return sorted(self.coeffs.items())

    def is_zero(self) -> bool:
        return self._p.is_zero()

    @property
    def min_exp(self) -> int:
        if self.is_zero():
            raise ValueError("zero polynomial has no exponents")
        return self._v

    @property
    def max_exp(self) -> int:
        if self.is_zero():
            raise ValueError("zero polynomial has no exponents")
        return self._v + self._p.degree()

    def is_monomial(self) -> bool:
        return not self.is_zero() and self._p.degree() == 0

    def is_integral(self) -> bool:
        return self._p.denom() == 1

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _coerce(x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return LaurentPoly({0: x})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        v1, v2 = self._v, other._v
        if v1 <= v2:
            return LaurentPoly._raw(v1, self._p + other._p.left_shift(v2 - v1))
        return LaurentPoly._raw(v2, other._p + self._p.left_shift(v1 - v2))

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self._v, -self._p)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return ZERO_L
        return LaurentPoly._raw(self._v + other._v, self._p * other._p)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial Laurent polynomial")
            c = _frac(self._p[0])
            return LaurentPoly({self._v * n: Fraction(1) / c ** (-n)})
        return LaurentPoly._raw(self._v * n, self._p ** n)

    def __truediv__(self, other):
        return RationalFn(self) / other

    def __rtruediv__(self, other):
        return RationalFn(other) / self

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``A**k``."""
        if self.is_zero():
            return self
        return LaurentPoly._raw(self._v + k, self._p)

    def squarefree_factors(self) -> tuple[Fraction, list[tuple["LaurentPoly", int]]]:
        """``(content, [(g, k), ...])`` with ``self = content * A^v * prod g^k``.

        Each ``g`` is a squarefree polynomial with nonzero constant term and
        the ``g`` are pairwise coprime; exact, via flint.
        """
        if self.is_zero():
            raise ZeroDivisionError("squarefree decomposition of zero")
        content, parts = self._p.factor_squarefree()
        return _frac(content), [(LaurentPoly._raw(0, _Q(g)), int(k)) for g, k in parts]

    def substitute_power(self, r: int) -> "LaurentPoly":
        """Return ``f(A**r)`` for a positive integer ``r``."""
        if r <= 0:
            raise ValueError("r must be positive")
        return LaurentPoly({e * r: c for e, c in self.coeffs.items()})

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, RationalFn):
            return other == self
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._v == other._v and self._p == other._p

    def __hash__(self):
        if self._hash is None:
            # agrees with RationalFn.__hash__ so equal values hash equally
            self._hash = hash((self._v, str(self._p), "1"))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    # -- evaluation -------------------------------------------------------
    def eval_complex(self, z: complex) -> complex:
        if z == 0:
            raise PoleError("Laurent polynomials are evaluated only at z != 0")
        acc = 0j
        for c in reversed(self._p.coeffs()):
            acc = acc * z + float(c)
        return acc * complex(z) ** self._v

    def eval_array(self, z: np.ndarray) -> np.ndarray:
        """Vectorised evaluation at an array of nonzero complex points."""
        z = np.asarray(z, dtype=complex)
        if self.is_zero():
            return np.zeros_like(z)
        c = [float(x) for x in reversed(self._p.coeffs())]
        return np.polyval(c, z) * z ** self._v

    # -- serialisation ----------------------------------------------------
    def to_triples(self) -> list[list[int]]:
        return [[e, c.numerator, c.denominator] for e, c in self.terms()]

    @classmethod
    def from_triples(cls, triples: Iterable[Iterable[int]]) -> "LaurentPoly":
        coeffs: dict[int, Fraction] = {}
        for e, num, den in triples:
            coeffs[int(e)] = coeffs.get(int(e), Fraction(0)) + Fraction(int(num), int(den))
        return cls(coeffs)

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for e, c in sorted(self.coeffs.items(), reverse=True):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                mono = "A" if e == 1 else f"A^{e}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


ZERO_L = LaurentPoly()


def _primitive(d: _Q) -> tuple[flint.fmpq, _Z]:
    """Write ``d = c * D`` with ``D`` primitive in Z[A] and ``D(0) > 0``."""
    num = d.numer()
    cont = num.content()
    prim = num // cont if cont != 1 else num
    c = flint.fmpq(cont, d.denom())
    if prim[0] < 0:
        prim = -prim
        c = -c
    return c, prim


class RationalFn:
    """Element of the fraction field Q(A).

    Canonical form: the value is ``A**v * n(A) / d(A)`` where ``d`` has
    integer coefficients with content 1, a positive nonzero constant term,
    and no common factor with ``n``; ``n`` has a nonzero constant term.
    Equal values therefore have identical representations.
    """

    __slots__ = ("_v", "_n", "_d", "_hash", "_dkey")

    def __init__(self, num=0, den=1):
        num = _as_laurent(num)
        den = _as_laurent(den)
        if den.is_zero():
            raise ZeroDivisionError("RationalFn with zero denominator")
        self._set(num._v - den._v, num._p, _Q(den._p))

    def _set(self, v: int, n: _Q, d: _Q, reduce: bool = True) -> None:
        self._hash = None
        self._dkey = None
        if n.is_zero():
            self._v, self._n, self._d = 0, _Q(0), _Z(1)
            return
        v, n = _strip(v, n)
        if reduce and d.degree() > 0:
            g = n.gcd(d)
            if g.degree() > 0:
                n = n // g
                d = d // g
        c, dz = _primitive(d)
        if c != 1:
            n = n / c
        self._v, self._n, self._d = v, n, dz

    @classmethod
    def _make(cls, v: int, n: _Q, d: _Q | _Z, reduce: bool = True) -> "RationalFn":
        obj = cls.__new__(cls)
        obj._set(v, n, _Q(d) if isinstance(d, _Z) else d, reduce)
        return obj

    # -- inspection -------------------------------------------------------
    @property
    def num(self) -> LaurentPoly:
        return LaurentPoly._raw(self._v, self._n)

    @property
    def den(self) -> LaurentPoly:
        return LaurentPoly._raw(0, _Q(self._d))

    def is_zero(self) -> bool:
        return self._n.is_zero()

    def is_laurent(self) -> bool:
        return self._d.degree() == 0

    def to_laurent(self) -> LaurentPoly:
        if not self.is_laurent():
            raise ValueError(f"{self} is not a Laurent polynomial")
        return self.num

    def unit_monomial(self) -> tuple[int, int] | None:
        """Return ``(sign, e)`` if the value is ``sign * A**e``, else ``None``."""
        if self.is_laurent() and self._n.degree() == 0 and abs(self._n[0]) == 1:
            return (1 if self._n[0] > 0 else -1), self._v
        return None

    def den_key(self) -> str:
        if self._dkey is None:
            self._dkey = str(self._d)
        return self._dkey

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _coerce(x) -> "RationalFn":
        if isinstance(x, RationalFn):
            return x
        if isinstance(x, (int, Fraction, LaurentPoly)):
            return RationalFn(x)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        v1, v2 = self._v, other._v
        m = min(v1, v2)
        if self._d == other._d:
            n = self._n.left_shift(v1 - m) + other._n.left_shift(v2 - m)
            return RationalFn._make(m, n, self._d, reduce=self._d.degree() > 0)
        d1, d2 = _Q(self._d), _Q(other._d)
        n = (self._n * d2).left_shift(v1 - m) + (other._n * d1).left_shift(v2 - m)
        return RationalFn._make(m, n, d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        obj = RationalFn.__new__(RationalFn)
        obj._v, obj._n, obj._d, obj._hash, obj._dkey = self._v, -self._n, self._d, None, self._dkey
        return obj

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return ZERO
        n1, n2 = self._n, other._n
        d1, d2 = _Q(self._d), _Q(other._d)
        if d2.degree() > 0:
            g = n1.gcd(d2)
            if g.degree() > 0:
                n1, d2 = n1 // g, d2 // g
        if d1.degree() > 0:
            g = n2.gcd(d1)
            if g.degree() > 0:
                n2, d1 = n2 // g, d1 // g
        return RationalFn._make(self._v + other._v, n1 * n2, d1 * d2, reduce=False)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFn":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(A)")
        return RationalFn._make(-self._v, _Q(self._d), self._n, reduce=False)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return ONE
        return RationalFn._make(self._v * n, self._n ** n, _Q(self._d) ** n, reduce=False)

    def shift(self, k: int) -> "RationalFn":
        """Multiply by ``A**k``."""
        if self.is_zero():
            return self
        obj = RationalFn.__new__(RationalFn)
        obj._v, obj._n, obj._d, obj._hash, obj._dkey = self._v + k, self._n, self._d, None, self._dkey
        return obj

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._v == other._v and self._n == other._n and self._d == other._d

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._v, str(self._n), str(self._d)))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    # -- evaluation -------------------------------------------------------
    def eval_complex(self, z: complex, pole_tol: float = 1e-14) -> complex:
        den = self.den.eval_complex(z)
        scale = max(float(abs(c)) for c in self._d.coeffs()) * max(1.0, abs(z)) ** self._d.degree()
        if abs(den) <= pole_tol * scale:
            raise PoleError(f"pole of {self} at {z}")
        return self.num.eval_complex(z) / den

    def eval_array(self, z: np.ndarray) -> np.ndarray:
        return self.num.eval_array(z) / self.den.eval_array(z)

    # -- serialisation ----------------------------------------------------
    def to_json(self) -> dict:
        return {"num": self.num.to_triples(), "den": self.den.to_triples()}

    @classmethod
    def from_json(cls, data: Mapping) -> "RationalFn":
        return cls(LaurentPoly.from_triples(data["num"]), LaurentPoly.from_triples(data["den"]))

    def __repr__(self):
        return f"RationalFn({self})"

    def __str__(self):
        if self.is_laurent():
            return str(self.num)
        return f"({self.num}) / ({self.den})"


def _as_laurent(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly({0: x})
    raise TypeError(f"cannot interpret {x!r} as a Laurent polynomial")


def rsum(values: Iterable[RationalFn]) -> RationalFn:
    """Sum many rational functions, grouping by denominator first.

    Adding numerators over a shared denominator avoids one gcd per term,
    which dominates the cost of collecting large skein expansions.
    """
    groups: dict[str, list] = {}
    for x in values:
        if x.is_zero():
            continue
        key = x.den_key()
        g = groups.get(key)
        if g is None:
            groups[key] = [x._v, x._n, x._d]
        else:
            v = min(g[0], x._v)
            g[1] = g[1].left_shift(g[0] - v) + x._n.left_shift(x._v - v)
            g[0] = v
    total = ZERO
    for v, n, d in groups.values():
        total = total + RationalFn._make(v, n, _Q(d), reduce=d.degree() > 0)
    return total


class ProductSum:
    """Accumulate ``sum(x * y * DELTA**loops)`` with one reduction at the end.

    Terms are grouped by ``(den(x), den(y), loops)`` so each group is a sum
    of numerator products over a single known denominator.
    """

    __slots__ = ("_groups",)

    def __init__(self):
        self._groups: dict[tuple, list] = {}

    def add(self, x: RationalFn, y: RationalFn, loops: int = 0) -> None:
        if x.is_zero() or y.is_zero():
            return
        key = (x.den_key(), y.den_key(), loops)
        v = x._v + y._v
        n = x._n * y._n
        g = self._groups.get(key)
        if g is None:
            self._groups[key] = [v, n, x._d, y._d]
        elif v >= g[0]:
            g[1] = g[1] + n.left_shift(v - g[0])
        else:
            g[1] = g[1].left_shift(g[0] - v) + n
            g[0] = v

    def value(self) -> RationalFn:
        parts = []
        for (_, _, loops), (v, n, d1, d2) in self._groups.items():
            if loops:
                n = n * _delta_power(loops)
                v -= 2 * loops
            parts.append(RationalFn._make(v, n, _Q(d1 * d2)))
        return rsum(parts)


_DELTA_POWERS: dict[int, _Q] = {}


def _delta_power(k: int) -> _Q:
    # DELTA = -(1 + A^4) * A^-2; the A-power is applied by the caller
    p = _DELTA_POWERS.get(k)
    if p is None:
        p = _Q([-1, 0, 0, 0, -1]) ** k
        _DELTA_POWERS[k] = p
    return p


A = LaurentPoly({1: 1})
ONE = RationalFn(1)
ZERO = RationalFn(0)


def qint(n: int) -> LaurentPoly:
    """Quantum integer ``[n] = (A^{2n} - A^{-2n}) / (A^2 - A^{-2})``."""
    if n < 0:
        raise ValueError("qint needs n >= 0")
    return LaurentPoly({2 * (n - 1 - 2 * j): 1 for j in range(n)})


def delta_closed(n: int) -> LaurentPoly:
    """Value of the unknot coloured by the n-th Jones-Wenzl projector."""
    if n < 0:
        raise ValueError("delta_closed needs n >= 0")
    return qint(n + 1) * (-1) ** n


DELTA = delta_closed(1)


def common_denominator(values: Iterable[RationalFn]) -> LaurentPoly:
    """Least common multiple of the (primitive, integral) denominators."""
    acc = _Z(1)
    for x in values:
        d = RationalFn._coerce(x)._d
        if d.degree() > 0:
            acc = acc * d // acc.gcd(d)
    return LaurentPoly._raw(0, _Q(acc))


def eval_complex(f: LaurentPoly | RationalFn, z: complex) -> complex:
    if z == 0:
        raise PoleError("evaluation at z = 0")
    return f.eval_complex(complex(z))

"""Powers of diagonal ("recursive") tangles and the twist families they generate.

A tangle ``R = sum_s alpha_s G[s,s]`` is diagonal in the graph basis, so
``<R^n, T>`` only sees the diagonal of ``T`` and collapses to a finite sum
of ``n``-th powers.  Full twists are such tangles with every ``alpha_s`` a
power of ``A``, which turns the bracket of ``m`` added twists into an
exponential polynomial in ``m``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .cell import AdmissibleSequence, CellElement, ShapeError, all_sequences, from_skein
from .jm import jm_eigenvalue
from .recoupling import cable_crossing_word, color_embed
from .ring import ONE, LaurentPoly, RationalFn, common_denominator, delta_closed, rsum
from .skein import braid_to_skein, braid_writhe

__all__ = [
    "NonMonomialError",
    "FramingError",
    "RecursiveTangle",
    "TwistFamily",
    "pair_power",
    "full_twist",
    "jm_product",
    "twist_family",
    "cabled_word",
    "full_twist_word",
    "braid_to_cell",
    "colored_jones_twist",
]


class NonMonomialError(ValueError):
    """A diagonal entry of the tangle is not of the form +-A^e."""


class FramingError(ValueError):
    """The bracket times the framing factor did not clear to a Laurent polynomial."""


@dataclass(frozen=True)
class RecursiveTangle:
    k: int
    i: int
    alpha: Mapping[AdmissibleSequence, RationalFn] = field(default_factory=dict)

    def __post_init__(self):
        for s in self.alpha:
            if (s.k, s.i) != (self.k, self.i):
                raise ShapeError(f"{s} is not a path of TL_({self.k},{self.i})")
        object.__setattr__(self, "alpha", {s: RationalFn._coerce(c) for s, c in self.alpha.items()})

    def to_cell(self) -> CellElement:
        return CellElement.diagonal(self.k, self.i, self.alpha)

    @classmethod
    def from_cell(cls, x: CellElement) -> "RecursiveTangle":
        if not x.is_diagonal():
            raise ShapeError("element has off-diagonal terms")
        return cls(x.k, x.i, {s: c for (s, _), c in x.terms.items()})

    def monomials(self) -> dict[AdmissibleSequence, tuple[int, int]]:
        """``s -> (sign, e)`` with ``alpha_s = sign * A^e``."""
        out = {}
        for s in all_sequences(self.k, self.i):
            c = self.alpha.get(s)
            um = c.unit_monomial() if c is not None else None
            if um is None:
                raise NonMonomialError(f"alpha at {s} is {c}, not a signed power of A")
            out[s] = um
        return out


def pair_power(R: RecursiveTangle, T: CellElement, n: int) -> RationalFn:
    """``<R^n, T> = sum_u alpha_u^n beta_uu Delta_weight(u)``."""
    if (R.k, R.i) != (T.k, T.i):
        raise ShapeError("tangle and element live in different algebras")
    if n < 0:
        raise ValueError("n must be nonnegative")
    vals = []
    for (u, v), beta in T.terms.items():
        if u != v:
            continue
        a = R.alpha.get(u)
        if a is None and n > 0:
            continue  # R^0 is the identity even where alpha vanishes
        scale = ONE if n == 0 else a**n
        vals.append(scale * beta * RationalFn(delta_closed(u.weight)))
    return rsum(vals)


def jm_product(powers: Sequence[int], k: int, i: int) -> RecursiveTangle:
    """``L_2^{p_2} ... L_k^{p_k}``; ``powers`` lists ``p_2..p_k``."""
    if len(powers) != k - 1:
        raise ValueError(f"expected {k - 1} exponents")
    if any(p < 0 for p in powers):
        raise ValueError("exponents must be nonnegative")
    alpha = {}
    for s in all_sequences(k, i):
        c = ONE
        for j, p in enumerate(powers, start=2):
            c = c * jm_eigenvalue(s, j) ** p
        alpha[s] = c
    return RecursiveTangle(k, i, alpha)


def full_twist(k: int, i: int) -> RecursiveTangle:
    if k < 2:
        raise ValueError("a full twist needs k >= 2")
    return jm_product([1] * (k - 1), k, i)


@dataclass(frozen=True)
class TwistFamily:
    """``p_m = sum (sign * A^exponent)^m * q`` over the stored terms.

    ``writhe_per_twist`` and ``base_writhe`` give ``w = base + m * per``.
    """

    terms: tuple[tuple[int, int, RationalFn], ...]
    writhe_per_twist: int = 0
    base_writhe: int = 0
    i: int = 1

    def evaluate(self, m: int) -> RationalFn:
        if m < 0:
            raise ValueError("m must be nonnegative")
        vals = [q.shift(e * m) * (sign**m) for sign, e, q in self.terms]
        return rsum(vals)

    def writhe(self, m: int) -> int:
        return self.base_writhe + m * self.writhe_per_twist

    def framing_exponent(self, m: int) -> int:
        return -(self.i * self.i + 2 * self.i) * self.writhe(m)

    def jones(self, m: int, normalize_unknot: bool = False) -> LaurentPoly:
        val = self.evaluate(m).shift(self.framing_exponent(m))
        if normalize_unknot:
            val = val / RationalFn(delta_closed(self.i))
        if not val.is_laurent():
            raise FramingError(f"J at m={m} has denominator {val.den}")
        return val.to_laurent()

    def common_denominator(self) -> LaurentPoly:
        """A polynomial ``Q`` with every ``q * Q`` Laurent."""
        return common_denominator(q for _, _, q in self.terms)

    def cleared_terms(self) -> list[tuple[int, int, LaurentPoly]]:
        Q = RationalFn(self.common_denominator())
        return [(sign, e, (q * Q).to_laurent()) for sign, e, q in self.terms]

    def to_records(self) -> list[dict]:
        return [{"sign": sign, "exponent": e, "q": q.to_json()} for sign, e, q in self.terms]

    @classmethod
    def from_records(cls, records, writhe_per_twist=0, base_writhe=0, i=1) -> "TwistFamily":
        terms = tuple((int(r["sign"]), int(r["exponent"]), RationalFn.from_json(r["q"])) for r in records)
        return cls(terms, writhe_per_twist, base_writhe, i)

    def to_json(self) -> dict:
        return {
            "i": self.i,
            "writhe_per_twist": self.writhe_per_twist,
            "base_writhe": self.base_writhe,
            "terms": self.to_records(),
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "TwistFamily":
        return cls.from_records(data["terms"], data["writhe_per_twist"], data["base_writhe"], data["i"])


def twist_family(R: RecursiveTangle, T: CellElement, writhe_per_twist: int = 0, base_writhe: int = 0) -> TwistFamily:
    """Group ``<R^m, T>`` by the monomial ``alpha_u``."""
    if (R.k, R.i) != (T.k, T.i):
        raise ShapeError("tangle and element live in different algebras")
    mono = R.monomials()
    groups: dict[tuple[int, int], list[RationalFn]] = {}
    for (u, v), beta in T.terms.items():
        if u == v:
            groups.setdefault(mono[u], []).append(beta * RationalFn(delta_closed(u.weight)))
    terms = []
    for (sign, e), vals in sorted(groups.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        q = rsum(vals)
        if not q.is_zero():
            terms.append((sign, e, q))
    return TwistFamily(tuple(terms), writhe_per_twist, base_writhe, R.i)


# -- braids on coloured strands ---------------------------------------------


def cabled_word(word: Sequence[int], i: int) -> list[int]:
    """Replace each crossing of ``i``-strand cables by its ``i*i`` strand crossings."""
    out: list[int] = []
    for g in word:
        j = abs(g)
        sub = cable_crossing_word(i, i, offset=(j - 1) * i)
        if g > 0:
            out.extend(sub)
        else:
            out.extend(-x for x in reversed(sub))
    return out


def full_twist_word(k: int) -> list[int]:
    """``(s_1 ... s_{k-1})^k``."""
    return list(range(1, k)) * k


def braid_to_cell(word: Sequence[int], k: int, i: int) -> CellElement:
    """A braid on ``k`` strands coloured ``i``, projected and written in the graph basis."""
    n = k * i
    x = color_embed(braid_to_skein(cabled_word(word, i), n), k, i)
    return from_skein(x, k, i)


def colored_jones_twist(
    tangle: CellElement | Sequence[int],
    i: int,
    m: int,
    *,
    k: int | None = None,
    base_writhe: int | None = None,
    writhe_per_twist: int | None = None,
    normalize_unknot: bool = False,
) -> LaurentPoly:
    """``J_i`` of the closure of ``tangle`` after inserting ``m`` full twists.

    A braid word fixes its own writhe (the exponent sum); an abstract
    element needs ``base_writhe`` from the caller.
    """
    if isinstance(tangle, CellElement):
        T = tangle
        k = T.k
        if T.i != i:
            raise ShapeError("colour of the element does not match i")
        if base_writhe is None:
            raise ValueError("an abstract tangle needs base_writhe")
    else:
        word = list(tangle)
        if k is None:
            k = max((abs(g) for g in word), default=0) + 1
        T = braid_to_cell(word, k, i)
        if base_writhe is None:
            base_writhe = braid_writhe(word)
    if writhe_per_twist is None:
        writhe_per_twist = k * (k - 1)
    if k == 1:
        R = RecursiveTangle(1, i, {s: ONE for s in all_sequences(1, i)})
    else:
        R = full_twist(k, i)
    fam = twist_family(R, T, writhe_per_twist, base_writhe)
    return fam.jones(m, normalize_unknot)

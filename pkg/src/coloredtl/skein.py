"""Diagrammatic Temperley-Lieb calculus.

Crossingless matchings are composed by stacking, closed loops are erased at
the cost of a factor ``DELTA`` each, and crossings are resolved with the
Kauffman bracket ``s_j = A*1 + A^-1*e_j``.  Everything here is brute force on
purpose: the closed formulas elsewhere in the package are checked against it.

Diagrams may be rectangular (``bottom`` points below, ``top`` points above),
which is what trivalent vertices and fusion trees need.  Points are labelled
internally as ``0..bottom-1`` along the bottom edge and ``bottom..bottom+top-1``
along the top edge, both left to right.  The product ``x @ y`` puts ``x`` on
top of ``y``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from .ring import DELTA, ONE, ZERO, A, LaurentPoly, ProductSum, RationalFn, rsum

__all__ = [
    "PlanarDiagram",
    "SkeinElement",
    "StrandMismatchError",
    "BraidWordError",
    "identity_diagram",
    "generator_e",
    "all_diagrams",
    "catalan",
    "compose",
    "reflect",
    "inner_product",
    "trace_closure_value",
    "braid_to_skein",
    "braid_act",
    "bracket_state_sum",
    "braid_writhe",
]


class StrandMismatchError(ValueError):
    """Raised when two diagrams or elements cannot be composed or paired."""


class BraidWordError(ValueError):
    """Raised for a malformed braid word (bad generator index or token)."""


class PlanarDiagram:
    """A crossingless matching between ``bottom`` and ``top`` boundary points.

    ``partner[p]`` is the point matched with ``p``.
    """

    __slots__ = ("bottom", "top", "partner", "_hash")

    def __init__(self, bottom: int, top: int, partner: Sequence[int], check: bool = True):
        self.bottom = bottom
        self.top = top
        self.partner = tuple(partner)
        self._hash = hash((bottom, top, self.partner))
        if check:
            self._validate()

    def _validate(self) -> None:
        size = self.bottom + self.top
        if len(self.partner) != size:
            raise ValueError("partner table has the wrong length")
        for p, q in enumerate(self.partner):
            if not 0 <= q < size or q == p or self.partner[q] != p:
                raise ValueError(f"not a perfect matching at point {p}")
        if not self.is_planar():
            raise ValueError("matching is not planar")

    @classmethod
    def from_pairs(cls, bottom: int, top: int, pairs: Iterable[tuple[int, int]]) -> "PlanarDiagram":
        partner = [-1] * (bottom + top)
        for p, q in pairs:
            partner[p] = q
            partner[q] = p
        return cls(bottom, top, partner)

    @property
    def n(self) -> int:
        if self.bottom != self.top:
            raise StrandMismatchError("rectangular diagram has no single strand count")
        return self.bottom

    def _ccw(self, p: int) -> int:
        # counterclockwise position: bottom left to right, then top right to left
        if p < self.bottom:
            return p
        return self.bottom + self.top - 1 - (p - self.bottom)

    def _from_ccw(self, c: int) -> int:
        if c < self.bottom:
            return c
        return self.bottom + (self.bottom + self.top - 1 - c)

    def ccw_pairs(self) -> list[tuple[int, int]]:
        """Matched pairs in 1-based counterclockwise labels, sorted."""
        out = set()
        for p, q in enumerate(self.partner):
            a, b = sorted((self._ccw(p) + 1, self._ccw(q) + 1))
            out.add((a, b))
        return sorted(out)

    @classmethod
    def from_ccw_pairs(cls, bottom: int, top: int, pairs: Iterable[Sequence[int]]) -> "PlanarDiagram":
        probe = cls.__new__(cls)
        probe.bottom, probe.top = bottom, top
        return cls.from_pairs(bottom, top, [(probe._from_ccw(a - 1), probe._from_ccw(b - 1)) for a, b in pairs])

    def is_planar(self) -> bool:
        arcs = [(self._ccw(p), self._ccw(q)) for p, q in enumerate(self.partner)]
        arcs = [(a, b) for a, b in arcs if a < b]
        for a, b in arcs:
            for c, d in arcs:
                if a < c < b < d:
                    return False
        return True

    def is_identity(self) -> bool:
        return self.bottom == self.top and all(self.partner[j] == self.bottom + j for j in range(self.bottom))

    def through_strands(self) -> int:
        return sum(1 for p in range(self.bottom) if self.partner[p] >= self.bottom)

    def __eq__(self, other):
        if not isinstance(other, PlanarDiagram):
            return NotImplemented
        return self.bottom == other.bottom and self.top == other.top and self.partner == other.partner

    def __hash__(self):
        return self._hash

    def __lt__(self, other: "PlanarDiagram"):
        return (self.bottom, self.top, self.partner) < (other.bottom, other.top, other.partner)

    def __repr__(self):
        return f"PlanarDiagram({self.bottom}, {self.top}, {self.ccw_pairs()})"


def identity_diagram(n: int) -> PlanarDiagram:
    return PlanarDiagram(n, n, [n + j for j in range(n)] + list(range(n)), check=False)


def generator_e(i: int, n: int) -> PlanarDiagram:
    """The cup-cap diagram ``e_i`` of TL_n (1-based ``i``)."""
    if not 1 <= i <= n - 1:
        raise IndexError(f"e_{i} does not exist in TL_{n}")
    partner = [n + j for j in range(n)] + list(range(n))
    a, b = i - 1, i
    partner[a], partner[b] = b, a
    partner[n + a], partner[n + b] = n + b, n + a
    return PlanarDiagram(n, n, partner, check=False)


def catalan(n: int) -> int:
    c = 1
    for j in range(n):
        c = c * 2 * (2 * j + 1) // (j + 2)
    return c


def _noncrossing_matchings(points: list[int]) -> Iterator[list[tuple[int, int]]]:
    if not points:
        yield []
        return
    first = points[0]
    for j in range(1, len(points), 2):
        inside, outside = points[1:j], points[j + 1:]
        for m1 in _noncrossing_matchings(inside):
            for m2 in _noncrossing_matchings(outside):
                yield [(first, points[j])] + m1 + m2


def all_diagrams(bottom: int, top: int | None = None) -> list[PlanarDiagram]:
    """Every crossingless matching with the given boundary, sorted."""
    top = bottom if top is None else top
    if (bottom + top) % 2:
        return []
    probe = PlanarDiagram.__new__(PlanarDiagram)
    probe.bottom, probe.top = bottom, top
    out = []
    for m in _noncrossing_matchings(list(range(bottom + top))):
        out.append(PlanarDiagram.from_pairs(bottom, top, [(probe._from_ccw(a), probe._from_ccw(b)) for a, b in m]))
    return sorted(out)


@lru_cache(maxsize=1 << 20)
def _compose_diagrams(x: PlanarDiagram, y: PlanarDiagram) -> tuple[PlanarDiagram, int]:
    """Stack ``x`` on top of ``y``; return the result and the number of closed loops."""
    m = x.bottom
    if y.top != m:
        raise StrandMismatchError(f"cannot stack a {x.bottom}-point bottom on a {y.top}-point top")
    X, Y = x.partner, y.partner
    yb, xt = y.bottom, x.top
    res = [-1] * (yb + xt)
    seen = [False] * m
    for start in range(yb + xt):
        if res[start] >= 0:
            continue
        in_y = start < yb
        p = start if in_y else m + (start - yb)
        while True:
            if in_y:
                q = Y[p]
                if q < yb:
                    end = q
                    break
                mid = q - yb
                seen[mid] = True
                in_y, p = False, mid
            else:
                q = X[p]
                if q >= m:
                    end = yb + (q - m)
                    break
                seen[q] = True
                in_y, p = True, yb + q
        res[start] = end
        res[end] = start
    loops = 0
    for s in range(m):
        if seen[s]:
            continue
        loops += 1
        p = s
        while True:
            seen[p] = True
            q = X[p]  # stays in the middle: x-bottom to x-bottom
            seen[q] = True
            p = Y[yb + q] - yb  # y-top to y-top
            if p == s:
                break
    return PlanarDiagram(yb, xt, res, check=False), loops


def _tensor_diagrams(x: PlanarDiagram, y: PlanarDiagram) -> PlanarDiagram:
    xb, xt, yb, yt = x.bottom, x.top, y.bottom, y.top
    b, t = xb + yb, xt + yt

    def relabel_x(p):
        return p if p < xb else b + (p - xb)

    def relabel_y(p):
        return xb + p if p < yb else b + xt + (p - yb)

    partner = [0] * (b + t)
    for p, q in enumerate(x.partner):
        partner[relabel_x(p)] = relabel_x(q)
    for p, q in enumerate(y.partner):
        partner[relabel_y(p)] = relabel_y(q)
    return PlanarDiagram(b, t, partner, check=False)


def _reflect_diagram(d: PlanarDiagram) -> PlanarDiagram:
    b, t = d.bottom, d.top

    def swap(p):
        return t + p if p < b else p - b

    partner = [0] * (b + t)
    for p, q in enumerate(d.partner):
        partner[swap(p)] = swap(q)
    return PlanarDiagram(t, b, partner, check=False)


@lru_cache(maxsize=1 << 18)
def _closure_loops(d: PlanarDiagram) -> int:
    """Loops in the trace closure (top point j joined to bottom point j)."""
    n = d.n
    seen = [False] * (2 * n)
    loops = 0
    for s in range(2 * n):
        if seen[s]:
            continue
        loops += 1
        p = s
        while not seen[p]:
            seen[p] = True
            q = d.partner[p]
            seen[q] = True
            p = q + n if q < n else q - n
    return loops


class SkeinElement:
    """A Q(A)-linear combination of planar diagrams with a common boundary."""

    __slots__ = ("bottom", "top", "terms")

    def __init__(self, bottom: int, top: int, terms: Mapping[PlanarDiagram, RationalFn] | None = None):
        self.bottom = bottom
        self.top = top
        self.terms: dict[PlanarDiagram, RationalFn] = {}
        for d, c in (terms or {}).items():
            if d.bottom != bottom or d.top != top:
                raise StrandMismatchError("diagram boundary does not match element boundary")
            c = RationalFn._coerce(c)
            if not c.is_zero():
                self.terms[d] = c

    @classmethod
    def identity(cls, n: int) -> "SkeinElement":
        return cls(n, n, {identity_diagram(n): ONE})

    @classmethod
    def from_diagram(cls, d: PlanarDiagram, coeff=ONE) -> "SkeinElement":
        return cls(d.bottom, d.top, {d: coeff})

    @classmethod
    def zero(cls, bottom: int, top: int | None = None) -> "SkeinElement":
        return cls(bottom, bottom if top is None else top)

    @property
    def n(self) -> int:
        if self.bottom != self.top:
            raise StrandMismatchError("rectangular element has no single strand count")
        return self.bottom

    def coefficient(self, d: PlanarDiagram) -> RationalFn:
        return self.terms.get(d, ZERO)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def _check_shape(self, other: "SkeinElement") -> None:
        if (self.bottom, self.top) != (other.bottom, other.top):
            raise StrandMismatchError(
                f"boundary mismatch: ({self.bottom},{self.top}) vs ({other.bottom},{other.top})"
            )

    def __add__(self, other: "SkeinElement") -> "SkeinElement":
        self._check_shape(other)
        out = dict(self.terms)
        for d, c in other.terms.items():
            out[d] = out[d] + c if d in out else c
        return SkeinElement(self.bottom, self.top, out)

    def __neg__(self):
        return SkeinElement(self.bottom, self.top, {d: -c for d, c in self.terms.items()})

    def __sub__(self, other: "SkeinElement") -> "SkeinElement":
        return self + (-other)

    def __mul__(self, scalar):
        scalar = RationalFn._coerce(scalar)
        if scalar is NotImplemented:
            return NotImplemented
        return SkeinElement(self.bottom, self.top, {d: c * scalar for d, c in self.terms.items()})

    __rmul__ = __mul__

    def __matmul__(self, other: "SkeinElement") -> "SkeinElement":
        return compose(self, other)

    def __eq__(self, other):
        if not isinstance(other, SkeinElement):
            return NotImplemented
        return (self.bottom, self.top) == (other.bottom, other.top) and self.terms == other.terms

    def __hash__(self):
        return hash((self.bottom, self.top, frozenset(self.terms.items())))

    def tensor(self, other: "SkeinElement") -> "SkeinElement":
        """Place ``other`` to the right of ``self``."""
        acc: dict[PlanarDiagram, ProductSum] = {}
        for dx, cx in self.terms.items():
            for dy, cy in other.terms.items():
                acc.setdefault(_tensor_diagrams(dx, dy), ProductSum()).add(cx, cy)
        return SkeinElement(self.bottom + other.bottom, self.top + other.top, {d: s.value() for d, s in acc.items()})

    def reflect(self) -> "SkeinElement":
        return reflect(self)

    def trace(self) -> RationalFn:
        return trace_closure_value(self)

    def to_json(self) -> dict:
        return {
            "bottom": self.bottom,
            "top": self.top,
            "terms": [{"pairs": [list(p) for p in d.ccw_pairs()], "coeff": c.to_json()} for d, c in sorted(self.terms.items())],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "SkeinElement":
        b, t = int(data["bottom"]), int(data["top"])
        terms = {}
        for rec in data["terms"]:
            terms[PlanarDiagram.from_ccw_pairs(b, t, rec["pairs"])] = RationalFn.from_json(rec["coeff"])
        return cls(b, t, terms)

    def __repr__(self):
        if not self.terms:
            return f"SkeinElement({self.bottom},{self.top}: 0)"
        body = " + ".join(f"({c})*{d.ccw_pairs()}" for d, c in sorted(self.terms.items()))
        return f"SkeinElement({self.bottom},{self.top}: {body})"


def compose(x: SkeinElement, y: SkeinElement) -> SkeinElement:
    """``x`` stacked on top of ``y``; each closed loop contributes ``DELTA``."""
    if x.bottom != y.top:
        raise StrandMismatchError(f"cannot compose: {x.bottom} points meet {y.top} points")
    acc: dict[PlanarDiagram, ProductSum] = {}
    for dx, cx in x.terms.items():
        for dy, cy in y.terms.items():
            d, loops = _compose_diagrams(dx, dy)
            s = acc.get(d)
            if s is None:
                s = acc[d] = ProductSum()
            s.add(cx, cy, loops)
    return SkeinElement(y.bottom, x.top, {d: s.value() for d, s in acc.items()})


def reflect(x: SkeinElement) -> SkeinElement:
    """Mirror in a horizontal line; an anti-homomorphism and an involution."""
    return SkeinElement(x.top, x.bottom, {_reflect_diagram(d): c for d, c in x.terms.items()})


def trace_closure_value(x: SkeinElement) -> RationalFn:
    """Close top point j to bottom point j around the side and evaluate."""
    x.n  # square elements only
    return rsum(c * DELTA ** _closure_loops(d) for d, c in x.terms.items())


def inner_product(L: SkeinElement, F: SkeinElement) -> RationalFn:
    """The bilinear form ``<L, F> = trace(L @ reflect(F))``."""
    if (L.bottom, L.top) != (F.bottom, F.top) or L.bottom != L.top:
        raise StrandMismatchError("inner product needs two square elements of the same size")
    acc = ProductSum()
    for dl, cl in L.terms.items():
        for df, cf in F.terms.items():
            d, loops = _compose_diagrams(dl, _reflect_diagram(df))
            acc.add(cl, cf, loops + _closure_loops(d))
    return acc.value()


def _check_word(word: Sequence[int], n: int) -> None:
    for g in word:
        if not isinstance(g, int) or g == 0 or abs(g) > n - 1:
            raise BraidWordError(f"generator {g!r} is not valid on {n} strands")


_A = RationalFn(A)
_AINV = RationalFn(LaurentPoly({-1: 1}))


def braid_to_skein(word: Sequence[int], n: int) -> SkeinElement:
    """Kauffman-resolve the braid ``s_{w1} s_{w2} ...`` in TL_n.

    ``+j`` is ``A*1 + A^-1*e_j`` and ``-j`` its inverse ``A^-1*1 + A*e_j``.
    The state sum is collected into the diagram basis after every crossing.
    """
    _check_word(word, n)
    current = SkeinElement.identity(n)
    for g in word:
        j = abs(g)
        a, b = (_A, _AINV) if g > 0 else (_AINV, _A)
        crossing = SkeinElement(n, n, {identity_diagram(n): a, generator_e(j, n): b})
        current = compose(current, crossing)
    return current


def braid_act(word: Sequence[int], x: SkeinElement) -> SkeinElement:
    """``braid_to_skein(word) @ x`` without expanding the braid on its own.

    Crossings are applied to ``x`` one at a time from the bottom of the word,
    so the work is bounded by the size of ``x`` rather than by TL_n.
    """
    n = x.top
    _check_word(word, n)
    current = x
    for g in reversed(word):
        j = abs(g)
        a, b = (_A, _AINV) if g > 0 else (_AINV, _A)
        crossing = SkeinElement(n, n, {identity_diagram(n): a, generator_e(j, n): b})
        current = compose(crossing, current)
    return current


def braid_writhe(word: Sequence[int]) -> int:
    return sum(1 if g > 0 else -1 for g in word)


def bracket_state_sum(word: Sequence[int], n: int) -> LaurentPoly:
    """Kauffman bracket of the braid closure by enumerating all 2^c states.

    Independent of the composition engine: each state is turned into a
    graph on the braid's level points and its loops are counted with a
    union-find.
    """
    _check_word(word, n)
    c = len(word)
    total: dict[int, LaurentPoly] = {}
    for state in range(1 << c):
        parent = list(range((c + 1) * n))

        def find(u):
            while parent[u] != u:
                parent[u] = parent[parent[u]]
                u = parent[u]
            return u

        def union(u, v):
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv

        a_power = 0
        for level, g in enumerate(word):
            j = abs(g) - 1
            smooth_e = (state >> level) & 1
            # the A-smoothing of a positive crossing is the identity
            a_power += (1 if g > 0 else -1) * (-1 if smooth_e else 1)
            for p in range(n):
                if p in (j, j + 1):
                    continue
                union(level * n + p, (level + 1) * n + p)
            if smooth_e:
                union(level * n + j, level * n + j + 1)
                union((level + 1) * n + j, (level + 1) * n + j + 1)
            else:
                union(level * n + j, (level + 1) * n + j)
                union(level * n + j + 1, (level + 1) * n + j + 1)
        for p in range(n):
            union(c * n + p, p)
        loops = len({find(u) for u in range((c + 1) * n)})
        total[a_power] = total.get(a_power, 0) + DELTA ** loops
    out = LaurentPoly()
    for e, poly in total.items():
        out = out + poly.shift(e)
    return out

"""Jones-Wenzl projectors, coloured trivalent networks and their evaluations.

Every closed-form coefficient here (``theta_closed``, ``lambda_closed``,
``fusion_coeff``) has a diagrammatic twin (``*_oracle``) computed with the
skein engine; the test-suite holds them equal.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .ring import LaurentPoly, RationalFn, delta_closed, qint
from .skein import (
    PlanarDiagram,
    SkeinElement,
    StrandMismatchError,
    braid_act,
    compose,
    generator_e,
    reflect,
    trace_closure_value,
)

__all__ = [
    "MAX_ORACLE_STRANDS",
    "OracleBudgetError",
    "InadmissibleError",
    "ColoredVertexSpec",
    "is_admissible",
    "jones_wenzl",
    "set_projector_cache",
    "projector_tensor",
    "color_embed",
    "trivalent_vertex",
    "cable_crossing_word",
    "delta_oracle",
    "theta_oracle",
    "lambda_oracle",
    "theta_closed",
    "lambda_closed",
    "fusion_coeff",
    "fusion_check",
    "fusion_tree",
    "build_D",
]

MAX_ORACLE_STRANDS = 12


class OracleBudgetError(RuntimeError):
    """The requested diagrammatic computation exceeds the strand budget."""


class InadmissibleError(ValueError):
    pass


def is_admissible(x: int, y: int, z: int) -> bool:
    """Parity plus the three triangle inequalities."""
    if min(x, y, z) < 0:
        return False
    return (x + y + z) % 2 == 0 and x <= y + z and y <= x + z and z <= x + y


@dataclass(frozen=True)
class ColoredVertexSpec:
    """Colours ``a, b`` on the legs and ``c`` on the trunk of a trivalent vertex."""

    a: int
    b: int
    c: int

    def __post_init__(self):
        if not is_admissible(self.a, self.b, self.c):
            raise InadmissibleError(f"({self.a},{self.b},{self.c}) is not admissible")

    @property
    def internal_arcs(self) -> tuple[int, int, int]:
        """Arc counts ``(a-b, b-c, c-a)`` joining each pair of legs."""
        a, b, c = self.a, self.b, self.c
        return (a + b - c) // 2, (b + c - a) // 2, (c + a - b) // 2


def _budget(strands: int) -> None:
    if strands > MAX_ORACLE_STRANDS:
        raise OracleBudgetError(f"{strands} strands exceeds the oracle budget of {MAX_ORACLE_STRANDS}")


# -- Jones-Wenzl projectors -------------------------------------------------

_jw_lock = threading.Lock()
_jw_memo: dict[int, SkeinElement] = {0: SkeinElement.identity(0)}
_jw_cache = None


def set_projector_cache(cache) -> None:
    """Install an on-disk cache with ``get(n)`` and ``put(n, element)``; ``None`` disables it."""
    global _jw_cache
    _jw_cache = cache


def jones_wenzl(n: int) -> SkeinElement:
    """The n-th Jones-Wenzl idempotent ``f_n`` in TL_n.

    Wenzl's recursion, written with loop values so the signs match
    ``e_i^2 = DELTA e_i``::

        f_n = f_{n-1} - (Delta_{n-2} / Delta_{n-1}) f_{n-1} e_{n-1} f_{n-1}
    """
    if n < 0:
        raise ValueError("projector index must be nonnegative")
    _budget(n)
    with _jw_lock:
        return _jones_wenzl_locked(n)


def _jones_wenzl_locked(n: int) -> SkeinElement:
    if n in _jw_memo:
        return _jw_memo[n]
    if _jw_cache is not None:
        cached = _jw_cache.get(n)
        if cached is not None:
            _jw_memo[n] = cached
            return cached
    if n == 1:
        f = SkeinElement.identity(1)
    else:
        prev = _jones_wenzl_locked(n - 1).tensor(SkeinElement.identity(1))
        e = SkeinElement.from_diagram(generator_e(n - 1, n))
        ratio = RationalFn(delta_closed(n - 2), delta_closed(n - 1))
        f = prev - compose(prev, compose(e, prev)) * ratio
    _jw_memo[n] = f
    if _jw_cache is not None:
        _jw_cache.put(n, f)
    return f


def projector_tensor(colors: Sequence[int]) -> SkeinElement:
    """``f_{c1} (x) f_{c2} (x) ...`` side by side."""
    out = SkeinElement.identity(0)
    for c in colors:
        out = out.tensor(jones_wenzl(c))
    return out


def color_embed(x: SkeinElement, k: int, i: int) -> SkeinElement:
    """Sandwich each group of ``i`` strands, top and bottom, with ``f_i``."""
    if x.bottom != k * i or x.top != k * i:
        raise StrandMismatchError(f"expected an element of TL_{k * i}")
    _budget(k * i)
    if i == 1:
        return x
    F = projector_tensor([i] * k)
    return compose(F, compose(x, F))


# -- trivalent vertices -----------------------------------------------------


def _arcs(a: int, b: int, c: int) -> PlanarDiagram:
    # bottom: a points then b points; top: c points
    m = (a + b - c) // 2
    pairs = [(a - 1 - r, a + r) for r in range(m)]
    bottom = a + b
    pairs += [(p, bottom + p) for p in range(a - m)]
    pairs += [(a + m + q, bottom + (a - m) + q) for q in range(b - m)]
    return PlanarDiagram.from_pairs(bottom, c, pairs)


def trivalent_vertex(spec: ColoredVertexSpec, orientation: str = "merge") -> SkeinElement:
    """The admissible vertex joining legs ``a, b`` to trunk ``c``.

    ``merge`` maps ``a + b`` bottom points to ``c`` top points;
    ``split`` is its mirror image.
    """
    a, b, c = spec.a, spec.b, spec.c
    _budget(max(a + b, c))
    merged = compose(jones_wenzl(c), compose(SkeinElement.from_diagram(_arcs(a, b, c)), projector_tensor([a, b])))
    if orientation == "merge":
        return merged
    if orientation == "split":
        return reflect(merged)
    raise ValueError(f"unknown orientation {orientation!r}")


def fusion_tree(seq: Sequence[int], i: int) -> SkeinElement:
    """Fuse ``len(seq)`` strands of colour ``i`` through the colours in ``seq``.

    Maps ``len(seq) * i`` bottom points to ``seq[-1]`` top points; ``seq[0]``
    must be ``i``.  Inner projectors that the idempotent relation makes
    redundant are omitted.
    """
    seq = tuple(seq)
    if not seq or seq[0] != i:
        raise InadmissibleError("a fusion tree starts with the strand colour")
    _budget(len(seq) * i)
    return _fusion_tree(seq, i)


@lru_cache(maxsize=None)
def _fusion_tree(seq: tuple[int, ...], i: int) -> SkeinElement:
    if len(seq) == 1:
        return jones_wenzl(i)
    a, c = seq[-2], seq[-1]
    if not is_admissible(a, i, c):
        raise InadmissibleError(f"({a},{i},{c}) is not admissible")
    below = _fusion_tree(seq[:-1], i).tensor(jones_wenzl(i))
    return compose(jones_wenzl(c), compose(SkeinElement.from_diagram(_arcs(a, i, c)), below))


def build_D(seq: Sequence[int], i: int) -> SkeinElement:
    """The graph element ``D^i_{a_1..a_{2n-1}}`` of TL_(n,i) as a skein element.

    The first ``n`` entries label the fusion tree at the top, the last ``n``
    (read backwards) the one at the bottom; both meet in the middle colour.
    """
    seq = tuple(seq)
    if len(seq) % 2 == 0:
        raise InadmissibleError("index sequence must have odd length 2n-1")
    n = (len(seq) + 1) // 2
    if seq[0] != i or seq[-1] != i:
        raise InadmissibleError("index sequence must start and end with the colour i")
    for x, y in zip(seq, seq[1:]):
        if not is_admissible(y, x, i):
            raise InadmissibleError(f"({y},{x},{i}) is not admissible")
    _budget(n * i)
    top_tree = fusion_tree(seq[:n], i)
    bottom_tree = fusion_tree(seq[n - 1:][::-1], i)
    return compose(reflect(top_tree), bottom_tree)


# -- network evaluations ----------------------------------------------------


def delta_oracle(n: int) -> RationalFn:
    """Loop coloured ``n``: trace closure of ``f_n``."""
    return trace_closure_value(jones_wenzl(n))


def theta_oracle(a: int, b: int, c: int) -> RationalFn:
    spec = ColoredVertexSpec(a, b, c)
    _budget(a + b + c)
    v = trivalent_vertex(spec, "merge")
    return trace_closure_value(compose(v, reflect(v)))


def cable_crossing_word(p: int, q: int, offset: int = 0) -> list[int]:
    """Positive braid word taking a cable of ``p`` strands over/past ``q`` strands.

    The left cable (``p`` strands) ends up on the right.  Words are products
    in algebra order: the first letter is the top-most crossing.
    """
    bottom_up = []
    for r in range(p - 1, -1, -1):
        for s in range(r + 1, r + q + 1):
            bottom_up.append(offset + s)
    return bottom_up[::-1]


def lambda_oracle(a: int, b: int, c: int) -> RationalFn:
    """Twist coefficient of a vertex: crossing its legs ``b, c`` multiplies it by this."""
    spec = ColoredVertexSpec(b, c, a)
    _budget(a + b + c)
    top = trivalent_vertex(spec, "merge")  # legs (b, c) -> a
    bottom = trivalent_vertex(ColoredVertexSpec(c, b, a), "split")  # a -> legs (c, b)
    crossed = braid_act(cable_crossing_word(c, b), bottom)  # legs now ordered (b, c)
    network = compose(top, crossed)
    return trace_closure_value(network) / theta_closed(a, b, c)


def _qfact(n: int) -> LaurentPoly:
    out = LaurentPoly({0: 1})
    for j in range(2, n + 1):
        out = out * qint(j)
    return out


@lru_cache(maxsize=None)
def theta_closed(a: int, b: int, c: int) -> RationalFn:
    """Theta network value from quantum factorials of the internal arc counts."""
    if not is_admissible(a, b, c):
        raise InadmissibleError(f"({a},{b},{c}) is not admissible")
    m, n, p = (a + b - c) // 2, (b + c - a) // 2, (c + a - b) // 2
    num = _qfact(m + n + p + 1) * _qfact(m) * _qfact(n) * _qfact(p) * (-1) ** (m + n + p)
    den = _qfact(m + n) * _qfact(n + p) * _qfact(m + p)
    return RationalFn(num, den)


@lru_cache(maxsize=None)
def lambda_closed(a: int, b: int, c: int) -> RationalFn:
    """``lambda_a^{b,c} = (-1)^{(b+c-a)/2} A^{(a(a+2) - b(b+2) - c(c+2))/2}``."""
    if not is_admissible(a, b, c):
        raise InadmissibleError(f"({a},{b},{c}) is not admissible")
    e = (a * (a + 2) - b * (b + 2) - c * (c + 2)) // 2
    return RationalFn(LaurentPoly({e: (-1) ** ((b + c - a) // 2)}))


def fusion_coeff(i: int, j: int, k: int) -> RationalFn:
    """Coefficient ``Delta_k / theta(i, j, k)`` of the k-channel in the fusion identity."""
    return RationalFn(delta_closed(k)) / theta_closed(i, j, k)


def fusion_check(i: int, j: int) -> SkeinElement:
    """``f_i (x) f_j`` minus its fusion expansion; zero when the identity holds."""
    _budget(i + j)
    lhs = projector_tensor([i, j])
    rhs = SkeinElement.zero(i + j)
    for k in range(abs(i - j), i + j + 1, 2):
        v = trivalent_vertex(ColoredVertexSpec(i, j, k), "merge")
        rhs = rhs + compose(reflect(v), v) * fusion_coeff(i, j, k)
    return lhs - rhs


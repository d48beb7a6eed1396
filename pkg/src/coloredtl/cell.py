"""The cellular graph basis of the coloured Temperley-Lieb algebra TL_(k,i).

Basis elements ``G[s, t]`` are indexed by pairs of admissible sequences of
equal weight and multiply like matrix units, so all algebra below is
combinatorial.  ``to_skein`` and ``from_skein`` move between this
description and concrete diagrams for checking against the skein engine.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from .recoupling import OracleBudgetError, build_D, color_embed, is_admissible, theta_closed
from .ring import ONE, ZERO, RationalFn, delta_closed, rsum
from .skein import SkeinElement, all_diagrams, catalan, compose, inner_product

__all__ = [
    "ShapeError",
    "NotInImageError",
    "AdmissibleSequence",
    "CellElement",
    "BranchingDiagram",
    "is_admissible",
    "weights",
    "sequences",
    "all_sequences",
    "eta",
    "basis_pairs",
    "cell_mul",
    "cell_star",
    "cell_inner",
    "to_skein",
    "from_skein",
    "gram_matrix",
    "exact_rank",
    "verify_cell_datum",
    "branching",
]

ORACLE_SCALE = 8


class ShapeError(ValueError):
    """Operands belong to different algebras TL_(k,i), or a weight is out of range."""


class NotInImageError(ValueError):
    """A skein element is not in the span of the coloured graph basis."""


@dataclass(frozen=True, order=True)
class AdmissibleSequence:
    """A path ``s_1 = i, s_2, ..., s_k`` with ``(s_{j-1}, s_j, i)`` admissible."""

    i: int
    entries: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(x) for x in self.entries))
        if not self.entries or self.entries[0] != self.i:
            raise ValueError(f"sequence must start with {self.i}: {self.entries}")
        for a, b in zip(self.entries, self.entries[1:]):
            if not is_admissible(a, b, self.i):
                raise ValueError(f"({a},{b},{self.i}) is not admissible in {self.entries}")

    @property
    def k(self) -> int:
        return len(self.entries)

    @property
    def weight(self) -> int:
        return self.entries[-1]

    def __getitem__(self, j: int) -> int:
        """1-based access, matching the usual ``s_j``."""
        return self.entries[j - 1]

    def __str__(self):
        return "(" + ",".join(map(str, self.entries)) + ")"


def weights(k: int, i: int) -> list[int]:
    """Reachable end colours; ``k*i, k*i - 2, ...`` down to 0 or 1 once ``k >= 2``."""
    if k < 1 or i < 0:
        raise ShapeError("need k >= 1 and i >= 0")
    return sorted(_paths(k, i))


@lru_cache(maxsize=None)
def _paths(k: int, i: int) -> dict[int, tuple[tuple[int, ...], ...]]:
    level = {(i,)}
    for _ in range(k - 1):
        level = {p + (c,) for p in level for c in range(abs(p[-1] - i), p[-1] + i + 1, 2)}
    out: dict[int, list] = {}
    for p in sorted(level):
        out.setdefault(p[-1], []).append(p)
    return {w: tuple(ps) for w, ps in out.items()}


def sequences(k: int, i: int, weight: int) -> list[AdmissibleSequence]:
    """All admissible sequences of length ``k`` ending at ``weight``, lexicographic."""
    if weight not in weights(k, i):
        raise ShapeError(f"{weight} is not a weight of TL_({k},{i})")
    return [AdmissibleSequence(i, p) for p in _paths(k, i).get(weight, ())]


def all_sequences(k: int, i: int) -> list[AdmissibleSequence]:
    return [s for w in weights(k, i) for s in sequences(k, i, w)]


def basis_pairs(k: int, i: int) -> list[tuple[AdmissibleSequence, AdmissibleSequence]]:
    """Index set of the graph basis, grouped by weight."""
    out = []
    for w in weights(k, i):
        T = sequences(k, i, w)
        out.extend((s, t) for s in T for t in T)
    return out


@lru_cache(maxsize=None)
def eta(s: AdmissibleSequence) -> RationalFn:
    """Product of ``theta(s_{j+1}, s_j, i) / Delta_{s_{j+1}}`` along the path."""
    out = ONE
    for a, b in zip(s.entries, s.entries[1:]):
        out = out * theta_closed(b, a, s.i) / RationalFn(delta_closed(b))
    return out


# -- the algebra ------------------------------------------------------------

Pair = tuple[AdmissibleSequence, AdmissibleSequence]


@dataclass(frozen=True)
class CellElement:
    """A finite combination of graph basis elements ``G[s, t]`` in TL_(k,i)."""

    k: int
    i: int
    terms: Mapping[Pair, RationalFn] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (s, t), c in self.terms.items():
            if s.k != self.k or t.k != self.k or s.i != self.i or t.i != self.i:
                raise ShapeError(f"pair {s},{t} does not belong to TL_({self.k},{self.i})")
            if s.weight != t.weight:
                raise ShapeError(f"pair {s},{t} has unequal weights")
            c = RationalFn._coerce(c)
            if not c.is_zero():
                clean[(s, t)] = c
        object.__setattr__(self, "terms", clean)

    @classmethod
    def basis(cls, s: AdmissibleSequence, t: AdmissibleSequence, coeff=ONE) -> "CellElement":
        return cls(s.k, s.i, {(s, t): coeff})

    @classmethod
    def G(cls, s: Iterable[int], t: Iterable[int], i: int) -> "CellElement":
        s, t = AdmissibleSequence(i, tuple(s)), AdmissibleSequence(i, tuple(t))
        return cls.basis(s, t)

    @classmethod
    def identity(cls, k: int, i: int) -> "CellElement":
        return cls(k, i, {(s, s): ONE for s in all_sequences(k, i)})

    @classmethod
    def zero(cls, k: int, i: int) -> "CellElement":
        return cls(k, i, {})

    @classmethod
    def diagonal(cls, k: int, i: int, values: Mapping[AdmissibleSequence, RationalFn]) -> "CellElement":
        return cls(k, i, {(s, s): c for s, c in values.items()})

    def _check(self, other: "CellElement") -> None:
        if (self.k, self.i) != (other.k, other.i):
            raise ShapeError(f"TL_({self.k},{self.i}) vs TL_({other.k},{other.i})")

    def coefficient(self, s: AdmissibleSequence, t: AdmissibleSequence) -> RationalFn:
        return self.terms.get((s, t), ZERO)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "CellElement") -> "CellElement":
        self._check(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out[key] + c if key in out else c
        return CellElement(self.k, self.i, out)

    def __neg__(self) -> "CellElement":
        return CellElement(self.k, self.i, {key: -c for key, c in self.terms.items()})

    def __sub__(self, other: "CellElement") -> "CellElement":
        return self + (-other)

    def __mul__(self, other) -> "CellElement":
        if isinstance(other, CellElement):
            return cell_mul(self, other)
        c = RationalFn._coerce(other)
        return CellElement(self.k, self.i, {key: v * c for key, v in self.terms.items()})

    def __rmul__(self, scalar) -> "CellElement":
        c = RationalFn._coerce(scalar)
        return CellElement(self.k, self.i, {key: c * v for key, v in self.terms.items()})

    def __pow__(self, n: int) -> "CellElement":
        if n < 0:
            raise ValueError("negative powers are not supported")
        out = CellElement.identity(self.k, self.i)
        for _ in range(n):
            out = cell_mul(out, self)
        return out

    def __eq__(self, other):
        if not isinstance(other, CellElement):
            return NotImplemented
        return (self.k, self.i) == (other.k, other.i) and self.terms == other.terms

    def __hash__(self):
        return hash((self.k, self.i, frozenset(self.terms.items())))

    def star(self) -> "CellElement":
        return cell_star(self)

    def is_diagonal(self) -> bool:
        return all(s == t for s, t in self.terms)

    def to_records(self) -> list[dict]:
        return [
            {"s": list(s.entries), "t": list(t.entries), "coeff": c.to_json()}
            for (s, t), c in sorted(self.terms.items())
        ]

    @classmethod
    def from_records(cls, k: int, i: int, records: Iterable[Mapping]) -> "CellElement":
        out: dict[Pair, RationalFn] = {}
        for r in records:
            key = (AdmissibleSequence(i, tuple(r["s"])), AdmissibleSequence(i, tuple(r["t"])))
            c = RationalFn.from_json(r["coeff"])
            out[key] = out[key] + c if key in out else c
        return cls(k, i, out)

    def __repr__(self):
        body = " + ".join(f"({c})*G[{s},{t}]" for (s, t), c in sorted(self.terms.items()))
        return f"CellElement(TL_({self.k},{self.i}): {body or '0'})"


def cell_mul(x: CellElement, y: CellElement) -> CellElement:
    """Matrix-unit product: ``G[s,t] G[u,v] = [t == u] G[s,v]``."""
    x._check(y)
    by_row: dict[AdmissibleSequence, list] = {}
    for (u, v), c in y.terms.items():
        by_row.setdefault(u, []).append((v, c))
    acc: dict[Pair, list] = {}
    for (s, t), a in x.terms.items():
        for v, b in by_row.get(t, ()):
            acc.setdefault((s, v), []).append(a * b)
    return CellElement(x.k, x.i, {key: rsum(vals) for key, vals in acc.items()})


def cell_star(x: CellElement) -> CellElement:
    """The anti-involution ``G[s,t] -> G[t,s]``."""
    return CellElement(x.k, x.i, {(t, s): c for (s, t), c in x.terms.items()})


def cell_inner(x: CellElement, y: CellElement) -> RationalFn:
    """Bilinear form with ``<G[s,t], G[s,t]> = eta(t)/eta(s) * Delta_weight``, orthogonal otherwise."""
    x._check(y)
    vals = []
    for key, a in x.terms.items():
        b = y.terms.get(key)
        if b is not None:
            s, t = key
            vals.append(a * b * _norm(s, t))
    return rsum(vals)


@lru_cache(maxsize=None)
def _norm(s: AdmissibleSequence, t: AdmissibleSequence) -> RationalFn:
    return eta(t) / eta(s) * RationalFn(delta_closed(s.weight))


# -- bridge to diagrams -----------------------------------------------------


def _oracle_guard(k: int, i: int) -> None:
    if k * i > ORACLE_SCALE:
        raise OracleBudgetError(f"TL_({k},{i}) has {k * i} strands; the oracle bridge stops at {ORACLE_SCALE}")


@lru_cache(maxsize=None)
def basis_skein(s: AdmissibleSequence, t: AdmissibleSequence) -> SkeinElement:
    """``G[s,t]`` drawn as a diagram combination on ``k*i`` strands."""
    _oracle_guard(s.k, s.i)
    seq = s.entries + t.entries[::-1][1:]
    return build_D(seq, s.i) * eta(s).inverse()


def to_skein(x: CellElement) -> SkeinElement:
    _oracle_guard(x.k, x.i)
    out = SkeinElement.zero(x.k * x.i)
    for (s, t), c in sorted(x.terms.items()):
        out = out + basis_skein(s, t) * c
    return out


def from_skein(x: SkeinElement, k: int, i: int) -> CellElement:
    """Coordinates of ``x`` in the graph basis.

    Each coefficient comes from pairing with one basis element, so the answer
    is only meaningful if ``x`` lies in the span; re-expanding and comparing
    detects when it does not.
    """
    _oracle_guard(k, i)
    if x.bottom != k * i or x.top != k * i:
        raise ShapeError(f"expected an element of TL_{k * i}")
    terms = {}
    for s, t in basis_pairs(k, i):
        p = inner_product(x, basis_skein(s, t))
        if not p.is_zero():
            terms[(s, t)] = p / _norm(s, t)
    out = CellElement(k, i, terms)
    if to_skein(out) != x:
        raise NotInImageError("element is not in the span of the coloured graph basis")
    return out


def gram_matrix(elements: list[SkeinElement]) -> list[list[RationalFn]]:
    return [[inner_product(a, b) for b in elements] for a in elements]


def exact_rank(rows: list[list[RationalFn]]) -> int:
    """Rank over Q(A) by Gauss-Jordan elimination."""
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(m)) if not m[r][col].is_zero()), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = m[rank][col].inverse()
        for r in range(len(m)):
            if r != rank and not m[r][col].is_zero():
                f = m[r][col] * inv
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def _diagram_coords(elements: list[SkeinElement], n: int) -> list[list[RationalFn]]:
    diagrams = all_diagrams(n)
    return [[e.coefficient(d) for d in diagrams] for e in elements]


# -- verification -----------------------------------------------------------


def _line(k: int, i: int, name: str, ok: bool, detail: str) -> str:
    return f"({k},{i}) {name} {'PASS' if ok else 'FAIL'} {detail}"


def verify_cell_datum(k: int, i: int, oracle: bool | None = None) -> list[str]:
    """Check the cell-datum axioms for TL_(k,i); one report line per check.

    With ``oracle`` (default: when ``k*i`` is small enough) the checks are
    repeated on concrete diagrams.
    """
    lines = []
    pairs = basis_pairs(k, i)
    dim = len(pairs)
    if oracle is None:
        oracle = k * i <= 6

    if i == 1:
        lines.append(_line(k, i, "dimension", dim == catalan(k), f"{dim} vs Catalan({k})={catalan(k)}"))

    # combinatorial structure
    seqs = all_sequences(k, i)
    ok = True
    for s in seqs:
        for t in seqs:
            if s.weight != t.weight:
                continue
            Gst = CellElement.basis(s, t)
            for u in seqs:
                for v in seqs:
                    if u.weight != v.weight:
                        continue
                    prod = cell_mul(Gst, CellElement.basis(u, v))
                    want = CellElement.basis(s, v) if t == u else CellElement.zero(k, i)
                    ok &= prod == want
    lines.append(_line(k, i, "matrix-units", ok, f"{dim}x{dim} products"))

    # right multiplication stays in the row of s with coefficients independent of s
    ok = True
    for u, v in pairs:
        g = CellElement.basis(u, v)
        for t in seqs:
            rows = {}
            for s in sequences(k, i, t.weight):
                prod = cell_mul(CellElement.basis(s, t), g)
                ok &= all(a == s for a, _ in prod.terms)
                rows[s] = {b: c for (_, b), c in prod.terms.items()}
            ok &= len({frozenset(r.items()) for r in rows.values()}) <= 1
    lines.append(_line(k, i, "right-action", ok, "scalars independent of the row index"))

    ok = True
    for s, t in pairs:
        x = CellElement.basis(s, t)
        ok &= cell_star(cell_star(x)) == x
        for u, v in pairs:
            y = CellElement.basis(u, v)
            ok &= cell_star(cell_mul(x, y)) == cell_mul(cell_star(y), cell_star(x))
    lines.append(_line(k, i, "anti-involution", ok, "(xy)* = y*x* on basis pairs"))

    if not oracle:
        return lines
    _oracle_guard(k, i)
    elems = [basis_skein(s, t) for s, t in pairs]
    gram = gram_matrix(elems)
    diag_ok = all(
        (gram[a][b] == _norm(*pairs[a])) if a == b else gram[a][b].is_zero()
        for a in range(dim)
        for b in range(dim)
    )
    lines.append(_line(k, i, "gram-diagonal", diag_ok, "diagram pairing matches the closed-form norms"))
    nonzero = all(not gram[a][a].is_zero() for a in range(dim))
    lines.append(_line(k, i, "independence", diag_ok and nonzero, f"diagonal Gram matrix of size {dim}, nonzero entries"))

    n = k * i
    embedded = [color_embed(SkeinElement.from_diagram(d), k, i) for d in all_diagrams(n)]
    rank = exact_rank(_diagram_coords(embedded, n))
    lines.append(_line(k, i, "dimension-oracle", rank == dim, f"rank of coloured diagrams {rank} vs {dim}"))

    ok = True
    for a, (s, t) in enumerate(pairs):
        for b, (u, v) in enumerate(pairs):
            lhs = compose(elems[a], elems[b])
            rhs = basis_skein(s, v) if t == u else SkeinElement.zero(n)
            ok &= lhs == rhs
    lines.append(_line(k, i, "product-oracle", ok, "diagram products of basis pairs"))
    return lines


# -- branching diagrams -----------------------------------------------------


@dataclass(frozen=True)
class BranchingDiagram:
    i: int
    levels: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[tuple[int, int], ...], ...]

    def paths(self, weight: int) -> list[tuple[int, ...]]:
        """Paths from the root to ``weight`` on the last level."""
        out = [(self.levels[0][0],)]
        for j, layer in enumerate(self.edges):
            out = [p + (b,) for p in out for a, b in layer if a == p[-1]]
        return [p for p in out if p[-1] == weight]

    def render(self) -> str:
        rows = []
        for j, level in enumerate(self.levels, start=1):
            rows.append(f"level {j}: " + " ".join(map(str, level)))
            if j - 1 < len(self.edges):
                rows.append("  edges: " + " ".join(f"{a}-{b}" for a, b in self.edges[j - 1]))
        return "\n".join(rows)


def branching(k: int, i: int) -> BranchingDiagram:
    levels = tuple(tuple(weights(j, i)) for j in range(1, k + 1))
    edges = tuple(
        tuple((a, b) for a in levels[j] for b in levels[j + 1] if is_admissible(a, b, i))
        for j in range(k - 1)
    )
    return BranchingDiagram(i, levels, edges)


def iter_basis(k: int, i: int) -> Iterator[CellElement]:
    for s, t in basis_pairs(k, i):
        yield CellElement.basis(s, t)

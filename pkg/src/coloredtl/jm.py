"""Jucys-Murphy elements of TL_(k,i) and the idempotents they separate.

``L_j`` acts on ``G[s, t]`` from the left by the squared twist coefficient
of the vertex where the path ``s`` steps from ``s_{j-1}`` to ``s_j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .cell import (
    AdmissibleSequence,
    CellElement,
    ShapeError,
    all_sequences,
    basis_pairs,
    cell_mul,
    cell_star,
    sequences,
    weights,
)
from .recoupling import lambda_closed
from .ring import ONE, RationalFn

__all__ = [
    "JMEigenvalue",
    "jm_eigenvalue",
    "jm_element",
    "eigenvalue_set",
    "spectrum",
    "check_separating",
    "jm_report",
    "ft_interpolation",
    "central_idempotent",
    "irreducible_module",
    "right_action_matrix",
]


@dataclass(frozen=True)
class JMEigenvalue:
    s: AdmissibleSequence
    j: int
    value: RationalFn


@lru_cache(maxsize=None)
def jm_eigenvalue(s: AdmissibleSequence, j: int) -> RationalFn:
    """``c_s(j)``, a pure power of ``A``; ``c_s(1) = 1``."""
    if not 1 <= j <= s.k:
        raise IndexError(f"j={j} outside 1..{s.k}")
    if j == 1:
        return ONE
    lam = lambda_closed(s[j], s[j - 1], s.i)
    return lam * lam


def jm_element(j: int, k: int, i: int) -> CellElement:
    if not 1 <= j <= k:
        raise IndexError(f"j={j} outside 1..{k}")
    return CellElement.diagonal(k, i, {s: jm_eigenvalue(s, j) for s in all_sequences(k, i)})


def eigenvalue_set(j: int, k: int, i: int) -> list[RationalFn]:
    """Distinct eigenvalues of ``L_j`` on TL_(k,i), in first-seen order."""
    seen: dict[RationalFn, None] = {}
    for s in all_sequences(k, i):
        seen.setdefault(jm_eigenvalue(s, j), None)
    return list(seen)


def spectrum(s: AdmissibleSequence) -> tuple[RationalFn, ...]:
    return tuple(jm_eigenvalue(s, j) for j in range(1, s.k + 1))


def _line(k: int, i: int, name: str, ok: bool, detail: str) -> str:
    return f"({k},{i}) {name} {'PASS' if ok else 'FAIL'} {detail}"


def jm_report(k: int, i: int) -> list[str]:
    """Commutation, self-adjointness, separation and interpolation checks."""
    L = [jm_element(j, k, i) for j in range(1, k + 1)]
    lines = []
    comm = all(cell_mul(a, b) == cell_mul(b, a) for a in L for b in L)
    lines.append(_line(k, i, "commute", comm, f"{k * k} pairs"))
    sa = all(cell_star(x) == x for x in L)
    lines.append(_line(k, i, "self-adjoint", sa, f"{k} elements"))
    seqs = all_sequences(k, i)
    spectra = {spectrum(s) for s in seqs}
    lines.append(_line(k, i, "separating", len(spectra) == len(seqs), f"{len(spectra)} spectra for {len(seqs)} paths"))
    units = all(c.unit_monomial() is not None and c.unit_monomial()[0] == 1 for s in seqs for c in spectrum(s))
    lines.append(_line(k, i, "eigenvalues-are-powers", units, "every c_s(j) = A^e"))
    interp = all(ft_interpolation(t) == CellElement.basis(t, t) for t in seqs)
    lines.append(_line(k, i, "interpolation", interp, f"F_t = G[t,t] for {len(seqs)} paths"))
    return lines


def check_separating(k: int, i: int) -> bool:
    return all(" PASS " in line for line in jm_report(k, i)[:3])


def ft_interpolation(t: AdmissibleSequence) -> CellElement:
    """Product over j of Lagrange factors ``(L_j - c) / (c_t(j) - c)``.

    Expanded in the algebra, not evaluated on the known diagonal, so the
    result being ``G[t,t]`` is a genuine check.
    """
    k, i = t.k, t.i
    one = CellElement.identity(k, i)
    out = one
    for j in range(1, k + 1):
        L = jm_element(j, k, i)
        target = jm_eigenvalue(t, j)
        for c in eigenvalue_set(j, k, i):
            if c == target:
                continue
            factor = (L - one * c) * (target - c).inverse()
            out = cell_mul(out, factor)
    return out


def central_idempotent(weight: int, k: int, i: int) -> CellElement:
    return CellElement.diagonal(k, i, {t: ONE for t in sequences(k, i, weight)})


def irreducible_module(s: AdmissibleSequence) -> list[CellElement]:
    """Basis ``G[s, t]`` of the right ideal ``G[s,s] TL_(k,i)``."""
    return [CellElement.basis(s, t) for t in sequences(s.k, s.i, s.weight)]


def right_action_matrix(s: AdmissibleSequence, x: CellElement) -> list[list[RationalFn]]:
    """Matrix of ``v -> v x`` on ``irreducible_module(s)``; row b holds the image of basis b."""
    if (x.k, x.i) != (s.k, s.i):
        raise ShapeError("shape mismatch")
    T = sequences(s.k, s.i, s.weight)
    rows = []
    for t in T:
        img = cell_mul(CellElement.basis(s, t), x)
        rows.append([img.coefficient(s, u) for u in T])
    return rows


def module_dimensions(k: int, i: int) -> dict[int, int]:
    return {w: len(sequences(k, i, w)) for w in weights(k, i)}


def spanning_set(k: int, i: int) -> list[CellElement]:
    return [CellElement.basis(s, t) for s, t in basis_pairs(k, i)]

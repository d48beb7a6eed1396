"""Mahler measures of one- and two-variable Laurent polynomials.

One variable: Jensen's formula on roots from an Aberth-Ehrlich iteration.
Two variables: for each point of a grid on the circle in the first variable,
Jensen in the second; a plain double quadrature of ``log|f|`` is kept as an
independent cross-check.  All arithmetic is double precision and error
estimates are heuristic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Mapping, Sequence

import numpy as np

from .ring import LaurentPoly

__all__ = [
    "RootFindingError",
    "BivariatePoly",
    "MahlerResult",
    "poly_roots",
    "mahler_1var",
    "mahler_quadrature_1var",
    "mahler_2var",
    "lawton_sequence",
    "twist_convergence",
    "ConvergenceReport",
    "LawtonReport",
]

TOL = 1e-12
MAX_ITER = 1000
MAX_RESTARTS = 5


class RootFindingError(ArithmeticError):
    def __init__(self, message: str, residuals=None):
        super().__init__(message)
        self.residuals = residuals


# -- roots --------------------------------------------------------------------


def _initial_guess(c: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Circles whose radii come from the upper hull of ``(k, log|c_k|)``."""
    n = len(c) - 1
    mags = np.abs(c)
    idx = [k for k in range(n + 1) if mags[k] > 0]
    pts = [(k, math.log(mags[k])) for k in idx]
    hull: list[tuple[int, float]] = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1) >= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    out = []
    for (k0, y0), (k1, y1) in zip(hull, hull[1:]):
        count = k1 - k0
        r = math.exp((y0 - y1) / count)
        phase = rng.uniform(0, 2 * math.pi)
        ang = phase + 2 * math.pi * np.arange(count) / count
        out.append(r * np.exp(1j * ang))
    return np.concatenate(out)


def _log_derivative(c: np.ndarray, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """``p'(z)/p(z)`` and the backward-error ratio ``|p(z)| / sum |c_k||z|^k``.

    Points outside the unit disc use the reversed polynomial in ``1/z`` so
    that nothing overflows at high degree.
    """
    n = len(c) - 1
    desc = c[::-1]
    ddesc = (c[1:] * np.arange(1, n + 1))[::-1]
    abs_desc = np.abs(desc)
    logd = np.empty_like(z)
    back = np.empty(z.shape)
    inside = np.abs(z) <= 1
    if inside.any():
        zi = z[inside]
        p = np.polyval(desc, zi)
        dp = np.polyval(ddesc, zi)
        with np.errstate(divide="ignore", invalid="ignore"):
            logd[inside] = dp / p
        back[inside] = np.abs(p) / np.polyval(abs_desc, np.abs(zi))
    out = ~inside
    if out.any():
        w = 1.0 / z[out]
        rev = c  # reversed polynomial, descending order, is c ascending
        q = np.polyval(rev, w)
        drev = (c[::-1][1:] * np.arange(1, n + 1))[::-1]
        dq = np.polyval(drev, w)
        # p(z) = z^n q(w), so p'(z)/p(z) = (n - w q'(w)/q(w)) / z
        with np.errstate(divide="ignore", invalid="ignore"):
            logd[out] = (n - w * dq / q) * w
        back[out] = np.abs(q) / np.polyval(np.abs(rev), np.abs(w))
    return logd, back


def _aberth(c: np.ndarray, z: np.ndarray) -> tuple[np.ndarray, bool, np.ndarray]:
    n = len(z)
    active = np.ones(n, dtype=bool)
    eps = np.finfo(float).eps
    back = np.zeros(n)
    for _ in range(MAX_ITER):
        idx = np.nonzero(active)[0]
        if idx.size == 0:
            break
        logd, b = _log_derivative(c, z[idx])
        back[idx] = b
        diff = z[idx, None] - z[None, :]
        diff[np.arange(idx.size), idx] = 1.0
        s = (1.0 / diff).sum(axis=1) - 1.0
        # complex division by an exact zero of p gives nan; the residual test still retires it
        with np.errstate(divide="ignore", invalid="ignore"):
            step = 1.0 / (logd - s)
        bad = ~np.isfinite(step)
        step[bad] = 0.0
        z[idx] = z[idx] - step
        small = np.abs(step) <= TOL * np.maximum(np.abs(z[idx]), 1e-300)
        tiny_residual = b <= 4 * eps * (n + 1)
        done = tiny_residual | (small & ~bad)
        active[idx[done]] = False
    _, back = _log_derivative(c, z)
    return z, not active.any(), back


def poly_roots(coeffs: Sequence[complex], seed: int = 0) -> np.ndarray:
    """All roots, with multiplicity, of ``sum coeffs[k] z^k``.

    Zero roots are split off exactly before iterating.
    """
    c = np.asarray(coeffs, dtype=complex)
    nz = np.nonzero(c)[0]
    if nz.size == 0:
        raise ValueError("zero polynomial")
    c = c[: nz[-1] + 1]
    low = nz[0]
    c = c[low:]
    zeros = np.zeros(low, dtype=complex)
    n = len(c) - 1
    if n == 0:
        return zeros
    if n == 1:
        return np.concatenate([zeros, [-c[0] / c[1]]])
    rng = np.random.default_rng(seed)
    z = _initial_guess(c, rng)
    for attempt in range(MAX_RESTARTS + 1):
        z, ok, back = _aberth(c, z)
        if ok:
            break
        scale = np.maximum(np.abs(z), 1.0)
        z = z * (1 + 1e-3 * rng.standard_normal(n)) + 1e-3 * scale * rng.standard_normal(n) * 1j
    else:
        raise RootFindingError(f"Aberth iteration did not converge at degree {n}", residuals=back)
    if not np.all(back <= 1e-8):
        raise RootFindingError("roots fail the residual check", residuals=back)
    return np.concatenate([zeros, z])


# -- one variable -------------------------------------------------------------


@dataclass
class MahlerResult:
    value: float
    method: str
    error_estimate: float
    meta: dict = field(default_factory=dict)

    @property
    def log_value(self) -> float:
        return math.log(self.value) if self.value > 0 else -math.inf


def _dense(f: LaurentPoly | Mapping[int, complex] | Sequence[complex]) -> np.ndarray:
    """Ascending coefficient array with the monomial factor and any ``z -> z^g`` structure removed."""
    if isinstance(f, LaurentPoly):
        items = [(e, float(c)) for e, c in f.terms()]
    elif isinstance(f, Mapping):
        items = [(int(e), complex(c)) for e, c in f.items() if c != 0]
    else:
        items = [(e, complex(c)) for e, c in enumerate(f) if c != 0]
    if not items:
        raise ValueError("Mahler measure of the zero polynomial")
    lo = min(e for e, _ in items)
    g = reduce(math.gcd, (e - lo for e, _ in items), 0) or 1
    hi = max(e for e, _ in items)
    out = np.zeros((hi - lo) // g + 1, dtype=complex)
    for e, c in items:
        out[(e - lo) // g] += c
    return out


def _log_mahler_dense(c: np.ndarray, seed: int = 0) -> tuple[float, float, int]:
    n = len(c) - 1
    lead = abs(c[-1])
    if n == 0:
        return math.log(lead), 0.0, 0
    roots = poly_roots(c, seed=seed)
    mags = np.abs(roots)
    logm = math.log(lead) + float(np.sum(np.log(np.maximum(mags, 1.0))))
    # roots near the circle are the ones whose misplacement changes the value
    near = np.abs(mags - 1.0) < 1e-6
    err = float(np.sum(np.abs(mags[near] - 1.0)))
    return logm, err, n


def mahler_1var(f: LaurentPoly | Mapping[int, complex] | Sequence[complex], seed: int = 0) -> MahlerResult:
    """``|lead| * prod max(1, |root|)``, after removing monomial factors.

    Exact input is first split into squarefree parts, since repeated roots
    on the circle only converge to about ``sqrt(eps)`` in floating point.
    """
    if isinstance(f, LaurentPoly) and not f.is_zero():
        content, parts = f.squarefree_factors()
        logm, err, n = math.log(abs(content)), 0.0, 0
        for g, k in parts:
            lg, eg, ng = _log_mahler_dense(_dense(g), seed)
            logm += k * lg
            err += k * eg
            n += k * ng
    else:
        logm, err, n = _log_mahler_dense(_dense(f), seed)
    value = math.exp(logm)
    return MahlerResult(value, "jensen", value * err, {"degree": n})


def _midpoints(N: int) -> np.ndarray:
    return 2 * np.pi * (np.arange(N) + 0.5) / N


def mahler_quadrature_1var(f: LaurentPoly | Mapping[int, complex] | Sequence[complex], N: int = 1 << 20) -> MahlerResult:
    """Midpoint rule for the mean of ``log|f|`` on the circle; compares N with N/2."""
    c = _dense(f)

    def mean_log(M):
        z = np.exp(1j * _midpoints(M))
        vals = np.abs(np.polyval(c[::-1], z))
        with np.errstate(divide="ignore"):
            return float(np.mean(np.log(vals)))

    a, b = mean_log(N), mean_log(N // 2)
    return MahlerResult(math.exp(a), "quadrature", abs(math.exp(a) - math.exp(b)), {"grid": N})


# -- two variables ------------------------------------------------------------


class BivariatePoly:
    """Laurent polynomial in ``A`` and ``z`` with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[tuple[int, int], Fraction | int]):
        self.coeffs = {(int(a), int(b)): Fraction(c) for (a, b), c in coeffs.items() if c != 0}

    @classmethod
    def from_slices(cls, slices: Mapping[int, LaurentPoly]) -> "BivariatePoly":
        """``sum_b z^b * slices[b](A)``."""
        out: dict[tuple[int, int], Fraction] = {}
        for b, poly in slices.items():
            for a, c in poly.terms():
                out[(a, b)] = out.get((a, b), 0) + c
        return cls(out)

    def is_zero(self) -> bool:
        return not self.coeffs

    def swap(self) -> "BivariatePoly":
        return BivariatePoly({(b, a): c for (a, b), c in self.coeffs.items()})

    def degree_span(self) -> tuple[int, int]:
        a = [k[0] for k in self.coeffs]
        b = [k[1] for k in self.coeffs]
        return max(a) - min(a), max(b) - min(b)

    def effective_degrees(self) -> tuple[int, int]:
        """Degrees in ``z`` and ``A`` after removing ``x -> x^g`` structure."""
        out = []
        for axis in (1, 0):
            es = [k[axis] for k in self.coeffs]
            lo = min(es)
            g = reduce(math.gcd, (e - lo for e in es), 0) or 1
            out.append((max(es) - lo) // g)
        return out[0], out[1]

    def substitute(self, d: int) -> LaurentPoly:
        """``f(x, x^d)`` as a one-variable Laurent polynomial."""
        out: dict[int, Fraction] = {}
        for (a, b), c in self.coeffs.items():
            e = a + d * b
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    def slice_matrix(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Arrays ``(a_exps, b_offsets, C)`` with ``coeff of z^(bmin+j)`` = ``sum_a C[a_idx, j] A^a``."""
        bs = [k[1] for k in self.coeffs]
        bmin = min(bs)
        g = reduce(math.gcd, (b - bmin for b in bs), 0) or 1
        a_exps = sorted({k[0] for k in self.coeffs})
        pos = {a: r for r, a in enumerate(a_exps)}
        width = (max(bs) - bmin) // g + 1
        C = np.zeros((len(a_exps), width))
        for (a, b), c in self.coeffs.items():
            C[pos[a], (b - bmin) // g] += float(c)
        return np.array(a_exps), np.arange(width), C

    def eval_grid(self, theta1: np.ndarray, theta2: np.ndarray) -> np.ndarray:
        a_exps, _, C = self.slice_matrix()
        bs = [k[1] for k in self.coeffs]
        bmin = min(bs)
        g = reduce(math.gcd, (b - bmin for b in bs), 0) or 1
        rows = np.exp(1j * np.outer(theta1, a_exps)) @ C  # (len1, width)
        zs = np.exp(1j * g * theta2)
        powers = zs[None, :] ** np.arange(C.shape[1])[:, None]  # (width, len2)
        return rows @ powers

    def __eq__(self, other):
        return isinstance(other, BivariatePoly) and self.coeffs == other.coeffs

    def __repr__(self):
        return f"BivariatePoly({dict(sorted(self.coeffs.items()))})"


def _slice_jensen(f: BivariatePoly, N: int) -> tuple[float, int]:
    a_exps, _, C = f.slice_matrix()
    theta = _midpoints(N)
    rows = np.exp(1j * np.outer(theta, a_exps)) @ C
    total, skipped = 0.0, 0
    for j in range(N):
        c = rows[j]
        scale = np.max(np.abs(c)) if c.size else 0.0
        if scale == 0.0:
            skipped += 1
            continue
        c = np.where(np.abs(c) > 1e-15 * scale, c, 0)
        logm, _, _ = _log_mahler_dense(_dense(list(c)), seed=j)
        total += logm
    used = N - skipped
    return (total / used if used else -math.inf), skipped


def _double_quadrature(f: BivariatePoly, N: int, chunk: int = 256) -> float:
    theta = _midpoints(N)
    acc = 0.0
    with np.errstate(divide="ignore"):
        for start in range(0, N, chunk):
            vals = f.eval_grid(theta[start : start + chunk], theta)
            acc += float(np.sum(np.log(np.abs(vals))))
    return acc / (N * N)


def mahler_2var(f: BivariatePoly, grid: int = 1024, method: str = "jensen") -> MahlerResult:
    """``exp`` of the mean of ``log|f|`` on the torus.

    ``jensen`` integrates the first variable on a midpoint grid and the
    second exactly by roots; ``quadrature`` uses a midpoint grid in both.
    The error estimate compares ``grid`` with ``grid/2``.
    """
    if method not in ("jensen", "quadrature"):
        raise ValueError(f"unknown method {method!r}")
    if f.is_zero():
        raise ValueError("Mahler measure of the zero polynomial")
    spans = f.degree_span()
    if spans[1] == 0 and spans[0] == 0:
        c = abs(float(next(iter(f.coeffs.values()))))
        return MahlerResult(c, method, 0.0, {"grid": grid})
    if method == "jensen":
        # root-find in whichever variable has the smaller effective degree
        dz, da = f.effective_degrees()
        g = f if dz <= da else f.swap()
        a, skipped = _slice_jensen(g, grid)
        b, _ = _slice_jensen(g, grid // 2)
        meta = {"grid": grid, "skipped_slices": skipped}
    else:
        a = _double_quadrature(f, grid)
        b = _double_quadrature(f, grid // 2)
        meta = {"grid": grid}
    value = math.exp(a)
    return MahlerResult(value, method, abs(value - math.exp(b)), meta)


# -- experiments --------------------------------------------------------------


@dataclass
class LawtonReport:
    rows: list[tuple[int, float]]
    limit: MahlerResult
    tail_deviation: float
    tail_cauchy: float

    def to_csv(self) -> str:
        return "d,value\n" + "".join(f"{d},{v:.12g}\n" for d, v in self.rows)


def lawton_sequence(f: BivariatePoly, d_max: int, grid: int = 1024, d_min: int = 1) -> LawtonReport:
    """``M(f(x, x^d))`` for ``d_min <= d <= d_max`` against the two-variable value."""
    rows = [(d, mahler_1var(f.substitute(d)).value) for d in range(d_min, d_max + 1)]
    limit = mahler_2var(f, grid)
    tail = [v for d, v in rows if d >= d_max / 2]
    dev = max(abs(v - limit.value) for v in tail)
    quart = [v for d, v in rows if d >= 3 * d_max / 4]
    cauchy = max((abs(x - y) for x, y in zip(quart, quart[1:])), default=0.0)
    return LawtonReport(rows, limit, dev, cauchy)


@dataclass
class ConvergenceReport:
    rows: list[tuple[int, float, float]]
    limit: MahlerResult
    denominator_measure: float
    final_deviation: float
    tail_deviations: list[tuple[int, float]]

    def to_csv(self) -> str:
        out = ["m,value,delta_prev"]
        for m, v, dv in self.rows:
            out.append(f"{m},{v:.12g},{'' if math.isnan(dv) else f'{dv:.6g}'}")
        return "\n".join(out) + "\n"

    def max_delta(self, m_from: int, m_to: int) -> float:
        return max(dv for m, _, dv in self.rows if m_from <= m <= m_to and not math.isnan(dv))


def family_bivariate(fam) -> tuple[BivariatePoly, LaurentPoly]:
    """Numerator ``N(A, z) = sum z^e * q * Q`` and the common denominator ``Q``."""
    slices: dict[int, LaurentPoly] = {}
    for sign, e, q in fam.cleared_terms():
        if sign != 1:
            raise ValueError("negative twist eigenvalues need a parity split; not supported")
        slices[e] = slices[e] + q if e in slices else q
    return BivariatePoly.from_slices(slices), fam.common_denominator()


def twist_convergence(fam, m_max: int, grid: int = 2048, m_min: int = 1) -> ConvergenceReport:
    """``M(J_m)`` for ``m_min..m_max`` against ``M(P)`` with ``P(A, A^m) = p_m``.

    The framing monomial is dropped since it does not change the measure;
    the shared denominator contributes the constant factor ``1/M(Q)``.
    """
    num, Q = family_bivariate(fam)
    logq = math.log(mahler_1var(Q).value)
    rows = []
    prev = math.nan
    for m in range(m_min, m_max + 1):
        poly = num.substitute(m)
        v = math.exp(math.log(mahler_1var(poly, seed=m).value) - logq)
        rows.append((m, v, abs(v - prev) if not math.isnan(prev) else math.nan))
        prev = v
    lim2 = mahler_2var(num, grid)
    limit = MahlerResult(
        math.exp(math.log(lim2.value) - logq), lim2.method, lim2.error_estimate * math.exp(-logq), lim2.meta
    )
    tail = [(m, abs(v - limit.value)) for m, v, _ in rows[-10:]]
    return ConvergenceReport(rows, limit, math.exp(logq), tail[-1][1] if tail else math.nan, tail)

"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py`` (lines appear in the terminal
summary) or directly with ``python3 tests/test_acceptance.py``.
"""

import itertools
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

pytestmark = pytest.mark.slow

sys.path.insert(0, str(Path(__file__).parent))

from conftest import ACCEPTANCE_LINES, random_rational  # noqa: E402

from coloredtl.cell import (  # noqa: E402
    CellElement,
    all_sequences,
    basis_pairs,
    cell_inner,
    cell_mul,
    cell_star,
    sequences,
    to_skein,
    verify_cell_datum,
    weights,
)
from coloredtl.jm import jm_element, jm_report  # noqa: E402
from coloredtl.mahler import (  # noqa: E402
    BivariatePoly,
    lawton_sequence,
    mahler_1var,
    mahler_quadrature_1var,
    twist_convergence,
)
from coloredtl.recoupling import build_D, color_embed, theta_closed  # noqa: E402
from coloredtl.ring import LaurentPoly, RationalFn, delta_closed  # noqa: E402
from coloredtl.skein import (  # noqa: E402
    all_diagrams,
    braid_to_skein,
    bracket_state_sum,
    catalan,
    compose,
    inner_product,
)
from coloredtl.twist import (  # noqa: E402
    RecursiveTangle,
    braid_to_cell,
    cabled_word,
    colored_jones_twist,
    full_twist,
    full_twist_word,
    pair_power,
    twist_family,
)


def record(n: int, title: str, ok: bool, detail: str) -> None:
    line = f"criterion {n} {'PASS' if ok else 'FAIL'} {title}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


# -- 1. norm of the graph elements -------------------------------------------

NORM_SHAPES = [(2, 1), (3, 1), (2, 2), (2, 3), (3, 2)]


def index_sequences(k, i):
    out = []
    for w in weights(k, i):
        for s in sequences(k, i, w):
            for t in sequences(k, i, w):
                out.append(s.entries + t.entries[::-1][1:])
    return out


def norm_closed_form(a, i):
    out = RationalFn(delta_closed(a[-1]))
    for x, y in zip(a, a[1:]):
        out = out * theta_closed(y, x, i) / RationalFn(delta_closed(y))
    return out


def test_criterion_1_norm():
    start = time.perf_counter()
    pairs = bad = 0
    for k, i in NORM_SHAPES:
        seqs = index_sequences(k, i)
        ds = {a: build_D(a, i) for a in seqs}
        for a, b in itertools.product(seqs, repeat=2):
            want = norm_closed_form(a, i) if a == b else RationalFn(0)
            pairs += 1
            if inner_product(ds[a], ds[b]) != want:
                bad += 1
    elapsed = time.perf_counter() - start
    record(1, "graph-element norms", bad == 0 and elapsed < 120, f"{pairs} pairs, {bad} mismatches, {elapsed:.1f}s (target < 120s)")


# -- 2. cellularity -----------------------------------------------------------

CELL_SHAPES = [(2, 1), (3, 1), (4, 1), (2, 2), (2, 3), (3, 2)]


def test_criterion_2_cellularity():
    notes = []
    ok = True
    for k in range(1, 11):
        dim = sum(len(sequences(k, 1, w)) ** 2 for w in weights(k, 1))
        if dim != catalan(k) or dim != len(all_diagrams(k)):
            ok = False
            notes.append(f"k={k} dim {dim}")
    notes.append("Catalan k<=10")
    for k, i in CELL_SHAPES:
        lines = verify_cell_datum(k, i, oracle=True)
        failed = [ln for ln in lines if " PASS " not in ln]
        names = {ln.split(" ")[1] for ln in lines}
        needed = {"matrix-units", "anti-involution", "gram-diagonal", "dimension-oracle", "product-oracle"}
        if failed or not needed <= names:
            ok = False
            notes.append(f"({k},{i}) " + "; ".join(failed or [f"missing {needed - names}"]))
        else:
            notes.append(f"({k},{i}) {len(lines)} checks")
    for k, i in [(3, 2), (4, 1)]:
        basis = [CellElement.basis(s, t) for s, t in basis_pairs(k, i)]
        for x, y in itertools.product(basis, repeat=2):
            if cell_star(cell_mul(x, y)) != cell_mul(cell_star(y), cell_star(x)) or cell_star(cell_star(x)) != x:
                ok = False
                notes.append(f"star fails at ({k},{i})")
                break
    record(2, "cellularity", ok, ", ".join(notes))


# -- 3. Jucys-Murphy elements -------------------------------------------------


def test_criterion_3_jm():
    ok = True
    notes = []
    for k, i in CELL_SHAPES:
        lines = jm_report(k, i)
        failed = [ln for ln in lines if " PASS " not in ln]
        ok &= not failed
        notes.append(f"({k},{i}) " + ("ok" if not failed else "; ".join(failed)))
    record(3, "JM commutation/self-adjoint/separation/interpolation", ok, ", ".join(notes))


# -- 4. full-twist convention lock --------------------------------------------


def test_criterion_4_full_twist():
    ok = True
    notes = []
    for k, i in [(2, 1), (3, 1), (2, 2)]:
        product = CellElement.identity(k, i)
        for j in range(2, k + 1):
            product = cell_mul(product, jm_element(j, k, i))
        braid = color_embed(braid_to_skein(cabled_word(full_twist_word(k), i), k * i), k, i)
        same = to_skein(product) == braid
        ok &= same
        notes.append(f"({k},{i}) {'equal' if same else 'DIFFERENT'}")
    record(4, "full twist = L_2...L_k", ok, ", ".join(notes))


# -- 5. powers of recursive tangles -------------------------------------------


def _random_case(rng, k, i):
    R = RecursiveTangle(k, i, {s: random_rational(rng) for s in all_sequences(k, i) if rng.random() < 0.9})
    T = CellElement(k, i, {p: random_rational(rng) for p in basis_pairs(k, i) if rng.random() < 0.6})
    return R, T


def test_criterion_5_recursive_powers():
    rng = random.Random(2024)
    algebra_cases = oracle_cases = 0
    bad = []
    for k, i in CELL_SHAPES:
        for _ in range(100):
            R, T = _random_case(rng, k, i)
            power = CellElement.identity(k, i)
            for n in range(6):
                if pair_power(R, T, n) != cell_inner(power, T):
                    bad.append(f"({k},{i}) n={n}")
                power = cell_mul(power, R.to_cell())
            algebra_cases += 1
    for k, i in [(2, 1), (3, 1), (2, 2)]:
        for _ in range(5):
            R, T = _random_case(rng, k, i)
            r, t = to_skein(R.to_cell()), to_skein(T)
            power = color_embed(braid_to_skein([], k * i), k, i)
            for n in range(4):
                if inner_product(power, t) != pair_power(R, T, n):
                    bad.append(f"oracle ({k},{i}) n={n}")
                power = compose(power, r)
            oracle_cases += 1
    record(
        5,
        "closed-form pairing of powers",
        not bad,
        f"{algebra_cases} algebraic cases (n<=5), {oracle_cases} diagram cases (n<=3), {len(bad)} mismatches",
    )


# -- 6. Jones polynomials against the state sum -------------------------------

BRAID_CORPUS = [
    ([], 2),
    ([1], 2),
    ([-1], 2),
    ([1, 1], 2),
    ([1, 1, 1], 2),
    ([-1, -1, -1], 2),
    ([1, 1, 1, 1], 2),
    ([1] * 5, 2),
    ([1] * 7, 2),
    ([1] * 8, 2),
    ([1, -1, 1, -1, 1], 2),
    ([], 3),
    ([1], 3),
    ([1, 2], 3),
    ([1, -2], 3),
    ([1, 2, 1], 3),
    ([1, -2, 1, -2], 3),
    ([1, 1, 1, 2, -1, 2], 3),
    ([1, 1, 1, -2, 1, -2], 3),
    ([1, 1, -2, 1, -2, -2], 3),
    ([1, -2, 1, -2, 1, -2], 3),
    ([1, 2, 1, 2, 1, 2, 1, 2], 3),
    ([1, 2, 1, 2, 1, 2], 3),
    ([1, 1, 2, 2], 3),
    ([1, 1, 1, 2, 2, 2], 3),
    ([-1, 2, 2, -1, 2, 2, -1], 3),
    ([1, 1, 2, -1, 2], 3),
    ([2, 2, 2], 3),
    ([1, 1, -2, -2, 1, 1, -2, -2], 3),
    ([1, -2, -2, 1, 1, -2, 1], 3),
    ([-1, -1, 2, -1, 2, 2, 2], 3),
    ([2, 1, -2, 1, 1, 2, -1, 2], 3),
]


def test_criterion_6_jones():
    bad = []
    for word, k in BRAID_CORPUS:
        J = colored_jones_twist(word, 1, 0, k=k)
        w = sum(1 if g > 0 else -1 for g in word)
        want = bracket_state_sum(word, k) * LaurentPoly({-3 * w: 1})
        if J != want:
            bad.append(str(word))
    record(6, "Jones vs state sum", not bad, f"{len(BRAID_CORPUS)} braids (<= 8 crossings, <= 3 strands), mismatches: {bad or 'none'}")


# -- 7. Mahler numerics --------------------------------------------------------

ONE_VAR_CORPUS = [
    {2: 1, 1: -1, 0: -1},
    {0: 1, 1: 1, 3: -1, 4: -1, 5: -1, 6: -1, 7: -1, 9: 1, 10: 1},
    {3: 1, 1: -1, 0: -1},
    {0: 2, 1: -3, 2: 1},
    {0: 1, 1: 1, 2: 1},
    {0: 5, 2: -1, 7: 3},
    {0: -2, 1: 4, 3: 1, 4: -1, 6: 2},
    {0: 1, 4: -3, 5: 1, 10: 2},
    {0: 3, 1: 1, 2: -1, 3: 2, 8: -1},
    {0: 1, 1: -1, 2: 1, 3: -1, 4: 1, 5: -1, 6: 1, 7: -1, 8: 1, 9: -1, 10: 1},
]

LAWTON_CORPUS = {
    "1 + A + z": {(0, 0): 1, (1, 0): 1, (0, 1): 1},
    "2 + A + z": {(0, 0): 2, (1, 0): 1, (0, 1): 1},
    "1 + A + A^2 + z": {(0, 0): 1, (1, 0): 1, (2, 0): 1, (0, 1): 1},
    "1 + A z + z^2": {(0, 0): 1, (1, 1): 1, (0, 2): 1},
    "A^2 - A - 1 + z": {(2, 0): 1, (1, 0): -1, (0, 0): -1, (0, 1): 1},
}


def test_criterion_7_mahler():
    start = time.perf_counter()
    notes = []
    ok = True

    phi = mahler_1var(LaurentPoly({2: 1, 1: -1, 0: -1})).value
    ok &= abs(phi - 1.6180339887) <= 1e-9
    notes.append(f"M(A^2-A-1)={phi:.12f}")

    worst = 0.0
    for terms in ONE_VAR_CORPUS:
        f = LaurentPoly(terms)
        worst = max(worst, abs(mahler_1var(f).value - mahler_quadrature_1var(f).value))
    ok &= worst <= 1e-4
    notes.append(f"Jensen vs quadrature max {worst:.2e}")

    for name, terms in LAWTON_CORPUS.items():
        rep = lawton_sequence(BivariatePoly({k: Fraction(v) for k, v in terms.items()}), 100, grid=2048)
        ok &= rep.tail_deviation < 1e-2
        notes.append(f"Lawton[{name}] tail {rep.tail_deviation:.1e}")

    for i in (1, 2):
        fam = twist_family(full_twist(2, i), braid_to_cell([1], 2, i), 2, 1)
        rep = twist_convergence(fam, 200, grid=2048, m_min=179)
        step = rep.max_delta(180, 200)
        ok &= step < 1e-3 and rep.final_deviation < 1e-2
        notes.append(f"twist i={i}: max step {step:.1e}, |M(J_200)-M(P)| {rep.final_deviation:.1e}, M(P)={rep.limit.value:.6f}")

    elapsed = time.perf_counter() - start
    ok &= elapsed < 600
    notes.append(f"{elapsed:.1f}s (target < 600s)")
    record(7, "Mahler numerics", ok, "; ".join(notes))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))

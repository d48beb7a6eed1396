import itertools
from concurrent.futures import ThreadPoolExecutor

import pytest

from coloredtl.recoupling import (
    ColoredVertexSpec,
    InadmissibleError,
    OracleBudgetError,
    build_D,
    color_embed,
    delta_oracle,
    fusion_check,
    fusion_coeff,
    is_admissible,
    jones_wenzl,
    lambda_closed,
    lambda_oracle,
    projector_tensor,
    theta_closed,
    theta_oracle,
    trivalent_vertex,
)
from coloredtl.ring import DELTA, ONE, RationalFn, delta_closed
from coloredtl.skein import (
    SkeinElement,
    StrandMismatchError,
    compose,
    generator_e,
    identity_diagram,
    inner_product,
    reflect,
)


def e(i, n):
    return SkeinElement.from_diagram(generator_e(i, n))


def admissible_triples(max_color=5, budget=12):
    for a, b, c in itertools.product(range(max_color + 1), repeat=3):
        if is_admissible(a, b, c) and a + b + c <= budget:
            yield a, b, c


def test_second_projector():
    assert jones_wenzl(2) == SkeinElement.identity(2) - e(1, 2) * (ONE / DELTA)
    assert jones_wenzl(1) == SkeinElement.identity(1)


@pytest.mark.parametrize("n", range(1, 9))
def test_projector_properties(n):
    f = jones_wenzl(n)
    assert f.coefficient(identity_diagram(n)) == ONE
    for i in range(1, n):
        assert compose(e(i, n), f).is_zero()
        assert compose(f, e(i, n)).is_zero()


@pytest.mark.parametrize("n", [pytest.param(n, marks=pytest.mark.slow) if n == 8 else n for n in range(1, 9)])
def test_projector_idempotent(n):
    f = jones_wenzl(n)
    assert compose(f, f) == f


def test_projector_is_symmetric():
    for n in range(1, 6):
        assert reflect(jones_wenzl(n)) == jones_wenzl(n)


def test_projector_memo_is_shared_across_threads():
    with ThreadPoolExecutor(4) as pool:
        results = list(pool.map(jones_wenzl, [5, 5, 6, 6, 5, 6]))
    assert results[0] == results[1] == results[4]
    assert results[2] == results[3] == results[5]


def test_negative_projector_index():
    with pytest.raises(ValueError):
        jones_wenzl(-1)


@pytest.mark.parametrize("n", range(0, 9))
def test_loop_value_from_diagrams(n):
    assert delta_oracle(n) == RationalFn(delta_closed(n))


def test_color_embedding():
    assert color_embed(SkeinElement.identity(2), 1, 2) == jones_wenzl(2)
    c = color_embed(SkeinElement.identity(4), 2, 2)
    assert compose(c, c) == c
    x = e(1, 3) + SkeinElement.identity(3)
    assert color_embed(x, 3, 1) == x
    with pytest.raises(StrandMismatchError):
        color_embed(SkeinElement.identity(3), 2, 2)


def test_color_embedding_is_multiplicative():
    x = e(2, 4) + SkeinElement.identity(4) * DELTA
    y = e(1, 4) - e(3, 4)
    lhs = color_embed(compose(x, y), 2, 2)
    rhs = compose(color_embed(x, 2, 2), color_embed(y, 2, 2))
    assert lhs == rhs


def test_vertex_shapes():
    assert ColoredVertexSpec(2, 2, 2).internal_arcs == (1, 1, 1)
    assert ColoredVertexSpec(3, 1, 2).internal_arcs == (1, 0, 2)
    v = trivalent_vertex(ColoredVertexSpec(3, 3, 0))
    assert (v.bottom, v.top) == (6, 0)
    assert trivalent_vertex(ColoredVertexSpec(1, 1, 2)) == jones_wenzl(2)
    assert trivalent_vertex(ColoredVertexSpec(1, 1, 2), "split") == jones_wenzl(2)
    assert trivalent_vertex(ColoredVertexSpec(2, 0, 2)) == jones_wenzl(2)


def test_vertex_errors():
    with pytest.raises(InadmissibleError):
        ColoredVertexSpec(1, 1, 1)
    with pytest.raises(InadmissibleError):
        ColoredVertexSpec(1, 1, 4)
    with pytest.raises(ValueError):
        trivalent_vertex(ColoredVertexSpec(1, 1, 0), "sideways")


def test_network_examples():
    assert delta_oracle(1) == DELTA
    for a in range(4):
        assert theta_oracle(a, a, 0) == RationalFn(delta_closed(a))
        assert theta_closed(a, a, 0) == RationalFn(delta_closed(a))
    assert theta_oracle(1, 1, 2) == RationalFn(delta_closed(2))
    assert theta_closed(2, 2, 2) == theta_oracle(2, 2, 2)
    sign_power = lambda_oracle(2, 1, 1).unit_monomial()
    assert sign_power is not None


def test_theta_matches_diagrams():
    for a, b, c in admissible_triples():
        assert theta_closed(a, b, c) == theta_oracle(a, b, c), (a, b, c)


def test_twist_coefficient_matches_diagrams():
    for a, b, c in admissible_triples():
        got, want = lambda_oracle(a, b, c), lambda_closed(a, b, c)
        assert got * got == want * want, (a, b, c)
        assert got == want, (a, b, c)


def test_closed_forms_reject_inadmissible():
    with pytest.raises(InadmissibleError):
        theta_closed(1, 1, 1)
    with pytest.raises(InadmissibleError):
        lambda_closed(5, 1, 1)
    with pytest.raises(InadmissibleError):
        theta_oracle(2, 0, 1)


def test_oracle_budget():
    with pytest.raises(OracleBudgetError):
        jones_wenzl(13)
    with pytest.raises(OracleBudgetError):
        theta_oracle(6, 6, 6)
    with pytest.raises(OracleBudgetError):
        build_D([5, 4, 5, 4, 5], 5)


def test_fusion_coefficients():
    for a in range(4):
        assert fusion_coeff(a, a, 0) == ONE / RationalFn(delta_closed(a))
    assert fusion_coeff(1, 1, 2) == ONE


@pytest.mark.parametrize("i,j", [(1, 1), (2, 2), (3, 3), (1, 2), (1, 3), (2, 3), (1, 4), (2, 4), (1, 5)])
def test_fusion_identity(i, j):
    assert fusion_check(i, j).is_zero()


def test_graph_element_examples():
    assert build_D([1], 1) == SkeinElement.identity(1)
    d = build_D([2, 2, 2], 2)
    assert (d.bottom, d.top) == (4, 4)
    assert compose(projector_tensor([2, 2]), d) == d


def test_graph_element_errors():
    with pytest.raises(InadmissibleError):
        build_D([1, 2], 1)
    with pytest.raises(InadmissibleError):
        build_D([2, 1, 2], 1)
    with pytest.raises(InadmissibleError):
        build_D([1, 3, 1], 1)


def _norm_formula(seq, i):
    out = RationalFn(delta_closed(seq[-1]))
    for a, b in zip(seq, seq[1:]):
        out = out * theta_closed(b, a, i) / RationalFn(delta_closed(b))
    return out


@pytest.mark.parametrize("k,i", [(2, 1), (3, 1), (2, 2)])
def test_graph_elements_orthogonal(k, i):
    from coloredtl.cell import all_sequences

    seqs = []
    for s in all_sequences(k, i):
        for t in all_sequences(k, i):
            if s.weight == t.weight:
                seqs.append(s.entries + t.entries[::-1][1:])
    ds = {seq: build_D(seq, i) for seq in seqs}
    for a, b in itertools.product(seqs, repeat=2):
        val = inner_product(ds[a], ds[b])
        assert val == (_norm_formula(a, i) if a == b else 0), (a, b)

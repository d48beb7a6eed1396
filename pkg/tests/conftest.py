import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from coloredtl.ring import LaurentPoly, RationalFn

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


@st.composite
def laurent(draw, max_terms=5, span=8, coeff=6):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        e = draw(st.integers(-span, span))
        c = draw(st.integers(-coeff, coeff))
        terms[e] = terms.get(e, 0) + c
    return LaurentPoly(terms)


@st.composite
def nonzero_laurent(draw, **kw):
    p = draw(laurent(**kw))
    if p.is_zero():
        p = LaurentPoly({draw(st.integers(-3, 3)): draw(st.sampled_from([-2, -1, 1, 3]))})
    return p


@st.composite
def rational(draw):
    return RationalFn(draw(laurent()), draw(nonzero_laurent(max_terms=3, span=4, coeff=3)))


def random_laurent(rng: random.Random, terms=3, span=6) -> LaurentPoly:
    return LaurentPoly({rng.randint(-span, span): rng.choice([-3, -2, -1, 1, 2, 3]) for _ in range(terms)})


def random_rational(rng: random.Random) -> RationalFn:
    num = random_laurent(rng)
    if rng.random() < 0.3:
        den = random_laurent(rng, terms=2, span=3)
        if not den.is_zero():
            return RationalFn(num, den)
    return RationalFn(num)

import os
import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from rankpert.algebra import GF, Q, Poly
from rankpert.matrix import Mat

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

FIELDS = [Q, GF(2), GF(3), GF(5), GF(7)]
fields = st.sampled_from(FIELDS)
prime_fields = st.sampled_from([GF(2), GF(3), GF(5)])


@st.composite
def matrices(draw, field=None, min_n=1, max_n=4, lo=-3, hi=3):
    F = draw(fields) if field is None else field
    n = draw(st.integers(min_n, max_n))
    rows = [[draw(st.integers(lo, hi)) for _ in range(n)] for _ in range(n)]
    return Mat(F, rows)


@st.composite
def polys(draw, field, min_deg=0, max_deg=5, monic=False, nonzero=False):
    d = draw(st.integers(min_deg, max_deg))
    cs = [draw(st.integers(-4, 4)) for _ in range(d + 1)]
    if monic:
        cs[-1] = 1
    p = Poly(field, cs)
    if nonzero and p.is_zero():
        p = Poly.one(field)
    return p


@pytest.fixture
def rng():
    return random.Random(20260214)


def P(field, *coeffs):
    return Poly(field, coeffs)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)

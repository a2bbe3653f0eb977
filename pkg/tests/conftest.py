import sys
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import settings, strategies as st

from garank.algebra import Multivector, Signature
from garank.coeff import EXACT, FLOAT, GaussianRational
from garank.sampling import all_signatures

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

SMALL_SIGNATURES = all_signatures(4)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


small_ints = st.integers(min_value=-4, max_value=4)


@st.composite
def gaussian_rationals(draw):
    den = draw(st.integers(min_value=1, max_value=3))
    return GaussianRational(Fraction(draw(small_ints), den), draw(small_ints))


@st.composite
def exact_multivector(draw, sig: Signature):
    blades = draw(st.lists(st.integers(0, sig.dim - 1), max_size=min(sig.dim, 6), unique=True))
    return Multivector(sig, {a: draw(gaussian_rationals()) for a in blades}, EXACT)


@st.composite
def float_multivector(draw, sig: Signature):
    parts = st.floats(min_value=-3, max_value=3, allow_nan=False, allow_infinity=False)
    vals = draw(st.lists(st.tuples(parts, parts), min_size=sig.dim, max_size=sig.dim))
    return Multivector(sig, {a: complex(*v) for a, v in enumerate(vals)}, FLOAT)


signatures = st.sampled_from(SMALL_SIGNATURES)


@st.composite
def exact_tuple(draw, size: int, sigs=signatures):
    sig = draw(sigs)
    return tuple(draw(exact_multivector(sig)) for _ in range(size))


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for number in sorted(results):
            terminalreporter.write_line(results[number])

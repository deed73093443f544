from fractions import Fraction
from itertools import combinations

from hypothesis import settings, strategies as st

from cliffordforms.algebra import Hypercomplex
from cliffordforms.exterior import ExteriorForm

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def forms(draw, n=None, k=None, max_terms=6):
    n = draw(st.integers(1, 8)) if n is None else n
    k = draw(st.integers(0, n)) if k is None else k
    keys = list(combinations(range(1, n + 1), k))
    chosen = draw(st.lists(st.sampled_from(keys), max_size=max_terms, unique=True))
    return ExteriorForm(n, k, {key: draw(small_fractions) for key in chosen})


@st.composite
def rational_frames(draw, n, k):
    return [[draw(st.integers(-3, 3)) for _ in range(n)] for _ in range(k)]


def hypercomplex(level=3):
    return st.lists(small_fractions, min_size=2**level, max_size=2**level).map(
        lambda c: Hypercomplex(level, tuple(Fraction(x) for x in c))
    )


# acceptance criteria register one line each; printed at the end of the run
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[num])

import os

from gmpy2 import mpq
from hypothesis import HealthCheck, settings, strategies as st

from amalg.lattice import FiniteAL, FiniteSup, SeqLim, SeqVec, SupDirectSum, FinVec, ALVec, SumVec

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def rationals(lo=-4, hi=4, denominators=(1, 2, 3, 4)):
    return st.builds(
        lambda k, d: mpq(k, d),
        st.integers(lo * 4, hi * 4),
        st.sampled_from(denominators),
    ).filter(lambda v: lo <= v <= hi)


positive_rationals = st.builds(lambda k, d: mpq(k, d), st.integers(1, 16), st.sampled_from((1, 2, 4)))


@st.composite
def finite_sup(draw, max_n=3):
    n = draw(st.integers(1, max_n))
    return FiniteSup(tuple(draw(st.lists(positive_rationals, min_size=n, max_size=n))))


@st.composite
def seq_lim(draw):
    return SeqLim(draw(st.sampled_from([mpq(1), mpq(3, 2), mpq(2), mpq(4)])))


@st.composite
def finite_al(draw):
    n = draw(st.integers(0, 3))
    band = True if n == 0 else draw(st.booleans())
    return FiniteAL(n, band)


def am_spaces():
    base = st.one_of(finite_sup(), seq_lim())
    return st.one_of(base, st.builds(SupDirectSum, base, base))


def all_spaces():
    base = st.one_of(finite_sup(), seq_lim(), finite_al())
    return st.one_of(base, st.builds(SupDirectSum, base, base))


@st.composite
def vectors(draw, space, elements=None):
    if elements is None:
        elements = rationals()
    if isinstance(space, FiniteSup):
        return FinVec(tuple(draw(st.lists(elements, min_size=space.n, max_size=space.n))))
    if isinstance(space, SeqLim):
        return SeqVec(tuple(draw(st.lists(elements, max_size=4))), draw(elements))
    if isinstance(space, FiniteAL):
        atoms = tuple(draw(st.lists(elements, min_size=space.n, max_size=space.n)))
        return ALVec(atoms, draw(elements) if space.band else mpq(0))
    return SumVec(draw(vectors(space.left, elements)), draw(vectors(space.right, elements)))


nonneg = rationals(0, 4)


# acceptance lines are collected here and repeated after the run
ACCEPTANCE: list = []


def record(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)

from fractions import Fraction

import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from amalg.lattice import (
    FiniteAL,
    FiniteSup,
    PreconditionError,
    SeqLim,
    SeqVec,
    SpaceMismatch,
    abs_,
    canonical,
    disjoint,
    is_positive,
    lattice_join,
    lattice_meet,
    leq,
    neg,
    norm,
    q,
    vec,
    zero,
)
from amalg.spectrum import dual_atoms, evaluate

from conftest import all_spaces, am_spaces, finite_al, nonneg, vectors


# -- worked examples ---------------------------------------------------------


def test_join_finite_sup():
    X = FiniteSup((1, 1))
    assert lattice_join(X, vec(X, [1, -3]), vec(X, [0, 4])) == vec(X, [1, 4])


def test_join_seqlim_canonical():
    S = SeqLim(2)
    out = lattice_join(S, vec(S, ([3], 0)), vec(S, ([], 1)))
    assert out == SeqVec((mpq(3),), mpq(1))


def test_join_al_band_positive_part():
    A = FiniteAL(1, True)
    assert lattice_join(A, vec(A, ([2], -1)), zero(A)) == vec(A, ([2], 0))


def test_norm_example_seqlim_constant():
    S = SeqLim(2)
    assert norm(S, vec(S, ([], 1))) == 2


def test_norm_seqlim_prefix():
    S = SeqLim(2)
    assert norm(S, vec(S, ([1], 0))) == 1


def test_norm_finite_sup():
    X = FiniteSup((4, 1))
    assert norm(X, vec(X, [1, 1])) == 4


def test_disjoint_examples():
    X = FiniteSup((1, 1))
    assert disjoint(X, vec(X, [1, 0]), vec(X, [0, 2]))
    S = SeqLim(2)
    assert not disjoint(S, vec(S, ([1], 0)), vec(S, ([], 1)))
    A = FiniteAL(1, True)
    assert disjoint(A, vec(A, ([1], 0)), vec(A, ([0], 1)))


def test_disjoint_rejects_negative():
    X = FiniteSup((1,))
    with pytest.raises(PreconditionError):
        disjoint(X, vec(X, [-1]), vec(X, [1]))


def test_space_mismatch():
    X = FiniteSup((1, 1))
    with pytest.raises(SpaceMismatch):
        norm(X, vec(FiniteSup((1,)), [1]))


def test_space_invariants():
    with pytest.raises(ValueError):
        FiniteSup(())
    with pytest.raises(ValueError):
        FiniteSup((0, 1))
    with pytest.raises(ValueError):
        SeqLim(mpq(1, 2))
    with pytest.raises(ValueError):
        FiniteAL(0, False)
    with pytest.raises(SpaceMismatch):
        vec(FiniteAL(1, False), ([1], 1))


def test_scalars_refuse_floats():
    with pytest.raises(TypeError):
        q(0.5)
    with pytest.raises(TypeError):
        q(True)
    assert q("3/4") == Fraction(3, 4)
    assert q(" 0.125 ") == mpq(1, 8)


def test_seqlim_canonical_trim():
    v = SeqVec((mpq(1), mpq(2), mpq(2)), mpq(2))
    assert v.prefix == (mpq(1),)


# -- properties ---------------------------------------------------------------


@given(st.data(), all_spaces())
def test_lattice_axioms(data, space):
    x, y, z = (data.draw(vectors(space)) for _ in range(3))
    J = lambda a, b: lattice_join(space, a, b)
    M = lambda a, b: lattice_meet(space, a, b)
    assert J(x, y) == J(y, x) and M(x, y) == M(y, x)
    assert J(J(x, y), z) == J(x, J(y, z))
    assert M(M(x, y), z) == M(x, M(y, z))
    assert J(x, M(x, y)) == x and M(x, J(x, y)) == x
    assert abs_(space, x) == J(x, neg(space, x))


@given(st.data(), all_spaces())
def test_lattice_norm(data, space):
    x, y = data.draw(vectors(space)), data.draw(vectors(space))
    assert norm(space, abs_(space, x)) == norm(space, x)
    if leq(space, abs_(space, x), abs_(space, y)):
        assert norm(space, x) <= norm(space, y)


@given(st.data(), am_spaces())
def test_m_property(data, space):
    x, y = data.draw(vectors(space, nonneg)), data.draw(vectors(space, nonneg))
    assert norm(space, lattice_join(space, x, y)) == max(norm(space, x), norm(space, y))


@given(st.data(), finite_al())
def test_al_property(data, space):
    from amalg.lattice import add

    x, y = data.draw(vectors(space, nonneg)), data.draw(vectors(space, nonneg))
    assert norm(space, add(space, x, y)) == norm(space, x) + norm(space, y)


@given(st.data(), all_spaces())
def test_canonical_idempotent_and_evaluation_preserving(data, space):
    x = data.draw(vectors(space))
    c = canonical(space, x)
    assert canonical(space, c) == c
    for a in dual_atoms(space, 6):
        assert evaluate(space, a, c) == evaluate(space, a, x)


@given(st.data(), all_spaces())
def test_positive_parts(data, space):
    from amalg.lattice import neg_part, pos_part, sub

    x = data.draw(vectors(space))
    p, n = pos_part(space, x), neg_part(space, x)
    assert is_positive(space, p) and is_positive(space, n)
    assert sub(space, p, n) == x
    assert disjoint(space, p, n)

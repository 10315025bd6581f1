import itertools

import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from amalg.amalgebra import (
    Staircase,
    am_product,
    am_product_is_unique,
    classify_am_algebra,
    exact_root,
    nakano_witness,
    nth_root,
    power,
    root_residuals,
)
from amalg.lattice import (
    FiniteAL,
    FiniteSup,
    PreconditionError,
    SeqLim,
    SupDirectSum,
    norm,
    order_unit,
    vec,
)
from amalg.weights import constant_weight

from conftest import am_spaces, nonneg, vectors


def test_classify_examples():
    assert not classify_am_algebra(SeqLim(2)).is_am_algebra
    assert classify_am_algebra(SeqLim(1)).is_am_algebra
    assert classify_am_algebra(FiniteSup((4, 1))).is_am_algebra
    D = SupDirectSum(FiniteSup((1,)), SeqLim(3))
    assert not classify_am_algebra(D).is_am_algebra
    with pytest.raises(PreconditionError):
        classify_am_algebra(FiniteAL(2))


def test_classify_witnesses_theta2():
    cls = classify_am_algebra(SeqLim(2))
    assert (cls.norm_witness.net_norm, cls.norm_witness.limit_norm) == (1, mpq(1, 2))
    assert (cls.wx_witness.net_limit, cls.wx_witness.limit_value) == (1, 2)


@given(st.builds(lambda a, b: mpq(a + b, b), st.integers(0, 12), st.integers(1, 12)))
def test_seqlim_is_am_algebra_iff_theta_one(theta):
    assert classify_am_algebra(SeqLim(theta)).is_am_algebra == (theta == 1)


def test_am_product_identity():
    X = FiniteSup((4, 1))
    e = order_unit(X)
    x = vec(X, [3, "1/2"])
    assert am_product(X, e, x) == x
    with pytest.raises(PreconditionError):
        am_product(SeqLim(2), vec(SeqLim(2), ([], 1)), vec(SeqLim(2), ([], 1)))


def test_identity_weight_unique_small():
    res = am_product_is_unique(FiniteSup((1, 2)), ("0", "1/2", "1", "2"))
    assert res.unique
    assert res.identity_weights == (constant_weight(FiniteSup((1, 2)), 1),)


# -- roots -----------------------------------------------------------------


def test_exact_root():
    assert exact_root(mpq(9, 4), 2) == mpq(3, 2)
    assert exact_root(mpq(2), 2) is None
    assert exact_root(mpq(27, 8), 3) == mpq(3, 2)


def test_square_root_finite_sup():
    X = FiniteSup((1, 1))
    assert nth_root(X, vec(X, [4, 9]), 2) == vec(X, [2, 3])


def test_square_root_weighted():
    X = FiniteSup((4, 1))
    x = vec(X, [1, 4])
    g = nth_root(X, x, 2)
    # g = (1/2, 2): 4 * (1/2)^2 = 1
    assert g == vec(X, ["1/2", 2])
    assert power(X, constant_weight(X), g, 2) == x
    assert norm(X, g) ** 2 == norm(X, x)


def test_irrational_root_is_float_and_close():
    X = FiniteSup((1, 1))
    x = vec(X, [2, 4])
    g = nth_root(X, x, 2)
    assert all(isinstance(v, float) for v in g.coords)
    coord, nrm = root_residuals(X, x, g, 2)
    assert coord <= 1e-12 * 4 and nrm <= 1e-12 * 4


def test_root_preconditions():
    X = FiniteSup((1,))
    with pytest.raises(PreconditionError):
        nth_root(X, vec(X, [-1]), 2)
    with pytest.raises(PreconditionError):
        nth_root(SeqLim(2), vec(SeqLim(2), ([], 1)), 2)


def test_seqlim_root():
    S = SeqLim(1)
    g = nth_root(S, vec(S, ([4], 9)), 2)
    assert g == vec(S, ([2], 3))


@given(st.data(), am_spaces(), st.integers(1, 3))
def test_root_of_power_roundtrip(data, space, n):
    if not classify_am_algebra(space).is_am_algebra:
        return
    g = data.draw(vectors(space, nonneg))
    x = power(space, constant_weight(space), g, n)
    assert nth_root(space, x, n) == g
    assert norm(space, g) ** n == norm(space, x)


def test_root_uniqueness_grid():
    X = FiniteSup((1, 2))
    x = vec(X, [1, 2])
    g = nth_root(X, x, 2)
    grid = [mpq(k, 8) for k in range(0, 17)]
    hits = [h for h in itertools.product(grid, repeat=2) if power(X, constant_weight(X), vec(X, h), 2) == x]
    assert [vec(X, h) for h in hits] == [g]


# -- Nakano ----------------------------------------------------------------


def test_nakano_staircase_theta2_fails():
    S = SeqLim(2)
    nw = nakano_witness(S, [Staircase((), 1, 0)])
    assert (nw.sup_norms, nw.inf_bound_norms, nw.equal) == (1, 2, False)


def test_nakano_staircase_theta1_holds():
    S = SeqLim(1)
    nw = nakano_witness(S, [Staircase((), 1, 0)])
    assert (nw.sup_norms, nw.inf_bound_norms, nw.equal) == (1, 1, True)


def test_nakano_finite_family_has_no_gap():
    # any finite truncation has its bound inside the family's own support
    S = SeqLim(2)
    fam = [Staircase((), 1, 0).member(k) for k in range(1, 6)]
    nw = nakano_witness(S, fam)
    assert nw.equal and nw.inf_bound_norms == 1


@given(st.data(), am_spaces())
def test_nakano_inf_never_below_sup(data, space):
    fam = data.draw(st.lists(vectors(space, nonneg), min_size=1, max_size=4))
    nw = nakano_witness(space, fam)
    assert nw.sup_norms <= nw.inf_bound_norms


@given(st.data(), st.sampled_from([FiniteSup((1, 1)), FiniteSup((1, 2, 4)), SeqLim(1)]))
def test_nakano_holds_on_am_algebras_of_pairs(data, space):
    # on an AM-algebra, finite families satisfy ||x v y|| = max
    fam = data.draw(st.lists(vectors(space, nonneg), min_size=1, max_size=4))
    assert nakano_witness(space, fam).equal


def test_nakano_rejects_negative():
    X = FiniteSup((1,))
    with pytest.raises(PreconditionError):
        nakano_witness(X, [vec(X, [-1])])

import itertools
import os

import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from amalg.homomorphisms import (
    as_index_map,
    ball_square_condition,
    composition_form,
    is_algebra_hom,
    is_lattice_hom,
    modulus_witness,
    reconstruct,
    signed_probes,
)
from amalg.lattice import FiniteSup, basis, lattice_join, lattice_meet, vec
from amalg.operators import IndexMap, Matrix, apply, matrix
from amalg.products import weighted_product
from amalg.sweeps import hom_predicates, hom_sweep, row_options
from amalg.weights import constant_weight

SWAP = [[0, 1], [1, 0]]


def test_apply_examples():
    assert apply(matrix(SWAP), vec(FiniteSup((1, 1)), [2, 3])).coords == (3, 2)
    assert apply(matrix([[2, 0], [0, 2]]), vec(FiniteSup((1, 1)), [1, 0])).coords == (2, 0)
    X = FiniteSup((1, 2))
    ident = IndexMap(X, X, ((("coord", 0), ("coord", 0), 1), (("coord", 1), ("coord", 1), 1)))
    x = vec(X, [5, 7])
    assert apply(ident, x) == x


def test_lattice_hom_examples():
    assert is_lattice_hom(matrix(SWAP))
    assert not is_lattice_hom(matrix([[1, 1], [0, 1]]))
    assert modulus_witness(matrix([[1, 1], [0, 1]]), signed_probes(FiniteSup((1, 1)))) is not None
    assert is_lattice_hom(matrix([[2, 0], [0, 2]]))


def test_algebra_hom_examples():
    assert is_algebra_hom(matrix(SWAP)) == (True, None)
    ok, w = is_algebra_hom(matrix([[2, 0], [0, 2]]))
    assert not ok
    assert w.x == w.y == vec(FiniteSup((1, 1)), [1, 0])
    assert w.product_of_images.coords == (4, 0)
    assert w.image_of_product.coords == (2, 0)
    T = matrix([[4, 0], [0, 0]], FiniteSup((4, 1)), FiniteSup((1, 1)))
    assert is_algebra_hom(T)[0]


def test_row_path_agrees_with_basis_path():
    X, Y = FiniteSup((1, 2)), FiniteSup((4, 1))
    for rows in itertools.product(row_options(2, [mpq(1, 2), mpq(1), mpq(2), mpq(4)]), repeat=2):
        T = Matrix(rows, X, Y)
        explicit = is_algebra_hom(T, weighted_product(X, constant_weight(X)), weighted_product(Y, constant_weight(Y)))
        assert is_algebra_hom(T)[0] == explicit[0]


def test_ball_square_examples():
    assert ball_square_condition(matrix(SWAP))
    assert not ball_square_condition(matrix([[2, 0], [0, 2]]))
    assert ball_square_condition(matrix([[4, 0], [0, 0]], FiniteSup((4, 1)), FiniteSup((1, 1))))


def test_composition_form_examples():
    form = composition_form(matrix(SWAP))
    assert form.labels() == [("delta_1", "delta_2"), ("delta_2", "delta_1")]
    assert composition_form(matrix([[0, 0], [0, 0]])).phi == (None, None)
    T = matrix([[4, 0], [0, 0]], FiniteSup((4, 1)), FiniteSup((1, 1)))
    form = composition_form(T)
    assert form.phi == (0, None)
    assert reconstruct(form) == T
    assert composition_form(matrix([[2, 0], [0, 2]])) is None


@st.composite
def row_matrices(draw):
    n, m = draw(st.integers(1, 3)), draw(st.integers(1, 3))
    c = tuple(draw(st.sampled_from([1, 2, 4])) for _ in range(n))
    d = tuple(draw(st.sampled_from([1, 2, 4])) for _ in range(m))
    rows = row_options(n, [mpq(v) for v in ("1/2", 1, 2, 4)])
    T = tuple(draw(st.sampled_from(rows)) for _ in range(m))
    return Matrix(T, FiniteSup(c), FiniteSup(d))


@given(row_matrices())
def test_algebra_homs_preserve_modulus(T):
    if is_algebra_hom(T)[0]:
        assert modulus_witness(T, signed_probes(T.domain)) is None


@given(row_matrices())
def test_range_is_sublattice(T):
    if not is_algebra_hom(T)[0]:
        return
    images = [apply(T, x) for x in signed_probes(T.domain, (-1, 0, 2))]
    image_set = set(images)
    for a, b in itertools.combinations(images[:12], 2):
        assert lattice_join(T.codomain, a, b) in image_set
        assert lattice_meet(T.codomain, a, b) in image_set


@given(row_matrices(), st.data())
def test_predicates_invariant_under_relabelling(T, data):
    # the reduced sweep relies on this: permuting coordinates of both spaces
    # (and the matrix accordingly) leaves all three predicates unchanged
    n, m = len(T.domain.weights), len(T.codomain.weights)
    p = data.draw(st.permutations(range(n)))
    r = data.draw(st.permutations(range(m)))
    c = tuple(T.domain.weights[p[i]] for i in range(n))
    d = tuple(T.codomain.weights[r[k]] for k in range(m))
    rows = tuple(tuple(T.rows[r[k]][p[i]] for i in range(n)) for k in range(m))
    assert hom_predicates(Matrix(rows, FiniteSup(c), FiniteSup(d))) == hom_predicates(T)


def test_index_map_form_agrees():
    T = matrix([[0, 2], [1, 0], [0, 0]], FiniteSup((1, 2)), FiniteSup((1, 1, 4)))
    form = composition_form(T)
    f = as_index_map(form)
    for e in basis(T.domain):
        assert apply(f, e) == apply(T, e)


def test_small_sweep_has_no_discrepancies():
    report = hom_sweep(n_max=2, m_max=2, entries=("0", "1", "2"), dual_weights=("1", "2"), reduced=False)
    assert report["discrepancies"] == []
    assert report["homomorphisms"] > 0


@pytest.mark.skipif(not os.environ.get("AMALG_FULL_SWEEP"), reason="set AMALG_FULL_SWEEP=1 for the unreduced sweep")
def test_full_unreduced_sweep():
    report = hom_sweep(reduced=False)
    assert report["discrepancies"] == []

"""Lattice and algebra homomorphisms between finite AM-algebras.

For ``T: X -> Y`` between AM-algebras the following agree:

* ``T`` is an algebra homomorphism;
* ``T`` is a lattice homomorphism and ``T(e)^2 = T(e)`` for the order unit
  (the finite-dimensional form of the ball-square condition);
* ``Tf = f o phi`` for a map ``phi`` sending unit dual atoms of ``Y`` to
  unit dual atoms of ``X`` or to 0.

On FiniteSup spaces with dual weights ``c`` (domain) and ``d`` (codomain)
this means every row of ``T`` has at most one nonzero entry and that entry
is ``c_i / d_k``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Optional

from gmpy2 import mpq

from .lattice import (
    FiniteSup,
    FinVec,
    InvariantBreach,
    PreconditionError,
    abs_,
    basis,
    order_unit,
)
from .operators import IndexMap, Matrix, apply
from .products import _product
from .weights import constant_weight


def _am_product(space) -> Callable:
    w = constant_weight(space, 1)
    return lambda x, y: _product(space, w, x, y)


def _require_finite_sup(T) -> None:
    if not (isinstance(T.domain, FiniteSup) and isinstance(T.codomain, FiniteSup)):
        raise PreconditionError("only FiniteSup -> FiniteSup operators are supported here")


def is_lattice_hom(T) -> bool:
    """Structural test: a matrix is a lattice homomorphism iff every row is
    nonnegative with at most one nonzero entry.  IndexMaps are lattice
    homomorphisms by construction."""
    if isinstance(T, IndexMap):
        return True
    if isinstance(T, Matrix):
        for row in T.rows:
            nz = [a for a in row if a]
            if len(nz) > 1 or any(a < 0 for a in nz):
                return False
        return True
    raise TypeError(f"not an operator: {T!r}")


def signed_probes(space, values=(-1, 0, 1)) -> list:
    """Every vector of a FiniteSup space with coordinates in ``values``."""
    vals = [mpq(v) for v in values]
    return [FinVec(p) for p in itertools.product(vals, repeat=space.n)]


def modulus_witness(T, probes) -> Optional[FinVec]:
    """A probe ``x`` with ``|Tx| != T|x|``, if any."""
    for x in probes:
        if abs_(T.codomain, apply(T, x)) != apply(T, abs_(T.domain, x)):
            return x
    return None


@dataclass(frozen=True)
class HomWitness:
    x: object
    y: object
    product_of_images: object
    image_of_product: object


def is_algebra_hom(
    T,
    dom_prod: Optional[Callable] = None,
    cod_prod: Optional[Callable] = None,
    witness: bool = True,
) -> tuple:
    """Is ``P_Y(Tx, Ty) = T P_X(x, y)`` for all x, y?  Returns ``(bool, witness)``.

    With the default AM-algebra products on FiniteSup spaces the decision is
    made row by row from the entry condition ``d_k a^2 = c_i a``; otherwise
    every pair of basis vectors is checked, which suffices by bilinearity.
    ``witness=False`` skips building the failing pair (sweeps).
    """
    if dom_prod is None and cod_prod is None and isinstance(T, Matrix):
        _require_finite_sup(T)
        return _algebra_hom_rows(T, witness)
    dom_prod = dom_prod or _am_product(T.domain)
    cod_prod = cod_prod or _am_product(T.codomain)
    return algebra_hom_on_basis(T, dom_prod, cod_prod)


def algebra_hom_on_basis(T, dom_prod: Callable, cod_prod: Callable) -> tuple:
    es = basis(T.domain)
    images = [apply(T, e) for e in es]
    for (i, x), (j, y) in itertools.combinations_with_replacement(enumerate(es), 2):
        lhs = cod_prod(images[i], images[j])
        rhs = apply(T, dom_prod(x, y))
        if lhs != rhs:
            return False, HomWitness(x, y, lhs, rhs)
    return True, None


def _algebra_hom_rows(T: Matrix, want_witness: bool = True) -> tuple:
    c, d = T.domain.weights, T.codomain.weights
    e = basis(T.domain)

    def witness(i, j):
        if not want_witness:
            return None
        prod = _am_product(T.domain)
        lhs = _am_product(T.codomain)(apply(T, e[i]), apply(T, e[j]))
        return HomWitness(e[i], e[j], lhs, apply(T, prod(e[i], e[j])))

    for k, row in enumerate(T.rows):
        nz = [i for i, a in enumerate(row) if a]
        if len(nz) > 1:
            # P(e_i, e_j) = 0 but the k-th coordinate of P(Te_i, Te_j) is not
            return False, witness(nz[0], nz[1])
        if nz:
            i = nz[0]
            if row[i] != c[i] / d[k]:
                return False, witness(i, i)
    return True, None


def ball_square_condition(T, cod_prod: Optional[Callable] = None) -> bool:
    """``(Te)^2 == Te`` for the order unit ``e`` of the domain."""
    _require_finite_sup(T)
    cod_prod = cod_prod or _am_product(T.codomain)
    te = apply(T, order_unit(T.domain))
    return cod_prod(te, te) == te


@dataclass(frozen=True)
class CompositionForm:
    """``phi[k]`` is the domain coordinate whose unit atom ``c_i delta_i`` the
    codomain unit atom ``d_k delta_k`` is sent to, or ``None`` for 0."""

    domain: FiniteSup
    codomain: FiniteSup
    phi: tuple

    def labels(self) -> list:
        return [
            (f"delta_{k + 1}", "0" if i is None else f"delta_{i + 1}")
            for k, i in enumerate(self.phi)
        ]


def composition_form(T: Matrix) -> Optional[CompositionForm]:
    """``phi`` with ``Tf = f o phi``, or ``None`` when no such map exists.

    ``(Tf)(d_k delta_k) = f(c_i delta_i)`` reads ``T[k][i] = c_i / d_k``, and
    both unit atoms have norm one, so ``||phi(y*)|| = ||y*||`` off the kernel.
    """
    _require_finite_sup(T)
    c, d = T.domain.weights, T.codomain.weights
    phi = []
    for k, row in enumerate(T.rows):
        nz = [i for i, a in enumerate(row) if a]
        if not nz:
            phi.append(None)
            continue
        if len(nz) > 1:
            return None
        i = nz[0]
        if row[i] * d[k] != c[i]:
            return None
        phi.append(i)
    return CompositionForm(T.domain, T.codomain, tuple(phi))


def reconstruct(form: CompositionForm) -> Matrix:
    """The matrix of ``f -> f o phi``."""
    c, d = form.domain.weights, form.codomain.weights
    rows = []
    for k, i in enumerate(form.phi):
        row = [mpq(0)] * len(c)
        if i is not None:
            row[i] = c[i] / d[k]
        rows.append(tuple(row))
    return Matrix(tuple(rows), form.domain, form.codomain)


def as_index_map(form: CompositionForm) -> IndexMap:
    """The same operator as an IndexMap: ``(Tx)_k = (c_i / d_k) x_i``."""
    c, d = form.domain.weights, form.codomain.weights
    entries = tuple(
        (("coord", k), ("coord", i), c[i] / d[k]) for k, i in enumerate(form.phi) if i is not None
    )
    return IndexMap(form.domain, form.codomain, entries)


def composition_form_checked(T: Matrix) -> Optional[CompositionForm]:
    """``composition_form`` followed by reconstruction; a mismatch is a bug."""
    form = composition_form(T)
    if form is not None and reconstruct(form) != T:
        raise InvariantBreach("composition form does not reconstruct the operator")
    return form

"""The center ``Z(X)``: operators with ``-lambda I <= T <= lambda I``.

On the model spaces these are exactly the multiplication operators ``M_h``
by a 0-homogeneous symbol ``h``, and ``h -> M_h`` is an isometric algebra
and lattice isomorphism onto the center.  Symbols share the representation
of weights (values on ``K_X^1``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from gmpy2 import mpq

from .lattice import (
    FiniteSup,
    InvariantBreach,
    ModelSpace,
    PreconditionError,
    SeqLim,
    SupDirectSum,
    dimension,
)
from .operators import COORD, IndexMap, Matrix, Multiplier, operator_norm
from .weights import FinWeight, SeqWeight, SumWeight, sup_norm, weight_map


@dataclass(frozen=True)
class CentralResult:
    symbol: object
    norm: mpq


def symbol_is_continuous(space: ModelSpace, h) -> bool:
    """A 0-homogeneous symbol must agree along ``delta_j -> delta_inf``."""
    if isinstance(space, SeqLim):
        return h.tail == h.limit
    if isinstance(space, SupDirectSum):
        return symbol_is_continuous(space.left, h.left) and symbol_is_continuous(space.right, h.right)
    return True


def mult_operator(space: ModelSpace, h):
    """``M_h``: a diagonal Matrix on FiniteSup, a Multiplier elsewhere."""
    if not symbol_is_continuous(space, h):
        raise PreconditionError("central symbols must be continuous: tail value differs from limit value")
    if isinstance(space, FiniteSup):
        n = space.n
        rows = tuple(tuple(h.values[i] if i == j else mpq(0) for j in range(n)) for i in range(n))
        return Matrix(rows, space, space)
    return Multiplier(space, h)


def _diagonal_symbol(T: Matrix) -> Optional[tuple]:
    d = len(T.rows)
    for i, row in enumerate(T.rows):
        for j, a in enumerate(row):
            if a and i != j:
                return None
    return tuple(T.rows[i][i] for i in range(d))


def _indexmap_symbol(T: IndexMap):
    # only SeqLim IndexMaps are converted; every entry must fix its atom
    if not isinstance(T.domain, SeqLim):
        return None
    coords, tail, limit = {}, mpq(0), mpq(0)
    for b, a, s in T.entries:
        if a != b:
            return None
        if b[0] == COORD:
            coords[b[1]] = s
        elif b[0] == "tail":
            tail = s
        else:
            limit = s
    depth = max(coords, default=-1) + 1
    prefix = tuple(coords.get(j, tail if ("tail",) in T.table else mpq(0)) for j in range(depth))
    return SeqWeight(prefix, tail, limit)


def decide_central(space: ModelSpace, T) -> Optional[CentralResult]:
    """The symbol ``h`` with ``T = M_h``, or ``None`` when ``T`` is not central.

    Finite spaces: ``T`` is central iff its matrix is diagonal.  SeqLim: ``T``
    must be a multiplication with tail value equal to the limit value, since
    otherwise ``T`` maps the constant sequences out of the space.  The
    returned norm is ``||h||_inf`` and is checked against the operator norm.
    """
    if T.domain != space or T.codomain != space:
        raise PreconditionError("decide_central needs an endomorphism of the space")
    if isinstance(T, Matrix):
        diag = _diagonal_symbol(T)
        if diag is None:
            return None
        if dimension(space) != len(diag):
            raise InvariantBreach("diagonal length differs from the dimension")
        h = FinWeight(diag) if not isinstance(space, SupDirectSum) else _split(space, diag)
    elif isinstance(T, Multiplier):
        h = T.symbol
    elif isinstance(T, IndexMap):
        h = _indexmap_symbol(T)
        if h is None:
            return None
    else:
        raise TypeError(f"not an operator: {T!r}")
    if not symbol_is_continuous(space, h):
        return None
    hn = sup_norm(space, h)
    if isinstance(T, Matrix) and isinstance(space, FiniteSup) or isinstance(T, Multiplier):
        if operator_norm(T) != hn:
            raise InvariantBreach(f"||M_h|| = {operator_norm(T)} differs from ||h||_inf = {hn}")
    return CentralResult(h, hn)


def _split(space, diag):
    if isinstance(space, SupDirectSum):
        k = dimension(space.left)
        return SumWeight(_split(space.left, diag[:k]), _split(space.right, diag[k:]))
    return FinWeight(diag)


def symbol_product(space: ModelSpace, h, k):
    """Pointwise product ``h * k`` of two symbols."""
    return weight_map(space, lambda a, b: a * b, h, k)

"""AM-algebras: classification, the AM-algebra product, roots, and Nakano's condition.

An AM-space is an AM-algebra exactly when the constant-one weight lies in
``W_X``, equivalently when the norm is weak*-continuous on ``K_X*``; the
AM-algebra product is then ``P(f, g)(x*) = f(x*) g(x*) / ||x*||``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

import gmpy2
from gmpy2 import mpq

from .lattice import (
    FiniteSup,
    MPQ,
    InvariantBreach,
    ModelSpace,
    PreconditionError,
    SeqLim,
    SeqVec,
    SumVec,
    SupDirectSum,
    basis,
    check,
    is_positive,
    lattice_join,
    norm,
    order_unit,
    prefix_depth,
    q,
    values,
)
from .products import _product, product
from .spectrum import (
    ConvergenceDatum,
    dual_atoms,
    evaluate,
    from_atom_values,
    norm_weakstar_continuous,
    require_am,
)
from .products import WxWitness, wx_membership
from .weights import FinWeight, constant_weight


@dataclass(frozen=True)
class AMClassification:
    is_am_algebra: bool
    wx_witness: Optional[WxWitness]
    norm_witness: Optional[ConvergenceDatum]
    am_weight: object = None


def classify_am_algebra(space: ModelSpace) -> AMClassification:
    """Decide whether ``space`` is an AM-algebra, two independent ways.

    One route asks whether the constant-one weight is in ``W_X``; the other
    whether the norm is weak*-continuous on ``K_X*``.  They must agree.
    """
    require_am(space)
    one = constant_weight(space, 1)
    in_wx, wx_witness = wx_membership(space, one)
    continuous, norm_witness = norm_weakstar_continuous(space)
    if in_wx != continuous:
        raise InvariantBreach(
            f"constant-one membership ({in_wx}) disagrees with norm continuity ({continuous})"
        )
    return AMClassification(in_wx, wx_witness, norm_witness, one if in_wx else None)


def am_product(space: ModelSpace, x, y):
    """The AM-algebra product ``P_1(x, y)``."""
    cls = classify_am_algebra(space)
    if not cls.is_am_algebra:
        raise PreconditionError(f"{space!r} is not an AM-algebra")
    return product(space, cls.am_weight, x, y)


def power(space: ModelSpace, w, g, n: int):
    """``g^n`` for the weighted product ``P_w`` (no precondition checks)."""
    out = g
    for _ in range(n - 1):
        out = _product(space, w, out, g)
    return out


# --------------------------------------------------------------------------
# uniqueness of the identity-bearing product


@dataclass(frozen=True)
class UniquenessResult:
    unique: bool
    identity_weights: tuple


def am_product_is_unique(space: FiniteSup, grid: Sequence) -> UniquenessResult:
    """Sweep every weight in ``grid^n``; keep those for which the order unit
    ``e`` (``e_i = 1/c_i``) is an algebraic identity.  Unique iff exactly one
    survives and it is the constant-one weight."""
    if not isinstance(space, FiniteSup):
        raise PreconditionError("the order-unit sweep is defined on FiniteSup spaces")
    grid = [q(v) for v in grid]
    e = order_unit(space)
    probes = basis(space)
    found = []
    for values_ in itertools.product(grid, repeat=space.n):
        if any(v < 0 for v in values_):
            continue
        w = FinWeight(values_)
        if all(_product(space, w, e, x) == x and _product(space, w, x, e) == x for x in probes):
            found.append(w)
    unique = len(found) == 1 and found[0] == constant_weight(space, 1)
    return UniquenessResult(unique, tuple(found))


# --------------------------------------------------------------------------
# n-th roots


def exact_root(v: mpq, n: int) -> Optional[mpq]:
    """The rational n-th root of ``v >= 0`` when it exists."""
    a, exact_a = gmpy2.iroot(v.numerator, n)
    b, exact_b = gmpy2.iroot(v.denominator, n)
    return mpq(a, b) if exact_a and exact_b else None


def _root(v, n: int):
    if isinstance(v, MPQ):
        r = exact_root(v, n)
        if r is not None:
            return r
    return float(v) ** (1.0 / n)


def nth_root(space: ModelSpace, x, n: int):
    """The unique positive ``g`` with ``g^n = x`` for the AM-algebra product.

    At a dual atom of norm ``r`` the root takes the value
    ``r^(1 - 1/n) * x(atom)^(1/n)``.  Coordinates are exact rationals when the
    radical is rational, binary64 floats otherwise.
    """
    if n < 1:
        raise PreconditionError("root order must be >= 1")
    cls = classify_am_algebra(space)
    if not cls.is_am_algebra:
        raise PreconditionError(f"{space!r} is not an AM-algebra")
    check(space, x)
    if not is_positive(space, x):
        raise PreconditionError("roots are taken of positive vectors only")
    depth = prefix_depth(space, x)
    table = {}
    for a in dual_atoms(space, depth):
        # r^(1-1/n) v^(1/n) = (r^(n-1) v)^(1/n)
        table[a.key] = _root(a.dual_norm ** (n - 1) * evaluate(space, a, x), n)
    if any(isinstance(v, float) for v in table.values()):
        table = {k: float(v) for k, v in table.items()}
    return from_atom_values(space, table, depth)


def root_residuals(space: ModelSpace, x, g, n: int) -> tuple:
    """``(|g^n - x|_inf, | ||g||^n - ||x|| |)`` as floats."""
    one = constant_weight(space, 1)
    gn = power(space, one, g, n)
    coord = max(abs(float(a) - float(b)) for a, b in zip(values(space, gn), values(space, _align(space, x, gn))))
    nrm = abs(float(norm(space, g)) ** n - float(norm(space, x)))
    return coord, nrm


def _align(space, x, like):
    # pad SeqLim prefixes so coordinate lists line up with ``like``
    if isinstance(space, SeqLim):
        return _Padded(x, len(like.prefix))
    if isinstance(space, SupDirectSum):
        return SumVec(_align(space.left, x.left, like.left), _align(space.right, x.right, like.right))
    return x


class _Padded(SeqVec):
    def __init__(self, x, length):
        object.__setattr__(self, "prefix", x.padded(max(length, len(x.prefix))))
        object.__setattr__(self, "tail", x.tail)


# --------------------------------------------------------------------------
# Nakano's condition: sup ||a|| over A equals inf ||b|| over upper bounds b


@dataclass(frozen=True)
class Staircase:
    """The infinite family ``{prefix ++ [front]*k ++ (tail, tail, ...) : k >= 1}`` in SeqLim."""

    prefix: tuple
    front: mpq
    tail: mpq

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(q(v) for v in self.prefix))
        object.__setattr__(self, "front", q(self.front))
        object.__setattr__(self, "tail", q(self.tail))

    def member(self, k: int) -> SeqVec:
        return SeqVec(self.prefix + (self.front,) * k, self.tail)

    def supremum(self) -> SeqVec:
        """Coordinatewise supremum over all ``k >= 1``."""
        return SeqVec(self.prefix + (self.front,), max(self.front, self.tail))

    def sup_norm(self, space: SeqLim):
        # every member with k >= 1 takes the same set of values, tail included
        return norm(space, self.member(1))


@dataclass(frozen=True)
class NakanoWitness:
    sup_norms: mpq
    inf_bound_norms: mpq
    equal: bool
    least_bound: object


def nakano_witness(space: ModelSpace, family: Sequence) -> NakanoWitness:
    """Compare ``sup{||a|| : a in A}`` with ``inf{||b|| : b >= A}`` exactly.

    ``family`` lists positive vectors of ``space`` and, for SeqLim, infinite
    ``Staircase`` families.  The infimum is attained at the coordinatewise
    supremum ``s`` of ``A``: every upper bound ``b`` satisfies ``b >= s >= 0``
    and the norm is a lattice norm.
    """
    require_am(space)
    if not family:
        raise PreconditionError("A must be nonempty")
    sups, norms = [], []
    for a in family:
        if isinstance(a, Staircase):
            if not isinstance(space, SeqLim):
                raise PreconditionError("staircase families live in SeqLim")
            if min(a.prefix + (a.front, a.tail)) < 0:
                raise PreconditionError("A must consist of positive elements")
            sups.append(a.supremum())
            norms.append(a.sup_norm(space))
        else:
            check(space, a)
            if not is_positive(space, a):
                raise PreconditionError("A must consist of positive elements")
            sups.append(a)
            norms.append(norm(space, a))
    bound = sups[0]
    for s in sups[1:]:
        bound = lattice_join(space, bound, s)
    sup_norms, inf_norms = max(norms), norm(space, bound)
    if inf_norms < sup_norms:
        raise InvariantBreach("an upper bound has smaller norm than a member of A")
    return NakanoWitness(sup_norms, inf_norms, sup_norms == inf_norms, bound)

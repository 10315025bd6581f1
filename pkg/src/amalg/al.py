"""f-algebra products on finite AL model spaces.

On an AL-space every f-algebra product is carried by the atoms:

    P(f, g) = sum_i w(i) e_i*(f) e_i*(g) e_i,   w in l^inf(I)_+,

and the atomless part annihilates everything.  So a space without atoms
admits only the zero product, while an atom gives a nontrivial product
that can be lifted through the band projection onto it.
"""

from __future__ import annotations

import itertools
from typing import Callable, Optional

from gmpy2 import mpq

from .lattice import (
    ALVec,
    FiniteAL,
    FiniteSup,
    FinVec,
    ModelSpace,
    PreconditionError,
    SeqLim,
    SpaceMismatch,
    SumVec,
    SupDirectSum,
    check,
    dimension,
    q,
    zero,
)
from .products import ProductTensor
from .weights import FinWeight, check_weight, constant_weight

ALWeight = FinWeight


def al_weight(values) -> ALWeight:
    return FinWeight(tuple(q(v) for v in values))


def al_product(space: FiniteAL, w: ALWeight, x: ALVec, y: ALVec) -> ALVec:
    """``sum_i w_i x_i y_i e_i``; the nonatomic mass of the result is 0."""
    if not isinstance(space, FiniteAL):
        raise PreconditionError("al_product is defined on FiniteAL spaces")
    check_weight(space, w)
    check(space, x)
    check(space, y)
    if any(v < 0 for v in w.values):
        raise PreconditionError("AL weights must be nonnegative")
    atoms = tuple(wi * a * b for wi, a, b in zip(w.values, x.atoms, y.atoms))
    return ALVec(atoms, mpq(0))


def al_product_fn(space: FiniteAL, w: ALWeight) -> Callable:
    return lambda x, y: al_product(space, w, x, y)


def al_decide_tensor(space: FiniteAL, B: ProductTensor) -> Optional[ALWeight]:
    """The weight of ``B`` when it is an f-algebra product, else ``None``.

    Same exact decision as on FiniteSup: nonnegative entries, and nonzero
    only on the diagonal ``i == j == k``.  With a band present its index is
    the last one; a band vector is disjoint from every atom, so any nonzero
    entry touching it already breaks the f-algebra property or the
    annihilation of the atomless part.  ``w_i = B[i][i][i]``.
    """
    if not isinstance(space, FiniteAL):
        raise PreconditionError("al_decide_tensor is defined on FiniteAL spaces")
    d = dimension(space)
    if B.dim != d:
        raise SpaceMismatch("tensor dimension does not match the space")
    for i, j, k in itertools.product(range(d), repeat=3):
        b = B.entries[i][j][k]
        if b < 0:
            return None
        if b and not (i == j == k and i < space.n):
            return None
    return FinWeight(tuple(B.entries[i][i][i] for i in range(space.n)))


def is_al_submultiplicative(space: FiniteAL, w: ALWeight) -> bool:
    """``||P(x, y)||_1 <= ||x||_1 ||y||_1`` for all x, y, i.e. ``max w_i <= 1``."""
    check_weight(space, w)
    return max(w.values, default=mpq(0)) <= 1


def atom_count(space: ModelSpace) -> int:
    """Number of atoms of a finite model space."""
    if isinstance(space, FiniteAL):
        return space.n
    if isinstance(space, FiniteSup):
        return space.n
    if isinstance(space, SupDirectSum):
        return atom_count(space.left) + atom_count(space.right)
    if isinstance(space, SeqLim):
        raise PreconditionError("SeqLim has infinitely many atoms")
    raise TypeError(f"unknown space {space!r}")


def only_zero_product(space: ModelSpace) -> bool:
    """True iff the only f-algebra product on ``space`` is zero, i.e. no atoms."""
    if isinstance(space, SeqLim):
        return False
    return atom_count(space) == 0


# --------------------------------------------------------------------------
# band projections and lifting
#
# A band is named by a path: "left" / "right" for a summand of a
# SupDirectSum (nest as ("left", inner_band)), "atoms" for the atomic band
# of a FiniteAL, ("atom", i) for a single FiniteAL atom and ("coord", i) for
# a single FiniteSup coordinate.


def _path(band):
    if isinstance(band, str):
        return (band,)
    return tuple(band)


def band_space(outer: ModelSpace, band) -> ModelSpace:
    """The band itself, as a model space."""
    p = _path(band)
    tag = p[0]
    if isinstance(outer, SupDirectSum) and tag in ("left", "right"):
        inner = getattr(outer, tag)
        return inner if len(p) == 1 else band_space(inner, p[1])
    if isinstance(outer, FiniteAL) and tag == "atoms" and outer.n > 0:
        return FiniteAL(outer.n)
    if isinstance(outer, FiniteAL) and tag == "atom" and 0 <= p[1] < outer.n:
        return FiniteAL(1)
    if isinstance(outer, FiniteSup) and tag == "coord" and 0 <= p[1] < outer.n:
        return FiniteSup((outer.weights[p[1]],))
    raise PreconditionError(f"{band!r} is not a declared band of {outer!r}")


def project(outer: ModelSpace, band, x):
    """The band projection ``Qx``, as a vector of the band space."""
    band_space(outer, band)
    p = _path(band)
    tag = p[0]
    if tag in ("left", "right"):
        inner = getattr(x, tag)
        return inner if len(p) == 1 else project(getattr(outer, tag), p[1], inner)
    if tag == "atoms":
        return ALVec(x.atoms, mpq(0))
    if tag == "atom":
        return ALVec((x.atoms[p[1]],), mpq(0))
    return FinVec((x.coords[p[1]],))


def embed(outer: ModelSpace, band, v):
    """The inclusion of the band into ``outer``."""
    p = _path(band)
    tag = p[0]
    if tag in ("left", "right"):
        inner = v if len(p) == 1 else embed(getattr(outer, tag), p[1], v)
        other = zero(outer.right if tag == "left" else outer.left)
        return SumVec(inner, other) if tag == "left" else SumVec(other, inner)
    if tag == "atoms":
        return ALVec(v.atoms, mpq(0))
    if tag == "atom":
        atoms = [mpq(0)] * outer.n
        atoms[p[1]] = v.atoms[0]
        return ALVec(tuple(atoms), mpq(0))
    coords = [mpq(0)] * outer.n
    coords[p[1]] = v.coords[0]
    return FinVec(tuple(coords))


def lift_band_product(outer: ModelSpace, band, inner: Callable) -> Callable:
    """``x, y -> P(Qx, Qy)`` with ``Q`` the projection onto ``band``."""
    band_space(outer, band)

    def lifted(x, y):
        return embed(outer, band, inner(project(outer, band, x), project(outer, band, y)))

    return lifted


def first_atom_band(space: ModelSpace):
    """A path to some atom of ``space``, or ``None`` when it has none."""
    if isinstance(space, FiniteAL):
        return ("atom", 0) if space.n else None
    if isinstance(space, FiniteSup):
        return ("coord", 0)
    if isinstance(space, SupDirectSum):
        for side in ("left", "right"):
            inner = first_atom_band(getattr(space, side))
            if inner is not None:
                return (side, inner)
    return None


def atom_product(space: ModelSpace) -> Callable:
    """A nonzero f-algebra product on a space with an atom, lifted from the
    one-dimensional product on that atom's band."""
    band = first_atom_band(space)
    if band is None:
        raise PreconditionError("the space has no atoms, so only the zero product exists")
    # walk down to the one-dimensional leaf band
    leaf = band_space(space, band)
    if isinstance(leaf, FiniteAL):
        w = constant_weight(leaf, 1)
        inner = al_product_fn(leaf, w)
    else:
        c = leaf.weights[0]
        inner = lambda x, y: FinVec((c * x.coords[0] * y.coords[0],))
    return lift_band_product(space, band, inner)

"""Bounded functions on the unit spectrum ``K_X^1``.

A weight is stored by its values at the unit representatives of the dual
atoms.  The same representation carries central symbols ``h``, which are
0-homogeneous and therefore determined by their values on ``K_X^1`` too.

* FiniteSup: ``FinWeight(values)``; one value per coordinate.
* SeqLim: ``SeqWeight(prefix, tail, limit)``; ``prefix[j]`` at ``delta_j``,
  ``tail`` at ``delta_j`` for large ``j`` and ``limit`` at ``theta*delta_inf``.
* SupDirectSum: ``SumWeight(left, right)``.

FiniteAL atom weights reuse ``FinWeight`` (aliased ``ALWeight`` in :mod:`amalg.al`).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

from gmpy2 import mpq

from .lattice import (
    FiniteAL,
    FiniteSup,
    ModelSpace,
    SeqLim,
    SpaceMismatch,
    SupDirectSum,
    trim_prefix,
    q,
)


@dataclass(frozen=True)
class FinWeight:
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))


@dataclass(frozen=True)
class SeqWeight:
    prefix: tuple
    tail: mpq
    limit: mpq

    def __post_init__(self):
        object.__setattr__(self, "prefix", trim_prefix(tuple(self.prefix), self.tail))

    def at(self, j: int):
        return self.prefix[j] if j < len(self.prefix) else self.tail


@dataclass(frozen=True)
class SumWeight:
    left: "Weight"
    right: "Weight"


Weight = Union[FinWeight, SeqWeight, SumWeight]


def weight(space: ModelSpace, data) -> Weight:
    """Build a weight from plain data.

    FiniteSup (and FiniteAL): sequence of scalars.  SeqLim: ``(prefix, tail,
    limit)``.  SupDirectSum: ``(left_data, right_data)``.
    """
    if isinstance(space, (FiniteSup, FiniteAL)):
        w = FinWeight(tuple(q(v) for v in data))
    elif isinstance(space, SeqLim):
        prefix, tail, limit = data
        w = SeqWeight(tuple(q(v) for v in prefix), q(tail), q(limit))
    elif isinstance(space, SupDirectSum):
        left, right = data
        w = SumWeight(weight(space.left, left), weight(space.right, right))
    else:
        raise TypeError(f"unknown space {space!r}")
    check_weight(space, w)
    return w


def check_weight(space: ModelSpace, w) -> None:
    if isinstance(space, FiniteSup):
        ok = isinstance(w, FinWeight) and len(w.values) == space.n
    elif isinstance(space, FiniteAL):
        ok = isinstance(w, FinWeight) and len(w.values) == space.n
    elif isinstance(space, SeqLim):
        ok = isinstance(w, SeqWeight)
    elif isinstance(space, SupDirectSum):
        ok = isinstance(w, SumWeight)
        if ok:
            check_weight(space.left, w.left)
            check_weight(space.right, w.right)
    else:
        ok = False
    if not ok:
        raise SpaceMismatch(f"{w!r} is not a weight on {space!r}")


def constant_weight(space: ModelSpace, value=1) -> Weight:
    v = q(value)
    if isinstance(space, (FiniteSup, FiniteAL)):
        return FinWeight((v,) * space.n)
    if isinstance(space, SeqLim):
        return SeqWeight((), v, v)
    if isinstance(space, SupDirectSum):
        return SumWeight(constant_weight(space.left, v), constant_weight(space.right, v))
    raise TypeError(f"unknown space {space!r}")


def weight_value(space: ModelSpace, w, key: tuple):
    """Value of ``w`` at the unit representative of the atom ``key``."""
    tag = key[0]
    if isinstance(space, SupDirectSum):
        if tag == "left":
            return weight_value(space.left, w.left, key[1])
        if tag == "right":
            return weight_value(space.right, w.right, key[1])
    elif isinstance(space, (FiniteSup, FiniteAL)) and tag in ("coord", "atom"):
        return w.values[key[1]]
    elif isinstance(space, SeqLim):
        if tag == "coord":
            return w.at(key[1])
        if tag == "tail":
            return w.tail
        if tag == "limit":
            return w.limit
    raise SpaceMismatch(f"{key!r} is not a dual atom of {space!r}")


def weight_values(space: ModelSpace, w) -> list:
    """Every value ``w`` takes on ``K_X^1``."""
    check_weight(space, w)
    if isinstance(w, FinWeight):
        return list(w.values)
    if isinstance(w, SeqWeight):
        return list(w.prefix) + [w.tail, w.limit]
    return weight_values(space.left, w.left) + weight_values(space.right, w.right)


def weight_depth(space: ModelSpace, w) -> int:
    if isinstance(space, SeqLim):
        return len(w.prefix)
    if isinstance(space, SupDirectSum):
        return max(weight_depth(space.left, w.left), weight_depth(space.right, w.right))
    return 0


def weight_map(space: ModelSpace, f: Callable, *ws) -> Weight:
    """Apply ``f`` pointwise on ``K_X^1`` (used for lattice operations on ``W_X``)."""
    for w in ws:
        check_weight(space, w)
    if isinstance(space, (FiniteSup, FiniteAL)):
        return FinWeight(tuple(map(f, *(w.values for w in ws))))
    if isinstance(space, SeqLim):
        length = max(len(w.prefix) for w in ws)
        prefix = tuple(map(f, *([w.at(j) for j in range(length)] for w in ws)))
        return SeqWeight(prefix, f(*(w.tail for w in ws)), f(*(w.limit for w in ws)))
    if isinstance(space, SupDirectSum):
        return SumWeight(
            weight_map(space.left, f, *(w.left for w in ws)),
            weight_map(space.right, f, *(w.right for w in ws)),
        )
    raise TypeError(f"unknown space {space!r}")


def sup_norm(space: ModelSpace, w) -> mpq:
    """``||w||_inf`` over ``K_X^1``."""
    return max(abs(v) for v in weight_values(space, w))

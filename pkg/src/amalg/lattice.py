"""Model Banach lattices and their elements, in exact rational arithmetic.

Four families are representable:

* ``FiniteSup`` -- R^n with the weighted sup norm ``max_i c_i |x_i|``.
* ``SeqLim`` -- the convergent sequences ``c`` with the norm
  ``theta * |lim x| v sup_j |x_j|``; only eventually constant sequences are
  stored, as ``(prefix, tail)``.
* ``FiniteAL`` -- l^1 on ``n`` atoms, optionally plus one formal coordinate
  standing for an atomless band.
* ``SupDirectSum`` -- ``left (+)_inf right``.

Every vector type is an immutable dataclass; all lattice operations are
coordinatewise.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from gmpy2 import mpq
from typing import Callable, Union


MPQ = type(mpq())


class SpaceMismatch(ValueError):
    """A vector (or weight, operator) does not belong to the given space."""


class PreconditionError(ValueError):
    """An operation was called outside its domain of definition."""


class InvariantBreach(AssertionError):
    """Two independent computations that must agree did not. Always a bug."""


def q(value) -> mpq:
    """Coerce an exact scalar to ``mpq``.

    Accepts ints, Fractions, other ``numbers.Rational`` and strings such as
    ``"3/4"`` or ``"0.25"``.  Binary floats are refused.
    """
    if type(value) is MPQ:
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (int, Rational)):
        return mpq(value)
    if isinstance(value, str):
        # Fraction's parser is strict about the accepted forms
        return mpq(Fraction(value.strip()))
    raise TypeError(f"not an exact scalar: {value!r}")


def _qs(values) -> tuple:
    return tuple(q(v) for v in values)


# --------------------------------------------------------------------------
# spaces


@dataclass(frozen=True)
class FiniteSup:
    weights: tuple

    kind = "FiniteSup"
    is_am = True

    def __post_init__(self):
        object.__setattr__(self, "weights", _qs(self.weights))
        if not self.weights:
            raise ValueError("FiniteSup needs n >= 1")
        if any(c <= 0 for c in self.weights):
            raise ValueError("FiniteSup dual weights must be positive")

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def finite(self) -> bool:
        return True


@dataclass(frozen=True)
class SeqLim:
    theta: mpq = mpq(1)

    kind = "SeqLim"
    is_am = True

    def __post_init__(self):
        object.__setattr__(self, "theta", q(self.theta))
        if self.theta < 1:
            raise ValueError("SeqLim needs theta >= 1")

    @property
    def finite(self) -> bool:
        return False


@dataclass(frozen=True)
class FiniteAL:
    n: int
    band: bool = False

    kind = "FiniteAL"
    is_am = False

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("FiniteAL needs n >= 0")
        if self.n == 0 and not self.band:
            raise ValueError("FiniteAL with no atoms must carry the nonatomic band")

    @property
    def finite(self) -> bool:
        return True


@dataclass(frozen=True)
class SupDirectSum:
    left: "ModelSpace"
    right: "ModelSpace"

    kind = "SupDirectSum"

    @property
    def is_am(self) -> bool:
        return self.left.is_am and self.right.is_am

    @property
    def finite(self) -> bool:
        return self.left.finite and self.right.finite


ModelSpace = Union[FiniteSup, SeqLim, FiniteAL, SupDirectSum]


# --------------------------------------------------------------------------
# vectors


@dataclass(frozen=True)
class FinVec:
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(self.coords))


def trim_prefix(prefix: tuple, tail) -> tuple:
    end = len(prefix)
    while end and prefix[end - 1] == tail:
        end -= 1
    return prefix[:end]


@dataclass(frozen=True)
class SeqVec:
    """The eventually constant sequence ``(p_1, ..., p_m, tail, tail, ...)``.

    The prefix is trimmed on construction so that equal sequences have equal
    representations.
    """

    prefix: tuple
    tail: mpq

    def __post_init__(self):
        object.__setattr__(self, "prefix", trim_prefix(tuple(self.prefix), self.tail))

    def at(self, j: int):
        return self.prefix[j] if j < len(self.prefix) else self.tail

    def padded(self, length: int) -> tuple:
        return tuple(self.at(j) for j in range(length))


@dataclass(frozen=True)
class ALVec:
    atoms: tuple
    mass: mpq = mpq(0)

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(self.atoms))


@dataclass(frozen=True)
class SumVec:
    left: "Vec"
    right: "Vec"


Vec = Union[FinVec, SeqVec, ALVec, SumVec]


def vec(space: ModelSpace, data) -> Vec:
    """Build a vector of ``space`` from plain Python data.

    FiniteSup: sequence of scalars.  SeqLim: ``(prefix, tail)``.
    FiniteAL: list of atom coordinates, or ``(atoms, mass)`` with a nested list.
    SupDirectSum: ``(left_data, right_data)``.
    """
    if isinstance(space, FiniteSup):
        v = FinVec(_qs(data))
    elif isinstance(space, SeqLim):
        prefix, tail = data
        v = SeqVec(_qs(prefix), q(tail))
    elif isinstance(space, FiniteAL):
        if len(data) == 2 and isinstance(data[0], (list, tuple)):
            atoms, mass = data
        else:
            atoms, mass = data, 0
        v = ALVec(_qs(atoms), q(mass))
    elif isinstance(space, SupDirectSum):
        left, right = data
        v = SumVec(vec(space.left, left), vec(space.right, right))
    else:
        raise TypeError(f"unknown space {space!r}")
    check(space, v)
    return v


def check(space: ModelSpace, x) -> None:
    """Raise ``SpaceMismatch`` unless ``x`` is a vector of ``space``."""
    if isinstance(space, FiniteSup):
        ok = isinstance(x, FinVec) and len(x.coords) == space.n
    elif isinstance(space, SeqLim):
        ok = isinstance(x, SeqVec)
    elif isinstance(space, FiniteAL):
        ok = (
            isinstance(x, ALVec)
            and len(x.atoms) == space.n
            and (space.band or x.mass == 0)
        )
    elif isinstance(space, SupDirectSum):
        ok = isinstance(x, SumVec)
        if ok:
            check(space.left, x.left)
            check(space.right, x.right)
    else:
        ok = False
    if not ok:
        raise SpaceMismatch(f"{x!r} is not a vector of {space!r}")


def zero(space: ModelSpace) -> Vec:
    if isinstance(space, FiniteSup):
        return FinVec((mpq(0),) * space.n)
    if isinstance(space, SeqLim):
        return SeqVec((), mpq(0))
    if isinstance(space, FiniteAL):
        return ALVec((mpq(0),) * space.n, mpq(0))
    if isinstance(space, SupDirectSum):
        return SumVec(zero(space.left), zero(space.right))
    raise TypeError(f"unknown space {space!r}")


def pointwise(space: ModelSpace, f: Callable, *xs: Vec) -> Vec:
    """Apply a scalar function coordinatewise to vectors of ``space``.

    SeqLim operands are aligned on the longest prefix; the tail is ``f`` of
    the tails.  The formal nonatomic mass of a FiniteAL vector is treated as
    one more coordinate.
    """
    for x in xs:
        check(space, x)
    if isinstance(space, FiniteSup):
        return FinVec(tuple(map(f, *(x.coords for x in xs))))
    if isinstance(space, SeqLim):
        length = max(len(x.prefix) for x in xs)
        prefix = tuple(map(f, *(x.padded(length) for x in xs)))
        return SeqVec(prefix, f(*(x.tail for x in xs)))
    if isinstance(space, FiniteAL):
        atoms = tuple(map(f, *(x.atoms for x in xs)))
        mass = f(*(x.mass for x in xs)) if space.band else mpq(0)
        return ALVec(atoms, mass)
    if isinstance(space, SupDirectSum):
        return SumVec(
            pointwise(space.left, f, *(x.left for x in xs)),
            pointwise(space.right, f, *(x.right for x in xs)),
        )
    raise TypeError(f"unknown space {space!r}")


def values(space: ModelSpace, x: Vec) -> list:
    """All distinct coordinate values of ``x`` (prefix entries and tail for SeqLim)."""
    check(space, x)
    if isinstance(space, FiniteSup):
        return list(x.coords)
    if isinstance(space, SeqLim):
        return list(x.prefix) + [x.tail]
    if isinstance(space, FiniteAL):
        return list(x.atoms) + ([x.mass] if space.band else [])
    return values(space.left, x.left) + values(space.right, x.right)


def lattice_join(space, x, y):
    return pointwise(space, max, x, y)


def lattice_meet(space, x, y):
    return pointwise(space, min, x, y)


def add(space, x, y):
    return pointwise(space, operator.add, x, y)


def sub(space, x, y):
    return pointwise(space, operator.sub, x, y)


def neg(space, x):
    return pointwise(space, operator.neg, x)


def scale(space, s, x):
    s = q(s)
    return pointwise(space, lambda a: s * a, x)


def abs_(space, x):
    return pointwise(space, abs, x)


def pos_part(space, x):
    return pointwise(space, lambda a: max(a, 0), x)


def neg_part(space, x):
    return pointwise(space, lambda a: max(-a, 0), x)


def is_positive(space, x) -> bool:
    return all(v >= 0 for v in values(space, x))


def leq(space, x, y) -> bool:
    return is_positive(space, sub(space, y, x))


def is_zero(space, x) -> bool:
    return all(v == 0 for v in values(space, x))


def disjoint(space, x, y) -> bool:
    """``x ^ y == 0`` for positive ``x`` and ``y``."""
    if not (is_positive(space, x) and is_positive(space, y)):
        raise PreconditionError("disjointness is only tested on positive vectors")
    return is_zero(space, lattice_meet(space, x, y))


def norm(space: ModelSpace, x: Vec):
    check(space, x)
    if isinstance(space, FiniteSup):
        return max(c * abs(v) for c, v in zip(space.weights, x.coords))
    if isinstance(space, SeqLim):
        sup = max([abs(v) for v in x.prefix] + [abs(x.tail)])
        return max(sup, space.theta * abs(x.tail))
    if isinstance(space, FiniteAL):
        return sum((abs(v) for v in x.atoms), mpq(0)) + abs(x.mass)
    if isinstance(space, SupDirectSum):
        return max(norm(space.left, x.left), norm(space.right, x.right))
    raise TypeError(f"unknown space {space!r}")


def canonical(space: ModelSpace, x: Vec) -> Vec:
    """Re-canonicalize ``x`` (idempotent; constructors already canonicalize)."""
    return pointwise(space, lambda a: a, x)


def order_unit(space: ModelSpace) -> Vec:
    """The order unit ``e`` of a FiniteSup space: ``e_i = 1/c_i``, norm one."""
    if not isinstance(space, FiniteSup):
        raise PreconditionError("only FiniteSup spaces are modeled with an order unit")
    return FinVec(tuple(1 / c for c in space.weights))


def prefix_depth(space: ModelSpace, obj) -> int:
    """Longest SeqLim prefix appearing anywhere inside ``obj``."""
    if isinstance(space, SeqLim):
        return len(obj.prefix)
    if isinstance(space, SupDirectSum):
        return max(prefix_depth(space.left, obj.left), prefix_depth(space.right, obj.right))
    return 0


def dimension(space: ModelSpace) -> int:
    """Number of coordinates of a finite model space (formal mass included)."""
    if isinstance(space, FiniteSup):
        return space.n
    if isinstance(space, FiniteAL):
        return space.n + int(space.band)
    if isinstance(space, SupDirectSum):
        return dimension(space.left) + dimension(space.right)
    raise PreconditionError(f"{space.kind} is infinite-dimensional")


def flatten(space: ModelSpace, x: Vec) -> tuple:
    """Coordinates of ``x`` in the standard basis of a finite model space."""
    check(space, x)
    if isinstance(space, FiniteSup):
        return x.coords
    if isinstance(space, FiniteAL):
        return x.atoms + ((x.mass,) if space.band else ())
    if isinstance(space, SupDirectSum):
        return flatten(space.left, x.left) + flatten(space.right, x.right)
    raise PreconditionError(f"{space.kind} is infinite-dimensional")


def unflatten(space: ModelSpace, coords) -> Vec:
    coords = tuple(coords)
    if isinstance(space, FiniteSup):
        return FinVec(coords)
    if isinstance(space, FiniteAL):
        if space.band:
            return ALVec(coords[:-1], coords[-1])
        return ALVec(coords, mpq(0))
    if isinstance(space, SupDirectSum):
        k = dimension(space.left)
        return SumVec(unflatten(space.left, coords[:k]), unflatten(space.right, coords[k:]))
    raise PreconditionError(f"{space.kind} is infinite-dimensional")


def basis(space: ModelSpace) -> list:
    """Standard basis of a finite model space; every element is an atom."""
    d = dimension(space)
    return [unflatten(space, [mpq(int(i == j)) for j in range(d)]) for i in range(d)]

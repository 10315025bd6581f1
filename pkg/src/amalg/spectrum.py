"""Lattice-homomorphism functionals of the model spaces.

A ``DualAtom`` is an unnormalized evaluation functional (``delta_i``,
``delta_j``, ``delta_inf``, ``e_i*``) together with its dual norm.  The unit
representative lying in ``K_X^1`` is ``atom / dual_norm``.

For ``SeqLim`` the infinitely many coordinate functionals are represented by
the explicit indices ``0 .. depth-1`` plus one symbolic ``tail`` atom, which
stands for every ``delta_j`` with ``j >= depth``.  Any eventually constant
sequence whose prefix is no longer than ``depth`` takes one value on all of
them, so evaluation stays exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from gmpy2 import mpq

from .lattice import (
    ALVec,
    FiniteAL,
    FiniteSup,
    FinVec,
    InvariantBreach,
    ModelSpace,
    PreconditionError,
    SeqLim,
    SeqVec,
    SpaceMismatch,
    SumVec,
    SupDirectSum,
    check,
    norm,
    prefix_depth,
)

COORD = "coord"
TAIL = "tail"
LIMIT = "limit"
ATOM = "atom"
LEFT = "left"
RIGHT = "right"


@dataclass(frozen=True)
class DualAtom:
    key: tuple
    dual_norm: mpq

    @property
    def unit_scale(self) -> mpq:
        """Multiplier taking the functional onto the unit sphere of X*."""
        return 1 / self.dual_norm

    @property
    def label(self) -> str:
        return atom_label(self.key)


def atom_label(key: tuple) -> str:
    tag = key[0]
    if tag == COORD:
        return f"delta_{key[1] + 1}"
    if tag == TAIL:
        return "delta_j (j->inf)"
    if tag == LIMIT:
        return "delta_inf"
    if tag == ATOM:
        return f"e_{key[1] + 1}*"
    return f"{tag}:{atom_label(key[1])}"


@dataclass(frozen=True)
class ConvergenceDatum:
    """A convergent net ``net -> limit`` in ``K_X*``, with the norms along it."""

    net: str
    net_atom: DualAtom
    limit: DualAtom
    net_norm: mpq
    limit_norm: mpq


def _lift(side: str, atoms):
    return [DualAtom((side, a.key), a.dual_norm) for a in atoms]


def dual_atoms(space: ModelSpace, depth: int = 0) -> list:
    """Every lattice-homomorphism functional of ``space`` up to positive scaling.

    ``depth`` is the number of explicit SeqLim coordinates to list before the
    symbolic tail atom.
    """
    if isinstance(space, FiniteSup):
        return [DualAtom((COORD, i), 1 / c) for i, c in enumerate(space.weights)]
    if isinstance(space, SeqLim):
        atoms = [DualAtom((COORD, j), mpq(1)) for j in range(depth)]
        atoms.append(DualAtom((TAIL,), mpq(1)))
        atoms.append(DualAtom((LIMIT,), 1 / space.theta))
        return atoms
    if isinstance(space, FiniteAL):
        return [DualAtom((ATOM, i), mpq(1)) for i in range(space.n)]
    if isinstance(space, SupDirectSum):
        return _lift(LEFT, dual_atoms(space.left, depth)) + _lift(
            RIGHT, dual_atoms(space.right, depth)
        )
    raise TypeError(f"unknown space {space!r}")


def find_atom(space: ModelSpace, key: tuple) -> DualAtom:
    """The DualAtom of ``space`` with the given key."""
    if isinstance(space, SupDirectSum) and key[0] in (LEFT, RIGHT):
        inner = find_atom(getattr(space, key[0]), key[1])
        return DualAtom(key, inner.dual_norm)
    if isinstance(space, FiniteSup) and key[0] == COORD and 0 <= key[1] < space.n:
        return DualAtom(key, 1 / space.weights[key[1]])
    if isinstance(space, SeqLim):
        if key[0] in (COORD, TAIL) and (key[0] == TAIL or key[1] >= 0):
            return DualAtom(key, mpq(1))
        if key[0] == LIMIT:
            return DualAtom(key, 1 / space.theta)
    if isinstance(space, FiniteAL) and key[0] == ATOM and 0 <= key[1] < space.n:
        return DualAtom(key, mpq(1))
    raise SpaceMismatch(f"{key!r} is not a dual atom of {space!r}")


def evaluate(space: ModelSpace, atom, x):
    """``atom(x)`` for the unnormalized functional."""
    key = atom.key if isinstance(atom, DualAtom) else atom
    check(space, x)
    tag = key[0]
    if isinstance(space, SupDirectSum):
        if tag == LEFT:
            return evaluate(space.left, key[1], x.left)
        if tag == RIGHT:
            return evaluate(space.right, key[1], x.right)
    elif isinstance(space, FiniteSup) and tag == COORD and key[1] < space.n:
        return x.coords[key[1]]
    elif isinstance(space, SeqLim):
        if tag == COORD:
            return x.at(key[1])
        if tag in (TAIL, LIMIT):
            return x.tail
    elif isinstance(space, FiniteAL) and tag == ATOM and key[1] < space.n:
        return x.atoms[key[1]]
    raise SpaceMismatch(f"{key!r} is not a dual atom of {space!r}")


def from_atom_values(space: ModelSpace, table: Mapping, depth: int = 0):
    """Rebuild the vector whose evaluations on ``dual_atoms(space, depth)`` are ``table``.

    For SeqLim the ``tail`` and ``limit`` entries must agree, otherwise the
    values do not come from a convergent sequence.  FiniteAL atoms do not see
    the formal nonatomic band, so the rebuilt mass is always zero.
    """
    if isinstance(space, FiniteSup):
        return FinVec(tuple(table[(COORD, i)] for i in range(space.n)))
    if isinstance(space, SeqLim):
        tail, limit = table[(TAIL,)], table[(LIMIT,)]
        if tail != limit:
            raise PreconditionError(
                f"tail value {tail} differs from limit value {limit}: not a convergent sequence"
            )
        return SeqVec(tuple(table[(COORD, j)] for j in range(depth)), tail)
    if isinstance(space, FiniteAL):
        return ALVec(tuple(table[(ATOM, i)] for i in range(space.n)), mpq(0))
    if isinstance(space, SupDirectSum):
        left = {k[1]: v for k, v in table.items() if k[0] == LEFT}
        right = {k[1]: v for k, v in table.items() if k[0] == RIGHT}
        return SumVec(
            from_atom_values(space.left, left, depth),
            from_atom_values(space.right, right, depth),
        )
    raise TypeError(f"unknown space {space!r}")


def unit_values(space: ModelSpace, x, depth: int = 0) -> dict:
    """Values of ``x`` at the unit representatives of ``K_X^1``."""
    return {a.key: evaluate(space, a, x) / a.dual_norm for a in dual_atoms(space, depth)}


def convergence_data(space: ModelSpace) -> list:
    """The non-trivial convergent nets of ``K_X*``, up to positive scaling.

    Hard-coded per family: only ``delta_j -> delta_inf`` in SeqLim.  A new
    family must declare its nets here, otherwise continuity checks on it are
    vacuous.
    """
    if isinstance(space, FiniteSup):
        return []
    if isinstance(space, SeqLim):
        tail = DualAtom((TAIL,), mpq(1))
        limit = DualAtom((LIMIT,), 1 / space.theta)
        return [ConvergenceDatum("delta_j, j->inf", tail, limit, tail.dual_norm, limit.dual_norm)]
    if isinstance(space, SupDirectSum):
        out = []
        for side in (LEFT, RIGHT):
            for d in convergence_data(getattr(space, side)):
                out.append(
                    ConvergenceDatum(
                        f"{side}:{d.net}",
                        DualAtom((side, d.net_atom.key), d.net_atom.dual_norm),
                        DualAtom((side, d.limit.key), d.limit.dual_norm),
                        d.net_norm,
                        d.limit_norm,
                    )
                )
        return out
    raise PreconditionError(f"{space.kind} is not an AM family")


def require_am(space: ModelSpace) -> None:
    if not space.is_am:
        raise PreconditionError(f"{space.kind} is not an AM family")


def norm_weakstar_continuous(space: ModelSpace) -> tuple:
    """Is ``x* -> ||x*||`` weak*-continuous on ``K_X*``?

    Returns ``(True, None)`` or ``(False, datum)`` with the failing net.
    """
    require_am(space)
    for datum in convergence_data(space):
        if datum.net_norm != datum.limit_norm:
            return False, datum
    return True, None


def am_norm_from_spectrum(space: ModelSpace, x) -> mpq:
    """``max |u(x)|`` over the unit representatives ``u`` of ``K_X^1``."""
    require_am(space)
    vals = unit_values(space, x, prefix_depth(space, x))
    return max(abs(v) for v in vals.values())


def assert_consistent(space: ModelSpace, x) -> None:
    """Cross-check the stored norm against the spectral formula."""
    if space.is_am and norm(space, x) != am_norm_from_spectrum(space, x):
        raise InvariantBreach(f"norm of {x!r} disagrees with its spectral value")

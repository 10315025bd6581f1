"""Linear maps between model spaces.

Three descriptions are supported:

* ``Matrix`` -- an m x n matrix between finite model spaces (standard bases).
* ``IndexMap`` -- ``(Tx)(b) = scale * a(x)`` for a table of codomain atoms
  ``b`` and domain atoms ``a``: a scaled composition ``f -> f o phi``.
* ``Multiplier`` -- ``(Tx)(a) = h(a) a(x)`` for a symbol ``h`` on the
  spectrum (the shape of a weight).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from gmpy2 import mpq

from .lattice import (
    FiniteSup,
    ModelSpace,
    PreconditionError,
    SpaceMismatch,
    check,
    dimension,
    flatten,
    prefix_depth,
    q,
    unflatten,
)
from .spectrum import (
    COORD,
    dual_atoms,
    evaluate,
    find_atom,
    from_atom_values,
)
from .weights import check_weight, weight_depth, weight_map, weight_value, weight_values


@dataclass(frozen=True)
class Matrix:
    rows: tuple
    domain: ModelSpace
    codomain: ModelSpace

    def __post_init__(self):
        rows = tuple(tuple(q(a) for a in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        if len(rows) != dimension(self.codomain) or any(
            len(r) != dimension(self.domain) for r in rows
        ):
            raise SpaceMismatch("matrix shape does not match its spaces")

    @property
    def shape(self) -> tuple:
        return len(self.rows), len(self.rows[0]) if self.rows else 0


def matrix(rows, domain: Optional[ModelSpace] = None, codomain: Optional[ModelSpace] = None) -> Matrix:
    """A ``Matrix``; missing spaces default to FiniteSup with unit dual weights."""
    rows = [list(r) for r in rows]
    if codomain is None:
        codomain = FiniteSup((1,) * len(rows))
    if domain is None:
        domain = FiniteSup((1,) * len(rows[0]))
    return Matrix(tuple(tuple(r) for r in rows), domain, codomain)


@dataclass(frozen=True)
class IndexMap:
    """Codomain atom key -> (domain atom key, scale >= 0).

    Unlisted keys map to 0, except that an unlisted SeqLim coordinate follows
    the entry declared for the tail (a tail -> tail entry sends j to j).
    """

    domain: ModelSpace
    codomain: ModelSpace
    entries: tuple = field(default=())

    def __post_init__(self):
        entries = tuple((tuple(b), tuple(a), q(s)) for b, a, s in self.entries)
        object.__setattr__(self, "entries", entries)
        for b, a, s in entries:
            find_atom(self.codomain, b)
            find_atom(self.domain, a)
            if s < 0:
                raise PreconditionError("IndexMap scales must be nonnegative")

    @property
    def table(self) -> dict:
        return {b: (a, s) for b, a, s in self.entries}

    @property
    def depth(self) -> int:
        def explicit(key):
            while key[0] in ("left", "right"):
                key = key[1]
            return key[1] + 1 if key[0] == COORD else 0

        return max([explicit(b) for b, _, _ in self.entries] + [explicit(a) for _, a, _ in self.entries] + [0])


@dataclass(frozen=True)
class Multiplier:
    space: ModelSpace
    symbol: object

    def __post_init__(self):
        check_weight(self.space, self.symbol)

    @property
    def domain(self):
        return self.space

    @property
    def codomain(self):
        return self.space


OperatorSpec = Union[Matrix, IndexMap, Multiplier]


def apply(T, x):
    """``T x``.  SeqLim results are re-canonicalized; a tail that disagrees
    with the limit raises ``PreconditionError``."""
    check(T.domain, x)
    if isinstance(T, Matrix):
        xs = flatten(T.domain, x)
        out = []
        for row in T.rows:
            acc = 0
            for a, v in zip(row, xs):
                if a and v:
                    acc += a * v
            out.append(mpq(acc) if isinstance(acc, int) else acc)
        return unflatten(T.codomain, out)
    if isinstance(T, IndexMap):
        depth = max(T.depth, prefix_depth(T.domain, x))
        table = T.table
        vals = {}
        for b in dual_atoms(T.codomain, depth):
            hit = table.get(b.key)
            if hit is None and _inner(b.key)[0] == COORD:
                hit = _tail_rule(table, b.key)
            vals[b.key] = mpq(0) if hit is None else hit[1] * evaluate(T.domain, hit[0], x)
        return from_atom_values(T.codomain, vals, depth)
    if isinstance(T, Multiplier):
        depth = max(prefix_depth(T.space, x), weight_depth(T.space, T.symbol))
        vals = {
            a.key: weight_value(T.space, T.symbol, a.key) * evaluate(T.space, a, x)
            for a in dual_atoms(T.space, depth)
        }
        return from_atom_values(T.space, vals, depth)
    raise TypeError(f"not an operator: {T!r}")


def _inner(key):
    while key[0] in ("left", "right"):
        key = key[1]
    return key


def _with_inner(key, new):
    if key[0] in ("left", "right"):
        return (key[0], _with_inner(key[1], new))
    return new


def _tail_rule(table, key):
    # An unlisted SeqLim coordinate j follows the rule declared for the tail;
    # a tail -> tail entry means j -> j.
    tail_key = _with_inner(key, ("tail",))
    hit = table.get(tail_key)
    if hit is None:
        return None
    source, s = hit
    if _inner(source)[0] == "tail":
        source = _with_inner(source, _inner(key))
    return source, s


def operator_norm(T) -> mpq:
    """Exact operator norm for Matrix (between FiniteSup spaces), Multiplier
    and IndexMap (a positive composition operator)."""
    if isinstance(T, Matrix):
        if not (isinstance(T.domain, FiniteSup) and isinstance(T.codomain, FiniteSup)):
            raise PreconditionError("matrix operator norm is implemented for FiniteSup spaces")
        c, d = T.domain.weights, T.codomain.weights
        return max(
            (dk * sum((abs(a) / ci for a, ci in zip(row, c)), mpq(0)) for dk, row in zip(d, T.rows)),
            default=mpq(0),
        )
    if isinstance(T, Multiplier):
        return max(abs(v) for v in weight_values(T.space, T.symbol))
    if isinstance(T, IndexMap):
        best = mpq(0)
        for b, a, s in T.entries:
            nb = find_atom(T.codomain, b).dual_norm
            na = find_atom(T.domain, a).dual_norm
            best = max(best, s * na / nb)
        return best
    raise TypeError(f"not an operator: {T!r}")


def compose(S, T):
    """``S o T`` for two Matrix operators, or two Multipliers on one space."""
    if isinstance(S, Matrix) and isinstance(T, Matrix):
        if S.domain != T.codomain:
            raise SpaceMismatch("cannot compose: spaces differ")
        rows = [
            [sum((S.rows[i][k] * T.rows[k][j] for k in range(len(T.rows))), mpq(0)) for j in range(len(T.rows[0]))]
            for i in range(len(S.rows))
        ]
        return Matrix(tuple(map(tuple, rows)), T.domain, S.codomain)
    if isinstance(S, Multiplier) and isinstance(T, Multiplier):
        if S.space != T.space:
            raise SpaceMismatch("cannot compose: spaces differ")
        return Multiplier(S.space, weight_map(S.space, lambda a, b: a * b, S.symbol, T.symbol))
    raise TypeError("compose supports Matrix o Matrix and Multiplier o Multiplier")

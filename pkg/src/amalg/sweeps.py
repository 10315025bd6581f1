"""Exhaustive desk-scale sweeps comparing independent decision procedures.

Every sweep takes ``shard=(index, count)`` and only visits the cases whose
running number is ``index`` modulo ``count``; :func:`merge` combines shard
results into the same report regardless of how the work was split.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, Optional, Sequence

from gmpy2 import mpq

from .al import al_decide_tensor, al_product_fn
from .lattice import FiniteAL, FiniteSup, PreconditionError, basis, dimension, is_zero, q
from .operators import Matrix, apply
from .amalgebra import am_product_is_unique
from .homomorphisms import (
    as_index_map,
    ball_square_condition,
    composition_form,
    is_algebra_hom,
    is_lattice_hom,
    reconstruct,
)
from .products import (
    ProductTensor,
    _product,
    band_vectors,
    decide_tensor,
    tensor_product,
    verify_falgebra_axioms,
)

DEFAULT_GRID = ("0", "1/2", "1")


def _sharded(items: Iterable, shard) -> Iterable:
    index, count = shard
    for k, item in enumerate(items):
        if k % count == index:
            yield item


def merge(parts: Sequence[dict]) -> dict:
    """Combine shard reports: counters add, lists concatenate and are sorted."""
    out: dict = {}
    for part in parts:
        for key, val in part.items():
            if isinstance(val, int) and not isinstance(val, bool):
                out[key] = out.get(key, 0) + val
            elif isinstance(val, list):
                out.setdefault(key, []).extend(val)
            else:
                out.setdefault(key, val)
    for key, val in out.items():
        if isinstance(val, list):
            out[key] = sorted(val, key=repr)
    return out


# --------------------------------------------------------------------------
# structure tensors


def _embed(flat, n: int, d: int) -> list:
    E = [[[mpq(0)] * d for _ in range(d)] for _ in range(d)]
    for (i, j, k), v in zip(itertools.product(range(n), repeat=3), flat):
        E[i][j][k] = v
    return E


def tensor_cases(space, grid) -> Iterable:
    """Tensors over the atom coordinates with entries in ``grid``; with a
    nonatomic band each is also tried with a unit entry touching the band."""
    n = space.n
    d = dimension(space)
    extras = [None]
    if d > n:
        b = n
        extras += [(b, b, b), (0, b, 0), (b, 0, 0), (0, 0, b)]
    for flat in itertools.product(grid, repeat=n ** 3):
        for extra in extras:
            E = _embed(flat, n, d)
            if extra is not None:
                i, j, k = extra
                E[i][j][k] = mpq(1)
            yield ProductTensor(E), extra


def tensor_sweep(space, grid=DEFAULT_GRID, shard=(0, 1)) -> dict:
    """decide_tensor (or its AL version) against the axiom verifier."""
    grid = [q(v) for v in grid]
    if isinstance(space, FiniteSup):
        decide = decide_tensor

        def weighted(w):
            return lambda x, y: _product(space, w, x, y)

    elif isinstance(space, FiniteAL):
        decide = al_decide_tensor

        def weighted(w):
            return al_product_fn(space, w)

    else:
        raise PreconditionError("tensor sweeps run on FiniteSup or FiniteAL spaces")
    es = basis(space)
    bands = band_vectors(space)
    report = {"cases": 0, "accepted": 0, "discrepancies": []}
    for B, extra in _sharded(tensor_cases(space, grid), shard):
        report["cases"] += 1
        P = tensor_product(space, B)
        w = decide(space, B)
        verdict = verify_falgebra_axioms(space, P, max_violations=1).ok
        if (w is not None) != verdict:
            report["discrepancies"].append(("decision", _flat_str(B), w is not None, verdict))
            continue
        if w is None:
            continue
        report["accepted"] += 1
        Pw = weighted(w)
        for x, y in itertools.product(es, repeat=2):
            if Pw(x, y) != P(x, y):
                report["discrepancies"].append(("reproduce", _flat_str(B)))
                break
        for b in bands:
            if any(not is_zero(space, P(b, x)) for x in es):
                report["discrepancies"].append(("band", _flat_str(B)))
    return report


def _flat_str(B: ProductTensor) -> str:
    return ",".join(str(v) for plane in B.entries for row in plane for v in row)


# --------------------------------------------------------------------------
# algebra homomorphisms


def row_options(n: int, entries) -> list:
    """Rows with at most one nonzero entry, drawn from ``entries``."""
    zero = mpq(0)
    rows = [tuple(zero for _ in range(n))]
    for i in range(n):
        for v in entries:
            if v:
                rows.append(tuple(v if j == i else zero for j in range(n)))
    return rows


def weight_vectors(k: int, values, reduced: bool) -> Iterable:
    # up to simultaneous relabelling of coordinates, sorted tuples suffice
    if reduced:
        return itertools.combinations_with_replacement(values, k)
    return itertools.product(values, repeat=k)


def hom_cases(n_max: int, m_max: int, entries, dual_weights, reduced: bool) -> Iterable:
    entries = [q(v) for v in entries]
    dual_weights = [q(v) for v in dual_weights]
    for n in range(1, n_max + 1):
        rows = row_options(n, entries)
        for m in range(1, m_max + 1):
            for c in weight_vectors(n, dual_weights, reduced):
                X = FiniteSup(c)
                for d in weight_vectors(m, dual_weights, reduced):
                    Y = FiniteSup(d)
                    for T in itertools.product(rows, repeat=m):
                        yield Matrix(T, X, Y)


def hom_predicates(T: Matrix) -> tuple:
    """(algebra hom, lattice hom and ball-square, composition form reconstructs T)."""
    alg = is_algebra_hom(T, witness=False)[0]
    lat = is_lattice_hom(T) and ball_square_condition(T)
    form = composition_form(T)
    comp = form is not None and reconstruct(form) == T
    if comp:
        # the IndexMap form must act like T on every basis vector
        f = as_index_map(form)
        comp = all(apply(f, e) == apply(T, e) for e in basis(T.domain))
    return alg, lat, comp


def hom_sweep(
    n_max: int = 3,
    m_max: int = 3,
    entries=("0", "1/2", "1", "2", "4"),
    dual_weights=("1", "2", "4"),
    reduced: bool = True,
    shard=(0, 1),
) -> dict:
    report = {"cases": 0, "homomorphisms": 0, "discrepancies": []}
    for T in _sharded(hom_cases(n_max, m_max, entries, dual_weights, reduced), shard):
        report["cases"] += 1
        alg, lat, comp = hom_predicates(T)
        if not (alg == lat == comp):
            report["discrepancies"].append((repr(T.rows), repr(T.domain.weights), repr(T.codomain.weights), alg, lat, comp))
        report["homomorphisms"] += alg
    return report


# --------------------------------------------------------------------------
# identity-bearing weights


def identity_sweep(n_max: int = 3, grid=("0", "1/2", "1", "2"), dual_weights=("1", "2", "4"), shard=(0, 1)) -> dict:
    report = {"spaces": 0, "failures": []}
    spaces = (
        FiniteSup(c)
        for n in range(1, n_max + 1)
        for c in itertools.product([q(v) for v in dual_weights], repeat=n)
    )
    for space in _sharded(spaces, shard):
        report["spaces"] += 1
        res = am_product_is_unique(space, grid)
        if not res.unique:
            report["failures"].append((repr(space.weights), repr(res.identity_weights)))
    return report


SWEEPS = {"tensor": tensor_sweep, "hom": hom_sweep, "identity": identity_sweep}


def run_sweep(name: str, kwargs: dict, workers: int = 1, space: Optional[object] = None) -> dict:
    """Run a named sweep, split over ``workers`` processes when > 1."""
    fn = SWEEPS[name]
    if space is not None:
        kwargs = {**kwargs, "space": space}
    if workers <= 1:
        return merge([fn(**kwargs)])
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(fn, **kwargs, shard=(i, workers)) for i in range(workers)]
        return merge([f.result() for f in futures])

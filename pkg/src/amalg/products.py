"""f-algebra products on the AM model spaces, parameterized by weights.

Identify ``X`` with the positively homogeneous continuous functions on
``K_X``.  A weight ``w >= 0`` on ``K_X^1`` whose rescaling

    w_{-1}(x*) = w(x* / ||x*||) / ||x*||

is continuous on ``K_X*`` defines the product

    P(f, g)(x*) = w_{-1}(x*) f(x*) g(x*),

and every f-algebra product on ``X`` arises this way.  This module evaluates
that product on the model spaces, decides membership in ``W_X``, and provides
the two independent checks used to test the correspondence: an axiom
verifier that only sees a product callable, and an exact decision procedure
for products given as structure tensors.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
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
    SeqVec,
    SpaceMismatch,
    SumVec,
    SupDirectSum,
    add,
    basis,
    check,
    dimension,
    disjoint,
    flatten,
    is_positive,
    is_zero,
    lattice_meet,
    norm,
    prefix_depth,
    q,
    scale,
    sub,
    unflatten,
    zero,
)
from .spectrum import (
    ConvergenceDatum,
    dual_atoms,
    evaluate,
    from_atom_values,
    require_am,
    convergence_data,
)
from .weights import (
    FinWeight,
    check_weight,
    sup_norm,
    weight_depth,
    weight_value,
    weight_values,
)


# --------------------------------------------------------------------------
# W_X membership


def rescaled(space: ModelSpace, w, atom) -> mpq:
    """``w_{-1}`` at the (unnormalized) dual atom ``atom``."""
    return weight_value(space, w, atom.key) / atom.dual_norm


@dataclass(frozen=True)
class WxWitness:
    """``w_{-1}`` tends to ``net_limit`` along ``datum.net`` but equals ``limit_value`` at the limit."""

    datum: ConvergenceDatum
    net_limit: mpq
    limit_value: mpq


def wx_membership(space: ModelSpace, w) -> tuple:
    """Is ``w_{-1}`` continuous on ``K_X*``?  Returns ``(member, witness)``.

    Continuity is checked along the declared convergence data of the family;
    for SeqLim this is the single equation ``tail == theta * limit``.
    Finite spectra are discrete, so every weight is a member.
    """
    require_am(space)
    check_weight(space, w)
    for datum in convergence_data(space):
        # w_{-1} is constant (= tail / ||delta_j||) along delta_j for large j
        along = rescaled(space, w, datum.net_atom)
        at = rescaled(space, w, datum.limit)
        if along != at:
            return False, WxWitness(datum, along, at)
    return True, None


# --------------------------------------------------------------------------
# the weighted product


def product(space: ModelSpace, w, x, y):
    """``P_w(x, y)`` for ``w`` in ``(W_X)_+``."""
    require_am(space)
    check_weight(space, w)
    if any(v < 0 for v in weight_values(space, w)):
        raise PreconditionError("product weights must be nonnegative")
    member, witness = wx_membership(space, w)
    if not member:
        raise PreconditionError(
            f"weight is not in W_X: w_-1 tends to {witness.net_limit} along "
            f"{witness.datum.net} but is {witness.limit_value} at the limit"
        )
    return _product(space, w, x, y)


_ZERO = mpq(0)


def _product(space, w, x, y):
    check(space, x)
    check(space, y)
    if isinstance(space, FiniteSup):
        # unit atom c_i delta_i: w_{-1}(delta_i) = c_i w_i
        return FinVec(
            tuple(
                c * wi * a * b if a and b and wi else _ZERO
                for c, wi, a, b in zip(space.weights, w.values, x.coords, y.coords)
            )
        )
    depth = max(prefix_depth(space, x), prefix_depth(space, y), weight_depth(space, w))
    table = {}
    for a in dual_atoms(space, depth):
        table[a.key] = rescaled(space, w, a) * evaluate(space, a, x) * evaluate(space, a, y)
    return from_atom_values(space, table, depth)


def weighted_product(space: ModelSpace, w) -> Callable:
    """``P_w`` as a two-argument callable (precondition checked once)."""
    product(space, w, zero(space), zero(space))
    return functools.partial(_product, space, w)


def is_submultiplicative(space: ModelSpace, w) -> bool:
    """``||P_w(x, y)|| <= ||x|| ||y||`` for all x, y, decided as ``||w||_inf <= 1``."""
    member, _ = wx_membership(space, w)
    if not member or any(v < 0 for v in weight_values(space, w)):
        raise PreconditionError("w must lie in (W_X)_+")
    return sup_norm(space, w) <= 1


def norm_probes(space: ModelSpace, depth: int = 0) -> list:
    """Positive probe vectors for brute-force norm inequalities.

    Unit-norm indicators of each spectral point, the order unit where one
    exists, and a few mixtures.  ``depth`` says how many SeqLim coordinates to
    single out.
    """
    if isinstance(space, FiniteSup):
        units = [scale(space, 1 / c, e) for c, e in zip(space.weights, basis(space))]
        out = list(units)
        out.append(functools.reduce(lambda a, b: add(space, a, b), units))
        for a, b in itertools.permutations(units, 2):
            out.append(add(space, a, scale(space, mpq(1, 2), b)))
        return out
    if isinstance(space, SeqLim):
        one = mpq(1)
        out = [SeqVec((0,) * j + (one,), mpq(0)) for j in range(depth + 1)]
        out.append(SeqVec((), 1 / space.theta))
        out.append(SeqVec((), one))
        out.append(SeqVec((0,) * (depth + 1), 1 / space.theta))
        out.append(SeqVec((one,) * (depth + 1), 1 / space.theta))
        return out
    if isinstance(space, FiniteAL):
        return basis(space) + [unflatten(space, [mpq(1, 2)] * dimension(space))]
    if isinstance(space, SupDirectSum):
        left = norm_probes(space.left, depth)
        right = norm_probes(space.right, depth)
        zl, zr = zero(space.left), zero(space.right)
        out = [SumVec(v, zr) for v in left] + [SumVec(zl, v) for v in right]
        out += [SumVec(a, b) for a, b in zip(left, right)]
        return out
    raise TypeError(f"unknown space {space!r}")


def find_norm_violation(space: ModelSpace, product_fn: Callable, probes) -> Optional[tuple]:
    """First probe pair with ``||P(x, y)|| > ||x|| ||y||``, as ``(x, y, lhs, rhs)``."""
    norms = [norm(space, p) for p in probes]
    for (x, nx), (y, ny) in itertools.product(zip(probes, norms), repeat=2):
        lhs = norm(space, product_fn(x, y))
        if lhs > nx * ny:
            return x, y, lhs, nx * ny
    return None


# --------------------------------------------------------------------------
# axiom verifier


@dataclass(frozen=True)
class Violation:
    kind: str
    operands: tuple
    detail: str = ""


@dataclass
class AxiomReport:
    violations: list = field(default_factory=list)
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations


def probe_vectors(space: ModelSpace, budget: int = 2) -> list:
    """Positive basis-like vectors: atoms of a finite space; for SeqLim the
    first ``budget`` coordinate indicators and the indicator of the tail."""
    if isinstance(space, (FiniteSup, FiniteAL)):
        return basis(space)
    if isinstance(space, SeqLim):
        one = mpq(1)
        out = [SeqVec((mpq(0),) * j + (one,), mpq(0)) for j in range(budget)]
        out.append(SeqVec((mpq(0),) * budget, one))
        return out
    if isinstance(space, SupDirectSum):
        zl, zr = zero(space.left), zero(space.right)
        return [SumVec(v, zr) for v in probe_vectors(space.left, budget)] + [
            SumVec(zl, v) for v in probe_vectors(space.right, budget)
        ]
    raise TypeError(f"unknown space {space!r}")


def band_vectors(space: ModelSpace) -> list:
    """Unit vectors of the formal nonatomic bands inside ``space``."""
    if isinstance(space, FiniteAL):
        return [ALVec((mpq(0),) * space.n, mpq(1))] if space.band else []
    if isinstance(space, SupDirectSum):
        zl, zr = zero(space.left), zero(space.right)
        return [SumVec(v, zr) for v in band_vectors(space.left)] + [
            SumVec(zl, v) for v in band_vectors(space.right)
        ]
    return []


class _Stop(Exception):
    pass


def verify_falgebra_axioms(
    space: ModelSpace,
    product_fn: Callable,
    budget: int = 2,
    max_violations: Optional[int] = None,
) -> AxiomReport:
    """Check the f-algebra axioms for ``product_fn`` on a structured sample.

    The sample is built from :func:`probe_vectors`: the basis-like vectors,
    their sum, the combinations ``a + 2b`` and the differences ``a - b``.
    Checked, exactly: products of positives are positive; the f-algebra
    implication ``a ^ b = 0 => (ca) ^ b = (ac) ^ b = 0`` for disjoint positive
    pairs and positive ``c``; commutativity; associativity on basis triples;
    and, for spaces carrying a formal nonatomic band, that band vectors
    multiply to zero (an atomless L^1 band admits only the zero f-algebra
    product).  Stops after ``max_violations`` violations when given.
    """
    report = AxiomReport()
    base = probe_vectors(space, budget)
    total = functools.reduce(lambda a, b: add(space, a, b), base)
    positives = base + [total]
    positives += [add(space, a, scale(space, 2, b)) for a, b in itertools.permutations(base, 2)]
    signed = positives + [sub(space, a, b) for a, b in itertools.combinations(base, 2)]
    cache: dict = {}

    def flag(kind, operands, detail=""):
        report.violations.append(Violation(kind, tuple(operands), detail))
        if max_violations is not None and len(report.violations) >= max_violations:
            raise _Stop

    def P(x, y):
        key = (x, y)
        if key not in cache:
            try:
                r = product_fn(x, y)
                check(space, r)
            except (PreconditionError, SpaceMismatch) as exc:
                r = exc
            cache[key] = r
        r = cache[key]
        if isinstance(r, Exception):
            flag("well-defined", (x, y), str(r))
            return None
        return r

    try:
        for a, b in itertools.permutations(positives, 2):
            if not disjoint(space, a, b):
                continue
            for c in positives:
                report.checked += 2
                for side, r in (("ca", P(c, a)), ("ac", P(a, c))):
                    if r is not None and not is_zero(space, lattice_meet(space, r, b)):
                        flag("f-algebra", (a, b, c), f"a ^ b = 0 but ({side}) ^ b != 0")
        for x, y in itertools.product(positives, repeat=2):
            report.checked += 1
            r = P(x, y)
            if r is not None and not is_positive(space, r):
                flag("positivity", (x, y), "product of positives is not positive")
        for x, y in itertools.combinations(signed, 2):
            report.checked += 1
            r1, r2 = P(x, y), P(y, x)
            if r1 is not None and r2 is not None and r1 != r2:
                flag("commutativity", (x, y))
        for x, y, z in itertools.product(base + [total], repeat=3):
            report.checked += 1
            xy, yz = P(x, y), P(y, z)
            if xy is None or yz is None:
                continue
            left, right = P(xy, z), P(x, yz)
            if left is not None and right is not None and left != right:
                flag("associativity", (x, y, z))
        for b in band_vectors(space):
            for x in signed + band_vectors(space):
                report.checked += 1
                for r in (P(b, x), P(x, b)):
                    if r is not None and not is_zero(space, r):
                        flag("nonatomic", (b, x), "a product with the atomless band is nonzero")
    except _Stop:
        pass
    return report


# --------------------------------------------------------------------------
# structure tensors


@dataclass(frozen=True)
class ProductTensor:
    """``P(e_i, e_j) = sum_k entries[i][j][k] e_k`` in the standard basis."""

    entries: tuple

    def __post_init__(self):
        ent = tuple(tuple(tuple(q(v) for v in row) for row in plane) for plane in self.entries)
        object.__setattr__(self, "entries", ent)
        d = len(ent)
        if any(len(plane) != d or any(len(row) != d for row in plane) for plane in ent):
            raise ValueError("a product tensor must be d x d x d")

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __getitem__(self, idx):
        i, j, k = idx
        return self.entries[i][j][k]

    @classmethod
    def from_flat(cls, d: int, flat) -> "ProductTensor":
        flat = list(flat)
        return cls(
            tuple(
                tuple(tuple(flat[(i * d + j) * d + k] for k in range(d)) for j in range(d))
                for i in range(d)
            )
        )


def tensor_product(space: ModelSpace, B: ProductTensor) -> Callable:
    """The bilinear product on a finite model space given by ``B``."""
    d = dimension(space)
    if B.dim != d:
        raise SpaceMismatch(f"tensor of dimension {B.dim} on a {d}-dimensional space")
    nonzero = [
        (i, j, k, B.entries[i][j][k])
        for i in range(d)
        for j in range(d)
        for k in range(d)
        if B.entries[i][j][k]
    ]

    def P(x, y):
        xs, ys = flatten(space, x), flatten(space, y)
        out = [mpq(0)] * d
        for i, j, k, b in nonzero:
            if xs[i] and ys[j]:
                out[k] += b * xs[i] * ys[j]
        return unflatten(space, out)

    return P


def decide_tensor(space: FiniteSup, B: ProductTensor) -> Optional[FinWeight]:
    """The weight of ``B`` if it is an f-algebra product, else ``None``.

    Positivity holds iff every entry is nonnegative (the basis vectors span
    the extreme rays of the cone); the f-algebra property on basis vectors
    forces ``B[i][j][k] = 0`` unless ``i == j == k``.  Then
    ``w_k = B[k][k][k] / c_k``.
    """
    if not isinstance(space, FiniteSup):
        raise PreconditionError("decide_tensor is defined on FiniteSup spaces")
    if B.dim != space.n:
        raise SpaceMismatch("tensor dimension does not match the space")
    n = space.n
    for i, j, k in itertools.product(range(n), repeat=3):
        b = B.entries[i][j][k]
        if b < 0:
            return None
        if b and not (i == j == k):
            return None
    return FinWeight(tuple(B.entries[k][k][k] / c for k, c in enumerate(space.weights)))

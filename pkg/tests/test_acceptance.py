"""Acceptance criteria, one test each.  Every test records a PASS/FAIL line
(shown in the terminal summary) before asserting."""

import io
import itertools
import json
import random
import time

from gmpy2 import mpq

from amalg.al import atom_product, first_atom_band, only_zero_product
from amalg.amalgebra import Staircase, nakano_witness, nth_root
from amalg.center import decide_central, mult_operator, symbol_product
from amalg.cli import run
from amalg.lattice import (
    FiniteAL,
    FiniteSup,
    PreconditionError,
    SeqLim,
    SeqVec,
    SupDirectSum,
    abs_,
    basis,
    is_zero,
    lattice_meet,
    norm,
    vec,
)
from amalg.operators import Matrix, Multiplier, apply, compose, operator_norm
from amalg.products import (
    ProductTensor,
    find_norm_violation,
    is_submultiplicative,
    norm_probes,
    tensor_product,
    verify_falgebra_axioms,
    weighted_product,
)
from amalg.sweeps import hom_sweep, identity_sweep, tensor_sweep
from amalg.weights import FinWeight, SeqWeight, sup_norm, weight_depth

from conftest import record

SEED = 20240601


def _cli(command, doc):
    out = io.StringIO()
    path = io.StringIO(json.dumps(doc))
    import sys

    stdin, sys.stdin = sys.stdin, path
    try:
        code = run([command, "-", "--json"], stdout=out, stderr=io.StringIO())
    finally:
        sys.stdin = stdin
    return code, json.loads(out.getvalue()) if code == 0 else None


# 1 ---------------------------------------------------------------------------


def test_criterion_01_theta2_reproduction():
    space = {"kind": "SeqLim", "theta": "2"}
    code_w, wx = _cli("wx-check", {"schemaVersion": 1, "space": space, "weight": {"tail": "1", "limit": "1"}})
    code_c, cls = _cli("classify", {"schemaVersion": 1, "space": space})
    ok = (
        code_w == 0
        and wx["member"] is False
        and (wx["witness"]["netLimit"], wx["witness"]["limitValue"]) == ("1/1", "2/1")
        and code_c == 0
        and cls["isAMAlgebra"] is False
        and (cls["normContinuityWitness"]["netNorm"], cls["normContinuityWitness"]["limitNorm"]) == ("1/1", "1/2")
    )
    record(1, ok, "SeqLim theta=2: w=1 rejected (1 vs 2); norm witness 1 -> 1/2")
    assert ok


# 2, 3 --------------------------------------------------------------------------


def test_criterion_02_finitesup_tensor_sweep():
    rep = tensor_sweep(FiniteSup((1, 1)))
    ok = rep["cases"] == 3 ** 8 and not rep["discrepancies"]
    record(2, ok, f"FiniteSup c=(1,1): {rep['cases']} tensors, {rep['accepted']} accepted, {len(rep['discrepancies'])} discrepancies")
    assert ok


def test_criterion_03_finiteal_tensor_sweep():
    plain = tensor_sweep(FiniteAL(2))
    band = tensor_sweep(FiniteAL(2, True))
    bad = plain["discrepancies"] + band["discrepancies"]
    ok = plain["cases"] == 3 ** 8 and band["cases"] == 5 * 3 ** 8 and not bad
    record(
        3,
        ok,
        f"FiniteAL n=2: {plain['cases']} tensors ({plain['accepted']} accepted); "
        f"with band {band['cases']} ({band['accepted']} accepted, all annihilate the band); {len(bad)} discrepancies",
    )
    assert ok


# 4 ---------------------------------------------------------------------------


def _random_weight(rng, space):
    def r():
        return mpq(rng.randint(0, 10), rng.choice((6, 8, 10, 16)))

    if isinstance(space, FiniteSup):
        return FinWeight(tuple(r() for _ in range(space.n)))
    s = r()
    return SeqWeight(tuple(r() for _ in range(rng.randint(0, 3))), space.theta * s, s)


def test_criterion_04_submultiplicativity():
    rng = random.Random(SEED)
    discrepancies = missing_witness = false_cases = 0
    for _ in range(1000):
        if rng.random() < 0.6:
            n = rng.randint(1, 3)
            space = FiniteSup(tuple(rng.choice((1, 2, 4, mpq(1, 2))) for _ in range(n)))
        else:
            space = SeqLim(rng.choice((1, 2, 3, mpq(3, 2))))
        w = _random_weight(rng, space)
        predicate = is_submultiplicative(space, w)
        violation = find_norm_violation(space, weighted_product(space, w), norm_probes(space, weight_depth(space, w)))
        if predicate != (violation is None):
            discrepancies += 1
        if not predicate:
            false_cases += 1
            if violation is None or not violation[2] > violation[3]:
                missing_witness += 1
    ok = discrepancies == 0 and missing_witness == 0
    record(4, ok, f"1000 weights: {false_cases} non-submultiplicative, {discrepancies} discrepancies, {missing_witness} without witness")
    assert ok


# 5 ---------------------------------------------------------------------------


GRID8 = [mpq(k, 8) for k in range(0, 8 * 8 + 1)]


def test_criterion_05_square_roots():
    rng = random.Random(SEED + 5)
    worst = 0.0
    failures = 0
    for t in range(500):
        n = rng.choice((2, 3))
        c = tuple(rng.choice((1, 2, 4)) for _ in range(n))
        X = FiniteSup(c)
        if t % 2:
            # a root on the 1/8 grid, so the grid search must find it
            g0 = [rng.choice(GRID8[1:33]) for _ in range(n)]
            x = vec(X, [ci * gi * gi for ci, gi in zip(c, g0)])
        else:
            x = vec(X, [mpq(rng.randint(1, 64), rng.choice((1, 2, 3, 5, 7, 8))) for _ in range(n)])
        g = nth_root(X, x, 2)
        exact = all(isinstance(v, type(mpq())) for v in g.coords)
        if exact:
            ok_here = all(ci * gi * gi == xi for ci, gi, xi in zip(c, g.coords, x.coords)) and norm(X, g) ** 2 == norm(X, x)
            rel = 0.0
        else:
            rel = max(abs(float(ci) * gi * gi - float(xi)) / float(xi) for ci, gi, xi in zip(c, g.coords, x.coords))
            gn = max(float(ci) * gi for ci, gi in zip(c, g.coords))
            rel = max(rel, abs(gn * gn - float(norm(X, x))) / float(norm(X, x)))
            ok_here = rel <= 1e-12
        worst = max(worst, rel)
        # uniqueness: the AM-product acts coordinatewise, so the grid search
        # over grid^n factors into one search per coordinate
        per_coord = [[h for h in GRID8 if ci * h * h == xi] for ci, xi in zip(c, x.coords)]
        roots = [vec(X, list(p)) for p in itertools.product(*per_coord)]
        if exact:
            ok_here &= all(r == g for r in roots) and (t % 2 == 0 or roots == [g])
        else:
            ok_here &= roots == []
        failures += not ok_here
    ok = failures == 0
    record(5, ok, f"500 roots: {failures} failures, worst relative error {worst:.2e}, no second root on the 1/8 grid")
    assert ok


# 6 ---------------------------------------------------------------------------


def test_criterion_06_homomorphism_equivalence():
    start = time.perf_counter()
    rep = hom_sweep()
    ok = not rep["discrepancies"]
    record(
        6,
        ok,
        f"{rep['cases']} row-structured matrices (sorted c, d), {rep['homomorphisms']} homomorphisms, "
        f"{len(rep['discrepancies'])} discrepancies, {time.perf_counter() - start:.1f}s",
    )
    assert ok


# 7 ---------------------------------------------------------------------------


def test_criterion_07_identity_weight_unique():
    rep = identity_sweep(n_max=3, grid=("0", "1/2", "1", "2"), dual_weights=("1", "2", "4"))
    ok = rep["spaces"] == 3 + 9 + 27 and not rep["failures"]
    record(7, ok, f"{rep['spaces']} spaces: the only identity-bearing weight is 1 ({len(rep['failures'])} failures)")
    assert ok


# 8 ---------------------------------------------------------------------------


def _oracle_central_matrix(T: Matrix) -> bool:
    # -lambda I <= T <= lambda I forces |T e_j| to stay in the band of e_j
    es = basis(T.domain)
    for j, e in enumerate(es):
        image = abs_(T.codomain, apply(T, e))
        for k, f in enumerate(es):
            if k != j and not is_zero(T.domain, lattice_meet(T.domain, image, f)):
                return False
    return True


def _oracle_central_multiplier(M: Multiplier) -> bool:
    # M_h must keep the constant sequence inside the space
    try:
        apply(M, SeqVec((), mpq(1)))
    except PreconditionError:
        return False
    return True


def test_criterion_08_center():
    rng = random.Random(SEED + 8)

    def r():
        return mpq(rng.randint(-8, 8), rng.choice((1, 2, 3)))

    discrepancies = accepted = mult_fail = 0
    for t in range(1000):
        if t % 2 == 0:
            n = rng.randint(1, 3)
            X = FiniteSup(tuple(rng.choice((1, 2, 4)) for _ in range(n)))
            rows = [[r() if i == j or rng.random() < 0.15 else mpq(0) for j in range(n)] for i in range(n)]
            T = Matrix(tuple(map(tuple, rows)), X, X)
            oracle = _oracle_central_matrix(T)
        else:
            X = SeqLim(rng.choice((1, 2)))
            s = r()
            h = SeqWeight(tuple(r() for _ in range(rng.randint(0, 3))), s if rng.random() < 0.5 else r(), s)
            T = Multiplier(X, h)
            oracle = _oracle_central_multiplier(T)
        res = decide_central(X, T)
        if (res is not None) != oracle:
            discrepancies += 1
            continue
        if res is None:
            continue
        accepted += 1
        if res.norm != operator_norm(T) or res.norm != sup_norm(X, res.symbol):
            discrepancies += 1
        # multiplicativity against a second random central symbol
        if isinstance(X, FiniteSup):
            k = FinWeight(tuple(r() for _ in range(X.n)))
        else:
            u = r()
            k = SeqWeight((r(),), u, u)
        Mh, Mk = mult_operator(X, res.symbol), mult_operator(X, k)
        Mhk = mult_operator(X, symbol_product(X, res.symbol, k))
        probes = basis(X) if isinstance(X, FiniteSup) else [vec(X, ([1, 0, 2], 1)), vec(X, ([0, -3], 2))]
        if any(apply(Mhk, x) != apply(Mh, apply(Mk, x)) for x in probes):
            mult_fail += 1
        if isinstance(X, FiniteSup) and compose(Mh, Mk) != Mhk:
            mult_fail += 1
    ok = discrepancies == 0 and mult_fail == 0
    record(8, ok, f"1000 candidates: {accepted} central, {discrepancies} discrepancies, {mult_fail} multiplicativity failures")
    assert ok


# 9 ---------------------------------------------------------------------------


def test_criterion_09_al_atoms():
    spaces = [FiniteAL(n, band) for n in range(0, 4) for band in (False, True) if n or band]
    spaces += [
        SupDirectSum(FiniteAL(0, True), FiniteAL(0, True)),
        SupDirectSum(FiniteAL(0, True), FiniteAL(1)),
        SupDirectSum(FiniteSup((2,)), FiniteAL(0, True)),
    ]
    bad = []
    for space in spaces:
        atomless = first_atom_band(space) is None
        if only_zero_product(space) != atomless:
            bad.append((space, "only_zero_product"))
        if atomless:
            continue
        P = atom_product(space)
        if not verify_falgebra_axioms(space, P).ok or all(is_zero(space, P(e, e)) for e in basis(space)):
            bad.append((space, "lifted product"))
    # two atomless summands: every tensor over the two formal band
    # coordinates with entries in {0, 1/2, 1} must fail unless it is zero
    D = SupDirectSum(FiniteAL(0, True), FiniteAL(0, True))
    grid = [mpq(0), mpq(1, 2), mpq(1)]
    nonzero_accepted = 0
    for flat in itertools.product(grid, repeat=8):
        if any(flat) and verify_falgebra_axioms(D, tensor_product(D, ProductTensor.from_flat(2, flat)), max_violations=1).ok:
            nonzero_accepted += 1
    ok = not bad and nonzero_accepted == 0
    record(9, ok, f"{len(spaces)} spaces checked, {len(bad)} failures; atomless direct sum: {nonzero_accepted} nonzero products accepted of 6560")
    assert ok


# 10 --------------------------------------------------------------------------


def test_criterion_10_nakano():
    family = [Staircase((), 1, 0)]
    two = nakano_witness(SeqLim(2), family)
    one = nakano_witness(SeqLim(1), family)
    ok = (two.sup_norms, two.inf_bound_norms, two.equal) == (1, 2, False) and (
        one.sup_norms,
        one.inf_bound_norms,
        one.equal,
    ) == (1, 1, True)
    record(10, ok, f"indicator staircase: theta=2 sup {two.sup_norms} vs inf {two.inf_bound_norms}; theta=1 {one.sup_norms} = {one.inf_bound_norms}")
    assert ok

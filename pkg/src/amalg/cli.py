"""``amalg``: manifest-driven verdicts on f-algebra products.

Exit codes: 0 success, 2 parse or schema error, 3 precondition violation,
4 internal invariant breach.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import al, amalgebra, homomorphisms, products, serialize, sweeps
from .lattice import FiniteAL, InvariantBreach, PreconditionError, SpaceMismatch, norm, values
from .operators import Matrix
from .serialize import (
    ManifestError,
    dump_scalar,
    dump_space,
    dump_vec,
    dump_weight,
    parse_matrix,
    parse_scalar,
    parse_space,
    parse_tensor,
    parse_vec,
    parse_weight,
)

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_BREACH = 0, 2, 3, 4


def _need(doc: dict, key: str):
    if key not in doc:
        raise ManifestError(f"manifest needs a {key!r} entry for this command")
    return doc[key]


def _vector(doc, space, name):
    return parse_vec(space, _need(_need(doc, "vectors"), name))


def _datum(d) -> dict:
    return {
        "net": d.net,
        "netAtom": d.net_atom.label,
        "limitAtom": d.limit.label,
        "netNorm": dump_scalar(d.net_norm),
        "limitNorm": dump_scalar(d.limit_norm),
    }


def _wx_witness(w) -> dict:
    return {**_datum(w.datum), "netLimit": dump_scalar(w.net_limit), "limitValue": dump_scalar(w.limit_value)}


def _violation(space, v) -> dict:
    return {"kind": v.kind, "operands": [dump_vec(space, x) for x in v.operands], "detail": v.detail}


# --------------------------------------------------------------------------
# commands


def cmd_classify(doc: dict, args) -> dict:
    space = parse_space(doc["space"])
    cls = amalgebra.classify_am_algebra(space)
    out = {"command": "classify", "space": dump_space(space), "isAMAlgebra": cls.is_am_algebra}
    if cls.norm_witness is not None:
        out["normContinuityWitness"] = _datum(cls.norm_witness)
    if cls.wx_witness is not None:
        out["wxWitness"] = _wx_witness(cls.wx_witness)
    if cls.am_weight is not None:
        out["amWeight"] = dump_weight(space, cls.am_weight)
    if "nakano" in doc:
        fam = [parse_vec(space, v) for v in doc["nakano"].get("family", [])]
        fam += [
            amalgebra.Staircase(
                tuple(parse_scalar(v) for v in s["prefix"]), parse_scalar(s["front"]), parse_scalar(s["tail"])
            )
            for s in doc["nakano"].get("staircases", [])
        ]
        nw = amalgebra.nakano_witness(space, fam)
        out["nakanoWitness"] = {
            "supNorms": dump_scalar(nw.sup_norms),
            "infBoundNorms": dump_scalar(nw.inf_bound_norms),
            "equal": nw.equal,
            "leastUpperBound": dump_vec(space, nw.least_bound),
        }
    return out


def cmd_wx_check(doc: dict, args) -> dict:
    space = parse_space(doc["space"])
    w = parse_weight(space, _need(doc, "weight"))
    member, witness = products.wx_membership(space, w)
    out = {"command": "wx-check", "space": dump_space(space), "weight": dump_weight(space, w), "member": member}
    if witness is not None:
        out["witness"] = _wx_witness(witness)
    return out


def cmd_product(doc: dict, args) -> dict:
    space = parse_space(doc["space"])
    w = parse_weight(space, _need(doc, "weight"))
    x, y = _vector(doc, space, "x"), _vector(doc, space, "y")
    p = products.product(space, w, x, y)
    return {
        "command": "product",
        "space": dump_space(space),
        "weight": dump_weight(space, w),
        "x": dump_vec(space, x),
        "y": dump_vec(space, y),
        "product": dump_vec(space, p),
        "submultiplicative": products.is_submultiplicative(space, w),
    }


def cmd_root(doc: dict, args) -> dict:
    space = parse_space(doc["space"])
    x = _vector(doc, space, "x")
    n = doc.get("params", {}).get("n", 2)
    if not isinstance(n, int) or isinstance(n, bool):
        raise ManifestError("params.n must be an integer")
    g = amalgebra.nth_root(space, x, n)
    exact = all(serialize.is_exact(v) for v in values(space, g))
    out = {"command": "root", "space": dump_space(space), "x": dump_vec(space, x), "n": n, "root": dump_vec(space, g), "exact": exact}
    if not exact:
        coord, nrm = amalgebra.root_residuals(space, x, g, n)
        out["residuals"] = {"power": repr(coord), "norm": repr(nrm)}
    return out


def cmd_check_falgebra(doc: dict, args) -> dict:
    space = parse_space(doc["space"])
    budget = doc.get("params", {}).get("budget", 2)
    out = {"command": "check-falgebra", "space": dump_space(space)}
    if "tensor" in doc:
        B = parse_tensor(doc["tensor"])
        fn = products.tensor_product(space, B)
        out["tensor"] = serialize.dump_tensor(B)
        if isinstance(space, FiniteAL):
            decided = al.al_decide_tensor(space, B)
        else:
            decided = products.decide_tensor(space, B)
        out["decidedWeight"] = None if decided is None else dump_weight(space, decided)
    else:
        w = parse_weight(space, _need(doc, "weight"))
        out["weight"] = dump_weight(space, w)
        if isinstance(space, FiniteAL):
            if any(v < 0 for v in w.values):
                raise PreconditionError("AL weights must be nonnegative")
            fn = al.al_product_fn(space, w)
        else:
            fn = products.weighted_product(space, w)
    report = products.verify_falgebra_axioms(space, fn, budget=budget)
    out["ok"] = report.ok
    out["checked"] = report.checked
    out["violations"] = [_violation(space, v) for v in report.violations]
    if "tensor" in doc and (out["decidedWeight"] is not None) != report.ok:
        raise InvariantBreach("tensor decision disagrees with the axiom verifier")
    return out


def cmd_check_hom(doc: dict, args) -> dict:
    dom = parse_space(doc["space"])
    cod = parse_space(_need(doc, "codomain"))
    T = Matrix(parse_matrix(_need(doc, "operator")["matrix"]), dom, cod)
    alg, witness = homomorphisms.is_algebra_hom(T)
    lat = homomorphisms.is_lattice_hom(T)
    ball = homomorphisms.ball_square_condition(T)
    form = homomorphisms.composition_form_checked(T)
    if not (alg == (lat and ball) == (form is not None)):
        raise InvariantBreach("homomorphism criteria disagree")
    out = {
        "command": "check-hom",
        "domain": dump_space(dom),
        "codomain": dump_space(cod),
        "matrix": [[dump_scalar(a) for a in row] for row in T.rows],
        "latticeHom": lat,
        "ballSquare": ball,
        "algebraHom": alg,
    }
    if witness is not None:
        out["witness"] = {
            "x": dump_vec(dom, witness.x),
            "y": dump_vec(dom, witness.y),
            "productOfImages": dump_vec(cod, witness.product_of_images),
            "imageOfProduct": dump_vec(cod, witness.image_of_product),
        }
    if form is not None:
        out["phi"] = {src: dst for src, dst in form.labels()}
    return out


def cmd_al_product(doc: dict, args) -> dict:
    space = parse_space(doc["space"])
    if not isinstance(space, FiniteAL):
        raise PreconditionError("al-product needs a FiniteAL space")
    w = parse_weight(space, _need(doc, "weight"))
    x, y = _vector(doc, space, "x"), _vector(doc, space, "y")
    p = al.al_product(space, w, x, y)
    return {
        "command": "al-product",
        "space": dump_space(space),
        "weight": dump_weight(space, w),
        "x": dump_vec(space, x),
        "y": dump_vec(space, y),
        "product": dump_vec(space, p),
        "productNorm": dump_scalar(norm(space, p)),
        "submultiplicative": al.is_al_submultiplicative(space, w),
        "onlyZeroProduct": al.only_zero_product(space),
    }


def cmd_sweep(doc: dict, args) -> dict:
    params = dict(doc.get("params", {}))
    name = params.pop("sweep", None)
    if name not in sweeps.SWEEPS:
        raise ManifestError(f"params.sweep must be one of {sorted(sweeps.SWEEPS)}")
    space = parse_space(_need(doc, "space")) if name == "tensor" else None
    kwargs = {}
    for key, target in (("grid", "grid"), ("entries", "entries"), ("dualWeights", "dual_weights")):
        if key in params:
            kwargs[target] = [dump_scalar(parse_scalar(v)) for v in params[key]]
    for key, target in (("nMax", "n_max"), ("mMax", "m_max")):
        if key in params:
            kwargs[target] = int(params[key])
    if "reduced" in params:
        kwargs["reduced"] = bool(params["reduced"])
    report = sweeps.run_sweep(name, kwargs, workers=args.workers, space=space)
    report = {k: ([list(map(str, d)) for d in v] if isinstance(v, list) else v) for k, v in report.items()}
    return {"command": "sweep", "sweep": name, **report}


COMMANDS = {
    "classify": cmd_classify,
    "wx-check": cmd_wx_check,
    "product": cmd_product,
    "root": cmd_root,
    "check-falgebra": cmd_check_falgebra,
    "check-hom": cmd_check_hom,
    "al-product": cmd_al_product,
    "sweep": cmd_sweep,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="amalg", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("manifest", help="path to a JSON manifest, or - for stdin")
    p.add_argument("--json", action="store_true", help="emit one JSON document")
    p.add_argument("--workers", type=int, default=1, help="worker processes for sweeps")
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        text = sys.stdin.read() if args.manifest == "-" else Path(args.manifest).read_text()
        doc = serialize.loads(text)
        if args.workers < 1:
            raise ManifestError("--workers must be at least 1")
        if args.command != "sweep" and "space" not in doc:
            raise ManifestError("manifest needs a 'space' entry")
        out = COMMANDS[args.command](doc, args)
    except (ManifestError, SpaceMismatch, OSError) as exc:
        print(f"amalg: error: {exc}", file=stderr)
        return EXIT_PARSE
    except PreconditionError as exc:
        print(f"amalg: precondition failed: {exc}", file=stderr)
        return EXIT_PRECONDITION
    except InvariantBreach as exc:
        print(f"amalg: invariant breach (bug): {exc}", file=stderr)
        return EXIT_BREACH
    stdout.write(serialize.dumps(out, as_json=args.json))
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

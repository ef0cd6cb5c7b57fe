"""Command line: ``treeshift {classify,oracle,dot}``.

Input is a tree-spec file (``-`` for stdin) or a generated family.  Reports
are JSON by default.  Exit codes: 0 success, 2 bad input, 3 numerical
failure or dimension cap, 4 classifier and oracle disagree.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import classify as cl
from . import families, oracle, scalar
from .measures import IDENTITY, parse_function
from .scalar import INF
from .shift import WeightedShift
from .treespec import TreeSpecError, export_dot, parse_tree_spec

EXIT_OK, EXIT_PARSE, EXIT_NUMERIC, EXIT_DISAGREE = 0, 2, 3, 4
FAMILIES = ("eunb", "fig1", "fig2", "fig3", "path", "qpath")
C_TOL = 1e-6


class UsageError(ValueError):
    pass


def _jsonable(x):
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, (list, tuple)):
        return [_jsonable(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (Fraction, float)) or scalar.is_exact(x):
        return scalar.fmt(x)
    if isinstance(x, (np.floating, np.integer)):
        return scalar.fmt(float(x))
    return str(x)


def load_shift(args) -> WeightedShift:
    if args.file and args.family:
        raise UsageError("give either a file or --family, not both")
    if args.file:
        text = sys.stdin.read() if args.file == "-" else open(args.file, encoding="utf-8").read()
        return parse_tree_spec(text)
    if not args.family:
        raise UsageError("no input: give a tree-spec file or --family")
    depth = args.depth
    if depth is None or depth < 0:
        raise UsageError("--family needs --depth N >= 0")
    fam = args.family
    if fam == "fig1":
        return families.fig1_for_constant(scalar.parse(args.c) if args.c else 4, depth)
    if fam == "fig2":
        return families.gen_fig2(lambda n: Fraction(1, n + 1), depth)
    if fam == "qpath":
        return families.gen_q_path(scalar.parse(args.q) if args.q else 2, depth)
    return families.make_family(fam, depth)


def classify_report(s: WeightedShift, scope: str) -> dict:
    rep = cl.classify(s, scope)
    return {
        "quasinormal": rep.quasinormal,
        "weakly_quasinormal": rep.weakly_quasinormal,
        "c_opt": scalar.fmt(rep.c_opt),
        "abc3": rep.abc3_holds,
        "hyponormal": rep.hyponormal,
        "witnesses": _jsonable(rep.witnesses),
        "scope": _jsonable(rep.scope),
        "boundary_vertices": _jsonable(rep.boundary_vertices),
        "fragile": rep.fragile,
    }


def _c_agree(a, b) -> bool:
    if a == INF or b == INF:
        return a == b
    a = scalar.to_float(a)
    return abs(a - b) <= C_TOL * max(1.0, abs(a))


def oracle_report(s: WeightedShift, scope: str, phi, psi, seed: int, n_random: int = 100) -> dict:
    """Oracle verdicts next to the classifier's, with agreement flags.

    A ``"witness"`` key holds a probe vector when the two sides disagree.
    """
    rng = np.random.default_rng(seed)
    vertices = cl.resolve_scope(s, scope)
    m = oracle.from_shift(s)
    qn, _ = cl.is_quasinormal(s, vertices)
    c = cl.c_optimal(s, vertices)
    o_qn = oracle.check_quasinormal(m, vertices)
    o_c = oracle.oracle_c_optimal(m, vertices)
    chq2 = oracle.chq2_conditions(m, rng, n_random, vertices)
    out = {
        "oracle": {
            "quasinormal": o_qn,
            "c_opt": scalar.fmt(o_c),
            "commutation": chq2.commutation,
            "measure_equality": chq2.measure_equality,
            "absolute_continuity": chq2.absolute_continuity,
            "fragile": m.fragile,
        },
        "agreement": {
            "quasinormal": o_qn == qn,
            "c_opt": _c_agree(c, o_c),
            "chq2": chq2.agree and chq2.commutation == qn,
        },
    }
    witness = None if chq2.agree else chq2.witness
    if not (phi is IDENTITY and psi is IDENTITY):
        gc = cl.generalized_c_optimal(s, phi, psi, vertices)
        gen_holds = gc != INF and scalar.compare(gc, Fraction(1)) <= 0
        g = oracle.check_generalized(m, phi, psi, rng, n_random, vertices)
        out["generalized"] = {
            "phi": phi.name,
            "psi": psi.name,
            "criterion": scalar.fmt(gc),
            "intertwines_projections": g.intertwines_projections,
            "intertwines_functions": g.intertwines_functions,
            "commutes_with_A": g.commutes_with_A,
            "measure_equality": g.measure_equality,
            "residuals": _jsonable(g.residuals),
        }
        out["agreement"]["generalized"] = g.operator_conditions_agree and g.commutes_with_A == gen_holds
    if witness is not None:
        out["witness"] = _vector_dump(m, witness)
    return out


def _vector_dump(m, f) -> dict:
    f = np.asarray(f)
    keep = np.flatnonzero(np.abs(f) > 1e-12)
    return {str(m.labels[i]): [scalar.fmt(float(f[i].real)), scalar.fmt(float(f[i].imag))] for i in keep}


def _random_run(seed: int, size: int) -> dict:
    """Agreement over the seeded random corpus on full scope."""
    results = []
    for k, s in enumerate(families.corpus(seed, size)):
        r = oracle_report(s, "full", IDENTITY, IDENTITY, seed + k, n_random=20)
        results.append(r["agreement"])
    keys = results[0].keys() if results else []
    return {
        "instances": len(results),
        "agreement": {k: all(r[k] for r in results) for k in keys},
        "failures": [i for i, r in enumerate(results) if not all(r.values())],
    }


def _emit(doc, fmt: str, out):
    if fmt == "json":
        out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
        return
    for key in sorted(doc):
        val = doc[key]
        if isinstance(val, dict):
            out.write(f"{key}:\n")
            for k in sorted(val):
                out.write(f"  {k}: {json.dumps(val[k])}\n")
        else:
            out.write(f"{key}: {json.dumps(val)}\n")


def _all_true(doc) -> bool:
    return all(doc.get("agreement", {}).values())


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="treeshift", description="Classify weighted shifts on directed trees.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in ("classify", "oracle", "dot"):
        q = sub.add_parser(name)
        q.add_argument("file", nargs="?", help="tree-spec file, - for stdin")
        q.add_argument("--family", choices=FAMILIES)
        q.add_argument("--depth", type=int)
        q.add_argument("--c", help="optimal constant for --family fig1 (default 4)")
        q.add_argument("--q", help="ratio for --family qpath (default 2)")
        if name != "dot":
            q.add_argument("--scope", choices=("interior", "full"), default="interior")
            q.add_argument("--format", choices=("json", "text"), default="json")
        if name == "oracle":
            q.add_argument("--phi", default="id", help="id, zero or q:VALUE")
            q.add_argument("--psi", default="id", help="id, zero or q:VALUE")
            q.add_argument("--seed", type=int, default=0)
            q.add_argument("--random", type=int, metavar="N", help="run the seeded random corpus of N trees")
            q.add_argument("--check", choices=("izonp",))
    return p


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        if args.command == "oracle" and args.check == "izonp":
            rng = np.random.default_rng(args.seed)
            draws = []
            for _ in range(20):
                B, D = rng.standard_normal(2)
                draws.append(oracle.izonp_counterexample_check(B, D))
            T, K = oracle.random_partial_contraction(rng, 6, 3)
            doc = {
                "izonp": all(d is not False for d in draws) and oracle.izonp_residual(T, K) <= 1e-9,
                "draws": len(draws),
            }
            _emit(doc, args.format, out)
            return EXIT_OK if doc["izonp"] else EXIT_DISAGREE
        if args.command == "oracle" and args.random is not None:
            doc = _random_run(args.seed, args.random)
            _emit(doc, args.format, out)
            return EXIT_OK if all(doc["agreement"].values()) else EXIT_DISAGREE
        s = load_shift(args)
        if args.command == "dot":
            out.write(export_dot(s))
            return EXIT_OK
        if args.command == "classify":
            _emit(classify_report(s, args.scope), args.format, out)
            return EXIT_OK
        doc = oracle_report(s, args.scope, parse_function(args.phi), parse_function(args.psi), args.seed)
        _emit(doc, args.format, out)
        return EXIT_OK if _all_true(doc) else EXIT_DISAGREE
    except (TreeSpecError, UsageError, families.ParameterError, ValueError, OSError) as exc:
        if isinstance(exc, oracle.DimensionCapExceeded):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_NUMERIC
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (oracle.NumericalError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

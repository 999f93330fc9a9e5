"""Command-line entry point.

Exit status: 0 on success, 1 on a domain error (bad word, invalid
script, unknown profile), 2 on usage errors.  ``--json`` switches any
subcommand to machine-readable output.
"""

import argparse
import json
import os
import sys

from . import bounds as bounds_mod
from . import catalog as catalog_mod
from . import handles as handles_mod
from . import reeb as reeb_mod
from . import verification
from .closure import (
    ClosureQuery,
    format_witness,
    freiheitssatz_probe,
    member_bounded,
)
from .nielsen import is_basis, nielsen_reduce
from .presentations import (
    DEFAULT_OMEGA_BUDGET,
    DEFAULT_SEED,
    abelianize,
    omega_fixed,
    omega_search,
    parse_presentation,
)
from .words import Alphabet, format_word, parse_word


def _alphabet(spec: str) -> Alphabet:
    return Alphabet(tuple(n.strip() for n in spec.split(",") if n.strip()))


def _emit(args, payload: dict, text: str) -> int:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)
    return 0


def _read_source(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


# ---------------------------------------------------------------------------
# Handlers

def _cmd_word(args) -> int:
    alpha = _alphabet(args.alphabet)
    words = [parse_word(e, alpha) for e in args.expr]
    if args.op == "product":
        out = words[0]
        for w in words[1:]:
            out = out * w
        return _emit(args, {"result": format_word(out)}, format_word(out))
    rows = []
    lines = []
    for raw, w in zip(args.expr, words):
        if args.op == "inverse":
            res = w.reduce().inverse()
        elif args.op == "core":
            _conj, res = w.cyclic_reduce()
        else:
            res = w.reduce()
        rows.append({
            "input": raw,
            "result": format_word(res),
            "length": len(res.letters),
            "support": list(res.support_names()),
        })
        lines.append(format_word(res))
    return _emit(args, {"words": rows}, "\n".join(lines))


def _cmd_omega(args) -> int:
    p = parse_presentation(args.presentation)
    if not args.search:
        value = omega_fixed(p)
        return _emit(args, {"omega": value, "search": False}, f"omega = {value}")
    res = omega_search(p, budget=args.budget, seed=args.seed)
    payload = {
        "omega": res.omega,
        "search": True,
        "certified": res.certified,
        "generator_order": list(res.gen_order),
        "relator_order": list(res.relator_order),
        "evaluations": res.evaluations,
        "seed": res.seed,
    }
    text = (
        f"omega = {res.omega} ({'certified' if res.certified else 'budgeted'},"
        f" {res.evaluations} orderings tried)\n"
        f"generator order: {', '.join(res.gen_order)}\n"
        f"relator order: {' '.join(str(i + 1) for i in res.relator_order)}"
    )
    return _emit(args, payload, text)


def _cmd_abelianize(args) -> int:
    inv = abelianize(parse_presentation(args.presentation))
    payload = {"free_rank": inv.free_rank, "torsion": list(inv.torsion)}
    return _emit(args, payload, str(inv))


def _cmd_nielsen(args) -> int:
    alpha = _alphabet(args.alphabet)
    words = tuple(parse_word(e, alpha) for e in args.words)
    if args.basis:
        answer = is_basis(words, alpha)
        return _emit(args, {"basis": answer}, f"basis: {'yes' if answer else 'no'}")
    res = nielsen_reduce(words, alpha)
    payload = {
        "words": [format_word(w) for w in res.words],
        "moves": [m.describe() for m in res.moves],
        "total_length": res.total_length,
    }
    lines = [format_word(w) for w in res.words]
    lines.append(f"total length {res.total_length} after {len(res.moves)} moves")
    lines.extend(f"  {m.describe()}" for m in res.moves)
    return _emit(args, payload, "\n".join(lines))


def _cmd_closure(args) -> int:
    p = parse_presentation(args.presentation)
    if (args.target is None) == (args.probe_relator is None):
        print("error: give exactly one of --target or --probe-relator", file=sys.stderr)
        return 2
    if args.target is not None:
        target = parse_word(args.target, p.alpha)
        query = ClosureQuery(
            alpha=p.alpha,
            relators=p.relators,
            target=target,
            radius=args.radius,
            factor_bound=args.factor_bound,
        )
        v = member_bounded(query, node_limit=args.node_limit)
        payload = {
            "status": v.status,
            "certificate": v.certificate,
            "witness": format_witness(v.witness) if v.witness is not None else None,
            "explored": v.explored,
            "radius": v.radius,
            "factor_bound": v.factor_bound,
        }
        text = f"{v.status} ({v.certificate}; explored {v.explored})"
        if v.witness is not None:
            text += "\nwitness: " + format_witness(v.witness)
        if v.note:
            text += f"\nnote: {v.note}"
        return _emit(args, payload, text)
    if args.probe_generator is None:
        print("error: --probe-relator needs --probe-generator", file=sys.stderr)
        return 2
    relator = parse_word(args.probe_relator, p.alpha)
    report = freiheitssatz_probe(
        relator,
        args.probe_generator,
        samples=args.samples,
        radius=args.radius,
        factor_bound=args.factor_bound,
        seed=args.seed,
    )
    payload = {
        "passed": report.passed,
        "samples": report.samples,
        "nontrivial": report.nontrivial,
        "trivial": report.trivial,
        "counterexamples": [format_word(w) for w in report.counterexamples],
        "seed": report.seed,
    }
    text = (
        f"{'pass' if report.passed else 'FAIL'}: {report.nontrivial} nontrivial,"
        f" {report.trivial} trivial of {report.samples} samples (seed {report.seed})"
    )
    return _emit(args, payload, text)


def _build_sequence(args) -> "handles_mod.HandleSequence":
    if args.script is not None:
        return handles_mod.parse_script(_read_source(args.script))
    if args.builder is None:
        raise ValueError("give --builder or --script")
    if args.builder == "ordered":
        if args.g is None:
            raise ValueError("ordered builder needs --g")
        return handles_mod.ordered(args.g)
    if args.builder == "s2xs1":
        return handles_mod.s2xs1()
    if args.builder == "circle-bundle":
        if args.g is None or args.e is None:
            raise ValueError("circle-bundle builder needs --g and --e")
        return handles_mod.circle_bundle_seq(args.g, args.e)
    # canonical
    if args.k1 is None or args.r is None:
        raise ValueError("canonical builder needs --k1 and --r")
    return handles_mod.canonical_sequence(args.k1, args.r)


def _census_payload(res) -> dict:
    g = res.graph
    return {
        "vertices": g.vertex_count,
        "edges": g.edge_count,
        "k": list(res.census.index_counts),
        "delta2": res.census.delta2,
        "delta3": res.census.delta3,
        "beta1": reeb_mod.cycle_rank(g),
        "indices": list(g.indices),
        "edge_list": [list(e) for e in g.edges],
    }


def _census_text(res) -> str:
    c = res.census
    beta = reeb_mod.cycle_rank(res.graph)
    k = " ".join(f"k{i}={v}" for i, v in enumerate(c.index_counts))
    return (
        f"vertices={c.vertex_count} edges={c.edge_count}\n"
        f"{k}\n"
        f"delta2={c.delta2} delta3={c.delta3} beta1={beta}"
    )


def _cmd_simulate(args) -> int:
    seq = _build_sequence(args)
    res = handles_mod.run(seq)
    if args.emit_script:
        sys.stdout.write(handles_mod.format_script(seq))
        return 0
    if args.dot:
        sys.stdout.write(reeb_mod.to_dot(res.graph))
        return 0
    return _emit(args, _census_payload(res), _census_text(res))


def _cmd_reeb(args) -> int:
    g = reeb_mod.from_json(_read_source(args.graph))
    if args.reduce_extrema:
        g = reeb_mod.reduce_extrema(g)
    if args.canonical:
        g = reeb_mod.canonical_form(g)
    if args.dot:
        sys.stdout.write(reeb_mod.to_dot(g))
        return 0
    c = reeb_mod.census(g)
    payload: dict = {
        "graph": reeb_mod.to_json_dict(g),
        "k": list(c.index_counts),
        "delta2": c.delta2,
        "delta3": c.delta3,
    }
    lines = [
        f"vertices={c.vertex_count} edges={c.edge_count}",
        " ".join(f"k{i}={v}" for i, v in enumerate(c.index_counts)),
        f"delta2={c.delta2} delta3={c.delta3}",
    ]
    if g.is_connected():
        beta = reeb_mod.cycle_rank(g)
        payload["beta1"] = beta
        lines.append(f"beta1={beta}")
        if g.dim == 3:
            chk = reeb_mod.betti_identity_check(g)
            payload["betti_identity"] = chk.ok
            lines.append(f"betti identity: {'ok' if chk.ok else f'VIOLATED ({chk.detail})'}")
    if args.euler is not None:
        ok = reeb_mod.parity_check(g, args.euler)
        payload["parity"] = ok
        lines.append(f"parity vs euler {args.euler}: {'ok' if ok else 'VIOLATED'}")
    if args.profile is not None:
        profile = _load_profile(args.profile)
        report = reeb_mod.realization_obstruction(g, profile)
        payload["realization"] = {
            "status": report.status,
            "reasons": list(report.reasons),
            "checks_run": list(report.checks_run),
            "missing": list(report.missing),
        }
        lines.append(f"realization vs {profile.name}: {report.status}")
        lines.extend(f"  {r}" for r in report.reasons)
    return _emit(args, payload, "\n".join(lines))


def _load_profile(spec: str) -> "bounds_mod.ManifoldProfile":
    if os.path.exists(spec) or spec.endswith(".json") or spec == "-":
        return bounds_mod.profile_from_json(_read_source(spec))
    return catalog_mod.get_profile(spec)


def _cmd_bounds(args) -> int:
    p = _load_profile(args.profile)
    est = bounds_mod.estimate(p)
    payload = {
        "name": p.name,
        "lower": est.lower,
        "upper": est.upper,
        "exact": est.exact,
        "bounds": {bid: v for bid, v in est.provenance},
    }
    lines = [f"profile: {p.name} (dim {p.dim})"]
    for bid, v in est.provenance:
        lines.append(f"  {bid:<26} {v}")
    if args.ring is not None:
        v = bounds_mod.bound_homology(p, args.ring)
        payload["ring_bound"] = {"ring": args.ring, "value": v}
        lines.append(f"  homology over {args.ring}: {v}")
    upper = "?" if est.upper is None else est.upper
    lines.append(f"interval: [{est.lower}, {upper}]")
    lines.append(f"exact: {'yes' if est.exact else 'no'}")
    return _emit(args, payload, "\n".join(lines))


def _cmd_catalog(args) -> int:
    if args.name is not None:
        p = catalog_mod.get_profile(args.name)
        if args.json:
            print(json.dumps(bounds_mod.profile_to_json_dict(p), indent=2))
            return 0
        sys.stdout.write(bounds_mod.profile_to_json(p))
        return 0
    profiles = catalog_mod.catalog()
    if args.json:
        print(json.dumps([bounds_mod.profile_to_json_dict(p) for p in profiles], indent=2))
        return 0
    for p in profiles:
        est = bounds_mod.estimate(p)
        upper = "?" if est.upper is None else est.upper
        tag = "exact" if est.exact else "range"
        print(f"{p.name:<26} dim={p.dim}  delta2 [{est.lower}, {upper}] {tag}")
    return 0


def _cmd_verify_paper(args) -> int:
    results = verification.run_all()
    failed = [r for r in results if not r.ok]
    if args.json:
        print(json.dumps(
            [
                {
                    "id": r.check_id,
                    "description": r.description,
                    "ok": r.ok,
                    "detail": r.detail,
                }
                for r in results
            ],
            indent=2,
        ))
    else:
        width = max(len(r.check_id) for r in results)
        for r in results:
            mark = "PASS" if r.ok else "FAIL"
            print(f"{mark}  {r.check_id:<{width}}  {r.description}")
            if not r.ok:
                print(f"      {r.detail}")
        print(f"{len(results) - len(failed)}/{len(results)} reference checks passed")
    return 1 if failed else 0


# ---------------------------------------------------------------------------
# Parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="morsereeb",
        description="Reeb graphs of handle decompositions and bounds on degree-2 vertices",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_json(p):
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("word", help="reduce and combine free-group words")
    p.add_argument("--alphabet", required=True, help="comma-separated generator names")
    p.add_argument("--op", choices=("reduce", "core", "inverse", "product"), default="reduce")
    p.add_argument("expr", nargs="+", help="word expressions")
    add_json(p)
    p.set_defaults(func=_cmd_word)

    p = sub.add_parser("omega", help="staircase invariant of a presentation")
    p.add_argument("--presentation", required=True, help="'gens: ... ; rels: ...'")
    p.add_argument("--search", action="store_true", help="minimize over reorderings")
    p.add_argument("--budget", type=int, default=DEFAULT_OMEGA_BUDGET)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    add_json(p)
    p.set_defaults(func=_cmd_omega)

    p = sub.add_parser("abelianize", help="abelian invariants of a presentation")
    p.add_argument("--presentation", required=True)
    add_json(p)
    p.set_defaults(func=_cmd_abelianize)

    p = sub.add_parser("nielsen", help="reduce a word tuple or test a basis")
    p.add_argument("--alphabet", required=True)
    p.add_argument("--basis", action="store_true")
    p.add_argument("words", nargs="+")
    add_json(p)
    p.set_defaults(func=_cmd_nielsen)

    p = sub.add_parser("closure", help="bounded normal-closure membership and probes")
    p.add_argument("--presentation", required=True)
    p.add_argument("--target", default=None)
    p.add_argument("--probe-relator", default=None)
    p.add_argument("--probe-generator", default=None)
    p.add_argument("--radius", type=int, default=2)
    p.add_argument("--factor-bound", type=int, default=3)
    p.add_argument("--node-limit", type=int, default=None)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    add_json(p)
    p.set_defaults(func=_cmd_closure)

    p = sub.add_parser("simulate", help="replay a handle script and report its graph")
    p.add_argument("--builder", choices=("ordered", "s2xs1", "circle-bundle", "canonical"))
    p.add_argument("--script", default=None, help="script file, '-' for stdin")
    p.add_argument("--g", type=int, default=None)
    p.add_argument("--e", type=int, default=None)
    p.add_argument("--k1", type=int, default=None)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--dot", action="store_true", help="emit the graph as DOT")
    p.add_argument("--emit-script", action="store_true", help="print the normalized script")
    add_json(p)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("reeb", help="inspect or transform a graph JSON document")
    p.add_argument("--graph", required=True, help="graph JSON file, '-' for stdin")
    p.add_argument("--canonical", action="store_true")
    p.add_argument("--reduce-extrema", action="store_true")
    p.add_argument("--dot", action="store_true")
    p.add_argument("--euler", type=int, default=None)
    p.add_argument("--profile", default=None, help="catalog name or profile JSON")
    add_json(p)
    p.set_defaults(func=_cmd_reeb)

    p = sub.add_parser("bounds", help="evaluate degree-2 bounds for a profile")
    p.add_argument("action", choices=("estimate",))
    p.add_argument("--profile", required=True, help="catalog name or profile JSON file")
    p.add_argument("--ring", default=None, help="report the homology bound over one ring")
    add_json(p)
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("catalog", help="list built-in manifold profiles")
    p.add_argument("--name", default=None, help="print one profile as JSON")
    add_json(p)
    p.set_defaults(func=_cmd_catalog)

    p = sub.add_parser("verify-paper", help="recompute the published reference values")
    add_json(p)
    p.set_defaults(func=_cmd_verify_paper)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 2
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except BrokenPipeError:
        return 1


if __name__ == "__main__":
    sys.exit(main())

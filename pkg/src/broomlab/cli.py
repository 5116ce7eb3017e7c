"""Command-line interface.

Subcommands: gen, analyze, pipeline, audit, lemma-check, constants,
survey.  All output files are deterministic for fixed inputs and seeds;
timing diagnostics go to stderr only, never into the artifact.  Exit
codes: 0 success, 2 parse or parameter error, 3 exact-solver refusal,
4 property-suite failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from pathlib import Path

from . import __version__
from .constants import ledger
from .generators import GenSpec, generate
from .graph_io import GraphParseError, read_graph, render_graph
from .graphs import Graph
from .pipeline import run_pipeline
from .solvers import InstanceTooLarge, chi_local, chromatic_number, clique_number
from .structures import Params, ThetaTable, find_core
from .suites import SUITES, run_suite
from .trees import is_T_delta_free


def _params_from_args(args) -> Params:
    eta = args.eta if args.eta is not None else max(1, args.delta)
    zeta = (
        args.zeta
        if args.zeta is not None
        else max(eta, args.alpha) + args.delta
    )
    theta = ThetaTable(tuple(args.theta)) if args.theta else ThetaTable.identity()
    return Params(
        delta=args.delta,
        tau=args.tau,
        alpha=args.alpha,
        beta=args.beta,
        zeta=zeta,
        eta=eta,
        theta=theta,
    )


def _add_param_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--delta", type=int, default=1)
    sub.add_argument("--tau", type=int, default=1)
    sub.add_argument("--alpha", type=int, default=1)
    sub.add_argument("--beta", type=int, default=2)
    sub.add_argument("--zeta", type=int, default=None,
                     help="default: max(eta, alpha) + delta")
    sub.add_argument("--eta", type=int, default=None,
                     help="default: max(1, delta)")
    sub.add_argument("--theta", type=int, nargs="+", default=None,
                     help="finite non-decreasing table for the core threshold")


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, newline="")
    else:
        sys.stdout.write(text)


def _dump(payload: dict, out: str | None) -> None:
    _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", out)


def _load_graph(args) -> Graph:
    return read_graph(args.graph, args.format)


def _tag(value, provenance: str = "exact") -> dict:
    return {"value": value, "provenance": provenance}


def cmd_gen(args) -> int:
    params = json.loads(args.params) if args.params else {}
    spec = GenSpec(family=args.family, params=params, seed=args.seed)
    g = generate(spec)
    fmt = args.format or ("dimacs" if args.out and args.out.endswith(".col") else "edgelist")
    _emit(render_graph(g, fmt), args.out)
    return 0


def cmd_analyze(args) -> int:
    g = _load_graph(args)
    p = _params_from_args(args)
    limit = args.solver_limit
    omega, omega_witness = clique_number(g, limit=limit)
    chi, _ = chromatic_number(g, limit=limit)
    chi1 = chi_local(g, 1, limit=limit) if g.n else 0
    chi2 = chi_local(g, 2, limit=limit) if g.n else 0
    t_free = is_T_delta_free(g, p.delta, limit=limit)
    best_core = None
    a = 1
    while a * p.beta <= g.n:
        found = find_core(g, a, p.beta, limit=limit)
        if found is None:
            break
        best_core = {"a": a, "b": p.beta, "parts": [sorted(x) for x in found.parts]}
        a += 1
    report = {
        "tool": {"name": "broomlab", "version": __version__},
        "instance": {"graph": str(args.graph), "n": g.n, "m": g.m},
        "params": {
            "delta": p.delta, "tau": p.tau, "alpha": p.alpha,
            "beta": p.beta, "zeta": p.zeta, "eta": p.eta,
        },
        "results": {
            "omega": _tag(omega),
            "omega_witness": sorted(omega_witness),
            "chi": _tag(chi),
            "chi_ball_1": _tag(chi1),
            "chi_ball_2": _tag(chi2),
            "t_free": _tag(t_free),
            "best_core": best_core,
        },
    }
    _dump(report, args.out)
    return 0


def cmd_pipeline(args) -> int:
    g = _load_graph(args)
    p = _params_from_args(args)
    started = time.perf_counter()
    trace = run_pipeline(g, p, limit=args.solver_limit)
    elapsed = time.perf_counter() - started
    print(f"pipeline completed in {elapsed:.3f}s", file=sys.stderr)
    payload = {
        "tool": {"name": "broomlab", "version": __version__},
        "instance": {"graph": str(args.graph), "n": g.n, "m": g.m},
        "params": {
            "delta": p.delta, "tau": p.tau, "alpha": p.alpha,
            "beta": p.beta, "zeta": p.zeta, "eta": p.eta,
        },
        "trace": trace.to_json_dict(),
    }
    _dump(payload, args.out)
    return 0


def cmd_audit(args) -> int:
    g = _load_graph(args)
    p = _params_from_args(args)
    trace = run_pipeline(g, p, limit=args.solver_limit)
    payload = {
        "tool": {"name": "broomlab", "version": __version__},
        "instance": {"graph": str(args.graph), "n": g.n, "m": g.m},
        "audit": trace.audit.to_json_dict(),
        "strong_triples": trace.strong_triples.to_json_dict(),
        "leftover_core_free": trace.leftover_core_free,
    }
    _dump(payload, args.out)
    return 0


def cmd_lemma_check(args) -> int:
    started = time.perf_counter()
    result = run_suite(args.suite, trials=args.trials, seed=args.seed)
    elapsed = time.perf_counter() - started
    print(
        f"suite {args.suite}: {result.trials} trials, "
        f"{len(result.failures)} failures in {elapsed:.3f}s",
        file=sys.stderr,
    )
    payload = {
        "tool": {"name": "broomlab", "version": __version__},
        "seed": args.seed,
        **result.to_json_dict(),
    }
    _dump(payload, args.out)
    return 0 if result.ok else 4


def cmd_constants(args) -> int:
    p = _params_from_args(args)
    lg = ledger(p)
    _dump(lg.to_json_dict(), args.out)
    return 0


def cmd_survey(args) -> int:
    manifest = json.loads(Path(args.manifest).read_text())
    analysis = manifest.get("analysis", {})
    delta = int(analysis.get("delta", 1))
    beta = int(analysis.get("beta", 2))
    limit = args.solver_limit
    buffer = io.StringIO()
    writer = csv.writer(buffer, quoting=csv.QUOTE_MINIMAL)
    writer.writerow(["id", "family", "n", "omega", "chi", "t_free", "error"])
    for inst in manifest["instances"]:
        spec = GenSpec(
            family=inst["family"],
            params=inst.get("params", {}),
            seed=int(inst.get("seed", 0)),
        )
        row_id = inst.get("id", spec.key())
        try:
            g = generate(spec)
            omega, _ = clique_number(g, limit=limit)
            chi, _ = chromatic_number(g, limit=limit)
            t_free = is_T_delta_free(g, delta, limit=limit)
            writer.writerow([row_id, spec.family, g.n, omega, chi, t_free, ""])
        except InstanceTooLarge as exc:
            writer.writerow([row_id, spec.family, "", "", "", "", str(exc)])
    _emit(buffer.getvalue(), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="broomlab",
        description="Graph laboratory for multibroom containment, cores, "
        "template arrays, daisies, and exact bound audits.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("gen", help="generate a graph file")
    sub.add_argument("--family", required=True)
    sub.add_argument("--params", help="family parameters as a JSON object")
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--format", choices=["edgelist", "dimacs"], default=None)
    sub.add_argument("--out")
    sub.set_defaults(fn=cmd_gen)

    for name, fn in (
        ("analyze", cmd_analyze),
        ("pipeline", cmd_pipeline),
        ("audit", cmd_audit),
    ):
        sub = subs.add_parser(name)
        sub.add_argument("--graph", required=True)
        sub.add_argument("--format", choices=["edgelist", "dimacs"], default=None)
        sub.add_argument("--solver-limit", type=int, default=None)
        sub.add_argument("--out")
        _add_param_flags(sub)
        sub.set_defaults(fn=fn)

    sub = subs.add_parser("lemma-check", help="run a named property suite")
    sub.add_argument("--suite", required=True, choices=sorted(SUITES))
    sub.add_argument("--trials", type=int, default=None)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--out")
    sub.set_defaults(fn=cmd_lemma_check)

    sub = subs.add_parser("constants", help="emit the exact bound ledger")
    sub.add_argument("--out")
    _add_param_flags(sub)
    sub.set_defaults(fn=cmd_constants)

    sub = subs.add_parser("survey", help="sweep a manifest into CSV rows")
    sub.add_argument("--manifest", required=True)
    sub.add_argument("--solver-limit", type=int, default=None)
    sub.add_argument("--out")
    sub.set_defaults(fn=cmd_survey)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except InstanceTooLarge as exc:
        _error({"type": "solver_refusal", "message": str(exc),
                "size": exc.size, "limit": exc.limit})
        return 3
    except (GraphParseError, json.JSONDecodeError, FileNotFoundError, KeyError,
            ValueError) as exc:
        _error({"type": type(exc).__name__, "message": str(exc)})
        return 2


def _error(payload: dict) -> None:
    print(json.dumps({"error": payload}, sort_keys=True), file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())

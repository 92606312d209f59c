"""Command-line entry point.

Reports go to standard output as JSON (``"schema": 1``) or CSV; graphs go to files. Exit
status is 0 on success, 1 when a verification claim fails and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Optional, Sequence

from . import analysis, certificates, constructions, oracle, switching
from .config import Config, load_config
from .errors import (
    CapabilityError,
    ConsistencyError,
    ConvergenceError,
    DomainError,
    InputError,
    SpectralExtremalError,
)
from .graph import Graph, degree_profile, is_connected, is_isomorphic
from .io import read_graph, to_graph6, write_graph
from .spectral import gap_identities_residual, perron, perron_gap

SCHEMA = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _num(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    return format(x, ".17g")


def dumps(obj) -> str:
    """JSON with floats at 17 significant digits and keys in insertion order."""
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, float):
        return _num(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    if hasattr(obj, "item"):  # numpy scalar
        return dumps(obj.item())
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _emit(payload: dict) -> None:
    sys.stdout.write(dumps({"schema": SCHEMA, **payload}) + "\n")


LIMIT_COLUMNS = ["delta", "n", "k", "lambda1", "gap", "scaled", "normalized", "target", "rel_err", "delta_min"]


def limits_csv(rows: Sequence[analysis.GapRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(LIMIT_COLUMNS)
    for r in rows:
        w.writerow([
            r.delta, r.n, "" if r.k is None else r.k, _num(r.lambda1), _num(r.gap), _num(r.scaled_gap),
            _num(r.normalized), _num(r.target), _num(r.rel_err), r.delta_min,
        ])
    return buf.getvalue()


# subcommands
def _construct(args, cfg: Config) -> int:
    if args.family == "extremal":
        if args.n is None:
            raise InputError("--n is required")
        if args.delta == 3:
            g = constructions.extremal_delta3(args.n, allow_small=args.allow_small)
        elif args.delta == 4:
            g = constructions.extremal_delta4(args.n, allow_small=args.allow_small)
        else:
            raise CapabilityError("extremal constructions exist for delta 3 and 4; use --family h")
    elif args.family == "h":
        if args.n is None:
            raise InputError("--n is required")
        g = constructions.h_family(args.delta, args.n)
    else:
        if args.k is None or args.p is None:
            raise InputError("--k and --p are required for --family g")
        g = constructions.g_family(args.delta, args.k, args.p)
    write_graph(g, args.out, args.format)
    prof = degree_profile(g)
    _emit({"command": "construct", "out": str(args.out), "n": g.n, "m": g.m, "graph6": to_graph6(g),
           "degrees": list(prof.sorted_degrees)})
    return EXIT_OK


def _lambda(args, cfg: Config) -> int:
    g = read_graph(args.input)
    pd = perron(g, cfg.tol, cfg.max_iters)
    delta = args.delta if args.delta is not None else g.max_degree()
    r_energy, r_sum = gap_identities_residual(g, pd, delta)
    out = {
        "command": "lambda", "n": g.n, "m": g.m, "delta": delta, "lambda1": pd.lambda1,
        "gap": perron_gap(g, pd, delta), "residual": pd.residual, "iterations": pd.iterations,
        "identity_residuals": {"energy": r_energy, "sum": r_sum},
    }
    if args.vector:
        out["x"] = [float(v) for v in pd.x]
    _emit(out)
    return EXIT_OK


def _construction_for(delta: int, n: int) -> Optional[Graph]:
    try:
        if delta == 3:
            return constructions.extremal_delta3(n)
        if delta == 4:
            return constructions.extremal_delta4(n)
    except CapabilityError:
        return None
    return None


def _oracle(args, cfg: Config) -> int:
    cap = args.cap if args.cap is not None else cfg.oracle_cap(args.delta)
    rep = oracle.enumerate_extremal(args.n, args.delta, cap=cap, force=args.force, threads=args.threads)
    out = {"command": "oracle", **rep.to_dict()}
    audits = []
    for w in rep.witnesses:
        audits.append(oracle.verify_structure_lemmas(w.graph, perron(w.graph, cfg.tol), args.delta).to_dict())
    out["structure_audit"] = audits
    ok = True
    ref = _construction_for(args.delta, args.n)
    if ref is not None:
        match = len(rep.witnesses) == 1 and is_isomorphic(rep.witnesses[0].graph, ref)
        out["matches_construction"] = match
        ok = match
    _emit(out)
    return EXIT_OK if ok else EXIT_FAIL


def _limits(args, cfg: Config) -> int:
    rep = analysis.limit_report(args.delta, args.ns, cfg, threads=args.threads)
    sys.stdout.write(limits_csv(rep.rows))
    if args.json:
        with open(args.json, "w", newline="\n") as fh:
            fh.write(dumps({"schema": SCHEMA, "command": "limits", **rep.to_dict()}) + "\n")
    # equality targets for delta <= 4, lim-sup bounds beyond
    ok = rep.verdict if args.delta <= 4 else rep.below_bound
    return EXIT_OK if ok else EXIT_FAIL


def _counterexample(args, cfg: Config) -> int:
    if args.k is not None:
        rep = analysis.cioaba_check(args.delta, args.k, args.alpha, cfg.large_tol)
    else:
        rep = analysis.cioaba_search(args.delta, args.k_max)
        if rep is None:
            _emit({"command": "counterexample", "delta": args.delta, "k_max": args.k_max, "found": False})
            return EXIT_FAIL
    _emit({"command": "counterexample", **rep.to_dict()})
    return EXIT_OK if rep.diameter_ok else EXIT_FAIL


def _audit(args, cfg: Config) -> int:
    g = read_graph(args.input)
    delta = args.delta if args.delta is not None else g.max_degree()
    out = {"command": "audit", "n": g.n, "delta": delta}
    violations = certificates.audit_forbidden(g, delta, strict=not args.plain)
    out["violations"] = [v.to_dict() for v in violations]
    if is_connected(g) and not degree_profile(g).is_regular:
        pd = perron(g, cfg.tol, cfg.max_iters)
        out["structure_audit"] = oracle.verify_structure_lemmas(g, pd, delta).to_dict()
    if args.identities:
        out["identities"] = [r.to_dict() for r in certificates.quadratic_form_identities(g, delta)]
    _emit(out)
    return EXIT_FAIL if violations else EXIT_OK


def _polysuite(args, cfg: Config) -> int:
    reports = certificates.polynomial_suite(args.samples)
    ok = all(r.claim_holds for r in reports)
    _emit({"command": "polysuite", "all_hold": ok, "reports": [r.to_dict() for r in reports]})
    return EXIT_OK if ok else EXIT_FAIL


def _ints(text: str, count: int) -> list[int]:
    try:
        vals = [int(t) for t in text.split(",")]
    except ValueError:
        raise InputError(f"expected {count} comma-separated integers, got {text!r}") from None
    if len(vals) != count:
        raise InputError(f"expected {count} comma-separated integers, got {text!r}")
    return vals


def _check_switch(args, cfg: Config) -> int:
    g = read_graph(args.input)
    pd = perron(g, cfg.tol, cfg.max_iters)
    if args.move is not None:
        m = switching.SwitchMove(*_ints(args.move, 4))
        h = switching.local_switch(g, m)
        proper = switching.is_proper_switch(pd, m, cfg.tie_tol)
    else:
        m = switching.RotationMove(*_ints(args.rotate, 3))
        h = switching.rotate(g, m)
        proper = switching.rotation_gains(pd, m)
    conn = is_connected(h)
    after = perron(h, cfg.tol, cfg.max_iters).lambda1 if conn else None
    out = {
        "command": "check-switch",
        "proper": proper,
        "lambda_before": pd.lambda1,
        "lambda_after": after,
        "degrees_preserved": sorted(g.degrees()) == sorted(h.degrees()),
        "connected_after": conn,
    }
    if args.out:
        write_graph(h, args.out)
        out["out"] = str(args.out)
    _emit(out)
    # the criterion promises no loss in lambda_1 for a proper move with a connected result
    failed = proper and conn and after < pd.lambda1 - cfg.tie_tol
    return EXIT_FAIL if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file (default: $SPECTRAL_EXTREMAL_CONFIG)")
    common.add_argument("--tol", type=float, help="eigensolver tolerance")
    common.add_argument("--max-iters", type=int)
    common.add_argument("--tie-tol", type=float, help="tolerance for lambda_1 comparisons")

    p = argparse.ArgumentParser(prog="spectral-extremal", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", parents=[common], help="build a graph and write it to a file")
    c.add_argument("--delta", type=int, required=True)
    c.add_argument("--n", type=int)
    c.add_argument("--family", choices=["extremal", "h", "g"], default="extremal")
    c.add_argument("--k", type=int)
    c.add_argument("--p", type=int)
    c.add_argument("--allow-small", action="store_true")
    c.add_argument("--out", required=True)
    c.add_argument("--format", choices=["graph6", "edgelist"])

    c = sub.add_parser("lambda", parents=[common], help="spectral radius of a graph file")
    c.add_argument("--in", dest="input", required=True)
    c.add_argument("--delta", type=int)
    c.add_argument("--vector", action="store_true", help="include the Perron vector")

    c = sub.add_parser("oracle", parents=[common], help="exhaustive extremal search")
    c.add_argument("--delta", type=int, required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--cap", type=int)
    c.add_argument("--force", action="store_true")
    c.add_argument("--threads", type=int, default=1)

    c = sub.add_parser("limits", parents=[common], help="normalized gap table as CSV")
    c.add_argument("--delta", type=int, required=True)
    c.add_argument("--ns", type=int, nargs="+", required=True)
    c.add_argument("--json", help="also write the verdicts to this file")
    c.add_argument("--threads", type=int, default=1)

    c = sub.add_parser("counterexample", parents=[common], help="diameter bound test on the coalescence family")
    c.add_argument("--delta", type=int, required=True)
    c.add_argument("--k", type=int)
    c.add_argument("--alpha", type=int)
    c.add_argument("--k-max", type=int, default=500)

    c = sub.add_parser("audit", parents=[common], help="forbidden patterns and structure checks")
    c.add_argument("--in", dest="input", required=True)
    c.add_argument("--delta", type=int)
    c.add_argument("--plain", action="store_true", help="report every degree-matched induced copy")
    c.add_argument("--identities", action="store_true", help="evaluate the replacement identities")

    c = sub.add_parser("polysuite", parents=[common], help="sign checks of the norm polynomials")
    c.add_argument("--samples", type=int, default=1000)

    c = sub.add_parser("check-switch", parents=[common], help="apply one switching or rotation")
    c.add_argument("--in", dest="input", required=True)
    g = c.add_mutually_exclusive_group(required=True)
    g.add_argument("--move", help="local switching s,t,v,u")
    g.add_argument("--rotate", help="rotation u,v,w")
    c.add_argument("--out")
    return p


HANDLERS = {
    "construct": _construct,
    "lambda": _lambda,
    "oracle": _oracle,
    "limits": _limits,
    "counterexample": _counterexample,
    "audit": _audit,
    "polysuite": _polysuite,
    "check-switch": _check_switch,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        cfg = load_config(args.config).with_overrides(tol=args.tol, max_iters=args.max_iters, tie_tol=args.tie_tol)
        return HANDLERS[args.command](args, cfg)
    except (InputError, CapabilityError, DomainError, OSError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE
    except (ConsistencyError, ConvergenceError, SpectralExtremalError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_FAIL


def main() -> None:
    sys.exit(run())

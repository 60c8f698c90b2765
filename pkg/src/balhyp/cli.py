"""Command-line front end: text-format instances in, canonical JSON reports out.

Exit codes: 0 success, 1 usage/IO/parse error or unmet precondition,
2 a guaranteed property failed on a balanced input, 3 a search cap was hit.
Edge indices in reports are 0-based positions in the input file; vertex ids
are the file's 1..n.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from typing import Any, Callable, Sequence, TextIO

from . import __version__
from .augment import matching_via_augmentation
from .balance import is_balanced
from .charac import check_charac_D, check_charac_stable, check_weighted_D
from .coloring import edge_coloring, verify_edge_coloring
from .core import Hypergraph, format_text, parse_text
from .decompose import classic_dac, compare_equalities, dpm, fqn, verify_galed1, verify_galed2
from .errors import HypergraphError, InstanceTooLarge, ParseError, TheoremViolation, state_budget
from .gen import GenSpec
from .solve import WeightFn, degree_bound, is_matching, max_matching, min_vertex_cover

EXIT_OK, EXIT_USAGE, EXIT_FINDING, EXIT_TOO_LARGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def canonical(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def digest(h: Hypergraph, weights: Sequence[int] | None = None) -> str:
    return hashlib.sha256(format_text(h, weights).encode()).hexdigest()


class Instance:
    def __init__(self, h: Hypergraph, file_weights: list[int] | None) -> None:
        self.h = h
        self.file_weights = file_weights
        self.digest = digest(h, file_weights)

    def weights(self, kind: str) -> WeightFn:
        if kind == "custom":
            if self.file_weights is None:
                raise UsageError("--weights custom needs w= on every edge line")
            return WeightFn.custom(self.file_weights)
        return WeightFn(kind)  # type: ignore[arg-type]


def _walk_json(walk) -> list[int] | None:
    return None if walk is None else walk.sequence()


# -- per-command report builders; each returns (payload, exit code) ------------------

Result = tuple[dict, int]


def report_check_balance(inst: Instance, args: argparse.Namespace) -> Result:
    cert = is_balanced(inst.h)
    return {"verdict": cert.verdict, "witness": _walk_json(cert.witness)}, EXIT_OK


def report_match(inst: Instance, args: argparse.Namespace) -> Result:
    mt = max_matching(inst.h, inst.weights(args.weights))
    return {"gamma": mt.weight, "matching": list(mt.edges)}, EXIT_OK


def report_cover(inst: Instance, args: argparse.Namespace) -> Result:
    cv = min_vertex_cover(inst.h, inst.weights(args.weights))
    return {"tau": cv.total, "cover": list(cv.values)}, EXIT_OK


def report_konig(inst: Instance, args: argparse.Namespace) -> Result:
    w = inst.weights(args.weights)
    mt = max_matching(inst.h, w)
    cv = min_vertex_cover(inst.h, w)
    balanced = is_balanced(inst.h).balanced
    equal = mt.weight == cv.total
    payload = {"gamma": mt.weight, "tau": cv.total, "equal": equal, "balanced": balanced,
               "matching": list(mt.edges), "cover": list(cv.values)}
    return payload, EXIT_FINDING if balanced and not equal else EXIT_OK


def report_bound(inst: Instance, args: argparse.Namespace) -> Result:
    r = degree_bound(inst.h, args.q)
    payload = {"q": r.q, "slack": r.slack, "hypothesis": r.hypothesis_holds,
               "bound": r.bound, "gamma_V": r.gamma_V, "conclusion": r.conclusion_holds,
               "balanced": r.balanced, "ok": r.ok}
    return payload, EXIT_OK if r.ok else EXIT_FINDING


def report_color(inst: Instance, args: argparse.Namespace) -> Result:
    col = edge_coloring(inst.h)
    valid = verify_edge_coloring(inst.h, col)
    payload = {"k": col.k, "delta": inst.h.max_degree(), "valid": valid,
               "classes": [list(c) for c in col.classes]}
    return payload, EXIT_OK if valid else EXIT_FINDING


def report_decompose(inst: Instance, args: argparse.Namespace) -> Result:
    fn = {"dpm": dpm, "fqn": fqn, "classic": classic_dac}[args.mode]
    dec = fn(inst.h)
    return {"mode": args.mode, "tag": dec.tag, "sets": dec.as_dict()}, EXIT_OK


def report_verify(inst: Instance, args: argparse.Namespace) -> Result:
    if args.theorem == "equalities":
        rep = compare_equalities(inst.h)
        return rep.as_dict(), EXIT_OK if rep.consistent else EXIT_FINDING
    tr = (verify_galed2 if args.theorem == "galed2" else verify_galed1)(inst.h)
    return tr.as_dict(), EXIT_OK if tr.passed else EXIT_FINDING


def _vertex_weights(inst: Instance, spec: str | None) -> list[int]:
    if spec is None:
        return [1] * inst.h.n
    try:
        w = [int(t) for t in spec.split(",")]
    except ValueError:
        raise UsageError(f"bad --vertex-weights {spec!r}") from None
    if len(w) != inst.h.n:
        raise UsageError(f"--vertex-weights needs {inst.h.n} values")
    return w


def report_charac(inst: Instance, args: argparse.Namespace) -> Result:
    h = inst.h
    balanced = is_balanced(h).balanced
    if args.which == "D":
        r = check_charac_D(h, sample=args.sample, seed=args.seed)
        payload: dict = {"which": "D", "holds": r.holds, "mode": r.mode, "checked": r.checked,
                         "witness": None}
        if r.witness is not None:
            payload["witness"] = {"vertices": list(r.witness.vertices),
                                  "edges": [sorted(e) for e in r.witness.edges],
                                  "edge": r.witness_edge, "D": sorted(r.witness_D or ())}
        holds = r.holds
    elif args.which == "weighted":
        w = inst.weights(args.weights)
        holds = check_weighted_D(h, w)
        payload = {"which": "weighted", "holds": holds, "weights": list(w.on(h))}
    else:
        vw = _vertex_weights(inst, args.vertex_weights)
        r2 = check_charac_stable(h, vw)
        holds = r2.holds
        payload = {"which": "stable", "holds": holds, "failing_vertex": r2.failing_vertex,
                   "met_edges": list(r2.met_edges), "weights": vw}
    payload["balanced"] = balanced
    return payload, EXIT_FINDING if balanced and not holds else EXIT_OK


COMMANDS: dict[str, Callable[[Instance, argparse.Namespace], Result]] = {
    "check-balance": report_check_balance,
    "match": report_match,
    "cover": report_cover,
    "konig": report_konig,
    "bound": report_bound,
    "color": report_color,
    "decompose": report_decompose,
    "verify": report_verify,
    "charac": report_charac,
}


def envelope(command: str, inst: Instance, payload: dict) -> dict:
    return {"command": command, "digest": inst.digest, "version": __version__, **payload}


def augment_lines(inst: Instance, args: argparse.Namespace) -> tuple[list[str], int]:
    start = None
    if args.start is not None:
        try:
            start = [int(t) for t in args.start.split(",") if t.strip()]
        except ValueError:
            raise UsageError(f"bad --start {args.start!r}") from None
        if not is_matching(inst.h, start):
            raise UsageError(f"--start {start} is not a matching")
    run = matching_via_augmentation(inst.h, inst.weights(args.weights), start)
    lines = []
    for i, step in enumerate(run.steps, 1):
        lines.append(canonical(envelope("augment", inst, {"step": i, **step})))
    final = {"final": True, "matching": list(run.matching.edges), "weight": run.matching.weight,
             "gamma": run.gamma, "status": "optimal" if run.verified else "stalled",
             "verified_by_solver": "yes" if run.verified else "no"}
    lines.append(canonical(envelope("augment", inst, final)))
    return lines, EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="balhyp", description="Matching tools for balanced hypergraphs.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def instance_cmd(name: str, help_: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("instance", help="instance file in text format, or - for stdin")
        sp.add_argument("--weights", choices=("E", "V", "custom"), default="V")
        sp.add_argument("--max-states", type=int, default=None)
        return sp

    instance_cmd("check-balance", "search for a strong odd cycle")
    instance_cmd("match", "maximum weight matching")
    instance_cmd("cover", "minimum weight vertex cover")
    instance_cmd("konig", "matching number against cover number")
    instance_cmd("bound", "degree bound on the V-matching number").add_argument(
        "--q", type=int, required=True)
    instance_cmd("color", "edge coloring with max-degree colors")
    instance_cmd("augment", "coloring-based augmentation loop (JSON lines)").add_argument(
        "--start", default=None, help="comma-separated edge indices of a starting matching")
    instance_cmd("decompose", "vertex decomposition").add_argument(
        "--mode", choices=("dpm", "fqn", "classic"), required=True)
    instance_cmd("verify", "check a decomposition theorem").add_argument(
        "--theorem", choices=("galed2", "galed1", "equalities"), required=True)
    ch = instance_cmd("charac", "characterization checks")
    ch.add_argument("--which", choices=("D", "weighted", "stable"), required=True)
    ch.add_argument("--vertex-weights", default=None, help="comma-separated, one per vertex")
    ch.add_argument("--sample", type=int, default=None,
                    help="sample this many partial subhypergraphs instead of enumerating")
    ch.add_argument("--seed", type=int, default=0)

    g = sub.add_parser("gen", help="generate an instance in text format")
    g.add_argument("--family", choices=("interval", "bipartite", "closure", "planted"),
                   required=True)
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--n", type=int, default=6)
    g.add_argument("--m", type=int, default=5)
    g.add_argument("--max-len", type=int, default=3)
    g.add_argument("--n2", type=int, default=3)
    g.add_argument("--p", type=float, default=0.5)
    g.add_argument("--ops", type=int, default=3)
    g.add_argument("--max-states", type=int, default=None)
    return p


def _read_instance(path: str) -> Instance:
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return Instance(*parse_text(text))


def _execute(args: argparse.Namespace) -> tuple[str, int]:
    if args.command == "gen":
        spec = GenSpec(args.family, n=args.n, m=args.m, max_len=args.max_len, n2=args.n2,
                       p=args.p, ops=args.ops, seed=args.seed)
        return format_text(spec.generate()), EXIT_OK
    inst = _read_instance(args.instance)
    if args.command == "augment":
        lines, code = augment_lines(inst, args)
        return "\n".join(lines) + "\n", code
    payload, code = COMMANDS[args.command](inst, args)
    return canonical(envelope(args.command, inst, payload)) + "\n", code


def _error(kind: str, exc: BaseException, err: TextIO) -> None:
    err.write(canonical({"error": kind, "message": str(exc)}) + "\n")


def run(argv: Sequence[str] | None = None, out: TextIO | None = None,
        err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        limit = args.max_states
        if limit is not None and limit < 1:
            raise UsageError("--max-states must be positive")
        if limit is None:
            text, code = _execute(args)
        else:
            with state_budget(limit):
                text, code = _execute(args)
    except InstanceTooLarge as exc:
        _error("InstanceTooLarge", exc, err)
        return EXIT_TOO_LARGE
    except TheoremViolation as exc:
        _error("TheoremViolation", exc, err)
        return EXIT_FINDING
    except (UsageError, ParseError, OSError, HypergraphError, ValueError) as exc:
        _error(type(exc).__name__, exc, err)
        return EXIT_USAGE
    # written once so a failed run never leaves partial output
    out.write(text)
    out.flush()
    return code


def main() -> int:
    return run()

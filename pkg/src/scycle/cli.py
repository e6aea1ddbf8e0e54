"""Command-line front end: solve, verify, gen, and oracle subcommands.

Instance files are line-oriented:

    c optional comment
    p scycle <n> <m> <k> <ell>
    e <u> <v>        (m edge lines, 0-based endpoints)
    t <v>            (terminal lines, any number)

Reports are JSON (machine-readable, consumed by `verify`); a one-line
human summary goes to stderr. Exit codes for `solve`: 0 when a packing
was found, 1 when a hitting set was returned, 2 on input errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
import time
from dataclasses import dataclass
from types import SimpleNamespace
from typing import Iterable, Sequence, TextIO

from .frame import hitting_bound, solve
from .graphs import Graph, GraphError
from .oracle import (DEFAULT_CAP, InstanceTooLarge, long_s_cycles,
                     max_packing_witness, min_hitting_set, verify_outcome)
from .cubic import s_threshold
from .rng import SplitMix64

REPORT_FORMAT = "scycle-report/1"


class InputFormatError(ValueError):
    """Malformed instance or report text; message names the line."""


@dataclass(frozen=True)
class Instance:
    n: int
    edges: tuple[tuple[int, int], ...]
    terminals: tuple[int, ...]
    k: int
    ell: int

    def graph(self) -> Graph:
        return Graph(self.n, self.edges)


def parse_instance(text: str) -> Instance:
    """Parse the line format above; any defect raises InputFormatError
    with the offending line number."""
    header: tuple[int, int, int, int] | None = None
    edges: list[tuple[int, int]] = []
    seen_edges: set[tuple[int, int]] = set()
    terminals: set[int] = set()

    def fail(line_no: int, why: str) -> None:
        raise InputFormatError(f"line {line_no}: {why}")

    def want_int(line_no: int, token: str, what: str) -> int:
        try:
            return int(token)
        except ValueError:
            fail(line_no, f"{what} must be an integer, got {token!r}")
        raise AssertionError  # unreachable; fail() always raises

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        tag = fields[0]
        if tag == "p":
            if header is not None:
                fail(line_no, "duplicate problem line")
            if len(fields) != 6 or fields[1] != "scycle":
                fail(line_no, "problem line must be 'p scycle n m k ell'")
            n, m, k, ell = (want_int(line_no, f, w) for f, w in
                            zip(fields[2:], ("n", "m", "k", "ell")))
            if n < 1:
                fail(line_no, f"need at least one vertex, got n={n}")
            if m < 0 or k < 1 or ell < 1:
                fail(line_no, f"bad parameters m={m} k={k} ell={ell}")
            header = (n, m, k, ell)
        elif tag == "e":
            if header is None:
                fail(line_no, "edge before problem line")
            if len(fields) != 3:
                fail(line_no, "edge line must be 'e u v'")
            u = want_int(line_no, fields[1], "endpoint")
            v = want_int(line_no, fields[2], "endpoint")
            if not (0 <= u < header[0]) or not (0 <= v < header[0]):
                fail(line_no, f"endpoint out of range 0..{header[0] - 1}")
            if u == v:
                fail(line_no, f"self-loop at {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen_edges:
                fail(line_no, f"duplicate edge ({u}, {v})")
            seen_edges.add(key)
            edges.append(key)
        elif tag == "t":
            if header is None:
                fail(line_no, "terminal before problem line")
            if len(fields) != 2:
                fail(line_no, "terminal line must be 't v'")
            v = want_int(line_no, fields[1], "terminal")
            if not 0 <= v < header[0]:
                fail(line_no, f"terminal out of range 0..{header[0] - 1}")
            terminals.add(v)
        else:
            fail(line_no, f"unknown line tag {tag!r}")
    if header is None:
        raise InputFormatError("line 1: missing problem line")
    n, m, k, ell = header
    if len(edges) != m:
        raise InputFormatError(
            f"line 1: problem line promises {m} edges, file has {len(edges)}")
    return Instance(n, tuple(sorted(edges)), tuple(sorted(terminals)), k, ell)


def serialize_instance(inst: Instance) -> str:
    lines = [f"p scycle {inst.n} {len(inst.edges)} {inst.k} {inst.ell}"]
    lines += [f"e {u} {v}" for u, v in sorted(inst.edges)]
    lines += [f"t {v}" for v in sorted(inst.terminals)]
    return "\n".join(lines) + "\n"


def _edges_digest(edges: Iterable[tuple[int, int]]) -> str:
    blob = "".join(f"{u},{v};" for u, v in sorted(edges))
    return hashlib.sha256(blob.encode()).hexdigest()


def _instance_echo(inst: Instance) -> dict:
    return {
        "n": inst.n,
        "m": len(inst.edges),
        "k": inst.k,
        "ell": inst.ell,
        "terminals": list(inst.terminals),
        "edges_sha256": _edges_digest(inst.edges),
    }


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


# -- solve ------------------------------------------------------------------


def cmd_solve(args: argparse.Namespace) -> int:
    inst = parse_instance(_read_text(args.instance))
    g = inst.graph()
    started = time.perf_counter()
    outcome = solve(g, inst.terminals, inst.k, inst.ell)
    wall_ms = (time.perf_counter() - started) * 1000.0
    report = {
        "format": REPORT_FORMAT,
        "instance": _instance_echo(inst),
        "outcome": outcome.kind,
        "shortcut": len(inst.terminals) <= inst.k,
        "iterations": outcome.iterations,
        "bounds": {
            "s_k": s_threshold(inst.k),
            "hitting_bound": hitting_bound(inst.k, inst.ell),
            "iteration_cap": s_threshold(inst.k)
            * (inst.k + len(inst.terminals)),
        },
        "wall_ms": round(wall_ms, 3),
    }
    if outcome.packing is not None:
        report["packing"] = [list(c.vertices) for c in outcome.packing]
        report["size"] = len(outcome.packing)
        summary = (f"packing: {len(outcome.packing)} disjoint cycles"
                   f" in {outcome.iterations} iterations")
    else:
        assert outcome.hitting_set is not None
        report["hitting_set"] = sorted(outcome.hitting_set)
        report["size"] = len(outcome.hitting_set)
        summary = (f"hitting set: {len(outcome.hitting_set)} vertices"
                   f" (bound {report['bounds']['hitting_bound']:.1f})"
                   f" in {outcome.iterations} iterations")
    if args.trace:
        report["trace"] = [
            {"iteration": r.iteration, "case": r.case,
             "score": [r.score.branch, r.score.contact], "branch": r.branch,
             "loops": r.loops, "pendants": r.pendants, "blocked": r.blocked}
            for r in outcome.trace
        ]
    _write_text(args.out, json.dumps(report, indent=2, sort_keys=True) + "\n")
    print(summary, file=sys.stderr)
    return 0 if outcome.packing is not None else 1


# -- verify -----------------------------------------------------------------


def _fail_verify(reason: str) -> int:
    print(f"fail: {reason}")
    return 1


def cmd_verify(args: argparse.Namespace) -> int:
    inst = parse_instance(_read_text(args.instance))
    try:
        report = json.loads(_read_text(args.report))
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"line {exc.lineno}: report is not valid JSON"
                               f" ({exc.msg})") from exc
    if not isinstance(report, dict):
        raise InputFormatError("line 1: report must be a JSON object")
    if report.get("format") != REPORT_FORMAT:
        return _fail_verify(f"unknown report format {report.get('format')!r}")
    if report.get("instance") != _instance_echo(inst):
        return _fail_verify("report was produced for a different instance")
    kind = report.get("outcome")
    if kind == "packing":
        cycles = report.get("packing")
        if not isinstance(cycles, list):
            return _fail_verify("packing outcome carries no cycle list")
        shim = SimpleNamespace(
            packing=[tuple(c) for c in cycles], hitting_set=None)
    elif kind == "hitting":
        hs = report.get("hitting_set")
        if not isinstance(hs, list):
            return _fail_verify("hitting outcome carries no vertex list")
        shim = SimpleNamespace(packing=None, hitting_set=frozenset(hs))
    else:
        return _fail_verify(f"unknown outcome kind {kind!r}")
    verdict = verify_outcome(inst.graph(), inst.terminals, inst.k, inst.ell,
                             shim, cap=args.cap)
    if not verdict.ok:
        return _fail_verify(verdict.reason)
    print(f"pass: {verdict.reason}")
    return 0


# -- gen --------------------------------------------------------------------


def _gnp_edges(n: int, p: float, rng: SplitMix64) -> list[tuple[int, int]]:
    """G(n, p) edge list by geometric skipping, O(n + m) draws."""
    if not 0.0 <= p <= 1.0:
        raise InputFormatError(f"edge probability {p} outside [0, 1]")
    if p == 0.0:
        return []
    if p == 1.0:
        return [(u, v) for v in range(n) for u in range(v)]
    edges: list[tuple[int, int]] = []
    log_q = math.log1p(-p)
    v, w = 1, -1
    while v < n:
        w += 1 + int(math.log1p(-rng.random()) / log_q)
        while w >= v and v < n:
            w -= v
            v += 1
        if v < n:
            edges.append((w, v))
    return edges


def _grid_edges(rows: int, cols: int) -> list[tuple[int, int]]:
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return edges


def _simple_cubic_edges(n: int, rng: SplitMix64) -> list[tuple[int, int]]:
    """3-regular simple graph by the pairing model with rejection."""
    if n < 4 or n % 2:
        raise InputFormatError(
            f"a simple cubic graph needs even n >= 4, got {n}")
    while True:
        stubs = [v for v in range(n) for _ in range(3)]
        rng.shuffle(stubs)
        seen: set[tuple[int, int]] = set()
        for i in range(0, len(stubs), 2):
            u, v = stubs[i], stubs[i + 1]
            if u == v:
                break
            key = (u, v) if u < v else (v, u)
            if key in seen:
                break
            seen.add(key)
        else:
            return sorted(seen)


def _clique_union_edges(k: int, ell: int) -> tuple[int, list[tuple[int, int]]]:
    """k-1 disjoint cliques on 2*ell-1 vertices each: the family showing
    the hitting bound must grow like k*ell."""
    if k < 2:
        raise InputFormatError("union-of-cliques needs k >= 2")
    size = 2 * ell - 1
    n = (k - 1) * size
    edges = []
    for block in range(k - 1):
        base = block * size
        for i in range(size):
            for j in range(i + 1, size):
                edges.append((base + i, base + j))
    return n, edges


def cmd_gen(args: argparse.Namespace) -> int:
    rng = SplitMix64(args.seed)
    k, ell = args.k, args.ell
    if args.family == "gnp":
        n = args.n
        edges = _gnp_edges(n, args.p, rng)
    elif args.family == "cubic":
        n = args.n
        edges = _simple_cubic_edges(n, rng)
    elif args.family == "grid":
        n = args.rows * args.cols
        edges = _grid_edges(args.rows, args.cols)
    else:  # union-of-cliques
        n, edges = _clique_union_edges(k, ell)
    if n < 1:
        raise InputFormatError(f"family parameters produce n={n}")
    if args.terminals is None:
        terminals = list(range(n))
    else:
        if not 0 <= args.terminals <= n:
            raise InputFormatError(
                f"cannot pick {args.terminals} terminals from {n} vertices")
        terminals = sorted(rng.sample(range(n), args.terminals))
    inst = Instance(n, tuple(sorted(edges)), tuple(terminals), k, ell)
    _write_text(args.out, serialize_instance(inst))
    return 0


# -- oracle -----------------------------------------------------------------


def cmd_oracle(args: argparse.Namespace) -> int:
    inst = parse_instance(_read_text(args.instance))
    g = inst.graph()
    s = set(inst.terminals)
    cycles = long_s_cycles(g, s, inst.ell, cap=args.cap)
    witness = max_packing_witness(g, s, inst.ell, cap=args.cap)
    hitting = min_hitting_set(g, s, inst.ell, cap=args.cap)
    report = {
        "format": "scycle-oracle/1",
        "instance": _instance_echo(inst),
        "long_s_cycles": len(cycles),
        "max_packing": len(witness),
        "max_packing_witness": [list(c.vertices) for c in witness],
        "min_hitting_size": len(hitting),
        "min_hitting_set": sorted(hitting),
    }
    _write_text(args.out, json.dumps(report, indent=2, sort_keys=True) + "\n")
    print(f"max packing {len(witness)}, min hitting set {len(hitting)}",
          file=sys.stderr)
    return 0


# -- entry point -------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scycle",
        description="Pack or hit all long cycles through terminal vertices.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve an instance file")
    p_solve.add_argument("instance", help="instance path, or - for stdin")
    p_solve.add_argument("--out", default=None, help="report path (stdout)")
    p_solve.add_argument("--trace", action="store_true",
                         help="include the per-iteration trace in the report")
    p_solve.set_defaults(func=cmd_solve)

    p_verify = sub.add_parser("verify", help="check a report against its instance")
    p_verify.add_argument("instance")
    p_verify.add_argument("report")
    p_verify.add_argument("--cap", type=int, default=DEFAULT_CAP,
                          help="vertex cap for exhaustive residual checks")
    p_verify.set_defaults(func=cmd_verify)

    p_gen = sub.add_parser("gen", help="generate a deterministic instance")
    p_gen.add_argument("family",
                       choices=("gnp", "cubic", "grid", "union-of-cliques"))
    p_gen.add_argument("--n", type=int, default=12, help="vertex count")
    p_gen.add_argument("--p", type=float, default=0.3,
                       help="edge probability (gnp)")
    p_gen.add_argument("--rows", type=int, default=4, help="grid rows")
    p_gen.add_argument("--cols", type=int, default=4, help="grid columns")
    p_gen.add_argument("--k", type=int, default=2, help="requested cycles")
    p_gen.add_argument("--ell", type=int, default=3, help="length bound")
    p_gen.add_argument("--terminals", type=int, default=None,
                       help="terminal count (default: every vertex)")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out", default=None)
    p_gen.set_defaults(func=cmd_gen)

    p_oracle = sub.add_parser("oracle",
                              help="brute-force ground truth (small n)")
    p_oracle.add_argument("instance")
    p_oracle.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p_oracle.add_argument("--out", default=None)
    p_oracle.set_defaults(func=cmd_oracle)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputFormatError, InstanceTooLarge, GraphError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

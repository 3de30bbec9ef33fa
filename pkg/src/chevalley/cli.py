"""Command-line front end.

Exit codes: 0 success, 1 bad command line or type name or malformed file,
2 invalid or infinite-type Cartan matrix (or an oracle request for an
unsupported type), 3 verification failure, 4 unreadable file.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .constants import full_table
from .kottwitz import gamma_factor
from .rootsys import (
    CartanError,
    CartanMatrix,
    CartanSyntaxError,
    RootSystem,
    parse_type,
    read_cartan_file,
)

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_INVALID = 2
EXIT_VERIFY = 3
EXIT_IO = 4

VERBS = ("roots", "basis", "table", "verify")
SUITES = ("jacobi", "oracle", "splitting", "strings")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class Command:
    verb: str
    type_name: Optional[str] = None
    cartan_file: Optional[str] = None
    format: str = "text"
    out: Optional[str] = None
    threads: int = 0
    suites: list = field(default_factory=list)
    jacobi_samples: int = 1_000_000
    seed: int = 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="chevalley", description="Root systems, Kottwitz bases and structure constants.")
    p.add_argument("verb", choices=VERBS)
    p.add_argument("type", nargs="?", help="type name such as A2, E8 or A1xB2")
    p.add_argument("--cartan", metavar="FILE", help="read the Cartan matrix from FILE")
    p.add_argument("--format", choices=("json", "csv", "text"), default="text")
    p.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")
    p.add_argument("--threads", type=int, default=0, help="worker threads (default: all cores)")
    for s in SUITES:
        p.add_argument(f"--{s}", action="store_true", help=f"run the {s} suite (verify)")
    p.add_argument("--samples", type=int, default=1_000_000, help="random Jacobi triples for large types")
    p.add_argument("--seed", type=int, default=0)
    return p


def parse_command(argv: Sequence[str]) -> Command:
    a = build_parser().parse_args(argv)
    if (a.type is None) == (a.cartan is None):
        raise UsageError("give exactly one of a type name or --cartan FILE")
    if a.threads < 0:
        raise UsageError("--threads must be non-negative")
    suites = [s for s in SUITES if getattr(a, s)]
    if suites and a.verb != "verify":
        raise UsageError("suite flags only apply to verify")
    return Command(a.verb, a.type, a.cartan, a.format, a.out, a.threads, suites, a.samples, a.seed)


def load_cartan(cmd: Command) -> CartanMatrix:
    if cmd.type_name is not None:
        return parse_type(cmd.type_name)
    return read_cartan_file(cmd.cartan_file)


# -- renderers -------------------------------------------------------------------


def _csv(rows: list[list]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _tuple(xs) -> str:
    return "(" + ",".join(str(int(x)) for x in xs) + ")"


def render_roots(sys: RootSystem, fmt: str) -> str:
    recs = [{"index": r.index, "coords": list(r.coords), "coroot": list(r.coroot_coords),
             "sq_length": r.sq_length, "height": r.height} for r in sys.roots]
    if fmt == "json":
        return json.dumps(recs, indent=1) + "\n"
    if fmt == "csv":
        r = sys.rank
        head = ["index"] + [f"coord_{i}" for i in range(r)] + [f"coroot_{i}" for i in range(r)]
        rows = [head + ["sq_length", "height"]]
        rows += [[x["index"], *x["coords"], *x["coroot"], x["sq_length"], x["height"]] for x in recs]
        return _csv(rows)
    lines = [f"{'index':>5}  {'coords':<20} {'coroot':<20} {'|.|^2':>5} {'height':>6}"]
    for x in recs:
        lines.append(f"{x['index']:>5}  {_tuple(x['coords']):<20} {_tuple(x['coroot']):<20} "
                     f"{x['sq_length']:>5} {x['height']:>6}")
    return "\n".join(lines) + "\n"


def render_basis(sys: RootSystem, fmt: str) -> str:
    from .oracle import frame_for, k_rel_frame

    fr = frame_for(sys)
    rel = k_rel_frame(fr, sys) if fr is not None else None
    recs = []
    for r in sys.roots:
        simple = sys.is_simple(r.index)
        recs.append({
            "index": r.index,
            "coords": list(r.coords),
            "gamma": gamma_factor(sys, r.index),
            "d": int(sys.d[r.index]) if simple else None,
            "c": int(sys.c[r.index]) if simple else None,
            "k_rel_frame": rel[r.index] if rel is not None else None,
        })
    if fmt == "json":
        return json.dumps(recs, indent=1) + "\n"
    blank = lambda v: "" if v is None else v
    if fmt == "csv":
        head = ["index"] + [f"coord_{i}" for i in range(sys.rank)] + ["gamma", "d", "c", "k_rel_frame"]
        rows = [head] + [[x["index"], *x["coords"], x["gamma"], blank(x["d"]), blank(x["c"]),
                          blank(x["k_rel_frame"])] for x in recs]
        return _csv(rows)
    dash = lambda v: "-" if v is None else str(v)
    lines = [f"{'index':>5}  {'coords':<20} {'gamma':>5} {'d':>3} {'c':>3} {'k_rel':>5}"]
    for x in recs:
        lines.append(f"{x['index']:>5}  {_tuple(x['coords']):<20} {x['gamma']:>5} {dash(x['d']):>3} "
                     f"{dash(x['c']):>3} {dash(x['k_rel_frame']):>5}")
    return "\n".join(lines) + "\n"


def render_table(sys: RootSystem, table, fmt: str) -> str:
    if fmt == "json":
        return table.to_json(sys) + "\n"
    if fmt == "csv":
        return table.to_csv(sys)
    lines = [f"{len(table)} ordered-triple classes"]
    for rec in table.to_records(sys):
        lines.append(f"N[{_tuple(rec['lambda'])}, {_tuple(rec['mu'])}] = {rec['N']}")
    return "\n".join(lines) + "\n"


def render_results(results, fmt: str) -> str:
    if fmt == "json":
        recs = [{"suite": r.name, "cases": r.cases, "ok": r.ok, "failures": [repr(f) for f in r.failures],
                 "details": r.details} for r in results]
        return json.dumps(recs, indent=1) + "\n"
    if fmt == "csv":
        return _csv([["suite", "cases", "ok", "failed"]] +
                    [[r.name, r.cases, int(r.ok), r.details.get("failed", 0)] for r in results])
    lines = []
    for r in results:
        lines.append(r.summary())
        for f in r.failures:
            lines.append(f"  {f!r}")
    lines.append("all suites passed" if all(r.ok for r in results) else "verification FAILED")
    return "\n".join(lines) + "\n"


# -- driver -----------------------------------------------------------------------


def run(cmd: Command, stdout=None, stderr=None) -> int:
    from .oracle import frame_for
    from .verify import VerifyConfig, run_suites

    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        cartan = load_cartan(cmd)
    except CartanSyntaxError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_PARSE
    except CartanError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: cannot read {cmd.cartan_file}: {exc.strerror or exc}", file=stderr)
        return EXIT_IO
    try:
        rs = RootSystem(cartan)
    except CartanError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INVALID

    status = EXIT_OK
    if cmd.verb == "roots":
        text = render_roots(rs, cmd.format)
    elif cmd.verb == "basis":
        text = render_basis(rs, cmd.format)
    elif cmd.verb == "table":
        text = render_table(rs, full_table(rs), cmd.format)
    else:
        suites = cmd.suites or [s for s in SUITES if s != "oracle" or frame_for(rs) is not None]
        if "oracle" in suites and frame_for(rs) is None:
            print("error: the matrix oracle supports A1-A7 and C2-C4 only", file=stderr)
            return EXIT_INVALID
        cfg = VerifyConfig(jacobi_samples=cmd.jacobi_samples, seed=cmd.seed,
                           threads=cmd.threads or os.cpu_count() or 1)
        results = run_suites(rs, full_table(rs), cfg=cfg, **{s: True for s in suites})
        text = render_results(results, cmd.format)
        status = EXIT_OK if all(r.ok for r in results) else EXIT_VERIFY

    if cmd.out:
        try:
            with open(cmd.out, "w") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write {cmd.out}: {exc.strerror or exc}", file=stderr)
            return EXIT_IO
    else:
        stdout.write(text)
    return status


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        cmd = parse_command(sys.argv[1:] if argv is None else argv)
    except UsageError as exc:
        print(f"chevalley: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    return run(cmd)


if __name__ == "__main__":
    sys.exit(main())

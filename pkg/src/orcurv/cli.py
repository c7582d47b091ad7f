"""Command-line front end: ``orcurv {curvature,bounds,cd,scalar,verify}``.

Exit status is 0 on success, 1 on an analysis error (unparseable graph,
failed self-check) and 2 on a usage error.  Per-row analysis errors are
written into the report's ``error`` column and do not change the status.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import _pool
from .bakry_emery import cd_optimal_K, cd_verify, parse_dimension
from .curvature import PairFailure, all_pairs, graph_report, scalar_report
from .errors import CurvatureError
from .families import generate_family
from .graph import Graph, label_key, load_edge_list
from .verification import run_property_suite

COMMANDS = ("curvature", "bounds", "cd", "scalar", "verify")

CURVATURE_COLUMNS = ["x", "y", "distance", "w1", "kappa", "kappa_decimal", "error"]
BOUNDS_COLUMNS = ["x", "y", "d_x", "d_y", "sharp", "w1", "kappa", "kappa_decimal", "lower_linyau",
                  "lower_triangle", "upper_triangle", "case", "lower_tight", "upper_tight", "error"]
CD_COLUMNS = ["x", "d_x", "m", "mode", "K", "verdict", "k_opt", "k_opt_error", "error"]
SCALAR_COLUMNS = ["x", "d_x", "c", "mean_kappa", "mean_kappa_decimal", "upper", "lower",
                  "refined_lower", "case", "error"]
VERIFY_COLUMNS = ["property", "status", "detail"]


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    family: str | None = None
    weighted: bool = False
    pairs: str = "edges"
    pairs_file: str | None = None
    m: str = "2"
    K: str | None = None
    tolerance: float = 1e-9
    format: str = "csv"
    workers: int = 1

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if (self.input is None) == (self.family is None):
            raise UsageError("give exactly one of --input or --family")
        if self.pairs not in ("edges", "all-pairs", "file"):
            raise UsageError(f"unknown pair selector {self.pairs!r}")
        if self.pairs == "file" and (self.pairs_file is None or not Path(self.pairs_file).is_file()):
            raise UsageError("--pairs file needs an existing --pairs-file")
        if not self.tolerance > 0:
            raise UsageError("--tolerance must be positive")
        try:
            parse_dimension(self.m)
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad --m: {exc}") from None
        if self.K is not None:
            try:
                Fraction(self.K)
            except (ValueError, ZeroDivisionError):
                raise UsageError(f"bad --K value {self.K!r}") from None
        if self.format not in ("csv", "json"):
            raise UsageError(f"unknown format {self.format!r}")
        if self.workers < 1:
            raise UsageError("--workers must be at least 1")


def _cell_csv(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _cell_json(value):
    if isinstance(value, Fraction):
        return str(value)
    return value


def serialize_report(rows: Sequence[dict], fmt: str, columns: Sequence[str]) -> bytes:
    """CSV (with header) or JSON array; rationals as ``p/q`` strings, decimals as shortest floats."""
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell_csv(row.get(c)) for c in columns])
        return buf.getvalue().encode("utf-8")
    if fmt == "json":
        data = [{c: _cell_json(row.get(c)) for c in columns} for row in rows]
        return (json.dumps(data, indent=2, ensure_ascii=False) + "\n").encode("utf-8")
    raise ValueError(f"unknown format {fmt!r}")


def _decimal(q: Fraction | None) -> float | None:
    return None if q is None else float(q)


def _pair_rows(g: Graph, reports, bounds: bool) -> list[dict]:
    rows = []
    for r in reports:
        row = {"x": g.labels[r.x], "y": g.labels[r.y]}
        if isinstance(r, PairFailure):
            row["error"] = r.error
        elif bounds:
            row.update(d_x=r.d_x, d_y=r.d_y, sharp=r.sharp, w1=r.w1, kappa=r.kappa,
                       kappa_decimal=_decimal(r.kappa), lower_linyau=r.lower_linyau,
                       lower_triangle=r.lower_triangle, upper_triangle=r.upper_triangle,
                       case=r.case_tag.value if r.case_tag else None,
                       lower_tight=r.lower_tight, upper_tight=r.upper_tight)
        else:
            row.update(distance=r.distance, w1=r.w1, kappa=r.kappa, kappa_decimal=_decimal(r.kappa))
        rows.append(row)
    return rows


def _cd_row(g: Graph, task) -> dict:
    x, m, K, tol = task
    row = {"x": g.labels[x], "d_x": g.degree(x), "m": str(m)}
    try:
        if K is None:
            res = cd_optimal_K(g, x, m, tol)
            row.update(mode="optimize", k_opt=res.k_opt, k_opt_error=res.k_error)
        else:
            res = cd_verify(g, x, m, K)
            row.update(mode="verify", K=res.K, verdict=res.verdict)
    except CurvatureError as exc:
        row["error"] = str(exc)
    return row


def _scalar_row(g: Graph, x: int) -> dict:
    row = {"x": g.labels[x], "d_x": g.degree(x)}
    try:
        s = scalar_report(g, x)
    except CurvatureError as exc:
        row["error"] = str(exc)
        return row
    row.update(c=s.c, mean_kappa=s.mean_kappa, mean_kappa_decimal=_decimal(s.mean_kappa), upper=s.upper,
               lower=s.lower, refined_lower=s.refined_lower, case=s.case_tag.value if s.case_tag else None)
    return row


def _read_pairs(g: Graph, path: str) -> list[tuple[int, int]]:
    pairs = []
    for line_no, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        if len(tokens) != 2:
            raise UsageError(f"{path}:{line_no}: expected two vertex labels")
        try:
            pairs.append((g.index(tokens[0]), g.index(tokens[1])))
        except CurvatureError as exc:
            raise UsageError(f"{path}:{line_no}: {exc}") from None
    return pairs


def load_graph(config: RunConfig) -> Graph:
    if config.family is not None:
        return generate_family(config.family)
    try:
        data = Path(config.input).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {config.input}: {exc.strerror}") from None
    return load_edge_list(data, weighted=config.weighted)


def build_report(config: RunConfig) -> tuple[list[dict], list[str], bool]:
    """Rows, columns and an all-ok flag for a validated config."""
    g = load_graph(config)
    vertices = sorted(range(g.vertex_count), key=lambda v: label_key(g.labels[v]))
    if config.command in ("curvature", "bounds"):
        if config.pairs == "edges":
            pairs = None
        elif config.pairs == "all-pairs":
            pairs = all_pairs(g)
        else:
            pairs = _read_pairs(g, config.pairs_file)
        reports = graph_report(g, pairs, workers=config.workers)
        bounds = config.command == "bounds"
        return _pair_rows(g, reports, bounds), BOUNDS_COLUMNS if bounds else CURVATURE_COLUMNS, True
    if config.command == "cd":
        m = parse_dimension(config.m)
        K = None if config.K is None else Fraction(config.K)
        tasks = [(x, m, K, config.tolerance) for x in vertices]
        return _pool.map_over(g, _cd_row, tasks, config.workers), CD_COLUMNS, True
    if config.command == "scalar":
        return _pool.map_over(g, _scalar_row, vertices, config.workers), SCALAR_COLUMNS, True
    outcomes = run_property_suite(g)
    rows = [{"property": o.name, "status": o.status, "detail": o.detail} for o in outcomes]
    return rows, VERIFY_COLUMNS, all(o.status != "fail" for o in outcomes)


def run(config: RunConfig, out=None) -> int:
    out = out if out is not None else sys.stdout.buffer
    try:
        config.validate()
        rows, columns, ok = build_report(config)
    except UsageError as exc:
        print(f"orcurv: usage error: {exc}", file=sys.stderr)
        return 2
    except CurvatureError as exc:
        print(f"orcurv: {exc}", file=sys.stderr)
        return 1
    out.write(serialize_report(rows, config.format, columns))
    out.flush()
    return 0 if ok else 1


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="orcurv", description="Exact Ollivier-Ricci curvature and CD inequality reports.")
    p.add_argument("command", choices=COMMANDS)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="edge-list file")
    src.add_argument("--family", help="generated graph, e.g. complete:5 or gnp:20:0.3:7")
    p.add_argument("--weighted", action="store_true", help="read a third weight column")
    p.add_argument("--pairs", default="edges", choices=("edges", "all-pairs", "file"))
    p.add_argument("--pairs-file", help="file of 'u v' label pairs for --pairs file")
    p.add_argument("--m", default="2", help="dimension parameter (rational literal or 'inf')")
    p.add_argument("--K", default=None, help="curvature to verify; omit to compute the optimal K")
    p.add_argument("--tolerance", type=float, default=1e-9)
    p.add_argument("--format", default="csv", choices=("csv", "json"))
    p.add_argument("--workers", type=int, default=1)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    config = RunConfig(command=args.command, input=args.input, family=args.family, weighted=args.weighted,
                       pairs=args.pairs, pairs_file=args.pairs_file, m=args.m, K=args.K,
                       tolerance=args.tolerance, format=args.format, workers=args.workers)
    return run(config)


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface.

Exit codes: 0 success, 1 bad parameters or strategy failure, 2 input not in
general position, 3 oracle guard violation, 4 bound certification failure.
The default seed comes from ``$YAO_SEED`` (else 0).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass, fields
from typing import Sequence

from .acceptance import SUITES, run_suite
from .constructions import CONSTRUCTIONS, ConstructionSpec, generate
from .geometry import GeometryError, PointSet, is_general_position
from .io import dumps_pointset, loads_pointset, read_pointset, svg, write_text
from .oracle import EXHAUSTIVE_LIMIT, METRICS, OBJECTIVES, GuardError, SearchSpec, certify_bound, search
from .orderings import STRATEGIES, StrategyError, StrategyOutcome, orthogonal, radial, topmost
from .yao import GraphError, Ordering, PairTable, build_ordered, build_unordered, stats

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INVALID = 2
EXIT_GUARD = 3
EXIT_CERTIFY = 4


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_ERROR):
        super().__init__(message)
        self.code = code


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    output: str | None = None
    format: str | None = None
    k: int | None = None
    n: int | None = None
    m: int | None = None
    seed: int = 0
    phi: float | None = None
    construction: str | None = None
    strategy: str | None = None
    order: list[int] | None = None
    unordered: bool = False
    apex: int | None = None
    start: int = 0
    t: int | None = None
    metric: str | None = None
    objective: str | None = None
    sampled: int | None = None
    limit: int = EXHAUSTIVE_LIMIT
    workers: int = 1
    relation: str | None = None
    bound: int | None = None
    suite: str | None = None
    progress: bool = False

    @classmethod
    def from_namespace(cls, ns: argparse.Namespace) -> "RunConfig":
        names = {f.name for f in fields(cls)}
        return cls(**{key: v for key, v in vars(ns).items() if key in names})

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        return cls(**data)


def _default_seed() -> int:
    raw = os.environ.get("YAO_SEED")
    if raw is None or raw == "":
        return 0
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"YAO_SEED must be an integer, got {raw!r}")


def _order_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated indices, got {text!r}")


# -- argument parser -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    seed = _default_seed()
    parser = argparse.ArgumentParser(prog="ordered-yao",
                                     description="Ordered k-sector Yao graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(p):
        p.add_argument("input", help="point set (.json or .csv); '-' reads stdin")
        p.add_argument("--k", type=int, help="override the number of sectors")

    def add_output(p, formats, default):
        p.add_argument("-o", "--output", help="output path (default stdout)")
        p.add_argument("--format", choices=formats, default=default)

    def add_ordering(p):
        g = p.add_mutually_exclusive_group()
        g.add_argument("--strategy", choices=sorted(STRATEGIES))
        g.add_argument("--order", type=_order_list, help="explicit insertion order, e.g. 2,0,1")
        g.add_argument("--unordered", action="store_true", help="classic (unordered) Yao graph")
        p.add_argument("--apex", type=int, help="apex for orthogonal/radial (default topmost)")
        p.add_argument("--start", type=int, default=0, help="first dual sector for orthogonal")
        p.add_argument("--t", type=int, help="dual sectors used by orthogonal (default floor(k/2))")

    def add_seed(p):
        p.add_argument("--seed", type=int, default=seed)

    p = sub.add_parser("generate", help="write a construction or random point set")
    p.add_argument("--construction", required=True, choices=CONSTRUCTIONS)
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--phi", type=float)
    add_seed(p)
    add_output(p, ["json", "csv"], "json")

    p = sub.add_parser("order", help="run an ordering strategy and print its certificate")
    add_input(p)
    p.add_argument("--strategy", required=True, choices=sorted(STRATEGIES))
    p.add_argument("--apex", type=int)
    p.add_argument("--start", type=int, default=0)
    p.add_argument("--t", type=int)
    p.add_argument("-o", "--output")

    p = sub.add_parser("build", help="build a graph and write it")
    add_input(p)
    add_ordering(p)
    add_output(p, ["json", "dot", "svg"], "json")

    p = sub.add_parser("stats", help="ordering, edge list and statistics as JSON")
    add_input(p)
    add_ordering(p)
    p.add_argument("-o", "--output")

    def add_search(p):
        add_input(p)
        p.add_argument("--metric", required=True, choices=METRICS)
        p.add_argument("--objective", required=True, choices=OBJECTIVES)
        p.add_argument("--sampled", type=int, metavar="COUNT",
                       help="sample COUNT orderings instead of enumerating all")
        p.add_argument("--limit", type=int, default=EXHAUSTIVE_LIMIT)
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--progress", action="store_true")
        add_seed(p)
        p.add_argument("-o", "--output")

    add_search(sub.add_parser("search", help="extremal metric over orderings"))
    p = sub.add_parser("certify", help="check an extremal metric against a bound")
    add_search(p)
    p.add_argument("--relation", required=True, choices=["<=", ">=", "=="])
    p.add_argument("--bound", required=True, type=int)

    p = sub.add_parser("verify", help="run an acceptance suite")
    p.add_argument("suite", choices=list(SUITES))

    p = sub.add_parser("export", help="convert a point set, or a built graph, to another format")
    add_input(p)
    add_ordering(p)
    add_output(p, ["json", "csv", "dot", "svg"], "json")
    return parser


# -- commands ------------------------------------------------------------------

def _load(cfg: RunConfig) -> PointSet:
    try:
        if cfg.input == "-":
            ps = loads_pointset(sys.stdin.read(), k=cfg.k)
        else:
            ps = read_pointset(cfg.input, cfg.k)
    except GeometryError as exc:
        raise CliError(f"invalid point set {cfg.input}: {exc}", EXIT_INVALID)
    except (OSError, ValueError, KeyError) as exc:
        raise CliError(f"cannot read {cfg.input}: {exc}")
    report = is_general_position(ps)
    if not report.ok:
        raise CliError(report.summary(), EXIT_INVALID)
    return ps


def _strategy(cfg: RunConfig, ps: PointSet, table: PairTable) -> StrategyOutcome:
    name = cfg.strategy
    if name in ("orthogonal", "radial"):
        apex = topmost(ps) if cfg.apex is None else cfg.apex
        if name == "radial":
            return radial(ps, apex)
        t = cfg.t if cfg.t is not None else ps.k // 2
        return orthogonal(ps, apex, cfg.start, t)
    if name in ("clique-forcing", "edge-max"):
        return STRATEGIES[name](ps, table)
    return STRATEGIES[name](ps)


def _graph(cfg: RunConfig, ps: PointSet):
    table = PairTable(ps)
    if cfg.unordered:
        return build_unordered(ps, table), None
    if cfg.strategy:
        out = _strategy(cfg, ps, table)
        return out.build(ps, table), out
    order = Ordering(tuple(cfg.order)) if cfg.order is not None else Ordering.identity(len(ps))
    return build_ordered(ps, order, table), None


def _emit(cfg: RunConfig, data) -> None:
    text = data if isinstance(data, str) else json.dumps(data, indent=1)
    write_text(cfg.output, text)


def cmd_generate(cfg: RunConfig) -> int:
    spec = ConstructionSpec(cfg.construction, k=cfg.k, n=cfg.n, m=cfg.m,
                            seed=cfg.seed, phi=cfg.phi)
    ps = generate(spec)
    meta = {"construction": cfg.construction, "seed": cfg.seed, **ps.meta}
    ps = PointSet(ps.points, ps.params, meta)
    _emit(cfg, dumps_pointset(ps, cfg.format))
    return EXIT_OK


def cmd_order(cfg: RunConfig) -> int:
    ps = _load(cfg)
    table = PairTable(ps)
    out = _strategy(cfg, ps, table)
    g = out.build(ps, table)
    report = out.to_dict()
    report["checks"] = [{"bound": str(b), "measured": m, "ok": ok} for b, m, ok in out.check(g)]
    _emit(cfg, report)
    return EXIT_OK if all(c["ok"] for c in report["checks"]) else EXIT_CERTIFY


def cmd_build(cfg: RunConfig) -> int:
    ps = _load(cfg)
    g, _ = _graph(cfg, ps)
    if cfg.format == "dot":
        _emit(cfg, g.to_dot(ps))
    elif cfg.format == "svg":
        _emit(cfg, svg(ps, g))
    else:
        _emit(cfg, g.to_dict())
    return EXIT_OK


def cmd_stats(cfg: RunConfig) -> int:
    ps = _load(cfg)
    g, out = _graph(cfg, ps)
    report = {
        "n": g.n,
        "k": g.k,
        "ordering": list(g.ordering.perm) if g.ordered else None,
        "edges": [list(e) for e in g.edges()],
        "stats": stats(g).to_dict(),
    }
    code = EXIT_OK
    if out is not None:
        report["strategy"] = out.to_dict()
        report["checks"] = [{"bound": str(b), "measured": m, "ok": ok} for b, m, ok in out.check(g)]
        if not all(c["ok"] for c in report["checks"]):
            code = EXIT_CERTIFY
    _emit(cfg, report)
    return code


def _search_spec(cfg: RunConfig) -> SearchSpec:
    if cfg.sampled is not None:
        return SearchSpec(cfg.metric, cfg.objective, "sampled", cfg.sampled, cfg.seed, cfg.limit)
    return SearchSpec(cfg.metric, cfg.objective, limit=cfg.limit)


def _progress_hook(cfg: RunConfig):
    if not cfg.progress:
        return None

    def hook(done: int, total: int) -> None:
        print(f"\r{done}/{total}", end="", file=sys.stderr, flush=True)
        if done >= total:
            print(file=sys.stderr)
    return hook


def cmd_search(cfg: RunConfig) -> int:
    ps = _load(cfg)
    res = search(ps, _search_spec(cfg), workers=cfg.workers, progress=_progress_hook(cfg))
    _emit(cfg, {"metric": cfg.metric, "objective": cfg.objective, **res.to_dict()})
    return EXIT_OK


def cmd_certify(cfg: RunConfig) -> int:
    ps = _load(cfg)
    cert = certify_bound(ps, _search_spec(cfg), cfg.relation, cfg.bound,
                         workers=cfg.workers, progress=_progress_hook(cfg))
    _emit(cfg, {
        "ok": cert.ok,
        "claim": f"{cfg.objective} {cfg.metric} {cfg.relation} {cfg.bound}",
        "value": cert.value,
        "counterexample": list(cert.counterexample.perm) if cert.counterexample else None,
        **cert.result.to_dict(),
    })
    return EXIT_OK if cert.ok else EXIT_CERTIFY


def cmd_verify(cfg: RunConfig) -> int:
    results = run_suite(cfg.suite)
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    return EXIT_OK if not failed else EXIT_CERTIFY


def cmd_export(cfg: RunConfig) -> int:
    ps = _load(cfg)
    if cfg.format in ("json", "csv") and not (cfg.strategy or cfg.order or cfg.unordered):
        _emit(cfg, dumps_pointset(ps, cfg.format))
        return EXIT_OK
    if cfg.format == "csv":
        raise CliError("csv holds point sets only; use json, dot or svg for graphs")
    if cfg.format == "svg" and not (cfg.strategy or cfg.order or cfg.unordered):
        _emit(cfg, svg(ps))
        return EXIT_OK
    return cmd_build(cfg)


COMMANDS = {
    "generate": cmd_generate,
    "order": cmd_order,
    "build": cmd_build,
    "stats": cmd_stats,
    "search": cmd_search,
    "certify": cmd_certify,
    "verify": cmd_verify,
    "export": cmd_export,
}


def run(cfg: RunConfig) -> int:
    try:
        return COMMANDS[cfg.command](cfg)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except GuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (StrategyError, GraphError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return run(RunConfig.from_namespace(args))


if __name__ == "__main__":
    sys.exit(main())

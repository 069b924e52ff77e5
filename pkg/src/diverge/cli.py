"""Command-line front end.

Exit codes: 0 ok, 1 a property check failed, 2 usage or parse error,
3 timeout or resource refusal.
"""
from __future__ import annotations

import argparse
import contextlib
import re
import sys
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import __version__
from .capacity import CapacityLimitError, CliqueTimeout, DEFAULT_LIMIT, one_line, omega_table
from .graphs import Distance, GraphSpec, parse_graph
from .reports import dump_json, write_csv
from .streams import (
    BlockSwap,
    Colliding,
    Construction,
    Divergent,
    HorizonError,
    Identity,
    ResidueBlockSwap,
    values_range,
)
from .suite import run_suite
from .verify import collision_scan, divergence_certificate, iter_differences

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class ConstructionSyntaxError(ValueError):
    def __init__(self, text: str, position: int, reason: str):
        self.text = text
        self.position = position
        super().__init__(f"{reason} at position {position} in {text!r}")


# name -> (arity, multi-valued last field)
_GRAMMAR = {
    "identity": (0, False),
    "divergent": (1, False),
    "colliding": (1, True),
    "blockswap": (1, False),
    "residueswap": (2, False),
}
_INT = re.compile(r"\d+")


def parse_construction(text: str) -> Construction:
    """Parse ``identity | divergent:<i> | colliding:<j1,j2,...> |
    blockswap:<i> | residueswap:<q>:<i>``.

    Syntax errors raise ``ConstructionSyntaxError`` (with a character
    position); well-formed specs with bad parameters raise ``ValueError``.
    """
    s = text.strip()
    name, sep, rest = s.partition(":")
    if name not in _GRAMMAR:
        raise ConstructionSyntaxError(s, 0, f"unknown construction {name!r}")
    arity, multi = _GRAMMAR[name]
    fields: list[list[int]] = []
    pos = len(name)
    if arity == 0:
        if sep:
            raise ConstructionSyntaxError(s, pos, "identity takes no parameters")
        return Identity()
    if not sep:
        raise ConstructionSyntaxError(s, pos, f"{name} needs {arity} parameter(s)")
    pos += 1
    parts = rest.split(":")
    if len(parts) != arity:
        raise ConstructionSyntaxError(s, pos, f"{name} takes {arity} parameter(s), got {len(parts)}")
    for part in parts:
        items = part.split(",") if multi else [part]
        vals = []
        for item in items:
            if not _INT.fullmatch(item):
                raise ConstructionSyntaxError(s, pos, f"expected an integer, got {item!r}")
            vals.append(int(item))
            pos += len(item) + 1
        fields.append(vals)
    if name == "divergent":
        return Divergent(fields[0][0])
    if name == "colliding":
        return Colliding(tuple(fields[0]))
    if name == "blockswap":
        return BlockSwap(fields[0][0])
    return ResidueBlockSwap(fields[0][0], fields[1][0])


@dataclass
class RunConfig:
    command: str
    constructions: list = field(default_factory=list)
    horizon: Optional[int] = None
    thresholds: list[int] = field(default_factory=list)
    graph: Optional[GraphSpec] = None
    nmax: int = 5
    limit: int = DEFAULT_LIMIT
    out: Optional[str] = None
    report: Optional[str] = None
    fmt: str = "csv"
    deterministic: bool = False
    seed: int = 0
    timeout_ms: Optional[float] = None
    quick: bool = False


def _int_list(text: str) -> list[int]:
    try:
        vals = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not vals:
        raise argparse.ArgumentTypeError("empty threshold list")
    return vals


def _positive(text: str) -> int:
    try:
        v = int(float(text)) if "e" in text.lower() else int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--deterministic", action="store_true",
                        help="byte-identical output across runs (timings zeroed)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--timeout-ms", type=float, default=None)

    horizon = argparse.ArgumentParser(add_help=False)
    horizon.add_argument("--n", "--horizon", dest="horizon", type=_positive, default=1000)

    p = argparse.ArgumentParser(prog="diverge", description="Infinite permutation constructions and checks.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common, horizon], help="emit a prefix as position,value rows")
    g.add_argument("construction")

    d = sub.add_parser("diff", parents=[common, horizon], help="positionwise |difference| and divergence certificate")
    d.add_argument("first")
    d.add_argument("second")
    d.add_argument("--thresholds", type=_int_list, default=[])
    d.add_argument("--report", help="certificate JSON path (default: <out>.cert.json, or stderr)")

    c = sub.add_parser("collide", parents=[common, horizon], help="positions whose values are adjacent in a graph")
    c.add_argument("first")
    c.add_argument("second")
    c.add_argument("--graph", default="distance:1")

    v = sub.add_parser("verify", parents=[common], help="run the invariant suite")
    v.add_argument("--quick", action="store_true", help="shrink horizons 100x")

    k = sub.add_parser("capacity", parents=[common], help="exact omega(G_n) table")
    k.add_argument("--graph", default="distance:1")
    k.add_argument("--nmax", type=_positive, default=5)
    k.add_argument("--limit", type=_positive, default=DEFAULT_LIMIT, help="largest n allowed")
    k.add_argument("--report", help="JSON report path with witnesses")
    return p


class UsageError(Exception):
    pass


def parse_args(argv: Optional[Sequence[str]] = None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    cfg = RunConfig(
        command=ns.command,
        fmt=ns.fmt,
        out=ns.out,
        deterministic=ns.deterministic,
        seed=ns.seed,
        timeout_ms=ns.timeout_ms,
        horizon=getattr(ns, "horizon", None),
        thresholds=getattr(ns, "thresholds", []),
        report=getattr(ns, "report", None),
        quick=getattr(ns, "quick", False),
        nmax=getattr(ns, "nmax", 5),
        limit=getattr(ns, "limit", DEFAULT_LIMIT),
    )
    try:
        if ns.command == "gen":
            cfg.constructions = [parse_construction(ns.construction)]
        elif ns.command in ("diff", "collide"):
            cfg.constructions = [parse_construction(ns.first), parse_construction(ns.second)]
        if ns.command in ("collide", "capacity"):
            cfg.graph = parse_graph(ns.graph)
    except (ValueError, OSError) as exc:
        raise UsageError(str(exc)) from None
    if cfg.thresholds and sorted(cfg.thresholds) != cfg.thresholds:
        raise UsageError("--thresholds must be ascending")
    if cfg.thresholds and max(cfg.thresholds) > cfg.horizon:
        raise UsageError("--n must be at least the largest threshold")
    return cfg


@contextlib.contextmanager
def _sink(path: Optional[str]):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _gen(cfg: RunConfig, fh) -> int:
    (c,) = cfg.constructions
    vals = values_range(c, 1, cfg.horizon + 1).tolist()
    if cfg.fmt == "json":
        dump_json({"construction": c.spec(), "n": cfg.horizon, "values": vals}, fh)
    else:
        write_csv(fh, "gen", ["position", "value"], enumerate(vals, start=1), notes=[c.spec()])
    return EXIT_OK


def _diff(cfg: RunConfig, fh) -> int:
    c1, c2 = cfg.constructions
    cert = None
    if cfg.thresholds:
        cert = divergence_certificate(c1, c2, cfg.horizon, cfg.thresholds)
    if cfg.fmt == "json":
        diffs = []
        for _, d in iter_differences(c1, c2, cfg.horizon):
            diffs.extend(d.tolist())
        dump_json({
            "pair": [c1.spec(), c2.spec()],
            "horizon": cfg.horizon,
            "diffs": diffs,
            "certificate": cert.to_dict() if cert else None,
        }, fh)
    else:
        def rows():
            for start, d in iter_differences(c1, c2, cfg.horizon):
                yield from enumerate(d.tolist(), start=start)

        write_csv(fh, "diff", ["position", "diff"], rows(), notes=[f"{c1.spec()} vs {c2.spec()}"])
        if cert is not None:
            target = cfg.report or (cfg.out + ".cert.json" if cfg.out else None)
            if target:
                with open(target, "w") as cf:
                    dump_json(cert.to_dict(), cf)
            else:
                dump_json(cert.to_dict(), sys.stderr)
    if cert is not None and not cert.valid:
        return EXIT_CHECK_FAILED
    return EXIT_OK


def _collide(cfg: RunConfig, fh) -> int:
    c1, c2 = cfg.constructions
    rep = collision_scan(c1, c2, cfg.graph, cfg.horizon)
    if cfg.fmt == "json":
        dump_json({
            "pair": [c1.spec(), c2.spec()],
            "graph": cfg.graph.spec(),
            "horizon": cfg.horizon,
            "count": len(rep),
            "collisions": [{"position": t, "value1": a, "value2": b} for t, a, b in rep.rows()],
        }, fh)
    else:
        write_csv(fh, "collide", ["position", "value1", "value2"], rep.rows(),
                  notes=[f"{c1.spec()} vs {c2.spec()} in {cfg.graph.spec()}, n={cfg.horizon}"])
    return EXIT_OK


def _verify(cfg: RunConfig, fh) -> int:
    res = run_suite(quick=cfg.quick, timings=not cfg.deterministic)
    dump_json(res, fh)
    return EXIT_OK if res["passed"] else EXIT_CHECK_FAILED


def _capacity(cfg: RunConfig, fh) -> int:
    rows = omega_table(
        cfg.graph,
        cfg.nmax,
        limit=cfg.limit,
        deterministic=cfg.deterministic,
        seed=cfg.seed,
        timeout_ms=cfg.timeout_ms,
    )

    def ms(r):
        return 0 if cfg.deterministic else round(r.elapsed_ms, 3)

    report = {
        "graph": cfg.graph.spec(),
        "log_base": 2,
        "deterministic": cfg.deterministic,
        "seed": cfg.seed,
        "rows": [
            {
                "n": r.n,
                "omega": r.omega,
                "conjecture": r.conjecture,
                "match": r.match,
                "rate": r.rate,
                "elapsed_ms": ms(r),
                "witness": [one_line(p) for p in r.result.witness],
            }
            for r in rows
        ],
    }
    if cfg.fmt == "json":
        dump_json(report, fh)
    else:
        notes = [f"graph={cfg.graph.spec()}; rate = log2(omega)/n"]
        if cfg.graph == Distance(1):
            notes.append("conjecture = C(n, floor(n/2))")
        write_csv(
            fh,
            "capacity",
            ["n", "omega", "conjecture", "match", "rate", "elapsed_ms"],
            ([r.n, r.omega, r.conjecture, r.match, r.rate, ms(r)] for r in rows),
            notes=notes,
        )
        if cfg.report:
            with open(cfg.report, "w") as rf:
                dump_json(report, rf)
    return EXIT_OK


_HANDLERS = {"gen": _gen, "diff": _diff, "collide": _collide, "verify": _verify, "capacity": _capacity}


def run(cfg: RunConfig) -> int:
    try:
        with _sink(cfg.out) as fh:
            return _HANDLERS[cfg.command](cfg, fh)
    except (HorizonError, OverflowError, CliqueTimeout, CapacityLimitError, MemoryError) as exc:
        print(f"diverge: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ValueError as exc:
        print(f"diverge: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        cfg = parse_args(argv)
    except UsageError as exc:
        print(f"diverge: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # argparse
        return int(exc.code or 0) and EXIT_USAGE
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""
convopoly command-line interface.

Subcommands:
    corners      corner polytope H (diff) or H' (sum) for coordinates 1..d
    verify       brute-force enclosure table over a range of N
    reconstruct  witness set for a convex combination of cycle corners
    decompose    closed walk of a set and its cycle decomposition
    project      coordinate projection of a corner polytope

Exit codes: 0 success, 2 invalid arguments, 3 cap exceeded,
4 malformed input file, 5 internal invariant violation.
"""

import argparse
import json
import logging
import sys
from pathlib import Path

import pandas as pd

from convopoly.convolution import IntegerSet
from convopoly.cycles import enumerate_cycles
from convopoly.debruijn import build_graph
from convopoly.decomposition import peel_cycles, recompose
from convopoly.errors import (
    ConvopolyError,
    InvalidArgumentError,
    InvariantViolationError,
    MalformedInputError,
)
from convopoly.hull import polytope_for, project
from convopoly.oracle import verify_range
from convopoly.reconstruct import HullPoint, realize
from convopoly.serialization import (
    document,
    dumps,
    format_rational,
    lambdas_from_json,
    polytope_from_json,
    polytope_to_json,
)
from convopoly.settings import get_settings
from convopoly.walks import close_walk, edge_weights, encode_walk, encode_walk_double

from .display import (
    display_decomposition,
    display_polytope,
    display_realization,
    display_verify_table,
)
from .observability import command_span, create_command_span_attributes
from .run_config import FORMATS, KINDS, RunConfig, RunConfigValidator

logger = logging.getLogger(__name__)

RATIONAL_COLUMNS = ("forward", "forward_scaled", "converse", "converse_scaled")


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _n_range(text: str) -> tuple[int, int]:
    parts = text.split(":")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected A:B, got {text!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers in A:B, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--d", type=int, help="Label length / number of evaluation points")
    common.add_argument("--kind", choices=KINDS, default="diff", help="diff (S_N) or sum (T_N)")
    common.add_argument("--cap-cycles", type=int, help="Override CONVOPOLY_CAP_CYCLES")
    common.add_argument("--max-d", type=int, help="Override the cap on d")
    common.add_argument("--workers", type=int, help="Oracle worker threads")
    common.add_argument("--format", dest="fmt", choices=FORMATS, default="json")
    common.add_argument("--out", type=Path, help="Write output here instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="Seed for randomized checks")
    common.add_argument("--emit-graph", action="store_true", help="Include the graph in output")
    common.add_argument("--debug", action="store_true", help="Enable debug logging")

    parser = argparse.ArgumentParser(
        prog="convopoly",
        description="Approximating polytopes for normalized convolution sets",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  convopoly corners --d 2 --kind diff
  convopoly verify --d 2 --kind diff --n-range 8:12
  convopoly reconstruct --d 2 --n 1000 --lambdas weights.json
  convopoly decompose --d 2 --n 5 --elements 1,3
  convopoly project --points 2 --from corners_d2.json
        """,
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    corners = sub.add_parser("corners", parents=[common], help="Corner polytope")
    corners.add_argument("--raw", action="store_true", help="Skip minimization")

    verify = sub.add_parser("verify", parents=[common], help="Brute-force enclosure table")
    verify.add_argument("--n", type=int)
    verify.add_argument("--n-range", type=_n_range)
    verify.add_argument("--points", type=_int_list, help="x_1,...,x_d (default 1..d)")

    rec = sub.add_parser("reconstruct", parents=[common], help="Witness set for a hull point")
    rec.add_argument("--n", type=int)
    rec.add_argument("--lambdas", dest="lambdas_path", type=Path)

    dec = sub.add_parser("decompose", parents=[common], help="Cycle decomposition of a set")
    dec.add_argument("--n", type=int)
    dec.add_argument("--elements", type=_int_list, default=None)

    proj = sub.add_parser("project", parents=[common], help="Coordinate projection")
    proj.add_argument("--points", type=_int_list)
    proj.add_argument("--from", dest="from_path", type=Path, help="Polytope JSON to project")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        subcommand=args.subcommand,
        d=args.d,
        kind=args.kind,
        n=getattr(args, "n", None),
        n_range=getattr(args, "n_range", None),
        points=getattr(args, "points", None),
        elements=getattr(args, "elements", None),
        raw=getattr(args, "raw", False),
        emit_graph=args.emit_graph,
        cap_cycles=args.cap_cycles,
        max_d=args.max_d,
        workers=args.workers,
        fmt=args.fmt,
        out=args.out,
        seed=args.seed,
        lambdas_path=getattr(args, "lambdas_path", None),
        from_path=getattr(args, "from_path", None),
    )


def read_json(path: Path):
    """
    Load a JSON input file.

    Raises:
        MalformedInputError: If the file is unreadable or not JSON
    """
    try:
        with open(path, "r") as f:
            return json.load(f)
    except OSError as e:
        raise MalformedInputError(f"Cannot read {path}: {e}") from None
    except json.JSONDecodeError as e:
        raise MalformedInputError(f"{path} is not valid JSON: {e}") from None


def write_output(cfg: RunConfig, text: str) -> None:
    if cfg.out is not None:
        cfg.out.write_text(text)
        logger.info(f"Wrote {len(text)} bytes to {cfg.out}")
    else:
        sys.stdout.write(text)


def cmd_corners(cfg: RunConfig) -> int:
    """Emit the minimized (or raw) corner polytope."""
    P = polytope_for(cfg.d, cfg.kind, raw=cfg.raw, cap=cfg.cap_cycles, max_d=cfg.max_d)
    display_polytope(P, cfg.kind, raw=cfg.raw)
    if cfg.fmt == "csv":
        table = pd.DataFrame(
            [
                {
                    **{f"x{i + 1}": format_rational(v) for i, v in enumerate(c.coords)},
                    "den": c.denominator,
                    "cycle": " ".join(map(str, c.cycle.vertices)) if c.cycle else "",
                }
                for c in P.corners
            ]
        )
        write_output(cfg, table.to_csv(index=False))
        return 0
    doc = polytope_to_json(P, cfg.kind)
    if cfg.emit_graph:
        doc["graph"] = build_graph(cfg.d, cfg.kind, cfg.max_d).to_json()
    write_output(cfg, dumps(doc))
    return 0


def cmd_verify(cfg: RunConfig) -> int:
    """Emit the enclosure table for every requested N."""
    table = verify_range(
        cfg.d,
        cfg.kind,
        cfg.n_values,
        points=cfg.points,
        workers=cfg.workers,
        seed=cfg.seed,
        cap=cfg.cap_cycles,
    )
    display_verify_table(table)
    rows = [
        {k: format_rational(v) if k in RATIONAL_COLUMNS else int(v) for k, v in record.items()}
        for record in table.to_dict(orient="records")
    ]
    if cfg.fmt == "csv":
        write_output(cfg, pd.DataFrame(rows, columns=table.columns).to_csv(index=False))
        return 0
    points = list(cfg.points) if cfg.points else list(range(1, cfg.d + 1))
    doc = document(
        d=cfg.d,
        kind=cfg.kind,
        points=points,
        forward_scaled_max=format_rational(max(table["forward_scaled"])),
        rows=rows,
    )
    write_output(cfg, dumps(doc))
    return 0


def cmd_reconstruct(cfg: RunConfig) -> int:
    """Emit a witness set for the hull point given by --lambdas."""
    graph = build_graph(cfg.d, cfg.kind, cfg.max_d)
    cycles = enumerate_cycles(graph, cfg.cap_cycles)
    weights = lambdas_from_json(read_json(cfg.lambdas_path))
    try:
        hp = HullPoint.from_mapping(weights, len(cycles), cfg.n)
    except InvalidArgumentError as e:
        raise MalformedInputError(f"{cfg.lambdas_path}: {e}") from None
    r = realize(hp, cfg.kind, cfg.d, cycles=cycles, graph=graph)
    display_realization(r)
    doc = document(
        d=cfg.d,
        kind=cfg.kind,
        n=cfg.n,
        set=list(r.set.elements),
        achieved=[format_rational(v) for v in r.achieved],
        target=[format_rational(v) for v in r.target],
        linf_error=format_rational(r.linf_error),
        error_bound=format_rational(r.error_bound),
        multiplicities=[{"cycle": list(c.vertices), "n": k} for c, k in r.multiplicities],
    )
    write_output(cfg, dumps(doc))
    return 0


def cmd_decompose(cfg: RunConfig) -> int:
    """Emit the closed walk of a set and its cycle decomposition."""
    graph = build_graph(cfg.d, cfg.kind, cfg.max_d)
    if cfg.kind == "diff":
        A = IntegerSet.from_iterable(cfg.elements, 1, cfg.n)
        walk = encode_walk(A, cfg.d, graph)
    else:
        A = IntegerSet.from_iterable(cfg.elements, -cfg.n, cfg.n)
        walk = encode_walk_double(A, cfg.d, graph)
    closed = close_walk(walk)
    weights = edge_weights(closed)
    dec = peel_cycles(weights)
    if recompose(dec, graph).weights != weights.weights:
        raise InvariantViolationError("Recomposed weights differ from the walk's edge weights")
    doc = document(
        d=cfg.d,
        kind=cfg.kind,
        n=cfg.n,
        elements=list(A.elements),
        walk=list(closed.vertices),
        m=len(closed),
        decomposition=dec.to_json(),
        total_length=dec.total_length,
    )
    if cfg.emit_graph:
        doc["graph"] = graph.to_json()
    display_decomposition(doc)
    write_output(cfg, dumps(doc))
    return 0


def cmd_project(cfg: RunConfig) -> int:
    """Emit the projection of a polytope onto --points."""
    if cfg.from_path is not None:
        P, kind = polytope_from_json(read_json(cfg.from_path))
    else:
        kind = cfg.kind
        P = polytope_for(cfg.points[-1], kind, cap=cfg.cap_cycles, max_d=cfg.max_d)
    Q = project(P, cfg.points)
    display_polytope(Q, kind)
    doc = polytope_to_json(Q, kind)
    doc["points"] = list(cfg.points)
    write_output(cfg, dumps(doc))
    return 0


COMMANDS = {
    "corners": cmd_corners,
    "verify": cmd_verify,
    "reconstruct": cmd_reconstruct,
    "decompose": cmd_decompose,
    "project": cmd_project,
}


def configure_logging(debug: bool, level: str) -> None:
    logging.basicConfig(
        level=logging.DEBUG if debug else getattr(logging, level, logging.WARNING),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
        force=True,
    )
    # Suppress verbose third-party output
    logging.getLogger("opentelemetry").setLevel(logging.WARNING)
    logging.getLogger("asyncio").setLevel(logging.WARNING)


def main(argv: list[str] | None = None) -> int:
    """Parse arguments, run one subcommand and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    try:
        settings = get_settings()
        configure_logging(args.debug, settings.log_level)
        cfg = config_from_args(args)
        RunConfigValidator().validate_and_raise(cfg)
        if cfg.fmt == "csv" and cfg.subcommand not in ("corners", "verify"):
            raise InvalidArgumentError(f"'{cfg.subcommand}' only writes JSON")
        attributes = create_command_span_attributes(cfg.subcommand, cfg)
        with command_span(cfg.subcommand, attributes):
            return COMMANDS[cfg.subcommand](cfg)
    except ConvopolyError as e:
        logger.error(f"{args.subcommand} failed ({type(e).__name__}): {e}")
        error = document(error=str(e), error_type=type(e).__name__, exit_code=e.exit_code)
        sys.stderr.write(json.dumps(error) + "\n")
        return e.exit_code


def run() -> None:
    """Console-script entry point."""
    sys.exit(main())


if __name__ == "__main__":
    run()

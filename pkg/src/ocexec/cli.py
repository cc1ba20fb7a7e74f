"""Command-line interface: ``ocexec {stats,extract,variants,render}``.

Exit codes: 0 success, 2 input error, 3 configuration error, 4 internal
invariant violation. Errors are reported as one JSON object on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .errors import ConfigError, InputError, InvariantViolation, OcexecError
from .event_graph import build_event_graph
from .extraction import COMPONENTS, LEADING, extract_components, extract_leading_type
from .layout import layout_variant
from .log import EventLog, log_stats, parse_log
from .object_graph import build_object_graph
from .render import Geometry, build_palette, render_svg
from .variants import APPROXIMATE, EXACT, mine_variants
from .wl import DEFAULT_ITERATIONS

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CONFIG = 3
EXIT_INTERNAL = 4


@dataclass
class RunConfig:
    input: str
    strategy: str = COMPONENTS
    leading_type: str | None = None
    attribute: str = "ocel:activity"
    mode: str = EXACT
    wl_iterations: int = DEFAULT_ITERATIONS
    out: str = "-"
    top: int = 1
    rank: int | None = None
    threads: int = 1
    quiet: bool = False
    geometry: Geometry = field(default_factory=Geometry)

    def validate(self):
        if self.strategy not in (COMPONENTS, LEADING):
            raise ConfigError(f"unknown strategy {self.strategy!r}")
        if self.strategy == LEADING and not self.leading_type:
            raise ConfigError("--strategy leading requires --leading-type")
        if self.mode not in (EXACT, APPROXIMATE):
            raise ConfigError(f"unknown mode {self.mode!r}")
        if self.wl_iterations < 1:
            raise ConfigError("--wl-iterations must be >= 1")
        if self.threads < 1:
            raise ConfigError("--threads must be >= 1")
        if self.top < 1 or (self.rank is not None and self.rank < 1):
            raise ConfigError("--top and --rank must be >= 1")
        g = self.geometry
        if min(g.cell_width, g.cell_height) <= 0 or g.arrow_depth < 0 or g.lane_gap < 0:
            raise ConfigError("geometry values must be positive")
        if 2 * g.arrow_depth >= g.cell_width:
            raise ConfigError("--arrow-depth must be less than half of --cell-width")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _note(cfg: RunConfig, msg: str):
    if not cfg.quiet:
        print(msg, file=sys.stderr)


def _load(cfg: RunConfig) -> EventLog:
    try:
        data = sys.stdin.buffer.read() if cfg.input == "-" else Path(cfg.input).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {cfg.input!r}: {exc.strerror or exc}") from None
    log = parse_log(data)
    if log.warnings and not cfg.quiet:
        for w in log.warnings[:5]:
            print(f"warning: {w}", file=sys.stderr)
        if len(log.warnings) > 5:
            print(f"warning: ... {len(log.warnings) - 5} more", file=sys.stderr)
    return log


def _extract(cfg: RunConfig, log: EventLog):
    g = build_object_graph(log)
    eg = build_event_graph(log)
    if cfg.strategy == LEADING:
        return extract_leading_type(log, cfg.leading_type, g, eg, threads=cfg.threads)
    return extract_components(log, g, eg)


def _mine(cfg: RunConfig, log, executions):
    return mine_variants(
        log, executions, cfg.attribute, cfg.mode, cfg.wl_iterations,
        threads=cfg.threads, progress=lambda m: _note(cfg, m),
    )


def _write_json(cfg: RunConfig, payload):
    text = json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
    if cfg.out == "-":
        sys.stdout.write(text)
    else:
        Path(cfg.out).write_text(text, encoding="utf-8")


def _summary(values):
    if not values:
        return None
    return {"max": max(values), "min": min(values), "avg": sum(values) / len(values)}


def cmd_stats(cfg: RunConfig) -> int:
    log = _load(cfg)
    executions = _extract(cfg, log)
    key = cfg.strategy if cfg.strategy == COMPONENTS else f"{LEADING}:{cfg.leading_type}"
    variants = len(_mine(cfg, log, executions).classes) if executions else 0
    payload = log_stats(log).to_dict()
    payload["strategies"] = {
        key: {
            "executions": len(executions),
            "events_per_exec": _summary([len(x.events) for x in executions]),
            "objects_per_exec": _summary([len(x.objects) for x in executions]),
            "variants": variants,
        }
    }
    _write_json(cfg, payload)
    return EXIT_OK


def cmd_extract(cfg: RunConfig) -> int:
    log = _load(cfg)
    _write_json(cfg, [x.to_dict() for x in _extract(cfg, log)])
    return EXIT_OK


def cmd_variants(cfg: RunConfig) -> int:
    log = _load(cfg)
    executions = _extract(cfg, log)
    if not executions:
        _write_json(cfg, {"attribute": cfg.attribute, "mode": cfg.mode, "total_executions": 0, "classes": []})
        return EXIT_OK
    _write_json(cfg, _mine(cfg, log, executions).to_dict())
    return EXIT_OK


def cmd_render(cfg: RunConfig) -> int:
    log = _load(cfg)
    executions = _extract(cfg, log)
    classes = _mine(cfg, log, executions).classes if executions else ()
    if cfg.rank is not None:
        if cfg.rank > len(classes):
            raise ConfigError(f"rank {cfg.rank} requested but only {len(classes)} variants exist")
        ranks = [cfg.rank]
    else:
        ranks = list(range(1, min(cfg.top, len(classes)) + 1))
        if cfg.top > len(classes):
            _note(cfg, f"warning: requested top {cfg.top} but only {len(classes)} variants exist")
    out_dir = Path("." if cfg.out == "-" else cfg.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    for rank in ranks:
        cls = classes[rank - 1]
        p = cls.representative
        grid = layout_variant(log, p, executions[cls.members[0]])
        labels = {e: p.node_label[e][0] for e in p.nodes}
        palette = build_palette(grid)
        for w in palette.warnings:
            _note(cfg, f"warning: {w}")
        svg = render_svg(grid, labels, palette, cfg.geometry)
        path = out_dir / f"variant-{rank}-{cls.class_id}.svg"
        path.write_bytes(svg)
        _note(cfg, f"wrote {path}")
    return EXIT_OK


COMMANDS = {
    "stats": cmd_stats,
    "extract": cmd_extract,
    "variants": cmd_variants,
    "render": cmd_render,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("input", help="OCEL JSON file, or - for stdin")
    common.add_argument("--strategy", choices=[COMPONENTS, LEADING], default=COMPONENTS)
    common.add_argument("--leading-type")
    common.add_argument("--attribute", default="ocel:activity")
    common.add_argument("--mode", choices=[EXACT, APPROXIMATE], default=EXACT)
    common.add_argument("--wl-iterations", type=int, default=DEFAULT_ITERATIONS)
    common.add_argument("--out", default="-", help="output file (render: output directory)")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--quiet", action="store_true")

    parser = _Parser(prog="ocexec", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in ("stats", "extract", "variants"):
        sub.add_parser(name, parents=[common])
    render = sub.add_parser("render", parents=[common])
    render.add_argument("--top", type=int, default=1, help="render the K most frequent variants")
    render.add_argument("--rank", type=int, help="render only the variant at this rank (1-based)")
    d = Geometry()
    render.add_argument("--cell-width", type=int, default=d.cell_width)
    render.add_argument("--cell-height", type=int, default=d.cell_height)
    render.add_argument("--arrow-depth", type=int, default=d.arrow_depth)
    render.add_argument("--lane-gap", type=int, default=d.lane_gap)
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    geometry = Geometry(
        cell_width=getattr(ns, "cell_width", Geometry.cell_width),
        cell_height=getattr(ns, "cell_height", Geometry.cell_height),
        arrow_depth=getattr(ns, "arrow_depth", Geometry.arrow_depth),
        lane_gap=getattr(ns, "lane_gap", Geometry.lane_gap),
    )
    return RunConfig(
        input=ns.input, strategy=ns.strategy, leading_type=ns.leading_type,
        attribute=ns.attribute, mode=ns.mode, wl_iterations=ns.wl_iterations,
        out=ns.out, top=getattr(ns, "top", 1), rank=getattr(ns, "rank", None),
        threads=ns.threads, quiet=ns.quiet, geometry=geometry,
    )


def _fail(exc: OcexecError, code: int) -> int:
    payload = {"error": exc.kind, "message": str(exc), **exc.details()}
    print(json.dumps(payload, ensure_ascii=False), file=sys.stderr)
    return code


def main(argv: list[str] | None = None) -> int:
    try:
        ns = build_parser().parse_args(argv)
        cfg = config_from_args(ns)
        cfg.validate()
        return COMMANDS[ns.command](cfg)
    except InputError as exc:
        return _fail(exc, EXIT_INPUT)
    except ConfigError as exc:
        return _fail(exc, EXIT_CONFIG)
    except InvariantViolation as exc:
        return _fail(exc, EXIT_INTERNAL)


if __name__ == "__main__":
    sys.exit(main())

"""`plot` command: render a figure from flags or a TOML spec file."""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

try:
    import tomllib
except ModuleNotFoundError:  # python < 3.11
    import tomli as tomllib

from .render import PlotSpec, render
from .schema import NoDataError, SchemaError


def _spec_from_toml(path: str) -> PlotSpec:
    with open(path, "rb") as fh:
        data = tomllib.load(fh)
    try:
        return PlotSpec(
            inputs=tuple(data["inputs"]),
            kind=data["kind"],
            out=data["out"],
            x=data.get("x", "mu_f"),
            y=tuple(data.get("y", ())),
            value=data.get("value", "c_eff"),
            titles=tuple(data.get("titles", ())),
        )
    except KeyError as exc:
        raise SchemaError(f"spec file {path}: missing required key {exc}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plot",
        description="Render simulator CSV files into line figures or heatmaps.",
    )
    parser.add_argument("spec", nargs="?", default=None,
                        help="TOML spec file (alternative to flags)")
    parser.add_argument("--input", action="append", default=[],
                        metavar="PATH.CSV", help="input CSV (repeatable)")
    parser.add_argument("--kind", choices=("lines", "heatmap"), default="lines")
    parser.add_argument("--x", default="mu_f")
    parser.add_argument("--y", default=None, metavar="COL1,COL2,...")
    parser.add_argument("--value", default="c_eff")
    parser.add_argument("--title", action="append", default=[],
                        help="panel title (repeatable, one per input)")
    parser.add_argument("--out", default=None, metavar="PATH.{png,svg}")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.spec is not None:
            spec = _spec_from_toml(args.spec)
        else:
            if args.out is None:
                raise SchemaError("--out is required when no spec file is given")
            spec = PlotSpec(
                inputs=tuple(args.input),
                kind=args.kind,
                out=args.out,
                x=args.x,
                y=tuple(args.y.split(",")) if args.y else (),
                value=args.value,
                titles=tuple(args.title),
            )
        out = render(spec)
    except (SchemaError, NoDataError, OSError, tomllib.TOMLDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())

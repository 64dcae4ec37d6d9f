"""Standalone `ghostfig` command: render one figure from CSV inputs."""

from __future__ import annotations

import argparse
import sys

from .figures import DEFAULT_SITE_OFFSETS, FIGURE_KINDS, FigureSpec, render


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="ghostfig",
        description="Render interface-gradient figures from ghostlat CSV files.",
    )
    parser.add_argument("figure", choices=FIGURE_KINDS)
    parser.add_argument("inputs", nargs="+", help="trajectory CSV files")
    parser.add_argument("--output", required=True, help="image file to write")
    parser.add_argument(
        "--sites",
        default=",".join(str(s) for s in DEFAULT_SITE_OFFSETS),
        help="comma-separated site offsets from the interface (histories only)",
    )
    parser.add_argument("--labels", help="comma-separated panel labels")
    args = parser.parse_args(argv)

    try:
        offsets = tuple(int(tok) for tok in args.sites.split(",") if tok.strip())
        spec = FigureSpec(
            figure=args.figure,
            inputs=tuple(args.inputs),
            output=args.output,
            site_offsets=offsets,
            labels=tuple(args.labels.split(",")) if args.labels else (),
        )
        path = render(spec)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

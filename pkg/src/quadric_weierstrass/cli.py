"""Command line front end.

    quadric-weierstrass transform --input instance.json
    quadric-weierstrass family --family euler --M 3 --N 2 --format text
    quadric-weierstrass map-point --family klm --k 2 --l 3 --m 5 --point 1,1,-1,-1
    quadric-weierstrass plot --input instance.json --stage 0 --out figs/

Exit codes: 0 ok, 2 malformed input, 3 pipeline error, 4 bad stage or flag combination.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .core import fmt_rational
from .documents import DocumentError, dumps, jsonable, parse_instance, parse_point, trace_document
from .errors import PipelineError
from .plot import PlotConfig, affine_svg, projective_svg
from .point_transport import PipelineTrace, run_full, trace_point, transport_backward

EXIT_OK, EXIT_PARSE, EXIT_PIPELINE, EXIT_USAGE = 0, 2, 3, 4


class UsageError(Exception):
    """Valid syntax, but the combination of flags cannot be honoured."""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quadric-weierstrass",
        description="Exact transformation of a quadric intersection with a rational point to Weierstrass form.")
    sub = parser.add_subparsers(dest="command", required=True)

    def instance_flags(p):
        p.add_argument("--input", type=Path, help="instance JSON file ('-' for stdin)")
        p.add_argument("--family", choices=("euler", "klm"))
        p.add_argument("--M", type=int)
        p.add_argument("--N", type=int)
        p.add_argument("--k", type=int)
        p.add_argument("--l", type=int)
        p.add_argument("--m", type=int)

    p = sub.add_parser("transform", help="run the full pipeline and print the trace")
    instance_flags(p)
    p.add_argument("--format", choices=("json", "text", "svg"), default="json")

    p = sub.add_parser("family", help="shorthand for transform on a named family")
    instance_flags(p)
    p.add_argument("--format", choices=("json", "text", "svg"), default="json")

    p = sub.add_parser("map-point", help="carry a point forward or backward along the chain")
    instance_flags(p)
    p.add_argument("--point", help='"a,b,c,d" (forward) or "a,b,c" (backward)')
    p.add_argument("--direction", choices=("forward", "backward"), default="forward")
    p.add_argument("--format", choices=("json", "text", "svg"), default="json")

    p = sub.add_parser("plot", help="write affine and projective SVG views of one stage")
    instance_flags(p)
    p.add_argument("--stage", type=int, default=0)
    p.add_argument("--out", type=Path, default=Path("."))
    p.add_argument("--window", help="x0,x1,y0,y1 for the affine view (default: auto-fit)")
    p.add_argument("--samples", type=int, default=800, help="grid resolution per axis")
    p.add_argument("--format", choices=("json", "text", "svg"), default="svg")
    return parser


def load_instance(args) -> tuple[dict, PipelineTrace]:
    if args.input is not None and args.family is not None:
        raise UsageError("use either --input or --family, not both")
    if args.input is not None:
        try:
            text = sys.stdin.read() if str(args.input) == "-" else args.input.read_text()
            doc = json.loads(text)
        except (OSError, json.JSONDecodeError) as exc:
            raise DocumentError(f"cannot read instance: {exc}") from exc
    elif args.family == "euler":
        doc = {"family": "euler", "M": args.M, "N": args.N}
    elif args.family == "klm":
        doc = {"family": "klm", "k": args.k, "l": args.l, "m": args.m}
    else:
        raise UsageError("an instance is required: --input FILE or --family euler|klm")
    instance, A, B, x = parse_instance(doc)
    return instance, run_full(A, B, x)


def _text_report(doc: dict) -> str:
    lines = [f"instance: {json.dumps(doc['instance'], sort_keys=True)}"]
    q = doc["quadric_stage"]
    lines.append(f"C0: {' '.join(map(str, q['cubic']['table']))}  point ({','.join(q['point'])})")
    for s in doc["steps"]:
        flags = f" [{', '.join(s['flags'])}]" if s["flags"] else ""
        lines.append(f"{s['name']}: {' '.join(map(str, s['cubic']['table']))}  "
                     f"point ({','.join(s['point'])}){flags}")
    lines.append(f"weierstrass: {doc['weierstrass']['equation']}")
    final = doc["final"]
    lines.append(f"final: {final['factored'] or final['equation']}")
    return "\n".join(lines) + "\n"


def cmd_transform(args) -> tuple[int, str]:
    if args.format == "svg":
        raise UsageError("transform prints json or text; use the plot command for SVG")
    instance, trace = load_instance(args)
    doc = trace_document(instance, trace)
    return EXIT_OK, dumps(doc) if args.format == "json" else _text_report(doc)


def cmd_map_point(args) -> tuple[int, str]:
    if args.point is None:
        raise UsageError("map-point needs --point")
    if args.format == "svg":
        raise UsageError("map-point prints json or text")
    instance, trace = load_instance(args)
    if args.direction == "forward":
        P = parse_point(args.point, 4)
        path = trace_point(trace, P)
        out = path[-1][1]
        doc = {"instance": instance, "direction": "forward", "input": list(P), "output": out,
               "path": [{"stage": name, "point": pt} for name, pt in path]}
    else:
        P = parse_point(args.point, 3)
        out = transport_backward(trace, P)
        doc = {"instance": instance, "direction": "backward", "input": list(P), "output": out}
    doc = jsonable(doc)
    if args.format == "text":
        return EXIT_OK, f"{','.join(doc['input'])} -> {','.join(doc['output'])}\n"
    return EXIT_OK, dumps(doc)


def _parse_window(text: str) -> tuple[float, float, float, float]:
    try:
        vals = tuple(float(v) for v in text.split(","))
    except ValueError as exc:
        raise DocumentError(f"bad --window {text!r}") from exc
    if len(vals) != 4 or not (vals[0] < vals[1] and vals[2] < vals[3]):
        raise DocumentError("--window needs x0,x1,y0,y1 with x0 < x1 and y0 < y1")
    return vals  # type: ignore[return-value]


def cmd_plot(args) -> tuple[int, str]:
    if args.format != "svg":
        raise UsageError("plot only produces svg")
    if args.samples < 2:
        raise UsageError("--samples must be at least 2")
    window = _parse_window(args.window) if args.window else None
    instance, trace = load_instance(args)
    stages = {0: (trace.quadrics.cubic, trace.quadrics.z)}
    for s in trace.steps:
        stages[s.index] = (s.cubic_after, s.point_after)
    if args.stage not in stages:
        raise UsageError(f"stage {args.stage} not in trace; available: {sorted(stages)}")
    C, P = stages[args.stage]
    config = PlotConfig(samples=args.samples, window=window)
    args.out.mkdir(parents=True, exist_ok=True)
    files = {}
    for view, render in (("affine", affine_svg), ("projective", projective_svg)):
        path = args.out / f"stage{args.stage}_{view}.svg"
        path.write_text(render(C, [P], config, title=f"C({args.stage}) {view} view"))
        files[view] = str(path)
    doc = {"instance": instance, "stage": args.stage, "files": files, "marked": [P],
           "cubic": {k: fmt_rational(v) for k, v in C.as_dict().items()}}
    return EXIT_OK, dumps(jsonable(doc))


COMMANDS = {"transform": cmd_transform, "family": cmd_transform, "map-point": cmd_map_point, "plot": cmd_plot}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)  # argparse itself exits with 2 on bad syntax
    if args.command == "family" and args.family is None:
        print("error: family needs --family euler|klm", file=sys.stderr)
        return EXIT_USAGE
    try:
        code, out = COMMANDS[args.command](args)
    except DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PipelineError as exc:
        err = {"error": {"name": type(exc).__name__, "step": exc.step, "message": str(exc)}}
        sys.stdout.write(dumps(err))
        return EXIT_PIPELINE
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())

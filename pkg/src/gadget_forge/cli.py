"""Command-line front end.

Angles arrive in degrees and are converted to radians once, here.  Exit
codes: 0 success, 1 usage error, 2 validation failure, 3 construction
infeasible for the given spec/parameters.
"""

from __future__ import annotations

import argparse
import csv
import math
import os
import shlex
import sys
from pathlib import Path

from .cheng import build_cheng
from .cp import ConstructionReport, CreasePattern
from .division import DivisionPlan, build_division, validate_plan
from .first import FirstParams, build_first
from .fold_io import ExportOptions, export_fold
from .frame import (
    GadgetSpec,
    InfeasibleError,
    UnsupportedConstructionError,
    ValidationError,
    build_frame,
    frame_points,
    validate,
)
from .geometry import Point2
from .interference import AdjacencyCase, analyze
from .onepleat import build_onepleat
from .second import build_second
from .svg_io import export_svg
from .third import build_third

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVALID = 2
EXIT_INFEASIBLE = 3


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's 2
        raise _Usage(message)


SPEC_KEYS = ("alpha", "beta_l", "beta_r", "delta_l", "delta_r", "ab_len")


def _add_spec_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alpha", type=float, help="top-face apex angle, degrees")
    p.add_argument("--beta-l", type=float, dest="beta_l", help="left base angle, degrees")
    p.add_argument("--beta-r", type=float, dest="beta_r", help="right base angle, degrees")
    p.add_argument("--delta-l", type=float, dest="delta_l", default=None, help="left pleat rotation, degrees")
    p.add_argument("--delta-r", type=float, dest="delta_r", default=None, help="right pleat rotation, degrees")
    p.add_argument("--ab-len", type=float, dest="ab_len", default=None, help="ridge length (scale)")
    p.add_argument("--config", type=Path, help="key=value file mirroring the flags")


def _add_output_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", type=Path, help="output file base path")
    p.add_argument("--format", choices=["fold", "svg", "both"], default="fold")
    p.add_argument("--units-per-ab", type=float, default=100.0)
    p.add_argument("--bbox-scale", type=float, default=6.0, dest="bbox_scale",
                   help="paper square side in ridge lengths (grows if needed)")
    p.add_argument("--precision", type=int, default=None)
    p.add_argument("--flip", action="store_true",
                   help="emit the horizontally flipped pattern (engaging orientation)")
    p.add_argument("--plot", type=Path, help="also render a PNG preview")
    p.add_argument("--report", type=Path, help="write the construction report as CSV")


def _load_config(path: Path) -> dict:
    out = {}
    for raw in path.read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise _Usage(f"bad config line {raw!r}")
        key, value = line.split("=", 1)
        out[key.strip().replace("-", "_")] = value.strip()
    return out


def _spec_from_args(args) -> GadgetSpec:
    values = {}
    if getattr(args, "config", None):
        cfg = _load_config(args.config)
        for k in SPEC_KEYS:
            if k in cfg:
                values[k] = float(cfg[k])
    for k in SPEC_KEYS:
        v = getattr(args, k, None)
        if v is not None:
            values[k] = v
    missing = [k for k in ("alpha", "beta_l", "beta_r") if k not in values]
    if missing:
        raise _Usage(f"missing required spec angles: {', '.join(missing)}")
    return GadgetSpec(
        alpha=math.radians(values["alpha"]),
        beta_l=math.radians(values["beta_l"]),
        beta_r=math.radians(values["beta_r"]),
        delta_l=math.radians(values.get("delta_l", 0.0)),
        delta_r=math.radians(values.get("delta_r", 0.0)),
        ab_len=values.get("ab_len", 1.0),
    )


def _spec_from_string(text: str) -> GadgetSpec:
    values = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise _Usage(f"bad spec component {part!r}; want key=value")
        key, value = part.split("=", 1)
        key = key.strip().replace("-", "_")
        if key not in SPEC_KEYS:
            raise _Usage(f"unknown spec key {key!r}")
        values[key] = float(value)
    for k in ("alpha", "beta_l", "beta_r"):
        if k not in values:
            raise _Usage(f"spec string needs {k}")
    return GadgetSpec(
        alpha=math.radians(values["alpha"]),
        beta_l=math.radians(values["beta_l"]),
        beta_r=math.radians(values["beta_r"]),
        delta_l=math.radians(values.get("delta_l", 0.0)),
        delta_r=math.radians(values.get("delta_r", 0.0)),
        ab_len=values.get("ab_len", 1.0),
    )


def _export_options(args) -> ExportOptions:
    precision = args.precision
    env = os.environ.get("GADGET_FORGE_PRECISION")
    if env is not None:
        precision = int(env)
    if precision is None:
        precision = 9
    return ExportOptions(
        format=args.format,
        units_per_ab=args.units_per_ab,
        bbox_scale=args.bbox_scale,
        precision=precision,
    )


def flip_pattern(cp: CreasePattern) -> CreasePattern:
    """Mirror across the vertical axis and swap mountain/valley (sheet
    turned over left-to-right)."""
    from .cp import BORDER, MOUNTAIN, VALLEY, Crease

    swap = {MOUNTAIN: VALLEY, VALLEY: MOUNTAIN, BORDER: BORDER}

    def m(p: Point2) -> Point2:
        return Point2(-p.x, p.y)

    creases = [Crease(m(c.start), m(c.end), swap[c.fold], c.label) for c in cp.creases]
    meta = ConstructionReport.from_dict(cp.meta.to_dict())
    meta.points = {k: m(p) for k, p in meta.points.items()}
    meta.warnings.append("pattern horizontally flipped; folds swapped")
    meta.scalars["sheet_center_x"] = -meta.scalars.get("sheet_center_x", 0.0)
    meta.identity_specs = []
    return CreasePattern(creases, meta, cp.eps)


def _write_outputs(cp: CreasePattern, args) -> None:
    opts = _export_options(args)
    if args.flip:
        cp = flip_pattern(cp)
    if args.out is not None:
        base = args.out
        if opts.format in ("fold", "both"):
            path = base if base.suffix == ".fold" and opts.format == "fold" else base.with_suffix(".fold")
            path.write_bytes(export_fold(cp, opts))
            print(f"wrote {path}")
        if opts.format in ("svg", "both"):
            path = base if base.suffix == ".svg" and opts.format == "svg" else base.with_suffix(".svg")
            path.write_bytes(export_svg(cp, opts))
            print(f"wrote {path}")
    if args.plot is not None:
        from .render import render_png

        render_png(cp, str(args.plot))
        print(f"wrote {args.plot}")
    if args.report is not None:
        _write_report_csv(cp.meta, args.report)
        print(f"wrote {args.report}")


def _write_report_csv(meta: ConstructionReport, path: Path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["key", "value"])
        w.writerow(["construction", meta.construction])
        if meta.tau:
            w.writerow(["tau", meta.tau])
        for k in sorted(meta.scalars):
            w.writerow([f"scalar:{k}", meta.scalars[k]])
        for side, v in sorted(meta.interference.items()):
            w.writerow([f"interference:{side}", v])
        for b in meta.branches:
            w.writerow(["branch", b])
        for m in meta.merges:
            w.writerow(["merge", m])
        for m in meta.warnings:
            w.writerow(["warning", m])


def _print_validation(spec: GadgetSpec) -> int:
    rep = validate(spec)
    if rep.ok:
        print(f"valid; gamma = {math.degrees(spec.gamma):.6g} deg"
              + ("; flat (alpha = beta_l + beta_r)" if rep.flat else ""))
        return EXIT_OK
    for code, msg in rep.violations:
        print(f"violated {code}: {msg}")
    return EXIT_INVALID


def _cmd_validate(args) -> int:
    return _print_validation(_spec_from_args(args))


def _cmd_frame(args) -> int:
    spec = _spec_from_args(args)
    frame = build_frame(spec)
    d = frame.derived
    print(f"gamma   = {math.degrees(d.gamma):.9g} deg")
    print(f"gamma_l = {math.degrees(d.gamma_l):.9g} deg")
    print(f"gamma_r = {math.degrees(d.gamma_r):.9g} deg")
    print(f"r       = {d.r:.9g}")
    for name in ("A", "B_L", "B_R", "C", "P"):
        p = frame_points(frame)[name]
        print(f"{name:3s} = ({p.x:.9g}, {p.y:.9g})")
    return EXIT_OK


def _build_by_name(spec: GadgetSpec, args) -> CreasePattern:
    name = args.construction
    tau = args.tau
    scale = args.bbox_scale
    if name == "onepleat":
        return build_onepleat(spec, tau, sheet_scale=scale)
    if name == "cheng":
        return build_cheng(spec, tau or "L", sheet_scale=scale)
    if name == "first":
        if args.abe is not None:
            return build_first(spec, FirstParams(tau or "L", math.radians(args.abe)), sheet_scale=scale)
        return build_first(spec, tau=tau or "L", sheet_scale=scale)
    if name == "second":
        theta = math.radians(args.theta) if args.theta is not None else None
        return build_second(spec, theta, sheet_scale=scale)
    if name == "third":
        return build_third(spec, sheet_scale=scale)
    raise _Usage(f"unknown construction {name!r}")


def _cmd_build(args) -> int:
    spec = _spec_from_args(args)
    cp = _build_by_name(spec, args)
    meta = cp.meta
    print(f"construction: {meta.construction}" + (f" tau={meta.tau}" if meta.tau else ""))
    for b in meta.branches:
        print(f"branch: {b}")
    for m in meta.merges:
        print(f"merge: {m}")
    for key in ("rho_l", "psi_l", "theta", "abe", "extension_length"):
        if key in meta.scalars:
            print(f"{key} = {math.degrees(meta.scalars[key]):.6g} deg")
    if meta.interference:
        parts = ", ".join(f"{k}: {v:.6g}" for k, v in sorted(meta.interference.items()))
        print(f"interference lengths: {parts}")
    _write_outputs(cp, args)
    return EXIT_OK


def _cmd_divide(args) -> int:
    spec = _spec_from_args(args)
    props = tuple(args.proportions) if args.proportions else tuple(1.0 for _ in range(args.d))
    if len(props) != args.d:
        raise _Usage("--proportions must list exactly d values")
    psis = tuple(math.radians(x) for x in args.psi) if args.psi else tuple(0.0 for _ in range(args.d - 1))
    if len(psis) != args.d - 1:
        raise _Usage("--psi must list exactly d-1 values")
    plan = DivisionPlan(args.d, props, psis).normalized()
    rep = validate_plan(spec, plan)
    if not rep.ok:
        for code, msg in rep.violations:
            print(f"violated {code}: {msg}")
        return EXIT_INVALID
    cp = build_division(spec, plan, sheet_scale=args.bbox_scale)
    print(f"division into {args.d} levels; branches:")
    for b in cp.meta.branches:
        print(f"  {b}")
    _write_outputs(cp, args)
    return EXIT_OK


def _cmd_interfere(args) -> int:
    left = _spec_from_string(args.left)
    right = _spec_from_string(args.right)
    case = AdjacencyCase.of(left, right, args.shared_len)
    rep = analyze(case)
    print(f"theta_1R = {math.degrees(rep.theta_1r):.6g} deg")
    print(f"theta_2L = {math.degrees(rep.theta_2l):.6g} deg")
    print(f"minimum shared length = {rep.min_length:.6g}")
    if rep.apex_floor is not None:
        print(f"coincident-apex floor = {rep.apex_floor:.6g}")
    print(f"verdict: {'OK' if rep.ok else 'COLLIDE'} at shared length {rep.shared_len:.6g}")
    if args.report is not None:
        with open(args.report, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["key", "value"])
            for k, v in rep.to_dict().items():
                w.writerow([k, v])
        print(f"wrote {args.report}")
    return EXIT_OK


def _cmd_batch(args) -> int:
    worst = EXIT_OK
    for raw in Path(args.batch).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        print(f"== {line}")
        code = main(shlex.split(line))
        worst = max(worst, code)
    return worst


def build_parser() -> _Parser:
    p = _Parser(prog="gadget-forge",
                description="Crease patterns for negative 3D origami-extrusion gadgets")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("validate", help="check the admissibility conditions")
    _add_spec_args(sp)

    sp = sub.add_parser("frame", help="print the shared pleat-frame points")
    _add_spec_args(sp)

    sp = sub.add_parser("build", help="build one gadget crease pattern")
    _add_spec_args(sp)
    sp.add_argument("--construction", required=True,
                    choices=["onepleat", "cheng", "first", "second", "third"])
    sp.add_argument("--tau", choices=["L", "R"], default=None)
    sp.add_argument("--abe", type=float, default=None,
                    help="first construction: pattern angle at B_tau, degrees")
    sp.add_argument("--theta", type=float, default=None,
                    help="second construction: rotation when both betas are right angles, degrees")
    _add_output_args(sp)

    sp = sub.add_parser("divide", help="divide one gadget into stacked levels")
    _add_spec_args(sp)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--proportions", type=float, nargs="+", default=None)
    sp.add_argument("--psi", type=float, nargs="+", default=None,
                    help="per-level rotations for levels 2..d, degrees")
    _add_output_args(sp)

    sp = sub.add_parser("interfere", help="flap interference of two adjacent gadgets")
    sp.add_argument("--left", required=True, help="left spec, e.g. alpha=90,beta_l=90,beta_r=90")
    sp.add_argument("--right", required=True)
    sp.add_argument("--shared-len", type=float, required=True, dest="shared_len")
    sp.add_argument("--report", type=Path)

    sp = sub.add_parser("batch", help="run one sub-command per line of a file")
    sp.add_argument("--batch", required=True)
    return p


COMMANDS = {
    "validate": _cmd_validate,
    "frame": _cmd_frame,
    "build": _cmd_build,
    "divide": _cmd_divide,
    "interfere": _cmd_interfere,
    "batch": _cmd_batch,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args)
    except _Usage as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValidationError as e:
        for code, msg in e.violations:
            print(f"violated {code}: {msg}", file=sys.stderr)
        return EXIT_INVALID
    except (UnsupportedConstructionError, InfeasibleError) as e:
        print(f"infeasible: {e}", file=sys.stderr)
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())

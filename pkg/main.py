"""
rotsurf - Main Application
Rotational surfaces in the pseudo-Euclidean space E^4_2
"""
import argparse
import json
import logging
import sys
from typing import List, Optional

from config import (BUILTIN_CURVES, DEFAULT_GRID, DEFAULT_PROJECTION, DEFAULT_SRANGE, DEFAULT_TRANGE,
                    GRID_WORKERS, LOG_FORMAT, LOG_LEVEL)
from errors import DegenerateSurface, RotsurfError
from killing_fields import bracket_table
from mesh_manager import EXPORT_FORMATS, GridSpec, MeshManager
from profile_curves import resolve_curve
from rotation_groups import RotationPair
from rotational_surfaces import SurfaceSpec, curvature_report, fits_restriction, make_surface_spec
from utils import grid_arg, param_arg, parse_grid, parse_range, point_arg, projection_arg, range_arg
from verification import SUITES, VerificationRunner

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def _surface_options() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--pair", choices=[p.value for p in RotationPair],
                        help="rotation pair (default: the builtin curve's pair)")
    parent.add_argument("--curve", required=True,
                        help=f"builtin name ({', '.join(BUILTIN_CURVES)}) or four expressions in s")
    parent.add_argument("--param", type=param_arg, action="append", default=[], metavar="NAME=VALUE",
                        help="bind a curve parameter, e.g. c=2")
    parent.add_argument("--reparam1", default="t", help="first group parameter as an expression in t")
    parent.add_argument("--reparam2", default="t", help="second group parameter as an expression in t")
    parent.add_argument("--domain", type=range_arg, help="curve domain a:b, required for divisions")
    parent.add_argument("--general", action="store_true",
                        help="skip the closed forms and use the numeric frame only")
    parent.add_argument("--grid", type=grid_arg, default=parse_grid(DEFAULT_GRID), metavar="NTxNS")
    parent.add_argument("--trange", type=range_arg, default=parse_range(DEFAULT_TRANGE), metavar="A:B")
    parent.add_argument("--srange", type=range_arg, default=parse_range(DEFAULT_SRANGE), metavar="A:B")
    parent.add_argument("--format", choices=EXPORT_FORMATS, default="csv")
    parent.add_argument("--project", type=projection_arg, default=DEFAULT_PROJECTION, metavar="I,J,K",
                        help="coordinates kept by the obj export")
    parent.add_argument("--workers", type=int, default=GRID_WORKERS)
    parent.add_argument("--out", help="output file (default: stdout)")
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rotsurf", description=__doc__.strip().splitlines()[-1])
    parser.add_argument("--verbose", action="store_true", help="debug logging")
    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser("verify", help="run the verification suites")
    verify.add_argument("suite", nargs="?", choices=SUITES, default="all")
    verify.add_argument("--tol", type=float, default=None, help="override the default tolerance")

    commands.add_parser("brackets", help="print the generator bracket table")

    surface = _surface_options()
    sample = commands.add_parser("sample", parents=[surface], help="sample surface positions on a grid")
    sample.add_argument("--curvature", action="store_true", help="also fill K and H2")

    curvature = commands.add_parser("curvature", parents=[surface], help="curvature on a grid or at one point")
    curvature.add_argument("--point", type=point_arg, metavar="T,S", help="print one full report as JSON")
    return parser


def _build_spec(args) -> SurfaceSpec:
    params = dict(args.param)
    curve = resolve_curve(args.curve, params, args.domain)
    pair_text = args.pair or BUILTIN_CURVES.get(args.curve, {}).get('pair')
    if pair_text is None:
        raise ValueError("--pair is required for a curve given by expressions")
    pair = RotationPair.parse(pair_text)
    restricted = not args.general and fits_restriction(curve, pair)
    logger.info(f"Surface S{pair.value} from {curve.describe()} "
                f"({'closed forms' if restricted else 'numeric frame'})")
    return make_surface_spec(pair, curve, args.reparam1, args.reparam2, restricted=restricted, params=params)


def _emit(text: str, out: Optional[str]):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        logger.info(f"Wrote {out}")
    else:
        sys.stdout.write(text)


def run_verify(args) -> int:
    report = VerificationRunner().run_verification(args.suite, args.tol)
    print(report.render())
    return report.exit_code


def run_brackets(args) -> int:
    print(bracket_table().render())
    return EXIT_OK


def run_grid(args, with_curvature: bool) -> int:
    spec = _build_spec(args)
    grid = GridSpec.from_ranges(args.trange, args.srange, args.grid)
    mesh = MeshManager.sample_grid(spec, grid, with_curvature=with_curvature, workers=args.workers)
    text = MeshManager.export(mesh, args.format, args.project)
    _emit(text, args.out)
    return EXIT_OK


def run_sample(args) -> int:
    return run_grid(args, with_curvature=args.curvature)


def run_curvature(args) -> int:
    if args.point is None:
        return run_grid(args, with_curvature=True)
    spec = _build_spec(args)
    t, s = args.point
    report = curvature_report(spec, t, s)
    for finding in report.findings:
        if not finding.matches:
            logger.warning(f"Printed {finding.quantity}/{finding.variant} differs from the oracle "
                           f"(residual {finding.residual:.3e}) {finding.note}")
    payload = {"provenance": spec.provenance(), "report": report.to_dict()}
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return EXIT_OK


COMMANDS = {
    "verify": run_verify,
    "brackets": run_brackets,
    "sample": run_sample,
    "curvature": run_curvature,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Run the CLI; returns the process exit code"""
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(format=LOG_FORMAT, level=logging.DEBUG if args.verbose else LOG_LEVEL)
    try:
        return COMMANDS[args.command](args)
    except DegenerateSurface as e:
        logger.error(f"Degenerate point: {e}")
        return EXIT_USAGE
    except (RotsurfError, ValueError) as e:
        logger.error(f"{args.command} failed: {e}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

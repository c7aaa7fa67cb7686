"""Command line interface: ``sepvol <subcommand>`` or ``python -m sepvol``."""
import argparse
import logging
import sys
from typing import List, Optional

import numpy as np

from sepvol import settings
from sepvol._constants import CONSTANTS
from sepvol.bodies import oracle_D, oracle_Delta, oracle_Gamma_ball, oracle_Sigma
from sepvol.ellipsoids import alpha_D, lowner_exponent_identity
from sepvol.nets import build_net, covering_radius, save_net, sigma_width_upper_report
from sepvol.operators import FactorShape
from sepvol.ppt import ppt_fraction_mc
from sepvol.sampling import as_stream
from sepvol.tensor_norms import vrad_tensor_power_bound
from sepvol.utils import CheckRecord
from sepvol.widths import gaussian_width_mc, vol_D_exact, vrad_D

from ._theorems import run_theorem1, run_theorem2, run_theorem3, run_theorem4

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_USAGE = 1
EXIT_VIOLATION = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _result(inputs, estimates, bounds, passed, seed=None) -> CheckRecord:
    return CheckRecord(
        inputs=inputs, estimates=estimates, bounds=bounds, seed=seed, **{"pass": bool(passed)}
    )


def _vol_exact(args) -> CheckRecord:
    d = args.d
    vrad = vrad_D(d)
    lower, upper = 1 / (2 * np.sqrt(d)), 2 / np.sqrt(d)
    return _result(
        {"d": d},
        {},
        {"log_volume": vol_D_exact(d), "vrad_D": vrad, "vrad_lower": lower, "vrad_upper": upper},
        lower <= vrad <= upper,
    )


def _width(args) -> CheckRecord:
    shape = FactorShape(args.D, args.N)
    stream = as_stream(args.seed)
    d = shape.d
    if args.body == "D":
        body = oracle_D(shape, centered=True)
        lower, upper = 1 / (2 * np.sqrt(d)), 2 / np.sqrt(d)
    elif args.body == "Delta":
        body = oracle_Delta(shape)
        lower, upper = 1 / np.sqrt(d), 2 / np.sqrt(d)
    elif args.body == "Sigma":
        body = oracle_Sigma(shape, stream=stream.child(1))
        lower, upper = 0.0, sigma_width_upper_report(shape).bound
    else:
        body = oracle_Gamma_ball(shape, stream=stream.child(1))
        # conv{|x⟩⟨y|} is the projective tensor product of 2N complex balls
        lower, upper = 0.0, vrad_tensor_power_bound(args.D, 2 * args.N, "complex").bound
    width = gaussian_width_mc(
        body, args.samples, stream.child(0), n_workers=args.workers, silent=not args.progress
    ).spherical()
    # a lower-bound oracle only fails when its whole interval exceeds the upper bound
    passed = width.lower(3) <= upper
    if not width.is_lower_bound:
        passed = passed and width.upper(3) >= lower
    return _result(
        {"body": args.body, "D": args.D, "N": args.N, "samples": width.samples},
        {"width": width},
        {"lower": lower, "upper": upper},
        passed,
        stream.seed,
    )


def _net_build(args) -> CheckRecord:
    stream = as_stream(args.seed)
    net = build_net(args.dim, args.delta, stream)
    if args.out is not None:
        save_net(net, args.out)
    radius = covering_radius(net, stream=stream.child(10**6))
    return _result(
        {"dim": args.dim, "delta": args.delta, "out": args.out},
        {"size": len(net), "covering_radius": radius},
        {"delta": args.delta},
        radius <= args.delta,
        stream.seed,
    )


def _ppt_fraction(args) -> CheckRecord:
    shape = FactorShape(args.D, 2)
    stream = as_stream(args.seed)
    fraction = ppt_fraction_mc(
        shape, args.samples, stream, n_workers=args.workers, silent=not args.progress
    )
    n = shape.d**2 - 1
    root = fraction.root(n)
    return _result(
        {"D": args.D, "samples": fraction.samples},
        {"fraction": fraction, "fraction_root": root},
        {"c0": CONSTANTS.c0, "fraction_root_ci_high": fraction.ci_high ** (1 / n)},
        root >= CONSTANTS.c0,
        stream.seed,
    )


def _theorem(args) -> CheckRecord:
    if args.id == 1:
        report = run_theorem1(args.D, args.N, args.samples, args.seed)
    elif args.id == 2:
        report = run_theorem2(args.D, args.N, args.samples, args.seed)
    elif args.id == 3:
        report = run_theorem3(args.N, args.samples, args.seed)
    else:
        report = run_theorem4(args.D, args.samples, args.seed)
    if args.csv is not None:
        report.to_frame().to_csv(args.csv, index=False)
        logger.info(f"Wrote check table to {args.csv}.")
    return CheckRecord(report.to_dict())


def _alpha(args) -> CheckRecord:
    identity = lowner_exponent_identity(args.D, 2)
    return _result(
        {"D": args.D},
        {},
        {"alpha_D": alpha_D(args.D), "exponent_identity": identity},
        identity.passed,
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sepvol", description="Volume and width experiments for separable states.")
    parser.add_argument("--verbose", action="store_true", help="Log progress at INFO level.")
    parser.add_argument("--progress", action="store_true", help="Show progress bars.")
    parser.add_argument("--workers", type=int, default=None, help="Threads for Monte Carlo chunks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("vol-exact", help="Exact volume and volume radius of the state space.")
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(run=_vol_exact)

    p = sub.add_parser("width", help="Monte Carlo mean width of a body.")
    p.add_argument("--body", choices=["D", "Delta", "Sigma", "Gamma"], required=True)
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--N", type=int, default=1)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(run=_width)

    p = sub.add_parser("net-build", help="Greedy random net of a unit sphere.")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(run=_net_build)

    p = sub.add_parser("ppt-fraction", help="Monte Carlo PPT volume fraction on D⊗D.")
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(run=_ppt_fraction)

    p = sub.add_parser("theorem", help="Run a theorem harness.")
    p.add_argument("id", type=int, choices=[1, 2, 3, 4])
    p.add_argument("--D", type=int, default=2)
    p.add_argument("--N", type=int, default=2)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--csv", default=None, help="Write the flat check table here.")
    p.set_defaults(run=_theorem)

    p = sub.add_parser("alpha", help="Löwner exponent alpha_D.")
    p.add_argument("--D", type=int, required=True)
    p.set_defaults(run=_alpha)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Entry point; returns 0 on pass, 2 on a bound violation, 1 on a usage error."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_PASS
    if args.verbose:
        settings.verbosity = logging.INFO
    if args.workers is not None:
        settings.n_workers = args.workers
    try:
        result = args.run(args)
    except ValueError as e:
        print(f"sepvol: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    print(result.to_json(indent=2))
    return EXIT_PASS if result["pass"] else EXIT_VIOLATION

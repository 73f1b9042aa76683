# encoding: utf-8
"""The aoisched command.

    aoisched check INSTANCE
    aoisched solve INSTANCE [--method M] [--grid-step S] [--out SCHEDULE]
    aoisched curve INSTANCE SCHEDULE --out CSV
    aoisched plot INSTANCE SCHEDULE --out SVG [--width PX] [--height PX]
    aoisched study INSTANCE [--deadlines T ...] [--out-dir DIR]

Exit status: 0 on success, 2 when the deadline, the regime or the schedule
rules the request out, 1 for usage, file and parse errors.
"""
from __future__ import print_function, unicode_literals, absolute_import, division

import argparse
import logging
import os
import sys

from aoisched import feasibility, files, svg
from aoisched.errors import (DimensionError, FileFormatError, InfeasibleDeadlineError,
                             InstanceError, NoWaitInfeasibleError, RegimeError, ScheduleError)
from aoisched.model import DEFAULT_TOL, sample_curve, require_feasible
from aoisched.solver import DEFAULT_GRID_STEP, Solver
from aoisched.utils import fmt_decimal, fmt_list, fmt_seconds

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INFEASIBLE = 2

STUDY_DEADLINES = (3.0, 5.0, 7.5)

METHODS = {
    "auto": lambda solver, instance, args: solver.solve(instance),
    "greedy": lambda solver, instance, args: solver.greedy_solve(instance),
    "closed-form": lambda solver, instance, args: solver.closed_form_schedule(instance),
    "nowait": lambda solver, instance, args: solver.nowait_solve(instance),
    "general": lambda solver, instance, args: solver.general_solve(instance),
    "oracle": lambda solver, instance, args: solver.oracle_solve(instance, args.grid_step),
}


def _print_rows(rows):
    width = max(len(name) for name, _ in rows)
    for name, value in rows:
        print("{}  {}".format(name.ljust(width), value))


def _print_result(result):
    metrics = result.metrics
    rows = [
        ("method", result.method),
        ("regime", result.regime.kind),
        ("area", fmt_seconds(metrics.area)),
        ("average", fmt_seconds(metrics.average)),
        ("peaks", fmt_list(metrics.peaks)),
        ("final_age", fmt_seconds(metrics.final_age)),
        ("gen_times", fmt_list(result.schedule.gen_times)),
        ("comp_starts", fmt_list(result.schedule.comp_starts)),
    ]
    if result.water_level is not None:
        rows.append(("water_level", fmt_seconds(result.water_level)))
    _print_rows(rows)


def cmd_check(solver, args):
    instance = files.load_instance(args.instance)
    regime = feasibility.classify(instance, solver.tol)
    _print_rows([
        ("packets", str(instance.n)),
        ("deadline", fmt_seconds(instance.deadline)),
        ("min_deadline", fmt_seconds(regime.min_deadline)),
        ("nowait_threshold", fmt_seconds(regime.nowait_threshold)),
        ("closedform_threshold", fmt_seconds(regime.closedform_threshold)),
        ("regime", regime.kind),
    ])
    return EXIT_OK if regime.feasible else EXIT_INFEASIBLE


def cmd_solve(solver, args):
    instance = files.load_instance(args.instance)
    result = METHODS[args.method](solver, instance, args)
    _print_result(result)
    if args.out:
        files.dump_schedule(args.out, result)
        logger.info("wrote %s", args.out)
    return EXIT_OK


def _load_pair(solver, args):
    instance = files.load_instance(args.instance)
    schedule, _ = files.load_schedule(args.schedule)
    require_feasible(instance, schedule, solver.tol)
    return instance, schedule


def cmd_curve(solver, args):
    instance, schedule = _load_pair(solver, args)
    files.write_curve_csv(args.out, sample_curve(instance, schedule, solver.tol))
    return EXIT_OK


def cmd_plot(solver, args):
    instance, schedule = _load_pair(solver, args)
    curve = sample_curve(instance, schedule, solver.tol)
    svg.write_svg(args.out, svg.render_curve(instance, schedule, curve, args.width, args.height))
    return EXIT_OK


def cmd_study(solver, args):
    """Solve the instance at every deadline and compare the results."""
    base = files.load_instance(args.instance)
    if args.out_dir and not os.path.isdir(args.out_dir):
        os.makedirs(args.out_dir)

    status = EXIT_OK
    header = ("deadline", "regime", "method", "area", "average", "peak_variance")
    print("  ".join(header))
    for deadline in args.deadlines:
        instance = base.with_deadline(deadline)
        try:
            result = solver.solve(instance)
        except InfeasibleDeadlineError as e:
            logger.warning("%s", e)
            print("{}  {}".format(fmt_decimal(deadline), feasibility.INFEASIBLE))
            status = EXIT_INFEASIBLE
            continue

        metrics = result.metrics
        print("  ".join((fmt_decimal(deadline), result.regime.kind, result.method,
                         fmt_decimal(metrics.area), fmt_decimal(metrics.average),
                         fmt_decimal(metrics.peak_variance()))))

        if args.out_dir:
            stem = os.path.join(args.out_dir, "deadline-{}".format(fmt_decimal(deadline)))
            curve = sample_curve(instance, result.schedule, solver.tol)
            files.dump_schedule(stem + ".json", result)
            files.write_curve_csv(stem + ".csv", curve)
            svg.write_svg(stem + ".svg", svg.render_curve(instance, result.schedule, curve))
    return status


def _positive_float(text):
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("must be > 0, got {}".format(text))
    return value


def build_parser():
    parser = argparse.ArgumentParser(prog="aoisched",
                                     description="AoI-optimal offline scheduling of update packets.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log at DEBUG level")
    parser.add_argument("--tol", type=float, default=DEFAULT_TOL,
                        help="feasibility tolerance in seconds (default: %(default)s)")
    parser.add_argument("--exact-limit", type=int, default=6,
                        help="largest packet count solved exactly (default: %(default)s)")
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")
    commands.required = True

    check = commands.add_parser("check", help="print the deadline thresholds and the regime")
    check.add_argument("instance", help="instance JSON file")
    check.set_defaults(func=cmd_check)

    solve = commands.add_parser("solve", help="solve an instance")
    solve.add_argument("instance", help="instance JSON file")
    solve.add_argument("--method", choices=sorted(METHODS), default="auto")
    solve.add_argument("--grid-step", type=_positive_float, default=DEFAULT_GRID_STEP,
                       help="lattice step of the oracle method (default: %(default)s)")
    solve.add_argument("--out", help="write the schedule JSON file")
    solve.set_defaults(func=cmd_solve)

    curve = commands.add_parser("curve", help="write the AoI sample path as CSV")
    curve.add_argument("instance", help="instance JSON file")
    curve.add_argument("schedule", help="schedule JSON file")
    curve.add_argument("--out", required=True, help="CSV file to write")
    curve.set_defaults(func=cmd_curve)

    plot = commands.add_parser("plot", help="draw the AoI sample path as SVG")
    plot.add_argument("instance", help="instance JSON file")
    plot.add_argument("schedule", help="schedule JSON file")
    plot.add_argument("--out", required=True, help="SVG file to write")
    plot.add_argument("--width", type=int, default=svg.DEFAULT_WIDTH)
    plot.add_argument("--height", type=int, default=svg.DEFAULT_HEIGHT)
    plot.set_defaults(func=cmd_plot)

    study = commands.add_parser("study", help="solve an instance at several deadlines")
    study.add_argument("instance", help="instance JSON file")
    study.add_argument("--deadlines", type=_positive_float, nargs="+", default=list(STUDY_DEADLINES))
    study.add_argument("--out-dir", help="write schedule, CSV and SVG files per deadline")
    study.set_defaults(func=cmd_study)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if not e.code else EXIT_ERROR

    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")

    try:
        solver = Solver(tol=args.tol, exact_limit=args.exact_limit)
        return args.func(solver, args)
    except (InfeasibleDeadlineError, NoWaitInfeasibleError, RegimeError, ScheduleError) as e:
        print("aoisched: {}".format(e), file=sys.stderr)
        return EXIT_INFEASIBLE
    except (FileFormatError, InstanceError, DimensionError, ValueError, IOError, OSError) as e:
        print("aoisched: {}".format(e), file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

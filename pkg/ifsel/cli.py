"""Command-line front end.

Commands:
    sweep      Weight and consumption of every interface over a distance grid.
               Columns: distance, weight_<id>..., consumption_<id>..., chosen.
    decide     Ranking, L_p and per-parameter contributions at one point.
               Columns: rank, id, weight, lp, power_rank, consumption,
               rx_power, contribution_<parameter>...
    trace      Admission control over a mobility trace.
               Columns: time, distance, battery, wlan_available, attached,
               selected, weight, handover.
    calibrate  Fits the consumption model constants to crossover targets.

Exit status is 0 on success, 1 on config or runtime failure and 2 on usage
errors.
"""

import argparse
import contextlib
import logging
import pathlib
import sys
from typing import IO, Iterator, Optional, Sequence

from ifsel import config as config_lib
from ifsel import scoring, sim
from ifsel.decision import (
    DecisionContext,
    Ranking,
    evaluate_interfaces,
    select_with_admission,
)
from ifsel.errors import CalibrationError, NoCandidateError
from ifsel.utils import configs
from ifsel.utils.logging import TableLogger


DEFAULT_CONFIG = pathlib.Path(__file__).resolve().parents[1] / "configs" / "default.yaml"

# Shortest accepted link distance [m]; the Hata fits turn negative below ~0.15 m.
MIN_DISTANCE = 1.0


def positive_float(value: str) -> float:
    try:
        result = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {value!r}")
    if not result > 0 or result == float("inf"):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {value!r}")
    return result


def distance_m(value: str) -> float:
    result = positive_float(value)
    if result < MIN_DISTANCE:
        raise argparse.ArgumentTypeError(
            f"expected a distance of at least {MIN_DISTANCE:g} m, got {value!r}"
        )
    return result


def fraction(value: str) -> float:
    try:
        result = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {value!r}")
    if not 0.0 <= result <= 1.0:
        raise argparse.ArgumentTypeError(f"expected a value in [0, 1], got {value!r}")
    return result


@contextlib.contextmanager
def open_output(path: Optional[pathlib.Path]) -> Iterator[IO[str]]:
    """Opens `path` for writing, or yields stdout if `path` is None."""
    if path is None:
        yield sys.stdout
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as f:
        yield f


def format_distance(distance: Optional[float]) -> str:
    return "none" if distance is None else f"{distance:.1f} m"


def cmd_sweep(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    config = config_lib.load(args.config)
    d_min = config.sweep.d_min if args.d_min is None else args.d_min
    d_max = config.sweep.d_max if args.d_max is None else args.d_max
    step = config.sweep.step if args.step is None else args.step
    if not d_max > d_min:
        parser.error(f"--d-max ({d_max:g}) must be greater than --d-min ({d_min:g})")
    distance_to_ap = (
        config.sweep.distance_to_ap if args.distance_to_ap is None else args.distance_to_ap
    )

    spec = sim.SweepSpec(
        d_min=d_min,
        d_max=d_max,
        step=step,
        battery_mode=sim.BatteryMode(args.mode),
        scorer=args.scorer,
    )
    result = sim.sweep(
        spec,
        config.interfaces,
        config.calibration,
        config.policy(),
        distance_to_ap=distance_to_ap,
        progress=args.verbose > 0,
    )

    with open_output(args.output) as f:
        result.write(TableLogger(f, fmt=args.format))

    pair = sim.technology_pair(config.interfaces)
    if pair is not None:
        umts, wlan = pair
        for series in ("consumption", "weight"):
            crossover = sim.find_crossover(
                result, f"{series}_{umts.id}", f"{series}_{wlan.id}"
            )
            print(f"{series} crossover: {format_distance(crossover)}")

    chosen = result.chosen
    counts = {iface_id: chosen.count(iface_id) for iface_id in dict.fromkeys(chosen)}
    if len(counts) == 1:
        print(f"chosen: {chosen[0]} at all {len(chosen)} grid points")
    else:
        summary = ", ".join(f"{i} at {n} grid points" for i, n in counts.items())
        print(f"chosen: {summary}")
    return 0


def cmd_decide(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    config = config_lib.load(args.config)
    unknown = sorted(set(args.reject) - set(config.interface_ids))
    if unknown:
        parser.error(f"--reject names unknown interfaces {unknown}")

    policy = config.policy()
    scorer = policy.scorer_named(args.scorer)
    admission = {iface_id: iface_id not in args.reject for iface_id in config.interface_ids}
    ctx = DecisionContext(
        battery=policy.battery(args.battery),
        distance_to_bs=args.distance,
        policy=policy,
        distance_to_ap=(
            config.sweep.distance_to_ap
            if args.distance_to_ap is None
            else args.distance_to_ap
        ),
        admission=admission,
    )

    evaluations = evaluate_interfaces(config.interfaces, ctx, config.calibration, scorer)
    ranking = Ranking.from_weights({e.id: e.weight for e in evaluations})
    by_id = {e.id: e for e in evaluations}

    with open_output(args.output) as f:
        table = TableLogger(f, fmt=args.format)
        for iface_id in ranking.ids:
            evaluation = by_id[iface_id]
            table.log("rank", ranking.rank(iface_id))
            table.log("id", iface_id)
            table.log("weight", evaluation.weight)
            table.log("lp", evaluation.lp)
            table.log("power_rank", evaluation.power_rank)
            table.log("consumption", evaluation.consumption)
            table.log("rx_power", evaluation.rx_power)
            table.log("contribution", scorer.breakdown(evaluation.params, policy.scaling))
            table.flush()
        table.close()

    selected = select_with_admission(ranking, ctx.admission)
    print(f"selected: {'none' if selected is None else selected}")
    return 0


def cmd_trace(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    config = config_lib.load(args.config)
    trace = sim.load_trace(args.trace)
    steps = sim.run_trace(trace, config.interfaces, config.calibration, config.policy())

    with open_output(args.output) as f:
        sim.write_trace(steps, TableLogger(f, fmt=args.format))

    print(f"handovers: {sim.count_handovers(steps)}")
    return 0


def cmd_calibrate(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    config = config_lib.load(args.config)
    calibration = sim.fit_tx_power_ref(config.interfaces, config.calibration, args.target)
    if args.weight_target is not None:
        calibration = sim.fit_consumption_ref(
            config.interfaces,
            calibration,
            config.policy(),
            args.weight_target,
            distance_to_ap=config.sweep.distance_to_ap,
        )

    with open_output(args.output) as f:
        f.write(configs.dump_config({"calibration": calibration.to_dict()}))
    return 0


COMMANDS = {
    "sweep": cmd_sweep,
    "decide": cmd_decide,
    "trace": cmd_trace,
    "calibrate": cmd_calibrate,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--config", "-c", type=pathlib.Path, default=DEFAULT_CONFIG, help="Config yaml"
    )
    common.add_argument(
        "--output", "-o", type=pathlib.Path, help="Output path (default: stdout)"
    )
    common.add_argument(
        "--format", choices=("csv", "pretty"), default="csv", help="Table format"
    )
    common.add_argument(
        "--verbose", "-v", action="count", default=0, help="Log progress (-vv: debug)"
    )

    parser = argparse.ArgumentParser(
        prog="ifsel",
        description="Battery-aware interface selection for UMTS/WLAN overlays.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=__doc__,
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    parser_sweep = subparsers.add_parser(
        "sweep", parents=[common], help="Sweep the base-station distance"
    )
    parser_sweep.add_argument("--d-min", type=distance_m, help="First distance [m]")
    parser_sweep.add_argument("--d-max", type=distance_m, help="Last distance [m]")
    parser_sweep.add_argument("--step", type=positive_float, help="Grid step [m]")
    parser_sweep.add_argument(
        "--mode",
        choices=[mode.value for mode in sim.BatteryMode],
        default=sim.BatteryMode.SUFFICIENT.value,
        help="Battery above or below threshold",
    )
    parser_sweep.add_argument("--scorer", choices=sorted(scoring.SCORERS), help="Scorer")
    parser_sweep.add_argument(
        "--distance-to-ap", type=distance_m, help="Distance to the WLAN AP [m]"
    )

    parser_decide = subparsers.add_parser(
        "decide", parents=[common], help="Rank the interfaces at one point"
    )
    parser_decide.add_argument(
        "--distance", type=distance_m, required=True, help="Distance to BS [m]"
    )
    parser_decide.add_argument(
        "--battery", type=fraction, required=True, help="Battery level in [0, 1]"
    )
    parser_decide.add_argument(
        "--distance-to-ap", type=distance_m, help="Distance to the WLAN AP [m]"
    )
    parser_decide.add_argument(
        "--reject",
        action="append",
        default=[],
        metavar="ID",
        help="Interface without resources (repeatable)",
    )
    parser_decide.add_argument("--scorer", choices=sorted(scoring.SCORERS), help="Scorer")

    parser_trace = subparsers.add_parser(
        "trace", parents=[common], help="Run admission control over a trace"
    )
    parser_trace.add_argument(
        "trace",
        type=pathlib.Path,
        help="Trace CSV: time,distance,battery,wlan_available[,distance_to_ap]",
    )

    parser_calibrate = subparsers.add_parser(
        "calibrate", parents=[common], help="Fit the consumption model"
    )
    parser_calibrate.add_argument(
        "--target",
        type=positive_float,
        required=True,
        help="Consumption crossover distance [m]",
    )
    parser_calibrate.add_argument(
        "--weight-target",
        type=positive_float,
        help="Low-battery weight crossover distance [m]",
    )

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.verbose > 0:
        logging.basicConfig(
            level=logging.DEBUG if args.verbose > 1 else logging.INFO,
            format="%(levelname)s %(name)s: %(message)s",
        )

    try:
        return COMMANDS[args.command](args, parser)
    except (ValueError, NoCandidateError, CalibrationError, OSError) as e:
        print(f"ifsel {args.command}: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

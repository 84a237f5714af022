import argparse
import pathlib
from typing import Optional, Union

from ifsel import config as config_lib
from ifsel import sim
from ifsel.utils import configs


def fit_calibration(
    config: Union[str, pathlib.Path],
    target: float,
    weight_target: Optional[float],
    path: Optional[Union[str, pathlib.Path]],
) -> None:
    config_file = config_lib.load(config)
    calibration = sim.fit_tx_power_ref(
        config_file.interfaces, config_file.calibration, target
    )
    if weight_target is not None:
        calibration = sim.fit_consumption_ref(
            config_file.interfaces,
            calibration,
            config_file.policy(),
            weight_target,
            distance_to_ap=config_file.sweep.distance_to_ap,
        )

    # Check the fit on a grid that contains both targets.
    d_max = 1.5 * max(target, weight_target or 0.0)
    for mode, series, goal in (
        (sim.BatteryMode.SUFFICIENT, "consumption", target),
        (sim.BatteryMode.INSUFFICIENT, "weight", weight_target),
    ):
        if goal is None:
            continue
        spec = sim.SweepSpec(
            d_min=config_file.sweep.d_min,
            d_max=d_max,
            step=config_file.sweep.step,
            battery_mode=mode,
        )
        result = sim.sweep(
            spec,
            config_file.interfaces,
            calibration,
            config_file.policy(),
            distance_to_ap=config_file.sweep.distance_to_ap,
        )
        pair = sim.technology_pair(config_file.interfaces)
        assert pair is not None
        umts, wlan = pair
        crossover = sim.find_crossover(
            result, f"{series}_{umts.id}", f"{series}_{wlan.id}"
        )
        print(f"{series} crossover: {crossover} m (target {goal} m)")

    fragment = configs.dump_config({"calibration": calibration.to_dict()})
    if path is None:
        print(fragment, end="")
        return
    path = pathlib.Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        f.write(fragment)
    print(f"Saved {path}")


def main(args: argparse.Namespace) -> None:
    fit_calibration(**vars(args))


if __name__ == "__main__":
    parser = argparse.ArgumentParser()
    parser.add_argument(
        "--config", "-c", default="configs/default.yaml", help="Path to config"
    )
    parser.add_argument(
        "--target", type=float, default=920.0, help="Consumption crossover [m]"
    )
    parser.add_argument(
        "--weight-target", type=float, default=600.0, help="Weight crossover [m]"
    )
    parser.add_argument("--path", help="Path for the calibration fragment")
    args = parser.parse_args()

    main(args)

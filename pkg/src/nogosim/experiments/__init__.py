"""Named experiment drivers with a stable catalog.

Every experiment takes a master seed, a trial count, and a dict of
resolved parameters, and returns an :class:`~nogosim.report.ExperimentReport`.
The catalog names are a stable contract: ks-color, ks-spin1-order,
bell-chsh, bell-original, ck-singlet, ck-classical, dht.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..report import ExperimentReport
from .bell import run_bell_chsh, run_bell_original
from .conwaykochen import run_ck_classical, run_ck_singlet
from .dht import run_dht
from .kscolor import BLUE_FILTER, RICH_BLUE, run_ks_color
from .spin1order import run_ks_spin1_order

__all__ = [
    "ParamSpec",
    "ExperimentDef",
    "EXPERIMENTS",
    "list_experiments",
    "run_experiment",
]


@dataclass(frozen=True)
class ParamSpec:
    """One experiment parameter: how to parse it and its default value."""

    name: str
    kind: str  # "vector3" | "angles" | "choice" | "int" | "axis-order"
    default: object
    help: str
    choices: tuple[str, ...] = ()
    count: int = 0  # number of comma-separated values for "angles"


@dataclass(frozen=True)
class ExperimentDef:
    name: str
    summary: str
    default_trials: int
    params: tuple[ParamSpec, ...]
    runner: Callable[[int, int, dict], ExperimentReport]


_UNIFORM3 = (0.5773502691896258, 0.5773502691896258, 0.5773502691896258)

_DEFS = (
    ExperimentDef(
        name="ks-color",
        summary="color-sphere filter question, frame measurement, and "
                "three-independent-questions count",
        default_trials=20000,
        params=(
            ParamSpec("state", "vector3", RICH_BLUE,
                      "color under test as r,g,b (normalized on input)"),
            ParamSpec("filter", "vector3", BLUE_FILTER,
                      "filter color as r,g,b (normalized on input)"),
        ),
        runner=run_ks_color,
    ),
    ExperimentDef(
        name="ks-spin1-order",
        summary="sequential squared-spin measurements in all six orders",
        default_trials=10000,
        params=(
            ParamSpec("state", "vector3", _UNIFORM3,
                      "spin-1 amplitudes k1,k2,k3 (real, normalized on input)"),
        ),
        runner=run_ks_spin1_order,
    ),
    ExperimentDef(
        name="bell-chsh",
        summary="four-axis correlator sum S against the classical bound 2",
        default_trials=20000,
        params=(
            ParamSpec("angles", "angles", (0.0, 45.0, 90.0, 135.0),
                      "four coplanar axis angles in degrees", count=4),
            ParamSpec("mode", "choice", "simultaneous",
                      "trial procedure",
                      choices=("simultaneous", "l-then-r", "r-then-l")),
            ParamSpec("scan_steps", "int", 360,
                      "grid size for the coplanar angle scan (>= 4)"),
        ),
        runner=run_bell_chsh,
    ),
    ExperimentDef(
        name="bell-original",
        summary="three-axis inequality |E(a,b) - E(a,c)| <= 1 - E(b,c)",
        default_trials=20000,
        params=(
            ParamSpec("angles", "angles", (0.0, 135.0, 270.0),
                      "three coplanar axis angles in degrees", count=3),
        ),
        runner=run_bell_original,
    ),
    ExperimentDef(
        name="ck-singlet",
        summary="two-spin-1 singlet: full frame on side I, one squared "
                "component on side II, perfect agreement",
        default_trials=10000,
        params=(
            ParamSpec("axis", "choice", "x", "side-II axis",
                      choices=("x", "y", "z")),
        ),
        runner=run_ck_singlet,
    ),
    ExperimentDef(
        name="ck-classical",
        summary="classical shared-seed counter-model: agreement only when "
                "the orderings align",
        default_trials=100000,
        params=(
            ParamSpec("frame1", "axis-order", ("x", "y", "z"),
                      "side-I axis ordering, e.g. x,y,z"),
            ParamSpec("frame2", "axis-order", ("y", "x", "z"),
                      "side-II axis ordering"),
            ParamSpec("shared_axis", "choice", "y", "axis compared across sides",
                      choices=("x", "y", "z")),
        ),
        runner=run_ck_classical,
    ),
    ExperimentDef(
        name="dht",
        summary="ancilla-carried distant measurement read out after reunion",
        default_trials=10000,
        params=(
            ParamSpec("variant", "choice", "swap", "two-qubit gate used on each side",
                      choices=("measurement", "swap")),
        ),
        runner=run_dht,
    ),
)

EXPERIMENTS: dict[str, ExperimentDef] = {d.name: d for d in _DEFS}


def list_experiments() -> tuple[ExperimentDef, ...]:
    """The stable experiment catalog, in its documented order."""
    return _DEFS


def run_experiment(name: str, seed: int, trials: int | None = None,
                   params: dict | None = None) -> ExperimentReport:
    """Run a catalog experiment with defaults for anything not supplied."""
    if name not in EXPERIMENTS:
        raise KeyError(f"unknown experiment {name!r}")
    exp = EXPERIMENTS[name]
    resolved = {spec.name: spec.default for spec in exp.params}
    if params:
        unknown = set(params) - set(resolved)
        if unknown:
            raise ValueError(f"unknown parameters for {name}: {sorted(unknown)}")
        resolved.update(params)
    return exp.runner(seed, trials if trials is not None else exp.default_trials,
                      resolved)

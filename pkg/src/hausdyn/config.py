"""Run configuration: a flat TOML document with strict key checking.

Every key is optional.  Calibration keys carry the baseline values by
default; see README.md for the full schema.

    experiment = "sweep"
    figure = "fig5"
    tau_grid = [0.0, 0.05, 0.1]
    sigma_n = 0.1
"""
from __future__ import annotations

import sys
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

import tomli_w

from hausdyn.errors import ConfigParseError, ConfigValidationError, InvalidCalibration
from hausdyn.model import Calibration, TaxPolicy
from hausdyn.simulation import (
    DEFAULT_HORIZON,
    DEFAULT_TAX_GRID,
    Experiment,
    ShockKind,
    ShockSpec,
)

COMMANDS = ("steady", "coeffs", "irf", "sweep", "simulate", "verify")
FORMATS = ("csv", "svg")
CALIBRATION_KEYS = tuple(f.name for f in fields(Calibration))


@dataclass(frozen=True)
class RunConfig:
    calibration: Calibration = field(default_factory=Calibration)
    experiment: str = "irf"
    shock: ShockSpec = field(default_factory=ShockSpec)
    tax_grid: tuple = DEFAULT_TAX_GRID
    tax_policy: TaxPolicy = field(default_factory=TaxPolicy)
    figure: Experiment = Experiment.FIG1
    horizon: int = DEFAULT_HORIZON
    seed: int = 0
    periods: int = 1000
    output_dir: Path = Path("out")
    formats: tuple = FORMATS


def _number(key, value):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigValidationError(f"{key} must be a number, got {value!r}")
    return float(value)


def _integer(key, value, minimum):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigValidationError(f"{key} must be an integer, got {value!r}")
    if value < minimum:
        raise ConfigValidationError(f"{key} must be ≥ {minimum}")
    return value


def _string(key, value):
    if not isinstance(value, str):
        raise ConfigValidationError(f"{key} must be a string, got {value!r}")
    return value


def _choice(key, value, allowed):
    value = _string(key, value)
    if value not in allowed:
        raise ConfigValidationError(f"{key} must be one of {', '.join(allowed)}; got {value!r}")
    return value


def from_mapping(doc: dict) -> RunConfig:
    """Validate a decoded key/value mapping and build a RunConfig."""
    handlers = set(CALIBRATION_KEYS) | {
        "experiment", "shock", "size_sd", "tau_s", "tau_f", "tau_grid", "figure",
        "horizon", "seed", "periods", "output_dir", "formats",
    }
    for key in doc:
        if key not in handlers:
            raise ConfigParseError(f"unknown key {key!r}")

    cal_kwargs = {k: _number(k, doc[k]) for k in CALIBRATION_KEYS if k in doc}
    kwargs = {}
    try:
        kwargs["calibration"] = Calibration(**cal_kwargs)
        kwargs["tax_policy"] = TaxPolicy(
            tau_s=_number("tau_s", doc.get("tau_s", 0.0)),
            tau_f=_number("tau_f", doc.get("tau_f", 0.0)),
        )
    except InvalidCalibration as exc:
        raise ConfigValidationError(str(exc)) from exc

    if "experiment" in doc:
        kwargs["experiment"] = _choice("experiment", doc["experiment"], COMMANDS)
    kind = _choice("shock", doc.get("shock", ShockKind.INTEREST_RATE.value),
                   [k.value for k in ShockKind])
    size = _number("size_sd", doc.get("size_sd", 1.0))
    if not size > 0:
        raise ConfigValidationError("size_sd must be > 0")
    kwargs["shock"] = ShockSpec(ShockKind(kind), size)

    if "tau_grid" in doc:
        grid = doc["tau_grid"]
        if not isinstance(grid, list) or not grid:
            raise ConfigValidationError("tau_grid must be a nonempty list of rates")
        grid = tuple(_number("tau_grid", g) for g in grid)
        if any(g < 0 for g in grid):
            raise ConfigValidationError("tau_grid rates must be ≥ 0")
        kwargs["tax_grid"] = grid
    if "figure" in doc:
        kwargs["figure"] = Experiment(
            _choice("figure", doc["figure"], [e.value for e in Experiment])
        )
    if "horizon" in doc:
        kwargs["horizon"] = _integer("horizon", doc["horizon"], 1)
    if "seed" in doc:
        kwargs["seed"] = _integer("seed", doc["seed"], 0)
        if kwargs["seed"] >= 2**64:
            raise ConfigValidationError("seed must be < 2**64")
    if "periods" in doc:
        kwargs["periods"] = _integer("periods", doc["periods"], 1)
    if "output_dir" in doc:
        kwargs["output_dir"] = Path(_string("output_dir", doc["output_dir"]))
    if "formats" in doc:
        formats = doc["formats"]
        if not isinstance(formats, list):
            raise ConfigValidationError("formats must be a list")
        kwargs["formats"] = tuple(_choice("formats", f, FORMATS) for f in formats)
    return RunConfig(**kwargs)


def parse_config(text: str) -> RunConfig:
    """Parse a TOML configuration document.

    Raises
    ------
    ConfigParseError
        Malformed TOML (the message carries line and column) or an unknown key.
    ConfigValidationError
        A value violates a model or run invariant; the message names it.
    """
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigParseError(f"invalid config: {exc}") from exc
    for key, value in doc.items():
        if isinstance(value, dict):
            raise ConfigParseError(f"key {key!r}: tables are not allowed, the schema is flat")
    return from_mapping(doc)


def load_config(path) -> RunConfig:
    return parse_config(Path(path).read_text(encoding="utf-8"))


def to_mapping(cfg: RunConfig) -> dict:
    doc = asdict(cfg.calibration)
    doc.update(
        experiment=cfg.experiment,
        shock=cfg.shock.kind.value,
        size_sd=cfg.shock.size_sd,
        tau_s=cfg.tax_policy.tau_s,
        tau_f=cfg.tax_policy.tau_f,
        tau_grid=list(cfg.tax_grid),
        figure=cfg.figure.value,
        horizon=cfg.horizon,
        seed=cfg.seed,
        periods=cfg.periods,
        output_dir=str(cfg.output_dir),
        formats=list(cfg.formats),
    )
    return doc


def dump_config(cfg: RunConfig) -> str:
    """Serialize to TOML; floats are written with round-trip precision."""
    return tomli_w.dumps(to_mapping(cfg))

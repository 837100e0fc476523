"""Run configuration: JSON schema, validation, and round-trip serialization."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

import jsonschema

from .dispersion import PARAM_SETS, ParamSet, get_param_set
from .errors import ConfigError
from .scenarios import BATHYMETRIES, Scenario, WaveTrainSpec, builtin_scenario

_WAVE_TRAIN_SCHEMA = {
    "type": "object",
    "properties": {
        "amplitude": {"type": "number", "minimum": 0},
        "period": {"type": "number", "exclusiveMinimum": 0},
        "n_crests": {"type": "integer", "minimum": 1},
        "center_x": {"type": "number"},
    },
    "additionalProperties": False,
}

_SCENARIO_SCHEMA = {
    "type": "object",
    "properties": {
        "name": {"type": "string"},
        "x_left": {"type": "number"},
        "x_right": {"type": "number"},
        "bathymetry": {"type": "string"},
        "still_water_level": {"type": "number"},
        "wave_train": _WAVE_TRAIN_SCHEMA,
        "gauges": {"type": "array", "items": {"type": "number"}},
        "mollify_delta": {"type": "number", "minimum": 0},
        "mollify_passes": {"type": "integer", "minimum": 0},
    },
    "required": ["name", "x_left", "x_right", "bathymetry", "still_water_level"],
    "additionalProperties": False,
}

#: published schema of the JSON run configuration
CONFIG_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "bouss1d run configuration",
    "type": "object",
    "properties": {
        "scenario": {"oneOf": [{"type": "string"}, _SCENARIO_SCHEMA]},
        "h": {"type": "number", "exclusiveMinimum": 0},
        "cfl": {"type": "number", "exclusiveMinimum": 0},
        "lambda0": {"type": "number", "minimum": 0},
        "adaptive_lambda": {"type": "boolean"},
        "param_set": {
            "oneOf": [
                {"type": "string"},
                {
                    "type": "array",
                    "items": {"type": "number"},
                    "minItems": 3,
                    "maxItems": 3,
                },
            ]
        },
        "t_end": {"type": "number", "exclusiveMinimum": 0},
        "gauges": {"type": "array", "items": {"type": "number"}},
        "out_dir": {"type": "string"},
        "snapshots": {"type": "array", "items": {"type": "number", "minimum": 0}},
        "gravity": {"type": "number", "exclusiveMinimum": 0},
    },
    "required": ["scenario", "h"],
    "additionalProperties": False,
}


@dataclass
class RunConfig:
    """Validated description of one solver run."""

    scenario: Scenario
    h: float
    cfl: float
    lambda0: float
    adaptive_lambda: bool
    param_set: ParamSet
    t_end: float
    gauges: tuple
    out_dir: str
    snapshots: tuple = ()
    gravity: float = 9.81

    def effective_scenario(self) -> Scenario:
        return self.scenario.with_overrides(
            h=self.h,
            cfl=self.cfl,
            lambda0=self.lambda0,
            adaptive_lambda=self.adaptive_lambda,
            t_end=self.t_end,
            gauges=tuple(self.gauges),
        )

    def to_dict(self) -> dict:
        sc = self.scenario
        return {
            "scenario": {
                "name": sc.name,
                "x_left": sc.x_left,
                "x_right": sc.x_right,
                "bathymetry": sc.bathymetry,
                "still_water_level": sc.still_water_level,
                "wave_train": asdict(sc.wave_train),
                "mollify_delta": sc.mollify_delta,
                "mollify_passes": sc.mollify_passes,
            },
            "h": self.h,
            "cfl": self.cfl,
            "lambda0": self.lambda0,
            "adaptive_lambda": self.adaptive_lambda,
            "param_set": (
                self.param_set.name
                if self.param_set.name in PARAM_SETS
                else [self.param_set.alpha_t, self.param_set.beta_t, self.param_set.gamma_t]
            ),
            "t_end": self.t_end,
            "gauges": list(self.gauges),
            "out_dir": self.out_dir,
            "snapshots": list(self.snapshots),
            "gravity": self.gravity,
        }


def parse_config(raw: dict) -> RunConfig:
    """Validate a raw JSON document and resolve it to a RunConfig."""
    try:
        jsonschema.validate(raw, CONFIG_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise ConfigError(f"config schema violation: {exc.message}") from exc

    sc_spec = raw["scenario"]
    if isinstance(sc_spec, str):
        try:
            scenario = builtin_scenario(sc_spec)
        except KeyError as exc:
            raise ConfigError(str(exc)) from exc
    else:
        wt = sc_spec.get("wave_train", {})
        if sc_spec["bathymetry"] not in BATHYMETRIES:
            raise ConfigError(
                f"unknown bathymetry {sc_spec['bathymetry']!r}; known: {sorted(BATHYMETRIES)}"
            )
        scenario = Scenario(
            name=sc_spec["name"],
            x_left=sc_spec["x_left"],
            x_right=sc_spec["x_right"],
            bathymetry=sc_spec["bathymetry"],
            still_water_level=sc_spec["still_water_level"],
            wave_train=WaveTrainSpec(**wt),
            gauges=tuple(sc_spec.get("gauges", ())),
            mollify_delta=sc_spec.get("mollify_delta", 0.0),
            mollify_passes=sc_spec.get("mollify_passes", 0),
        )

    try:
        pset = get_param_set(raw.get("param_set", scenario.param_set))
    except (KeyError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc

    h = float(raw["h"])
    domain = scenario.x_right - scenario.x_left
    if domain / h < 8:
        raise ConfigError(f"grid too small: {domain / h:.1f} cells; need >= 8")

    cfg = RunConfig(
        scenario=scenario,
        h=h,
        cfl=float(raw.get("cfl", scenario.cfl)),
        lambda0=float(raw.get("lambda0", scenario.lambda0)),
        adaptive_lambda=bool(raw.get("adaptive_lambda", scenario.adaptive_lambda)),
        param_set=pset,
        t_end=float(raw.get("t_end", scenario.t_end)),
        gauges=tuple(raw.get("gauges", scenario.gauges)),
        out_dir=raw.get("out_dir", "results"),
        snapshots=tuple(raw.get("snapshots", ())),
        gravity=float(raw.get("gravity", 9.81)),
    )

    grid = cfg.effective_scenario().make_grid()
    for x in cfg.gauges:
        if not (grid.x_left <= x < grid.x_right):
            raise ConfigError(f"gauge at x={x} outside domain [{grid.x_left}, {grid.x_right})")
    for t in cfg.snapshots:
        if t > cfg.t_end:
            raise ConfigError(f"snapshot time {t} beyond t_end={cfg.t_end}")
    if cfg.lambda0 < 0:
        raise ConfigError("lambda0 must be >= 0")
    return cfg


def load_config(path: str | Path) -> RunConfig:
    try:
        raw = json.loads(Path(path).read_text())
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config root must be a JSON object")
    return parse_config(raw)

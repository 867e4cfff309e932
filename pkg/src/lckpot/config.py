"""Run configuration: a YAML file mapped onto nested dataclasses.

Every key has a default, unknown keys are rejected, and
:meth:`RunConfig.resolved` gives the complete dictionary embedded in
run-records.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import yaml

__all__ = ["ConfigError", "RunConfig", "SUITES", "load_config", "parse_config"]

SUITES = ("vuletescu", "regmax", "psh", "glue", "neglog", "levi", "positivize", "oracle")


class ConfigError(ValueError):
    """Invalid configuration; ``line``/``column`` are set for YAML syntax errors."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)
        self.line, self.column = line, column


@dataclass
class ModelConfig:
    n: int = 2
    lam: float = 2.0

    _aliases = {"lambda": "lam"}


@dataclass
class Tolerances:
    psd: float = 1e-9
    strict_margin: float = 1e-6
    automorphy: float = 1e-10
    form_deviation: float = 1e-11
    fidelity: float = 1e-13
    regmax: float = 1e-12
    grad_floor: float = 1e-6
    margin_floor: float = 1e-4
    oracle_factor: float = 10.0


@dataclass
class SamplerConfig:
    seed: int = 0
    count: int = 10_000


@dataclass
class PipelineConfig:
    c: float = 0.5
    eps_scale: float = 0.1
    eps_band: float = 0.02
    delta: float = 1e-2


@dataclass
class VuletescuConfig:
    Q: str = "z1*z2"
    A: float = 3.0
    threshold: float = -0.4
    points: int = 1000


@dataclass
class RegmaxConfig:
    pairs: int = 100_000


@dataclass
class PshConfig:
    field: str = "phi"
    twisted: bool = True
    pairs: int = 20


@dataclass
class GlueConfig:
    phi: str = "phi"
    psi: str | None = None
    weak_psi: str = "|z1|^2/|z|^2"
    eps: float | None = None


@dataclass
class NeglogConfig:
    A_min: float = -10.0
    A_max: float = 10.0
    A_steps: int = 41


@dataclass
class PositivizeConfig:
    field: str = "phi"
    count: int = 100_000


@dataclass
class OracleConfig:
    points: int = 100
    steps: list = field(default_factory=lambda: [1e-3, 1e-4])


@dataclass
class OutputConfig:
    dir: str | None = None
    csv: bool = True
    svg: bool = False
    csv_rows: int = 2000


@dataclass
class RunConfig:
    model: ModelConfig = field(default_factory=ModelConfig)
    fields: dict = field(default_factory=lambda: {"phi": "1 + 3*Re(z1*z2)/|z|^2"})
    suites: list = field(default_factory=lambda: ["all"])
    tolerances: Tolerances = field(default_factory=Tolerances)
    sampler: SamplerConfig = field(default_factory=SamplerConfig)
    pipeline: PipelineConfig = field(default_factory=PipelineConfig)
    vuletescu: VuletescuConfig = field(default_factory=VuletescuConfig)
    regmax: RegmaxConfig = field(default_factory=RegmaxConfig)
    psh: PshConfig = field(default_factory=PshConfig)
    glue: GlueConfig = field(default_factory=GlueConfig)
    neglog: NeglogConfig = field(default_factory=NeglogConfig)
    positivize: PositivizeConfig = field(default_factory=PositivizeConfig)
    oracle: OracleConfig = field(default_factory=OracleConfig)
    output: OutputConfig = field(default_factory=OutputConfig)

    def selected_suites(self) -> list[str]:
        if "all" in self.suites:
            return list(SUITES)
        return [s for s in SUITES if s in self.suites]

    def resolved(self) -> dict:
        return _to_dict(self)


def _to_dict(obj) -> Any:
    if dataclasses.is_dataclass(obj):
        rev = {v: k for k, v in getattr(type(obj), "_aliases", {}).items()}
        return {rev.get(f.name, f.name): _to_dict(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {k: _to_dict(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_to_dict(v) for v in obj]
    return obj


def _coerce(value, default, path):
    if isinstance(default, bool):
        if not isinstance(value, bool):
            raise ConfigError(f"{path}: expected true/false, got {value!r}")
        return value
    if isinstance(default, int) and not isinstance(default, bool):
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"{path}: expected an integer, got {value!r}")
        return value
    if isinstance(default, float):
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{path}: expected a number, got {value!r}")
        return float(value)
    return value


def _build(cls, data, path):
    if data is None:
        return cls()
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: expected a table, got {type(data).__name__}")
    aliases = getattr(cls, "_aliases", {})
    names = {f.name: f for f in dataclasses.fields(cls)}
    obj = cls()
    for key, value in data.items():
        name = aliases.get(key, key)
        if name not in names or (key in aliases.values() and key not in aliases):
            allowed = sorted([k for k in names if k not in aliases.values()] + list(aliases))
            raise ConfigError(f"unknown key {path}.{key} (allowed: {', '.join(allowed)})".replace("root.", ""))
        default = getattr(obj, name)
        sub = f"{path}.{key}".replace("root.", "")
        if dataclasses.is_dataclass(default):
            value = _build(type(default), value, sub)
        else:
            value = _coerce(value, default, sub)
        setattr(obj, name, value)
    return obj


def parse_config(text: str) -> RunConfig:
    """Parse YAML text into a validated :class:`RunConfig`."""
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        if mark is not None:
            raise ConfigError(str(getattr(exc, "problem", exc)), mark.line + 1, mark.column + 1) from None
        raise ConfigError(str(exc)) from None
    cfg = _build(RunConfig, data or {}, "root")
    if not isinstance(cfg.fields, dict) or not all(isinstance(v, str) for v in cfg.fields.values()):
        raise ConfigError("fields: expected a table of name: expression strings")
    if isinstance(cfg.suites, str):
        cfg.suites = [cfg.suites]
    bad = [s for s in cfg.suites if s != "all" and s not in SUITES]
    if bad:
        raise ConfigError(f"suites: unknown suite {bad[0]!r} (choose from {', '.join(SUITES)}, all)")
    if cfg.model.n < 1:
        raise ConfigError("model.n must be at least 1")
    if cfg.model.lam <= 1:
        raise ConfigError("model.lambda must exceed 1")
    return cfg


def load_config(path) -> RunConfig:
    return parse_config(Path(path).read_text())

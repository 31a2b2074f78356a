"""Experiment configuration: presets, key-value config files and the config hash.

Precedence is preset < environment < config file < CLI flags. Config files are
plain ``key=value`` text (parsed with python-dotenv); keys are the field names
of SweConfig, EsnConfig and ExperimentConfig, with ``lambda`` for the ridge
penalty.
"""

import hashlib
import json
import math
import os
from dataclasses import MISSING, dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from dotenv import dotenv_values, find_dotenv

from datagen.build import SAMPLE_DT, TEST_T_END, TRAIN_T_END, TRANSFER_T_END, parse_alpha
from datagen.sampling import DEFAULT_ALPHA, DEFAULT_J, TRAIN_K_MAX, default_suites, is_reference
from datagen.types import TestSuiteSpec
from esn.types import EsnConfig
from swe_core.types import SweConfig

from .errors import ConfigError

DEFAULT_OUTPUT_DIR = "runs"
DEFAULT_RESIDUAL_THRESHOLD = 0.05

# Overrides on top of the dataclass defaults, which already hold the full-scale setup.
PRESETS: Dict[str, Dict[str, Any]] = {
    "paper": {},
    "desk": {
        "dx": 0.4,
        "D": 1000,
        "N": 200,
        "M": 10,
        "J": 5,
        "test_t_end": 30.0,
    },
}

PRESET_ALIASES = {"full": "paper"}

_ESN_ALIASES = {"lambda": "lambda_"}


@dataclass(frozen=True)
class ExperimentConfig:
    """One experiment: physics, reservoir, dataset sizes and run settings.

    ``suites`` selects testing-matrix rows by name (empty means all nine).
    ``alphas`` replaces the (0, alpha, inf) branches of the shifted suites.
    ``output_dir`` and ``workers`` do not change results and are left out of
    the config hash.
    """

    swe: SweConfig = field(default_factory=SweConfig)
    esn: EsnConfig = field(default_factory=EsnConfig)
    M: int = 50
    J: int = DEFAULT_J
    alpha: float = DEFAULT_ALPHA
    alphas: Tuple[float, ...] = ()
    train_t_end: float = TRAIN_T_END
    test_t_end: float = TEST_T_END
    transfer_t_end: float = TRANSFER_T_END
    sample_dt: float = SAMPLE_DT
    train_k_max: int = TRAIN_K_MAX
    residual_threshold: float = DEFAULT_RESIDUAL_THRESHOLD
    suites: Tuple[str, ...] = ()
    preset: str = "paper"
    output_dir: Path = Path(DEFAULT_OUTPUT_DIR)
    workers: int = 1

    def __post_init__(self) -> None:
        if self.preset not in PRESETS:
            raise ConfigError(f"unknown preset {self.preset!r}, expected one of {sorted(PRESETS)}")
        if self.M < 1 or self.J < 1:
            raise ConfigError(f"M and J must be at least 1, got M={self.M}, J={self.J}")
        if self.alpha < 0 or math.isnan(self.alpha) or any(a < 0 or math.isnan(a) for a in self.alphas):
            raise ConfigError("alpha values must be non-negative")
        if min(self.train_t_end, self.test_t_end, self.transfer_t_end, self.sample_dt) <= 0:
            raise ConfigError("time horizons and sample_dt must be positive")
        if self.train_k_max < 1:
            raise ConfigError(f"train_k_max must be at least 1, got {self.train_k_max}")
        if self.workers < 1:
            raise ConfigError(f"workers must be at least 1, got {self.workers}")
        if self.esn.N != 2 * self.swe.n:
            raise ConfigError(f"esn N={self.esn.N} but the grid has 2n={2 * self.swe.n} values")
        known = {suite["name"] for suite in default_suites()}
        unknown = [name for name in self.suites if name not in known]
        if unknown:
            raise ConfigError(f"unknown suites {unknown}")

    @property
    def seed(self) -> int:
        return self.esn.seed

    def _table(self) -> List[TestSuiteSpec]:
        specs = default_suites(self.J, self.alpha)
        if self.alphas:
            for spec in specs:
                if not is_reference(spec["h_mean"], spec["u_mean"]):
                    spec["alpha_values"] = list(self.alphas)
        return specs

    def suite_specs(self) -> List[TestSuiteSpec]:
        """Selected testing-matrix rows, in table order."""
        specs = self._table()
        if self.suites:
            specs = [spec for spec in specs if spec["name"] in self.suites]
        return specs

    def suite_spec(self, name: str) -> TestSuiteSpec:
        """Any row of the table by name, selected or not."""
        for spec in self._table():
            if spec["name"] == name:
                return spec
        raise ConfigError(f"unknown suite {name!r}")

    def suite_index(self, name: str) -> int:
        """Row of a suite in the full table; keys its random streams."""
        for i, spec in enumerate(default_suites()):
            if spec["name"] == name:
                return i
        raise ConfigError(f"unknown suite {name!r}")

    def as_dict(self) -> Dict[str, Any]:
        """Canonical, JSON-ready view of everything that affects results."""
        return {
            "swe": self.swe.as_dict(),
            "esn": self.esn.as_dict(),
            "M": self.M,
            "J": self.J,
            "alpha": self.alpha,
            "alphas": [a if math.isfinite(a) else "inf" for a in self.alphas],
            "train_t_end": self.train_t_end,
            "test_t_end": self.test_t_end,
            "transfer_t_end": self.transfer_t_end,
            "sample_dt": self.sample_dt,
            "train_k_max": self.train_k_max,
            "residual_threshold": self.residual_threshold,
            "suites": list(self.suites),
            "preset": self.preset,
        }

    def config_hash(self) -> str:
        """SHA-256 of the canonical JSON, first 16 hex digits."""
        canonical = json.dumps(self.as_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode()).hexdigest()[:16]


def _defaults_by_key() -> Dict[str, Tuple[str, Any]]:
    """Map every accepted key to (section, default value)."""
    keys: Dict[str, Tuple[str, Any]] = {}
    for section, instance in (("swe", SweConfig()), ("esn", EsnConfig())):
        for f in fields(instance):
            keys[f.name] = (section, getattr(instance, f.name))
    for alias, name in _ESN_ALIASES.items():
        keys[alias] = keys.pop(name)
    for f in fields(ExperimentConfig):
        if f.name in ("swe", "esn"):
            continue
        default = f.default if f.default_factory is MISSING else f.default_factory()  # type: ignore[misc]
        keys[f.name] = ("experiment", default)
    return keys


def resolve_preset(name: str) -> str:
    """Canonical preset name; "full" is accepted for "paper"."""
    name = PRESET_ALIASES.get(name, name)
    if name not in PRESETS:
        raise ConfigError(f"unknown preset {name!r}, expected one of {sorted(PRESETS)}")
    return name


def _parse_bool(key: str, raw: str) -> bool:
    text = raw.strip().lower()
    if text in ("1", "true", "yes", "on"):
        return True
    if text in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"{key}: expected a boolean, got {raw!r}")


def _split(raw: str) -> List[str]:
    return [item.strip() for item in raw.split(",") if item.strip()]


def coerce_value(key: str, value: Any) -> Any:
    """Convert a raw (string) or typed value to the type of the key's default."""
    keys = _defaults_by_key()
    if key not in keys:
        raise ConfigError(f"unknown config key {key!r}")
    _, default = keys[key]
    try:
        if key == "preset":
            return resolve_preset(str(value))
        if key == "alphas":
            items = _split(value) if isinstance(value, str) else list(value)
            return tuple(parse_alpha(str(item)) for item in items)
        if key == "suites":
            return tuple(_split(value) if isinstance(value, str) else list(value))
        if isinstance(default, bool):
            return value if isinstance(value, bool) else _parse_bool(key, str(value))
        if isinstance(default, int):
            return int(value)
        if isinstance(default, float):
            return float(value)
        if isinstance(default, Path):
            return Path(value)
        return str(value)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"{key}: cannot parse {value!r} ({e})") from e


def load_config_file(path: Path) -> Dict[str, Any]:
    """Typed values from a key=value config file."""
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    values: Dict[str, Any] = {}
    for key, raw in dotenv_values(path).items():
        if raw is None:
            raise ConfigError(f"{path}: key {key!r} has no value")
        values[key] = coerce_value(key, raw)
    return values


def environment_defaults() -> Dict[str, Any]:
    """SWESN_OUTPUT_DIR and SWESN_WORKERS from the environment, else from ./.env."""
    env = {**dotenv_values(find_dotenv(usecwd=True)), **os.environ}
    values: Dict[str, Any] = {}
    output_dir = env.get("SWESN_OUTPUT_DIR")
    if output_dir:
        values["output_dir"] = coerce_value("output_dir", output_dir)
    workers = env.get("SWESN_WORKERS")
    if workers:
        values["workers"] = coerce_value("workers", workers)
    return values


def make_config(values: Dict[str, Any]) -> ExperimentConfig:
    """Build an ExperimentConfig from a flat key -> value mapping."""
    keys = _defaults_by_key()
    sections: Dict[str, Dict[str, Any]] = {"swe": {}, "esn": {}, "experiment": {}}
    for key, value in values.items():
        if key not in keys:
            raise ConfigError(f"unknown config key {key!r}")
        section, _ = keys[key]
        name = _ESN_ALIASES.get(key, key)
        sections[section][name] = coerce_value(key, value)
    return ExperimentConfig(
        swe=SweConfig(**sections["swe"]),
        esn=EsnConfig(**sections["esn"]),
        **sections["experiment"],
    )


def build_config(
    path: Optional[Path] = None,
    overrides: Optional[Dict[str, Any]] = None,
    preset: Optional[str] = None,
) -> ExperimentConfig:
    """Resolve preset, environment, config file and CLI overrides into one config."""
    overrides = {k: v for k, v in (overrides or {}).items() if v is not None}
    file_values = load_config_file(path) if path else {}
    name = resolve_preset(overrides.get("preset") or file_values.get("preset") or preset or "paper")

    values: Dict[str, Any] = {"preset": name}
    values.update(PRESETS[name])
    values.update(environment_defaults())
    values.update(file_values)
    values.update(overrides)
    return make_config(values)


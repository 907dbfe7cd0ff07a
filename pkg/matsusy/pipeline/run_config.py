"""命令行运行配置：Settings 默认值 → 配置文件 → 命令行参数"""

from dataclasses import dataclass, field, fields
from typing import Any, Dict, Mapping, Optional

from matsusy.core.catalog import ParamSet
from matsusy.core.errors import ConfigError
from matsusy.core.models import ModelParams
from matsusy.settings import Settings

COMMANDS = ("list", "verify", "spectrum", "ladder", "reduce", "catalog")
FORMATS = ("table", "structured-text", "json", "csv")


@dataclass
class RunConfig:
    command: str
    family: Optional[str] = None
    model: Optional[str] = None
    params: Dict[str, float] = field(default_factory=dict)
    kappa: Optional[float] = None
    dim: Optional[int] = None
    levels: int = 3
    n: int = 1
    xmin: Optional[float] = None
    xmax: Optional[float] = None
    N: Optional[int] = None
    L: Optional[float] = None
    epsilon: Optional[float] = None
    convention: str = "minus"
    format: str = "table"
    output: Optional[str] = None
    states_csv: Optional[str] = None
    shape_tol: Optional[float] = None
    determining_tol: Optional[float] = None
    gap_tol: Optional[float] = None
    reduction_tol: Optional[float] = None
    annihilation_tol: Optional[float] = None
    memory_limit_mb: Optional[float] = None

    @staticmethod
    def option_names() -> list:
        return [f.name for f in fields(RunConfig) if f.name not in ("command", "params")]

    @staticmethod
    def param_names() -> list:
        return sorted(set(ParamSet.names()) | {f.name for f in fields(ModelParams)})

    @classmethod
    def accepted_keys(cls) -> list:
        return sorted(set(cls.option_names()) | set(cls.param_names()))

    @classmethod
    def from_layers(
        cls,
        command: str,
        settings: Settings,
        file_values: Optional[Mapping[str, Any]] = None,
        cli_values: Optional[Mapping[str, Any]] = None,
    ) -> "RunConfig":
        """后一层覆盖前一层；None 表示该层未给出"""
        if command not in COMMANDS:
            raise ConfigError(f"unknown command: {command} (expected one of {', '.join(COMMANDS)})")
        config = cls(command=command)
        for name in ("shape_tol", "determining_tol", "gap_tol", "reduction_tol", "annihilation_tol", "memory_limit_mb"):
            setattr(config, name, getattr(settings, name))
        config.N = settings.grid_points
        config.epsilon = settings.radial_epsilon_ratio
        for layer in (file_values or {}, cli_values or {}):
            config._apply(layer)
        config._check()
        return config

    def _apply(self, values: Mapping[str, Any]):
        options = {f.name: f for f in fields(self)}
        params = set(self.param_names())
        unknown = []
        for raw_key, value in values.items():
            if value is None:
                continue
            key = raw_key.replace("-", "_")
            if key in params and key not in options:
                self.params[key] = _to_float(key, value)
            elif key == "kappa":
                self.kappa = _to_float(key, value)
            elif key in options and key not in ("command", "params"):
                setattr(self, key, _coerce(key, value, options[key].default))
            else:
                unknown.append(raw_key)
        if unknown:
            raise ConfigError(
                f"unknown config keys: {', '.join(sorted(unknown))}; accepted keys: {', '.join(self.accepted_keys())}"
            )

    def _check(self):
        errors = []
        if self.format not in FORMATS:
            errors.append(f"format must be one of {', '.join(FORMATS)}, got {self.format!r}")
        if self.convention not in ("minus", "plus"):
            errors.append(f"convention must be minus or plus, got {self.convention!r}")
        if self.levels < 1:
            errors.append(f"levels must be >= 1, got {self.levels}")
        if self.n < 0:
            errors.append(f"n must be >= 0, got {self.n}")
        if errors:
            raise ConfigError("; ".join(errors))

    def to_dict(self) -> Dict[str, Any]:
        data = {f.name: getattr(self, f.name) for f in fields(self)}
        data["params"] = dict(sorted(self.params.items()))
        return data


def _to_float(key: str, value: Any) -> float:
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{key} expects a number, got {value!r}")


_INT_KEYS = ("dim", "levels", "n", "N")
_FLOAT_KEYS = (
    "xmin", "xmax", "L", "epsilon", "shape_tol", "determining_tol", "gap_tol",
    "reduction_tol", "annihilation_tol", "memory_limit_mb",
)


def _coerce(key: str, value: Any, default: Any) -> Any:
    if key in _INT_KEYS:
        try:
            return int(value)
        except (TypeError, ValueError):
            raise ConfigError(f"{key} expects an integer, got {value!r}")
    if key in _FLOAT_KEYS:
        return _to_float(key, value)
    return str(value)

"""
Configuration Management
"""

import copy
import os
import re
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml

from hubbardq.observability import mainLogger


@dataclass
class SamplingConfig:
    """Shot sampling configuration"""
    seed: Optional[int] = None
    shots: Optional[int] = None
    repeats: Optional[int] = None
    grouping: Optional[str] = None
    allocation: Optional[str] = None
    basis: Optional[str] = None


@dataclass
class VQDConfig:
    """VQD optimizer configuration"""
    layers: Optional[int] = None
    n_states: Optional[int] = None
    restarts: Optional[int] = None
    tol: Optional[float] = None
    max_evaluations: Optional[int] = None
    betas: Optional[list] = None
    spin_penalty: Optional[float] = None
    overlap_tol: Optional[float] = None
    method: Optional[str] = None


@dataclass
class SCFConfig:
    """RHF configuration"""
    max_iterations: Optional[int] = None
    conv_tol: Optional[float] = None
    commutator_tol: Optional[float] = None
    damping: Optional[float] = None


@dataclass
class LoggingConfig:
    """Logging configuration"""
    logs_dir: Optional[str] = None
    verbose: Optional[bool] = None


SECTIONS = ("sampling", "vqd", "scf", "logging")

# Default values (centralized). layers/betas stay None: default_layers and beta = lambda.
DEFAULTS = {
    "sampling": {
        "seed": 42,
        "shots": 10000,
        "repeats": 1000,
        "grouping": "abelian",
        "allocation": "per_group",
        "basis": "wannier",
    },
    "vqd": {
        "layers": None,
        "n_states": 3,
        "restarts": 5,
        "tol": 1e-6,
        "max_evaluations": 5000,
        "betas": None,
        "spin_penalty": 10.0,
        "overlap_tol": 1e-4,
        "method": "L-BFGS-B",
    },
    "scf": {
        "max_iterations": 200,
        "conv_tol": 1e-10,
        "commutator_tol": 1e-9,
        "damping": 0.5,
    },
    "logging": {
        "logs_dir": None,
        "verbose": False,
    },
}


# Environment variable mapping (field, section, type, names)
ENV_MAPPING = [
    ("seed", "sampling", int, ["HUBBARDQ_SEED"]),
    ("shots", "sampling", int, ["HUBBARDQ_SHOTS"]),
    ("repeats", "sampling", int, ["HUBBARDQ_REPEATS"]),
    ("logs_dir", "logging", str, ["HUBBARDQ_LOGS_DIR"]),
    ("verbose", "logging", bool, ["HUBBARDQ_VERBOSE"]),
]


# Validation rules (section, field, check_function, error_message)
VALIDATIONS = [
    ("sampling", "shots", lambda v: v >= 1, "shots must be at least 1"),
    ("sampling", "repeats", lambda v: v >= 2, "repeats must be at least 2"),
    ("sampling", "grouping", lambda v: v in ("abelian", "none"), "grouping must be abelian or none"),
    ("sampling", "allocation", lambda v: v in ("per_group", "uniform", "weighted"),
     "allocation must be per_group, uniform or weighted"),
    ("sampling", "basis", lambda v: v in ("wannier", "canonical"),
     "basis must be wannier or canonical"),
    ("vqd", "layers", lambda v: v >= 1, "layers must be at least 1"),
    ("vqd", "n_states", lambda v: v >= 1, "n_states must be at least 1"),
    ("vqd", "restarts", lambda v: v >= 1, "restarts must be at least 1"),
    ("vqd", "tol", lambda v: v > 0, "tol must be positive"),
    ("vqd", "max_evaluations", lambda v: v >= 1, "max_evaluations must be at least 1"),
    ("vqd", "spin_penalty", lambda v: v >= 0, "spin_penalty must be nonnegative"),
    ("vqd", "overlap_tol", lambda v: v > 0, "overlap_tol must be positive"),
    ("vqd", "method", lambda v: v in ("L-BFGS-B", "Nelder-Mead", "Powell"),
     "method must be L-BFGS-B, Nelder-Mead or Powell"),
    ("scf", "max_iterations", lambda v: v >= 1, "max_iterations must be at least 1"),
    ("scf", "conv_tol", lambda v: v > 0, "conv_tol must be positive"),
    ("scf", "commutator_tol", lambda v: v > 0, "commutator_tol must be positive"),
    ("scf", "damping", lambda v: 0 <= v < 1, "damping must be in [0, 1)"),
]

DEFAULT_CONFIG_PATHS = [".hubbardq.yaml", "~/.hubbardq.yaml"]


def _get_env_value(env_vars: List[str], type_: type) -> Any:
    """Get first available environment variable and convert to type"""
    for env_var in env_vars:
        value = os.getenv(env_var)
        if value is not None:
            try:
                if type_ == bool:
                    return value.lower() in ("true", "1", "yes")
                elif type_ == int:
                    return int(value)
                elif type_ == float:
                    return float(value)
                else:
                    return value
            except (ValueError, AttributeError) as e:
                mainLogger.warning(
                    "Failed to convert environment variable",
                    env_var=env_var,
                    value=value,
                    error=str(e),
                )
    return None


def _expand_env_vars(data: Any) -> Any:
    """Recursively expand ${VAR} in strings"""
    if isinstance(data, dict):
        return {k: _expand_env_vars(v) for k, v in data.items()}
    elif isinstance(data, list):
        return [_expand_env_vars(item) for item in data]
    elif isinstance(data, str):
        def replacer(match):
            var_name = match.group(1) or match.group(2)
            return os.getenv(var_name, match.group(0))
        return re.sub(r"\$\{([^}]+)\}|\$(\w+)", replacer, data)
    return data


def _section_kwargs(section_cls, data: Any) -> Dict[str, Any]:
    if not isinstance(data, dict):
        return {}
    names = {f.name for f in fields(section_cls)}
    return {k: v for k, v in data.items() if k in names}


@dataclass
class RunConfig:
    """Effective configuration of one CLI run"""
    command: Optional[str] = None
    inputs: Optional[list] = None
    output: Optional[str] = None
    sampling: SamplingConfig = None
    vqd: VQDConfig = None
    scf: SCFConfig = None
    logging: LoggingConfig = None

    def __post_init__(self):
        """Initialize sub-configs if not provided"""
        if self.sampling is None:
            self.sampling = SamplingConfig()
        if self.vqd is None:
            self.vqd = VQDConfig()
        if self.scf is None:
            self.scf = SCFConfig()
        if self.logging is None:
            self.logging = LoggingConfig()

    @classmethod
    def from_defaults(cls) -> "RunConfig":
        """Create config from default values"""
        return cls(
            sampling=SamplingConfig(**DEFAULTS["sampling"]),
            vqd=VQDConfig(**DEFAULTS["vqd"]),
            scf=SCFConfig(**DEFAULTS["scf"]),
            logging=LoggingConfig(**DEFAULTS["logging"]),
        )

    @classmethod
    def from_yaml(cls, path: str) -> Optional["RunConfig"]:
        """Load config from YAML file; None when the file is absent or unreadable"""
        file_path = Path(path).expanduser()
        if not file_path.exists():
            return None

        try:
            with open(file_path, "r", encoding="utf-8") as f:
                data = yaml.safe_load(f) or {}
        except (OSError, yaml.YAMLError) as e:
            mainLogger.error("Failed to load config from file", path=str(path), error=str(e))
            return None

        data = _expand_env_vars(data)
        mainLogger.info("Loaded configuration from file", path=str(path))
        return cls(
            sampling=SamplingConfig(**_section_kwargs(SamplingConfig, data.get("sampling"))),
            vqd=VQDConfig(**_section_kwargs(VQDConfig, data.get("vqd"))),
            scf=SCFConfig(**_section_kwargs(SCFConfig, data.get("scf"))),
            logging=LoggingConfig(**_section_kwargs(LoggingConfig, data.get("logging"))),
        )

    @classmethod
    def from_env(cls) -> "RunConfig":
        """Load config from environment variables"""
        cfg = cls()
        for field_name, section, type_, env_vars in ENV_MAPPING:
            value = _get_env_value(env_vars, type_)
            if value is not None:
                setattr(getattr(cfg, section), field_name, value)
        return cfg

    @classmethod
    def load(cls, config_path: Optional[str] = None) -> "RunConfig":
        """
        Load configuration: defaults → file → env
        Priority: defaults < file < env < cli (cli done via merge_with_cli_args)
        """
        cfg = cls.from_defaults()

        if config_path:
            file_cfg = cls.from_yaml(config_path)
        else:
            file_cfg = None
            for path in DEFAULT_CONFIG_PATHS:
                file_cfg = cls.from_yaml(path)
                if file_cfg:
                    break

        if file_cfg:
            cfg = cls._merge(cfg, file_cfg)

        env_cfg = cls.from_env()
        cfg = cls._merge(cfg, env_cfg)

        return cfg

    @staticmethod
    def _merge(base: "RunConfig", override: "RunConfig") -> "RunConfig":
        """Merge configs: non-None values in override take precedence"""
        result = copy.deepcopy(base)

        for name in ("command", "inputs", "output"):
            value = getattr(override, name)
            if value is not None:
                setattr(result, name, value)

        for section_name in SECTIONS:
            base_section = getattr(result, section_name)
            override_section = getattr(override, section_name)
            for f in fields(base_section):
                override_value = getattr(override_section, f.name)
                if override_value is not None:
                    setattr(base_section, f.name, override_value)

        return result

    @classmethod
    def merge_with_cli_args(cls, config: "RunConfig", **cli_args) -> "RunConfig":
        """Merge CLI arguments (highest priority)"""
        result = copy.deepcopy(config)

        for key, value in cli_args.items():
            if value is None:
                continue
            if key in ("command", "inputs", "output"):
                setattr(result, key, list(value) if key == "inputs" else value)
                continue

            # Auto-match CLI args to section fields by name
            for section_name in SECTIONS:
                section = getattr(result, section_name)
                if hasattr(section, key):
                    setattr(section, key, value)
                    break

        return result

    def validate(self) -> List[str]:
        """Validate configuration"""
        errors = []
        for section_name, field_name, check, msg in VALIDATIONS:
            value = getattr(getattr(self, section_name), field_name)
            if value is not None and not check(value):
                errors.append(f"{msg}, got {value}")
        if self.vqd.betas is not None and any(b < 0 for b in self.vqd.betas):
            errors.append(f"betas must be nonnegative, got {self.vqd.betas}")
        return errors

    def to_dict(self) -> Dict[str, Any]:
        """Plain dictionary for embedding in reports"""
        return asdict(self)

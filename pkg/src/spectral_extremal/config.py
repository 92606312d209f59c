"""Run configuration: solver tolerances, oracle caps and the tolerance bands of the limit checks.

Values come from the defaults below, then a JSON file (path from ``--config`` or the
``SPECTRAL_EXTREMAL_CONFIG`` environment variable), then command-line flags.
"""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from typing import Optional

from .errors import InputError
from .oracle import DEFAULT_CAP_OTHER, DEFAULT_CAPS
from .spectral import DEFAULT_MAX_ITERS, DEFAULT_TOL, LAMBDA_COMPARE_TOL

ENV_VAR = "SPECTRAL_EXTREMAL_CONFIG"


@dataclass(frozen=True)
class Bands:
    # relative error allowed at the largest n of a limit check
    limit: float = 0.05
    # slack on the lim-sup bounds of the coalescence family
    limsup: float = 0.05
    # K_n minus an edge at large n
    example: float = 0.01
    # allowed distance of upper/lower bound ratio from 1 at the largest k of the sandwich
    sandwich_ratio: float = 0.20


@dataclass(frozen=True)
class Config:
    tol: float = DEFAULT_TOL
    max_iters: int = DEFAULT_MAX_ITERS
    tie_tol: float = LAMBDA_COMPARE_TOL
    # eigensolver tolerance for the Θ(1/n²) gaps of large graphs
    large_tol: float = 1e-13
    # c in the c/n³ slack on the path lower bound
    sandwich_c: float = 1.0
    oracle_caps: dict[int, int] = field(default_factory=lambda: dict(DEFAULT_CAPS))
    oracle_cap_other: int = DEFAULT_CAP_OTHER
    bands: Bands = field(default_factory=Bands)

    def __post_init__(self):
        for name in ("tol", "tie_tol", "large_tol", "sandwich_c"):
            if not getattr(self, name) > 0:
                raise InputError(f"{name} must be positive")
        if self.max_iters < 1:
            raise InputError("max_iters must be positive")
        for name, v in asdict(self.bands).items():
            if not v > 0:
                raise InputError(f"band {name} must be positive")
        for d, cap in self.oracle_caps.items():
            if cap < d + 1:
                raise InputError(f"oracle cap {cap} for delta={d} is below delta+1")

    def oracle_cap(self, delta: int) -> int:
        return self.oracle_caps.get(delta, self.oracle_cap_other)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["oracle_caps"] = {str(k): v for k, v in sorted(self.oracle_caps.items())}
        return d

    @classmethod
    def from_dict(cls, data: dict) -> "Config":
        data = dict(data)
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise InputError(f"unknown config keys: {sorted(unknown)}")
        if "oracle_caps" in data:
            caps = dict(DEFAULT_CAPS)
            caps.update({int(k): int(v) for k, v in data["oracle_caps"].items()})
            data["oracle_caps"] = caps
        if "bands" in data:
            extra = set(data["bands"]) - set(Bands.__dataclass_fields__)
            if extra:
                raise InputError(f"unknown band keys: {sorted(extra)}")
            data["bands"] = Bands(**data["bands"])
        return cls(**data)

    def with_overrides(self, **kw) -> "Config":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})


def load_config(path: Optional[str | Path] = None) -> Config:
    """Defaults, updated by the JSON file at ``path`` or at ``$SPECTRAL_EXTREMAL_CONFIG``."""
    path = path or os.environ.get(ENV_VAR)
    if not path:
        return Config()
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"cannot read config {path}: {e}") from e
    if not isinstance(data, dict):
        raise InputError("config file must hold a JSON object")
    return Config.from_dict(data)

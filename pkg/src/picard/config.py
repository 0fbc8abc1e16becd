"""Run configuration shared by the CLI and the acceptance checks."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from pathlib import Path


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    tolerance: float = 1e-9
    entry_norm_bound: int = 8
    optimizer_budget: int = 100_000
    output: str = "json"  # json | text

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ConfigError(f"tolerance must be positive, got {self.tolerance}")
        if self.entry_norm_bound < 1:
            raise ConfigError(f"entry_norm_bound must be >= 1, got {self.entry_norm_bound}")
        if self.optimizer_budget < 1:
            raise ConfigError(f"optimizer_budget must be >= 1, got {self.optimizer_budget}")
        if self.output not in ("json", "text"):
            raise ConfigError(f"output must be 'json' or 'text', got {self.output!r}")

    def replace(self, **kw) -> RunConfig:
        return dataclasses.replace(self, **kw)


_CASTS = {"tolerance": float, "entry_norm_bound": int, "optimizer_budget": int, "output": str}


def parse_config(text: str, source: str = "<config>", base: RunConfig | None = None) -> RunConfig:
    """Flat ``key = value`` lines; ``#`` starts a comment."""
    values = {}
    for k, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{k}: expected key=value, got {raw.strip()!r}")
        key, val = (s.strip() for s in line.split("=", 1))
        if key not in _CASTS:
            raise ConfigError(f"{source}:{k}: unknown key {key!r}")
        try:
            values[key] = _CASTS[key](val)
        except ValueError:
            raise ConfigError(f"{source}:{k}: bad value {val!r} for {key}") from None
    try:
        return (base or RunConfig()).replace(**values)
    except ConfigError as exc:
        raise ConfigError(f"{source}: {exc}") from None


def load_config(path: str | Path, base: RunConfig | None = None) -> RunConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror}") from None
    return parse_config(text, str(path), base)

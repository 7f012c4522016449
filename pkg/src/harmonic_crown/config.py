"""Run configuration: flat key=value files, overridable from the command line."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from pathlib import Path

DEFAULT_TOLERANCES = {
    "identity": 1e-12,
    "group": 1e-12,
    "roundtrip": 1e-10,
    "mesh": 1e-10,
    "adjoint": 1e-10,
    "margin": 1e-8,
    "eigen": 1e-6,
    "poisson": 1e-4,
    "symmetry": 1e-6,
}


class ConfigError(ValueError):
    """Invalid run configuration (exit code 2)."""


@dataclass(frozen=True)
class RunConfig:
    q: int = 1
    multiplicity: int = 1
    seed: int = 0
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    out: str | None = None

    def validate(self) -> "RunConfig":
        if self.q < 1:
            raise ConfigError("q must be ≥ 1")
        if self.multiplicity < 1:
            raise ConfigError("multiplicity must be ≥ 1")
        for name, tol in self.tolerances.items():
            if name not in DEFAULT_TOLERANCES:
                raise ConfigError(f"unknown tolerance {name!r}")
            if not tol > 0:
                raise ConfigError(f"tolerance {name!r} must be > 0")
        return self

    def tol(self, name: str) -> float:
        return self.tolerances[name]

    def with_overrides(self, **kw) -> "RunConfig":
        tols = dict(self.tolerances)
        tols.update(kw.pop("tolerances", {}) or {})
        kw = {k: v for k, v in kw.items() if v is not None}
        return replace(self, tolerances=tols, **kw)


def _parse_number(key: str, raw: str, kind):
    try:
        return kind(raw)
    except ValueError:
        raise ConfigError(f"{key}: cannot parse {raw!r}") from None


def parse_config_text(text: str) -> RunConfig:
    """Parse ``key = value`` lines; '#' starts a comment.

    Keys: q, mult (or multiplicity), seed, out, tol.<name> (or tol_<name>).
    """
    values: dict = {}
    tols: dict = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value")
        key, raw = (s.strip() for s in line.split("=", 1))
        key = key.lower().replace("-", "_")
        if key == "q":
            values["q"] = _parse_number(key, raw, int)
        elif key in ("mult", "multiplicity"):
            values["multiplicity"] = _parse_number(key, raw, int)
        elif key == "seed":
            values["seed"] = _parse_number(key, raw, int)
        elif key == "out":
            values["out"] = raw
        elif key.startswith(("tol.", "tol_")):
            tols[key[4:]] = _parse_number(key, raw, float)
        else:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
    return RunConfig().with_overrides(tolerances=tols, **values)


def load_config(path) -> RunConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    return parse_config_text(text)

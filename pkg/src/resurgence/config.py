"""Run configuration: defaults, a ``key = value`` file format, and overrides."""

from __future__ import annotations

from dataclasses import dataclass, fields, replace
from fractions import Fraction

from .errors import ParseError
from .modp import DEFAULT_PRIME


@dataclass(frozen=True)
class RunConfig:
    epsilon: Fraction = Fraction(1, 12)
    r_probe: int = 12
    grid_cap: int = 8
    t_check: int = 3
    m_max: int = 4
    denkert_s: int = 1
    denkert_a_max: int = 3
    grifo_r_max: int = 4
    slack_r_max: int = 3
    chudnovsky_m_max: int = 6
    window_cap: int = 5000
    prime: int = DEFAULT_PRIME
    seed: int = 0
    format: str = "json"
    threads: int = 1

    def __post_init__(self):
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        for f in fields(self):
            if f.type == "int" and f.name != "seed" and getattr(self, f.name) < 1:
                raise ValueError(f"{f.name} must be positive")
        if self.m_max < 2:
            raise ValueError("m_max must be at least 2")
        if self.format not in ("json", "csv"):
            raise ValueError("format must be json or csv")

    def to_text(self) -> str:
        lines = []
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, Fraction):
                v = f"{v.numerator}/{v.denominator}"
            lines.append(f"{f.name} = {v}")
        return "\n".join(lines) + "\n"

    def updated(self, **changes) -> "RunConfig":
        """Copy with the non-None entries of ``changes`` applied (values may be strings)."""
        clean = {}
        types = {f.name: f.type for f in fields(self)}
        for key, value in changes.items():
            if value is None:
                continue
            if key not in types:
                raise KeyError(key)
            clean[key] = _coerce(types[key], value)
        return replace(self, **clean)


def _coerce(kind: str, value):
    if kind == "Fraction":
        return Fraction(value)
    if kind == "int":
        return int(value)
    return str(value)


def parse_config(text: str, base: RunConfig | None = None) -> RunConfig:
    base = RunConfig() if base is None else base
    known = {f.name for f in fields(RunConfig)}
    changes = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"expected 'key = value', got {line!r}", lineno)
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in known:
            raise ParseError(f"unknown key {key!r}", lineno)
        changes[key] = value
    try:
        return base.updated(**changes)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(str(exc)) from None

"""Run configuration: a small sectioned ``key = value`` format.

::

    # comment
    [instrument]
    epsilon1 = 1.0036   # trailing comments are allowed

One pair per line, ``[section]`` headers, no continuation lines, no
duplicate keys within a section and no unknown sections or keys.  Units are
part of the key names; ``configs/paper.cfg`` documents every field.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field, fields
from datetime import datetime

from . import optics, sky, synthesis
from .errors import ParseError, ValidationError

_SECTION = re.compile(r"^\[\s*([A-Za-z_][A-Za-z0-9_]*)\s*\]$")
_KEY = re.compile(r"^[A-Za-z_][A-Za-z0-9_.\-/]*$")


def parse_text(text: str) -> dict:
    """Split config text into ``{section: (header_line, {key: (value, line, column)})}``.

    Purely syntactic; no knowledge of which sections or keys exist.
    """
    out: dict = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        stripped = line.lstrip()
        if not stripped:
            continue
        indent = len(line) - len(stripped)
        if stripped.startswith("["):
            m = _SECTION.match(stripped)
            if not m:
                raise ParseError(f"malformed section header {stripped!r}", lineno, indent + 1)
            current = m.group(1)
            if current in out:
                raise ParseError(f"duplicate section [{current}]", lineno, indent + 1)
            out[current] = (lineno, {})
            continue
        if "=" not in stripped:
            raise ParseError(f"expected 'key = value', got {stripped!r}", lineno, indent + 1)
        if current is None:
            raise ParseError("key outside of any [section]", lineno, indent + 1)
        key_part, value_part = stripped.split("=", 1)
        key = key_part.strip()
        if not _KEY.match(key):
            raise ParseError(f"invalid key {key!r}", lineno, indent + 1)
        value = value_part.strip()
        value_col = indent + len(key_part) + 2 + (len(value_part) - len(value_part.lstrip()))
        if not value:
            raise ParseError(f"missing value for {key!r}", lineno, value_col)
        entries = out[current][1]
        if key in entries:
            raise ParseError(f"duplicate key {key!r} (first set on line {entries[key][1]})",
                             lineno, indent + 1)
        entries[key] = (value, lineno, value_col)
    return out


def _parse_bool(text):
    lowered = text.lower()
    if lowered in ("true", "yes", "on", "1"):
        return True
    if lowered in ("false", "no", "off", "0"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _parse_float(text):
    value = float(text)
    if not math.isfinite(value):
        raise ValueError(f"not a finite number: {text!r}")
    return value


_CONVERTERS = {float: _parse_float, int: int, str: str, bool: _parse_bool,
               datetime: datetime.fromisoformat}


@dataclass(frozen=True)
class InstrumentConfig:
    arm_length_m: float = 0.2
    wavelength_m: float = 6e-7
    bandwidth_m: float = 0.09
    epsilon1: float = optics.CS2.epsilon
    epsilon2: float = optics.AIR.epsilon
    medium1: str = "forward"
    medium2: str = "return"

    def interferometer(self):
        return optics.Interferometer.symmetric(
            self.arm_length_m,
            optics.Medium(self.medium1, self.epsilon1),
            optics.Medium(self.medium2, self.epsilon2),
            self.wavelength_m, self.bandwidth_m)


@dataclass(frozen=True)
class SiteConfig:
    latitude_deg: float = sky.OBNINSK_LATITUDE_DEG
    longitude_deg: float = sky.OBNINSK_LONGITUDE_DEG
    utc_offset_h: float = sky.OBNINSK_UTC_OFFSET_H

    def site(self):
        return sky.ObserverSite.from_degrees(self.latitude_deg, self.longitude_deg,
                                             self.utc_offset_h)


@dataclass(frozen=True)
class WindConfig:
    speed_mps: float = 481_500.0
    right_ascension_deg: float = 0.0
    declination_deg: float = 38.84

    def wind(self):
        return sky.WindVector.from_degrees(self.speed_mps, self.right_ascension_deg,
                                           self.declination_deg)


@dataclass(frozen=True)
class SimulateConfig:
    v_mps: float = 480_000.0


@dataclass(frozen=True)
class ScheduleConfig:
    start_local: datetime = datetime(1971, 6, 22, 0, 0, 0)
    duration_s: float = 86_400.0
    step_s: float = 1_800.0


@dataclass(frozen=True)
class NoiseConfig:
    amplitude: float = 0.016
    seed: int = 1971
    distribution: str = "uniform"

    def model(self, seed=None):
        return synthesis.NoiseModel(self.amplitude, self.seed if seed is None else seed,
                                    self.distribution)


@dataclass(frozen=True)
class SweepConfig:
    v_hor_mps: float = 480_000.0
    include_microwave: bool = False


@dataclass(frozen=True)
class OutputConfig:
    dir: str = "."
    svg: bool = False


@dataclass(frozen=True)
class PairSpec:
    label: str
    eps1: float
    eps2: float
    wavelength_m: float | None = None
    arm_length_m: float | None = None

    def as_pair(self):
        forward = optics.Medium(self.label.split("/")[0], self.eps1)
        back = optics.Medium(self.label.split("/")[-1], self.eps2)
        return (self.label, forward, back, self.wavelength_m, self.arm_length_m)


@dataclass(frozen=True)
class RunConfig:
    instrument: InstrumentConfig = field(default_factory=InstrumentConfig)
    site: SiteConfig = field(default_factory=SiteConfig)
    wind: WindConfig = field(default_factory=WindConfig)
    simulate: SimulateConfig = field(default_factory=SimulateConfig)
    schedule: ScheduleConfig = field(default_factory=ScheduleConfig)
    noise: NoiseConfig = field(default_factory=NoiseConfig)
    sweep: SweepConfig = field(default_factory=SweepConfig)
    output: OutputConfig = field(default_factory=OutputConfig)
    pairs: tuple = ()
    sections: frozenset = frozenset()

    def require(self, *names):
        missing = [n for n in names if n not in self.sections]
        if missing:
            raise ValidationError("config is missing section(s): "
                                  + ", ".join(f"[{n}]" for n in missing))

    @property
    def start_epoch(self) -> float:
        return sky.epoch_from_local(self.schedule.start_local, self.site.utc_offset_h)

    def sweep_pairs(self):
        if self.pairs:
            return [p.as_pair() for p in self.pairs]
        return synthesis.figure3_pairs(microwave=self.sweep.include_microwave)


_BLOCK_TYPES = {
    "instrument": InstrumentConfig, "site": SiteConfig, "wind": WindConfig,
    "simulate": SimulateConfig, "schedule": ScheduleConfig, "noise": NoiseConfig,
    "sweep": SweepConfig, "output": OutputConfig,
}


def _build_block(cls, entries, section):
    kwargs = {}
    types = {f.name: f.type for f in fields(cls)}
    defaults = cls()
    for key, (value, line, col) in entries.items():
        if key not in types:
            raise ParseError(f"unknown key {key!r} in [{section}]", line)
        target = type(getattr(defaults, key))
        try:
            kwargs[key] = _CONVERTERS[target](value)
        except ValueError as exc:
            raise ParseError(f"bad value for {section}.{key}: {exc}", line, col) from None
    return cls(**kwargs)


def _parse_pair(label, value, line, col):
    parts = [p.strip() for p in value.split(",")]
    if len(parts) not in (2, 4):
        raise ParseError(f"pair {label!r} needs 'eps1, eps2' or "
                         "'eps1, eps2, wavelength_m, arm_length_m'", line, col)
    try:
        nums = [_parse_float(p) for p in parts]
    except ValueError as exc:
        raise ParseError(f"bad value for pairs.{label}: {exc}", line, col) from None
    return PairSpec(label, *nums)


def _validate(cfg: RunConfig):
    """Re-check every physical invariant by building the domain objects."""
    checks = (
        ("instrument", cfg.instrument.interferometer),
        ("site", cfg.site.site),
        ("wind", cfg.wind.wind),
        ("noise", cfg.noise.model),
    )
    for section, build in checks:
        try:
            build()
        except ValidationError as exc:
            raise ValidationError(f"[{section}] {exc}") from None
    if not abs(cfg.simulate.v_mps) < optics.SPEED_OF_LIGHT:
        raise ValidationError("[simulate] v_mps must be below c")
    if not 0 <= cfg.sweep.v_hor_mps < optics.SPEED_OF_LIGHT:
        raise ValidationError("[sweep] v_hor_mps must be in [0, c)")
    try:
        sky.sample_count(cfg.schedule.duration_s, cfg.schedule.step_s)
    except ValidationError as exc:
        raise ValidationError(f"[schedule] {exc}") from None
    for pair in cfg.pairs:
        try:
            forward, back = pair.as_pair()[1:3]
            if pair.wavelength_m is not None and pair.wavelength_m <= 0:
                raise ValidationError("wavelength must be positive")
            if pair.arm_length_m is not None and pair.arm_length_m <= 0:
                raise ValidationError("arm length must be positive")
            if forward.epsilon < back.epsilon:
                raise ValidationError("forward permittivity below return permittivity")
        except ValidationError as exc:
            raise ValidationError(f"[pairs] {pair.label}: {exc}") from None


def parse_config(text: str) -> RunConfig:
    """Parse and validate configuration text.

    Raises :class:`ParseError` for syntax problems and unknown names, and
    :class:`ValidationError` when a value breaks a physical invariant.
    """
    raw = parse_text(text)
    blocks = {}
    pairs = []
    for section, (header_line, entries) in raw.items():
        if section == "pairs":
            pairs = [_parse_pair(k, *v) for k, v in entries.items()]
        elif section in _BLOCK_TYPES:
            blocks[section] = _build_block(_BLOCK_TYPES[section], entries, section)
        else:
            raise ParseError(f"unknown section [{section}]", header_line)
    cfg = RunConfig(**blocks, pairs=tuple(pairs), sections=frozenset(raw))
    _validate(cfg)
    return cfg


def load_config(path) -> RunConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())

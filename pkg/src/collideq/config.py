"""Run-configuration parsing: flat ``key = value`` text with # comments.

Angle-valued couplings accept symbolic pi fractions ("pi/32", "10pi/43",
"pi/4") anywhere a number is expected.  Unknown keys and invariant
violations are rejected with the offending line in the message.
"""

from __future__ import annotations

import hashlib
import math
import re
from dataclasses import dataclass, field, fields

from .collider import EnvSampler, RunSpec
from .smallmat import DensityMatrix
from .spinmodel import ModelParams, thermal_state
from .thermoprobe import pure_state

_PI_FORM = re.compile(r"^\s*([0-9]+(?:\.[0-9]*)?)?\s*pi\s*(?:/\s*([0-9]+(?:\.[0-9]*)?))?\s*$", re.I)
_BLOCH_FORM = re.compile(r"^\s*bloch\s*\(\s*([^,]+)\s*,\s*([^)]+)\s*\)\s*$", re.I)


def parse_scalar(text: str) -> float:
    """A float literal or a pi fraction like '10pi/43'."""
    m = _PI_FORM.match(text)
    if m:
        coeff = float(m.group(1)) if m.group(1) else 1.0
        den = float(m.group(2)) if m.group(2) else 1.0
        if den == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return coeff * math.pi / den
    try:
        return float(text)
    except ValueError:
        raise ValueError(f"cannot parse number {text!r}") from None


def _parse_grid(text: str) -> tuple[float, ...]:
    vals = tuple(parse_scalar(part) for part in text.split(",") if part.strip())
    if not vals:
        raise ValueError("empty grid")
    if any(b < a for a, b in zip(vals, vals[1:])):
        raise ValueError(f"grid must be sorted ascending, got {vals}")
    return vals


@dataclass(frozen=True)
class RunConfig:
    """Validated run configuration with experiment-specific extras."""

    omega_s: float = 3.0
    omega_e: float = 1.0
    j_se: float = math.pi / 32
    j_ee: float = 0.0
    beta0: float = 1.0
    sigma_beta: float = 0.0
    truncation: str = "resample-positive"
    initial_state: str = "plus"
    n_steps: int = 300
    seed: int = 1
    dynamics: str = "cell"
    free_evolution: str = "per-iteration"
    sigma_beta_grid: tuple[float, ...] = (0.0, 0.02, 0.05, 0.1)
    jee_grid: tuple[float, ...] = field(default_factory=lambda: (0.0, 10 * math.pi / 43, math.pi / 4))
    omega_s_grid: tuple[float, ...] = ()
    omega_e_grid: tuple[float, ...] = ()
    replicas: int = 50
    tail_fraction: float = 0.5
    cell_size: float = 0.0  # 0 -> auto (bounding-box diagonal / 50)
    blp_azimuthal: int = 24
    blp_polar: int = 12
    output_dir: str = "out"

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, float) and not math.isfinite(v):
                raise ValueError(f"{f.name} must be finite")
        if not (0 <= self.seed < 2**64):
            raise ValueError("seed must fit in 64 bits")
        if self.n_steps < 1:
            raise ValueError("n_steps must be >= 1")
        if self.replicas < 1:
            raise ValueError("replicas must be >= 1")
        if not 0.0 < self.tail_fraction <= 1.0:
            raise ValueError("tail_fraction must lie in (0, 1]")
        # delegate range checks on the physics fields
        self.params()
        self.sampler()
        self.initial_density()
        if self.dynamics not in ("markov", "cell"):
            raise ValueError(f"dynamics must be markov or cell, got {self.dynamics!r}")
        if self.free_evolution not in ("per-iteration", "per-collision", "off"):
            raise ValueError(f"unknown free_evolution {self.free_evolution!r}")

    def params(self) -> ModelParams:
        return ModelParams(
            omega_s=self.omega_s,
            omega_e=self.omega_e,
            j_se=self.j_se,
            j_ee=self.j_ee,
            beta=self.beta0,
        )

    def sampler(self) -> EnvSampler:
        return EnvSampler(
            mode="fixed" if self.sigma_beta == 0.0 else "gaussian",
            beta0=self.beta0,
            sigma_beta=self.sigma_beta,
            seed=self.seed,
            truncation=self.truncation,
        )

    def initial_density(self) -> DensityMatrix:
        name = self.initial_state.strip().lower()
        simple = {
            "plus": (math.pi / 2, 0.0),
            "minus": (math.pi / 2, math.pi),
            "zero": (0.0, 0.0),
            "one": (math.pi, 0.0),
        }
        if name in simple:
            return pure_state(*simple[name])
        if name == "thermal":
            return thermal_state(self.beta0, self.omega_e)
        m = _BLOCH_FORM.match(name)
        if m:
            return pure_state(parse_scalar(m.group(1)), parse_scalar(m.group(2)))
        raise ValueError(
            f"unknown initial_state {self.initial_state!r} "
            "(expected plus|minus|zero|one|thermal|bloch(theta,phi))"
        )

    def runspec(self, mode: str | None = None) -> RunSpec:
        return RunSpec(
            params=self.params(),
            sampler=self.sampler(),
            initial=self.initial_density(),
            mode=mode or self.dynamics,
            free_mode=self.free_evolution,
        )

    def canonical(self) -> str:
        # output_dir does not shape the run, so it stays out of the hash
        lines = []
        for f in sorted(fields(self), key=lambda f: f.name):
            if f.name == "output_dir":
                continue
            lines.append(f"{f.name}={getattr(self, f.name)!r}")
        return "\n".join(lines)

    def digest(self) -> str:
        return hashlib.sha256(self.canonical().encode()).hexdigest()[:16]


_FLOAT_KEYS = {
    "omega_s", "omega_e", "j_se", "j_ee", "beta0", "sigma_beta",
    "tail_fraction", "cell_size",
}
_INT_KEYS = {"n_steps", "seed", "replicas", "blp_azimuthal", "blp_polar"}
_GRID_KEYS = {"sigma_beta_grid", "jee_grid", "omega_s_grid", "omega_e_grid"}
_STR_KEYS = {"truncation", "initial_state", "dynamics", "free_evolution", "output_dir"}

# eager single-field range checks, so violations name the offending line
_RANGE_CHECKS = {
    "j_se": (lambda v: 0.0 <= v <= math.pi / 4, "must lie in [0, pi/4]"),
    "j_ee": (lambda v: 0.0 <= v <= math.pi / 4, "must lie in [0, pi/4]"),
    "omega_s": (lambda v: v > 0, "must be positive"),
    "omega_e": (lambda v: v > 0, "must be positive"),
    "sigma_beta": (lambda v: v >= 0, "must be non-negative"),
    "tail_fraction": (lambda v: 0 < v <= 1, "must lie in (0, 1]"),
    "n_steps": (lambda v: v >= 1, "must be at least 1"),
    "replicas": (lambda v: v >= 1, "must be at least 1"),
    "seed": (lambda v: 0 <= v < 2**64, "must fit in 64 bits"),
}


def parse_config(text: str) -> RunConfig:
    """Parse and validate configuration text, reporting the offending line."""
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, val = line.partition("=")
        key, val = key.strip().lower(), val.strip()
        try:
            if key in _FLOAT_KEYS:
                values[key] = parse_scalar(val)
            elif key in _INT_KEYS:
                values[key] = int(val)
            elif key in _GRID_KEYS:
                values[key] = _parse_grid(val)
            elif key in _STR_KEYS:
                values[key] = val
            else:
                raise ValueError(f"unknown key {key!r}")
            if key in _RANGE_CHECKS:
                ok, why = _RANGE_CHECKS[key]
                if not ok(values[key]):
                    raise ValueError(f"{key} = {val}: {why}")
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    try:
        return RunConfig(**values)
    except ValueError as exc:
        raise ValueError(f"invalid configuration: {exc}") from None


def load_config(path: str) -> RunConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())

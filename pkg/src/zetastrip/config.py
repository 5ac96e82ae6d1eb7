"""Configuration records and the tagged evaluation result."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field


class Method(str, enum.Enum):
    """Which representation produced a zeta value."""

    ETA_REFERENCE = "eta_reference"
    INTEGRAL_NEW_Y = "integral_new_y"
    INTEGRAL_NEW_X = "integral_new_x"
    INTEGRAL_EXP = "integral_exp"
    INTEGRAL_FERMI = "integral_fermi"
    RAMANUJAN = "ramanujan"
    FUNCTIONAL_SERIES = "functional_series"
    FUNCTIONAL_SERIES_ACCEL = "functional_series_accel"

    def __str__(self) -> str:
        return self.value


class Acceleration(str, enum.Enum):
    NONE = "none"
    ALTERNATING = "alternating_acceleration"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class SeriesConfig:
    max_terms: int = 300
    tol: float = 1e-12
    acceleration: Acceleration = Acceleration.ALTERNATING

    def __post_init__(self):
        if int(self.max_terms) != self.max_terms or self.max_terms < 1:
            raise ValueError(f"max_terms must be a positive integer, got {self.max_terms!r}")
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol!r}")
        object.__setattr__(self, "acceleration", Acceleration(self.acceleration))


@dataclass(frozen=True)
class QuadConfig:
    """Tolerances and budget for the semi-infinite quadrature engine.

    ``max_refinements`` bounds the rounds of panel bisection on each of the
    two mapped halves (head below ``split_point``, tail above it).
    """

    abs_tol: float = 1e-11
    rel_tol: float = 1e-11
    max_refinements: int = 12
    split_point: float = 1.0
    tail_cutoff_guard: float = 800.0

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("abs_tol and rel_tol must be positive")
        if int(self.max_refinements) != self.max_refinements or self.max_refinements < 1:
            raise ValueError("max_refinements must be a positive integer")
        if not 0 < self.split_point < self.tail_cutoff_guard:
            raise ValueError("need 0 < split_point < tail_cutoff_guard")

    def tolerance(self, value: complex) -> float:
        return max(self.abs_tol, self.rel_tol * abs(value))


@dataclass
class EvalOutcome:
    value: complex
    err_estimate: float
    evals: int
    method: str
    converged: bool = True
    notes: str = ""
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        self.value = complex(self.value)
        self.err_estimate = float(self.err_estimate)
        self.evals = int(self.evals)
        self.converged = bool(self.converged)

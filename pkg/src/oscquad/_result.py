"""Result container shared by the quadrature front-ends."""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from enum import Enum

from .errors import ParameterError

__all__ = ["Method", "QuadratureResult"]


class Method(Enum):
    """Quadrature routes exposed by the package.

    The frequency-space collocation route covers both the Chebyshev-basis
    Levin solve and the moment-based Filon solve; they are tagged
    separately so benchmark output can distinguish them.
    """

    LEVIN_PHYSICAL = "levin-physical"
    LEVIN_FREQ = "levin-freq"
    FILON = "filon"
    CMFP = "cmfp"
    ORACLE = "oracle"


@dataclass(frozen=True)
class QuadratureResult:
    """Integral value with solver diagnostics.

    ``diagnostics`` is a flat mapping of solver-specific scalars (residual
    norms, truncation counts, kernel strategies) suitable for JSON output.
    """

    value: complex
    method: Method
    s: int
    n: int
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self):
        if not cmath.isfinite(self.value):
            raise ParameterError("quadrature value must be finite")

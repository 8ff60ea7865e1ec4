"""Boundary points of the model domain Omega_p = {Im z2 > p(z1)}.

The boundary is identified with C x R: a point is a pair (z, t) with z the
first complex coordinate and t = Re z2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class BoundaryPoint:
    z: complex
    t: float

    def __post_init__(self):
        z = complex(self.z)
        if not (math.isfinite(z.real) and math.isfinite(z.imag)
                and math.isfinite(float(self.t))):
            raise DomainError("boundary point components must be finite")
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "t", float(self.t))

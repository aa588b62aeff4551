"""Diagonal tensor kinematics for co-axial swelling deformations.

Everything in this package assumes the deformation gradient of the solid and
the map to its stress-free natural configuration share principal axes, so all
tensors of interest (deformation gradients, left Cauchy-Green tensors,
stretching rates) are diagonal 3x3 and can be carried as three scalars.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .exceptions import DomainError


@dataclass(frozen=True)
class DiagTensor3:
    """A diagonal 3x3 tensor stored by its diagonal entries."""

    d1: float
    d2: float
    d3: float

    def __post_init__(self):
        for name in ("d1", "d2", "d3"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise DomainError(f"DiagTensor3.{name} must be finite, got {v!r}")

    @staticmethod
    def identity() -> "DiagTensor3":
        return DiagTensor3(1.0, 1.0, 1.0)

    @staticmethod
    def diag(d1: float, d2: float, d3: float) -> "DiagTensor3":
        return DiagTensor3(float(d1), float(d2), float(d3))

    @property
    def trace(self) -> float:
        return self.d1 + self.d2 + self.d3

    @property
    def det(self) -> float:
        return self.d1 * self.d2 * self.d3

    def dot(self, other: "DiagTensor3") -> float:
        """Double contraction A:B (sum of entrywise products)."""
        return self.d1 * other.d1 + self.d2 * other.d2 + self.d3 * other.d3

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.d1, self.d2, self.d3)

    # Small amount of arithmetic sugar so constitutive formulas read like the
    # math.  Deliberately no general tensor algebra: diagonal-only is the point.
    def __add__(self, other: "DiagTensor3") -> "DiagTensor3":
        return DiagTensor3(self.d1 + other.d1, self.d2 + other.d2, self.d3 + other.d3)

    def __sub__(self, other: "DiagTensor3") -> "DiagTensor3":
        return DiagTensor3(self.d1 - other.d1, self.d2 - other.d2, self.d3 - other.d3)

    def __mul__(self, s: float) -> "DiagTensor3":
        return DiagTensor3(self.d1 * s, self.d2 * s, self.d3 * s)

    __rmul__ = __mul__


def invariants(b: DiagTensor3) -> tuple[float, float, float]:
    """Principal invariants (I, II, III) of a diagonal positive-definite tensor.

    I = tr B, II = ((tr B)^2 - tr B^2)/2, III = det B.  Raises ``DomainError``
    unless all diagonal entries are strictly positive, since the argument is
    meant to be a left Cauchy-Green tensor.
    """
    if b.d1 <= 0.0 or b.d2 <= 0.0 or b.d3 <= 0.0:
        raise DomainError(f"invariants: entries must be positive, got {b.as_tuple()}")
    i1 = b.d1 + b.d2 + b.d3
    tr_b2 = b.d1 * b.d1 + b.d2 * b.d2 + b.d3 * b.d3
    i2 = 0.5 * (i1 * i1 - tr_b2)
    i3 = b.d1 * b.d2 * b.d3
    return (i1, i2, i3)


def elastic_stretch(f: DiagTensor3, g: DiagTensor3) -> DiagTensor3:
    """Deformation measured from the natural configuration: F G^-1, entrywise."""
    if g.d1 == 0.0 or g.d2 == 0.0 or g.d3 == 0.0:
        raise DomainError("elastic_stretch: G has a zero diagonal entry")
    return DiagTensor3(f.d1 / g.d1, f.d2 / g.d2, f.d3 / g.d3)


def jacobians(f: DiagTensor3, g: DiagTensor3) -> tuple[float, float, float]:
    """Volume ratios (J, J_G, J_p) of the total, natural-configuration and
    elastic parts of the deformation, satisfying J = J_p * J_G."""
    j = f.det
    j_g = g.det
    j_p = elastic_stretch(f, g).det
    return (j, j_g, j_p)

"""Exact symbolic angle arithmetic.

Angles are kept in degrees as ``q0 + q1*GAMMA_STAR_EXCESS + q2*EPS_STAR_EXCESS``
with rational coefficients, where the two atoms are the irrational excess
angles that appear at the two special division parameters (the split-cut value
near 93.43 deg and the corner-collapse value near 65.104 deg).  All vertex-star
sums, convexity checks and family conditions are decided on the coefficients,
never on floats.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

_SQRT3 = math.sqrt(3.0)


class AngleAtom(enum.Enum):
    """The two irrational angle excesses used by the workbench."""

    GAMMA_STAR_EXCESS = "GAMMA_STAR_EXCESS"
    EPS_STAR_EXCESS = "EPS_STAR_EXCESS"


def _gamma_star_excess_degrees() -> float:
    # Defined operationally: the cut anchored one unit up the back-corner
    # bisector, aimed at the far 120-degree vertex of the 14-gon, makes an
    # angle of 75 deg + excess there (both residual pieces become pentagons).
    # S = X10 + unit at 150 deg; X14 - S = (sqrt(3) - 2.5, sqrt(3)/2).
    w = (_SQRT3 - 2.5, _SQRT3 / 2.0)
    gamma_star = 225.0 - math.degrees(math.atan2(w[1], w[0]))
    return gamma_star - 75.0


def _eps_star_excess_degrees() -> float:
    # Defined operationally by the corner collapse T = X10: the cut ray from
    # the flat vertex X13 towards X10 has direction -eps*;
    # X10 - X13 = (1.5 - sqrt(3)/2, -(0.5 + sqrt(3)/2)).
    w = (1.5 - _SQRT3 / 2.0, -(0.5 + _SQRT3 / 2.0))
    eps_star = -math.degrees(math.atan2(w[1], w[0]))
    return eps_star - 60.0


_ATOM_DEGREES = {
    AngleAtom.GAMMA_STAR_EXCESS: _gamma_star_excess_degrees(),
    AngleAtom.EPS_STAR_EXCESS: _eps_star_excess_degrees(),
}

RationalLike = Union[int, Fraction, str]


def _frac(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        raise TypeError(
            "refusing float -> ExactAngle coefficient; use Fraction or int"
        )
    raise TypeError(f"cannot interpret {x!r} as a rational")


@dataclass(frozen=True)
class ExactAngle:
    """Degrees as q0 + q1*gamma_excess + q2*eps_excess with rational q's."""

    q0: Fraction = Fraction(0)
    q1: Fraction = Fraction(0)
    q2: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "q0", _frac(self.q0))
        object.__setattr__(self, "q1", _frac(self.q1))
        object.__setattr__(self, "q2", _frac(self.q2))

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other: "ExactAngle") -> "ExactAngle":
        other = as_angle(other)
        return ExactAngle(self.q0 + other.q0, self.q1 + other.q1, self.q2 + other.q2)

    def __radd__(self, other):
        if other == 0:  # so sum() works
            return self
        return self.__add__(other)

    def __sub__(self, other: "ExactAngle") -> "ExactAngle":
        other = as_angle(other)
        return ExactAngle(self.q0 - other.q0, self.q1 - other.q1, self.q2 - other.q2)

    def __rsub__(self, other):
        return as_angle(other).__sub__(self)

    def __mul__(self, k: RationalLike) -> "ExactAngle":
        k = _frac(k)
        return ExactAngle(self.q0 * k, self.q1 * k, self.q2 * k)

    __rmul__ = __mul__

    def __truediv__(self, k: RationalLike) -> "ExactAngle":
        k = _frac(k)
        return ExactAngle(self.q0 / k, self.q1 / k, self.q2 / k)

    def __neg__(self) -> "ExactAngle":
        return ExactAngle(-self.q0, -self.q1, -self.q2)

    # -- comparisons ------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ExactAngle(other)
        if not isinstance(other, ExactAngle):
            return NotImplemented
        return (self.q0, self.q1, self.q2) == (other.q0, other.q1, other.q2)

    def __hash__(self):
        return hash((self.q0, self.q1, self.q2))

    def __lt__(self, other) -> bool:
        return self.degrees() < as_angle(other).degrees() - 1e-12

    def __le__(self, other) -> bool:
        other = as_angle(other)
        return self == other or self.degrees() < other.degrees() + 1e-12

    def __gt__(self, other) -> bool:
        return as_angle(other).__lt__(self)

    def __ge__(self, other) -> bool:
        return as_angle(other).__le__(self)

    # -- evaluation / io --------------------------------------------------
    def degrees(self) -> float:
        return (
            float(self.q0)
            + float(self.q1) * _ATOM_DEGREES[AngleAtom.GAMMA_STAR_EXCESS]
            + float(self.q2) * _ATOM_DEGREES[AngleAtom.EPS_STAR_EXCESS]
        )

    def radians(self) -> float:
        return math.radians(self.degrees())

    def is_rational(self) -> bool:
        return self.q1 == 0 and self.q2 == 0

    def serialize(self) -> tuple[str, str, str]:
        return (str(self.q0), str(self.q1), str(self.q2))

    @staticmethod
    def deserialize(triple: Sequence[str]) -> "ExactAngle":
        return ExactAngle(Fraction(triple[0]), Fraction(triple[1]), Fraction(triple[2]))

    def __repr__(self):
        parts = [f"{self.q0}"]
        if self.q1:
            parts.append(f"{self.q1}*G")
        if self.q2:
            parts.append(f"{self.q2}*E")
        return f"deg({' + '.join(parts)})"


def as_angle(x) -> ExactAngle:
    """Coerce ints/Fractions (degrees) to ExactAngle; floats are rejected."""
    if isinstance(x, ExactAngle):
        return x
    if isinstance(x, (int, Fraction)):
        return ExactAngle(x)
    raise TypeError(f"cannot interpret {x!r} as an exact angle")


def deg(q0: RationalLike, q1: RationalLike = 0, q2: RationalLike = 0) -> ExactAngle:
    return ExactAngle(_frac(q0), _frac(q1), _frac(q2))


def atom(a: AngleAtom) -> ExactAngle:
    if a is AngleAtom.GAMMA_STAR_EXCESS:
        return ExactAngle(0, 1, 0)
    return ExactAngle(0, 0, 1)


def atom_degrees(a: AngleAtom) -> float:
    return _ATOM_DEGREES[a]


GAMMA_STAR = deg(75) + atom(AngleAtom.GAMMA_STAR_EXCESS)
EPS_STAR = deg(60) + atom(AngleAtom.EPS_STAR_EXCESS)

FLAT = deg(180)
FULL = deg(360)


class Roundness(enum.Enum):
    FLAT = "FLAT"
    FULL = "FULL"
    NEITHER = "NEITHER"


def angle_sum(angles: Iterable[ExactAngle]) -> ExactAngle:
    """Coefficient-wise sum; rejects an empty list."""
    angles = list(angles)
    if not angles:
        raise ValueError("angle_sum of an empty list")
    total = ExactAngle(0)
    for a in angles:
        total = total + as_angle(a)
    return total


def is_round(a: ExactAngle) -> Roundness:
    """FLAT/FULL exactly (zero atom coefficients required), else NEITHER."""
    a = as_angle(a)
    if a.q1 != 0 or a.q2 != 0:
        return Roundness.NEITHER
    if a.q0 == 180:
        return Roundness.FLAT
    if a.q0 == 360:
        return Roundness.FULL
    return Roundness.NEITHER


def mod_filter(angles: Iterable[ExactAngle]) -> bool:
    """Units-digit pruning aid.

    True iff some non-empty sub-multiset has a units-digit total of zero
    (mod 10), the arithmetic the vertex-concentration argument runs on.
    Angles with atom contributions are rejected: the filter only makes sense
    for rational degree values.
    """
    residues = []
    for a in angles:
        a = as_angle(a)
        if a.q1 != 0 or a.q2 != 0:
            raise ValueError("mod_filter requires atom-free angles")
        residues.append(a.q0 % 10)
    reachable = set()
    for r in residues:
        new = {r % 10}
        for s in reachable:
            new.add((s + r) % 10)
        reachable |= new
    return Fraction(0) in reachable

"""Polygons, isometries, congruence and symmetry.

Coordinates are floats in units of one 14-gon edge (tolerance 1e-9); interior
angles ride along as ExactAngle so combinatorial decisions stay exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np
from shapely.geometry import Polygon as ShapelyPolygon

from .angles import ExactAngle, angle_sum, as_angle, deg

COORD_TOL = 1e-9
ANGLE_TOL = 1e-9


class GeometryError(ValueError):
    pass


class NotSimpleError(GeometryError):
    pass


class AngleMismatchError(GeometryError):
    pass


def vec(x, y=None) -> np.ndarray:
    if y is None:
        return np.asarray(x, dtype=float)
    return np.array([x, y], dtype=float)


def numeric_interior_angle(prev, cur, nxt) -> float:
    """Interior angle in degrees at cur of a ccw polygon, in (0, 360)."""
    d1 = np.asarray(cur) - np.asarray(prev)
    d2 = np.asarray(nxt) - np.asarray(cur)
    turn = math.degrees(math.atan2(d1[0] * d2[1] - d1[1] * d2[0], d1 @ d2))
    return 180.0 - turn


def signed_area(pts: Sequence[np.ndarray]) -> float:
    s = 0.0
    n = len(pts)
    for i in range(n):
        x1, y1 = pts[i]
        x2, y2 = pts[(i + 1) % n]
        s += x1 * y2 - x2 * y1
    return 0.5 * s


@dataclass(frozen=True)
class Isometry:
    """rotation (exact, degrees) then translation; mirror (x -> -x) first."""

    rotation: ExactAngle = deg(0)
    translation: tuple[float, float] = (0.0, 0.0)
    mirrored: bool = False

    def matrix(self) -> np.ndarray:
        a = self.rotation.radians()
        c, s = math.cos(a), math.sin(a)
        m = np.array([[c, -s], [s, c]])
        if self.mirrored:
            m = m @ np.array([[-1.0, 0.0], [0.0, 1.0]])
        return m

    def apply_point(self, p) -> np.ndarray:
        return self.matrix() @ np.asarray(p, dtype=float) + np.asarray(self.translation)

    def compose(self, other: "Isometry") -> "Isometry":
        """self after other (self o other)."""
        rot = self.rotation + (-other.rotation if self.mirrored else other.rotation)
        t = self.apply_point(other.translation)
        return Isometry(rot, (float(t[0]), float(t[1])), self.mirrored ^ other.mirrored)

    def inverse(self) -> "Isometry":
        if not self.mirrored:
            rot = -self.rotation
            m = Isometry(rot, (0.0, 0.0), False)
            t = -(m.matrix() @ np.asarray(self.translation))
        else:
            rot = self.rotation
            m = Isometry(rot, (0.0, 0.0), True)
            t = -(m.matrix() @ np.asarray(self.translation))
        return Isometry(m.rotation, (float(t[0]), float(t[1])), self.mirrored)


IDENTITY = Isometry()


class LabeledPolygon:
    """Simple ccw polygon with exact interior angles and a piece label."""

    def __init__(self, vertices, interior_angles: Sequence[ExactAngle], label: str):
        self.vertices = [vec(p) for p in vertices]
        self.interior_angles = [as_angle(a) for a in interior_angles]
        self.label = label

    # -- derived ----------------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.vertices)

    def edge_lengths(self) -> list[float]:
        n = self.n
        return [
            float(np.linalg.norm(self.vertices[(i + 1) % n] - self.vertices[i]))
            for i in range(n)
        ]

    def shapely(self) -> ShapelyPolygon:
        return ShapelyPolygon([tuple(p) for p in self.vertices])

    @property
    def chirality_distinct(self) -> bool:
        return not has_line_symmetry(self)

    def __repr__(self):
        return f"LabeledPolygon({self.label!r}, n={self.n})"


def make_polygon(vertices, exact_angles: Sequence[ExactAngle], label: str = "") -> LabeledPolygon:
    """Validated constructor: ccw, simple, angles matching to 1e-9 deg."""
    pts = [vec(p) for p in vertices]
    if len(pts) < 3:
        raise GeometryError("a polygon needs at least 3 vertices")
    if len(exact_angles) != len(pts):
        raise GeometryError("one exact angle per vertex required")
    if signed_area(pts) <= 0:
        raise GeometryError("vertices must be in counterclockwise order")
    shp = ShapelyPolygon([tuple(p) for p in pts])
    if not shp.is_valid or not shp.is_simple:
        raise NotSimpleError(f"polygon {label!r} is self-intersecting")
    n = len(pts)
    exact_angles = [as_angle(a) for a in exact_angles]
    for i in range(n):
        num = numeric_interior_angle(pts[i - 1], pts[i], pts[(i + 1) % n])
        ex = exact_angles[i].degrees()
        if abs(((num - ex + 180.0) % 360.0) - 180.0) > 1e-7:
            raise AngleMismatchError(
                f"{label!r} vertex {i}: numeric {num:.9f} vs exact {ex:.9f}"
            )
    total = angle_sum(exact_angles)
    if total != deg(180 * (n - 2)):
        raise AngleMismatchError(
            f"{label!r}: exact interior angles sum to {total}, want {180 * (n - 2)}"
        )
    return LabeledPolygon(pts, exact_angles, label)


def polygon_from_vertices(vertices, label: str = "", snap_degrees=None) -> LabeledPolygon:
    """Build a LabeledPolygon measuring angles numerically and snapping them.

    snap_degrees: optional list of candidate ExactAngles to snap to (within
    1e-6 deg); by default angles are snapped to the nearest 1e-9 rational.
    """
    from fractions import Fraction

    pts = [vec(p) for p in vertices]
    n = len(pts)
    angles = []
    for i in range(n):
        num = numeric_interior_angle(pts[i - 1], pts[i], pts[(i + 1) % n])
        snapped = None
        if snap_degrees:
            for cand in snap_degrees:
                if abs(as_angle(cand).degrees() - num) < 1e-6:
                    snapped = as_angle(cand)
                    break
        if snapped is None:
            snapped = ExactAngle(Fraction(round(num * 1e9), 10**9))
        angles.append(snapped)
    return make_polygon(pts, angles, label)


def is_convex(p: LabeledPolygon) -> bool:
    """Strict convexity on the exact angles; a flat (180 deg) corner fails."""
    for a in p.interior_angles:
        if a == deg(180):
            return False
        if a.degrees() >= 180.0:
            return False
    return True


def area(p: LabeledPolygon) -> float:
    return signed_area(p.vertices)


def apply(iso: Isometry, p: LabeledPolygon) -> LabeledPolygon:
    """Transformed copy; mirrored placements reverse the cyclic order to stay ccw."""
    pts = [iso.apply_point(q) for q in p.vertices]
    angles = list(p.interior_angles)
    if iso.mirrored:
        pts = pts[::-1]
        angles = angles[::-1]
    return LabeledPolygon(pts, angles, p.label)


def reflect(p: LabeledPolygon) -> LabeledPolygon:
    return apply(Isometry(deg(0), (0.0, 0.0), True), p)


class Congruence:
    DIRECT = "DIRECT"
    MIRROR = "MIRROR"
    NONE = "NONE"


def _cycles(p: LabeledPolygon):
    """(angles, edges) cycle of p; edges[i] follows angles[i]'s vertex."""
    return list(p.interior_angles), p.edge_lengths()


def _match_cycle(a1, e1, a2, e2, tol=1e-9) -> Optional[int]:
    n = len(a1)
    if len(a2) != n:
        return None
    for shift in range(n):
        ok = True
        for i in range(n):
            if a1[i] != a2[(i + shift) % n]:
                ok = False
                break
            if abs(e1[i] - e2[(i + shift) % n]) > tol:
                ok = False
                break
        if ok:
            return shift
    return None


def congruent(p: LabeledPolygon, q: LabeledPolygon, allow_mirror: bool = True) -> str:
    """DIRECT / MIRROR / NONE congruence via angle+edge cycle matching."""
    a1, e1 = _cycles(p)
    a2, e2 = _cycles(q)
    if _match_cycle(a1, e1, a2, e2) is not None:
        return Congruence.DIRECT
    if allow_mirror:
        qm = reflect(q)
        a2m, e2m = _cycles(qm)
        if _match_cycle(a1, e1, a2m, e2m) is not None:
            return Congruence.MIRROR
    return Congruence.NONE


def has_line_symmetry(p: LabeledPolygon) -> bool:
    return congruent(p, reflect(p), allow_mirror=False) == Congruence.DIRECT


def congruence_isometry(
    p: LabeledPolygon, q: LabeledPolygon, mirrored: bool, rotation_snap=None
) -> Optional[Isometry]:
    """An isometry taking p onto q with the requested chirality, or None.

    rotation_snap: optional list of ExactAngles to snap the rotation to.
    """
    from fractions import Fraction

    src = reflect(p) if mirrored else p
    a1, e1 = _cycles(src)
    a2, e2 = _cycles(q)
    shift = _match_cycle(a2, e2, a1, e1)
    if shift is None:
        return None
    n = p.n
    p0 = src.vertices[shift % n]
    p1 = src.vertices[(shift + 1) % n]
    q0, q1 = q.vertices[0], q.vertices[1]
    ang = math.degrees(
        math.atan2(q1[1] - q0[1], q1[0] - q0[0])
        - math.atan2(p1[1] - p0[1], p1[0] - p0[0])
    ) % 360.0
    rot = None
    if rotation_snap:
        for cand in rotation_snap:
            if abs(((as_angle(cand).degrees() - ang + 180.0) % 360.0) - 180.0) < 1e-6:
                rot = as_angle(cand)
                break
    if rot is None:
        rot = ExactAngle(Fraction(round(ang * 10**9), 10**9))
    m = Isometry(rot).matrix()
    t = np.asarray(q0) - m @ p0
    iso = Isometry(rot, (float(t[0]), float(t[1]))).compose(
        Isometry(deg(0), (0.0, 0.0), mirrored)
    )
    moved = apply(iso, p)
    # moved is ccw; find best cyclic alignment against q and verify
    best = None
    for s in range(n):
        off = max(
            float(np.linalg.norm(moved.vertices[(i + s) % n] - q.vertices[i]))
            for i in range(n)
        )
        if best is None or off < best:
            best = off
    if best is None or best > 1e-6:
        return None
    return iso

"""Division of the 14-gon into five convex pieces, six parameterised ways.

Every method keeps three fixed congruent pentagons ("P1", angles
90-120-105-105-120) in corners of the 14-gon and splits the remaining region
with one straight cut whose position is the method parameter:

* M1(alpha): P1 at X3, X9, X11; cut pivots at R (one unit up the X8
  bisector); alpha is the angle of the X7-side piece at R.
* M2(beta): P1 at X7, X9, X11; cut pivots at the reflex corner X1; beta is
  the angle of the X3-side piece at X1.
* M4(gamma): P1 at X3, X7, X9; cut pivots at S (one unit up the X10
  bisector); gamma is the angle of the X14-side piece at S.
* M3(t): all four corner pentagons keep their angles but shrink towards the
  corners (t is the edge ratio X6Q : X5X6), leaving a heptagon.
* D(delta, eps): cuts from the X5/X10 bisectors against the X1/X13 corners;
  produces two mirror pairs plus a center piece.
* D6(u): like M3 but with the three congruent pentagons tilted so they are
  congruent only up to reflection; exposes the derived angles zeta/eta.

Piece corner angles are linear in the parameters and are carried exactly;
coordinates come from ray intersections in float. The constructors
cross-check one against the other (make_polygon rejects any mismatch).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .angles import ExactAngle, GAMMA_STAR, as_angle, deg
from .geom import (
    Congruence,
    Isometry,
    LabeledPolygon,
    congruence_isometry,
    congruent,
    has_line_symmetry,
    is_convex,
    make_polygon,
    signed_area,
    vec,
)
from .tile11 import construct_tile11


class OutOfDomainError(ValueError):
    pass


class DegenerateError(ValueError):
    pass


class Method(enum.Enum):
    M1 = "M1"
    M2 = "M2"
    M3 = "M3"
    M4 = "M4"
    D = "D"
    D6 = "D6"


@dataclass(frozen=True)
class DivisionSpec:
    method: Method
    alpha: Optional[ExactAngle] = None
    beta: Optional[ExactAngle] = None
    gamma: Optional[ExactAngle] = None
    delta: Optional[ExactAngle] = None
    eps: Optional[ExactAngle] = None
    t: Optional[Fraction] = None
    u: Optional[Fraction] = None

    def describe(self) -> str:
        m = self.method.value
        if self.method is Method.M1:
            return f"M1(alpha={self.alpha.degrees():g})"
        if self.method is Method.M2:
            return f"M2(beta={self.beta.degrees():g})"
        if self.method is Method.M3:
            return f"M3(t={self.t})"
        if self.method is Method.M4:
            return f"M4(gamma={self.gamma.degrees():g})"
        if self.method is Method.D:
            return f"D(delta={self.delta.degrees():g}, eps={self.eps.degrees():g})"
        return f"D6(u={self.u})"


def m1(alpha) -> DivisionSpec:
    return DivisionSpec(Method.M1, alpha=as_angle(alpha))


def m2(beta) -> DivisionSpec:
    return DivisionSpec(Method.M2, beta=as_angle(beta))


def m3(t) -> DivisionSpec:
    return DivisionSpec(Method.M3, t=Fraction(t))


def m4(gamma) -> DivisionSpec:
    return DivisionSpec(Method.M4, gamma=as_angle(gamma))


def d(delta, eps) -> DivisionSpec:
    return DivisionSpec(Method.D, delta=as_angle(delta), eps=as_angle(eps))


def d6(u) -> DivisionSpec:
    return DivisionSpec(Method.D6, u=Fraction(u))


# ---------------------------------------------------------------------------
# landmarks

def _u(degrees: float) -> np.ndarray:
    r = math.radians(degrees)
    return np.array([math.cos(r), math.sin(r)])


def _landmarks():
    t11 = construct_tile11()
    X = {i: t11.vertex(i) for i in range(1, 15)}
    R = X[8] + _u(120.0)   # unit along the X8 bisector
    S = X[10] + _u(150.0)  # unit along the X10 bisector
    return X, R, S


def _ray_segment(p0, direction_deg, a, b):
    """Intersection of ray p0 + t*dir (t >= 0) with segment a-b, or None."""
    d = _u(direction_deg)
    a = np.asarray(a, float)
    b = np.asarray(b, float)
    e = b - a
    det = d[0] * (-e[1]) - (-e[0]) * d[1]
    if abs(det) < 1e-12:
        return None
    rhs = a - np.asarray(p0, float)
    t = (rhs[0] * (-e[1]) - (-e[0]) * rhs[1]) / det
    s = (d[0] * rhs[1] - d[1] * rhs[0]) / det
    if t >= -1e-9 and -1e-9 <= s <= 1 + 1e-9:
        return np.asarray(p0, float) + t * d
    return None


def _ray_ray(p0, d0_deg, p1, d1_deg):
    d0, d1 = _u(d0_deg), _u(d1_deg)
    m = np.array([[d0[0], -d1[0]], [d0[1], -d1[1]]])
    t, _ = np.linalg.solve(m, np.asarray(p1, float) - np.asarray(p0, float))
    return np.asarray(p0, float) + t * d0


# ---------------------------------------------------------------------------
# result types

@dataclass
class PieceCensus:
    """Shape census of a division: edge counts and congruence classes."""

    by_edges: dict[int, int]            # edge count -> number of classes
    n_mirror_sensitive: int             # the paper's n in ASPcvx(n, m)
    m_mirror_insensitive: int           # the paper's m
    class_sizes: dict[str, int]         # representative label -> multiplicity

    def shape_multiset(self) -> tuple[int, ...]:
        out = []
        for edges, count in sorted(self.by_edges.items()):
            out.extend([edges] * count)
        return tuple(out)


@dataclass
class DivisionResult:
    spec: DivisionSpec
    cells: list[LabeledPolygon]                 # pieces in 14-gon coordinates
    prototypes: dict[str, LabeledPolygon]       # one per mirror-sensitive class
    assembly: list[tuple[str, Isometry]]        # prototype id -> cell isometry
    census: PieceCensus
    zeta: Optional[ExactAngle] = None           # D6 derived angles
    eta: Optional[ExactAngle] = None
    x6x7_ne_qr: Optional[bool] = None           # M3 conjecture condition

    def piece(self, label: str) -> LabeledPolygon:
        for c in self.cells:
            if c.label == label:
                return c
        raise KeyError(label)

    def area_sum(self) -> float:
        return sum(signed_area(c.vertices) for c in self.cells)


# ---------------------------------------------------------------------------
# the fixed pentagon cells

def _p1_cells():
    X, R, S = _landmarks()
    a = [deg(90), deg(120), deg(105), deg(105), deg(120)]
    cells = {
        "X3": make_polygon([X[3], X[4], X[5], X[1], X[2]], a, "P1@X3"),
        "X7": make_polygon([X[7], X[8], R, X[5], X[6]], a, "P1@X7"),
        "X9": make_polygon([X[9], X[10], S, R, X[8]], a, "P1@X9"),
        "X11": make_polygon([X[11], X[12], X[13], S, X[10]], a, "P1@X11"),
    }
    return cells


def p1_shape() -> LabeledPolygon:
    """The fixed line-symmetric pentagon all methods share."""
    return _p1_cells()["X3"]


# ---------------------------------------------------------------------------
# census / assembly

_ROT_SNAP = [deg(k) for k in range(0, 360, 15)]


def _finish(spec, named_cells, zeta=None, eta=None, x6x7_ne_qr=None) -> DivisionResult:
    cells = []
    for label, pts, angs in named_cells:
        poly = make_polygon(pts, angs, label)
        if not is_convex(poly):
            raise DegenerateError(f"{spec.describe()}: piece {label} is not strictly convex")
        if poly.n < 5:
            raise DegenerateError(f"{spec.describe()}: piece {label} has {poly.n} < 5 edges")
        cells.append(poly)
    if len(cells) != 5:
        raise DegenerateError(f"{spec.describe()}: expected 5 pieces, got {len(cells)}")
    # group into direct-congruence classes
    reps: list[LabeledPolygon] = []
    assign: list[int] = []
    for c in cells:
        for k, r in enumerate(reps):
            if congruent(c, r, allow_mirror=False) == Congruence.DIRECT:
                assign.append(k)
                break
        else:
            reps.append(c)
            assign.append(len(reps) - 1)
    prototypes = {r.label: r for r in reps}
    assembly = []
    for c, k in zip(cells, assign):
        iso = congruence_isometry(reps[k], c, mirrored=False, rotation_snap=_ROT_SNAP)
        if iso is None:
            raise AssertionError(f"no direct isometry onto cell {c.label}")
        assembly.append((reps[k].label, iso))
    # census
    class_sizes = {r.label: assign.count(k) for k, r in enumerate(reps)}
    by_edges: dict[int, int] = {}
    for r in reps:
        by_edges[r.n] = by_edges.get(r.n, 0) + 1
    n_types = len(reps)
    # mirror-insensitive classes
    m_reps: list[LabeledPolygon] = []
    for r in reps:
        if not any(congruent(r, mr, allow_mirror=True) != Congruence.NONE for mr in m_reps):
            m_reps.append(r)
    census = PieceCensus(by_edges, n_types, len(m_reps), class_sizes)
    return DivisionResult(spec, cells, prototypes, assembly, census,
                          zeta=zeta, eta=eta, x6x7_ne_qr=x6x7_ne_qr)


# ---------------------------------------------------------------------------
# methods 1, 2, 4 (angle-parameterised single cut)

def _divide_m1(spec: DivisionSpec) -> DivisionResult:
    alpha = spec.alpha
    if not (deg(75) <= alpha <= deg(180)):
        raise OutOfDomainError(f"M1 needs 75 <= alpha <= 180, got {alpha.degrees():g}")
    X, R, S = _landmarks()
    p1 = _p1_cells()
    fixed = [
        ("P1@X3", p1["X3"].vertices, p1["X3"].interior_angles),
        ("P1@X9", p1["X9"].vertices, p1["X9"].interior_angles),
        ("P1@X11", p1["X11"].vertices, p1["X11"].interior_angles),
    ]
    cut_dir = 300.0 - alpha.degrees()
    a75, a105, a165, a180 = deg(75), deg(105), deg(165), deg(180)
    if alpha == a105:
        pieces = [
            ("P3", [R, S, X[13], X[14], X[1], X[5]],
             [deg(150), deg(150), deg(75), deg(120), deg(165), deg(60)]),
            ("P2", [X[5], X[6], X[7], X[8], R],
             [deg(105), deg(120), deg(90), deg(120), deg(105)]),
        ]
    elif alpha == a165:
        pieces = [
            ("P3", [R, S, X[13], X[14], X[1]],
             [deg(90), deg(150), deg(75), deg(120), deg(105)]),
            ("P2", [X[1], X[5], X[6], X[7], X[8], R],
             [deg(60), deg(165), deg(120), deg(90), deg(120), deg(165)]),
        ]
    elif alpha == a75:
        w = _ray_segment(R, cut_dir, X[5], X[6])
        pieces = [
            ("P3", [S, X[13], X[14], X[1], X[5], w],
             [deg(150), deg(75), deg(120), deg(165), deg(165), deg(45)]),
            ("P2", [w, X[6], X[7], X[8], R],
             [deg(135), deg(120), deg(90), deg(120), deg(75)]),
        ]
    elif alpha == a180:
        w = _ray_segment(R, cut_dir, X[14], X[1])
        pieces = [
            ("P3", [R, S, X[13], X[14], w],
             [deg(75), deg(150), deg(75), deg(120), deg(120)]),
            ("P2", [w, X[1], X[5], X[6], X[7], X[8]],
             [deg(60), deg(165), deg(165), deg(120), deg(90), deg(120)]),
        ]
    elif alpha < a105:
        w = _ray_segment(R, cut_dir, X[5], X[6])
        pieces = [
            ("P3", [R, S, X[13], X[14], X[1], X[5], w],
             [deg(255) - alpha, deg(150), deg(75), deg(120), deg(165), deg(165), alpha - deg(30)]),
            ("P2", [w, X[6], X[7], X[8], R],
             [deg(210) - alpha, deg(120), deg(90), deg(120), alpha]),
        ]
    elif alpha < a165:
        w = _ray_segment(R, cut_dir, X[1], X[5])
        pieces = [
            ("P3", [R, S, X[13], X[14], X[1], w],
             [deg(255) - alpha, deg(150), deg(75), deg(120), deg(165), alpha - deg(45)]),
            ("P2", [w, X[5], X[6], X[7], X[8], R],
             [deg(225) - alpha, deg(165), deg(120), deg(90), deg(120), alpha]),
        ]
    else:
        w = _ray_segment(R, cut_dir, X[14], X[1])
        pieces = [
            ("P3", [R, S, X[13], X[14], w],
             [deg(255) - alpha, deg(150), deg(75), deg(120), alpha - deg(60)]),
            ("P2", [w, X[1], X[5], X[6], X[7], X[8], R],
             [deg(240) - alpha, deg(165), deg(165), deg(120), deg(90), deg(120), alpha]),
        ]
    return _finish(spec, fixed + pieces)


def _divide_m2(spec: DivisionSpec) -> DivisionResult:
    beta = spec.beta
    if not (deg(90) <= beta <= deg(180)):
        raise OutOfDomainError(f"M2 needs 90 <= beta <= 180, got {beta.degrees():g}")
    X, R, S = _landmarks()
    p1 = _p1_cells()
    fixed = [
        ("P1@X7", p1["X7"].vertices, p1["X7"].interior_angles),
        ("P1@X9", p1["X9"].vertices, p1["X9"].interior_angles),
        ("P1@X11", p1["X11"].vertices, p1["X11"].interior_angles),
    ]
    cut_dir = beta.degrees() + 150.0
    b90, b105, b165, b180 = deg(90), deg(105), deg(165), deg(180)
    if beta == b105:
        pieces = [
            ("P2", [X[1], X[2], X[3], X[4], X[5]],
             [deg(105), deg(120), deg(90), deg(120), deg(105)]),
            ("P3", [X[5], R, S, X[13], X[14], X[1]],
             [deg(60), deg(150), deg(150), deg(75), deg(120), deg(165)]),
        ]
    elif beta == b165:
        pieces = [
            ("P2", [X[1], X[2], X[3], X[4], X[5], R],
             [deg(165), deg(120), deg(90), deg(120), deg(165), deg(60)]),
            ("P3", [R, S, X[13], X[14], X[1]],
             [deg(90), deg(150), deg(75), deg(120), deg(105)]),
        ]
    elif beta == b90:
        w = _ray_segment(X[1], cut_dir, X[4], X[5])
        pieces = [
            ("P2", [X[1], X[2], X[3], X[4], w],
             [deg(90), deg(120), deg(90), deg(120), deg(120)]),
            ("P3", [w, X[5], R, S, X[13], X[14]],
             [deg(60), deg(165), deg(150), deg(150), deg(75), deg(120)]),
        ]
    elif beta == b180:
        w = _ray_segment(X[1], cut_dir, R, S)
        pieces = [
            ("P2", [X[2], X[3], X[4], X[5], R, w],
             [deg(120), deg(90), deg(120), deg(165), deg(150), deg(75)]),
            ("P3", [w, S, X[13], X[14], X[1]],
             [deg(105), deg(150), deg(75), deg(120), deg(90)]),
        ]
    elif beta < b105:
        w = _ray_segment(X[1], cut_dir, X[4], X[5])
        pieces = [
            ("P2", [X[1], X[2], X[3], X[4], w],
             [beta, deg(120), deg(90), deg(120), deg(210) - beta]),
            ("P3", [w, X[5], R, S, X[13], X[14], X[1]],
             [beta - deg(30), deg(165), deg(150), deg(150), deg(75), deg(120), deg(270) - beta]),
        ]
    elif beta < b165:
        w = _ray_segment(X[1], cut_dir, X[5], R)
        pieces = [
            ("P2", [X[1], X[2], X[3], X[4], X[5], w],
             [beta, deg(120), deg(90), deg(120), deg(165), deg(225) - beta]),
            ("P3", [w, R, S, X[13], X[14], X[1]],
             [beta - deg(45), deg(150), deg(150), deg(75), deg(120), deg(270) - beta]),
        ]
    else:
        w = _ray_segment(X[1], cut_dir, R, S)
        pieces = [
            ("P2", [X[1], X[2], X[3], X[4], X[5], R, w],
             [beta, deg(120), deg(90), deg(120), deg(165), deg(150), deg(255) - beta]),
            ("P3", [w, S, X[13], X[14], X[1]],
             [beta - deg(75), deg(150), deg(75), deg(120), deg(270) - beta]),
        ]
    return _finish(spec, fixed + pieces)


def _divide_m4(spec: DivisionSpec) -> DivisionResult:
    gamma = spec.gamma
    if not (deg(75) <= gamma <= deg(180)):
        raise OutOfDomainError(f"M4 needs 75 <= gamma <= 180, got {gamma.degrees():g}")
    X, R, S = _landmarks()
    p1 = _p1_cells()
    fixed = [
        ("P1@X3", p1["X3"].vertices, p1["X3"].interior_angles),
        ("P1@X7", p1["X7"].vertices, p1["X7"].interior_angles),
        ("P1@X9", p1["X9"].vertices, p1["X9"].interior_angles),
    ]
    cut_dir = 225.0 - gamma.degrees()
    g75, g180 = deg(75), deg(180)
    if gamma == GAMMA_STAR:
        pieces = [
            ("P2", [S, X[10], X[11], X[12], X[14]],
             [deg(255) - gamma, deg(120), deg(90), deg(120), gamma - deg(45)]),
            ("P3", [X[14], X[1], X[5], R, S],
             [deg(165) - gamma, deg(165), deg(60), deg(150), gamma]),
        ]
    elif gamma == g75:
        w = _ray_segment(S, cut_dir, X[14], X[1])
        pieces = [
            ("P2", [X[10], X[11], X[12], X[14], w],
             [deg(120), deg(90), deg(120), deg(120), deg(90)]),
            ("P3", [w, X[1], X[5], R, S],
             [deg(90), deg(165), deg(60), deg(150), deg(75)]),
        ]
    elif gamma == g180:
        w = _ray_segment(S, cut_dir, X[12], X[14])
        pieces = [
            ("P2", [S, X[10], X[11], X[12], w],
             [deg(75), deg(120), deg(90), deg(120), deg(135)]),
            ("P3", [w, X[14], X[1], X[5], R],
             [deg(45), deg(120), deg(165), deg(60), deg(150)]),
        ]
    elif gamma < GAMMA_STAR:
        w = _ray_segment(S, cut_dir, X[14], X[1])
        pieces = [
            ("P2", [S, X[10], X[11], X[12], X[14], w],
             [deg(255) - gamma, deg(120), deg(90), deg(120), deg(120), deg(15) + gamma]),
            ("P3", [w, X[1], X[5], R, S],
             [deg(165) - gamma, deg(165), deg(60), deg(150), gamma]),
        ]
    else:
        w = _ray_segment(S, cut_dir, X[12], X[14])
        pieces = [
            ("P2", [S, X[10], X[11], X[12], w],
             [deg(255) - gamma, deg(120), deg(90), deg(120), gamma - deg(45)]),
            ("P3", [w, X[14], X[1], X[5], R, S],
             [deg(225) - gamma, deg(120), deg(165), deg(60), deg(150), gamma]),
        ]
    return _finish(spec, fixed + pieces)


# ---------------------------------------------------------------------------
# method 3 and the appendix divisions

def _divide_m3(spec: DivisionSpec) -> DivisionResult:
    t = spec.t
    if not (0 < t < 1):
        raise OutOfDomainError(f"M3 needs 0 < t < 1, got {t}")
    X, _, _ = _landmarks()
    q = float(t)
    Q = X[6] + q * (X[5] - X[6])
    Rp = X[8] + q * _u(120.0)
    Sp = X[10] + q * _u(150.0)
    T = X[12] + q * (X[13] - X[12])
    a5 = [deg(90), deg(120), deg(105), deg(105), deg(120)]
    pieces = [
        ("CP1(X3)", [X[3], X[4], X[5], X[1], X[2]], a5),
        ("CP1(X7)", [X[7], X[8], Rp, Q, X[6]], a5),
        ("CP1(X9)", [X[9], X[10], Sp, Rp, X[8]], a5),
        ("CP1(X11)", [X[11], X[12], T, Sp, X[10]], a5),
        ("CP1(X14)", [X[14], X[1], X[5], Q, Rp, Sp, T],
         [deg(120), deg(165), deg(165), deg(75), deg(150), deg(150), deg(75)]),
    ]
    qr = float(np.linalg.norm(Q - Rp))
    return _finish(spec, pieces, x6x7_ne_qr=abs(qr - 1.0) > 1e-9)


def _divide_d(spec: DivisionSpec) -> DivisionResult:
    from .angles import EPS_STAR

    delta, eps = spec.delta, spec.eps
    if not (deg(105) <= delta <= deg(165)):
        raise OutOfDomainError(f"D needs 105 <= delta <= 165, got {delta.degrees():g}")
    if not (EPS_STAR < eps <= deg(120)):
        raise OutOfDomainError(
            f"D needs 60+eps* < eps <= 120, got {eps.degrees():g}"
        )
    if delta + eps < deg(180):
        raise OutOfDomainError("D needs delta + eps >= 180")
    if delta == deg(165) and eps == deg(120):
        raise DegenerateError("delta=165 with eps=120 collapses the center piece")
    X, R, S = _landmarks()
    d105, d165, e120 = deg(105), deg(165), deg(120)
    P = None if delta == d105 else _ray_ray(X[5], 45.0, X[1], delta.degrees() - 210.0)
    T = _ray_ray(X[10], 150.0, X[13], -eps.degrees())

    pieces = []
    if delta == d105:
        a5 = [deg(90), deg(120), deg(105), deg(105), deg(120)]
        pieces.append(("CP(X3)", [X[3], X[4], X[5], X[1], X[2]], a5))
        pieces.append(("CP(X7)", [X[7], X[8], R, X[5], X[6]], a5))
    else:
        pieces.append(("CP(X3)", [X[3], X[4], X[5], P, X[1], X[2]],
                       [deg(90), deg(120), deg(135), deg(255) - delta, delta, deg(120)]))
        pieces.append(("CP(X7)", [X[7], X[8], R, P, X[5], X[6]],
                       [deg(90), deg(120), delta, deg(255) - delta, deg(135), deg(120)]))
    pieces.append(("CP(X9)", [X[9], X[10], T, R, X[8]],
                   [deg(90), deg(120), deg(210) - eps, eps, deg(120)]))
    pieces.append(("CP(X11)", [X[11], X[12], X[13], T, X[10]],
                   [deg(90), deg(120), eps, deg(210) - eps, deg(120)]))

    # center piece: start from the full hexagon corner list and drop the
    # corners that flatten at the special parameters
    center_pts = [X[14], X[1], P, R, T, X[13]]
    center_angs = [
        deg(120),
        deg(270) - delta,
        2 * delta - deg(150),
        deg(360) - delta - eps,
        2 * eps - deg(60),
        deg(180) - eps,
    ]
    if delta == d105:
        center_pts[2] = X[5]
        center_angs[2] = deg(60)  # 270 - 2*105 at the merged corner
    keep = [True] * 6
    if delta + eps == deg(180):
        keep[3] = False      # flat at R
    if eps == e120:
        keep[4] = False      # flat at T (T = S)
    if delta == d165:
        keep[2] = False      # flat at P
    pieces.append((
        "CP(X14)",
        [p for p, k in zip(center_pts, keep) if k],
        [a for a, k in zip(center_angs, keep) if k],
    ))
    return _finish(spec, pieces)


def _d6_corner_angle(uq: float, v: float, X) -> float:
    """Angle of the X7-corner pentagon at its bisector apex, in degrees."""
    Q = X[6] + uq * (X[5] - X[6])
    Rp = X[8] + v * _u(120.0)
    w = Q - Rp
    return (300.0 - math.degrees(math.atan2(w[1], w[0]))) % 360.0


def _divide_d6(spec: DivisionSpec) -> DivisionResult:
    u = spec.u
    if not (0 < u <= 1):
        raise OutOfDomainError(f"D6 needs 0 < u <= 1, got {u}")
    X, _, _ = _landmarks()
    zeta_b = deg(90) + deg(30) * u      # pentagon apex angle; 120 at u=1
    uq = 0.5 + float(u) / 4.0           # position of the cut on the X5X6 edge
    target = zeta_b.degrees()
    lo, hi = 1e-6, 3.0
    flo = _d6_corner_angle(uq, lo, X) - target
    fhi = _d6_corner_angle(uq, hi, X) - target
    if flo * fhi > 0:
        raise DegenerateError(f"D6(u={u}): no cut position realises the apex angle")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = _d6_corner_angle(uq, mid, X) - target
        if flo * fm <= 0:
            hi = mid
        else:
            lo, flo = mid, fm
    v = 0.5 * (lo + hi)
    if not (1e-6 < v < 1 - 1e-9):
        raise DegenerateError(f"D6(u={u}): cut position {v:.6f} leaves the edge")
    Q = X[6] + uq * (X[5] - X[6])
    Rp = X[8] + v * _u(120.0)
    Sp = X[10] + uq * _u(150.0)
    T = X[12] + v * (X[13] - X[12])
    b = zeta_b
    c = deg(210) - b
    pent = [deg(90), deg(120), b, c, deg(120)]
    pent_mirror = [deg(90), deg(120), c, b, deg(120)]
    pieces = [
        ("CP2(X3)", [X[3], X[4], X[5], X[1], X[2]],
         [deg(90), deg(120), deg(105), deg(105), deg(120)]),
        ("CP2(X7)", [X[7], X[8], Rp, Q, X[6]], pent),
        ("CP2(X9)", [X[9], X[10], Sp, Rp, X[8]], pent_mirror),
        ("CP2(X11)", [X[11], X[12], T, Sp, X[10]], pent),
    ]
    center_pts = [X[14], X[1], X[5], Q, Rp, Sp, T]
    center_angs = [deg(120), deg(165), deg(165), deg(180) - c,
                   deg(360) - 2 * b, 2 * b - deg(60), deg(180) - b]
    if b == deg(120):
        # the corner at the second apex flattens: Case-5 hexagon
        keep = [True, True, True, True, True, False, True]
        center_pts = [p for p, k in zip(center_pts, keep) if k]
        center_angs = [a for a, k in zip(center_angs, keep) if k]
    pieces.append(("CP2(X14)", center_pts, center_angs))
    zeta = deg(360) - 2 * b
    eta = b - deg(30)
    return _finish(spec, pieces, zeta=zeta, eta=eta)


def divide(spec: DivisionSpec) -> DivisionResult:
    """Construct the five pieces and their assembly for a division spec."""
    if spec.method is Method.M1:
        return _divide_m1(spec)
    if spec.method is Method.M2:
        return _divide_m2(spec)
    if spec.method is Method.M3:
        return _divide_m3(spec)
    if spec.method is Method.M4:
        return _divide_m4(spec)
    if spec.method is Method.D:
        return _divide_d(spec)
    if spec.method is Method.D6:
        return _divide_d6(spec)
    raise ValueError(spec.method)


def piece_census(res: DivisionResult) -> PieceCensus:
    return res.census


def tileset(res: DivisionResult, name: Optional[str] = None, reflect_ids: Sequence[str] = ()) -> "TileSet":
    """Tile set of the division's mirror-sensitive prototypes.

    Anterior and posterior pieces are distinct types; mayReflect stays False
    unless a prototype id is listed in reflect_ids (counterexample fixtures).
    """
    from .patch import Prototile, TileSet

    tiles = tuple(
        Prototile(pid, shape, may_reflect=pid in reflect_ids)
        for pid, shape in res.prototypes.items()
    )
    return TileSet(name or res.spec.describe(), tiles)

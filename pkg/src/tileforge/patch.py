"""Finite tiling patches: placements, validation, periodicity certification.

Non-edge-to-edge contact is the norm here, so validation works on meeting
points and segment overlaps rather than whole-edge matching.  Meeting points
are clustered at 1e-7 (coarser than the 1e-9 arithmetic tolerance) to absorb
accumulated placement error.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy.spatial import cKDTree
from shapely.geometry import LineString, Point as SPoint, Polygon as SPolygon
from shapely.ops import unary_union
from shapely.strtree import STRtree

from .angles import ExactAngle, Roundness, angle_sum, deg, is_round
from .geom import Isometry, LabeledPolygon, apply as geom_apply, signed_area

CLUSTER_TOL = 1e-7
AREA_TOL = 1e-8


class PatchError(ValueError):
    pass


class UnknownTileError(PatchError):
    pass


class PolicyViolationError(PatchError):
    pass


class DegenerateLatticeError(PatchError):
    pass


@dataclass(frozen=True)
class Prototile:
    id: str
    shape: LabeledPolygon
    may_reflect: bool = False


@dataclass(frozen=True)
class TileSet:
    name: str
    tiles: tuple[Prototile, ...]

    def __post_init__(self):
        ids = [t.id for t in self.tiles]
        if len(set(ids)) != len(ids):
            raise PatchError("duplicate prototile ids")

    def get(self, tile_id: str) -> Prototile:
        for t in self.tiles:
            if t.id == tile_id:
                return t
        raise UnknownTileError(tile_id)

    def ids(self) -> list[str]:
        return [t.id for t in self.tiles]


@dataclass(frozen=True)
class Placement:
    tile_id: str
    iso: Isometry

    def polygon(self, ts: TileSet) -> LabeledPolygon:
        return geom_apply(self.iso, ts.get(self.tile_id).shape)


@dataclass
class Patch:
    placements: list[Placement] = field(default_factory=list)

    def __len__(self):
        return len(self.placements)


@dataclass
class ValidationReport:
    ok: bool
    overlaps: list[tuple[int, int]] = field(default_factory=list)
    gaps: list[tuple[float, float]] = field(default_factory=list)
    bad_stars: list[tuple[float, float, str]] = field(default_factory=list)
    edge_to_edge: bool = True

    def summary(self) -> str:
        state = "ok" if self.ok else "INVALID"
        return (
            f"{state}: {len(self.overlaps)} overlaps, {len(self.gaps)} gaps, "
            f"{len(self.bad_stars)} bad stars, "
            f"edge-to-edge={'yes' if self.edge_to_edge else 'no'}"
        )


def _cluster_points(points: np.ndarray, tol: float = CLUSTER_TOL) -> list[list[int]]:
    """Group indices of points within tol (transitively)."""
    if len(points) == 0:
        return []
    tree = cKDTree(points)
    pairs = tree.query_pairs(tol)
    parent = list(range(len(points)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in pairs:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
    groups: dict[int, list[int]] = {}
    for i in range(len(points)):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def _point_on_segment_interior(p, a, b, tol=CLUSTER_TOL) -> bool:
    ab = b - a
    L = np.linalg.norm(ab)
    if L < tol:
        return False
    t = float(np.dot(p - a, ab) / (L * L))
    if t < tol / L or t > 1 - tol / L:
        return False
    closest = a + t * ab
    return float(np.linalg.norm(p - closest)) < tol


def validate_patch(ts: TileSet, patch: Patch) -> ValidationReport:
    """Interior disjointness, star sums, holes, policy, edge-to-edge class."""
    for pl in patch.placements:
        proto = ts.get(pl.tile_id)  # raises UnknownTileError
        if pl.iso.mirrored and not proto.may_reflect:
            raise PolicyViolationError(
                f"mirrored placement of one-sided tile {pl.tile_id!r}"
            )
    report = ValidationReport(ok=True)
    if not patch.placements:
        return report
    polys = [pl.polygon(ts) for pl in patch.placements]
    shp = [p.shapely() for p in polys]

    tree = STRtree(shp)
    for i, geom in enumerate(shp):
        for j in tree.query(geom):
            j = int(j)
            if j <= i:
                continue
            inter = shp[i].intersection(shp[j])
            if inter.area > AREA_TOL:
                report.overlaps.append((i, j))
    union = unary_union(shp)
    union_boundary = union.boundary

    # holes count as gaps only in the patch's inner region: pockets within
    # one tile diameter of the outer frontier are the frontier's business
    diam = max(
        float(np.linalg.norm(np.asarray(a) - np.asarray(b)))
        for t in ts.tiles
        for a in t.shape.vertices
        for b in t.shape.vertices
    )
    polys_u = [union] if union.geom_type == "Polygon" else list(union.geoms)
    for pu in polys_u:
        for ring in pu.interiors:
            c = ring.centroid
            if pu.exterior.distance(c) > diam:
                report.gaps.append((c.x, c.y))

    # vertex stars
    corners = []
    for pi, poly in enumerate(polys):
        for vi, v in enumerate(poly.vertices):
            corners.append((pi, vi, v, poly.interior_angles[vi]))
    pts = np.array([c[2] for c in corners])
    clusters = _cluster_points(pts)
    edges = []
    for pi, poly in enumerate(polys):
        n = poly.n
        for k in range(n):
            edges.append((pi, poly.vertices[k], poly.vertices[(k + 1) % n]))
    for group in clusters:
        p = pts[group[0]]
        if union_boundary.distance(SPoint(p)) < CLUSTER_TOL:
            continue  # frontier or hole boundary: no constraint here
        total = angle_sum([corners[i][3] for i in group])
        n_pass = 0
        member_pis = {corners[i][0] for i in group}
        for pi, a, b in edges:
            if _point_on_segment_interior(p, a, b):
                n_pass += 1
        want = 360 - 180 * n_pass
        if want < 0 or total != deg(want):
            report.bad_stars.append(
                (float(p[0]), float(p[1]),
                 f"sum {total.degrees():.6f} with {n_pass} edges through, want {want}")
            )

    # edge-to-edge: every positive-length contact must be a full edge of both
    report.edge_to_edge = _classify_edge_to_edge(polys, shp)
    report.ok = not report.overlaps and not report.gaps and not report.bad_stars
    return report


def _classify_edge_to_edge(polys, shp) -> bool:
    tree = STRtree(shp)
    for i in range(len(polys)):
        for j in tree.query(shp[i]):
            j = int(j)
            if j <= i:
                continue
            inter = shp[i].boundary.intersection(shp[j].boundary)
            segs = []
            if inter.is_empty:
                continue
            geoms = getattr(inter, "geoms", [inter])
            for g in geoms:
                if g.geom_type == "LineString" and g.length > CLUSTER_TOL:
                    segs.append(g)
            for seg in segs:
                ends = [np.array(seg.coords[0]), np.array(seg.coords[-1])]
                full_edge_of_both = True
                for poly in (polys[i], polys[j]):
                    n = poly.n
                    hit = False
                    for k in range(n):
                        a, b = poly.vertices[k], poly.vertices[(k + 1) % n]
                        if (
                            np.linalg.norm(ends[0] - a) < CLUSTER_TOL
                            and np.linalg.norm(ends[1] - b) < CLUSTER_TOL
                        ) or (
                            np.linalg.norm(ends[0] - b) < CLUSTER_TOL
                            and np.linalg.norm(ends[1] - a) < CLUSTER_TOL
                        ):
                            hit = True
                            break
                    if not hit:
                        full_edge_of_both = False
                        break
                if not full_edge_of_both:
                    return False
    return True


def verify_periodic(ts: TileSet, patch: Patch, v1, v2) -> bool:
    """True iff the 3x3 neighbourhood of lattice translates of the patch
    covers the fundamental parallelogram exactly once."""
    v1 = np.asarray(v1, dtype=float)
    v2 = np.asarray(v2, dtype=float)
    det = v1[0] * v2[1] - v1[1] * v2[0]
    if abs(det) < 1e-9:
        raise DegenerateLatticeError("lattice vectors are linearly dependent")
    polys = [pl.polygon(ts).shapely() for pl in patch.placements]
    total = sum(p.area for p in polys)
    if abs(total - abs(det)) > 1e-6:
        return False
    copies = []
    for i in range(-1, 2):
        for j in range(-1, 2):
            off = i * v1 + j * v2
            for p in polys:
                copies.append(
                    SPolygon([(x + off[0], y + off[1]) for x, y in p.exterior.coords[:-1]])
                )
    tree = STRtree(copies)
    for i, g in enumerate(copies):
        for j in tree.query(g):
            j = int(j)
            if j <= i:
                continue
            if copies[i].intersection(copies[j]).area > 1e-6:
                return False
    par = SPolygon([(0.0, 0.0), tuple(v1), tuple(v1 + v2), tuple(v2)])
    uncovered = par.difference(unary_union(copies))
    return uncovered.area < 1e-6


def patch_union(ts: TileSet, patch: Patch):
    return unary_union([pl.polygon(ts).shapely() for pl in patch.placements])

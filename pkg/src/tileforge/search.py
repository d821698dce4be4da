"""Bounded tiling search: vertex stars, corona growth, forced assembly.

The engine mirrors the hand method of the source arguments: work at the most
constrained uncovered corner, enumerate the corner wedges that fit exactly,
and keep every partial configuration valid.  Placement candidates are
anchored at frontier vertices (corner-to-corner or corner-covering-edge);
configurations whose every vertex is a sliding T-contact are outside the
search model, so negative verdicts are reported within these bounds.

Periodicity is discovered opportunistically (repeated same-pose placements)
and always certified through ``patch.verify_periodic`` before being reported.
"""

from __future__ import annotations

import enum
import itertools
import math
import time
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np
import shapely
from shapely.geometry import Point as SPoint, Polygon as SPolygon
from shapely.ops import unary_union

_PRECISION_GRID = 1e-7  # matches the meeting-point clustering radius


def _gpoly(points) -> SPolygon:
    """Fixed-precision polygon so collinear contacts merge robustly."""
    return shapely.set_precision(
        SPolygon([tuple(p) for p in points]), _PRECISION_GRID
    )

from .angles import ExactAngle, as_angle, atom_degrees, AngleAtom, deg
from .geom import Isometry, LabeledPolygon, numeric_interior_angle
from .patch import Patch, Placement, Prototile, TileSet, validate_patch, verify_periodic

CLUSTER_TOL = 1e-7
ANGLE_EPS = 5e-4  # absorbs precision-grid noise in ring angles


# ---------------------------------------------------------------------------
# policy and reports

@dataclass(frozen=True)
class SearchPolicy:
    allow_reflection: bool = False
    max_radius: int = 1
    max_placements: int = 64
    max_nodes: int = 400_000
    max_completions: int = 4000
    deadline_s: float = 600.0
    star_cap: int = 20_000
    seed_order: str = "canonical"


class Status(enum.Enum):
    ALL_COMPLETIONS_FORCED = "ALL_COMPLETIONS_FORCED"
    NO_COMPLETION = "NO_COMPLETION"
    PERIODIC_FOUND = "PERIODIC_FOUND"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass
class CoronaReport:
    status: Status
    completions: int = 0
    witness: Optional[Patch] = None
    lattice: Optional[tuple[np.ndarray, np.ndarray]] = None
    elapsed: float = 0.0
    nodes: int = 0
    note: str = ""

    def summary(self) -> str:
        s = f"{self.status.value} (completions={self.completions}, nodes={self.nodes}, {self.elapsed:.2f}s)"
        if self.lattice is not None:
            v1, v2 = self.lattice
            s += f" lattice v1=({v1[0]:.6g},{v1[1]:.6g}) v2=({v2[0]:.6g},{v2[1]:.6g})"
        if self.note:
            s += f" [{self.note}]"
        return s


class SearchExplosionError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# vertex stars

@dataclass(frozen=True)
class StarCorner:
    tile_id: str
    corner: int
    mirrored: bool
    angle: ExactAngle


@dataclass(frozen=True)
class VertexStar:
    corners: tuple[StarCorner, ...]
    kind: str  # "FULL" or "FLAT"

    def angle_multiset(self) -> tuple[float, ...]:
        return tuple(sorted(round(c.angle.degrees(), 6) for c in self.corners))

    def canonical(self) -> tuple:
        seq = [(c.tile_id, c.corner, c.mirrored, c.angle.serialize()) for c in self.corners]
        best = None
        n = len(seq)
        for rev in (False, True):
            s = seq[::-1] if rev else seq
            for k in range(n):
                cand = tuple(s[k:] + s[:k])
                if best is None or cand < best:
                    best = cand
        return (self.kind, best)


def _corner_pool(ts: TileSet, policy: SearchPolicy):
    pool = []
    for tile in ts.tiles:
        states = [False]
        if policy.allow_reflection and tile.may_reflect:
            states.append(True)
        for mir in states:
            shape = tile.shape
            n = shape.n
            angles = list(shape.interior_angles)
            if mir:
                angles = angles[::-1]
            for ci in range(n):
                pool.append(StarCorner(tile.id, ci, mir, angles[ci]))
    return pool


def enumerate_vertex_stars(
    ts: TileSet,
    policy: SearchPolicy = SearchPolicy(),
    anchor: Optional[tuple[str, int]] = None,
) -> list[VertexStar]:
    """All cyclic corner arrangements with exact angle sum 360 (or 180).

    The anchor (tile_id, corner_index) pins one unmirrored corner; without it
    every star class is enumerated.  Classes are reported up to rotation and
    reflection of the cyclic sequence.
    """
    pool = _corner_pool(ts, policy)
    pool.sort(key=lambda c: (c.tile_id, c.corner, c.mirrored))
    out: dict[tuple, VertexStar] = {}

    def push(seq, kind):
        star = VertexStar(tuple(seq), kind)
        out[star.canonical()] = star
        if len(out) > policy.star_cap:
            raise SearchExplosionError("vertex star cap exceeded")

    starts: list[StarCorner]
    if anchor is not None:
        starts = [c for c in pool if c.tile_id == anchor[0] and c.corner == anchor[1] and not c.mirrored]
    else:
        starts = pool

    def extend(seq, total):
        for target, kind in ((deg(360), "FULL"), (deg(180), "FLAT")):
            if total == target and len(seq) >= 2:
                push(seq, kind)
        if total.degrees() >= 360.0 - 1e-9:
            return
        for c in pool:
            t = total + c.angle
            if t.degrees() <= 360.0 + 1e-9:
                extend(seq + [c], t)

    for s in starts:
        extend([s], s.angle)
    return sorted(out.values(), key=lambda st: st.canonical())


# ---------------------------------------------------------------------------
# geometry engine

def _rotm(a_deg: float) -> np.ndarray:
    a = math.radians(a_deg)
    c, s = math.cos(a), math.sin(a)
    return np.array([[c, -s], [s, c]])


class _Pose:
    """Transformed (possibly mirrored) prototile with cached data."""

    def __init__(self, tile: Prototile, mirrored: bool):
        self.tile = tile
        self.mirrored = mirrored
        pts = [np.asarray(p, float) for p in tile.shape.vertices]
        angs = list(tile.shape.interior_angles)
        if mirrored:
            pts = [np.array([-p[0], p[1]]) for p in pts][::-1]
            angs = angs[::-1]
        self.pts = pts
        self.angles = angs
        n = len(pts)
        self.out_dirs = [
            math.degrees(math.atan2(*(pts[(i + 1) % n] - pts[i])[::-1])) for i in range(n)
        ]

    @property
    def n(self):
        return len(self.pts)


class EPlacement:
    """Engine placement: float pose; exact corner angles ride along."""

    __slots__ = ("tile_id", "mirrored", "rot", "tr", "pts", "angles", "poly", "key")

    def __init__(self, pose: _Pose, rot: float, tr: np.ndarray):
        self.tile_id = pose.tile.id
        self.mirrored = pose.mirrored
        self.rot = rot % 360.0
        self.tr = np.asarray(tr, float)
        m = _rotm(self.rot)
        self.pts = [m @ p + self.tr for p in pose.pts]
        self.angles = pose.angles
        self.poly = _gpoly(self.pts)
        self.key = (
            self.tile_id,
            self.mirrored,
            round(self.rot, 6) % 360.0,
            round(self.tr[0], 6),
            round(self.tr[1], 6),
        )


_ATOM_G = atom_degrees(AngleAtom.GAMMA_STAR_EXCESS)
_ATOM_E = atom_degrees(AngleAtom.EPS_STAR_EXCESS)


def snap_exact_angle(value_deg: float) -> ExactAngle:
    """Snap a float angle (mod 360) to q0 + q1*G + q2*E with small q1,q2."""
    v = value_deg % 360.0
    best = None
    for q1 in range(-4, 5):
        for q2 in range(-4, 5):
            rest = v - q1 * _ATOM_G - q2 * _ATOM_E
            snapped = round(rest * 2) / 2  # piece angles live on half-degrees
            err = abs(rest - snapped)
            cost = (err > 1e-7, abs(q1) + abs(q2), err)
            if err < 1e-6 and (best is None or cost < best[0]):
                best = (cost, ExactAngle(Fraction(snapped).limit_denominator(10**6),
                                         Fraction(q1), Fraction(q2)))
    if best is None:
        return ExactAngle(Fraction(round(v * 10**9), 10**9))
    return best[1]


def _snap_rot(value_deg: float) -> float:
    """Kill accumulated drift: placement rotations in this workbench live on
    the half-degree grid shifted by the two irrational atoms."""
    v = value_deg % 360.0
    best = None
    for q1 in (-2, -1, 0, 1, 2):
        for q2 in (-2, -1, 0, 1, 2):
            rest = v - q1 * _ATOM_G - q2 * _ATOM_E
            snapped = round(rest * 2.0) / 2.0
            err = abs(rest - snapped)
            if err < 2e-5 and (best is None or err < best[0]):
                best = (err, (snapped + q1 * _ATOM_G + q2 * _ATOM_E) % 360.0)
    return best[1] if best is not None else v


def engine_placement_to_patch(placements: Sequence[EPlacement]) -> Patch:
    out = []
    for pl in placements:
        iso = Isometry(snap_exact_angle(pl.rot), (float(pl.tr[0]), float(pl.tr[1])), pl.mirrored)
        out.append(Placement(pl.tile_id, iso))
    return Patch(out)


def _ring_ccw(coords):
    pts = [np.array(c) for c in coords[:-1]]
    s = sum(pts[i][0] * pts[(i + 1) % len(pts)][1] - pts[(i + 1) % len(pts)][0] * pts[i][1]
            for i in range(len(pts)))
    return pts if s > 0 else pts[::-1]


def _gaps_of_union(union):
    """Free sectors on the union frontier.

    Each gap is (point, start_dir_deg, width_deg, chain) where chain lists
    (ring_vertex, distance) collinear along the start ray; pass-through
    placements anchor there.
    """
    gaps = []

    def handle(pts, free_inside):
        n = len(pts)
        for i in range(n):
            prev, cur, nxt = pts[(i - 1) % n], pts[i], pts[(i + 1) % n]
            ia = numeric_interior_angle(prev, cur, nxt)
            if free_inside:
                width = ia
                first = nxt
                step = +1
            else:
                width = 360.0 - ia
                first = prev
                step = -1
            if width <= 1e-7:
                continue
            d = first - cur
            start = math.degrees(math.atan2(d[1], d[0]))
            ray = d / np.linalg.norm(d)
            chain = [(first, float(np.linalg.norm(d)))]
            k = i + 2 * step
            while len(chain) < 6:
                w = pts[k % n]
                dv = w - cur
                dist = float(np.linalg.norm(dv))
                if dist < 1e-9 or abs(dv[0] * ray[1] - dv[1] * ray[0]) > CLUSTER_TOL or dv @ ray < 0:
                    break
                chain.append((w, dist))
                k += step
            gaps.append((cur, start % 360.0, width, chain))

    polys = [union] if union.geom_type == "Polygon" else [
        g for g in getattr(union, "geoms", []) if g.geom_type == "Polygon"
    ]
    for p in polys:
        handle(_ring_ccw(p.exterior.coords), False)
        for r in p.interiors:
            handle(_ring_ccw(r.coords), True)
    return gaps


@dataclass
class _Node:
    placements: list
    union: object
    keys: frozenset


class Engine:
    """DFS gap-filling search over a tile set."""

    def __init__(self, ts: TileSet, policy: SearchPolicy, subset: Optional[Sequence[str]] = None):
        self.ts = ts
        self.policy = policy
        ids = list(subset) if subset is not None else ts.ids()
        self.poses = []
        for tid in sorted(ids):
            tile = ts.get(tid)
            states = [False]
            if policy.allow_reflection and tile.may_reflect:
                states.append(True)
            for mir in states:
                self.poses.append(_Pose(tile, mir))
        self.corner_values: list[ExactAngle] = sorted(
            {a for pose in self.poses for a in pose.angles},
            key=lambda a: a.degrees(),
        )
        self.min_corner = min(a.degrees() for a in self.corner_values)
        self._fillable_cache: dict[tuple, bool] = {}
        self.nodes = 0
        self.t0 = time.time()
        self.aborted = False

    def remaining_fillable(self, remaining_deg: float) -> bool:
        """Can `remaining` degrees be closed by available corners (one flat
        pass-through allowed)?  Numeric-on-exact-values coin check; a sound
        necessary condition used to prune dead frontier vertices."""
        vals = [a.degrees() for a in self.corner_values]

        def ok(rem: float) -> bool:
            key = round(rem, 3)
            if key in self._fillable_cache:
                return self._fillable_cache[key]
            if abs(rem) < ANGLE_EPS:
                res = True
            elif rem < self.min_corner - ANGLE_EPS:
                res = False
            else:
                res = any(ok(rem - v) for v in vals if v <= rem + ANGLE_EPS)
            self._fillable_cache[key] = res
            return res

        if ok(remaining_deg):
            return True
        if remaining_deg >= 180.0 - ANGLE_EPS and ok(remaining_deg - 180.0):
            return True  # covered flat by an edge through the point
        return False

    def out_of_budget(self):
        if self.nodes >= self.policy.max_nodes or time.time() - self.t0 > self.policy.deadline_s:
            self.aborted = True
            return True
        return False

    # -- move generation ---------------------------------------------------
    def moves_for_gap(self, gap, placements):
        pt, start, width, chain = gap
        moves = []
        seen = set()
        for pose in self.poses:
            for ci in range(pose.n):
                ang = pose.angles[ci].degrees()
                if ang > width + ANGLE_EPS:
                    continue
                # corner at the gap point, flush against the start ray
                rot = _snap_rot(start - pose.out_dirs[ci])
                tr = np.asarray(pt, float) - _rotm(rot) @ pose.pts[ci]
                pl = EPlacement(pose, rot, tr)
                if pl.key not in seen:
                    seen.add(pl.key)
                    moves.append(pl)
        if width >= 180.0 - ANGLE_EPS:
            # edge covering the gap point flat, anchored at a collinear ring
            # vertex further along the start ray
            for w, dist in chain:
                for pose in self.poses:
                    n = pose.n
                    for ci in range(n):
                        prev = pose.pts[(ci - 1) % n]
                        edge_len = float(np.linalg.norm(pose.pts[ci] - prev))
                        if edge_len <= dist + CLUSTER_TOL:
                            continue
                        in_dir = pose.out_dirs[(ci - 1) % n]
                        rot = _snap_rot(start - in_dir)
                        tr = np.asarray(w, float) - _rotm(rot) @ pose.pts[ci]
                        pl = EPlacement(pose, rot, tr)
                        if pl.key not in seen:
                            seen.add(pl.key)
                            moves.append(pl)
        moves.sort(key=lambda p: p.key)
        return moves

    def _conflicts(self, union, poly):
        inter = union.intersection(poly)
        return (not inter.is_empty) and inter.area > 1e-8

    # -- corona growth -----------------------------------------------------
    def grow(
        self,
        seeds: Sequence[EPlacement],
        goal: str = "corona",
        on_completion=None,
        detect_periodic: bool = False,
    ) -> CoronaReport:
        """goal='corona': surround seeds max_radius deep, enumerating every
        completion.  goal='fill': depth-first growth to max_placements with
        optional periodic detection."""
        t0 = time.time()
        union0 = unary_union([s.poly for s in seeds])
        base = list(seeds)
        report = CoronaReport(Status.INCONCLUSIVE)
        completions = []
        state = {"found_periodic": None, "any_deadend": False}

        target_polys = [s.poly for s in seeds]

        target_boundary = unary_union([p.boundary for p in target_polys])

        def try_periodic(placements):
            res = scan_for_lattice(self.ts, placements)
            if res is not None:
                state["found_periodic"] = res
                return True
            return False

        def rec(placements, union):
            self.nodes += 1
            if self.out_of_budget():
                return "abort"
            if detect_periodic and len(placements) >= 8 and try_periodic(placements):
                return "abort"
            all_gaps = _gaps_of_union(union)
            # a frontier vertex no corner combination can ever close dooms
            # every extension of this configuration (the collapse test)
            for g in all_gaps:
                if not self.remaining_fillable(g[2]):
                    return "dead"
            if goal == "corona":
                gaps = [g for g in all_gaps
                        if target_boundary.distance(SPoint(g[0])) < CLUSTER_TOL]
            else:
                gaps = all_gaps
            if not gaps:
                if goal == "corona":
                    completions.append(list(placements))
                    if on_completion is not None:
                        on_completion(placements)
                    if len(completions) >= self.policy.max_completions:
                        self.aborted = True
                        return "abort"
                    return "done"
                return "done"
            if len(placements) >= self.policy.max_placements:
                self.aborted = True
                return "abort" if goal == "fill" else "dead"
            gaps.sort(key=lambda g: (round(g[2], 6), round(g[0][0], 6), round(g[0][1], 6)))
            gap = gaps[0]
            any_done = False
            for mv in self.moves_for_gap(gap, placements):
                if self._conflicts(union, mv.poly):
                    continue
                res = rec(placements + [mv], union.union(mv.poly))
                if res == "abort":
                    return "abort"
                if res == "done":
                    any_done = True
                    if goal == "fill":
                        return "done"
            if not any_done:
                state["any_deadend"] = True
            return "done" if any_done else "dead"

        res = rec(base, union0)
        report.elapsed = time.time() - t0
        report.nodes = self.nodes
        if state["found_periodic"] is not None:
            patch, v1, v2 = state["found_periodic"]
            report.status = Status.PERIODIC_FOUND
            report.witness = patch
            report.lattice = (v1, v2)
            return report
        if goal == "corona":
            report.completions = len(completions)
            if self.aborted:
                report.status = Status.INCONCLUSIVE
                report.note = "budget exhausted"
            elif completions:
                report.status = Status.INCONCLUSIVE
                report.note = "completions enumerated"
            else:
                report.status = Status.NO_COMPLETION
            report.witness = None
            report._completions_data = completions  # type: ignore[attr-defined]
            return report
        if res == "dead":
            report.status = Status.NO_COMPLETION
        else:
            report.status = Status.INCONCLUSIVE
            report.note = "growth bound reached without certificate"
        return report


# ---------------------------------------------------------------------------
# periodicity scan

def scan_for_lattice(ts: TileSet, placements: Sequence[EPlacement]):
    """Look for two independent translations between same-pose placements and
    certify a fundamental-domain cluster; returns (Patch, v1, v2) or None."""
    groups: dict[tuple, list[EPlacement]] = {}
    for pl in placements:
        groups.setdefault((pl.tile_id, round(pl.rot, 4), pl.mirrored), []).append(pl)
    counts: dict[tuple, int] = {}
    for pls in groups.values():
        for a, b in itertools.combinations(pls, 2):
            d = b.tr - a.tr
            if np.hypot(*d) > 0.5:
                k = (round(d[0], 6), round(d[1], 6))
                if k[0] < 0 or (k[0] == 0 and k[1] < 0):
                    k = (-k[0], -k[1])
                counts[k] = counts.get(k, 0) + 1
    cands = sorted(counts, key=lambda v: (-counts[v], v[0] ** 2 + v[1] ** 2))[:16]
    vecs = [np.array(v) for v in cands]
    tile_areas = {t.id: abs(t.shape.shapely().area) for t in ts.tiles}
    for v1, v2 in itertools.combinations(vecs, 2):
        det = abs(v1[0] * v2[1] - v1[1] * v2[0])
        if det < 0.5:
            continue
        m = np.array([[v1[0], v2[0]], [v1[1], v2[1]]])
        minv = np.linalg.inv(m)
        base = placements[0].tr
        cluster = []
        seen = set()
        for pl in placements:
            fr = minv @ (pl.tr - base)
            fr0 = fr - np.floor(fr + 1e-7)
            key = (pl.tile_id, round(pl.rot, 4), pl.mirrored, round(fr0[0], 5), round(fr0[1], 5))
            if key in seen:
                continue
            seen.add(key)
            off = m @ (fr0 - fr)
            cluster.append(
                EPlacementShift(pl, off)
            )
        total = sum(tile_areas[c.tile_id] for c in cluster)
        if abs(total - det) > 1e-6:
            continue
        patch = engine_placement_to_patch(cluster)
        try:
            if verify_periodic(ts, patch, v1, v2):
                return patch, v1, v2
        except Exception:
            continue
    return None


class EPlacementShift:
    """Lightweight translated view of an EPlacement for cluster assembly."""

    __slots__ = ("tile_id", "mirrored", "rot", "tr")

    def __init__(self, pl: EPlacement, off):
        self.tile_id = pl.tile_id
        self.mirrored = pl.mirrored
        self.rot = pl.rot
        self.tr = pl.tr + off


# ---------------------------------------------------------------------------
# public operations

def _seed_placement(ts: TileSet, tile_id: str) -> EPlacement:
    pose = _Pose(ts.get(tile_id), False)
    return EPlacement(pose, 0.0, np.zeros(2))


def grow_coronas(
    ts: TileSet,
    seed_tile: str,
    policy: SearchPolicy = SearchPolicy(),
    subset: Optional[Sequence[str]] = None,
) -> CoronaReport:
    """Exhaustively surround a seed placement of seed_tile (radius 1)."""
    eng = Engine(ts, policy, subset=subset)
    seed = _seed_placement(ts, seed_tile)
    return eng.grow([seed], goal="corona")


def subset_tiling_probe(
    ts: TileSet,
    subset: Sequence[str],
    policy: SearchPolicy = SearchPolicy(max_placements=48),
) -> CoronaReport:
    """Evidence verdict for "this subset cannot tile".

    First each subset tile must survive an exhaustive radius-1 surround
    (failure is a strong NO_COMPLETION); then growth hunts for a certified
    periodic witness.
    """
    if not subset or set(subset) == set(ts.ids()):
        raise ValueError("subset must be proper and non-empty")
    total_nodes = 0
    t0 = time.time()
    for tid in sorted(subset):
        eng = Engine(ts, policy, subset=subset)
        rep = eng.grow([_seed_placement(ts, tid)], goal="corona")
        total_nodes += rep.nodes
        if rep.status == Status.NO_COMPLETION and not eng.aborted:
            rep.note = f"{tid} cannot be surrounded by {sorted(subset)}"
            rep.nodes = total_nodes
            rep.elapsed = time.time() - t0
            return rep
    eng = Engine(ts, policy, subset=subset)
    seed = _seed_placement(ts, sorted(subset)[0])
    rep = eng.grow([seed], goal="fill", detect_periodic=True)
    rep.nodes += total_nodes
    rep.elapsed = time.time() - t0
    return rep


def find_periodic(
    ts: TileSet,
    tiles: Sequence[str],
    policy: SearchPolicy = SearchPolicy(max_placements=48),
) -> CoronaReport:
    """Grow a patch from the given tiles and certify a lattice if one shows up."""
    eng = Engine(ts, policy, subset=tiles)
    seed = _seed_placement(ts, sorted(tiles)[0])
    return eng.grow([seed], goal="fill", detect_periodic=True)


# ---------------------------------------------------------------------------
# forced assembly

def _poly_points_equal(p1: Sequence[np.ndarray], p2: Sequence[np.ndarray], tol=1e-6) -> bool:
    if len(p1) != len(p2):
        return False
    n = len(p1)
    for shift in range(n):
        if all(np.linalg.norm(p1[(i + shift) % n] - p2[i]) < tol for i in range(n)):
            return True
    return False


def check_forced_assembly(
    ts: TileSet,
    assembly: Sequence[tuple[str, Isometry]],
    policy: SearchPolicy = SearchPolicy(),
    seed_tile: Optional[str] = None,
) -> CoronaReport:
    """ALL_COMPLETIONS_FORCED iff every radius-1 surround of the seed piece
    partitions into copies of the assembly cluster."""
    t0 = time.time()
    if seed_tile is None:
        seed_tile = _most_constrained_tile(ts, policy)
    eng = Engine(ts, policy)
    seed = _seed_placement(ts, seed_tile)
    bad = {"cases": []}
    count = {"n": 0}

    cluster_cells = _assembly_cells(ts, assembly)

    def on_completion(placements):
        count["n"] += 1
        if not _partitions_into_cluster(ts, placements, cluster_cells):
            bad["cases"].append(list(placements))

    rep = eng.grow([seed], goal="corona", on_completion=on_completion)
    rep.elapsed = time.time() - t0
    if rep.status == Status.NO_COMPLETION:
        rep.note = "no completion at all"
        return rep
    if eng.aborted:
        rep.status = Status.INCONCLUSIVE
        rep.note = f"budget exhausted after {count['n']} completions"
        return rep
    # completions that fail to partition are discarded if they collapse one
    # ring further out (the arrangements the source arguments throw away)
    survivors = 0
    ext_policy = replace(policy, max_completions=1,
                         max_placements=policy.max_placements + 24)
    for comp in bad["cases"]:
        eng2 = Engine(ts, ext_policy)
        rep2 = eng2.grow(list(comp), goal="corona")
        if rep2.completions > 0 or eng2.aborted:
            survivors += 1
    rep.elapsed = time.time() - t0
    if rep.completions and survivors == 0:
        rep.status = Status.ALL_COMPLETIONS_FORCED
        rep.note = (
            f"seed={seed_tile}: {count['n'] - len(bad['cases'])} completions partition, "
            f"{len(bad['cases'])} collapse one ring out"
        )
    elif rep.completions:
        rep.status = Status.INCONCLUSIVE
        rep.note = f"{survivors} extendable completions do not partition"
    return rep


def _most_constrained_tile(ts: TileSet, policy: SearchPolicy) -> str:
    """Seed at the tile owning the corner with the fewest full stars."""
    best = None
    for tile in ts.tiles:
        for ci in range(tile.shape.n):
            try:
                stars = enumerate_vertex_stars(ts, policy, anchor=(tile.id, ci))
            except SearchExplosionError:
                continue
            full = [s for s in stars if s.kind == "FULL"]
            key = (len(full), tile.id, ci)
            if best is None or key < best:
                best = key
    return best[1] if best else ts.tiles[0].id


def _assembly_cells(ts: TileSet, assembly):
    cells = []
    for tid, iso in assembly:
        shape = ts.get(tid).shape
        from .geom import apply as gapply

        cells.append((tid, [np.asarray(p) for p in gapply(iso, shape).vertices], iso))
    return cells


def _partitions_into_cluster(ts: TileSet, placements: Sequence[EPlacement], cluster_cells) -> bool:
    """Greedy cover of the placements by assembly instances (with backtracking)."""
    pls = list(placements)
    pl_pts = [pl.pts for pl in pls]

    def instances_for(idx):
        """Cluster instances containing placement idx."""
        out = []
        pl = pls[idx]
        for tid, cell_pts, iso in cluster_cells:
            if tid != pl.tile_id:
                continue
            n = len(cell_pts)
            if len(pl.pts) != n:
                continue
            # candidate rigid motions mapping the cell onto the placement
            for shift in range(n):
                a0, a1 = cell_pts[shift], cell_pts[(shift + 1) % n]
                b0, b1 = pl.pts[0], pl.pts[1]
                if abs(np.linalg.norm(a1 - a0) - np.linalg.norm(b1 - b0)) > 1e-6:
                    continue
                ang = math.atan2(b1[1] - b0[1], b1[0] - b0[0]) - math.atan2(
                    a1[1] - a0[1], a1[0] - a0[0]
                )
                m = np.array([[math.cos(ang), -math.sin(ang)], [math.sin(ang), math.cos(ang)]])
                t = b0 - m @ a0
                moved = [m @ p + t for p in cell_pts]
                if not _poly_points_equal(moved, pl.pts):
                    continue
                # transform every cluster cell by (m, t); see which placements match
                members = []
                ok = True
                for tid2, pts2, _ in cluster_cells:
                    moved2 = [m @ p + t for p in pts2]
                    found = None
                    for k, other in enumerate(pls):
                        if other.tile_id == tid2 and _poly_points_equal(moved2, other.pts):
                            found = k
                            break
                    if found is None:
                        # cell absent: fine at the frontier as long as the
                        # space it claims is actually uncovered
                        cellpoly = SPolygon([tuple(p) for p in moved2])
                        for k, other in enumerate(pls):
                            if cellpoly.intersection(other.poly).area > 1e-6:
                                ok = False
                                break
                        if not ok:
                            break
                    else:
                        members.append(found)
                if ok and members:
                    out.append(frozenset(members))
        # dedupe
        return sorted(set(out), key=lambda s: sorted(s))

    assigned = [False] * len(pls)

    def cover(i):
        while i < len(pls) and assigned[i]:
            i += 1
        if i == len(pls):
            return True
        for inst in instances_for(i):
            if any(assigned[k] for k in inst):
                continue
            if i not in inst:
                continue
            for k in inst:
                assigned[k] = True
            if cover(i + 1):
                return True
            for k in inst:
                assigned[k] = False
        return False

    return cover(0)

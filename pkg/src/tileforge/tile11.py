"""Canonical construction of the equilateral 14-gon monotile and its landmarks.

The polygon is the equilateral 13-edge member of the hat continuum regarded
as a 14-gon with one straight corner.  Vertices are labelled X1..X14
counterclockwise; the four right-angle corners sit at X3, X7, X9 and X11.
The straight corner was identified as X13 during transcription (the two
collinear unit edges X12-X13-X14); everything below is pinned by the
invariant bundle in the tests rather than trusted from the drawing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .angles import deg
from .geom import LabeledPolygon, make_polygon, signed_area, vec

_C = math.sqrt(3.0) / 2.0

# Interior angles at X1..X14 (degrees; all multiples of 30, one straight).
INTERIOR_DEGREES = (270, 120, 90, 120, 270, 120, 90, 240, 90, 240, 90, 120, 180, 120)

# Vertex coordinates, unit edge length, X9 at the origin.
_COORDS = (
    (_C - 3.0, 1.5),        # X1
    (-3.0, 2.0),            # X2
    (-3.0 - _C, 1.5),       # X3
    (-2.5 - _C, 1.5 - _C),  # X4
    (-1.5 - _C, 1.5 - _C),  # X5
    (-1.5 - _C, 0.5 - _C),  # X6
    (-1.5, -_C),            # X7
    (-1.0, 0.0),            # X8
    (0.0, 0.0),             # X9
    (0.0, 1.0),             # X10
    (_C, 1.5),              # X11
    (_C - 0.5, 1.5 + _C),   # X12
    (_C - 1.5, 1.5 + _C),   # X13
    (_C - 2.5, 1.5 + _C),   # X14
)


@dataclass(frozen=True)
class Tile11:
    shape: LabeledPolygon

    def vertex(self, i: int) -> np.ndarray:
        """1-based access: ``vertex(3)`` is X3."""
        return self.shape.vertices[i - 1]

    @property
    def area(self) -> float:
        return signed_area(self.shape.vertices)


@lru_cache(maxsize=1)
def construct_tile11() -> Tile11:
    """The canonical 14-gon; validated on construction."""
    shape = make_polygon(
        [vec(x, y) for x, y in _COORDS],
        [deg(a) for a in INTERIOR_DEGREES],
        label="Tile11",
    )
    return Tile11(shape)


def tile11_area() -> float:
    """Area in unit-edge units (equals 3 + 3*sqrt(3), up to float eps)."""
    return construct_tile11().area


FIGURE_IDS = ("FIG2", "FIG6", "FIG7", "FIG25", "FIG27A", "FIG27B", "FIG28", "FIG9AD")


class UnknownFigureError(KeyError):
    pass


def fixture(figure_id: str):
    """Named validated patches: (TileSet, Patch, lattice vectors or None).

    Lattice vectors are discovered by search against the reconstructed pieces
    and certified by ``patch.verify_periodic``; they are data, not doctrine.
    """
    from . import fixtures  # deferred: fixtures pulls in the search engine

    fid = figure_id.upper()
    if fid not in FIGURE_IDS:
        raise UnknownFigureError(figure_id)
    return fixtures.build(fid)

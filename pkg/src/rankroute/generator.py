"""Seeded random triangulations from points inside an equilateral triangle.

Anchors sit on the triangle's corners. Order ``i`` ranks nodes by decreasing
distance to anchor ``i`` (the farthest node gets rank 1), and every node is
joined to the ``rank_i``-minimal node of each of its odd sectors.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import __version__
from .schnyder_core import RankCoordinates, Sector, sector_of
from .triangulation import GeneratorInfo, Triangulation

RNG_ALGORITHM = "numpy-PCG64-SeedSequence"
POSITION_DIGITS = 12
# Distances agreeing to this many significant digits count as ties.
DISTANCE_DIGITS = 11

Point = tuple[float, float]


class DegenerateInput(ValueError):
    pass


@dataclass(frozen=True)
class GeneratorConfig:
    n: int
    seed: int = 0
    triangle_side: float = 1.0

    def __post_init__(self) -> None:
        if self.n < 4:
            raise DegenerateInput(f"n must be at least 4 (three anchors plus one internal node), got {self.n}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if not (self.triangle_side > 0 and math.isfinite(self.triangle_side)):
            raise ValueError(f"triangle_side must be positive, got {self.triangle_side}")


def round_sig(x: float, digits: int = POSITION_DIGITS) -> float:
    return float(f"{x:.{digits}g}")


def triangle_vertices(side: float = 1.0) -> tuple[Point, Point, Point]:
    """Corners for A1 (top), A2 (bottom left), A3 (bottom right)."""
    return ((round_sig(side / 2), round_sig(side * math.sqrt(3) / 2)), (0.0, 0.0), (round_sig(side), 0.0))


def _strictly_inside(p: Point, tri: tuple[Point, Point, Point]) -> bool:
    (ax, ay), (bx, by), (cx, cy) = tri
    px, py = p

    def cross(ox: float, oy: float, qx: float, qy: float) -> float:
        return (qx - ox) * (py - oy) - (qy - oy) * (px - ox)

    d1 = cross(bx, by, cx, cy)
    d2 = cross(cx, cy, ax, ay)
    d3 = cross(ax, ay, bx, by)
    return (d1 > 0 and d2 > 0 and d3 > 0) or (d1 < 0 and d2 < 0 and d3 < 0)


def sample_interior(rng: np.random.Generator, count: int, tri: tuple[Point, Point, Point]) -> list[Point]:
    """Uniform points strictly inside ``tri``, rounded to the stored precision."""
    a, b, c = (np.asarray(p, dtype=float) for p in tri)
    out: list[Point] = []
    while len(out) < count:
        r1, r2 = rng.random(2)
        if r1 + r2 > 1.0:
            r1, r2 = 1.0 - r1, 1.0 - r2
        p = a + r1 * (b - a) + r2 * (c - a)
        q = (round_sig(p[0]), round_sig(p[1]))
        # Boundary hits (measure zero) are redrawn.
        if _strictly_inside(q, tri):
            out.append(q)
    return out


def orders_from_points(points: Sequence[Point], anchors: Sequence[Point]) -> list[RankCoordinates]:
    """Rank every point in three orders by descending distance to each anchor.

    Farther points get smaller ranks; equal distances are broken by ascending
    node id, so each order stays total. Distances are compared at
    ``DISTANCE_DIGITS`` significant digits so that rounding noise in stored
    positions (e.g. the corners of the triangle) does not decide an order.
    """
    n = len(points)
    ranks = [[0, 0, 0] for _ in range(n)]
    for i, anchor in enumerate(anchors):
        dist = [round_sig(math.dist(p, anchor), DISTANCE_DIGITS) for p in points]
        for r, node in enumerate(sorted(range(n), key=lambda k: (-dist[k], k)), start=1):
            ranks[node][i] = r
    return [RankCoordinates(*r) for r in ranks]


def min_rule_edges(coords: Sequence[RankCoordinates]) -> set[tuple[int, int]]:
    """Join each node to the ``rank_i``-minimal member of its odd sector ``2i - 1``."""
    edges: set[tuple[int, int]] = set()
    n = len(coords)
    for v in range(n):
        best: dict[Sector, int] = {}
        cv = coords[v]
        for z in range(n):
            if z == v:
                continue
            s = sector_of(cv, coords[z])
            if not s.is_odd:
                continue
            i = s.order - 1
            cur = best.get(s)
            if cur is None or coords[z][i] < coords[cur][i]:
                best[s] = z
        for z in best.values():
            edges.add((min(v, z), max(v, z)))
    return edges


def generate(cfg: GeneratorConfig) -> Triangulation:
    rng = np.random.Generator(np.random.PCG64(cfg.seed))
    tri = triangle_vertices(cfg.triangle_side)
    points = list(tri) + sample_interior(rng, cfg.n - 3, tri)
    coords = orders_from_points(points, tri)
    edges = min_rule_edges(coords)
    edges |= {(0, 1), (0, 2), (1, 2)}
    info = GeneratorInfo(
        algorithm=RNG_ALGORITHM,
        seed=cfg.seed,
        n=cfg.n,
        triangle_side=cfg.triangle_side,
        version=__version__,
    )
    return Triangulation.from_edges(coords, sorted(edges), (0, 1, 2), positions=points, generator=info)

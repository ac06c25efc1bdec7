"""Brute-force baselines for checking the router and the generator.

Nothing here calls the router's decision logic. Sector relations are
recomputed from raw ranks with numpy, shortest paths come from a plain BFS,
and the all-pairs sweep only uses the router as the system under test.
"""
from __future__ import annotations

import math
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .router import RoutingError, is_greedy_path, route
from .triangulation import Triangulation

DEFAULT_MAX_N = 200
VIOLATION_LIMIT = 100

# Sign of (rank(v) - rank(u)) per order for v in sector j of u.
SECTOR_SIGNS = {
    1: (+1, -1, -1),
    2: (+1, +1, -1),
    3: (-1, +1, -1),
    4: (-1, +1, +1),
    5: (-1, -1, +1),
    6: (+1, -1, +1),
}


class Unreachable(ValueError):
    pass


class Violation(NamedTuple):
    property: str
    witness: tuple[int, ...]

    def to_dict(self) -> dict:
        return {"property": self.property, "witness": list(self.witness)}


def bfs_distances(g: Triangulation, s: int) -> list[int | None]:
    dist: list[int | None] = [None] * g.n
    dist[s] = 0
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for v in g.adjacency[u]:
            if dist[v] is None:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def bfs_distance(g: Triangulation, s: int, d: int) -> int:
    dist = bfs_distances(g, s)[d]
    if dist is None:
        raise Unreachable(f"node {d} is not reachable from node {s}")
    return dist


def sector_matrix(coords: Sequence[Sequence[int]]) -> np.ndarray:
    """``M[u, v]`` is the sector of ``u`` containing ``v``; 0 on the diagonal and for undefined pairs."""
    arr = np.asarray(coords, dtype=np.int64)
    signs = np.sign(arr[None, :, :] - arr[:, None, :])
    out = np.zeros((len(arr), len(arr)), dtype=np.int8)
    for j, pattern in SECTOR_SIGNS.items():
        out[np.all(signs == np.array(pattern), axis=2)] = j
    return out


def _excluded_after_odd(k: int) -> set[int]:
    # Odd sector k of u rules out sectors k+2, k+3, k+4 of the neighbour v for D.
    return {(k + d - 1) % 6 + 1 for d in (2, 3, 4)}


def check_propositions(
    g: Triangulation, *, max_n: int = DEFAULT_MAX_N, force: bool = False
) -> list[Violation]:
    """Exhaustively check sector transitivity, even-sector progress and odd-sector exclusion.

    Cost is cubic in ``n``; instances above ``max_n`` need ``force=True``.
    """
    n = g.n
    if n > max_n and not force:
        raise ValueError(f"check_propositions is O(n^3); n={n} exceeds max_n={max_n} (pass force=True)")
    sec = sector_matrix(g.coords)
    out: list[Violation] = []

    undefined = np.argwhere((sec == 0) & ~np.eye(n, dtype=bool))
    for u, v in undefined:
        out.append(Violation("sector_defined", (int(u), int(v))))

    # Transitivity: D' in s^D_j and D'' in s^D'_j imply D'' in s^D_j.
    for j in range(1, 7):
        m = (sec == j).astype(np.int32)
        reach = m @ m
        bad = np.argwhere((reach > 0) & (m == 0))
        for d, d2 in bad:
            mid = int(np.flatnonzero(m[d] & m[:, d2])[0])
            out.append(Violation("transitivity", (int(d), mid, int(d2))))

    # Odd-sector exclusion over every directed edge (u, v) with v in an odd sector of u.
    for u in range(n):
        for v in g.adjacency[u]:
            k = int(sec[u, v])
            if k % 2 == 0:
                continue
            excluded = np.array(sorted(_excluded_after_odd(k)))
            same = sec[u] == k
            same[[u, v]] = False
            hits = np.flatnonzero(same & np.isin(sec[v], excluded))
            for d in hits:
                out.append(Violation("odd_exclusion", (u, v, int(d))))

    # Even-sector progress: some neighbour in sector j-1, j or j+1 of u keeps D in its sector j.
    for u in range(n):
        nbrs = np.asarray(g.adjacency[u], dtype=np.int64)
        row = sec[u].astype(np.int64)
        targets = (row % 2 == 0) & (row > 0)
        targets[nbrs] = False
        if not targets.any():
            continue
        if len(nbrs) == 0:
            for d in np.flatnonzero(targets):
                out.append(Violation("even_progress", (u, int(d))))
            continue
        rel = (sec[u, nbrs].astype(np.int64)[:, None] - row[None, :]) % 6
        usable = np.isin(rel, (5, 0, 1)) & (sec[nbrs].astype(np.int64) == row[None, :])
        for d in np.flatnonzero(targets & ~usable.any(axis=0)):
            out.append(Violation("even_progress", (u, int(d))))
    return out


@dataclass
class SweepStats:
    pairs_total: int = 0
    pairs_delivered: int = 0
    max_hops: int = 0
    mean_stretch: float = 0.0
    violations: list[Violation] = field(default_factory=list)
    violation_count: int = 0

    @property
    def ok(self) -> bool:
        return self.pairs_delivered == self.pairs_total and self.violation_count == 0

    def to_dict(self) -> dict:
        return {
            "pairs_total": self.pairs_total,
            "pairs_delivered": self.pairs_delivered,
            "max_hops": self.max_hops,
            "mean_stretch": self.mean_stretch,
            "violation_count": self.violation_count,
            "violations": [v.to_dict() for v in self.violations],
        }


@dataclass
class _Partial:
    pairs_total: int = 0
    pairs_delivered: int = 0
    max_hops: int = 0
    stretch_sum: float = 0.0
    violations: list[Violation] = field(default_factory=list)
    violation_count: int = 0

    def add(self, v: Violation) -> None:
        self.violation_count += 1
        if len(self.violations) < VIOLATION_LIMIT:
            self.violations.append(v)

    def merge(self, other: _Partial) -> _Partial:
        merged = _Partial(
            self.pairs_total + other.pairs_total,
            self.pairs_delivered + other.pairs_delivered,
            max(self.max_hops, other.max_hops),
            self.stretch_sum + other.stretch_sum,
            (self.violations + other.violations)[:VIOLATION_LIMIT],
            self.violation_count + other.violation_count,
        )
        return merged


def _sweep_sources(g: Triangulation, sources: Sequence[int]) -> _Partial:
    acc = _Partial()
    for s in sources:
        dist = bfs_distances(g, s)
        for d in range(g.n):
            if d == s:
                continue
            acc.pairs_total += 1
            try:
                trace = route(g, s, d)
            except RoutingError as exc:
                acc.add(Violation(f"routing_error:{type(exc).__name__}", (s, d)))
                continue
            hops = len(trace.hops)
            acc.pairs_delivered += 1
            acc.max_hops = max(acc.max_hops, hops)
            if not is_greedy_path(g, trace).ok:
                acc.add(Violation("not_greedy", (s, d)))
            if hops >= g.n:
                acc.add(Violation("hop_bound", (s, d)))
            if dist[d] is None:
                acc.add(Violation("bfs_unreachable", (s, d)))
                continue
            if hops < dist[d]:
                acc.add(Violation("shorter_than_bfs", (s, d)))
            acc.stretch_sum += hops / dist[d]
    return acc


def full_sweep(g: Triangulation, *, jobs: int = 1) -> SweepStats:
    """Route every ordered pair, certify each trace, and compare with BFS hop counts."""
    sources = list(range(g.n))
    if jobs <= 1 or g.n < 2 * jobs:
        total = _sweep_sources(g, sources)
    else:
        chunks = [sources[k::jobs] for k in range(jobs)]
        total = _Partial()
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_sweep_sources, [g] * len(chunks), chunks):
                total = total.merge(part)
    mean = total.stretch_sum / total.pairs_delivered if total.pairs_delivered else 0.0
    return SweepStats(
        pairs_total=total.pairs_total,
        pairs_delivered=total.pairs_delivered,
        max_hops=total.max_hops,
        mean_stretch=mean if math.isfinite(mean) else 0.0,
        violations=total.violations,
        violation_count=total.violation_count,
    )

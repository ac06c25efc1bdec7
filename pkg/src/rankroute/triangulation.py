"""Graph instance with rank coordinates and structural validation."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from .schnyder_core import (
    DEFAULT_WITNESS_LIMIT,
    RankCoordinates,
    Sector,
    ValidationReport,
    _Collector,
    check_permutations,
    sector_of,
    validate_condition_a,
    validate_condition_b,
    validate_standard,
)


class UnknownNode(KeyError):
    pass


class MultipleOddNeighbors(ValueError):
    """A node has more than one neighbour in one odd sector."""


@dataclass(frozen=True)
class GeneratorInfo:
    algorithm: str
    seed: int
    n: int
    triangle_side: float
    version: str


@dataclass(frozen=True)
class Triangulation:
    coords: tuple[RankCoordinates, ...]
    adjacency: tuple[tuple[int, ...], ...]
    anchors: tuple[int, int, int]
    positions: tuple[tuple[float, float], ...] | None = None
    generator: GeneratorInfo | None = None

    def __post_init__(self) -> None:
        n = len(self.coords)
        if len(self.adjacency) != n:
            raise ValueError(f"adjacency has {len(self.adjacency)} rows for {n} nodes")
        if self.positions is not None and len(self.positions) != n:
            raise ValueError(f"positions has {len(self.positions)} rows for {n} nodes")
        if len(self.anchors) != 3 or len(set(self.anchors)) != 3:
            raise ValueError(f"expected three distinct anchors, got {list(self.anchors)}")
        for a in self.anchors:
            if not 0 <= a < n:
                raise UnknownNode(a)
        for u, row in enumerate(self.adjacency):
            for v in row:
                if not 0 <= v < n:
                    raise UnknownNode(v)
        check_permutations(self.coords)

    @classmethod
    def from_edges(
        cls,
        coords: Sequence[Sequence[int]],
        edges: Iterable[tuple[int, int]],
        anchors: Sequence[int],
        positions: Sequence[tuple[float, float]] | None = None,
        generator: GeneratorInfo | None = None,
    ) -> Triangulation:
        n = len(coords)
        rows: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise UnknownNode((u, v))
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            rows[u].add(v)
            rows[v].add(u)
        return cls(
            coords=tuple(RankCoordinates(*map(int, c)) for c in coords),
            adjacency=tuple(tuple(sorted(r)) for r in rows),
            anchors=(int(anchors[0]), int(anchors[1]), int(anchors[2])),
            positions=None if positions is None else tuple((float(x), float(y)) for x, y in positions),
            generator=generator,
        )

    @property
    def n(self) -> int:
        return len(self.coords)

    def is_external(self, u: int) -> bool:
        return u in self.anchors

    def neighbors(self, u: int) -> list[int]:
        if not 0 <= u < self.n:
            raise UnknownNode(u)
        return list(self.adjacency[u])

    def edges(self) -> Iterator[tuple[int, int]]:
        """Each undirected edge once, as ``(low, high)`` in lexicographic order."""
        for u, row in enumerate(self.adjacency):
            for v in row:
                if u < v:
                    yield (u, v)

    @property
    def edge_count(self) -> int:
        return sum(1 for _ in self.edges())

    @cached_property
    def neighbor_coords(self) -> tuple[Mapping[int, RankCoordinates], ...]:
        """Per node, the coordinates of its neighbours (the node's 1-hop knowledge)."""
        return tuple({v: self.coords[v] for v in row} for row in self.adjacency)

    @cached_property
    def sector_table(self) -> tuple[Mapping[Sector, tuple[int, ...]], ...]:
        """Per node, its neighbours grouped by the sector they occupy (ascending id)."""
        table = []
        for u, row in enumerate(self.adjacency):
            groups: dict[Sector, list[int]] = {s: [] for s in Sector}
            cu = self.coords[u]
            for v in row:
                groups[sector_of(cu, self.coords[v])].append(v)
            table.append({s: tuple(vs) for s, vs in groups.items()})
        return tuple(table)

    def sector_neighbors(self, u: int) -> dict[Sector, list[int]]:
        if not 0 <= u < self.n:
            raise UnknownNode(u)
        return {s: list(vs) for s, vs in self.sector_table[u].items()}

    def odd_sector_neighbor(self, u: int, j: int) -> int | None:
        j = Sector(j)
        if not j.is_odd:
            raise ValueError(f"{j} is not an odd sector")
        found = self.sector_neighbors(u)[j]
        if len(found) > 1:
            raise MultipleOddNeighbors(f"node {u} has neighbours {found} in {j}")
        return found[0] if found else None

    def even_sector_neighbors(self, u: int, j: int) -> list[int]:
        j = Sector(j)
        if j.is_odd:
            raise ValueError(f"{j} is not an even sector")
        return self.sector_neighbors(u)[j]


def validate_structure(g: Triangulation, *, limit: int | None = DEFAULT_WITNESS_LIMIT) -> ValidationReport:
    """Run every representation and triangulation check and aggregate them into one report."""
    out = _Collector(limit)
    adj_sets = [set(row) for row in g.adjacency]
    for u, row in enumerate(g.adjacency):
        if len(set(row)) != len(row):
            out.add("duplicate_edge", (u,))
        for v in row:
            if v == u:
                out.add("self_loop", (u,))
            elif u not in adj_sets[v]:
                out.add("asymmetric_adjacency", (u, v))

    a = g.anchors
    for x, y in ((a[0], a[1]), (a[1], a[2]), (a[0], a[2])):
        if y not in adj_sets[x]:
            out.add("anchor_adjacency", (x, y))

    for u in range(g.n):
        by_sector: dict[Sector, list[int]] = {s: [] for s in Sector}
        for v in g.adjacency[u]:
            if v == u:
                continue
            try:
                by_sector[sector_of(g.coords[u], g.coords[v])].append(v)
            except ValueError as exc:
                out.add("sector_undefined", (u, v), str(exc))
        for j in (Sector.S1, Sector.S3, Sector.S5):
            found = by_sector[j]
            if len(found) > 1:
                out.add("odd_sector_multiple", (u, *found), str(j))
            elif not found and not g.is_external(u):
                out.add("odd_sector_missing", (u,), str(j))

    structural = ValidationReport(
        structure_ok=not out.counts, witnesses=out.witnesses, counts=out.counts
    )
    edges = list(g.edges())
    return (
        structural.merge(validate_condition_a(g.coords, limit=limit))
        .merge(validate_condition_b(g.coords, edges, limit=limit))
        .merge(validate_standard(g.coords, g.anchors, limit=limit))
    )

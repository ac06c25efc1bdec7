"""Local greedy routing on rank coordinates.

The forwarding rule (:func:`decide`) sees only a :class:`LocalView`: the
current node's coordinates, the destination's id and coordinates, and the
coordinates of the current node's neighbours. Each step strictly lowers one
rank, so a route never revisits a node and ends within ``n - 1`` hops.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Mapping, NamedTuple

from .schnyder_core import RankCoordinates, Sector, sector_of
from .triangulation import MultipleOddNeighbors, Triangulation, UnknownNode


class HopKind(str, enum.Enum):
    DIRECT = "direct"
    ODD_RULE = "odd_rule"
    EVEN_V = "even_v"
    EVEN_W = "even_w"
    EVEN_X = "even_x"


class HopDecision(NamedTuple):
    kind: HopKind
    sector: Sector  # sector of the current node holding the destination


class Hop(NamedTuple):
    node: int
    decision: HopDecision


_DECISIONS = {(k, s): HopDecision(k, s) for k in HopKind for s in Sector}
_PREV = {s: s.shift(-1) for s in Sector}
_NEXT = {s: s.shift(1) for s in Sector}
_ODD = {s: s.is_odd for s in Sector}
_RHO = {s: s.progress_order - 1 for s in Sector if not s.is_odd}


@dataclass
class RouteTrace:
    source: int
    destination: int
    hops: list[Hop] = field(default_factory=list)
    delivered: bool = False

    @property
    def nodes(self) -> list[int]:
        return [self.source] + [h.node for h in self.hops]

    def __len__(self) -> int:
        return len(self.hops)


class RoutingError(RuntimeError):
    """Base for routing failures; ``trace`` holds the partial route when known."""

    trace: RouteTrace | None = None


class Stuck(RoutingError):
    pass


class MissingOddNeighbor(RoutingError):
    pass


class HopLimitExceeded(RoutingError):
    pass


class LocalView(NamedTuple):
    """Everything the forwarding node is allowed to know."""

    node: int
    coords: RankCoordinates
    external: bool
    dest: int
    dest_coords: RankCoordinates
    neighbors: Mapping[int, RankCoordinates]
    # Neighbours grouped by sector; derivable from ``coords`` and ``neighbors`` alone.
    sectors: Mapping[Sector, tuple[int, ...]]


def local_view(g: Triangulation, u: int, dest: int) -> LocalView:
    for x in (u, dest):
        if not 0 <= x < g.n:
            raise UnknownNode(x)
    return LocalView(u, g.coords[u], u in g.anchors, dest, g.coords[dest], g.neighbor_coords[u], g.sector_table[u])


def _odd_neighbor(view: LocalView, j: Sector) -> int | None:
    found = view.sectors[j]
    if len(found) > 1:
        raise MultipleOddNeighbors(f"node {view.node} has neighbours {sorted(found)} in {j}")
    if not found:
        if not view.external:
            raise MissingOddNeighbor(f"internal node {view.node} has no neighbour in {j}")
        return None
    return found[0]


def decide(view: LocalView) -> tuple[int, HopDecision]:
    """Pick the next hop toward ``view.dest`` from ``view.node``."""
    if view.node == view.dest:
        raise ValueError("already at the destination")
    target = view.dest_coords
    sector = sector_of(view.coords, target)

    if view.dest in view.neighbors:
        return view.dest, _DECISIONS[HopKind.DIRECT, sector]

    if _ODD[sector]:
        v = _odd_neighbor(view, sector)
        if v is None:
            raise Stuck(f"external node {view.node} has no neighbour in {sector}")
        return v, _DECISIONS[HopKind.ODD_RULE, sector]

    v = _odd_neighbor(view, _PREV[sector])
    if v is not None and sector_of(view.neighbors[v], target) == sector:
        return v, _DECISIONS[HopKind.EVEN_V, sector]
    w = _odd_neighbor(view, _NEXT[sector])
    if w is not None and sector_of(view.neighbors[w], target) == sector:
        return w, _DECISIONS[HopKind.EVEN_W, sector]

    # Every neighbour with a smaller rank_rho lies in sector - 1, sector or
    # sector + 1, so an anchor with no v or w loses no candidates here.
    rho = _RHO[sector]
    candidates = [
        (view.neighbors[y][rho], y)
        for y in view.sectors[sector]
        if sector_of(view.neighbors[y], target) == sector
    ]
    if not candidates:
        raise Stuck(f"no neighbour of node {view.node} keeps node {view.dest} in its {sector}")
    return min(candidates)[1], _DECISIONS[HopKind.EVEN_X, sector]


def next_hop(g: Triangulation, u: int, dest: int) -> tuple[int, HopDecision]:
    return decide(local_view(g, u, dest))


def route(g: Triangulation, source: int, dest: int) -> RouteTrace:
    trace = RouteTrace(source, dest)
    for x in (source, dest):
        if not 0 <= x < g.n:
            raise UnknownNode(x)
    cur = source
    while cur != dest:
        if len(trace.hops) >= g.n:
            err = HopLimitExceeded(f"no delivery from {source} to {dest} within {g.n} hops")
            err.trace = trace
            raise err
        try:
            nxt, decision = next_hop(g, cur, dest)
        except (RoutingError, MultipleOddNeighbors, ValueError) as exc:
            err = exc if isinstance(exc, RoutingError) else Stuck(str(exc))
            err.trace = trace
            raise err from (None if err is exc else exc)
        trace.hops.append(Hop(nxt, decision))
        cur = nxt
    trace.delivered = True
    return trace


@dataclass(frozen=True)
class GreedyCheck:
    """Outcome of checking a path for a strictly monotone rank.

    ``order``/``direction`` name the certificate when one exists; otherwise
    ``violations`` lists ``(order, hop index)`` for the first hop that breaks
    monotonicity in each order.
    """

    order: int | None = None
    direction: str | None = None
    violations: tuple[tuple[int, int], ...] = ()

    @property
    def ok(self) -> bool:
        return self.order is not None

    def to_dict(self) -> dict | None:
        if not self.ok:
            return None
        return {"order": self.order, "direction": self.direction}


def is_greedy_path(g: Triangulation, trace: RouteTrace) -> GreedyCheck:
    path = [g.coords[x] for x in trace.nodes]
    violations = []
    for i in range(3):
        seq = [c[i] for c in path]
        if len(seq) < 2:
            return GreedyCheck(order=i + 1, direction="increasing")
        increasing = seq[1] > seq[0]
        bad = next(
            (k for k in range(len(seq) - 1) if (seq[k + 1] > seq[k]) != increasing or seq[k + 1] == seq[k]),
            None,
        )
        if bad is None:
            return GreedyCheck(order=i + 1, direction="increasing" if increasing else "decreasing")
        violations.append((i + 1, bad))
    return GreedyCheck(violations=tuple(violations))

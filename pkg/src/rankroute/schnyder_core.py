"""Rank coordinates, sectors and the three-order representation checks.

A node is described by its ranks in three total orders. Every order relation
used anywhere in the package is recovered by comparing ranks, so the only
per-node state is three integers in ``1..n``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

import numpy as np

DEFAULT_WITNESS_LIMIT = 16


class EqualRanks(ValueError):
    """Two distinct nodes share a rank in one order."""


class Dominance(ValueError):
    """One node precedes another in all three orders."""


class InvalidRanks(ValueError):
    """Ranks in one coordinate are not a permutation of 1..n."""

    def __init__(self, order: int, message: str) -> None:
        super().__init__(f"rank_{order}: {message}")
        self.order = order


class RankCoordinates(NamedTuple):
    rank1: int
    rank2: int
    rank3: int

    def rank(self, i: int) -> int:
        return self[i - 1]


class Ordering(enum.Enum):
    LESS = "less"
    GREATER = "greater"


class Sector(enum.IntEnum):
    S1 = 1
    S2 = 2
    S3 = 3
    S4 = 4
    S5 = 5
    S6 = 6

    @property
    def is_odd(self) -> bool:
        return self % 2 == 1

    @property
    def opposite(self) -> Sector:
        return opposite_sector(self)

    def shift(self, k: int) -> Sector:
        return Sector((self - 1 + k) % 6 + 1)

    @property
    def order(self) -> int:
        """Order index ``i`` of an odd sector ``2i - 1`` (the partial order it encodes)."""
        if not self.is_odd:
            raise ValueError(f"{self.name} is not an odd sector")
        return (self + 1) // 2

    @property
    def progress_order(self) -> int:
        """Rank index that strictly decreases while routing toward this even sector."""
        if self.is_odd:
            raise ValueError(f"{self.name} is not an even sector")
        return {2: 3, 4: 1, 6: 2}[int(self)]

    def __str__(self) -> str:
        return self.name


# Indexed by (v1 > u1) | (v2 > u2) << 1 | (v3 > u3) << 2.
_SECTOR_BY_SIGNS: tuple[Sector | None, ...] = (
    None,        # - - -
    Sector.S1,   # + - -
    Sector.S3,   # - + -
    Sector.S2,   # + + -
    Sector.S5,   # - - +
    Sector.S6,   # + - +
    Sector.S4,   # - + +
    None,        # + + +
)


def compare(u: Sequence[int], v: Sequence[int], i: int) -> Ordering:
    """Compare ``u`` and ``v`` in order ``i`` (1-based)."""
    if i not in (1, 2, 3):
        raise ValueError(f"order index must be 1, 2 or 3, got {i}")
    a, b = u[i - 1], v[i - 1]
    if a == b:
        raise EqualRanks(f"equal rank_{i} ({a}) for distinct nodes")
    return Ordering.LESS if a < b else Ordering.GREATER


def sector_of(u: Sequence[int], v: Sequence[int]) -> Sector:
    """Return the sector of ``u`` that contains ``v``."""
    u1, u2, u3 = u
    v1, v2, v3 = v
    if u1 == v1 or u2 == v2 or u3 == v3:
        raise EqualRanks(f"coordinates {tuple(u)} and {tuple(v)} share a rank")
    sector = _SECTOR_BY_SIGNS[(v1 > u1) | (v2 > u2) << 1 | (v3 > u3) << 2]
    if sector is None:
        raise Dominance(f"{tuple(u)} and {tuple(v)} are ordered the same way in all three orders")
    return sector


def opposite_sector(j: int) -> Sector:
    return Sector((j + 2) % 6 + 1)


def in_partial_order(u: Sequence[int], v: Sequence[int], i: int) -> bool:
    """``(u, v)`` belongs to the partial order ``<_i^*``: ``u <_i v`` and ``v`` precedes ``u`` in the other two."""
    others = [k for k in (1, 2, 3) if k != i]
    return u[i - 1] < v[i - 1] and all(v[k - 1] < u[k - 1] for k in others)


@dataclass(frozen=True)
class Witness:
    rule: str
    nodes: tuple[int, ...]
    detail: str = ""

    def to_dict(self) -> dict:
        out: dict = {"rule": self.rule, "nodes": list(self.nodes)}
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class ValidationReport:
    condition_a_ok: bool = True
    condition_b_ok: bool = True
    standard_ok: bool = True
    structure_ok: bool = True
    witnesses: list[Witness] = field(default_factory=list)
    # Total failures per rule, including those dropped by the witness cap.
    counts: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.condition_a_ok and self.condition_b_ok and self.standard_ok and self.structure_ok

    def merge(self, other: ValidationReport) -> ValidationReport:
        counts = dict(self.counts)
        for rule, c in other.counts.items():
            counts[rule] = counts.get(rule, 0) + c
        return ValidationReport(
            condition_a_ok=self.condition_a_ok and other.condition_a_ok,
            condition_b_ok=self.condition_b_ok and other.condition_b_ok,
            standard_ok=self.standard_ok and other.standard_ok,
            structure_ok=self.structure_ok and other.structure_ok,
            witnesses=self.witnesses + other.witnesses,
            counts=counts,
        )

    def rules(self) -> set[str]:
        return {w.rule for w in self.witnesses}

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "condition_a": self.condition_a_ok,
            "condition_b": self.condition_b_ok,
            "standard": self.standard_ok,
            "structure": self.structure_ok,
            "counts": dict(sorted(self.counts.items())),
            "witnesses": [w.to_dict() for w in self.witnesses],
        }


class _Collector:
    def __init__(self, limit: int | None) -> None:
        self.limit = limit
        self.witnesses: list[Witness] = []
        self.counts: dict[str, int] = {}

    def add(self, rule: str, nodes: Iterable[int], detail: str = "") -> None:
        seen = self.counts.get(rule, 0)
        self.counts[rule] = seen + 1
        if self.limit is None or seen < self.limit:
            self.witnesses.append(Witness(rule, tuple(int(x) for x in nodes), detail))

    def failed(self, rule: str) -> bool:
        return self.counts.get(rule, 0) > 0


def check_permutations(coords: Sequence[Sequence[int]]) -> None:
    """Raise :class:`InvalidRanks` unless each coordinate is a bijection onto 1..n."""
    n = len(coords)
    for i in range(3):
        ranks = [c[i] for c in coords]
        for r in ranks:
            if not isinstance(r, (int, np.integer)) or isinstance(r, bool):
                raise InvalidRanks(i + 1, f"non-integer rank {r!r}")
        if sorted(ranks) != list(range(1, n + 1)):
            seen: set[int] = set()
            for node, r in enumerate(ranks):
                if not 1 <= r <= n:
                    raise InvalidRanks(i + 1, f"node {node} has rank {r} outside 1..{n}")
                if r in seen:
                    raise InvalidRanks(i + 1, f"rank {r} is held by more than one node (again at node {node})")
                seen.add(r)


def _as_array(coords: Sequence[Sequence[int]]) -> np.ndarray:
    return np.asarray(coords, dtype=np.int64).reshape(len(coords), 3)


def validate_condition_a(
    coords: Sequence[Sequence[int]], *, limit: int | None = DEFAULT_WITNESS_LIMIT
) -> ValidationReport:
    """No ordered pair ``(x, z)`` has ``x`` below ``z`` in all three orders."""
    out = _Collector(limit)
    arr = _as_array(coords)
    if len(arr) > 1:
        below = np.all(arr[:, None, :] < arr[None, :, :], axis=2)
        for x, z in zip(*np.nonzero(below)):
            out.add("condition_a", (x, z))
    return ValidationReport(
        condition_a_ok=not out.failed("condition_a"), witnesses=out.witnesses, counts=out.counts
    )


def validate_condition_b(
    coords: Sequence[Sequence[int]],
    edges: Iterable[tuple[int, int]],
    *,
    limit: int | None = DEFAULT_WITNESS_LIMIT,
) -> ValidationReport:
    """Every third node ``z`` of an edge ``(x, y)`` lies above both endpoints in some order."""
    out = _Collector(limit)
    arr = _as_array(coords)
    n = len(arr)
    for x, y in edges:
        if not (0 <= x < n and 0 <= y < n):
            raise IndexError(f"edge ({x}, {y}) references a node outside 0..{n - 1}")
        top = np.maximum(arr[x], arr[y])
        covered = np.any(arr > top, axis=1)
        covered[[x, y]] = True
        for z in np.flatnonzero(~covered):
            out.add("condition_b", (x, y, z))
    return ValidationReport(
        condition_b_ok=not out.failed("condition_b"), witnesses=out.witnesses, counts=out.counts
    )


def validate_standard(
    coords: Sequence[Sequence[int]],
    anchors: Sequence[int],
    *,
    limit: int | None = DEFAULT_WITNESS_LIMIT,
) -> ValidationReport:
    """Anchor ``A_i`` is maximal in order ``i``; the other two anchors take ranks 1 and 2 there."""
    if len(anchors) != 3 or len(set(anchors)) != 3:
        raise ValueError(f"expected three distinct anchors, got {list(anchors)}")
    out = _Collector(limit)
    n = len(coords)
    for i in range(3):
        owner = anchors[i]
        if coords[owner][i] != n:
            out.add("standard", (owner,), f"A{i + 1} has rank_{i + 1}={coords[owner][i]}, expected {n}")
        for k in range(3):
            if k == i:
                continue
            r = coords[anchors[k]][i]
            if r not in (1, 2):
                out.add(
                    "standard",
                    (anchors[k],),
                    f"A{k + 1} has rank_{i + 1}={r}, expected 1 or 2",
                )
    return ValidationReport(standard_ok=not out.failed("standard"), witnesses=out.witnesses, counts=out.counts)

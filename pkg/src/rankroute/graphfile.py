"""Canonical JSON serialization for graphs and route traces."""
from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path
from typing import Any

import jsonschema

from .router import GreedyCheck, RouteTrace
from .schnyder_core import InvalidRanks
from .triangulation import GeneratorInfo, Triangulation

FORMAT_VERSION = "1"
POSITION_FORMAT = ".12g"

GRAPH_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["format_version", "anchors", "nodes", "edges"],
    "additionalProperties": False,
    "properties": {
        "format_version": {"const": FORMAT_VERSION},
        "generator": {
            "type": "object",
            "required": ["algorithm", "seed", "n", "triangle_side", "version"],
            "additionalProperties": False,
            "properties": {
                "algorithm": {"type": "string"},
                "seed": {"type": "integer", "minimum": 0},
                "n": {"type": "integer", "minimum": 1},
                "triangle_side": {"type": "string"},
                "version": {"type": "string"},
            },
        },
        "anchors": {
            "type": "array",
            "items": {"type": "integer", "minimum": 0},
            "minItems": 3,
            "maxItems": 3,
        },
        "nodes": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "rank"],
                "additionalProperties": False,
                "properties": {
                    "id": {"type": "integer", "minimum": 0},
                    # The only routing state a node carries: three ranks.
                    "rank": {
                        "type": "array",
                        "items": {"type": "integer", "minimum": 1},
                        "minItems": 3,
                        "maxItems": 3,
                    },
                    # Drawing hint only; never read by the router.
                    "position": {
                        "type": "array",
                        "items": {"type": "string"},
                        "minItems": 2,
                        "maxItems": 2,
                    },
                },
            },
        },
        "edges": {
            "type": "array",
            "items": {
                "type": "array",
                "items": {"type": "integer", "minimum": 0},
                "minItems": 2,
                "maxItems": 2,
            },
        },
    },
}


class GraphFormatError(ValueError):
    pass


def _fmt(x: float) -> str:
    return format(x, POSITION_FORMAT)


def graph_to_dict(g: Triangulation) -> dict[str, Any]:
    out: dict[str, Any] = {"format_version": FORMAT_VERSION}
    if g.generator is not None:
        info = g.generator
        out["generator"] = {
            "algorithm": info.algorithm,
            "seed": info.seed,
            "n": info.n,
            "triangle_side": _fmt(info.triangle_side),
            "version": info.version,
        }
    out["anchors"] = list(g.anchors)
    nodes = []
    for u, c in enumerate(g.coords):
        node: dict[str, Any] = {"id": u, "rank": list(c)}
        if g.positions is not None:
            node["position"] = [_fmt(x) for x in g.positions[u]]
        nodes.append(node)
    out["nodes"] = nodes
    out["edges"] = [list(e) for e in g.edges()]
    return out


def dumps_graph(g: Triangulation) -> str:
    doc = graph_to_dict(g)
    # One node / edge per line keeps files diffable and byte-stable.
    lines = ["{"]
    head = {k: v for k, v in doc.items() if k not in ("nodes", "edges")}
    for k, v in head.items():
        lines.append(f"  {json.dumps(k)}: {json.dumps(v)},")
    lines.append('  "nodes": [')
    lines.append(",\n".join(f"    {json.dumps(node)}" for node in doc["nodes"]))
    lines.append("  ],")
    lines.append('  "edges": [')
    lines.append(",\n".join(f"    {json.dumps(e)}" for e in doc["edges"]))
    lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_from_dict(doc: Any) -> Triangulation:
    try:
        jsonschema.validate(doc, GRAPH_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise GraphFormatError(f"schema violation at {where}: {exc.message}") from None

    nodes = doc["nodes"]
    n = len(nodes)
    ids = [node["id"] for node in nodes]
    if sorted(ids) != list(range(n)):
        raise GraphFormatError(f"node ids must be exactly 0..{n - 1}")
    by_id = sorted(nodes, key=lambda node: node["id"])
    coords = [node["rank"] for node in by_id]
    has_pos = [("position" in node) for node in by_id]
    if any(has_pos) and not all(has_pos):
        raise GraphFormatError("either every node has a position or none does")
    positions = None
    if all(has_pos) and n:
        try:
            positions = [tuple(float(x) for x in node["position"]) for node in by_id]
        except ValueError as exc:
            raise GraphFormatError(f"bad position value: {exc}") from None

    edges = []
    seen = set()
    for a, b in doc["edges"]:
        if a == b:
            raise GraphFormatError(f"self-loop at node {a}")
        e = (min(a, b), max(a, b))
        if e in seen:
            raise GraphFormatError(f"duplicate edge {list(e)}")
        if e[1] >= n:
            raise GraphFormatError(f"edge {list(e)} references an unknown node")
        seen.add(e)
        edges.append(e)

    anchors = doc["anchors"]
    if len(set(anchors)) != 3 or max(anchors) >= n:
        raise GraphFormatError(f"anchors must be three distinct node ids, got {anchors}")

    info = None
    if "generator" in doc:
        meta = doc["generator"]
        try:
            side = float(meta["triangle_side"])
        except ValueError:
            raise GraphFormatError(f"bad triangle_side {meta['triangle_side']!r}") from None
        info = GeneratorInfo(meta["algorithm"], meta["seed"], meta["n"], side, meta["version"])
    try:
        return Triangulation.from_edges(coords, edges, anchors, positions=positions, generator=info)
    except InvalidRanks as exc:
        raise GraphFormatError(f"ranks are not a permutation: {exc}") from None


def loads_graph(text: str) -> Triangulation:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"malformed JSON: {exc}") from None
    return graph_from_dict(doc)


def read_graph(path: str | os.PathLike) -> Triangulation:
    return loads_graph(Path(path).read_text(encoding="utf-8"))


def write_atomic(path: str | os.PathLike, text: str) -> None:
    """Write ``text`` to a temporary file next to ``path`` and rename it into place."""
    target = Path(path)
    fd, tmp = tempfile.mkstemp(dir=target.parent or ".", prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_graph(path: str | os.PathLike, g: Triangulation) -> None:
    write_atomic(path, dumps_graph(g))


def trace_to_dict(trace: RouteTrace, certificate: GreedyCheck | None = None) -> dict[str, Any]:
    return {
        "source": trace.source,
        "destination": trace.destination,
        "delivered": trace.delivered,
        "certificate": certificate.to_dict() if certificate is not None else None,
        "hops": [
            {"node": h.node, "kind": h.decision.kind.value, "sector": int(h.decision.sector)}
            for h in trace.hops
        ],
    }

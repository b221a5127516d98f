"""Readers and writers for the on-disk formats.

Graphs: edge-list text (``n m`` header, then ``u v`` per line) or JSON
``{"n": int, "edges": [[u, v], ...]}``. Covers: JSON ``{"base": <graph>,
"lists": [[ids...], ...], "h_edges": [[x, y], ...]}`` with intra-list edges
left out. Solve results: ``{"status": "sat"|"unsat", "witness": [...]|null,
"nodes": int}``.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .cover import Cover, make_cover
from .graph import Graph, make_graph
from .solver import SolveResult

SCHEMA_VERSION = 1


class FormatError(ValueError):
    pass


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def graph_to_json(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges]}


def _int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise FormatError(f"{where}: expected an integer, got {value!r}")
    return value


def _pairs(value: Any, where: str) -> list[tuple[int, int]]:
    if not isinstance(value, list):
        raise FormatError(f"{where}: expected a list of pairs")
    out = []
    for i, e in enumerate(value):
        if not isinstance(e, list) or len(e) != 2:
            raise FormatError(f"{where}[{i}]: expected a pair [u, v], got {e!r}")
        out.append((_int(e[0], f"{where}[{i}][0]"), _int(e[1], f"{where}[{i}][1]")))
    return out


def graph_from_json(obj: Any, where: str = "graph") -> Graph:
    if not isinstance(obj, dict) or "n" not in obj or "edges" not in obj:
        raise FormatError(f"{where}: expected an object with fields 'n' and 'edges'")
    n = _int(obj["n"], f"{where}.n")
    try:
        return make_graph(n, _pairs(obj["edges"], f"{where}.edges"))
    except FormatError:
        raise
    except ValueError as exc:
        raise FormatError(f"{where}.edges: {exc}") from None


def parse_edge_list(text: str) -> Graph:
    rows = [(i, line.split()) for i, line in enumerate(text.splitlines(), 1)]
    rows = [(i, parts) for i, parts in rows if parts and not parts[0].startswith("#")]
    if not rows:
        raise FormatError("line 1: missing 'n m' header")
    lineno, head = rows[0]
    if len(head) != 2 or not all(p.isdigit() for p in head):
        raise FormatError(f"line {lineno}: header must be two nonnegative integers 'n m'")
    n, m = int(head[0]), int(head[1])
    body = rows[1:]
    if len(body) != m:
        raise FormatError(f"line {lineno}: header announces {m} edges, found {len(body)}")
    edges = []
    seen: set[tuple[int, int]] = set()
    for lineno, parts in body:
        if len(parts) != 2 or not all(p.lstrip("-").isdigit() for p in parts):
            raise FormatError(f"line {lineno}: expected 'u v', got {' '.join(parts)!r}")
        u, v = int(parts[0]), int(parts[1])
        if not (0 <= u < n and 0 <= v < n):
            raise FormatError(f"line {lineno}: endpoint outside [0, {n})")
        if u == v:
            raise FormatError(f"line {lineno}: loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise FormatError(f"line {lineno}: duplicate edge {key}")
        seen.add(key)
        edges.append(key)
    return make_graph(n, edges)


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def _load_json(path: Path) -> Any:
    try:
        return json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: line {exc.lineno}: {exc.msg}") from None


def read_graph(path: str | Path) -> Graph:
    path = Path(path)
    if path.suffix.lower() == ".json":
        return graph_from_json(_load_json(path), str(path))
    try:
        return parse_edge_list(path.read_text())
    except FormatError as exc:
        raise FormatError(f"{path}: {exc}") from None


def cover_to_json(c: Cover) -> dict:
    return {
        "base": graph_to_json(c.base),
        "lists": [list(lst) for lst in c.lists],
        "h_edges": [list(e) for e in c.h_edges],
    }


def cover_from_json(obj: Any, where: str = "cover") -> Cover:
    if not isinstance(obj, dict):
        raise FormatError(f"{where}: expected an object")
    for key in ("base", "lists", "h_edges"):
        if key not in obj:
            raise FormatError(f"{where}: missing field '{key}'")
    base = graph_from_json(obj["base"], f"{where}.base")
    lists = obj["lists"]
    if not isinstance(lists, list) or len(lists) != base.n:
        raise FormatError(f"{where}.lists: expected {base.n} lists")
    owner: dict[int, int] = {}
    parsed = []
    for u, lst in enumerate(lists):
        if not isinstance(lst, list):
            raise FormatError(f"{where}.lists[{u}]: expected a list of ids")
        ids = [_int(x, f"{where}.lists[{u}][{i}]") for i, x in enumerate(lst)]
        for x in ids:
            owner.setdefault(x, u)
        parsed.append(ids)
    edges = _pairs(obj["h_edges"], f"{where}.h_edges")
    for i, (x, y) in enumerate(edges):
        if x in owner and owner.get(x) == owner.get(y):
            raise FormatError(f"{where}.h_edges[{i}]: intra-list edge ({x}, {y}) must be omitted")
    try:
        return make_cover(base, parsed, edges)
    except ValueError as exc:
        raise FormatError(f"{where}: {exc}") from None


def read_cover(path: str | Path) -> Cover:
    path = Path(path)
    return cover_from_json(_load_json(path), str(path))


def solve_result_to_json(r: SolveResult) -> dict:
    return {
        "status": r.status,
        "witness": None if r.witness is None else list(r.witness),
        "nodes": r.nodes,
    }


def solve_result_from_json(obj: Any) -> SolveResult:
    if not isinstance(obj, dict) or obj.get("status") not in ("sat", "unsat"):
        raise FormatError("solve result: 'status' must be 'sat' or 'unsat'")
    witness = obj.get("witness")
    if (witness is None) != (obj["status"] == "unsat"):
        raise FormatError("solve result: witness must be present exactly when sat")
    nodes = _int(obj.get("nodes"), "solve result.nodes")
    w = None if witness is None else tuple(_int(x, "solve result.witness") for x in witness)
    return SolveResult(obj["status"], w, nodes, 0)


def labeling_to_json(labeling: dict[int, tuple[str, int, int]]) -> dict:
    return {str(x): list(lab) for x, lab in sorted(labeling.items())}

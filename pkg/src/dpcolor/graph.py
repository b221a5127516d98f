"""Simple undirected graphs on dense integer labels, plus the invariants
the bound formulas consume (chromatic number, degeneracy, minimum degree).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import ResourceLimitError

DEFAULT_NODE_CAP = 5_000_000


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    Edges are stored canonically as sorted ``(u, v)`` pairs with ``u < v``.
    Build instances with :func:`make_graph`; the constructor trusts its input.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    adj: tuple[frozenset[int], ...] = field(repr=False, compare=False)

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, u: int) -> frozenset[int]:
        return self.adj[u]

    def degree(self, u: int) -> int:
        return len(self.adj[u])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def vertices(self) -> range:
        return range(self.n)

    def remove_vertices(self, removed: Iterable[int]) -> tuple["Graph", tuple[int, ...]]:
        """Induced subgraph on the remaining vertices, relabeled densely.

        Returns the subgraph and the original label of each new vertex.
        """
        gone = set(removed)
        kept = tuple(v for v in range(self.n) if v not in gone)
        index = {v: i for i, v in enumerate(kept)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return make_graph(len(kept), edges), kept


def make_graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Validate ``edges`` and build a canonical :class:`Graph`.

    Raises ``ValueError`` on a negative count, an out-of-range endpoint, a loop,
    or a duplicate edge (in either orientation).
    """
    if n < 0:
        raise ValueError(f"vertex count must be nonnegative, got {n}")
    seen: set[tuple[int, int]] = set()
    adj: list[set[int]] = [set() for _ in range(n)]
    for e in edges:
        if len(e) != 2:
            raise ValueError(f"edge must have two endpoints: {e!r}")
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
        if u == v:
            raise ValueError(f"loop at vertex {u}")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise ValueError(f"duplicate edge {key}")
        seen.add(key)
        adj[u].add(v)
        adj[v].add(u)
    return Graph(n, tuple(sorted(seen)), tuple(frozenset(s) for s in adj))


def join(g: Graph, s: int) -> Graph:
    """J(G, s): add ``s`` new vertices ``n..n+s-1`` forming a clique and
    adjacent to every vertex of ``g``."""
    if s < 0:
        raise ValueError(f"join size must be nonnegative, got {s}")
    n = g.n
    edges = list(g.edges)
    for a in range(n, n + s):
        edges.extend((v, a) for v in range(a))
    return make_graph(n + s, edges)


def complete(n: int) -> Graph:
    return make_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def complete_bipartite(a: int, b: int) -> Graph:
    """K_{a,b} with parts ``[0, a)`` and ``[a, a+b)``."""
    if a < 0 or b < 0:
        raise ValueError("part sizes must be nonnegative")
    return make_graph(a + b, [(u, v) for u in range(a) for v in range(a, a + b)])


def cycle(n: int) -> Graph:
    """C_n with edges ``i -- i+1 (mod n)``."""
    if n < 3:
        raise ValueError(f"a cycle needs at least 3 vertices, got {n}")
    return make_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return make_graph(n, [(i, i + 1) for i in range(n - 1)])


def empty(n: int) -> Graph:
    return make_graph(n, [])


def min_degree(g: Graph) -> int:
    if g.n == 0:
        raise ValueError("minimum degree of the empty graph is undefined")
    return min(len(a) for a in g.adj)


@dataclass(frozen=True)
class DegeneracyOrder:
    """``ordering`` lists the vertices so that each has at most ``d``
    neighbors appearing before it."""

    ordering: tuple[int, ...]
    d: int


def degeneracy(g: Graph) -> DegeneracyOrder:
    # smallest-last: repeatedly peel a minimum-degree vertex (lowest label on
    # ties); the reversed peel order has at most d earlier neighbors per vertex
    deg = [len(a) for a in g.adj]
    alive = set(range(g.n))
    peeled = []
    d = 0
    while alive:
        v = min(alive, key=lambda u: (deg[u], u))
        d = max(d, deg[v])
        peeled.append(v)
        alive.remove(v)
        for w in g.adj[v]:
            if w in alive:
                deg[w] -= 1
    return DegeneracyOrder(tuple(reversed(peeled)), d)


def greedy_clique(g: Graph) -> list[int]:
    """A maximal clique grown greedily by degree; a lower bound for chi."""
    if g.n == 0:
        return []
    by_degree = sorted(range(g.n), key=lambda u: (-len(g.adj[u]), u))
    clique = [by_degree[0]]
    candidates = set(g.adj[by_degree[0]])
    for v in by_degree[1:]:
        if v in candidates:
            clique.append(v)
            candidates &= g.adj[v]
    return clique


def greedy_coloring(g: Graph, order: Sequence[int] | None = None) -> list[int]:
    colors = [-1] * g.n
    for v in order if order is not None else range(g.n):
        used = {colors[w] for w in g.adj[v]}
        c = 0
        while c in used:
            c += 1
        colors[v] = c
    return colors


def _colorable(g: Graph, k: int, budget: list[int]) -> bool:
    colors = [-1] * g.n

    def extend(v: int, used: int) -> bool:
        if v == g.n:
            return True
        forbidden = {colors[w] for w in g.adj[v] if colors[w] >= 0}
        # symmetry breaking: a fresh color is only ever the next unused index
        for c in range(min(k, used + 1)):
            if c in forbidden:
                continue
            budget[0] -= 1
            if budget[0] < 0:
                raise ResourceLimitError("chromatic number search exceeded its node cap")
            colors[v] = c
            if extend(v + 1, max(used, c + 1)):
                return True
        colors[v] = -1
        return False

    return extend(0, 0)


def chromatic_number(g: Graph, node_cap: int = DEFAULT_NODE_CAP) -> int:
    """Exact chromatic number by clique/greedy bracketing plus backtracking.

    Raises :class:`ResourceLimitError` if more than ``node_cap`` search nodes
    are needed; a value is never returned unless it is exact.
    """
    if g.n == 0:
        return 0
    lower = max(1, len(greedy_clique(g)))
    upper = max(greedy_coloring(g)) + 1
    upper = min(upper, max(greedy_coloring(g, degeneracy(g).ordering)) + 1)
    budget = [node_cap]
    for k in range(lower, upper):
        if _colorable(g, k, budget):
            return k
    return upper

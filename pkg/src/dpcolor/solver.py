"""Exact (L, H)-colorability search and the DP-chromatic number."""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .cover import (
    Cover,
    Transversal,
    _standard_cover,
    check_transversal,
    cover_at,
    cover_count,
    spanning_forest,
)
from .errors import PreconditionError, ResourceLimitError
from .graph import DegeneracyOrder, Graph, chromatic_number, degeneracy

DEFAULT_NODE_CAP = 10_000_000

__all__ = [
    "SolveResult",
    "Colorability",
    "find_transversal",
    "check_transversal",
    "greedy_transversal",
    "is_dp_colorable_at",
    "chi_dp",
]


@dataclass(frozen=True)
class SolveResult:
    status: str  # "sat" or "unsat"
    witness: Transversal | None
    nodes: int
    max_depth: int

    @property
    def satisfiable(self) -> bool:
        return self.status == "sat"


def find_transversal(c: Cover, node_cap: int | None = DEFAULT_NODE_CAP) -> SolveResult:
    """Complete backtracking search for an (L, H)-coloring.

    Branches on the unassigned base vertex with the fewest surviving options
    (lowest index on ties), trying options in increasing id order. Choosing a
    cover vertex deletes its H-neighbors from the remaining lists; a list
    emptied this way fails the branch immediately.
    """
    n = c.base.n
    ids = sorted({x for lst in c.lists for x in lst})
    pos = {x: i for i, x in enumerate(ids)}
    owner = c.owner
    # per position: (base vertex, bitmask of H-neighbors inside that list)
    hits: list[list[tuple[int, int]]] = []
    for x in ids:
        per: dict[int, int] = {}
        for y in c.h_adj.get(x, ()):
            u = owner.get(y)
            if u is None or u == owner[x]:
                continue
            per[u] = per.get(u, 0) | (1 << pos[y])
        hits.append(sorted(per.items()))

    avail = [0] * n
    for u, lst in enumerate(c.lists):
        for x in lst:
            avail[u] |= 1 << pos[x]
    chosen: list[int] = [-1] * n
    nodes = 0
    deepest = 0

    def search(depth: int) -> bool:
        nonlocal nodes, deepest
        deepest = max(deepest, depth)
        best, best_count = -1, -1
        for u in range(n):
            if chosen[u] < 0:
                cnt = avail[u].bit_count()
                if best < 0 or cnt < best_count:
                    best, best_count = u, cnt
        if best < 0:
            return True
        if best_count == 0:
            return False
        options = avail[best]
        while options:
            low = options & -options
            options ^= low
            p = low.bit_length() - 1
            nodes += 1
            if node_cap is not None and nodes > node_cap:
                raise ResourceLimitError(f"transversal search exceeded {node_cap} nodes")
            chosen[best] = p
            saved = []
            dead = False
            for u, mask in hits[p]:
                if chosen[u] < 0 and avail[u] & mask:
                    saved.append((u, avail[u]))
                    avail[u] &= ~mask
                    if not avail[u]:
                        dead = True
            if not dead and search(depth + 1):
                return True
            for u, old in saved:
                avail[u] = old
            chosen[best] = -1
        return False

    if search(0):
        return SolveResult("sat", tuple(ids[p] for p in chosen), nodes, deepest)
    return SolveResult("unsat", None, nodes, deepest)


def greedy_transversal(c: Cover, order: DegeneracyOrder) -> SolveResult:
    """Color along ``order`` without backtracking, keeping the lowest-id
    option not adjacent to an earlier pick. Needs every list of size at least
    ``order.d + 1``."""
    n = c.base.n
    if sorted(order.ordering) != list(range(n)):
        raise PreconditionError("ordering is not a permutation of the base vertices")
    short = [u for u in range(n) if len(c.lists[u]) < order.d + 1]
    if short:
        raise PreconditionError(f"lists of {short} have fewer than d+1 = {order.d + 1} elements")
    picks: dict[int, int] = {}
    blocked: set[int] = set()
    for step, u in enumerate(order.ordering):
        for x in c.lists[u]:
            if x not in blocked:
                picks[u] = x
                blocked |= c.h_adj.get(x, frozenset())
                break
        else:
            raise PreconditionError(f"vertex {u} has more than d earlier neighbors in the ordering")
    return SolveResult("sat", tuple(picks[u] for u in range(n)), n, n)


@dataclass(frozen=True)
class Colorability:
    colorable: bool
    k: int
    covers_checked: int
    nodes: int
    method: str
    refuting_index: int | None = None
    refuting_cover: Cover | None = None

    def __bool__(self) -> bool:
        return self.colorable


# -- per-cover route --------------------------------------------------------------

def _scan_solve(g: Graph, k: int, start: int, stop: int, node_cap: int | None) -> tuple[int | None, int, int]:
    """Solve covers ``start..stop-1`` one by one; stop at the first refutation.

    Returns (refuting index or None, covers solved, nodes spent).
    """
    forest = spanning_forest(g)
    perms = list(itertools.permutations(range(k)))
    choices = itertools.product(perms, repeat=len(forest.free_edges))
    nodes = 0
    for offset, choice in enumerate(itertools.islice(choices, start, stop)):
        res = find_transversal(_standard_cover(g, k, forest, choice), node_cap)
        nodes += res.nodes
        if not res.satisfiable:
            return start + offset, offset + 1, nodes
    return None, stop - start, nodes


# -- frontier route ---------------------------------------------------------------
#
# In a gauge-fixed cover a transversal is a slot assignment s: V -> Z_k with
# s(u) != s(v) on forest edges and perm(s(u)) != s(v) on each free edge (u, v).
# Vertices are added in label order; each free edge (u, v), u < v, is a
# branching level where every permutation is tried, in family index order.
# The state is the set of slot assignments of the frontier (added vertices
# that still have later neighbors) extendable to everything added so far.
# An empty state refutes every completion; equal states at one level share
# their answer.

MEMO_LIMIT = 500_000
STATE_CELLS_LIMIT = 1 << 22


@dataclass(frozen=True)
class _Step:
    vertex: int
    tree_back: tuple[int, ...]   # earlier forest neighbors
    free_back: tuple[int, ...]   # earlier neighbors across free edges, ascending
    drop: tuple[int, ...]        # vertices leaving the frontier after this step


def _frontier_plan(g: Graph) -> list[_Step]:
    forest = spanning_forest(g)
    tree = {(min(e), max(e)) for e in forest.tree_edges}
    last = [max([v] + [w for w in g.adj[v]]) for v in range(g.n)]
    plan = []
    for v in range(g.n):
        back = sorted(u for u in g.adj[v] if u < v)
        plan.append(_Step(
            v,
            tuple(u for u in back if (u, v) in tree),
            tuple(u for u in back if (u, v) not in tree),
            tuple(u for u in range(v + 1) if last[u] == v),
        ))
    return plan


def frontier_route_feasible(g: Graph, k: int) -> bool:
    """Whether every frontier state fits under the cell limit."""
    width, live = 0, 0
    last = [max([v] + list(g.adj[v])) for v in range(g.n)]
    for v in range(g.n):
        live += 1
        width = max(width, live)
        live -= sum(1 for u in range(v + 1) if last[u] == v)
    return k ** width <= STATE_CELLS_LIMIT


def _scan_frontier(
    g: Graph, k: int, first_lo: int = 0, first_hi: int | None = None, node_cap: int | None = None,
) -> tuple[int | None, int]:
    """Lowest index of a refuted cover in the family (restricted to first
    free-edge permutations in ``[first_lo, first_hi)``), or None; plus the
    number of search nodes."""
    plan = _frontier_plan(g)
    perms = [np.asarray(p) for p in itertools.permutations(range(k))]
    n_perms = len(perms)
    levels = [(step_i, u) for step_i, step in enumerate(plan) for u in step.free_back]
    depth = len(levels)
    slots = np.arange(k)
    memo: dict[tuple[int, bytes], int | None] = {}
    nodes = 0

    def constrain(state, scope, u, v, perm):
        # keep assignments with perm[s_u] != s_v
        au, av = scope.index(u), scope.index(v)
        shape = [1] * len(scope)
        shape[au], shape[av] = k, k
        ok = (perm[slots][:, None] != slots[None, :]) if au < av else (perm[slots][None, :] != slots[:, None])
        return state & ok.reshape(shape)

    def finish_vertex(state, scope, step):
        drop = [scope.index(u) for u in step.drop]
        if drop:
            state = state.any(axis=tuple(drop))
            scope = [w for w in scope if w not in step.drop]
        return state, scope

    def enter_vertex(state, scope, step):
        state = np.repeat(state[..., None], k, axis=-1)
        scope = scope + [step.vertex]
        for p in step.tree_back:
            state = constrain(state, scope, p, step.vertex, slots)
        return state, scope

    def advance(state, scope, step_i):
        """Add vertices until one with a pending free edge is entered."""
        while True:
            if step_i == len(plan):
                return state, scope, step_i
            step = plan[step_i]
            state, scope = enter_vertex(state, scope, step)
            if step.free_back or not state.any():
                return state, scope, step_i
            state, scope = finish_vertex(state, scope, step)
            step_i += 1

    def first_refuted(level: int, state, scope, step_i: int, edge_i: int) -> int | None:
        nonlocal nodes
        nodes += 1
        if node_cap is not None and nodes > node_cap:
            raise ResourceLimitError(f"frontier scan exceeded {node_cap} nodes")
        if not state.any():
            return 0
        if level == depth:
            return None
        key = (level, state.tobytes())
        if key in memo:
            return memo[key]
        step = plan[step_i]
        u = step.free_back[edge_i]
        span = n_perms ** (depth - level - 1)
        lo, hi = (first_lo, n_perms if first_hi is None else first_hi) if level == 0 else (0, n_perms)
        found = None
        for j in range(lo, hi):
            nxt = constrain(state, scope, u, step.vertex, perms[j])
            if edge_i + 1 < len(step.free_back):
                r = first_refuted(level + 1, nxt, scope, step_i, edge_i + 1)
            else:
                s2, sc2 = finish_vertex(nxt, scope, step)
                s2, sc2, si2 = advance(s2, sc2, step_i + 1)
                r = first_refuted(level + 1, s2, sc2, si2, 0)
            if r is not None:
                found = j * span + r
                break
        if len(memo) < MEMO_LIMIT:
            memo[key] = found
        return found

    state, scope, step_i = advance(np.ones((), dtype=bool), [], 0)
    return first_refuted(0, state, scope, step_i, 0), nodes


def is_dp_colorable_at(
    g: Graph,
    k: int,
    *,
    node_cap: int | None = DEFAULT_NODE_CAP,
    max_covers: int | None = None,
    jobs: int = 1,
    method: str = "auto",
) -> Colorability:
    """Decide whether every cover of ``g`` with lists of size ``k`` has a
    transversal, over the normalized family of :func:`enumerate_covers`.

    ``method="solve"`` runs :func:`find_transversal` on each cover in index
    order; ``"frontier"`` decides whole branches of the family at once by
    tracking surviving slot assignments; ``"auto"`` picks ``"frontier"``
    when its states stay small. ``max_covers`` only limits ``"solve"``.
    Both report the lowest-index refuting cover,
    whatever ``jobs`` is.
    """
    if k < 1:
        raise ValueError(f"list size must be positive, got {k}")
    total = cover_count(g, k)
    if method == "auto":
        method = "frontier" if frontier_route_feasible(g, k) else "solve"
    # the cap bounds covers streamed one by one; the frontier route never does that
    if method == "solve" and max_covers is not None and total > max_covers:
        raise ResourceLimitError(f"{total} covers exceed the stream cap of {max_covers}")

    if method == "frontier":
        if jobs > 1 and total > 1:
            hit, nodes = _parallel_frontier(g, k, jobs, node_cap)
        else:
            hit, nodes = _scan_frontier(g, k, node_cap=node_cap)
        checked = total if hit is None else hit + 1
    elif method == "solve":
        if jobs > 1 and total >= 2 * jobs:
            hit, checked, nodes = _parallel_solve(g, k, total, node_cap, jobs)
        else:
            hit, checked, nodes = _scan_solve(g, k, 0, total, node_cap)
    else:
        raise ValueError(f"unknown method {method!r}")

    if hit is None:
        return Colorability(True, k, checked, nodes, method)
    return Colorability(False, k, checked, nodes, method, hit, cover_at(g, k, hit))


def _first_in_order(futures) -> tuple[int, list]:
    """Consume futures in submission order; stop at the first with a hit."""
    results = []
    for i, fut in enumerate(futures):
        res = fut.result()
        results.append(res)
        if res[0] is not None:
            for later in futures[i + 1:]:
                later.cancel()
            break
    return len(results), results


def _parallel_solve(g: Graph, k: int, total: int, node_cap: int | None, jobs: int) -> tuple[int | None, int, int]:
    n_chunks = jobs * 4
    bounds = [total * i // n_chunks for i in range(n_chunks + 1)]
    spans = [(a, b) for a, b in zip(bounds, bounds[1:]) if b > a]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        _, results = _first_in_order([pool.submit(_scan_solve, g, k, a, b, node_cap) for a, b in spans])
    hit = results[-1][0]
    return hit, sum(r[1] for r in results), sum(r[2] for r in results)


def _parallel_frontier(g: Graph, k: int, jobs: int, node_cap: int | None) -> tuple[int | None, int]:
    n_perms = math.factorial(k)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        _, results = _first_in_order([pool.submit(_scan_frontier, g, k, j, j + 1, node_cap) for j in range(n_perms)])
    return results[-1][0], sum(r[1] for r in results)


def _core(g: Graph, k: int) -> Graph:
    """Subgraph left after repeatedly deleting vertices of degree < k."""
    alive = set(range(g.n))
    deg = {v: g.degree(v) for v in alive}
    stack = [v for v in alive if deg[v] < k]
    while stack:
        v = stack.pop()
        if v not in alive:
            continue
        alive.discard(v)
        for w in g.adj[v]:
            if w in alive:
                deg[w] -= 1
                if deg[w] < k:
                    stack.append(w)
    sub, _ = g.remove_vertices(set(range(g.n)) - alive)
    return sub


class _ChiDP:
    """chi_DP of induced subgraphs of one graph, memoized by vertex set.

    Sound shortcuts, tried before any cover enumeration:

    * components are independent, so chi_DP is their maximum;
    * chi_DP(G - v) <= chi_DP(G) <= chi_DP(G - v) + 1 for every vertex v
      (subgraph monotonicity; color v first, each neighbor loses one option);
    * a vertex of degree < k never blocks a k-coloring, so DP-k-colorability
      is decided on the k-core.
    """

    def __init__(self, g: Graph, **opts):
        self.g = g
        self.opts = opts
        self.memo: dict[frozenset[int], int] = {}

    def induced(self, keep: frozenset[int]) -> Graph:
        return self.g.remove_vertices(set(range(self.g.n)) - keep)[0]

    def colorable(self, h: Graph, k: int) -> bool:
        return all(is_dp_colorable_at(c, k, **self.opts) for c in _components(_core(h, k)))

    def value(self, keep: frozenset[int]) -> int:
        if keep not in self.memo:
            self.memo[keep] = self._compute(keep)
        return self.memo[keep]

    def _compute(self, keep: frozenset[int]) -> int:
        if not keep:
            return 0
        h = self.induced(keep)
        labels = sorted(keep)
        comps = _component_sets(h)
        if len(comps) > 1:
            return max(self.value(frozenset(labels[i] for i in comp)) for comp in comps)
        lo = chromatic_number(h)
        hi = degeneracy(h).d + 1
        if lo == hi:
            return lo
        for v in sorted(keep):
            below = self.value(keep - {v})
            lo, hi = max(lo, below), min(hi, below + 1)
            if lo == hi:
                return lo
        for k in range(lo, hi):
            if self.colorable(h, k):
                return k
        return hi


def _component_sets(g: Graph) -> list[set[int]]:
    seen: set[int] = set()
    out = []
    for root in range(g.n):
        if root in seen:
            continue
        comp, stack = {root}, [root]
        while stack:
            for w in g.adj[stack.pop()]:
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        out.append(comp)
    return out


def _components(g: Graph) -> list[Graph]:
    return [g.remove_vertices(set(range(g.n)) - comp)[0] for comp in _component_sets(g)]


def chi_dp(
    g: Graph,
    *,
    node_cap: int | None = DEFAULT_NODE_CAP,
    max_covers: int | None = None,
    jobs: int = 1,
    method: str = "auto",
) -> int:
    """Exact DP-chromatic number.

    The answer lies between chi(G) and degeneracy + 1; inside that bracket
    list sizes are tried in increasing order against the normalized cover
    family, after the reductions described on :class:`_ChiDP`.
    """
    solver = _ChiDP(g, node_cap=node_cap, max_covers=max_covers, jobs=jobs, method=method)
    return solver.value(frozenset(range(g.n)))

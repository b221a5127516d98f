"""The quadratic lower-bound instance: a cover of J(K_{n/2,n/2}, k^2 - 2),
k = n/2 - 1, with lists of size k^2 = chi and no transversal.

Base vertices are labeled: part X is ``x, x_0..x_{k-1}`` (ids ``0..k``),
part Y is ``y, y_0..y_{k-1}`` (ids ``k+1..2k+1``), then the ``k^2 - 2``
dominating vertices ``a_0, a_1, ...``. Cover vertex ``(u, i, j)`` with
``i, j`` in Z_k has id ``u*k^2 + i*k + j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cover import Cover, make_cover, validate_cover
from .errors import PreconditionError
from .graph import Graph, chromatic_number, complete_bipartite, join
from .solver import DEFAULT_NODE_CAP, find_transversal


@dataclass(frozen=True)
class HardInstance:
    n: int
    k: int
    base: Graph
    cover: Cover
    labeling: dict[int, tuple[str, int, int]] = field(repr=False)

    @property
    def a_size(self) -> int:
        return self.k * self.k - 2

    @property
    def x(self) -> int:
        return 0

    @property
    def y(self) -> int:
        return self.k + 1

    def x_s(self, s: int) -> int:
        return 1 + s % self.k

    def y_t(self, t: int) -> int:
        return self.k + 2 + t % self.k

    @property
    def a_vertices(self) -> range:
        return range(2 * self.k + 2, 2 * self.k + 2 + self.a_size)

    def vertex_name(self, u: int) -> str:
        k = self.k
        if u == 0:
            return "x"
        if u <= k:
            return f"x{u - 1}"
        if u == k + 1:
            return "y"
        if u <= 2 * k + 1:
            return f"y{u - k - 2}"
        return f"a{u - 2 * k - 2}"

    def cover_id(self, u: int, i: int, j: int) -> int:
        k = self.k
        return u * k * k + (i % k) * k + (j % k)

    def rule_edges(self) -> tuple[set[tuple[int, int]], set[tuple[int, int]]]:
        """Cross edges split by the rule that creates them: identity matchings
        at x, y and A, and shifted matchings between x_s and y_t."""
        k = self.k
        identity: set[tuple[int, int]] = set()
        shifted: set[tuple[int, int]] = set()
        for u in [self.x, self.y, *self.a_vertices]:
            for v in self.base.adj[u]:
                for i in range(k):
                    for j in range(k):
                        a, b = self.cover_id(u, i, j), self.cover_id(v, i, j)
                        identity.add((min(a, b), max(a, b)))
        for s in range(k):
            for t in range(k):
                for i in range(k):
                    for j in range(k):
                        a = self.cover_id(self.x_s(s), i, j)
                        b = self.cover_id(self.y_t(t), i + s, j + t)
                        shifted.add((min(a, b), max(a, b)))
        return identity, shifted


def hard_instance(n: int) -> HardInstance:
    if n % 2:
        raise PreconditionError(f"the construction needs even n, got {n}")
    if n < 6:
        raise PreconditionError(f"the construction needs n >= 6, got {n}")
    k = n // 2 - 1
    base = join(complete_bipartite(k + 1, k + 1), k * k - 2)
    skeleton = HardInstance(n, k, base, None, {})  # type: ignore[arg-type]
    identity, shifted = skeleton.rule_edges()
    kk = k * k
    lists = [range(u * kk, (u + 1) * kk) for u in range(base.n)]
    cover = make_cover(base, lists, sorted(identity | shifted))
    labeling = {
        skeleton.cover_id(u, i, j): (skeleton.vertex_name(u), i, j)
        for u in range(base.n) for i in range(k) for j in range(k)
    }
    return HardInstance(n, k, base, cover, labeling)


@dataclass(frozen=True)
class HardInstanceReport:
    n: int
    k: int
    a_size: int
    base_vertices: int
    base_edges: int
    axioms_ok: bool
    violations: int
    perfect_matchings: bool
    list_size: int
    chi_join: int
    list_size_equals_chi: bool
    refuted: bool | None = None
    nodes: int | None = None

    @property
    def structural_ok(self) -> bool:
        return self.axioms_ok and self.perfect_matchings and self.list_size_equals_chi

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "a_size": self.a_size,
            "base_vertices": self.base_vertices,
            "base_edges": self.base_edges,
            "checks": {
                "cover_axioms": self.axioms_ok,
                "violations": self.violations,
                "perfect_matchings": self.perfect_matchings,
                "list_size": self.list_size,
                "chi_join": self.chi_join,
                "list_size_equals_chi": self.list_size_equals_chi,
            },
            "refutation": None if self.refuted is None else {
                "status": "unsat" if self.refuted else "sat",
                "nodes": self.nodes,
            },
            "lower_bound_certified": None if self.refuted is None else self.structural_ok and self.refuted,
        }


def perfect_matchings(c: Cover) -> bool:
    """True iff every base edge carries a perfect matching between its two lists."""
    counts = {e: 0 for e in c.base.edges}
    for x, y in c.h_edges:
        u, v = c.owner[x], c.owner[y]
        if u != v:
            counts[(min(u, v), max(u, v))] += 1
    return all(
        counts[(u, v)] == len(c.lists[u]) == len(c.lists[v]) for u, v in c.base.edges
    )


def verify_hard_instance(n: int, refute: bool = False, node_cap: int | None = DEFAULT_NODE_CAP) -> HardInstanceReport:
    inst = hard_instance(n)
    report = validate_cover(inst.cover)
    sizes = set(inst.cover.list_sizes())
    list_size = inst.k * inst.k
    chi = chromatic_number(inst.base)
    refuted = nodes = None
    if refute:
        res = find_transversal(inst.cover, node_cap)
        refuted, nodes = not res.satisfiable, res.nodes
    return HardInstanceReport(
        n=n,
        k=inst.k,
        a_size=inst.a_size,
        base_vertices=inst.base.n,
        base_edges=inst.base.m,
        axioms_ok=report.ok,
        violations=len(report.violations),
        perfect_matchings=perfect_matchings(inst.cover),
        list_size=list_size,
        chi_join=chi,
        list_size_equals_chi=sizes == {list_size} and chi == 2 + inst.a_size == list_size,
        refuted=refuted,
        nodes=nodes,
    )

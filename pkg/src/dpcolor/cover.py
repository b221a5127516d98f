"""Covers (L, H) of a base graph and the normalizations used to enumerate them.

A cover assigns each base vertex ``u`` a list ``L(u)`` of integer cover-vertex
ids. The graph ``H`` is stored as its cross-list edges only; every list is
treated as a clique without storing those edges.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Iterator, Mapping, Sequence

from .errors import PreconditionError, ResourceLimitError
from .graph import Graph

Transversal = tuple[int, ...]


@dataclass(frozen=True)
class Cover:
    base: Graph
    lists: tuple[tuple[int, ...], ...]
    h_edges: tuple[tuple[int, int], ...]
    # (base vertex, color) for every cover vertex, set by cover_from_lists
    labels: Mapping[int, tuple[int, Hashable]] | None = field(default=None, compare=False, repr=False)
    # False means H is taken literally: intra-list edges must be present
    implicit_cliques: bool = True

    @cached_property
    def owner(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for u, lst in enumerate(self.lists):
            for x in lst:
                out.setdefault(x, u)
        return out

    @cached_property
    def h_adj(self) -> dict[int, frozenset[int]]:
        nbrs: dict[int, set[int]] = {x: set() for x in self.owner}
        for x, y in self.h_edges:
            nbrs.setdefault(x, set()).add(y)
            nbrs.setdefault(y, set()).add(x)
        return {x: frozenset(s) for x, s in nbrs.items()}

    def cross_neighbors(self, x: int) -> frozenset[int]:
        """H-neighbors of ``x`` outside its own list."""
        own = self.owner.get(x)
        return frozenset(y for y in self.h_adj.get(x, ()) if self.owner.get(y) != own)

    def list_sizes(self) -> tuple[int, ...]:
        return tuple(len(lst) for lst in self.lists)

    def uniform_size(self) -> int | None:
        sizes = set(self.list_sizes())
        return sizes.pop() if len(sizes) == 1 else None


def make_cover(
    base: Graph,
    lists: Sequence[Iterable[int]],
    h_edges: Iterable[Sequence[int]],
    *,
    labels: Mapping[int, tuple[int, Hashable]] | None = None,
    implicit_cliques: bool = True,
) -> Cover:
    """Canonicalize raw data into a :class:`Cover` without checking the axioms
    (use :func:`validate_cover` for that)."""
    if len(lists) != base.n:
        raise ValueError(f"expected {base.n} lists, got {len(lists)}")
    canon: set[tuple[int, int]] = set()
    for e in h_edges:
        x, y = int(e[0]), int(e[1])
        if x == y:
            raise ValueError(f"loop at cover vertex {x}")
        canon.add((x, y) if x < y else (y, x))
    return Cover(
        base,
        tuple(tuple(sorted(int(x) for x in lst)) for lst in lists),
        tuple(sorted(canon)),
        labels,
        implicit_cliques,
    )


@dataclass(frozen=True)
class Violation:
    axiom: str
    detail: str
    witness: tuple = ()


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_cover(c: Cover) -> ValidationReport:
    """Check the four cover axioms: partition, locality, intra-list cliques
    and cross matchings. Every failure is reported, none is raised."""
    out: list[Violation] = []
    seen: dict[int, int] = {}
    for u, lst in enumerate(c.lists):
        for x in lst:
            if x in seen:
                out.append(Violation("partition", f"cover vertex {x} is in L({seen[x]}) and L({u})", (x, seen[x], u)))
            else:
                seen[x] = u
    for x, y in c.h_edges:
        for z in (x, y):
            if z not in seen:
                out.append(Violation("partition", f"cover vertex {z} of edge ({x}, {y}) belongs to no list", (z,)))

    cross: dict[tuple[int, int], list[tuple[int, int]]] = {}
    intra: set[tuple[int, int]] = set()
    for x, y in c.h_edges:
        if x not in seen or y not in seen:
            continue
        u, v = seen[x], seen[y]
        if u == v:
            intra.add((x, y))
            continue
        if not c.base.has_edge(u, v):
            out.append(Violation("locality", f"edge ({x}, {y}) joins L({u}) and L({v}) but {u}{v} is not a base edge", (x, y)))
            continue
        key, pair = ((u, v), (x, y)) if u < v else ((v, u), (y, x))
        cross.setdefault(key, []).append(pair)

    if not c.implicit_cliques:
        for u, lst in enumerate(c.lists):
            for x, y in itertools.combinations(lst, 2):
                if (x, y) not in intra:
                    out.append(Violation("intra-list clique", f"L({u}) lacks edge ({x}, {y})", (x, y)))

    for (u, v), pairs in sorted(cross.items()):
        for side, name in ((0, u), (1, v)):
            counts: dict[int, int] = {}
            for p in pairs:
                counts[p[side]] = counts.get(p[side], 0) + 1
            for x, cnt in sorted(counts.items()):
                if cnt > 1:
                    other = v if name == u else u
                    out.append(Violation("cross-matching", f"{x} in L({name}) has {cnt} neighbors in L({other})", (x, name, other)))
    return ValidationReport(tuple(out))


def check_transversal(c: Cover, t: Sequence[int]) -> bool:
    """True iff ``t`` picks one member of each list and no two picks are
    H-adjacent."""
    if len(t) != c.base.n:
        return False
    for u, x in enumerate(t):
        if x not in c.lists[u]:
            return False
    edges = set(c.h_edges)
    for i in range(len(t)):
        for j in range(i + 1, len(t)):
            x, y = t[i], t[j]
            if x == y or ((x, y) if x < y else (y, x)) in edges:
                return False
    return True


# -- list assignments ---------------------------------------------------------

def _color_key(c: Hashable) -> tuple[str, object]:
    return (type(c).__name__, c)


def cover_from_lists(g: Graph, lists: Sequence[Iterable[Hashable]]) -> Cover:
    """The cover whose transversals are exactly the proper L-colorings of ``g``.

    Cover vertices are the pairs ``(u, c)``; ids are assigned contiguously in
    vertex order, colors sorted. Equal colors are matched across base edges.
    """
    if len(lists) != g.n:
        raise ValueError(f"expected {g.n} lists, got {len(lists)}")
    lists = [set(lst) for lst in lists]
    labels: dict[int, tuple[int, Hashable]] = {}
    index: dict[tuple[int, Hashable], int] = {}
    out_lists = []
    for u, lst in enumerate(lists):
        colors = sorted(lst, key=_color_key)
        if not colors:
            raise PreconditionError(f"list of vertex {u} is empty")
        ids = []
        for col in colors:
            x = len(labels)
            labels[x] = (u, col)
            index[(u, col)] = x
            ids.append(x)
        out_lists.append(ids)
    edges = []
    for u, v in g.edges:
        for col in sorted(lists[u] & lists[v], key=_color_key):
            if (v, col) in index:
                edges.append((index[(u, col)], index[(v, col)]))
    return make_cover(g, out_lists, edges, labels=labels)


def transversal_to_list_coloring(c: Cover, t: Sequence[int]) -> list[Hashable]:
    if c.labels is None:
        raise PreconditionError("cover carries no (vertex, color) provenance")
    if not check_transversal(c, t):
        raise ValueError("not a transversal of this cover")
    return [c.labels[x][1] for x in t]


def list_coloring_to_transversal(c: Cover, coloring: Sequence[Hashable]) -> Transversal:
    if c.labels is None:
        raise PreconditionError("cover carries no (vertex, color) provenance")
    g = c.base
    if len(coloring) != g.n:
        raise ValueError(f"expected {g.n} colors, got {len(coloring)}")
    lookup = {lab: x for x, lab in c.labels.items()}
    t = []
    for u, col in enumerate(coloring):
        if (u, col) not in lookup:
            raise ValueError(f"color {col!r} is not in the list of vertex {u}")
        t.append(lookup[(u, col)])
    for u, v in g.edges:
        if coloring[u] == coloring[v]:
            raise ValueError(f"improper coloring: {u} and {v} both get {coloring[u]!r}")
    return tuple(t)


# -- restriction --------------------------------------------------------------

@dataclass(frozen=True)
class Restriction:
    """Result of fixing ``chosen`` and deleting their neighbors from the other
    lists. ``kept[i]`` is the original label of base vertex ``i``."""

    cover: Cover
    kept: tuple[int, ...]
    chosen: tuple[int, ...]
    chosen_owners: tuple[int, ...]
    emptied: tuple[int, ...]

    @property
    def unsatisfiable(self) -> bool:
        return bool(self.emptied)

    def extend(self, t: Sequence[int]) -> Transversal:
        """Merge a transversal of the restricted cover with ``chosen`` into a
        transversal of the original cover."""
        full = [0] * (len(self.kept) + len(self.chosen))
        for i, x in enumerate(t):
            full[self.kept[i]] = x
        for x, u in zip(self.chosen, self.chosen_owners):
            full[u] = x
        return tuple(full)


def remove_and_restrict(c: Cover, chosen: Iterable[int]) -> Restriction:
    chosen = tuple(sorted(set(chosen)))
    owners = []
    for x in chosen:
        if x not in c.owner:
            raise PreconditionError(f"cover vertex {x} belongs to no list")
        owners.append(c.owner[x])
    if len(set(owners)) != len(owners):
        raise PreconditionError("two chosen cover vertices lie in the same list")
    for x, y in itertools.combinations(chosen, 2):
        if y in c.h_adj.get(x, ()):
            raise PreconditionError(f"chosen vertices {x} and {y} are adjacent in H")

    blocked: set[int] = set()
    for x in chosen:
        blocked |= c.h_adj.get(x, frozenset())
    sub, kept = c.base.remove_vertices(owners)
    new_lists = [tuple(x for x in c.lists[u] if x not in blocked) for u in kept]
    alive = {x for lst in new_lists for x in lst}
    edges = [(x, y) for x, y in c.h_edges if x in alive and y in alive]
    labels = None if c.labels is None else {x: c.labels[x] for x in alive}
    restricted = Cover(sub, tuple(new_lists), tuple(edges), labels, c.implicit_cliques)
    emptied = tuple(u for u, lst in zip(kept, new_lists) if not lst)
    return Restriction(restricted, kept, chosen, tuple(owners), emptied)


def relabel(c: Cover, mapping: Mapping[int, int]) -> Cover:
    """Apply an id bijection that maps each list onto itself (a cover
    isomorphism); unmapped ids are fixed."""
    for lst in c.lists:
        if {mapping.get(x, x) for x in lst} != set(lst):
            raise PreconditionError("relabeling must permute each list within itself")
    f = lambda x: mapping.get(x, x)  # noqa: E731
    labels = None if c.labels is None else {f(x): lab for x, lab in c.labels.items()}
    return make_cover(
        c.base, c.lists, [(f(x), f(y)) for x, y in c.h_edges],
        labels=labels, implicit_cliques=c.implicit_cliques,
    )


# -- WLOG normalizations --------------------------------------------------------

def _require_uniform(c: Cover) -> int:
    k = c.uniform_size()
    if c.base.n and k is None:
        raise PreconditionError(f"lists must all have the same size, got sizes {sorted(set(c.list_sizes()))}")
    return k or 0


def complete_matchings(c: Cover) -> Cover:
    """Extend every cross matching to a perfect one.

    Free vertices are paired lowest-id first. Adding H-edges can only destroy
    transversals, so the result is at least as hard as ``c``.
    """
    _require_uniform(c)
    cross: dict[tuple[int, int], list[tuple[int, int]]] = {e: [] for e in c.base.edges}
    for x, y in c.h_edges:
        u, v = c.owner[x], c.owner[y]
        if u == v:
            continue
        cross[(u, v) if u < v else (v, u)].append((x, y) if u < v else (y, x))
    added = []
    for (u, v), pairs in cross.items():
        used_u = {p[0] for p in pairs}
        used_v = {p[1] for p in pairs}
        free_u = [x for x in c.lists[u] if x not in used_u]
        free_v = [y for y in c.lists[v] if y not in used_v]
        added.extend(zip(free_u, free_v))
    if not added:
        return c
    return make_cover(
        c.base, c.lists, list(c.h_edges) + added,
        labels=c.labels, implicit_cliques=c.implicit_cliques,
    )


@dataclass(frozen=True)
class SpanningForest:
    tree_edges: tuple[tuple[int, int], ...]  # (parent, child) in BFS discovery order
    free_edges: tuple[tuple[int, int], ...]  # (u, v) with u < v, ordered by (v, u)
    components: int


def spanning_forest(g: Graph) -> SpanningForest:
    """Breadth-first forest, rooted at the lowest unvisited vertex, scanning
    neighbors in increasing order."""
    seen = [False] * g.n
    tree: list[tuple[int, int]] = []
    comps = 0
    for root in range(g.n):
        if seen[root]:
            continue
        comps += 1
        seen[root] = True
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in sorted(g.adj[u]):
                if not seen[w]:
                    seen[w] = True
                    tree.append((u, w))
                    queue.append(w)
    in_tree = {(min(e), max(e)) for e in tree}
    free = tuple(sorted((e for e in g.edges if e not in in_tree), key=lambda e: (e[1], e[0])))
    return SpanningForest(tuple(tree), free, comps)


def gauge_fix(c: Cover) -> Cover:
    """Relabel within lists so every spanning-forest matching is the identity.

    Output ids follow the standard layout: slot ``i`` of vertex ``u`` has id
    ``u*k + i``. Requires uniform list size ``k`` and perfect cross matchings.
    """
    k = _require_uniform(c)
    g = c.base
    partner: dict[tuple[int, int], int] = {}
    for x, y in c.h_edges:
        if c.owner[x] != c.owner[y]:
            partner[(x, c.owner[y])] = y
            partner[(y, c.owner[x])] = x
    for u, v in g.edges:
        for a, b in ((u, v), (v, u)):
            if any((x, b) not in partner for x in c.lists[a]):
                raise PreconditionError(f"matching on base edge {u}{v} is not perfect")

    new_id: dict[int, int] = {}
    forest = spanning_forest(g)
    children = {child for _, child in forest.tree_edges}
    for u in range(g.n):
        if u not in children:
            for i, x in enumerate(c.lists[u]):
                new_id[x] = u * k + i
    for parent, child in forest.tree_edges:
        for i, x in enumerate(c.lists[parent]):
            new_id[partner[(x, child)]] = child * k + (new_id[x] - parent * k)

    lists = [tuple(range(u * k, (u + 1) * k)) for u in range(g.n)]
    edges = [(new_id[x], new_id[y]) for x, y in c.h_edges]
    labels = None if c.labels is None else {new_id[x]: lab for x, lab in c.labels.items()}
    return make_cover(g, lists, edges, labels=labels, implicit_cliques=c.implicit_cliques)


def cover_count(g: Graph, k: int) -> int:
    """Size of the normalized family: ``(k!) ** (m - n + components)``."""
    if k < 1:
        raise ValueError(f"list size must be positive, got {k}")
    return math.factorial(k) ** len(spanning_forest(g).free_edges)


def _standard_cover(g: Graph, k: int, forest: SpanningForest, perms: Sequence[Sequence[int]]) -> Cover:
    lists = [tuple(range(u * k, (u + 1) * k)) for u in range(g.n)]
    edges = []
    for p, c in forest.tree_edges:
        edges.extend((p * k + i, c * k + i) for i in range(k))
    for (u, v), perm in zip(forest.free_edges, perms):
        edges.extend((u * k + i, v * k + perm[i]) for i in range(k))
    return make_cover(g, lists, edges)


def cover_at(g: Graph, k: int, index: int) -> Cover:
    """The ``index``-th cover of :func:`enumerate_covers`, built directly."""
    total = cover_count(g, k)
    if not 0 <= index < total:
        raise IndexError(f"cover index {index} outside [0, {total})")
    forest = spanning_forest(g)
    all_perms = list(itertools.permutations(range(k)))
    digits = []
    for _ in forest.free_edges:
        index, r = divmod(index, len(all_perms))
        digits.append(r)
    # last free edge varies fastest, matching itertools.product order
    digits.reverse()
    return _standard_cover(g, k, forest, [all_perms[d] for d in digits])


def enumerate_covers(g: Graph, k: int, max_covers: int | None = None) -> Iterator[Cover]:
    """All gauge-fixed covers with perfect matchings and lists of size ``k``,
    in a fixed order: one permutation per non-forest edge, lexicographic.

    Every cover with lists of size ``k`` is at least as colorable as some
    member of this family, so it decides DP-colorability at ``k``.
    """
    total = cover_count(g, k)
    if max_covers is not None and total > max_covers:
        raise ResourceLimitError(f"{total} covers exceed the stream cap of {max_covers}")
    forest = spanning_forest(g)
    all_perms = list(itertools.permutations(range(k)))
    for choice in itertools.product(all_perms, repeat=len(forest.free_edges)):
        yield _standard_cover(g, k, forest, choice)

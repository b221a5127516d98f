"""Seeded generators for test instances. Every function takes a
``random.Random`` so callers control reproducibility."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .cover import Cover, make_cover, relabel
from .graph import Graph, chromatic_number, join, make_graph


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    return make_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def random_tree(rng: random.Random, n: int) -> Graph:
    """Uniform labeled tree via a random Pruefer sequence."""
    if n <= 1:
        return make_graph(n, [])
    return tree_from_pruefer([rng.randrange(n) for _ in range(n - 2)])


def tree_from_pruefer(seq: Sequence[int]) -> Graph:
    n = len(seq) + 2
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    for v in seq:
        leaf = min(u for u in range(n) if degree[u] == 1)
        edges.append((leaf, v))
        degree[leaf] -= 1
        degree[v] -= 1
    u, w = [x for x in range(n) if degree[x] == 1]
    edges.append((u, w))
    return make_graph(n, edges)


def random_lists(rng: random.Random, n: int, symbols: int = 4, max_size: int | None = None) -> list[set[int]]:
    max_size = symbols if max_size is None else max_size
    return [set(rng.sample(range(1, symbols + 1), rng.randint(1, max_size))) for _ in range(n)]


def random_cover(
    rng: random.Random,
    g: Graph,
    sizes: Sequence[int],
    fill: float = 1.0,
) -> Cover:
    """Contiguous-id cover with lists of the given sizes. Each base edge gets
    a random matching; ``fill`` is the chance each maximal-matching pair is kept."""
    lists, start = [], 0
    for s in sizes:
        lists.append(list(range(start, start + s)))
        start += s
    edges = []
    for u, v in g.edges:
        a, b = lists[u][:], lists[v][:]
        rng.shuffle(a)
        rng.shuffle(b)
        edges.extend((x, y) for x, y in zip(a, b) if rng.random() < fill)
    return make_cover(g, lists, edges)


def random_relabeling(rng: random.Random, c: Cover) -> Cover:
    mapping = {}
    for lst in c.lists:
        shuffled = list(lst)
        rng.shuffle(shuffled)
        mapping.update(zip(lst, shuffled))
    return relabel(c, mapping)


@dataclass(frozen=True)
class JoinInstance:
    g: Graph
    a_size: int
    k: int
    base_sizes: tuple[int, ...]
    a_sizes: tuple[int, ...]
    cover: Cover  # cover of J(g, a_size); A occupies the last a_size vertices


def random_sufficient_join_cover(
    rng: random.Random,
    max_n: int = 5,
    max_a: int = 6,
    fill: float = 1.0,
) -> JoinInstance:
    """A random cover of J(G, A) meeting |A| >= 3/2 sigma and |L(a)| >= |A| + k.

    The deficiency budget floor(2|A|/3) is spread randomly over V(G) and
    each base list is sized to realize its share exactly.
    """
    n = rng.randint(1, max_n)
    g = random_graph(rng, n, rng.choice([0.3, 0.5, 0.8]))
    k = chromatic_number(g)
    a_size = rng.randint(0, max_a)
    budget = 2 * a_size // 3
    shares = [0] * n
    for _ in range(rng.randint(0, budget)):
        shares[rng.randrange(n)] += 1
    base_sizes = []
    for v in range(n):
        full = g.degree(v) + a_size + 1
        # a list can shrink to size 1 at most; the realized sigma only drops
        base_sizes.append(max(full - shares[v], 1))
    a_sizes = tuple(a_size + k + rng.randint(0, 1) for _ in range(a_size))
    jg = join(g, a_size)
    cover = random_cover(rng, jg, base_sizes + list(a_sizes), fill)
    return JoinInstance(g, a_size, k, tuple(base_sizes), a_sizes, cover)

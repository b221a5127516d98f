"""Closed-form bounds on Z_DP and the list-size sufficiency condition for
colorability of joins, plus exact Z_DP search on tiny graphs.

``zdp_exact`` stops at the first ``s`` with chi_DP(J(G, s)) = chi(G) + s.
That is safe because equality persists: given a cover of J(G, s+1) with
lists of size chi(G)+s+1, pick any option of the newest dominating vertex
and delete its neighbors; every other list loses at most one element, and
the rest is a cover of J(G, s) with lists of size at least chi(G)+s.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .graph import Graph, chromatic_number, join, min_degree
from .solver import DEFAULT_NODE_CAP, chi_dp


@dataclass(frozen=True)
class BoundsReport:
    n: int
    m: int
    k: int
    delta: int | None
    zdp_upper_basic: int
    zdp_upper_refined: int | None
    zdp_upper_refined_exact: Fraction | None
    notes: str

    def to_dict(self) -> dict:
        return {
            "formula": "zdp_upper",
            "inputs": {"n": self.n, "m": self.m, "k": self.k, "delta": self.delta},
            "zdp_upper_basic": self.zdp_upper_basic,
            "zdp_upper_refined": self.zdp_upper_refined,
            "zdp_upper_refined_exact": None
            if self.zdp_upper_refined_exact is None
            else str(self.zdp_upper_refined_exact),
            "notes": self.notes,
        }


def zdp_upper(g: Graph, k: int | None = None) -> BoundsReport:
    """Upper bounds 3m and, when min degree >= chi - 1, 3m - (3/2)(chi - 1)n.

    The refined value can be a half-integer; it is floored since Z_DP is an
    integer, and the exact fraction is kept alongside.
    """
    if k is None:
        k = chromatic_number(g)
    basic = 3 * g.m
    delta = min_degree(g) if g.n else None
    if delta is not None and delta >= k - 1:
        exact = Fraction(3 * g.m) - Fraction(3, 2) * (k - 1) * g.n
        refined: int | None = math.floor(exact)
        notes = "min degree >= chi - 1: refined bound applies"
    else:
        exact = refined = None
        notes = "basic bound only" if g.n else "empty graph: basic bound only"
    return BoundsReport(g.n, g.m, k, delta, basic, refined, exact, notes)


def zdp_n_bounds(n: int) -> tuple[int | None, int]:
    """Bounds on Z_DP(n): the lower one only for even n >= 6."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    upper = 3 * n * n // 2
    lower = n * n // 4 - n if n % 2 == 0 and n >= 6 else None
    return lower, upper


def chi_equals_chidp_guaranteed(n: int, r: int) -> bool:
    """True iff 2r - n >= 6(n - r)^2, which forces chi_DP = chi for every
    n-vertex graph of chromatic number r."""
    if not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= n, got r={r}, n={n}")
    return 2 * r - n >= 6 * (n - r) ** 2


@dataclass(frozen=True)
class SigmaReport:
    per_vertex: tuple[int, ...]
    total: int
    a_size: int
    a_list_min: int | None
    k: int
    condition_holds: bool
    list_guard: bool

    @property
    def certifies(self) -> bool:
        return self.condition_holds and self.list_guard

    def to_dict(self) -> dict:
        return {
            "formula": "sigma",
            "inputs": {"a_size": self.a_size, "a_list_min": self.a_list_min, "k": self.k},
            "sigma_per_vertex": list(self.per_vertex),
            "sigma": self.total,
            "condition": "2*|A| >= 3*sigma",
            "condition_holds": self.condition_holds,
            "list_guard": "|L(a)| >= |A| + k",
            "list_guard_holds": self.list_guard,
            "certifies_colorable": self.certifies,
        }


def sigma_report(
    g: Graph,
    a_size: int,
    list_sizes: Sequence[int] | Mapping[int, int],
    a_list_min: int | None = None,
    k: int | None = None,
) -> SigmaReport:
    """Per-vertex deficiencies max(deg(v) + |A| - |L(v)| + 1, 0), their sum,
    and whether |A| >= 3/2 * sum together with |L(a)| >= |A| + k holds.

    When both hold, J(G, A) is colorable from any cover with these list sizes.
    ``a_list_min`` is the smallest list on A; it may be omitted when A is empty.
    """
    if k is None:
        k = chromatic_number(g)
    sizes = []
    for v in range(g.n):
        try:
            sizes.append(list_sizes[v])
        except (KeyError, IndexError):
            raise ValueError(f"missing list size for vertex {v}") from None
    per = tuple(max(g.degree(v) + a_size - sizes[v] + 1, 0) for v in range(g.n))
    total = sum(per)
    if a_size == 0:
        guard = True
    elif a_list_min is None:
        raise ValueError("a_list_min is required when A is nonempty")
    else:
        guard = a_list_min >= a_size + k
    return SigmaReport(per, total, a_size, a_list_min, k, 2 * a_size >= 3 * total, guard)


def zdp_exact(
    g: Graph,
    s_max: int,
    *,
    node_cap: int | None = DEFAULT_NODE_CAP,
    max_covers: int | None = None,
    jobs: int = 1,
) -> int | None:
    """Smallest s <= s_max with chi_DP(J(G, s)) = chi(G) + s, or None."""
    chi = chromatic_number(g)
    for s in range(s_max + 1):
        if chi_dp(join(g, s), node_cap=node_cap, max_covers=max_covers, jobs=jobs) == chi + s:
            return s
    return None

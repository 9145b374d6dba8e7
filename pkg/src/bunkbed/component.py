"""Connectedness probability of class representatives, and its bounds."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .counting import Triplet, boundary_count
from .exact import DEFAULT_DP_VERTEX_LIMIT, prob_all_connected_dp
from .graph import CapacityError, SimpleGraph, as_fraction

# Connected labeled graphs on n vertices, n = 0..10 (OEIS A001187).
CONNECTED_LABELED_GRAPHS = (
    1, 1, 1, 4, 38, 728, 26704, 1866256, 251548592, 66296291072, 34496488594816,
)


@dataclass(frozen=True)
class CanonicalClassGraph:
    """Bottom clique on ``x`` vertices, top clique on ``y``, verticals on the first ``z`` columns.

    Bottom vertices are ``0..x-1`` (``u`` is 0); top vertices are ``x..x+y-1``
    and top vertex ``x + j`` sits over bottom vertex ``j`` for ``j < z``.
    """

    triplet: Triplet
    n: int
    graph: SimpleGraph


def _class_graph(x: int, y: int, z: int) -> SimpleGraph:
    edges = [(a, b) for a in range(x) for b in range(a + 1, x)]
    edges += [(x + a, x + b) for a in range(y) for b in range(a + 1, y)]
    edges += [(j, x + j) for j in range(z)]
    return SimpleGraph(x + y, tuple(edges))


def canonical_graph(n: int, t: Triplet) -> CanonicalClassGraph:
    t.check(n)
    return CanonicalClassGraph(t, n, _class_graph(t.x, t.y, t.z))


@lru_cache(maxsize=None)
def _clique_pair_prob(x: int, y: int, z: int, p: Fraction, limit: int) -> Fraction:
    if x + y == 0:
        return Fraction(1)
    if x and y and not z:
        return Fraction(0)
    if x + y > limit:
        raise CapacityError(f"class graph with {x + y} vertices exceeds the DP limit {limit}")
    return prob_all_connected_dp(_class_graph(x, y, z), p, vertex_limit=limit)


def prob_connected_xyz(n: int, t: Triplet, p, vertex_limit: int = DEFAULT_DP_VERTEX_LIMIT) -> Fraction:
    """P(x, y, z): the class representative is connected at constant parameter ``p``."""
    t.check(n)
    return _clique_pair_prob(t.x, t.y, t.z, as_fraction(p), vertex_limit)


def clique_prob(m: int, p, vertex_limit: int = DEFAULT_DP_VERTEX_LIMIT) -> Fraction:
    """P(m, 0, 0) = P(0, m, 0): K_m connected, with K_0 connected by convention."""
    return _clique_pair_prob(m, 0, 0, as_fraction(p), vertex_limit)


def weighted_prob(n: int, t: Triplet, p, vertex_limit: int = DEFAULT_DP_VERTEX_LIMIT) -> Fraction:
    """``(1-p)**B * P`` for class ``t``: probability its representative is exactly the main component."""
    p = as_fraction(p)
    return (1 - p) ** boundary_count(n, t) * prob_connected_xyz(n, t, p, vertex_limit)


def vertical_upper_bound(t: Triplet, p) -> Fraction:
    return 1 - (1 - as_fraction(p)) ** t.z


def product_lower_bound(n: int, t: Triplet, p, vertex_limit: int = DEFAULT_DP_VERTEX_LIMIT) -> Fraction:
    t.check(n)
    p = as_fraction(p)
    return clique_prob(t.x, p, vertex_limit) * clique_prob(t.y, p, vertex_limit) * vertical_upper_bound(t, p)


def kn_lower_bound(n: int, p) -> Fraction:
    """``2 - (1 + (1-p)**(n/2))**n``, with the exponent floored for odd ``n``."""
    if n < 2:
        raise ValueError("n must be at least 2")
    p = as_fraction(p)
    return 2 - (1 + (1 - p) ** (n // 2)) ** n


def connected_fraction_half(n: int) -> Fraction:
    """Fraction of labeled graphs on ``n`` vertices that are connected."""
    return Fraction(CONNECTED_LABELED_GRAPHS[n], 2 ** (n * (n - 1) // 2))


def oeis_connected_check(n: int) -> bool:
    """K_n connectivity at p=1/2 equals the labeled-graph ratio and is at least 1/2."""
    if not 1 <= n <= 10:
        raise ValueError("table covers 1 <= n <= 10")
    exact = clique_prob(n, Fraction(1, 2))
    if exact != connected_fraction_half(n):
        return False
    return n < 2 or exact >= Fraction(1, 2)


def check_lemma_42(n: int, p, t: Triplet, t2: Triplet, vertex_limit: int = DEFAULT_DP_VERTEX_LIMIT) -> bool:
    """More unbalanced class has the larger ``(1-p)**B * P`` (same x+y and z).

    Returns True when the hypothesis does not apply (nothing to check).
    """
    t.check(n)
    t2.check(n)
    if t.x + t.y != t2.x + t2.y or t.z != t2.z:
        raise ValueError("classes must share x+y and z")
    if abs(t.x - t.y) <= abs(t2.x - t2.y):
        return True
    return weighted_prob(n, t, p, vertex_limit) >= weighted_prob(n, t2, p, vertex_limit)


def check_recurrence(n: int, t: Triplet, p, vertex_limit: int = DEFAULT_DP_VERTEX_LIMIT) -> bool:
    """``P(x+1, y, z) >= (1-p)**2 * P(x, y+1, z)`` for ``x > y >= z``."""
    x, y, z = t
    if not x > y >= z:
        raise ValueError("recurrence needs x > y >= z")
    Triplet(x + 1, y, z).check(n)
    Triplet(x, y + 1, z).check(n)
    p = as_fraction(p)
    left = _clique_pair_prob(x + 1, y, z, p, vertex_limit)
    right = _clique_pair_prob(x, y + 1, z, p, vertex_limit)
    return left >= (1 - p) ** 2 * right

"""Exact connection probabilities on small graphs.

Two independent routes:

* a subset dynamic program over vertex sets (``*_dp``), exponential in the
  number of vertices;
* brute-force enumeration of all ``2**|E|`` edge configurations with a
  union-find per configuration (``*_enum``), used as the oracle.

All arithmetic is done on integers.  Every probability is first put over a
common denominator ``D`` so that ``p_e = a_e / D``; a probability involving
``k`` edges then has numerator in the integers and denominator ``D**k``.
Only the final result is turned into a ``Fraction``.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from typing import Callable, Sequence

from .graph import CapacityError, Configuration, coerce_probabilities

DEFAULT_DP_VERTEX_LIMIT = 20
DEFAULT_ENUM_EDGE_LIMIT = 25


class _Homogenized:
    """Integer edge weights and per-subset edge bookkeeping for one graph."""

    def __init__(self, graph, p, vertex_limit=DEFAULT_DP_VERTEX_LIMIT):
        V = graph.n_vertices
        if V > vertex_limit:
            raise CapacityError(
                f"{V} vertices exceeds the subset-DP limit of {vertex_limit}; "
                "use the Monte Carlo estimator for graphs this large"
            )
        vec = coerce_probabilities(graph, p)
        D = 1
        for v in vec.values:
            D = math.lcm(D, v.denominator)
        self.V = V
        self.D = D
        self.n_edges = len(graph.edges)
        self.open_w = [int(v * D) for v in vec.values]
        self.closed_w = [D - w for w in self.open_w]
        self.Dpow = [D**k for k in range(self.n_edges + 1)]

        nbrs = [[] for _ in range(V)]
        for e, (a, b) in enumerate(graph.edges):
            nbrs[a].append((b, e))
            nbrs[b].append((a, e))

        size = 1 << V
        e_in = [0] * size
        q_nz = [1] * size
        q_zero = [0] * size
        for mask in range(1, size):
            low = mask & -mask
            v = low.bit_length() - 1
            prev = mask ^ low
            cnt, prod, zeros = e_in[prev], q_nz[prev], q_zero[prev]
            for w, e in nbrs[v]:
                if prev >> w & 1:
                    cnt += 1
                    q = self.closed_w[e]
                    if q:
                        prod *= q
                    else:
                        zeros += 1
            e_in[mask], q_nz[mask], q_zero[mask] = cnt, prod, zeros
        self.e_in, self.q_nz, self.q_zero = e_in, q_nz, q_zero

        uniform = set(self.closed_w)
        self.q_const = uniform.pop() if len(uniform) == 1 else None
        if self.q_const is not None:
            self.qpow = [self.q_const**k for k in range(self.n_edges + 1)]

    def cut(self, s: int, r: int) -> int:
        """Product of closed weights over edges between disjoint masks s and r."""
        u = s | r
        if self.q_const is not None:
            return self.qpow[self.e_in[u] - self.e_in[s] - self.e_in[r]]
        if self.q_zero[u] - self.q_zero[s] - self.q_zero[r]:
            return 0
        return self.q_nz[u] // (self.q_nz[s] * self.q_nz[r])

    def conn_table(self, root: int) -> list[int]:
        """``c[S] = P(G[S] connected) * D**e(S)`` for every mask S holding root.

        The recursion peels off the component of ``root`` inside ``S``; root is
        the anchor playing the role of the lowest-indexed vertex.
        """
        rb = 1 << root
        size = 1 << self.V
        c = [0] * size
        e_in, Dpow, cut = self.e_in, self.Dpow, self.cut
        for S in range(rb, size):
            if not S & rb:
                continue
            rest = S ^ rb
            if not rest:
                c[S] = 1
                continue
            total = 0
            sub = (rest - 1) & rest
            while True:
                T = sub | rb
                R = rest ^ sub
                cT = c[T]
                if cT:
                    total += cT * cut(T, R) * Dpow[e_in[R]]
                if not sub:
                    break
                sub = (sub - 1) & rest
            c[S] = Dpow[e_in[S]] - total
        return c

    def component_numerators(self, root: int) -> dict[int, int]:
        """Numerators over ``D**|E|`` of P(main component of root == S)."""
        c = self.conn_table(root)
        full = (1 << self.V) - 1
        rb = 1 << root
        out = {}
        for S in range(rb, full + 1):
            if S & rb:
                R = full ^ S
                out[S] = c[S] * self.cut(S, R) * self.Dpow[self.e_in[R]]
        return out


def _check_vertex(graph, v):
    if not 0 <= v < graph.n_vertices:
        raise IndexError(f"vertex {v} out of range")


def prob_connected_dp(graph, p, a: int, b: int, vertex_limit: int = DEFAULT_DP_VERTEX_LIMIT) -> Fraction:
    """P(a <-> b) by the subset dynamic program."""
    _check_vertex(graph, a)
    _check_vertex(graph, b)
    h = _Homogenized(graph, p, vertex_limit)
    if a == b:
        return Fraction(1)
    bb = 1 << b
    num = sum(v for S, v in h.component_numerators(a).items() if S & bb)
    return Fraction(num, h.Dpow[h.n_edges])


def prob_all_connected_dp(graph, p, vertex_limit: int = DEFAULT_DP_VERTEX_LIMIT) -> Fraction:
    """Probability that the whole graph is connected (1 for an empty graph)."""
    if graph.n_vertices == 0:
        return Fraction(1)
    h = _Homogenized(graph, p, vertex_limit)
    full = (1 << h.V) - 1
    c = h.conn_table(0)
    return Fraction(c[full], h.Dpow[h.e_in[full]])


def prob_both_connected_dp(
    graph, p, pair1: tuple[int, int], pair2: tuple[int, int], vertex_limit: int = DEFAULT_DP_VERTEX_LIMIT
) -> Fraction:
    """P(a <-> a2 and b <-> b2) by conditioning on the main component of a.

    Given the component of ``a`` is exactly ``S``, edges inside the rest of the
    graph are untouched, so the second connection is a two-terminal problem on
    the induced subgraph ``G[V \\ S]``.
    """
    a, a2 = pair1
    b, b2 = pair2
    for v in (a, a2, b, b2):
        _check_vertex(graph, v)
    h = _Homogenized(graph, p, vertex_limit)
    full = (1 << h.V) - 1
    A2, B, B2 = 1 << a2, 1 << b, 1 << b2
    ca = h.conn_table(a)
    cb = h.conn_table(b) if a != b else ca
    rest_cache: dict[int, int] = {}

    def second(R: int) -> int:
        # P_{G[R]}(b <-> b2) * D**e(R)
        if R in rest_cache:
            return rest_cache[R]
        free = R ^ B ^ (B2 if b2 != b else 0)
        base = B | B2
        total = 0
        sub = free
        while True:
            T = base | sub
            U = R ^ T
            total += cb[T] * h.cut(T, U) * h.Dpow[h.e_in[U]]
            if not sub:
                break
            sub = (sub - 1) & free
        rest_cache[R] = total
        return total

    num = 0
    rb = 1 << a
    for S in range(rb, full + 1):
        if not S & rb or not S & A2:
            continue
        R = full ^ S
        in_b, in_b2 = bool(S & B), bool(S & B2)
        if in_b and in_b2:
            num += ca[S] * h.cut(S, R) * h.Dpow[h.e_in[R]]
        elif not in_b and not in_b2:
            num += ca[S] * h.cut(S, R) * second(R)
    return Fraction(num, h.Dpow[h.n_edges])


@dataclass(frozen=True)
class ComponentDistribution:
    source: int
    entries: dict[frozenset, Fraction]

    def total(self) -> Fraction:
        return sum(self.entries.values(), Fraction(0))

    def prob_contains(self, b: int) -> Fraction:
        return sum((q for S, q in self.entries.items() if b in S), Fraction(0))


def _mask_to_set(mask: int) -> frozenset:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


def main_component_distribution(graph, p, a: int, vertex_limit: int = DEFAULT_DP_VERTEX_LIMIT) -> ComponentDistribution:
    """Law of the set of vertices joined to ``a``; one entry per subset holding ``a``."""
    _check_vertex(graph, a)
    h = _Homogenized(graph, p, vertex_limit)
    den = h.Dpow[h.n_edges]
    entries = {_mask_to_set(S): Fraction(v, den) for S, v in h.component_numerators(a).items()}
    return ComponentDistribution(a, entries)


# -- enumeration oracle -------------------------------------------------------


def components(n_vertices: int, edges: Sequence[tuple[int, int]], open_mask: int) -> list[int]:
    """Union-find root label of every vertex under the open edges of ``open_mask``."""
    parent = list(range(n_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    e = 0
    m = open_mask
    while m:
        if m & 1:
            a, b = edges[e]
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        m >>= 1
        e += 1
    return [find(v) for v in range(n_vertices)]


class Realization:
    """A configuration on a specific graph, with lazy cluster labels."""

    __slots__ = ("graph", "config", "_labels")

    def __init__(self, graph, config: Configuration):
        self.graph = graph
        self.config = config
        self._labels = None

    @property
    def open_mask(self) -> int:
        return self.config.open_mask

    def is_open(self, e: int) -> bool:
        return self.config.is_open(e)

    @property
    def labels(self) -> list[int]:
        if self._labels is None:
            self._labels = components(self.graph.n_vertices, self.graph.edges, self.config.open_mask)
        return self._labels

    def connected(self, a: int, b: int) -> bool:
        return a == b or self.labels[a] == self.labels[b]


def _weight_tables(vec, n_edges):
    D = 1
    for v in vec.values:
        D = math.lcm(D, v.denominator)
    ow = [int(v * D) for v in vec.values]
    cw = [D - w for w in ow]
    half = n_edges // 2

    def table(lo, hi):
        t = [1]
        for e in range(lo, hi):
            t = [x * cw[e] for x in t] + [x * ow[e] for x in t]
        return t

    return D, half, table(0, half), table(half, n_edges)


def _enum_chunk(graph, p, predicate, start, stop):
    vec = coerce_probabilities(graph, p)
    E = len(graph.edges)
    _, half, lo_t, hi_t = _weight_tables(vec, E)
    lo_mask = (1 << half) - 1
    total = 0
    for mask in range(start, stop):
        w = lo_t[mask & lo_mask] * hi_t[mask >> half]
        if w and predicate(Realization(graph, Configuration(E, mask))):
            total += w
    return total


def _check_enum_capacity(graph, edge_limit):
    if len(graph.edges) > edge_limit:
        raise CapacityError(
            f"{len(graph.edges)} edges exceeds the enumeration limit of {edge_limit} "
            f"(2**{len(graph.edges)} configurations)"
        )


def prob_event_enum(
    graph,
    p,
    predicate: Callable[[Realization], bool],
    edge_limit: int = DEFAULT_ENUM_EDGE_LIMIT,
    workers: int = 1,
) -> Fraction:
    """Exact probability of an event by summing over every configuration.

    With ``workers > 1`` the predicate must be picklable (a module-level
    function or a ``functools.partial`` of one).
    """
    _check_enum_capacity(graph, edge_limit)
    vec = coerce_probabilities(graph, p)
    E = len(graph.edges)
    D = 1
    for v in vec.values:
        D = math.lcm(D, v.denominator)
    n_conf = 1 << E
    if workers <= 1 or n_conf < 4096:
        num = _enum_chunk(graph, vec, predicate, 0, n_conf)
    else:
        n_chunks = 4 * workers
        bounds = [n_conf * i // n_chunks for i in range(n_chunks + 1)]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = ex.map(
                _enum_chunk,
                [graph] * n_chunks,
                [vec] * n_chunks,
                [predicate] * n_chunks,
                bounds[:-1],
                bounds[1:],
            )
            num = sum(parts)
    return Fraction(num, D**E)


def _connects(a, b, r: Realization) -> bool:
    return r.connected(a, b)


def prob_connected_enum(
    graph, p, a: int, b: int, edge_limit: int = DEFAULT_ENUM_EDGE_LIMIT, workers: int = 1
) -> Fraction:
    _check_vertex(graph, a)
    _check_vertex(graph, b)
    return prob_event_enum(graph, p, partial(_connects, a, b), edge_limit, workers)

"""Averaged inequality, the two-pair upper bound, and the ladder (path) closed form."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .exact import (
    DEFAULT_DP_VERTEX_LIMIT,
    DEFAULT_ENUM_EDGE_LIMIT,
    _weight_tables,
    components,
    main_component_distribution,
    prob_both_connected_dp,
    prob_connected_dp,
    prob_connected_enum,
    prob_event_enum,
)
from .graph import (
    BunkbedGraph,
    Configuration,
    EdgeProbabilityVector,
    as_fraction,
    build_bunkbed,
    coerce_probabilities,
    path_graph,
    validate_constrained,
)


class IdentityViolation(ArithmeticError):
    """Two exact routes to the same quantity disagree."""


@dataclass(frozen=True)
class BottomDistribution:
    """Law of a random bottom vertex, indexed by column."""

    weights: tuple[Fraction, ...]

    def __post_init__(self):
        w = tuple(as_fraction(x) for x in self.weights)
        if any(x < 0 for x in w):
            raise ValueError("negative mass in distribution")
        if sum(w, Fraction(0)) != 1:
            raise ValueError("distribution does not sum to 1")
        object.__setattr__(self, "weights", w)

    @classmethod
    def uniform(cls, n: int) -> "BottomDistribution":
        return cls((Fraction(1, n),) * n)

    @classmethod
    def point(cls, n: int, column: int) -> "BottomDistribution":
        return cls(tuple(Fraction(int(c == column)) for c in range(n)))

    @classmethod
    def from_mapping(cls, n: int, masses: Mapping[int, Fraction]) -> "BottomDistribution":
        return cls(tuple(as_fraction(masses.get(c, 0)) for c in range(n)))


@dataclass(frozen=True)
class ClusterSlices:
    """Per cluster: the columns it meets on the bottom level and on the top level."""

    bottom: tuple[frozenset, ...]
    top: tuple[frozenset, ...]


def cluster_slices(g: BunkbedGraph, config: Configuration) -> ClusterSlices:
    labels = components(g.n_vertices, g.edges, config.open_mask)
    groups: dict[int, tuple[set, set]] = {}
    for v, lab in enumerate(labels):
        bottom, top = groups.setdefault(lab, (set(), set()))
        (bottom if g.level(v) == 0 else top).add(g.column(v))
    keys = sorted(groups)
    return ClusterSlices(
        tuple(frozenset(groups[k][0]) for k in keys),
        tuple(frozenset(groups[k][1]) for k in keys),
    )


def _check_distribution(g: BunkbedGraph, d: BottomDistribution):
    if len(d.weights) != g.n_columns:
        raise ValueError(f"distribution has {len(d.weights)} columns, graph has {g.n_columns}")


def _identity_both_sides(g: BunkbedGraph, labels: list[int], d: BottomDistribution) -> tuple[Fraction, Fraction]:
    n = g.n_columns
    w = d.weights
    lhs = Fraction(0)
    for x in range(n):
        if not w[x]:
            continue
        for y in range(n):
            if not w[y]:
                continue
            s = (
                (labels[x] == labels[y])
                + (labels[x + n] == labels[y + n])
                - (labels[x] == labels[y + n])
                - (labels[x + n] == labels[y])
            )
            if s:
                lhs += w[x] * w[y] * s
    slices: dict[int, Fraction] = {}
    for v, lab in enumerate(labels):
        mass = w[v % n]
        slices[lab] = slices.get(lab, Fraction(0)) + (mass if v < n else -mass)
    rhs = sum((m * m for m in slices.values()), Fraction(0))
    return lhs, rhs


def mean_identity_check(g: BunkbedGraph, config: Configuration, d: BottomDistribution) -> Fraction:
    """Per-configuration gap between same-level and cross-level connection, under ``d``.

    Returns ``E[1{X<->Y} + 1{X'<->Y'}] - E[1{X<->Y'} + 1{X'<->Y}]`` after
    confirming it equals the sum over clusters of squared slice-mass gaps.
    """
    _check_distribution(g, d)
    if config.n_edges != g.n_edges:
        raise ValueError("configuration width does not match the graph")
    labels = components(g.n_vertices, g.edges, config.open_mask)
    lhs, rhs = _identity_both_sides(g, labels, d)
    if lhs != rhs:
        raise IdentityViolation(f"cluster identity fails: {lhs} != {rhs}")
    return lhs


@dataclass(frozen=True)
class MeanInequality:
    by_engine: Fraction  # E[P(X<->Y)] - E[P(X<->Y')] from the subset DP
    by_clusters: Fraction  # half the configuration average of the cluster identity

    @property
    def passed(self) -> bool:
        return self.by_engine == self.by_clusters and self.by_engine >= 0


def identity_table(g: BunkbedGraph, d: BottomDistribution, edge_limit: int = DEFAULT_ENUM_EDGE_LIMIT) -> list[Fraction]:
    """Cluster identity value for every configuration mask (checked both ways)."""
    _check_distribution(g, d)
    if g.n_edges > edge_limit:
        raise ValueError(f"{g.n_edges} edges exceeds the enumeration limit {edge_limit}")
    out = []
    for mask in range(1 << g.n_edges):
        labels = components(g.n_vertices, g.edges, mask)
        lhs, rhs = _identity_both_sides(g, labels, d)
        if lhs != rhs:
            raise IdentityViolation(f"cluster identity fails at mask {mask:#x}: {lhs} != {rhs}")
        out.append(lhs)
    return out


def mean_inequality_values(
    g: BunkbedGraph, p: EdgeProbabilityVector, d: BottomDistribution, table: list[Fraction] | None = None
) -> MeanInequality:
    vec = coerce_probabilities(g, p)
    if not validate_constrained(g, vec):
        raise ValueError("averaged inequality needs a constrained parameter vector")
    _check_distribution(g, d)
    n = g.n_columns
    w = d.weights

    by_engine = Fraction(0)
    for x in range(n):
        if not w[x]:
            continue
        dist = main_component_distribution(g, vec, x)
        for y in range(n):
            if w[y]:
                by_engine += w[x] * w[y] * (dist.prob_contains(y) - dist.prob_contains(y + n))

    if table is None:
        table = identity_table(g, d)
    D, half, lo_t, hi_t = _weight_tables(vec, g.n_edges)
    lo_mask = (1 << half) - 1
    acc = Fraction(0)
    for mask, val in enumerate(table):
        if val:
            acc += val * (lo_t[mask & lo_mask] * hi_t[mask >> half])
    by_clusters = acc / (2 * D**g.n_edges)
    return MeanInequality(by_engine, by_clusters)


def mean_inequality_check(g: BunkbedGraph, p: EdgeProbabilityVector, d: BottomDistribution) -> bool:
    return mean_inequality_values(g, p, d).passed


@dataclass(frozen=True)
class UpperBoundReport:
    difference: Fraction
    both_disconnected: Fraction  # P(u !<-> u' and v !<-> v')
    u_disconnected: Fraction  # P(u !<-> u')
    kn_bound: Fraction | None  # (1-p)(1-p^3)^(n-1) when applicable

    @property
    def passed(self) -> bool:
        ok = abs(self.difference) <= self.both_disconnected <= self.u_disconnected
        if self.kn_bound is not None:
            ok = ok and self.u_disconnected <= self.kn_bound
        return ok


def kn_disconnection_bound(n: int, p) -> Fraction:
    p = as_fraction(p)
    return (1 - p) * (1 - p**3) ** (n - 1)


def _both_disconnected_event(u, up, v, vp, r):
    return not r.connected(u, up) and not r.connected(v, vp)


def upper_bound_report(
    g: BunkbedGraph, p, u: int, v: int, method: str = "dp", vertex_limit: int = DEFAULT_DP_VERTEX_LIMIT
) -> UpperBoundReport:
    """Both sides of the two-pair bound for bottom vertices ``u`` and ``v``."""
    vec = coerce_probabilities(g, p)
    if g.level(u) or g.level(v):
        raise ValueError("u and v must be bottom vertices")
    up, vp = g.symmetric_vertex(u), g.symmetric_vertex(v)
    if method == "dp":
        to_v = prob_connected_dp(g, vec, u, v, vertex_limit)
        to_vp = prob_connected_dp(g, vec, u, vp, vertex_limit)
        uu = prob_connected_dp(g, vec, u, up, vertex_limit)
        vv = prob_connected_dp(g, vec, v, vp, vertex_limit)
        both = prob_both_connected_dp(g, vec, (u, up), (v, vp), vertex_limit)
        both_disc = 1 - uu - vv + both
    elif method == "enum":
        to_v = prob_connected_enum(g, vec, u, v)
        to_vp = prob_connected_enum(g, vec, u, vp)
        uu = prob_connected_enum(g, vec, u, up)
        both_disc = prob_event_enum(g, vec, lambda r: _both_disconnected_event(u, up, v, vp, r))
    else:
        raise ValueError(f"unknown method {method!r}")

    kn = None
    n = g.n_columns
    constant = len(set(vec.values)) == 1
    if constant and len(g.original.edges) == n * (n - 1) // 2:
        kn = kn_disconnection_bound(n, vec.values[0])
    return UpperBoundReport(to_v - to_vp, both_disc, 1 - uu, kn)


def upper_bound_check(g: BunkbedGraph, p, u: int, v: int, method: str = "dp") -> bool:
    return upper_bound_report(g, p, u, v, method).passed


SEGMENT_NOTE = (
    "closed form uses all n vertical closure factors; the printed product runs over "
    "n-1 vertical factors, which disagrees with enumeration whenever the last vertical "
    "edge has positive probability"
)


@dataclass(frozen=True)
class SegmentReport:
    n: int
    closed_form: Fraction
    printed_form: Fraction  # the n-1 vertical-factor product
    engine_difference: Fraction | None
    note: str = SEGMENT_NOTE

    @property
    def closed_form_matches(self) -> bool:
        return self.engine_difference is not None and self.closed_form == self.engine_difference

    @property
    def printed_form_matches(self) -> bool:
        return self.engine_difference is not None and self.printed_form == self.engine_difference


def _segment_parts(n, vec, g):
    m = n - 1
    bottom = [vec[e] for e in range(m)]
    vertical = [vec[g.vertical_edge(c)] for c in range(n)]
    closed_form = math.prod((1 - q for q in vertical), start=Fraction(1)) * math.prod(bottom, start=Fraction(1))
    printed = math.prod(((1 - vertical[i]) * bottom[i] for i in range(m)), start=Fraction(1))
    return closed_form, printed


def segment_report(n: int, p, verify: bool | None = None) -> SegmentReport:
    """Ladder of length ``n``: ``u`` = bottom left end, ``v`` = bottom right end.

    ``verify`` defaults to enumeration for ``n <= 6`` and the subset DP above.
    """
    if n < 1:
        raise ValueError("path needs at least one vertex")
    g = build_bunkbed(path_graph(n))
    vec = coerce_probabilities(g, p)
    if not validate_constrained(g, vec):
        raise ValueError("ladder identity needs a constrained parameter vector")
    closed_form, printed = _segment_parts(n, vec, g)
    engine = None
    if verify is None or verify:
        u, v = 0, n - 1
        if n <= 6:
            engine = prob_connected_enum(g, vec, u, v) - prob_connected_enum(g, vec, u, v + n)
        else:
            engine = prob_connected_dp(g, vec, u, v) - prob_connected_dp(g, vec, u, v + n)
    return SegmentReport(n, closed_form, printed, engine)


def segment_difference(n: int, p, verify: bool = True) -> Fraction:
    """P(u <-> v) - P(u <-> v') on the ladder: every vertical closed, bottom path open."""
    rep = segment_report(n, p, verify)
    if verify and not rep.closed_form_matches:
        raise IdentityViolation(f"ladder closed form {rep.closed_form} != engine {rep.engine_difference}")
    return rep.closed_form


def small_p_differences(g: BunkbedGraph, u: int, v: int, ps) -> list[tuple[Fraction, Fraction]]:
    """Exact ``P(u<->v) - P(u<->v')`` at each constant ``p``."""
    out = []
    vp = g.symmetric_vertex(v)
    for p in ps:
        p = as_fraction(p)
        dist = main_component_distribution(g, p, u)
        out.append((p, dist.prob_contains(v) - dist.prob_contains(vp)))
    return out

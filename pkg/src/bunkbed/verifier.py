"""Rebuild P(u <-> v) and P(u <-> v') on the K_n bunkbed class by class.

``u`` and ``v`` are bottom columns 0 and 1 (any pair is equivalent on K_n).
Every value here is an exact ``Fraction``.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .component import prob_connected_xyz, weighted_prob
from .counting import (
    Triplet,
    boundary_count,
    cdiff_sign,
    count_c1,
    count_c2,
    count_cdiff,
    count_cdiff_from_counts,
    count_total,
    find_i0,
    valid_triplets,
)
from .exact import DEFAULT_DP_VERTEX_LIMIT, main_component_distribution
from .graph import as_fraction, build_bunkbed, complete_graph

CSV_FIELDS = ("n", "p_num", "p_den", "x", "y", "z", "C1", "C2", "P_num", "P_den", "B", "term_num", "term_den")

HALF = Fraction(1, 2)

LEMMA_ANCHOR_NOTE = (
    "first displayed inequality of the i < i0 branch is printed with (1-p) instead of "
    "(1-p)^B; the (1-p)^B reading is the one checked, the literal reading is counted separately"
)
I0_NOTE = "i0 is computed per (k, z, eps) cell, not per n"


@dataclass(frozen=True)
class TripletRow:
    t: Triplet
    c1: int
    c2: int
    P: Fraction
    B: int
    weight: Fraction  # (1-p)^B * P

    def contribution(self, target: str) -> Fraction:
        c = self.c1 if target == "v" else self.c2
        return c * self.weight

    @property
    def difference_term(self) -> Fraction:
        return (self.c1 - self.c2) * self.weight


@dataclass
class DecompositionReport:
    n: int
    p: Fraction
    target: str
    lhs_direct: Fraction
    lhs_decomposed: Fraction
    rows: list[TripletRow]
    difference: Fraction  # P(u<->v) - P(u<->v'), via the regrouped sum
    difference_plain: Fraction  # same, from the two decomposed sums
    zero_z_clean: bool  # C2 * P vanishes on every z = 0 class

    @property
    def ok(self) -> bool:
        return self.lhs_direct == self.lhs_decomposed and self.difference == self.difference_plain and self.zero_z_clean

    def csv_rows(self) -> list[dict]:
        out = []
        for r in self.rows:
            term = r.difference_term
            out.append(
                dict(
                    n=self.n,
                    p_num=self.p.numerator,
                    p_den=self.p.denominator,
                    x=r.t.x,
                    y=r.t.y,
                    z=r.t.z,
                    C1=r.c1,
                    C2=r.c2,
                    P_num=r.P.numerator,
                    P_den=r.P.denominator,
                    B=r.B,
                    term_num=term.numerator,
                    term_den=term.denominator,
                )
            )
        return out


def regrouped_cells(n: int):
    """Yield ``(z, k, i, eps, x, y)`` for every class with ``x >= y``, in proof order."""
    for z in range(n + 1):
        for k in range(0, n + 1):
            for i in range(0, k + 1):
                for eps in (0, 1):
                    x, y = k + i + eps, k - i
                    if y < z or x < 1 or x + y - z > n:
                        continue
                    yield z, k, i, eps, x, y


def _row(n, t, p, vertex_limit):
    P = prob_connected_xyz(n, t, p, vertex_limit)
    B = boundary_count(n, t)
    return TripletRow(t, count_c1(n, t), count_c2(n, t), P, B, (1 - p) ** B * P)


def direct_probabilities(n: int, p, vertex_limit: int = DEFAULT_DP_VERTEX_LIMIT) -> tuple[Fraction, Fraction]:
    """Engine values ``(P(u<->v), P(u<->v'))`` on the K_n bunkbed."""
    g = build_bunkbed(complete_graph(n))
    dist = main_component_distribution(g, as_fraction(p), 0, vertex_limit)
    return dist.prob_contains(1), dist.prob_contains(n + 1)


def decompose(n: int, p, target: str = "v", vertex_limit: int = DEFAULT_DP_VERTEX_LIMIT) -> DecompositionReport:
    if n < 2:
        raise ValueError("need n >= 2 so that v differs from u")
    if target not in ("v", "v'"):
        raise ValueError("target is 'v' or \"v'\"")
    p = as_fraction(p)
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    to_v, to_vp = direct_probabilities(n, p, vertex_limit)

    rows: list[TripletRow] = []
    cache: dict[Triplet, TripletRow] = {}

    def row(t):
        if t not in cache:
            cache[t] = _row(n, t, p, vertex_limit)
        return cache[t]

    regrouped = Fraction(0)
    for z, k, i, eps, x, y in regrouped_cells(n):
        t = Triplet(x, y, z)
        r = row(t)
        rows.append(r)
        mirror = t.swapped()
        if x != y and mirror.is_valid(n):
            rows.append(row(mirror))
        cdiff = count_cdiff(n, k, i, eps, z) if z >= 1 else count_cdiff_from_counts(n, x, y, z)
        regrouped += cdiff * r.weight

    dec_v = sum((r.contribution("v") for r in rows), Fraction(0))
    dec_vp = sum((r.contribution("v'") for r in rows), Fraction(0))
    zero_z_clean = all(r.c2 * r.P == 0 for r in rows if r.t.z == 0)
    return DecompositionReport(
        n=n,
        p=p,
        target=target,
        lhs_direct=to_v if target == "v" else to_vp,
        lhs_decomposed=dec_v if target == "v" else dec_vp,
        rows=rows,
        difference=regrouped,
        difference_plain=dec_v - dec_vp,
        zero_z_clean=zero_z_clean,
    )


@dataclass
class TheoremPoint:
    p: Fraction
    prob_v: Fraction
    prob_vp: Fraction
    difference: Fraction
    decomposition_ok: bool
    partition_ok: bool

    @property
    def passed(self) -> bool:
        sign_ok = self.difference >= 0 if self.p >= HALF else True
        return sign_ok and self.decomposition_ok and self.partition_ok


@dataclass
class TheoremCheck:
    n: int
    points: list[TheoremPoint]
    rows: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(pt.passed for pt in self.points)

    def counterexamples(self) -> list[TheoremPoint]:
        return [pt for pt in self.points if not pt.passed]


def _theorem_point(n, p, vertex_limit):
    rep_v = decompose(n, p, "v", vertex_limit)
    rep_vp = decompose(n, p, "v'", vertex_limit)
    pt = TheoremPoint(
        p=rep_v.p,
        prob_v=rep_v.lhs_direct,
        prob_vp=rep_vp.lhs_direct,
        difference=rep_v.lhs_direct - rep_vp.lhs_direct,
        decomposition_ok=rep_v.ok and rep_vp.ok and rep_v.difference == rep_v.lhs_direct - rep_vp.lhs_direct,
        partition_ok=partition_check(n, p, vertex_limit),
    )
    return pt, rep_v.csv_rows()


def theorem_check(n: int, p_list, workers: int = 1, vertex_limit: int = DEFAULT_DP_VERTEX_LIMIT) -> TheoremCheck:
    """Exact difference at each ``p``; only ``p >= 1/2`` is required to be non-negative."""
    ps = [as_fraction(p) for p in p_list]
    if workers > 1 and len(ps) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_theorem_point, [n] * len(ps), ps, [vertex_limit] * len(ps)))
    else:
        results = [_theorem_point(n, p, vertex_limit) for p in ps]
    check = TheoremCheck(n, [pt for pt, _ in results])
    for _, rows in results:
        check.rows.extend(rows)
    return check


def partition_sum(n: int, p, vertex_limit: int = DEFAULT_DP_VERTEX_LIMIT) -> Fraction:
    p = as_fraction(p)
    return sum(
        (count_total(n, t) * weighted_prob(n, t, p, vertex_limit) for t in valid_triplets(n)),
        Fraction(0),
    )


def partition_check(n: int, p, vertex_limit: int = DEFAULT_DP_VERTEX_LIMIT) -> bool:
    """The main component of ``u`` falls in exactly one class."""
    return partition_sum(n, p, vertex_limit) == 1


@dataclass
class Lemma32Report:
    n: int
    p: Fraction
    cells: int = 0
    comparisons: int = 0
    violations: list[dict] = field(default_factory=list)
    literal_reading_failures: int = 0
    notes: tuple[str, ...] = (LEMMA_ANCHOR_NOTE, I0_NOTE)

    @property
    def passed(self) -> bool:
        return not self.violations


def lemma32_check(
    n: int, p, allow_below_half: bool = False, vertex_limit: int = DEFAULT_DP_VERTEX_LIMIT
) -> Lemma32Report:
    """Sign pattern and anchor comparisons for every ``(k, z >= 1, eps)`` cell."""
    p = as_fraction(p)
    if p < HALF and not allow_below_half:
        raise ValueError("the comparison lemma is stated for p >= 1/2")
    rep = Lemma32Report(n, p)
    for z in range(1, n + 1):
        for eps in (0, 1):
            for k in range(z, n + 1):
                if 2 * k + eps - z > n:
                    continue
                rep.cells += 1
                i0 = find_i0(k, eps, z)
                anchor_t = Triplet(k + i0 + eps, k - i0, z)
                anchor = weighted_prob(n, anchor_t, p, vertex_limit)
                literal_anchor = (1 - p) * prob_connected_xyz(n, anchor_t, p, vertex_limit)
                cell_sum = Fraction(0)
                for i in range(k - z + 1):
                    t = Triplet(k + i + eps, k - i, z)
                    sign = cdiff_sign(n, k, i, eps, z)
                    cd = count_cdiff(n, k, i, eps, z)
                    w = weighted_prob(n, t, p, vertex_limit)
                    cell_sum += cd * w
                    rep.comparisons += 1
                    problems = []
                    if sign != (cd > 0) - (cd < 0):
                        problems.append("sign formula disagrees with count")
                    if i < i0:
                        if sign >= 0:
                            problems.append("C_diff not negative below i0")
                        if w > anchor:
                            problems.append("weight above anchor below i0")
                        if w > literal_anchor:
                            rep.literal_reading_failures += 1
                    else:
                        if sign < 0:
                            problems.append("C_diff negative at or above i0")
                        if w < anchor:
                            problems.append("weight below anchor at or above i0")
                    if problems:
                        rep.violations.append(dict(k=k, i=i, eps=eps, z=z, i0=i0, problems=problems))
                if cell_sum < 0:
                    rep.violations.append(dict(k=k, eps=eps, z=z, i0=i0, problems=["negative cell sum"]))
    return rep


def bunkbed_difference(n: int, p, vertex_limit: int = DEFAULT_DP_VERTEX_LIMIT) -> Fraction:
    to_v, to_vp = direct_probabilities(n, p, vertex_limit)
    return to_v - to_vp


@dataclass
class ThresholdResult:
    n: int
    step: Fraction
    lemma_threshold: Fraction | None
    difference_threshold: Fraction | None
    table: list[tuple[Fraction, bool, Fraction]]  # (p, lemma passes, difference)


def _suffix_threshold(grid, flags):
    best = None
    for p, ok in sorted(zip(grid, flags), reverse=True):
        if not ok:
            break
        best = p
    return best


def threshold_search(n: int, grid_step, vertex_limit: int = DEFAULT_DP_VERTEX_LIMIT) -> ThresholdResult:
    """Smallest grid ``p`` from which the comparison lemma (resp. the theorem) holds up to 1.

    Exploratory: the answer depends on ``n`` and on the grid.
    """
    step = as_fraction(grid_step)
    if not 0 < step <= 1:
        raise ValueError("grid step must lie in (0, 1]")
    grid = []
    p = Fraction(0)
    while p <= 1:
        grid.append(p)
        p += step
    table = []
    for p in grid:
        lemma_ok = lemma32_check(n, p, allow_below_half=True, vertex_limit=vertex_limit).passed
        table.append((p, lemma_ok, bunkbed_difference(n, p, vertex_limit)))
    return ThresholdResult(
        n=n,
        step=step,
        lemma_threshold=_suffix_threshold(grid, [ok for _, ok, _ in table]),
        difference_threshold=_suffix_threshold(grid, [d >= 0 for _, _, d in table]),
        table=table,
    )

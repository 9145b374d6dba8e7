"""Exact class counts on the bunkbed of K_n.

A class ``(x, y, z)`` is the set of vertex subsets of the K_n bunkbed that
contain the fixed bottom vertex ``u`` and have ``x`` bottom vertices, ``y``
top vertices, and ``z`` columns present on both levels.  ``v`` is a second
fixed bottom vertex and ``v'`` its mirror.

Factorials of negative arguments make a term vanish.  That is how the
indicator factors of the closed forms are honoured here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True, order=True)
class Triplet:
    x: int
    y: int
    z: int

    def is_valid(self, n: int) -> bool:
        x, y, z = self.x, self.y, self.z
        return x >= 1 and y >= 0 and z >= 0 and z <= min(x, y) and x + y - z <= n

    def check(self, n: int) -> "Triplet":
        if not self.is_valid(n):
            raise ValueError(f"invalid class {tuple(self)} for n={n}")
        return self

    def __iter__(self):
        return iter((self.x, self.y, self.z))

    def swapped(self) -> "Triplet":
        return Triplet(self.y, self.x, self.z)


def valid_triplets(n: int):
    """Every valid class for the K_n bunkbed, z outermost."""
    for z in range(n + 1):
        for x in range(max(1, z), n + 1):
            for y in range(z, n - x + z + 1):
                yield Triplet(x, y, z)


def _inv_fact_or_zero(k: int):
    return None if k < 0 else math.factorial(k)


def _closed_form(n: int, x: int, y: int, z: int, numerator: int) -> int:
    """``(n-2)! * numerator / ((x-z)! z! (n-x-y+z)! (y-z)!)`` with indicators."""
    dens = [_inv_fact_or_zero(k) for k in (x - z, z, n - x - y + z, y - z)]
    if n < 2 or any(d is None for d in dens):
        return 0
    num = math.factorial(n - 2) * numerator
    den = math.prod(dens)
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError(f"non-integral count at n={n}, {(x, y, z)}")
    return q


def boundary_count(n: int, t: Triplet) -> int:
    """Edges between a class member and its complement in the K_n bunkbed."""
    x, y, z = t.check(n)
    return (x + y) * n - x * x + x - y * y + y - 2 * z


def count_c1(n: int, t: Triplet) -> int:
    """Members of class ``t`` that contain ``v``."""
    x, y, z = t.check(n)
    return _closed_form(n, x, y, z, x * (x - 1))


def count_c2(n: int, t: Triplet) -> int:
    """Members of class ``t`` that contain ``v'``."""
    x, y, z = t.check(n)
    return _closed_form(n, x, y, z, x * y - z)


def count_c2_by_cases(n: int, t: Triplet) -> int:
    """Same count split on whether ``v`` and ``u'`` are present."""
    x, y, z = t.check(n)
    if n < 2:
        return 0
    b = _binom
    return (
        b(n - 2, x - 2) * b(x - 2, z - 2) * b(n - x, y - z)  # v and u' in
        + b(n - 2, x - 2) * b(x - 2, z - 1) * b(n - x, y - z)  # v in, u' out
        + b(n - 2, x - 1) * b(x - 1, z - 1) * b(n - x - 1, y - z - 1)  # v out, u' in
        + b(n - 2, x - 1) * b(x - 1, z) * b(n - x - 1, y - z - 1)  # both out
    )


def count_c1_binomial(n: int, t: Triplet) -> int:
    x, y, z = t.check(n)
    if n < 2:
        return 0
    return _binom(n - 2, x - 2) * _binom(x, z) * _binom(n - x, y - z)


def count_total(n: int, t: Triplet) -> int:
    """Members of class ``t`` (only ``u`` is required)."""
    x, y, z = t.check(n)
    return math.comb(n - 1, x - 1) * math.comb(x, z) * math.comb(n - x, y - z)


def _binom(a: int, b: int) -> int:
    if a < 0 or b < 0 or b > a:
        return 0
    return math.comb(a, b)


def _cdiff_params(n, k, i, eps, z):
    if eps not in (0, 1):
        raise ValueError("eps must be 0 or 1")
    x, y = k + i + eps, k - i
    if i < 0 or z < 1 or y < z or x + y - z > n:
        raise ValueError(f"invalid C_diff parameters n={n}, k={k}, i={i}, eps={eps}, z={z}")
    return x, y


def count_cdiff(n: int, k: int, i: int, eps: int, z: int) -> int:
    """Signed count for the mirrored pair ``(k+i+eps, k-i, z)``, closed form."""
    x, y = _cdiff_params(n, k, i, eps, z)
    if x == y:
        return _closed_form(n, x, y, z, z - x)
    return _closed_form(n, x, y, z, (x - y) ** 2 - x - y + 2 * z)


def count_cdiff_from_counts(n: int, x: int, y: int, z: int) -> int:
    """Definitional value assembled from the four class counts.

    Classes outside the valid range (for instance ``x = 0``) count as empty.
    """

    def c1(a, b):
        t = Triplet(a, b, z)
        return count_c1(n, t) if t.is_valid(n) else 0

    def c2(a, b):
        t = Triplet(a, b, z)
        return count_c2(n, t) if t.is_valid(n) else 0

    if x == y:
        return c1(x, x) - c2(x, x)
    return c1(x, y) - c2(x, y) + c1(y, x) - c2(y, x)


def _sign(v: int) -> int:
    return (v > 0) - (v < 0)


def cdiff_sign(n: int, k: int, i: int, eps: int, z: int) -> int:
    _cdiff_params(n, k, i, eps, z)
    return _sign((2 * i + eps) ** 2 - (2 * k + eps) + 2 * z)


def find_i0(k: int, eps: int, z: int) -> int:
    """Smallest ``i >= 0`` where the mirrored-pair count stops being negative."""
    if eps not in (0, 1) or z < 1 or k < z:
        raise ValueError(f"invalid parameters k={k}, eps={eps}, z={z}")
    target = 2 * k + eps - 2 * z
    if target <= eps * eps:
        return 0
    # (2i + eps)^2 >= target  <=>  2i + eps >= ceil(sqrt(target))
    r = math.isqrt(target)
    if r * r < target:
        r += 1
    return max(0, (r - eps + 1) // 2)


def check_factorial_indicator(x: int, k: int) -> bool:
    """``1/(x-k)! * [x >= k] == (1/x!) * prod_{j<k} (x - j)`` for ``x, k >= 0``.

    The product stops at ``k - 1``; including ``j = k`` would break the
    identity already at ``x = 3, k = 1``.
    """
    lhs = Fraction(1, math.factorial(x - k)) if x >= k else Fraction(0)
    rhs = Fraction(math.prod(x - j for j in range(k)), math.factorial(x))
    return lhs == rhs


# -- zero-sum identities along anti-diagonals -----------------------------------


def _even_term(d: int, i: int) -> Fraction:
    # n-free factor of C_diff(k+i, k-i, z) for i >= 1, with d = k - z
    return Fraction(4 * i * i - 2 * d, math.factorial(d + i) * math.factorial(d - i))


def _odd_term(d: int, i: int) -> Fraction:
    # half the n-free factor of C_diff(k+i+1, k-i, z)
    return Fraction(2 * i * i + 2 * i - d, math.factorial(d + i + 1) * math.factorial(d - i))


def reduced_sum_even(k: int, z: int) -> tuple[Fraction, Fraction]:
    d = k - z
    lhs = sum((_even_term(d, i) for i in range(1, d + 1)), Fraction(0))
    rhs = Fraction(d, math.factorial(d) ** 2)
    return lhs, rhs


def reduced_sum_odd(k: int, z: int) -> tuple[Fraction, Fraction]:
    d = k - z
    lhs = sum((_odd_term(d, i) for i in range(1, d + 1)), Fraction(0))
    rhs = Fraction(d, math.factorial(d + 1) * math.factorial(d))
    return lhs, rhs


def telescoping_even(k: int, z: int) -> bool:
    """Check the remainder chain ``R_i = term_i + R_{i+1}`` behind the even sum.

    ``R_i = (2i-1)(d+i) / ((d+i)! (d-i)!)`` with ``d = k - z``; ``R_1`` is the
    target value and ``R_d`` equals the last term.
    """
    d = k - z
    if d == 0:
        return True

    def R(i):
        if i > d:
            return Fraction(0)
        return Fraction((2 * i - 1) * (d + i), math.factorial(d + i) * math.factorial(d - i))

    if R(1) != Fraction(d, math.factorial(d) ** 2):
        return False
    if R(d) != _even_term(d, d):
        return False
    return all(R(i) == _even_term(d, i) + R(i + 1) for i in range(1, d + 1))


def telescoping_odd(k: int, z: int) -> bool:
    """Odd counterpart with ``S_i = i (d+i+1) / ((d+i+1)! (d-i)!)``."""
    d = k - z
    if d == 0:
        return True

    def S(i):
        if i > d:
            return Fraction(0)
        return Fraction(i * (d + i + 1), math.factorial(d + i + 1) * math.factorial(d - i))

    if S(1) != Fraction(d, math.factorial(d + 1) * math.factorial(d)):
        return False
    if S(d) != _odd_term(d, d):
        return False
    return all(S(i) == _odd_term(d, i) + S(i + 1) for i in range(1, d + 1))


def _full_sum(k: int, z: int, eps: int, n: int | None = None) -> int:
    n = 2 * k + 1 - z if n is None else n
    return sum(count_cdiff(n, k, i, eps, z) for i in range(k - z + 1))


def check_identity_even(k: int, z: int, n: int | None = None) -> bool:
    """Sum of C_diff(k+i, k-i, z) over i = 0..k-z vanishes."""
    if z < 1 or k < z:
        raise ValueError(f"need k >= z >= 1, got k={k}, z={z}")
    lhs, rhs = reduced_sum_even(k, z)
    return lhs == rhs and telescoping_even(k, z) and _full_sum(k, z, 0, n) == 0


def check_identity_odd(k: int, z: int, n: int | None = None) -> bool:
    """Sum of C_diff(k+i+1, k-i, z) over i = 0..k-z vanishes."""
    if z < 1 or k < z:
        raise ValueError(f"need k >= z >= 1, got k={k}, z={z}")
    lhs, rhs = reduced_sum_odd(k, z)
    return lhs == rhs and telescoping_odd(k, z) and _full_sum(k, z, 1, n) == 0


# -- brute-force oracles ---------------------------------------------------------


def signature(n: int, vertices) -> Triplet:
    bottom = {v for v in vertices if v < n}
    top = {v - n for v in vertices if v >= n}
    return Triplet(len(bottom), len(top), len(bottom & top))


def brute_force_counts(n: int, u: int = 0, v: int = 1) -> dict[Triplet, tuple[int, int, int]]:
    """Class -> (total, containing v, containing v') over all vertex subsets."""
    out: dict[Triplet, list[int]] = {}
    V = 2 * n
    ub = 1 << u
    vb = 1 << v if n >= 2 else 0
    vpb = 1 << (v + n) if n >= 2 else 0
    for mask in range(1 << V):
        if not mask & ub:
            continue
        members = [i for i in range(V) if mask >> i & 1]
        t = signature(n, members)
        row = out.setdefault(t, [0, 0, 0])
        row[0] += 1
        if vb and mask & vb:
            row[1] += 1
        if vpb and mask & vpb:
            row[2] += 1
    return {t: tuple(r) for t, r in out.items()}


def brute_force_boundary(n: int, t: Triplet) -> int:
    """Cut size of one explicit member of ``t`` in the K_n bunkbed."""
    from .graph import build_bunkbed, complete_graph, cut_edges

    x, y, z = t.check(n)
    bottom = list(range(x))
    top = list(range(z)) + list(range(x, x + y - z))
    members = bottom + [c + n for c in top]
    return cut_edges(build_bunkbed(complete_graph(n)).edges, members)

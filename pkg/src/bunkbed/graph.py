"""Original graphs, their bunkbed doubling, and edge probability vectors.

Vertex ``c`` of the original graph becomes ``c`` (bottom, level 0) and
``c + n`` (top, level 1).  Edges are ordered bottom copies first (input
order), then top copies, then one vertical edge per column.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence


class CapacityError(RuntimeError):
    """Instance is larger than an exact routine is configured to handle."""


@dataclass(frozen=True)
class OriginalGraph:
    n_vertices: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n_vertices < 1:
            raise ValueError("an original graph needs at least one vertex")
        seen = set()
        normed = []
        for a, b in self.edges:
            if a == b:
                raise ValueError(f"self-loop at vertex {a}")
            if not (0 <= a < self.n_vertices and 0 <= b < self.n_vertices):
                raise ValueError(f"edge ({a}, {b}) out of range for n={self.n_vertices}")
            key = (min(a, b), max(a, b))
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
            normed.append((a, b))
        object.__setattr__(self, "edges", tuple(normed))


def complete_graph(n: int) -> OriginalGraph:
    return OriginalGraph(n, tuple((a, b) for a in range(n) for b in range(a + 1, n)))


def path_graph(n: int) -> OriginalGraph:
    return OriginalGraph(n, tuple((a, a + 1) for a in range(n - 1)))


def parse_edge_list(text: str) -> OriginalGraph:
    """Parse ``n m`` followed by ``m`` lines ``a b`` (0-based)."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty edge list")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError("first line must be 'n m'")
    n, m = int(head[0]), int(head[1])
    if len(lines) - 1 != m:
        raise ValueError(f"expected {m} edge lines, found {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"bad edge line: {ln!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return OriginalGraph(n, tuple(edges))


def load_graph(spec: str) -> OriginalGraph:
    """Resolve ``complete:n``, ``path:n`` or a path to an edge-list file."""
    if ":" in spec:
        kind, _, arg = spec.partition(":")
        if kind == "complete":
            return complete_graph(int(arg))
        if kind == "path":
            return path_graph(int(arg))
    path = Path(spec)
    if not path.exists():
        raise ValueError(f"unknown graph {spec!r}")
    return parse_edge_list(path.read_text())


@dataclass(frozen=True)
class BunkbedGraph:
    original: OriginalGraph
    edges: tuple[tuple[int, int], ...] = field(init=False)

    def __post_init__(self):
        n = self.original.n_vertices
        bottom = [(a, b) for a, b in self.original.edges]
        top = [(a + n, b + n) for a, b in self.original.edges]
        vertical = [(c, c + n) for c in range(n)]
        object.__setattr__(self, "edges", tuple(bottom + top + vertical))

    @property
    def n_columns(self) -> int:
        return self.original.n_vertices

    @property
    def n_vertices(self) -> int:
        return 2 * self.original.n_vertices

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def vertex(self, column: int, level: int) -> int:
        if level not in (0, 1) or not 0 <= column < self.n_columns:
            raise IndexError(f"no vertex ({column}, {level})")
        return column + level * self.n_columns

    def level(self, v: int) -> int:
        self._check_vertex(v)
        return v // self.n_columns

    def column(self, v: int) -> int:
        self._check_vertex(v)
        return v % self.n_columns

    def symmetric_vertex(self, v: int) -> int:
        self._check_vertex(v)
        return (v + self.n_columns) % self.n_vertices

    def symmetric_edge(self, e: int) -> int:
        m = len(self.original.edges)
        if not 0 <= e < self.n_edges:
            raise IndexError(f"edge index {e} out of range")
        if e < m:
            return e + m
        if e < 2 * m:
            return e - m
        return e

    def is_vertical(self, e: int) -> bool:
        return e >= 2 * len(self.original.edges)

    def vertical_edge(self, column: int) -> int:
        return 2 * len(self.original.edges) + column

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n_vertices:
            raise IndexError(f"vertex index {v} out of range")


def build_bunkbed(g: OriginalGraph) -> BunkbedGraph:
    return BunkbedGraph(g)


def symmetric_vertex(g: BunkbedGraph, v: int) -> int:
    return g.symmetric_vertex(v)


def as_fraction(value) -> Fraction:
    """Exact conversion; floats are refused so no binary rounding sneaks in."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not probabilities")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def parse_fraction(text: str) -> Fraction:
    """Accept ``a/b`` or an integer literal; decimals are rejected."""
    s = text.strip()
    if "/" in s:
        num, _, den = s.partition("/")
        if not (_is_int(num) and _is_int(den)):
            raise ValueError(f"not a fraction: {text!r}")
        if int(den) == 0:
            raise ValueError("zero denominator")
        return Fraction(int(num), int(den))
    if not _is_int(s):
        raise ValueError(f"not an exact rational (use a/b): {text!r}")
    return Fraction(int(s))


def _is_int(s: str) -> bool:
    s = s.strip()
    if s[:1] in "+-":
        s = s[1:]
    return s.isdigit()


@dataclass(frozen=True)
class EdgeProbabilityVector:
    values: tuple[Fraction, ...]
    constrained: bool = False

    def __post_init__(self):
        vals = tuple(as_fraction(v) for v in self.values)
        for v in vals:
            if not 0 <= v <= 1:
                raise ValueError(f"probability {v} outside [0, 1]")
        object.__setattr__(self, "values", vals)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, e: int) -> Fraction:
        return self.values[e]

    @classmethod
    def constant(cls, g, p) -> "EdgeProbabilityVector":
        return cls((as_fraction(p),) * len(g.edges), constrained=True)

    @classmethod
    def for_bunkbed(cls, g: BunkbedGraph, values: Sequence, constrained: bool = False):
        vec = cls(tuple(values), constrained)
        if len(vec) != g.n_edges:
            raise ValueError(f"vector has {len(vec)} entries, graph has {g.n_edges} edges")
        if constrained and not validate_constrained(g, vec):
            raise ValueError("vector flagged constrained but p_e != p_e' for some edge")
        return vec

    @classmethod
    def symmetric(cls, g: BunkbedGraph, horizontal: Sequence, vertical: Sequence):
        """Constrained vector from one value per original edge and per column."""
        horizontal = [as_fraction(h) for h in horizontal]
        vertical = [as_fraction(v) for v in vertical]
        if len(horizontal) != len(g.original.edges) or len(vertical) != g.n_columns:
            raise ValueError("wrong number of horizontal or vertical values")
        return cls(tuple(horizontal + horizontal + vertical), constrained=True)


def validate_constrained(g: BunkbedGraph, p: EdgeProbabilityVector) -> bool:
    if len(p) != g.n_edges:
        raise ValueError(f"vector has {len(p)} entries, graph has {g.n_edges} edges")
    return all(p[e] == p[g.symmetric_edge(e)] for e in range(g.n_edges))


def coerce_probabilities(g, p) -> EdgeProbabilityVector:
    """Turn a scalar or per-edge sequence into a vector sized to ``g``."""
    if isinstance(p, EdgeProbabilityVector):
        vec = p
    elif isinstance(p, (Fraction, int, str)):
        vec = EdgeProbabilityVector.constant(g, p)
    else:
        vec = EdgeProbabilityVector(tuple(p))
    if len(vec) != len(g.edges):
        raise ValueError(f"vector has {len(vec)} entries, graph has {len(g.edges)} edges")
    return vec


@dataclass(frozen=True)
class Configuration:
    """Open/closed state of every edge; bit ``e`` of ``open_mask`` is edge ``e``."""

    n_edges: int
    open_mask: int

    def __post_init__(self):
        if self.open_mask < 0 or self.open_mask >> self.n_edges:
            raise ValueError("mask wider than the edge set")

    def is_open(self, e: int) -> bool:
        return bool(self.open_mask >> e & 1)


@dataclass(frozen=True)
class SimpleGraph:
    """Plain vertex/edge container the exact engine accepts alongside bunkbeds."""

    n_vertices: int
    edges: tuple[tuple[int, int], ...]


def induced_level_edges(g: BunkbedGraph, level: int) -> set[tuple[int, int]]:
    """Edges inside one level, relabelled to original columns."""
    out = set()
    for a, b in g.edges:
        if a != b and g.level(a) == level and g.level(b) == level:
            ca, cb = g.column(a), g.column(b)
            out.add((min(ca, cb), max(ca, cb)))
    return out


def original_edge_set(g: OriginalGraph) -> set[tuple[int, int]]:
    return {(min(a, b), max(a, b)) for a, b in g.edges}


def cut_edges(edges: Iterable[tuple[int, int]], vertex_set) -> int:
    s = set(vertex_set)
    return sum((a in s) != (b in s) for a, b in edges)

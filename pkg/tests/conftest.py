import itertools
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from bunkbed.graph import OriginalGraph, build_bunkbed, complete_graph


def naive_event_prob(n_vertices, edges, probs, event):
    """Sum of configuration weights where ``event(reach)`` holds.

    ``reach(a, b)`` answers connectivity by depth-first search on open edges.
    Deliberately shares no code with the package.
    """
    total = Fraction(0)
    for states in itertools.product((0, 1), repeat=len(edges)):
        w = Fraction(1)
        adj = {v: [] for v in range(n_vertices)}
        for (a, b), s, q in zip(edges, states, probs):
            w *= q if s else 1 - q
            if s:
                adj[a].append(b)
                adj[b].append(a)
        if not w:
            continue

        def reach(a, b, adj=adj):
            seen, stack = {a}, [a]
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            return b in seen

        if event(reach):
            total += w
    return total


def naive_connect(n_vertices, edges, probs, a, b):
    return naive_event_prob(n_vertices, edges, probs, lambda r: r(a, b))


@pytest.fixture
def square():
    return build_bunkbed(complete_graph(2))


@pytest.fixture
def k3_bunkbed():
    return build_bunkbed(complete_graph(3))


rationals = st.builds(Fraction, st.integers(0, 12), st.just(12))


@st.composite
def small_graphs(draw, max_vertices=5, max_edges=8):
    n = draw(st.integers(1, max_vertices))
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=max_edges)) if pairs else []
    return OriginalGraph(n, tuple(chosen))


@st.composite
def bunkbeds_with_vectors(draw, max_vertices=4, max_edges=5, constrained=False):
    g = build_bunkbed(draw(small_graphs(max_vertices, max_edges)))
    if constrained:
        h = draw(st.lists(rationals, min_size=len(g.original.edges), max_size=len(g.original.edges)))
        v = draw(st.lists(rationals, min_size=g.n_columns, max_size=g.n_columns))
        values = tuple(h + h + v)
    else:
        values = tuple(draw(st.lists(rationals, min_size=g.n_edges, max_size=g.n_edges)))
    return g, values

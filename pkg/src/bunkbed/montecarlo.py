"""Seeded sampling estimates for graphs beyond exact reach.

Samples are drawn in fixed-size blocks.  Block ``b`` always uses the Philox
stream keyed by ``(seed, b)``, so the merged tallies do not depend on how
blocks are spread across workers.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

BLOCK_SIZE = 1 << 14
_U64 = (1 << 64) - 1


@dataclass(frozen=True)
class McEstimate:
    estimate: float
    stderr: float
    samples: int
    seed: int


def _prob_array(graph, p) -> np.ndarray:
    E = len(graph.edges)
    if hasattr(p, "values"):
        arr = np.array([float(v) for v in p.values], dtype=float)
    elif np.ndim(p) == 0:
        arr = np.full(E, float(p))
    else:
        arr = np.array([float(v) for v in p], dtype=float)
    if arr.shape != (E,):
        raise ValueError(f"need {E} edge probabilities, got {arr.shape}")
    if np.any(arr < 0) or np.any(arr > 1):
        raise ValueError("probabilities must lie in [0, 1]")
    return arr


def block_generator(seed: int, block: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=np.array([seed & _U64, block], dtype=np.uint64)))


def _block_labels(graph, probs, seed, block, size):
    """Cluster labels for ``size`` sampled configurations, shape (size, V)."""
    V = graph.n_vertices
    ends = np.asarray(graph.edges, dtype=np.int64).reshape(-1, 2)
    rng = block_generator(seed, block)
    is_open = rng.random((size, len(probs))) < probs
    s_idx, e_idx = np.nonzero(is_open)
    offset = s_idx * V
    rows = ends[e_idx, 0] + offset
    cols = ends[e_idx, 1] + offset
    adj = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(size * V, size * V))
    _, labels = connected_components(adj, directed=False)
    return labels.reshape(size, V)


def _difference_block(graph, probs, u, v, vp, seed, block, size):
    lab = _block_labels(graph, probs, seed, block, size)
    hit_v = lab[:, u] == lab[:, v]
    hit_vp = lab[:, u] == lab[:, vp]
    return int(np.count_nonzero(hit_v & ~hit_vp)), int(np.count_nonzero(hit_vp & ~hit_v))


def _connection_block(graph, probs, a, b, seed, block, size):
    lab = _block_labels(graph, probs, seed, block, size)
    return int(np.count_nonzero(lab[:, a] == lab[:, b])), 0


def _blocks(samples):
    full, rem = divmod(samples, BLOCK_SIZE)
    sizes = [BLOCK_SIZE] * full + ([rem] if rem else [])
    return list(enumerate(sizes))


def _tally(fn, args, seed, samples, workers):
    blocks = _blocks(samples)
    if workers <= 1 or len(blocks) == 1:
        parts = [fn(*args, seed, b, size) for b, size in blocks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            futures = [ex.submit(fn, *args, seed, b, size) for b, size in blocks]
            parts = [f.result() for f in futures]
    return sum(x for x, _ in parts), sum(y for _, y in parts)


def estimate_difference(graph, p, u: int, v: int, samples: int, seed: int, workers: int = 1) -> McEstimate:
    """Coupled estimate of ``P(u<->v) - P(u<->v')``; both indicators read the same sample."""
    if samples < 1:
        raise ValueError("samples must be positive")
    probs = _prob_array(graph, p)
    vp = graph.symmetric_vertex(v)
    plus, minus = _tally(_difference_block, (graph, probs, u, v, vp), seed, samples, workers)
    mean = (plus - minus) / samples
    var = max((plus + minus) / samples - mean * mean, 0.0)
    return McEstimate(mean, math.sqrt(var / samples), samples, seed)


def estimate_connection(graph, p, a: int, b: int, samples: int, seed: int, workers: int = 1) -> McEstimate:
    if samples < 1:
        raise ValueError("samples must be positive")
    if a == b:
        return McEstimate(1.0, 0.0, samples, seed)
    probs = _prob_array(graph, p)
    hits, _ = _tally(_connection_block, (graph, probs, a, b), seed, samples, workers)
    phat = hits / samples
    return McEstimate(phat, math.sqrt(phat * (1 - phat) / samples), samples, seed)

"""Configuration-model samplers.

Undirected: build the stub array (vertex v repeated k_v times), shuffle it
with SplitMix64 seeded by ``seed`` and pair positions (2i, 2i+1). Directed:
shuffle the in-stub array and pair it positionally with the out-stub array.
Both are exactly uniform over matchings (bijections). Self-loops and
parallel edges are kept.

Trial ``t`` of a Monte Carlo run with master seed ``s`` uses
``child_seed(s, t) = mix64(mix64(s) + (t + 1) * 0x9E3779B97F4A7C15)``, so a
single trial can be replayed with :func:`sample_configuration`.
"""
from __future__ import annotations

import operator
from collections import Counter

import numpy as np

from ._backend import kernels
from .degrees import DegreeSequence, DirectedDegreeSequence
from .errors import VertexOutOfRange

child_seed = kernels.child_seed


def _canonical(edges):
    if len(edges) == 0:
        return edges.reshape(0, 2)
    order = np.lexsort((edges[:, 1], edges[:, 0]))
    return np.ascontiguousarray(edges[order])


class MultiGraph:
    """Immutable labelled multigraph.

    ``edges`` is a read-only ``(L, 2)`` int64 array in canonical order:
    undirected rows have ``u <= v``; rows are sorted lexicographically.
    """

    __slots__ = ("n", "directed", "edges")

    def __init__(self, n, edges, directed=False):
        arr = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if len(arr) and (arr.min() < 0 or arr.max() >= n):
            raise VertexOutOfRange(f"edge endpoint outside 0..{n - 1}")
        if not directed:
            arr = np.sort(arr, axis=1)
        arr = _canonical(arr)
        arr.flags.writeable = False
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "directed", bool(directed))
        object.__setattr__(self, "edges", arr)

    def __setattr__(self, name, value):
        raise AttributeError("MultiGraph is immutable")

    def __eq__(self, other):
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return (self.n == other.n and self.directed == other.directed
                and np.array_equal(self.edges, other.edges))

    def __hash__(self):
        return hash((self.n, self.directed, self.edges.tobytes()))

    def __repr__(self):
        kind = "directed" if self.directed else "undirected"
        return f"MultiGraph(n={self.n}, {kind}, edges={self.edge_list()})"

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def key(self) -> tuple:
        return tuple(self.edge_list())

    def edge_list(self) -> list[tuple[int, int]]:
        return [(int(u), int(v)) for u, v in self.edges]

    def degrees(self) -> np.ndarray:
        """Undirected degree per vertex, a self-loop contributing 2."""
        return np.bincount(self.edges.ravel(), minlength=self.n)

    def out_degrees(self) -> np.ndarray:
        return np.bincount(self.edges[:, 0], minlength=self.n)

    def in_degrees(self) -> np.ndarray:
        return np.bincount(self.edges[:, 1], minlength=self.n)

    def multiplicity(self, u: int, v: int) -> int:
        return multiplicity(self, u, v)

    def self_loop_count(self) -> int:
        return int(np.count_nonzero(self.edges[:, 0] == self.edges[:, 1]))

    def multi_edge_count(self) -> int:
        """Edges repeating an earlier edge with the same endpoints (loops included)."""
        return self.num_edges - len(Counter(self.key))

    def is_simple(self) -> bool:
        return self.self_loop_count() == 0 and self.multi_edge_count() == 0


def multiplicity(g: MultiGraph, u: int, v: int) -> int:
    """Number of parallel edges joining u and v (u -> v for directed graphs)."""
    u, v = operator.index(u), operator.index(v)
    for w in (u, v):
        if not 0 <= w < g.n:
            raise VertexOutOfRange(f"vertex {w} not in 0..{g.n - 1}")
    if not g.directed and u > v:
        u, v = v, u
    return int(np.count_nonzero((g.edges[:, 0] == u) & (g.edges[:, 1] == v)))


def is_simple(g: MultiGraph) -> bool:
    return g.is_simple()


def sample_configuration(seq: DegreeSequence, seed: int = 0) -> MultiGraph:
    """Uniformly random stub matching of ``seq`` as a MultiGraph."""
    shuffled = kernels.shuffle_stubs(seq.stubs(), seed)
    return MultiGraph(seq.n, shuffled.reshape(-1, 2), directed=False)


def sample_directed_configuration(dseq: DirectedDegreeSequence, seed: int = 0) -> MultiGraph:
    """Uniformly random out-stub to in-stub bijection of ``dseq``."""
    targets = kernels.shuffle_stubs(dseq.in_stubs(), seed)
    edges = np.column_stack((dseq.out_stubs(), targets))
    return MultiGraph(dseq.n, edges, directed=True)


def sample_batch(seq: DegreeSequence, seed: int, start: int, stop: int) -> np.ndarray:
    """Canonical edge arrays of trials ``start..stop-1``, shape ``(T, L, 2)``.

    Row t equals ``sample_configuration(seq, child_seed(seed, start + t)).edges``.
    """
    shuffled = kernels.shuffled_batch(seq.stubs(), seed, start, stop)
    pairs = np.sort(shuffled.reshape(len(shuffled), -1, 2), axis=2)
    # sort edges within each sample: lexicographic on (u, v)
    flat = pairs[..., 0] * max(seq.n, 1) + pairs[..., 1]
    order = np.argsort(flat, axis=1, kind="stable")
    return np.take_along_axis(pairs, order[..., None], axis=1)


def format_edgelist(g: MultiGraph, seed: int | None = None) -> str:
    """Edge-list text: ``#`` header lines then one ``u v`` per line."""
    lines = [f"# n {g.n}", f"# L {g.num_edges}", f"# directed {str(g.directed).lower()}"]
    if seed is not None:
        lines.append(f"# seed {seed}")
    lines += [f"{u} {v}" for u, v in g.edge_list()]
    return "\n".join(lines) + "\n"


def parse_edgelist(text: str, n: int | None = None, directed: bool | None = None) -> MultiGraph:
    """Inverse of :func:`format_edgelist`; header values fill in ``n``/``directed``."""
    edges = []
    header = {}
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            fields = line[1:].split()
            if len(fields) == 2:
                header[fields[0]] = fields[1]
            continue
        u, v = line.split()
        edges.append((int(u), int(v)))
    if n is None:
        n = int(header["n"]) if "n" in header else (max(max(e) for e in edges) + 1 if edges else 0)
    if directed is None:
        directed = header.get("directed", "false") == "true"
    return MultiGraph(n, edges, directed=directed)

"""Superpower graphs built from an order profile.

Two group elements are adjacent when one order divides the other.  Every
order class is therefore a clique, and two classes are either completely
joined or not joined at all, so the graph is fully described by the class
sizes plus a divisibility relation between classes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CapExceeded

DEFAULT_DENSE_CAP = 20000


@dataclass(frozen=True)
class OrderClassGraph:
    """Implicit superpower graph: one clique per element order."""

    orders: tuple[int, ...]
    sizes: tuple[int, ...]
    related: tuple[tuple[bool, ...], ...]

    @property
    def num_classes(self) -> int:
        return len(self.orders)

    @property
    def num_vertices(self) -> int:
        return sum(self.sizes)

    def class_degrees(self) -> list[int]:
        t = self.num_classes
        return [
            self.sizes[i] - 1 + sum(self.sizes[j] for j in range(t) if self.related[i][j])
            for i in range(t)
        ]

    def class_neighbor_counts(self) -> list[list[int]]:
        """``B[i][j]``: neighbours in class j of any vertex of class i."""
        t = self.num_classes
        return [
            [
                self.sizes[i] - 1 if i == j else (self.sizes[j] if self.related[i][j] else 0)
                for j in range(t)
            ]
            for i in range(t)
        ]


def class_graph(profile: dict[int, int]) -> OrderClassGraph:
    orders = tuple(sorted(profile))
    sizes = tuple(int(profile[d]) for d in orders)
    if any(d < 1 for d in orders) or any(c < 1 for c in sizes):
        raise ValueError(f"invalid order profile: {profile!r}")
    related = tuple(
        tuple(i != j and (b % a == 0 or a % b == 0) for j, b in enumerate(orders))
        for i, a in enumerate(orders)
    )
    return OrderClassGraph(orders, sizes, related)


@dataclass(frozen=True, eq=False)
class DenseGraph:
    """Explicit graph with bit-packed adjacency rows.

    Vertices are numbered class by class, classes in ascending order.
    """

    n: int
    packed: np.ndarray
    class_of: np.ndarray

    def adjacency(self) -> np.ndarray:
        return np.unpackbits(self.packed, axis=1, count=self.n).astype(bool)

    def degrees(self) -> np.ndarray:
        return self.adjacency().sum(axis=1)

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.packed[u, v >> 3] >> (7 - (v & 7))) & 1)


def expand_dense(cg: OrderClassGraph, cap: int = DEFAULT_DENSE_CAP) -> DenseGraph:
    n = cg.num_vertices
    if n > cap:
        raise CapExceeded(n, cap, what="graph")
    starts = np.concatenate([[0], np.cumsum(cg.sizes)]).astype(np.int64)
    class_of = np.repeat(np.arange(cg.num_classes), cg.sizes)
    packed = np.zeros((n, (n + 7) // 8), dtype=np.uint8)
    for i in range(cg.num_classes):
        row = np.zeros(n, dtype=bool)
        for j in range(cg.num_classes):
            if i == j or cg.related[i][j]:
                row[starts[j]:starts[j + 1]] = True
        # chunked so the unpacked block never gets large
        for lo in range(0, cg.sizes[i], 2048):
            hi = min(lo + 2048, cg.sizes[i])
            block = np.tile(row, (hi - lo, 1))
            block[np.arange(hi - lo), starts[i] + np.arange(lo, hi)] = False
            packed[starts[i] + lo:starts[i] + hi] = np.packbits(block, axis=1)
    return DenseGraph(n, packed, class_of)


@dataclass(frozen=True)
class GraphStats:
    n: int
    m: int
    connected: bool
    degrees_by_class: tuple[int, ...]


def graph_stats(cg: OrderClassGraph) -> GraphStats:
    degrees = cg.class_degrees()
    m2 = sum(d * s for d, s in zip(degrees, cg.sizes))
    # connectivity of the class super-graph; each class is itself a clique
    seen = {0} if cg.num_classes else set()
    stack = list(seen)
    while stack:
        i = stack.pop()
        for j in range(cg.num_classes):
            if cg.related[i][j] and j not in seen:
                seen.add(j)
                stack.append(j)
    return GraphStats(cg.num_vertices, m2 // 2, len(seen) == cg.num_classes, tuple(degrees))

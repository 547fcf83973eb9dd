"""Directed-graph container with append-only edges and edge-list round-tripping.

Node ids are 1-based and double as the quality ranking (1 = highest quality).
Edges are never removed; generators only append. After generation the graph
is treated as immutable by all metrics code.
"""

from __future__ import annotations

import numpy as np


class GraphError(ValueError):
    """Structural violation: bad size, self-loop, duplicate edge, id out of range."""


class EdgeListParseError(GraphError):
    """Malformed edge-list input. Carries the 1-based offending line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class DirectedGraph:
    __slots__ = ("n", "out_adj", "in_degree", "edge_count", "_out_sets")

    def __init__(self, n: int):
        if not isinstance(n, (int, np.integer)) or n < 2:
            raise GraphError(f"node count must be an integer >= 2, got {n!r}")
        self.n = int(n)
        self.out_adj: list[list[int]] = [[] for _ in range(self.n)]
        self._out_sets: list[set[int]] = [set() for _ in range(self.n)]
        self.in_degree: list[int] = [0] * self.n
        self.edge_count = 0

    def _check_id(self, v: int) -> None:
        if not 1 <= v <= self.n:
            raise GraphError(f"node id {v} outside [1, {self.n}]")

    def has_edge(self, i: int, j: int) -> bool:
        self._check_id(i)
        self._check_id(j)
        return j in self._out_sets[i - 1]

    def add_edge(self, i: int, j: int) -> None:
        self._check_id(i)
        self._check_id(j)
        if i == j:
            raise GraphError(f"self-loop ({i},{j}) rejected")
        if j in self._out_sets[i - 1]:
            raise GraphError(f"duplicate edge ({i},{j}) rejected")
        self.out_adj[i - 1].append(j)
        self._out_sets[i - 1].add(j)
        self.in_degree[j - 1] += 1
        self.edge_count += 1

    def out_degree(self, i: int) -> int:
        self._check_id(i)
        return len(self.out_adj[i - 1])

    def edges(self):
        """Yield (source, target) pairs in node order, insertion order within node."""
        for i, targets in enumerate(self.out_adj, start=1):
            for j in targets:
                yield i, j

    def degrees_snapshot(self) -> tuple[np.ndarray, np.ndarray]:
        """Return (in_degree, out_degree) vectors, index k = node k+1."""
        ins = np.array(self.in_degree, dtype=np.int64)
        outs = np.array([len(t) for t in self.out_adj], dtype=np.int64)
        return ins, outs

    def check_invariants(self) -> None:
        """Full recount of the maintained counters; raises GraphError on mismatch."""
        recount = [0] * self.n
        total = 0
        for i, targets in enumerate(self.out_adj, start=1):
            if len(targets) != len(self._out_sets[i - 1]):
                raise GraphError(f"node {i}: duplicate targets in out_adj")
            for j in targets:
                if j == i:
                    raise GraphError(f"node {i}: self-loop present")
                self._check_id(j)
                recount[j - 1] += 1
                total += 1
        if total != self.edge_count:
            raise GraphError(f"edge_count {self.edge_count} != recount {total}")
        if recount != self.in_degree:
            raise GraphError("in_degree vector inconsistent with out_adj recount")

    # -- serialization ------------------------------------------------------

    def to_edge_list(self) -> str:
        """One "source,target" line per edge; node order, insertion order within node."""
        return "".join(f"{i},{j}\n" for i, j in self.edges())

    @classmethod
    def from_edge_list(cls, text: str, n: int | None = None) -> "DirectedGraph":
        """Parse edge-list text. When n is omitted it is inferred from the max id."""
        pairs: list[tuple[int, int, int]] = []
        max_id = 0
        for line_no, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != 2:
                raise EdgeListParseError(line_no, f"expected 'source,target', got {raw!r}")
            try:
                i, j = int(parts[0]), int(parts[1])
            except ValueError:
                raise EdgeListParseError(line_no, f"non-integer id in {raw!r}") from None
            if i < 1 or j < 1:
                raise EdgeListParseError(line_no, f"ids must be >= 1, got {raw!r}")
            pairs.append((line_no, i, j))
            max_id = max(max_id, i, j)
        if n is None:
            n = max(max_id, 2)
        g = cls(n)
        for line_no, i, j in pairs:
            try:
                g.add_edge(i, j)
            except GraphError as exc:
                raise EdgeListParseError(line_no, str(exc)) from None
        return g

    # -- fast construction for generators -----------------------------------

    @classmethod
    def _from_out_adj(cls, n: int, out_adj: list[list[int]]) -> "DirectedGraph":
        """Adopt prebuilt adjacency lists (trusted generator output)."""
        g = cls(n)
        flat: list[int] = []
        for i0, targets in enumerate(out_adj):
            ts = [int(j) for j in targets]
            g.out_adj[i0] = ts
            g._out_sets[i0] = set(ts)
            if len(g._out_sets[i0]) != len(ts) or (i0 + 1) in g._out_sets[i0]:
                raise GraphError(f"node {i0 + 1}: bad generator output")
            flat.extend(ts)
        indeg = np.bincount(np.asarray(flat, dtype=np.int64), minlength=n + 1)
        if len(indeg) > n + 1 or (len(flat) and min(flat) < 1):
            raise GraphError("target id outside [1, n] in generator output")
        g.in_degree = indeg[1:].tolist()
        g.edge_count = len(flat)
        return g

    def __repr__(self) -> str:
        return f"DirectedGraph(n={self.n}, edges={self.edge_count})"

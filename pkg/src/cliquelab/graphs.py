"""Labeled graphs on {0..n-1} stored as edge bitsets.

The bitset uses a fixed canonical pair order: the pair (u, v) with u < v
occupies bit ``u*n - u*(u+1)//2 + (v - u - 1)``, i.e. row-major over the
strict upper triangle.  The order is part of the serialization contract:
writers emit edges by increasing bit index, so serialized graphs are
portable across implementations.

Vertex counts are capped at 64 (bitset width C(64,2) = 2016); pure
arithmetic such as :func:`turan_edge_count` is uncapped.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from pathlib import Path

MAX_VERTICES = 64

# Above this clique size the subset scan gives way to neighborhood recursion.
_SUBSET_SCAN_LIMIT = 8


class GraphError(ValueError):
    """Invalid graph construction or mismatched operands."""


def pair_index(n: int, u: int, v: int) -> int:
    """Bit index of the unordered pair {u, v} in the canonical order."""
    if u == v:
        raise GraphError(f"loop ({u},{u}) is not an edge")
    if u > v:
        u, v = v, u
    if u < 0 or v >= n:
        raise GraphError(f"vertex pair ({u},{v}) out of range for n={n}")
    return u * n - u * (u + 1) // 2 + (v - u - 1)


@lru_cache(maxsize=None)
def index_pairs(n: int) -> tuple[tuple[int, int], ...]:
    """The inverse map: bit index -> (u, v), in canonical order."""
    return tuple((u, v) for u in range(n) for v in range(u + 1, n))


@dataclass(frozen=True)
class LabeledGraph:
    """A graph on vertex set {0..n-1}; ``edges`` is the bitset described above."""

    n: int
    edges: int

    def __post_init__(self):
        if not 1 <= self.n <= MAX_VERTICES:
            raise GraphError(f"vertex count {self.n} outside [1, {MAX_VERTICES}]")
        if self.edges < 0 or self.edges >> comb(self.n, 2):
            raise GraphError("edge bitset has bits outside the C(n,2) range")

    @property
    def edge_count(self) -> int:
        return self.edges.bit_count()

    def edge_list(self) -> list[tuple[int, int]]:
        pairs = index_pairs(self.n)
        bits = self.edges
        out = []
        while bits:
            low = bits & -bits
            out.append(pairs[low.bit_length() - 1])
            bits ^= low
        return out

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.edges >> pair_index(self.n, u, v) & 1)

    def adjacency_masks(self) -> list[int]:
        """Per-vertex neighbor masks (bit v of mask u set iff {u,v} is an edge)."""
        adj = [0] * self.n
        for u, v in self.edge_list():
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return adj


@dataclass(frozen=True)
class TuranPartition:
    """A balanced partition of n vertices into k parts (sizes differ by <= 1)."""

    n: int
    k: int
    part_sizes: tuple[int, ...]

    def __post_init__(self):
        if sum(self.part_sizes) != self.n:
            raise GraphError("part sizes do not sum to n")
        if max(self.part_sizes) - min(self.part_sizes) > 1:
            raise GraphError("part sizes differ by more than 1")


def make_graph(n: int, edge_list) -> LabeledGraph:
    """Build a graph from a list of vertex pairs (duplicates are idempotent)."""
    if not 1 <= n <= MAX_VERTICES:
        raise GraphError(f"vertex count {n} outside [1, {MAX_VERTICES}]")
    bits = 0
    for u, v in edge_list:
        bits |= 1 << pair_index(n, u, v)
    return LabeledGraph(n, bits)


def turan_partition(n: int, k: int) -> TuranPartition:
    if not 1 <= k <= n:
        raise GraphError(f"need 1 <= k <= n, got k={k}, n={n}")
    q, rem = divmod(n, k)
    return TuranPartition(n, k, tuple([q + 1] * rem + [q] * (k - rem)))


def turan_graph(n: int, k: int) -> LabeledGraph:
    """Complete k-partite graph with balanced parts on consecutive vertex blocks."""
    if n > MAX_VERTICES:
        raise GraphError(f"vertex count {n} outside [1, {MAX_VERTICES}]")
    part = turan_partition(n, k)
    owner = []
    for i, size in enumerate(part.part_sizes):
        owner.extend([i] * size)
    bits = 0
    for u in range(n):
        for v in range(u + 1, n):
            if owner[u] != owner[v]:
                bits |= 1 << pair_index(n, u, v)
    return LabeledGraph(n, bits)


def turan_edge_count(n: int, k: int) -> int:
    """Edge count of the balanced complete k-partite graph; uncapped arithmetic."""
    part = turan_partition(n, k)
    return comb(n, 2) - sum(comb(s, 2) for s in part.part_sizes)


def clique_edge_masks(n: int, ell: int) -> list[int]:
    """Edge bitmasks of all ell-cliques of K_n, in vertex-subset order."""
    return list(_clique_edge_masks_cached(n, ell))


@lru_cache(maxsize=128)
def _clique_edge_masks_cached(n: int, ell: int) -> tuple[int, ...]:
    if ell < 2 or ell > n:
        return ()
    masks = []
    for subset in combinations(range(n), ell):
        m = 0
        for u, v in combinations(subset, 2):
            m |= 1 << pair_index(n, u, v)
        masks.append(m)
    return tuple(masks)


def count_cliques(g: LabeledGraph, ell: int) -> int:
    """Number of ell-vertex subsets inducing a complete subgraph."""
    if ell < 0 or ell > MAX_VERTICES:
        raise GraphError(f"clique size {ell} outside [0, {MAX_VERTICES}]")
    if ell == 0:
        return 1
    if ell > g.n:
        return 0
    if ell == 1:
        return g.n
    if ell <= _SUBSET_SCAN_LIMIT:
        return _count_by_subset_masks(g, ell)
    return _count_by_neighborhoods(g, ell)


def _count_by_subset_masks(g: LabeledGraph, ell: int) -> int:
    edges = g.edges
    n = g.n
    total = 0
    for subset in combinations(range(n), ell):
        m = 0
        for u, v in combinations(subset, 2):
            m |= 1 << pair_index(n, u, v)
        if edges & m == m:
            total += 1
    return total


def _count_by_neighborhoods(g: LabeledGraph, ell: int) -> int:
    adj = g.adjacency_masks()

    def rec(candidates: int, need: int) -> int:
        if need == 0:
            return 1
        if candidates.bit_count() < need:
            return 0
        if need == 1:
            return candidates.bit_count()
        total = 0
        rest = candidates
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            # only vertices above v remain, so each clique is counted once
            total += rec(rest & adj[v], need - 1)
        return total

    return rec((1 << g.n) - 1, ell)


def has_clique(g: LabeledGraph, ell: int) -> bool:
    """True iff g contains a complete subgraph on ell vertices (short-circuits)."""
    if ell < 0 or ell > MAX_VERTICES:
        raise GraphError(f"clique size {ell} outside [0, {MAX_VERTICES}]")
    if ell == 0:
        return True
    if ell > g.n:
        return False
    if ell == 1:
        return True
    adj = g.adjacency_masks()

    def rec(candidates: int, need: int) -> bool:
        if need == 0:
            return True
        if candidates.bit_count() < need:
            return False
        rest = candidates
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            if rec(rest & adj[v], need - 1):
                return True
        return False

    return rec((1 << g.n) - 1, ell)


def is_subgraph(g: LabeledGraph, h: LabeledGraph) -> bool:
    """True iff g's edge set is contained in h's (identical labeled vertex set)."""
    if g.n != h.n:
        raise GraphError(f"vertex count mismatch: {g.n} != {h.n}")
    return g.edges | h.edges == h.edges


# ---------------------------------------------------------------------------
# Text format: first line "n", then one "u v" line per edge in canonical order.


def to_text(g: LabeledGraph) -> str:
    lines = [str(g.n)]
    lines.extend(f"{u} {v}" for u, v in g.edge_list())
    return "\n".join(lines) + "\n"


def from_text(text: str) -> LabeledGraph:
    tokens = text.split()
    if not tokens:
        raise GraphError("empty graph text")
    try:
        values = [int(t) for t in tokens]
    except ValueError as exc:
        raise GraphError(f"malformed graph text: {exc}") from None
    n = values[0]
    rest = values[1:]
    if len(rest) % 2:
        raise GraphError("odd number of vertex tokens after the first line")
    return make_graph(n, list(zip(rest[0::2], rest[1::2])))


def write_graph(path, g: LabeledGraph) -> None:
    Path(path).write_text(to_text(g), encoding="utf-8")


def read_graph(path) -> LabeledGraph:
    return from_text(Path(path).read_text(encoding="utf-8"))

"""Exhaustive ground truth at small n.

Full scans walk every edge bitset of K_n (2^C(n,2) graphs) in natural
integer order; work is split into contiguous chunks and reduced by
associative operations (sum, min-with-witness), so results are identical
for any thread count.  Witness ties break toward the smallest bitset value.

Guards are explicit: scans refuse oversized inputs instead of silently
truncating, and the full-scan guard can only be overridden together with an
explicit time budget.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

import numpy as np

from .errors import BudgetExceededError, WorkGuardError
from .graphs import LabeledGraph, clique_edge_masks, count_cliques

FULL_SCAN_VERTEX_LIMIT = 8
IE_VERTEX_LIMIT = 5
FAMILY_VERTEX_LIMIT = 7
COMBINATION_GUARD = 1 << 30

_CHUNK_BITS = 22


@dataclass(frozen=True)
class EnumerationResult:
    n: int
    ell: int
    count: int
    graphs_scanned: int
    elapsed: float
    threads: int


@dataclass(frozen=True)
class SupersatResult:
    n: int
    ell: int
    m: int
    min_count: int
    witness: LabeledGraph


@dataclass(frozen=True)
class ValidationReport:
    n: int
    ell: int
    covers_all: bool
    uncovered_example: LabeledGraph | None
    max_clique_copies: int
    epsilon_budget: Fraction
    size_ok: bool | None

    @property
    def copies_within_budget(self) -> bool:
        return self.max_clique_copies <= self.epsilon_budget


def count_free_graphs(
    n: int,
    ell: int,
    threads: int = 1,
    override_guard: bool = False,
    budget_secs: float | None = None,
) -> EnumerationResult:
    """Exact number of graphs on {0..n-1} with no ell-clique, by full scan."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if ell < 2:
        raise ValueError(f"need ell >= 2, got {ell}")
    if threads < 1:
        raise ValueError(f"need threads >= 1, got {threads}")
    if n > FULL_SCAN_VERTEX_LIMIT:
        if not override_guard:
            raise WorkGuardError(
                f"full scan refused: n={n} exceeds {FULL_SCAN_VERTEX_LIMIT} "
                f"(2^{comb(n, 2)} graphs); pass override_guard with a time budget"
            )
        if budget_secs is None:
            raise ValueError("overriding the scan guard requires an explicit time budget")

    start = time.monotonic()
    n_bits = comb(n, 2)
    total = 1 << n_bits
    dtype = np.uint32 if n_bits <= 32 else np.uint64
    masks = np.array(clique_edge_masks(n, ell), dtype=dtype)

    if masks.size == 0:  # ell > n: every graph qualifies
        return EnumerationResult(n, ell, total, total, time.monotonic() - start, threads)

    chunk = 1 << _CHUNK_BITS
    ranges = [(lo, min(lo + chunk, total)) for lo in range(0, total, chunk)]

    def scan(rng: tuple[int, int]) -> int:
        lo, hi = rng
        arr = np.arange(lo, hi, dtype=dtype)
        ok = np.ones(hi - lo, dtype=bool)
        masked = np.empty_like(arr)
        hit = np.empty(hi - lo, dtype=bool)
        for m in masks:
            np.bitwise_and(arr, m, out=masked)
            np.not_equal(masked, m, out=hit)
            np.logical_and(ok, hit, out=ok)
        return int(np.count_nonzero(ok))

    def check_budget() -> None:
        if budget_secs is not None and time.monotonic() - start > budget_secs:
            raise BudgetExceededError(
                f"scan exceeded the {budget_secs}s budget after "
                f"{time.monotonic() - start:.1f}s"
            )

    count = 0
    if threads == 1:
        for rng in ranges:
            check_budget()
            count += scan(rng)
    else:
        batch = threads * 2
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for base in range(0, len(ranges), batch):
                check_budget()
                count += sum(pool.map(scan, ranges[base : base + batch]))
    return EnumerationResult(n, ell, count, total, time.monotonic() - start, threads)


def count_free_graphs_ie(n: int) -> int:
    """Triangle-free count by inclusion-exclusion over triangle edge sets.

    Independent of the full scan: sums (-1)^|S| 2^(C(n,2) - |union S|) over
    all 2^C(n,3) sets S of triangles.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if n > IE_VERTEX_LIMIT:
        raise WorkGuardError(
            f"inclusion-exclusion refused: n={n} exceeds {IE_VERTEX_LIMIT} "
            f"(2^C(n,3) terms)"
        )
    n_bits = comb(n, 2)
    triangles = clique_edge_masks(n, 3)
    total = 0
    for subset in range(1 << len(triangles)):
        union = 0
        bits = subset
        while bits:
            low = bits & -bits
            union |= triangles[low.bit_length() - 1]
            bits ^= low
        sign = -1 if subset.bit_count() & 1 else 1
        total += sign * (1 << (n_bits - union.bit_count()))
    return total


def _next_combination(v: int) -> int:
    # Gosper's hack: next larger int with the same popcount.
    u = v & -v
    w = v + u
    return w | (((v ^ w) >> 2) // u)


def _combination_chunks(n_bits: int, m: int, chunk: int):
    """All m-subsets of n_bits bits as integer arrays, in increasing order."""
    dtype = np.uint32 if n_bits <= 32 else np.uint64
    if m == 0:
        yield np.zeros(1, dtype=dtype)
        return
    limit = 1 << n_bits
    v = (1 << m) - 1
    buf = []
    while v < limit:
        buf.append(v)
        if len(buf) == chunk:
            yield np.array(buf, dtype=dtype)
            buf = []
        v = _next_combination(v)
    if buf:
        yield np.array(buf, dtype=dtype)


def min_cliques_at_edge_count(n: int, ell: int, m: int) -> SupersatResult:
    """Exact minimum of the ell-clique count over all m-edge graphs on [n]."""
    if n < 1 or n > FULL_SCAN_VERTEX_LIMIT:
        raise WorkGuardError(
            f"edge-budget scan refused: need 1 <= n <= {FULL_SCAN_VERTEX_LIMIT}, got {n}"
        )
    if ell < 1:
        raise ValueError(f"need ell >= 1, got {ell}")
    n_bits = comb(n, 2)
    if not 0 <= m <= n_bits:
        raise ValueError(f"need 0 <= m <= C(n,2)={n_bits}, got m={m}")
    if comb(n_bits, m) > COMBINATION_GUARD:
        raise WorkGuardError(
            f"edge-budget scan refused: C({n_bits},{m}) combinations exceed 2^30"
        )
    masks = np.array(
        clique_edge_masks(n, ell), dtype=np.uint32 if n_bits <= 32 else np.uint64
    )
    best_count: int | None = None
    best_mask = 0
    for arr in _combination_chunks(n_bits, m, 1 << 18):
        counts = np.zeros(arr.shape, dtype=np.int64)
        for mask in masks:
            counts += (arr & mask) == mask
        i = int(np.argmin(counts))  # first minimum: smallest bitset in the chunk
        if best_count is None or int(counts[i]) < best_count:
            best_count = int(counts[i])
            best_mask = int(arr[i])
    return SupersatResult(n, ell, m, best_count, LabeledGraph(n, best_mask))


@lru_cache(maxsize=16)
def _clique_free_vector(n: int, ell: int) -> np.ndarray:
    """Boolean vector over all 2^C(n,2) bitsets: True iff no ell-clique."""
    n_bits = comb(n, 2)
    arr = np.arange(1 << n_bits, dtype=np.uint64)
    free = np.ones(arr.shape, dtype=bool)
    for mask in clique_edge_masks(n, ell):
        np.logical_and(free, (arr & np.uint64(mask)) != np.uint64(mask), out=free)
    free.setflags(write=False)
    return free


def maximal_free_family(n: int, ell: int) -> list[LabeledGraph]:
    """All edge-maximal ell-clique-free graphs on [n], by full scan.

    Every clique-free graph extends to an edge-maximal one, so the family
    covers all of them; members have zero ell-cliques by construction.
    """
    if n < 1 or n > FAMILY_VERTEX_LIMIT:
        raise WorkGuardError(
            f"maximal-family scan refused: need 1 <= n <= {FAMILY_VERTEX_LIMIT}, got {n}"
        )
    if ell < 2:
        raise ValueError(f"need ell >= 2, got {ell}")
    n_bits = comb(n, 2)
    free = _clique_free_vector(n, ell)
    arr = np.arange(1 << n_bits, dtype=np.uint64)
    can_grow = np.zeros(arr.shape, dtype=bool)
    for b in range(n_bits):
        bit = np.uint64(1 << b)
        lacks = (arr & bit) == 0
        can_grow |= lacks & free[arr | bit]
    maximal = free & ~can_grow
    return [LabeledGraph(n, int(g)) for g in np.flatnonzero(maximal)]


def validate_container_family(
    n: int,
    ell: int,
    family: list[LabeledGraph],
    epsilon,
    container_log2_bound: float | None = None,
) -> ValidationReport:
    """Check the family against the container conclusions by full scan.

    Coverage scans all 2^C(n,2) graphs; the copy budget is epsilon * C(n,ell)
    held exactly as a rational.  When ``container_log2_bound`` (log2 of the
    container-count bound) is supplied, ``size_ok`` compares ln|family|
    against that bound read on the natural-log scale.
    """
    if n < 1 or n > FAMILY_VERTEX_LIMIT:
        raise WorkGuardError(
            f"coverage scan refused: need 1 <= n <= {FAMILY_VERTEX_LIMIT}, got {n}"
        )
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ValueError(f"need epsilon > 0, got {epsilon}")
    for g in family:
        if g.n != n:
            raise ValueError(f"family member has n={g.n}, expected {n}")
    n_bits = comb(n, 2)
    free = _clique_free_vector(n, ell)
    arr = np.arange(1 << n_bits, dtype=np.uint64)
    covered = np.zeros(arr.shape, dtype=bool)
    for g in family:
        member = np.uint64(g.edges)
        covered |= (arr & ~member) == 0
    uncovered = free & ~covered
    covers_all = not bool(uncovered.any())
    example = None
    if not covers_all:
        example = LabeledGraph(n, int(np.flatnonzero(uncovered)[0]))
    max_copies = max((count_cliques(g, ell) for g in family), default=0)
    size_ok = None
    if container_log2_bound is not None:
        # the bound value is 2^container_log2_bound and caps ln|family|
        if len(family) <= 1:
            size_ok = True
        else:
            size_ok = math.log2(math.log(len(family))) <= container_log2_bound
    return ValidationReport(
        n=n,
        ell=ell,
        covers_all=covers_all,
        uncovered_example=example,
        max_clique_copies=max_copies,
        epsilon_budget=epsilon * comb(n, ell),
        size_ok=size_ok,
    )

"""Co-degree statistics of the clique hypergraph of K_n.

For 3 <= ell <= n the hypergraph has one vertex per edge of K_n and one
hyperedge per ell-clique, so it is C(ell,2)-uniform of order C(n,2) with
C(n,ell) hyperedges.  Graphs without an ell-clique are exactly its
independent sets.

Every statistic comes in two modes: exact arbitrary-precision integers for
desk-scale n, and closed forms over log2(n) (see :mod:`cliquelab.logmag`)
so the same quantities remain computable when n is astronomically large.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

import numpy as np

from .errors import WorkGuardError
from .graphs import LabeledGraph, clique_edge_masks
from .logmag import LN2, LogMagnitude, ln_comb_shifted, log_sum_ln

# Exhaustive co-degree scans walk all 2^C(n,2) edge subsets; 28 bits is the cap.
BRUTE_VERTEX_LIMIT = 8


@dataclass(frozen=True)
class CliqueHypergraphStats:
    """Derived parameters of the clique hypergraph.

    ``order`` is the number of hypergraph vertices C(n,2), ``hyperedge_count``
    is C(n,ell), ``degree`` is the (uniform) vertex degree C(n-2,ell-2) and
    ``delta_table[j-1]`` is the maximum co-degree over j-element vertex sets,
    for j = 1..r.  Fields are ints in exact mode and LogMagnitude in log mode.
    """

    n: object
    ell: int
    r: int
    order: object
    hyperedge_count: object
    degree: object
    delta_table: tuple

    @property
    def is_exact(self) -> bool:
        return isinstance(self.n, int)

    @property
    def ln_n(self) -> float:
        return _as_ln(self.n)


def _as_ln(x) -> float:
    if isinstance(x, LogMagnitude):
        return x.ln
    if x == 0:
        return float("-inf")
    return math.log(x)


def hypergraph_params(n: int, ell: int) -> CliqueHypergraphStats:
    """Exact statistics for integer n, with the full maximum co-degree table."""
    if ell < 3:
        raise ValueError(f"clique size must be at least 3, got {ell}")
    if ell > n:
        raise ValueError(f"need ell <= n, got ell={ell}, n={n}")
    r = comb(ell, 2)
    return CliqueHypergraphStats(
        n=n,
        ell=ell,
        r=r,
        order=comb(n, 2),
        hyperedge_count=comb(n, ell),
        degree=comb(n - 2, ell - 2),
        delta_table=tuple(max_codegree(n, ell, j) for j in range(1, r + 1)),
    )


def hypergraph_params_log(log2_n: float, ell: int) -> CliqueHypergraphStats:
    """Closed-form statistics with n supplied as log2(n)."""
    if ell < 3:
        raise ValueError(f"clique size must be at least 3, got {ell}")
    if log2_n < math.log2(ell):
        raise ValueError(f"need n >= ell: log2_n={log2_n} < log2({ell})")
    ln_n = log2_n * LN2
    r = comb(ell, 2)
    delta = tuple(
        LogMagnitude(ln_comb_shifted(ln_n, v_min(j), ell - v_min(j)))
        for j in range(1, r + 1)
    )
    return CliqueHypergraphStats(
        n=LogMagnitude(ln_n),
        ell=ell,
        r=r,
        order=LogMagnitude(ln_comb_shifted(ln_n, 0, 2)),
        hyperedge_count=LogMagnitude(ln_comb_shifted(ln_n, 0, ell)),
        degree=LogMagnitude(ln_comb_shifted(ln_n, 2, ell - 2)),
        delta_table=delta,
    )


def spanned_vertices(sigma: LabeledGraph) -> int:
    """Number of vertices incident to at least one edge of sigma."""
    mask = 0
    for u, v in sigma.edge_list():
        mask |= (1 << u) | (1 << v)
    return mask.bit_count()


def codegree(n: int, ell: int, sigma: LabeledGraph) -> int:
    """Number of ell-cliques of K_n whose edge set contains sigma.

    Equals C(n - v, ell - v) where v is the number of spanned vertices,
    and 0 when v exceeds ell.
    """
    if sigma.edges == 0:
        raise ValueError("co-degree of the empty edge set is not defined")
    if sigma.n > n:
        raise ValueError(f"sigma lives on {sigma.n} vertices > n={n}")
    v = spanned_vertices(sigma)
    if v > ell:
        return 0
    return comb(n - v, ell - v)


def v_min(j: int) -> int:
    """Smallest vertex count v with C(v,2) >= j edges."""
    if j < 1:
        raise ValueError(f"need j >= 1, got {j}")
    v = 1
    while comb(v, 2) < j:
        v += 1
    return v


def max_codegree(n: int, ell: int, j: int) -> int:
    """Closed-form maximum co-degree over j-element edge sets.

    The co-degree depends only on the spanned-vertex count, any j edges on
    v_min(j) <= ell vertices embed into an ell-clique, and C(n-v, ell-v)
    decreases in v, so the maximum is C(n - v_min(j), ell - v_min(j)).
    """
    r = comb(ell, 2)
    if not 1 <= j <= r:
        raise ValueError(f"need 1 <= j <= C(ell,2)={r}, got j={j}")
    if ell > n:
        raise ValueError(f"need ell <= n, got ell={ell}, n={n}")
    v = v_min(j)
    if v > ell:
        return 0
    return comb(n - v, ell - v)


def brute_max_codegree(n: int, ell: int, j: int) -> int:
    """Exhaustive maximum co-degree: max over ALL j-subsets of E(K_n).

    Independent oracle for :func:`max_codegree`; never uses the closed form.
    """
    r = comb(ell, 2)
    if not 1 <= j <= r:
        raise ValueError(f"need 1 <= j <= C(ell,2)={r}, got j={j}")
    return brute_max_codegree_table(n, ell)[j - 1]


@lru_cache(maxsize=32)
def brute_max_codegree_table(n: int, ell: int) -> tuple:
    """Exhaustive (Delta_1 .. Delta_r) in one pass over all edge subsets.

    Seeds an indicator over the 2^C(n,2) subset lattice with the clique edge
    masks and runs a superset-counting transform, after which entry sigma
    holds the exhaustively counted number of cliques containing sigma; the
    table is the per-popcount maximum.  The transform is an associative
    sum over disjoint lattice slices, so the result is reduction-order
    independent.
    """
    if n > BRUTE_VERTEX_LIMIT:
        raise WorkGuardError(
            f"brute co-degree scan refused: n={n} exceeds {BRUTE_VERTEX_LIMIT} "
            f"(2^C(n,2) subsets)"
        )
    if ell < 2 or ell > n:
        raise ValueError(f"need 2 <= ell <= n, got ell={ell}, n={n}")
    n_bits = comb(n, 2)
    r = comb(ell, 2)
    counts = np.zeros(1 << n_bits, dtype=np.uint8)
    for mask in clique_edge_masks(n, ell):
        counts[mask] = 1
    for b in range(n_bits):
        view = counts.reshape(-1, 2, 1 << b)
        view[:, 0, :] += view[:, 1, :]
    best = np.zeros(n_bits + 1, dtype=np.int64)
    chunk = 1 << 22
    for lo in range(0, 1 << n_bits, chunk):
        hi = min(lo + chunk, 1 << n_bits)
        pc = np.bitwise_count(np.arange(lo, hi, dtype=np.uint32)).astype(np.uint16)
        key = (pc << np.uint16(8)) | counts[lo:hi]
        hist = np.bincount(key, minlength=(n_bits + 1) << 8)
        hist = hist.reshape(n_bits + 1, 256)
        for size in range(n_bits + 1):
            nonzero = np.flatnonzero(hist[size])
            if nonzero.size:
                best[size] = max(best[size], int(nonzero[-1]))
    return tuple(int(best[j]) for j in range(1, r + 1))


def delta_function(n, ell: int, p):
    """The weighted co-degree sum controlling the container condition:

        2^(C(r,2)-1) * sum_{j=2..r} 2^(-C(j-1,2)) * Delta_j / (d * p^(j-1))

    Exact mode (int n, rational p) returns a Fraction; log mode (LogMagnitude
    n or p) returns a LogMagnitude.
    """
    if isinstance(n, LogMagnitude) or isinstance(p, LogMagnitude):
        stats = (
            hypergraph_params_log(n.log2, ell)
            if isinstance(n, LogMagnitude)
            else hypergraph_params(n, ell)
        )
        p_log = p if isinstance(p, LogMagnitude) else LogMagnitude.from_value(Fraction(p))
        return delta_function_log(stats, p_log)
    return delta_function_exact(n, ell, p)


def delta_function_exact(n: int, ell: int, p) -> Fraction:
    """Exact rational evaluation of the weighted co-degree sum."""
    p = Fraction(p)
    if not 0 < p <= 1:
        raise ValueError(f"need 0 < p <= 1, got p={p}")
    stats = hypergraph_params(n, ell)
    r = stats.r
    total = Fraction(0)
    for j in range(2, r + 1):
        dj = stats.delta_table[j - 1]
        total += Fraction(dj, 2 ** comb(j - 1, 2)) / (Fraction(stats.degree) * p ** (j - 1))
    return Fraction(2 ** (comb(r, 2) - 1)) * total


def delta_function_log(stats: CliqueHypergraphStats, p: LogMagnitude) -> LogMagnitude:
    """Log-domain evaluation via sorted log-sum-exp; accepts either-mode stats.

    This is the single evaluation path used by the certificate checks.
    """
    if p.ln > 0:
        raise ValueError("need 0 < p <= 1")
    r = stats.r
    lead = (comb(r, 2) - 1) * LN2
    ln_d = _as_ln(stats.degree)
    terms = []
    for j in range(2, r + 1):
        ln_dj = _as_ln(stats.delta_table[j - 1])
        if ln_dj == float("-inf"):
            continue
        terms.append(lead - comb(j - 1, 2) * LN2 + ln_dj - ln_d - (j - 1) * p.ln)
    return LogMagnitude(log_sum_ln(terms))

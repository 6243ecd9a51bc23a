"""Certificate engine: evaluate the container hypotheses and the full
inequality chain at an explicit, possibly astronomical, n.

Every "sufficiently large n" phrase is replaced by a concrete pass/fail with
a signed log-scale margin at the given n.  Both sides of each inequality are
carried as a*ln(n) + b with the coefficient a kept symbolic, so margins stay
exact even when ln(n) ~ 1e19 and a direct float subtraction would cancel
(steps whose two sides share the same power of n decide on b alone).

Chain constants.  Since C(n-2, ell-2) <= n^(ell-2) holds for every n, a
degree floor of the form n^(ell-1.9) can never be satisfied; the tightest
clean power that the size constraint ell <= (ln n)^(1/4)/2 guarantees is

    d = C(n-2, ell-2) >= (n/ell)^(ell-2) >= n^(ell-2.1)

(valid once ell^(ell-2) <= n^0.1, which holds well below the size
threshold), and the matching per-term exponent constant is
1.6 = (ell - 1/2) - (ell - 2.1).  Those repaired constants keep every link
of the chain simultaneously satisfiable and are what this module checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .hypergraph import (
    CliqueHypergraphStats,
    delta_function_log,
    hypergraph_params_log,
    v_min,
)
from .logmag import LN2, LogMagnitude

DEGREE_EXPONENT_DROP = 2.1
TERM_EXPONENT_CONST = 1.6
ANALYTIC_FLOOR = 2.0 - 1.0 / (2.0 * math.e)

SEARCH_CAP_LOG2_N = 2.0**64
_BISECTION_STEPS = 64

LOG_BASES = ("e", "2")


@dataclass(frozen=True)
class ContainerParams:
    """delta in (0,1), epsilon = delta*e^(-ell), p = n^(-(ln ell)/(2 ell^2))."""

    delta: float
    epsilon: LogMagnitude
    p: LogMagnitude
    c: int


@dataclass(frozen=True)
class StepCheck:
    """One evaluated inequality: pass iff the signed log margin is >= 0."""

    step: str
    kind: str  # "hypothesis" or "chain"
    relation: str  # "<=" or ">="
    lhs_log: float
    rhs_log: float
    margin_log: float
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class CertificateReport:
    log2_n: float
    ell: int
    delta: float
    c: int
    log_base: str
    params: ContainerParams
    hypotheses: tuple[StepCheck, ...]
    proof_chain: tuple[StepCheck, ...]
    container_log2_bound: float
    target_log2: float
    overall_pass: bool

    @property
    def ordered_steps(self) -> tuple[StepCheck, ...]:
        """Size constraint first, then the hypotheses, then the chain."""
        if not self.proof_chain:
            return self.hypotheses
        return (self.proof_chain[0], *self.hypotheses, *self.proof_chain[1:])

    @property
    def first_failing_step(self) -> str | None:
        for step in self.ordered_steps:
            if not step.passed:
                return step.step
        return None


@dataclass(frozen=True)
class ThresholdSearch:
    ell: int
    delta: float
    c: int
    reachable: bool
    threshold_log2_n: float | None
    first_failing_below: str | None
    report_at_threshold: CertificateReport | None


@dataclass(frozen=True)
class _Affine:
    """a*ln(n) + b; b may carry slowly varying corrections evaluated at n."""

    a: float
    b: float

    def value(self, ln_n: float) -> float:
        return self.a * ln_n + self.b

    def __add__(self, other: "_Affine") -> "_Affine":
        return _Affine(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "_Affine") -> "_Affine":
        return _Affine(self.a - other.a, self.b - other.b)

    def scaled(self, k: float) -> "_Affine":
        return _Affine(self.a * k, self.b * k)


def _const(b: float) -> _Affine:
    return _Affine(0.0, b)


def _affine_comb_shifted(ln_n: float, shift: int, k: int) -> _Affine:
    """ln C(n - shift, k) as k*ln(n) plus a bounded correction."""
    b = -math.lgamma(k + 1)
    for i in range(k):
        a_i = shift + i
        if a_i:
            gap = math.log(a_i) - ln_n
            x = math.exp(gap) if gap > -745.0 else 0.0
            b += math.log1p(-x)
    return _Affine(float(k), b)


def _validate(ell: int, delta: float, c: int) -> None:
    if ell < 3:
        raise ValueError(f"need ell >= 3, got {ell}")
    if not 0 < delta < 1:
        raise ValueError(f"need 0 < delta < 1, got {delta}")
    if c < 1:
        raise ValueError(f"need c >= 1, got {c}")


def corollary_params(log2_n: float, ell: int, delta: float, c: int) -> ContainerParams:
    """The parameter choice driving the whole chain."""
    _validate(ell, delta, c)
    if log2_n <= 0:
        raise ValueError(f"need log2_n > 0, got {log2_n}")
    ln_n = log2_n * LN2
    exponent = math.log(ell) / (2.0 * ell * ell)
    return ContainerParams(
        delta=float(delta),
        epsilon=LogMagnitude(math.log(delta) - ell),
        p=LogMagnitude(-exponent * ln_n),
        c=c,
    )


def _step(name, kind, relation, lhs: _Affine, rhs: _Affine, ln_n, detail="") -> StepCheck:
    diff = (rhs - lhs) if relation == "<=" else (lhs - rhs)
    margin = diff.b if diff.a == 0.0 else diff.value(ln_n)
    return StepCheck(
        name, kind, relation, lhs.value(ln_n), rhs.value(ln_n), margin, margin >= 0, detail
    )


def _worst_j(name, kind, relation, triples, ln_n) -> StepCheck:
    """Aggregate a j-indexed family of inequalities by its worst margin."""
    worst = None
    for j, lhs, rhs in triples:
        diff = (rhs - lhs) if relation == "<=" else (lhs - rhs)
        margin = diff.b if diff.a == 0.0 else diff.value(ln_n)
        if worst is None or margin < worst[0]:
            worst = (margin, j, lhs, rhs)
    margin, j, lhs, rhs = worst
    return StepCheck(
        name,
        kind,
        relation,
        lhs.value(ln_n),
        rhs.value(ln_n),
        margin,
        margin >= 0,
        f"worst j={j}",
    )


def _inner_log(ln_value: float, log_base: str) -> float:
    """Convert a natural log to the base used for the bound's inner logs."""
    return ln_value if log_base == "e" else ln_value / LN2


def check_container_hypotheses(
    stats: CliqueHypergraphStats, params: ContainerParams, log_base: str = "e"
) -> CertificateReport:
    """Evaluate only the two container-theorem hypotheses (partial report)."""
    ln_n = stats.ln_n
    hyp = _hypothesis_steps(stats, params, ln_n)
    return CertificateReport(
        log2_n=ln_n / LN2,
        ell=stats.ell,
        delta=params.delta,
        c=params.c,
        log_base=log_base,
        params=params,
        hypotheses=hyp,
        proof_chain=(),
        container_log2_bound=container_count_log2(stats, params, log_base),
        target_log2=(math.log(params.delta) + 2 * ln_n - math.log(stats.ell)) / LN2,
        overall_pass=all(s.passed for s in hyp),
    )


def _hypothesis_steps(stats, params, ln_n) -> tuple[StepCheck, StepCheck]:
    r = stats.r
    # exponent of p in ln(n) units, exact from the parameter definition
    p_coeff = params.p.ln / ln_n if ln_n else 0.0
    ln_delta_hp = delta_function_log(stats, params.p).ln
    hyp_p = _step(
        "hypothesis_p_range",
        "hypothesis",
        "<=",
        _Affine(p_coeff, 0.0),
        _const(-(math.log(params.c) + 2 * r * math.log(r))),
        ln_n,
        "p <= 1/(c r^(2r))",
    )
    hyp_delta = _step(
        "hypothesis_codegree_weight",
        "hypothesis",
        "<=",
        _const(ln_delta_hp),
        _const(params.epsilon.ln - math.log(params.c) - r * math.log(r)),
        ln_n,
        "weighted co-degree sum <= eps/(c r^r)",
    )
    return (hyp_p, hyp_delta)


def container_count_log2(
    stats: CliqueHypergraphStats, params: ContainerParams, log_base: str = "e"
) -> float:
    """log2 of c * r^(3r) * (1 + log(1/eps)) * N * p * log(1/p).

    Returns -inf when p = 1 (the log(1/p) factor makes the bound exactly 0).
    """
    if log_base not in LOG_BASES:
        raise ValueError(f"log_base must be one of {LOG_BASES}")
    r = stats.r
    ln_p = params.p.ln
    if ln_p >= 0:
        return float("-inf")
    one_plus = 1.0 + _inner_log(-params.epsilon.ln, log_base)
    ln_bound = (
        math.log(params.c)
        + 3 * r * math.log(r)
        + math.log(one_plus)
        + _as_ln(stats.order)
        + ln_p
        + math.log(_inner_log(-ln_p, log_base))
    )
    return ln_bound / LN2


def _as_ln(x) -> float:
    return x.ln if isinstance(x, LogMagnitude) else math.log(x)


def verify_proof_chain(
    log2_n: float, ell: int, delta: float, c: int, log_base: str = "e"
) -> CertificateReport:
    """Evaluate every displayed inequality of the counting chain at the given n."""
    _validate(ell, delta, c)
    if log_base not in LOG_BASES:
        raise ValueError(f"log_base must be one of {LOG_BASES}")
    if log2_n <= 0:
        raise ValueError(f"need log2_n > 0, got {log2_n}")
    params = corollary_params(log2_n, ell, delta, c)
    if log2_n < math.log2(ell):
        return _degenerate_report(log2_n, ell, delta, c, log_base, params)

    stats = hypergraph_params_log(log2_n, ell)
    r = stats.r
    ln_n = log2_n * LN2
    q = math.log(ell) / (2.0 * ell * ell)
    ln_c = math.log(c)
    p_aff = _Affine(-q, 0.0)
    d_aff = _affine_comb_shifted(ln_n, 2, ell - 2)
    n_order_aff = _affine_comb_shifted(ln_n, 0, 2)
    dj_aff = {
        j: _affine_comb_shifted(ln_n, v_min(j), ell - v_min(j)) for j in range(2, r + 1)
    }
    ln_delta_hp = delta_function_log(stats, params.p).ln

    chain = [
        _step(
            "size_constraint",
            "chain",
            ">=",
            _Affine(1.0, 0.0),
            _const(float((2 * ell) ** 4)),
            ln_n,
            "ell <= (ln n)^(1/4)/2, phrased as ln n >= (2 ell)^4",
        ),
        _worst_j(
            "codegree_power_bound",
            "chain",
            "<=",
            (
                (j, dj_aff[j], _Affine(ell - 0.5 - math.sqrt(2 * j), 0.0))
                for j in range(2, r + 1)
            ),
            ln_n,
        ),
        _step(
            "degree_power_floor",
            "chain",
            ">=",
            d_aff,
            _Affine(ell - DEGREE_EXPONENT_DROP, 0.0),
            ln_n,
            f"d >= n^(ell-{DEGREE_EXPONENT_DROP})",
        ),
        _worst_j(
            "term_power_bound",
            "chain",
            "<=",
            (
                (
                    j,
                    dj_aff[j] - d_aff - p_aff.scaled(j - 1),
                    _Affine(TERM_EXPONENT_CONST - math.sqrt(2 * j) + (j - 1) * q, 0.0),
                )
                for j in range(2, r + 1)
            ),
            ln_n,
        ),
        _worst_j(
            "exponent_gap_floor",
            "chain",
            ">=",
            (
                (j, _const(math.sqrt(2 * j) - (j - 1) * q), _const(ANALYTIC_FLOOR))
                for j in range(2, r + 1)
            ),
            ln_n,
        ),
        _worst_j(
            "term_quarter_bound",
            "chain",
            "<=",
            (
                (j, dj_aff[j] - d_aff - p_aff.scaled(j - 1), _Affine(-0.25, 0.0))
                for j in range(2, r + 1)
            ),
            ln_n,
        ),
        # the weighted sum is not affine in ln(n); its value enters directly
        _step(
            "codegree_weight_quarter_power",
            "chain",
            "<=",
            _const(ln_delta_hp),
            _Affine(-0.25, float(ell**4)),
            ln_n,
            "weighted co-degree sum <= e^(ell^4) n^(-1/4)",
        ),
        _step(
            "quarter_power_target",
            "chain",
            "<=",
            _Affine(-0.25, float(ell**4)),
            _const(math.log(delta) - ln_c - ell**4),
            ln_n,
            "e^(ell^4) n^(-1/4) <= delta/(c e^(ell^4))",
        ),
        _step(
            "p_power_bound",
            "chain",
            "<=",
            p_aff,
            _const(-(ln_c + 4 * ell * ell * math.log(ell))),
            ln_n,
            "p <= 1/(c ell^(4 ell^2))",
        ),
    ]

    # Final count display: line 1 (the container bound itself), line 2 (the
    # ell-power relaxation at the p cap), line 3 (the delta n^2/ell target).
    one_plus = 1.0 + _inner_log(-params.epsilon.ln, log_base)
    if params.p.ln < 0:
        line1 = (
            n_order_aff
            + p_aff
            + _const(
                ln_c
                + 3 * r * math.log(r)
                + math.log(one_plus)
                + math.log(_inner_log(-params.p.ln, log_base))
            )
        )
    else:
        line1 = _const(float("-inf"))
    line2 = _Affine(
        2.0,
        3 * ell * ell * math.log(ell)
        - 4 * ell * ell * math.log(ell)
        + math.log(one_plus)
        + math.log(_inner_log(ln_c + 7 * ell * ell * math.log(ell), log_base)),
    )
    target = _Affine(2.0, math.log(delta) - math.log(ell))
    chain.append(_step("count_bound_relaxation", "chain", "<=", line1, line2, ln_n))
    chain.append(_step("count_bound_target", "chain", "<=", line2, target, ln_n))

    hyp = _hypothesis_steps(stats, params, ln_n)
    steps = (*chain[:1], *hyp, *chain[1:])
    return CertificateReport(
        log2_n=log2_n,
        ell=ell,
        delta=delta,
        c=c,
        log_base=log_base,
        params=params,
        hypotheses=hyp,
        proof_chain=tuple(chain),
        container_log2_bound=line1.value(ln_n) / LN2,
        target_log2=target.value(ln_n) / LN2,
        overall_pass=all(s.passed for s in steps),
    )


def _degenerate_report(log2_n, ell, delta, c, log_base, params) -> CertificateReport:
    """n < ell: the hypergraph is empty; everything n-dependent fails."""
    neg = float("-inf")
    fail = StepCheck(
        "size_constraint",
        "chain",
        ">=",
        log2_n * LN2,
        float((2 * ell) ** 4),
        log2_n * LN2 - (2 * ell) ** 4,
        False,
        "n below ell: quantities undefined",
    )
    rest = tuple(
        StepCheck(name, kind, "<=", float("inf"), neg, neg, False, "n below ell")
        for name, kind in (
            ("hypothesis_p_range", "hypothesis"),
            ("hypothesis_codegree_weight", "hypothesis"),
            ("codegree_power_bound", "chain"),
            ("degree_power_floor", "chain"),
            ("term_power_bound", "chain"),
            ("exponent_gap_floor", "chain"),
            ("term_quarter_bound", "chain"),
            ("codegree_weight_quarter_power", "chain"),
            ("quarter_power_target", "chain"),
            ("p_power_bound", "chain"),
            ("count_bound_relaxation", "chain"),
            ("count_bound_target", "chain"),
        )
    )
    hyp = tuple(s for s in rest if s.kind == "hypothesis")
    chain = (fail, *(s for s in rest if s.kind == "chain"))
    return CertificateReport(
        log2_n=log2_n,
        ell=ell,
        delta=delta,
        c=c,
        log_base=log_base,
        params=params,
        hypotheses=hyp,
        proof_chain=chain,
        container_log2_bound=neg,
        target_log2=(math.log(delta) + 2 * log2_n * LN2 - math.log(ell)) / LN2,
        overall_pass=False,
    )


def minimal_n_threshold(
    ell: int, delta: float, c: int, log_base: str = "e"
) -> ThresholdSearch:
    """Smallest log2(n) at which the whole chain passes.

    Doubles log2(n) from 1 until the chain passes (capped at 2^64), then
    refines by 64 bisection steps.  Also reports the first failing step just
    below the threshold.
    """
    _validate(ell, delta, c)

    def passes(log2_n: float) -> bool:
        return verify_proof_chain(log2_n, ell, delta, c, log_base).overall_pass

    probe = 1.0
    lo = 0.0
    while not passes(probe):
        lo = probe
        probe *= 2.0
        if probe > SEARCH_CAP_LOG2_N:
            below = verify_proof_chain(lo, ell, delta, c, log_base)
            return ThresholdSearch(
                ell, delta, c, False, None, below.first_failing_step, None
            )
    hi = probe
    for _ in range(_BISECTION_STEPS):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if passes(mid):
            hi = mid
        else:
            lo = mid
    below_step = None
    if lo > 0.0:
        below_step = verify_proof_chain(lo, ell, delta, c, log_base).first_failing_step
    return ThresholdSearch(
        ell,
        delta,
        c,
        True,
        hi,
        below_step,
        verify_proof_chain(hi, ell, delta, c, log_base),
    )

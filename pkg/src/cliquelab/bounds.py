"""Closed-form evaluators for the counting bounds.

Covers the Turán lower bound on the number of clique-free graphs, the main
term of its logarithm, the supersaturation edge/copy thresholds and the
two-case inequality analysis that feeds the final count bound.

Quantities accept either an exact integer n (results are exact Fractions or
ints) or a LogMagnitude n (results are LogMagnitudes).  Exact rational
arithmetic is used whenever all inputs are rational, so vanishing
generalized-binomial factors are detected exactly rather than by epsilon.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .graphs import turan_edge_count
from .logmag import LogMagnitude, ln_comb_shifted


@dataclass(frozen=True)
class SupersatThreshold:
    """Edge threshold and guaranteed clique count at t = (ell-1)/(1-delta)."""

    ell: int
    t: Fraction
    edge_threshold: object
    k_value: object


@dataclass(frozen=True)
class CaseCheck:
    name: str
    relation: str
    lhs_ln: float
    rhs_ln: float
    margin_ln: float
    passed: bool


@dataclass(frozen=True)
class CaseReport:
    case: str
    checks: tuple[CaseCheck, ...]

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.checks)


@dataclass(frozen=True)
class BoundsReport:
    ell: int
    delta: Fraction | None
    n: int | None
    log2_n: float | None
    lower_log2: int | None
    weak_floor_log2: object
    main_term_choose2_log2: object
    main_term_half_square_log2: object
    upper_log2: object
    supersat: SupersatThreshold | None
    case_report: CaseReport | None
    exact_log2: float | None


def lower_bound_log2(n: int, ell: int) -> int:
    """log2 of the subgraph-count lower bound: the balanced (ell-1)-partite edge count."""
    if ell < 3 or ell > n:
        raise ValueError(f"need 3 <= ell <= n, got ell={ell}, n={n}")
    return turan_edge_count(n, ell - 1)


def lower_bound_weak_floor(n, ell: int):
    """The weaker displayed floor (n/(ell-1) - 1)^2 * C(ell-1, 2)."""
    if ell < 3:
        raise ValueError(f"need ell >= 3, got {ell}")
    if isinstance(n, LogMagnitude):
        parts = LogMagnitude.from_value(comb(ell - 1, 2))
        shifted = n / LogMagnitude.from_value(ell - 1)
        if shifted.ln <= 0:
            return LogMagnitude.zero()
        # (n/(ell-1) - 1)^2 evaluated through log1p on the log scale
        ln_term = shifted.ln + math.log1p(-math.exp(-shifted.ln))
        return LogMagnitude(2 * ln_term) * parts
    value = Fraction(n, ell - 1) - 1
    return value * value * comb(ell - 1, 2)


def main_term_log2(n, ell: int):
    """(1 - 1/(ell-1)) * C(n,2): the leading term of the count's log2."""
    if ell < 3:
        raise ValueError(f"need ell >= 3, got {ell}")
    coeff = Fraction(ell - 2, ell - 1)
    if isinstance(n, LogMagnitude):
        return LogMagnitude.from_value(coeff) * LogMagnitude(ln_comb_shifted(n.ln, 0, 2))
    return coeff * comb(n, 2)


def main_term_half_square_log2(n, ell: int):
    """The n^2/2 variant of the main term, reported alongside the C(n,2) one."""
    if ell < 3:
        raise ValueError(f"need ell >= 3, got {ell}")
    coeff = Fraction(ell - 2, ell - 1)
    if isinstance(n, LogMagnitude):
        return LogMagnitude.from_value(coeff) * (n * n) / LogMagnitude.from_value(2)
    return coeff * Fraction(n * n, 2)


def upper_bound_log2(n, ell: int, delta):
    """(1 - (1-delta)/(ell-1)) * n^2/2 + delta * n^2/ell, as displayed."""
    delta = Fraction(delta)
    if ell < 3 or not 0 < delta < 1:
        raise ValueError(f"need ell >= 3 and 0 < delta < 1, got ell={ell}, delta={delta}")
    lead = 1 - Fraction(1 - delta, ell - 1)
    if isinstance(n, LogMagnitude):
        nsq = n * n
        return (LogMagnitude.from_value(lead / 2) * nsq) + (
            LogMagnitude.from_value(delta / ell) * nsq
        )
    nsq = Fraction(n * n)
    return lead * nsq / 2 + delta * nsq / ell


def generalized_binomial(x, ell: int):
    """x(x-1)...(x-ell+1)/ell! for real or rational x; exact when x is rational."""
    if ell < 0:
        raise ValueError(f"need ell >= 0, got {ell}")
    if isinstance(x, float):
        out = 1.0
        for i in range(ell):
            out *= x - i
        return out / math.factorial(ell)
    x = Fraction(x)
    out = Fraction(1)
    for i in range(ell):
        out *= x - i
    return out / math.factorial(ell)


def supersat_bound(n, t, ell: int):
    """(n/t)^ell * C(t, ell): guaranteed clique count above the edge threshold."""
    if ell < 1:
        raise ValueError(f"need ell >= 1, got {ell}")
    if isinstance(n, LogMagnitude):
        t = Fraction(t)
        if t <= 0:
            raise ValueError(f"need t > 0, got {t}")
        binom = generalized_binomial(t, ell)
        if binom <= 0:
            return LogMagnitude.zero()
        ratio = n / LogMagnitude.from_value(t)
        return ratio ** ell * LogMagnitude.from_value(binom)
    if isinstance(t, float):
        if t <= 0:
            raise ValueError(f"need t > 0, got {t}")
        return (n / t) ** ell * generalized_binomial(t, ell)
    t = Fraction(t)
    if t <= 0:
        raise ValueError(f"need t > 0, got {t}")
    return (Fraction(n) / t) ** ell * generalized_binomial(t, ell)


def k_threshold(n, ell: int, delta):
    """The supersaturation bound at the substitution t = (ell-1)/(1-delta)."""
    delta = Fraction(delta)
    if ell < 3 or not 0 < delta < 1:
        raise ValueError(f"need ell >= 3 and 0 < delta < 1, got ell={ell}, delta={delta}")
    t = Fraction(ell - 1) / (1 - delta)
    return supersat_bound(n, t, ell)


def supersat_threshold(n, ell: int, delta) -> SupersatThreshold:
    delta = Fraction(delta)
    t = Fraction(ell - 1) / (1 - delta)
    coeff = (1 - 1 / t) / 2
    if isinstance(n, LogMagnitude):
        edge = LogMagnitude.from_value(coeff) * (n * n)
    else:
        edge = coeff * n * n
    return SupersatThreshold(ell=ell, t=t, edge_threshold=edge, k_value=k_threshold(n, ell, delta))


def _as_ln(x) -> float:
    if isinstance(x, LogMagnitude):
        return x.ln
    x = Fraction(x)
    if x <= 0:
        return float("-inf")
    return math.log(x.numerator) - math.log(x.denominator)


def _check(name: str, relation: str, lhs, rhs) -> CaseCheck:
    lhs_ln = _as_ln(lhs)
    rhs_ln = _as_ln(rhs)
    if relation == "<=":
        margin = rhs_ln - lhs_ln
    else:
        margin = lhs_ln - rhs_ln
    return CaseCheck(name, relation, lhs_ln, rhs_ln, margin, margin >= 0)


def case_analysis(n, ell: int, delta) -> CaseReport:
    """Evaluate the applicable case chain for the clique-count threshold.

    For ell >= 1/delta: k >= n^ell/ell^ell > C(n,ell)/e^ell.
    For ell <  1/delta: k >= (n^ell/ell!) * prod(1 - i(1-delta)/(ell-1))
    and that product bound exceeds delta^(1/delta) * C(n,ell).
    The boundary ell = 1/delta belongs to the first case.
    """
    delta = Fraction(delta)
    if ell < 3 or not 0 < delta < 1:
        raise ValueError(f"need ell >= 3 and 0 < delta < 1, got ell={ell}, delta={delta}")
    k_val = k_threshold(n, ell, delta)
    t = Fraction(ell - 1) / (1 - delta)
    log_mode = isinstance(n, LogMagnitude)
    ln_n = n.ln if log_mode else math.log(n)

    if ell >= 1 / delta:
        checks = [_check("t_at_least_ell", ">=", t, Fraction(ell))]
        power_floor_ln = ell * (ln_n - math.log(ell))
        checks.append(
            CaseCheck(
                "k_ge_power_floor",
                ">=",
                _as_ln(k_val),
                power_floor_ln,
                _as_ln(k_val) - power_floor_ln,
                _as_ln(k_val) >= power_floor_ln,
            )
        )
        ln_binom = _ln_choose(n, ell, log_mode)
        rhs_ln = ln_binom - ell
        checks.append(
            CaseCheck(
                "power_floor_exceeds_scaled_binomial",
                ">",
                power_floor_ln,
                rhs_ln,
                power_floor_ln - rhs_ln,
                power_floor_ln > rhs_ln,
            )
        )
        return CaseReport("ell_ge_one_over_delta", tuple(checks))

    # ell < 1/delta: the product expansion of k is an identity, margin 0 exact.
    product = Fraction(1)
    for i in range(1, ell):
        product *= 1 - Fraction(i) * (1 - delta) / (ell - 1)
    if log_mode:
        floor_val = LogMagnitude(ell * ln_n - math.lgamma(ell + 1)) * LogMagnitude.from_value(
            product
        )
    else:
        floor_val = Fraction(n**ell, math.factorial(ell)) * product
    checks = [_check("k_ge_product_floor", ">=", k_val, floor_val)]
    ln_rhs = (1 / float(delta)) * math.log(float(delta)) + _ln_choose(n, ell, log_mode)
    lhs_ln = _as_ln(floor_val)
    checks.append(
        CaseCheck(
            "product_floor_exceeds_scaled_binomial",
            ">",
            lhs_ln,
            ln_rhs,
            lhs_ln - ln_rhs,
            lhs_ln > ln_rhs,
        )
    )
    return CaseReport("ell_lt_one_over_delta", tuple(checks))


def _ln_choose(n, ell: int, log_mode: bool) -> float:
    if log_mode:
        return ln_comb_shifted(n.ln, 0, ell)
    return math.log(comb(n, ell))


def final_count_bound(ell: int, delta, n, family_log2_size):
    """family_log2_size + (1 - (1-delta)/(ell-1)) * n^2/2: the closing display."""
    delta = Fraction(delta)
    if family_log2_size < 0:
        raise ValueError("family_log2_size must be nonnegative")
    lead = 1 - Fraction(1 - delta, ell - 1)
    if isinstance(n, LogMagnitude):
        return float(family_log2_size) + (LogMagnitude.from_value(lead / 2) * n * n).log2
    exponent = lead * Fraction(n * n, 2)
    if isinstance(family_log2_size, (int, Fraction)):
        return Fraction(family_log2_size) + exponent
    return float(family_log2_size) + float(exponent)


def bounds_report(
    ell: int,
    n: int | None = None,
    log2_n: float | None = None,
    delta=None,
    exact_log2: float | None = None,
) -> BoundsReport:
    """Assemble the full report; exactly one of n / log2_n must be given."""
    if (n is None) == (log2_n is None):
        raise ValueError("provide exactly one of n or log2_n")
    if n is not None:
        arg = n
        lower = lower_bound_log2(n, ell)
    else:
        arg = LogMagnitude.from_log2(log2_n)
        lower = None  # the exact partite edge count needs an integer n
    delta_f = Fraction(delta) if delta is not None else None
    return BoundsReport(
        ell=ell,
        delta=delta_f,
        n=n,
        log2_n=log2_n,
        lower_log2=lower,
        weak_floor_log2=lower_bound_weak_floor(arg, ell),
        main_term_choose2_log2=main_term_log2(arg, ell),
        main_term_half_square_log2=main_term_half_square_log2(arg, ell),
        upper_log2=upper_bound_log2(arg, ell, delta_f) if delta_f is not None else None,
        supersat=supersat_threshold(arg, ell, delta_f) if delta_f is not None else None,
        case_report=case_analysis(arg, ell, delta_f) if delta_f is not None else None,
        exact_log2=exact_log2,
    )

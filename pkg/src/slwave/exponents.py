"""Closed-form lifespan-exponent arithmetic for u_tt - u_xx = A|u_t|^p|u|^q + B|u|^r.

The blow-up time of small-amplitude solutions scales like T(eps) ~ C eps^{-k},
where k depends on (p, q, r), on whether the initial speed has zero mean, and
on which estimate (this model's sharp laws, the classical general theory for
smooth nonlinearities, or the higher-dimensional reference formula) is used.
Everything here is exact arithmetic on the exponents; no constants C are
produced.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

BOUNDARY_RTOL = 1e-12


class ExponentSource(Enum):
    THIS_MODEL = "this-model"
    GENERAL_THEORY = "general-theory"
    HIGH_DIM = "high-dim"


class RegimeTag(Enum):
    BELOW_THRESHOLD = "below-threshold"   # p+q <= (r+1)/2
    COMBINED_EFFECT = "combined-effect"   # (r+1)/2 <= p+q <= r
    ABOVE_R = "above-r"                   # p+q >= r


@dataclass(frozen=True)
class ModelParams:
    """Exponents and coefficients of the nonlinearity A|u_t|^p|u|^q + B|u|^r."""

    p: float
    q: float
    r: float
    A: float = 1.0
    B: float = 1.0

    def __post_init__(self):
        if not (self.p > 1.0 and self.q > 1.0 and self.r > 1.0):
            raise ValueError(
                f"exponents must satisfy p, q, r > 1, got p={self.p}, q={self.q}, r={self.r}"
            )
        if self.A < 0.0 or self.B < 0.0:
            raise ValueError(f"coefficients must be nonnegative, got A={self.A}, B={self.B}")

    @property
    def pq(self) -> float:
        return self.p + self.q


@dataclass(frozen=True)
class Regime:
    tag: RegimeTag
    mean_zero: bool
    on_boundary: bool = False


@dataclass(frozen=True)
class LifespanLaw:
    exponent_k: float
    source: ExponentSource
    regime: Regime
    non_integer_inputs: bool = False

    def __post_init__(self):
        if not self.exponent_k > 0.0:
            raise ValueError(f"lifespan exponent must be positive, got {self.exponent_k}")


def _close(a: float, b: float) -> bool:
    return math.isclose(a, b, rel_tol=BOUNDARY_RTOL, abs_tol=0.0)


def classify_regime(params: ModelParams, mean_zero: bool) -> Regime:
    """Place p+q relative to the break points (r+1)/2 and r.

    Boundary ties report the left tag with ``on_boundary`` set; the exponent
    formulas are continuous across the breaks so the choice is observationally
    irrelevant.
    """
    s = params.pq
    lo = (params.r + 1.0) / 2.0
    hi = params.r
    if _close(s, lo):
        return Regime(RegimeTag.BELOW_THRESHOLD, mean_zero, on_boundary=True)
    if _close(s, hi):
        return Regime(RegimeTag.COMBINED_EFFECT, mean_zero, on_boundary=True)
    if s < lo:
        return Regime(RegimeTag.BELOW_THRESHOLD, mean_zero)
    if s < hi:
        return Regime(RegimeTag.COMBINED_EFFECT, mean_zero)
    return Regime(RegimeTag.ABOVE_R, mean_zero)


def lifespan_exponent(params: ModelParams, mean_zero: bool) -> LifespanLaw:
    """Sharp exponent k in T(eps) ~ C eps^{-k} for this model (A, B > 0).

    Nonzero-mean data: k = min(p+q-1, (r-1)/2).
    Zero-mean data:    k = (p+q)(r-1)/(r+1) in the combined-effect range,
                       min(p+q-1, r(r-1)/(r+1)) otherwise.
    """
    regime = classify_regime(params, mean_zero)
    s, r = params.pq, params.r
    if not mean_zero:
        k = min(s - 1.0, (r - 1.0) / 2.0)
    elif regime.tag is RegimeTag.COMBINED_EFFECT:
        k = s * (r - 1.0) / (r + 1.0)
    else:
        k = min(s - 1.0, r * (r - 1.0) / (r + 1.0))
    return LifespanLaw(k, ExponentSource.THIS_MODEL, regime)


def general_theory_exponent(params: ModelParams, mean_zero: bool) -> LifespanLaw:
    """Lower-bound exponent from the general small-data theory for smooth terms.

    The theory is stated for integer exponents; real inputs are still
    evaluated, with ``non_integer_inputs`` flagged on the result.
    """
    regime = classify_regime(params, mean_zero)
    s, r = params.pq, params.r
    lo = (r + 1.0) / 2.0
    if s < lo or _close(s, lo):
        k = s - 1.0
    elif not mean_zero:
        k = (r - 1.0) / 2.0
    elif s < r or _close(s, r):
        k = max((r - 1.0) / 2.0, s * (s - 1.0) / (s + 1.0))
    else:
        k = r * (r - 1.0) / (r + 1.0)
    non_integer = not all(
        _close(v, round(v)) for v in (params.p, params.q, params.r)
    )
    return LifespanLaw(k, ExponentSource.GENERAL_THEORY, regime, non_integer_inputs=non_integer)


def improvement_gap(params: ModelParams) -> tuple[float, bool]:
    """Exponent gain of this model over the general theory, zero-mean data.

    Strictly positive in the strict combined range (r+1)/2 < p+q < r.
    Returns ``(gap, in_strict_regime)``; outside the strict range the gap is
    defined to be zero with the flag cleared.
    """
    regime = classify_regime(params, mean_zero=True)
    strict = regime.tag is RegimeTag.COMBINED_EFFECT and not regime.on_boundary
    if not strict:
        return 0.0, False
    k_here = lifespan_exponent(params, mean_zero=True).exponent_k
    k_general = general_theory_exponent(params, mean_zero=True).exponent_k
    return k_here - k_general, True


def highdim_reference_exponent(p: float, r: float, n: int) -> tuple[float, bool]:
    """Reference exponent 2p(r-1)/(2(r+1) - (n-1)p(r-1)) in n space dimensions.

    Returns the exponent together with the validity flag
    (r-1)((n-1)p - 2) < 4.  For n = 1 this reduces to p(r-1)/(r+1); a product
    term |u_t|^p|u|^q corresponds to p replaced with p+q.
    """
    denom = 2.0 * (r + 1.0) - (n - 1) * p * (r - 1.0)
    if denom <= 0.0:
        raise ValueError(f"nonpositive denominator {denom} in the reference formula")
    condition = (r - 1.0) * ((n - 1) * p - 2.0) < 4.0
    return 2.0 * p * (r - 1.0) / denom, condition


def remark_identities(r: float) -> dict:
    """Crossover value of p+q where p+q-1 equals r(r-1)/(r+1), with its bracketing.

    The crossover is (r^2+1)/(r+1) and always lies strictly between (r+1)/2
    and r for r > 1.
    """
    if not r > 1.0:
        raise ValueError(f"need r > 1, got r={r}")
    crossover = (r * r + 1.0) / (r + 1.0)
    return {
        "crossover": crossover,
        "above_half": (r + 1.0) / 2.0 < crossover,
        "below_r": crossover < r,
    }

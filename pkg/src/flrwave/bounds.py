"""Lifespan upper bounds and the blow-up phase diagram.

Three power-type bounds compete below the critical curves.  Writing
d = n(1 - alpha) and T_eps for the lifespan of data of size eps:

    heatlike      T_eps <~ eps^(-(p-1)/(2 - d(p-1)))              p < 1 + 2/d
    wavelike      T_eps <~ eps^(-2p(p-1)/((1-alpha)*gamma))       gamma > 0
    intermediate  T_eps <~ eps^(-(p-1)/(2 - (d+mu-1)(p-1)))       bracket > 0

On the critical curves the bounds degrade to exp(C eps^(-e)) with e from
``critical_bounds``.  ``classify`` assigns each admissible (params, p) the
region label of the sharpest bound (smallest eps-exponent wins as eps -> 0;
exponential bounds never beat an applicable power bound).  Threshold
fractions with nonpositive denominators impose no constraint, i.e. they are
treated as +infinity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from flrwave.exponents import (
    FlrwParams,
    ModelParams,
    flrw_to_model,
    fujita,
    gamma,
    p_c,
)

__all__ = [
    "BoundKind",
    "BoundForm",
    "LifespanBound",
    "RegionLabel",
    "AxisSpec",
    "RegionMap",
    "CRITICAL_TOL",
    "heatlike_exponent",
    "wavelike_exponent",
    "intermediate_exponent",
    "intermediate_wavelike_threshold",
    "heatlike_wavelike_threshold",
    "critical_bounds",
    "power_bounds",
    "all_bounds",
    "best_exponent",
    "classify",
    "region_map_model",
    "region_map_flrw",
]

# Absolute tolerance for "p sits on a critical curve".
CRITICAL_TOL = 1e-9


class BoundKind(Enum):
    HEATLIKE_SUB = "heatlike_sub"
    WAVELIKE_SUB = "wavelike_sub"
    INTERMEDIATE_SUB = "intermediate_sub"
    CRITICAL_FUJITA_MU_LOW = "critical_fujita_mu_low"
    CRITICAL_FUJITA_MU_HIGH = "critical_fujita_mu_high"
    CRITICAL_PC = "critical_pc"
    NONE_KNOWN = "none_known"


class BoundForm(Enum):
    POWER = "power"
    EXP_POWER = "exp_power"


@dataclass(frozen=True)
class LifespanBound:
    """One lifespan upper bound at a fixed parameter point.

    ``eps_exponent`` is e in T_eps <= C eps^(-e) (power form) or
    T_eps <= exp(C eps^(-e)) (exp_power form); NaN when not applicable.
    """

    kind: BoundKind
    form: BoundForm
    eps_exponent: float
    applicable: bool


class RegionLabel(Enum):
    A = "A"
    B = "B"
    C = "C"
    CRITICAL_FUJITA = "critical_fujita"
    CRITICAL_PC = "critical_pc"
    UNCLASSIFIED = "unclassified"


def heatlike_exponent(params: ModelParams, p: float) -> Optional[float]:
    """(p-1)/(2 - n(1-alpha)(p-1)) for 1 < p < fujita(n(1-alpha)), else None."""
    d = params.effective_dim
    if not 1.0 < p < fujita(d):
        return None
    return (p - 1.0) / (2.0 - d * (p - 1.0))


def wavelike_exponent(params: ModelParams, p: float) -> Optional[float]:
    """2p(p-1)/((1-alpha) gamma) where gamma > 0 (i.e. p below its positive
    root, if any), else None."""
    if p <= 1.0:
        return None
    g = gamma(params, p)
    if g <= 0.0:
        return None
    return 2.0 * p * (p - 1.0) / ((1.0 - params.alpha) * g)


def intermediate_exponent(params: ModelParams, p: float) -> Optional[float]:
    """(p-1)/(2 - (n(1-alpha)+mu-1)(p-1)); a nonpositive bracket imposes no
    restriction on p."""
    if p <= 1.0:
        return None
    k = params.effective_dim + params.mu - 1.0
    denom = 2.0 - k * (p - 1.0)
    if denom <= 0.0:
        return None
    return (p - 1.0) / denom


def intermediate_wavelike_threshold(params: ModelParams) -> float:
    """p where the intermediate and wavelike exponents cross:
    2(1-alpha)/(n(1-alpha)+mu-1), or +inf for a nonpositive denominator."""
    k = params.effective_dim + params.mu - 1.0
    if k <= 0.0:
        return math.inf
    return 2.0 * (1.0 - params.alpha) / k


def heatlike_wavelike_threshold(params: ModelParams) -> float:
    """p where the heatlike and wavelike exponents cross:
    2(1-alpha)/(n(1-alpha)-mu+1), or +inf for a nonpositive denominator."""
    k = params.effective_dim - params.mu + 1.0
    if k <= 0.0:
        return math.inf
    return 2.0 * (1.0 - params.alpha) / k


def _p_c_or_inf(params: ModelParams) -> float:
    root = p_c(params).root
    return root if root is not None else math.inf


def critical_bounds(params: ModelParams, p: float, tol: float = CRITICAL_TOL) -> list[LifespanBound]:
    """Exponential-type bounds active when p sits on a critical curve.

    On p = fujita(n(1-alpha)): exponent p(p-1)/(p+1) for mu <= 1, p-1 for
    mu > 1.  On p = p_c (only if p_c strictly exceeds the Fujita-type
    exponent): exponent p(p-1).  Away from both curves the list is empty.
    """
    out: list[LifespanBound] = []
    p_f = fujita(params.effective_dim)
    if abs(p - p_f) <= tol:
        if params.mu <= 1.0:
            out.append(
                LifespanBound(
                    BoundKind.CRITICAL_FUJITA_MU_LOW,
                    BoundForm.EXP_POWER,
                    p * (p - 1.0) / (p + 1.0),
                    True,
                )
            )
        else:
            out.append(
                LifespanBound(
                    BoundKind.CRITICAL_FUJITA_MU_HIGH,
                    BoundForm.EXP_POWER,
                    p - 1.0,
                    True,
                )
            )
    pc = _p_c_or_inf(params)
    if math.isfinite(pc) and abs(p - pc) <= tol and pc > p_f + tol:
        out.append(
            LifespanBound(BoundKind.CRITICAL_PC, BoundForm.EXP_POWER, p * (p - 1.0), True)
        )
    return out


def power_bounds(params: ModelParams, p: float) -> list[LifespanBound]:
    out = []
    for kind, value in (
        (BoundKind.HEATLIKE_SUB, heatlike_exponent(params, p)),
        (BoundKind.WAVELIKE_SUB, wavelike_exponent(params, p)),
        (BoundKind.INTERMEDIATE_SUB, intermediate_exponent(params, p)),
    ):
        if value is None:
            out.append(LifespanBound(kind, BoundForm.POWER, math.nan, False))
        else:
            out.append(LifespanBound(kind, BoundForm.POWER, value, True))
    return out


def all_bounds(params: ModelParams, p: float) -> list[LifespanBound]:
    return power_bounds(params, p) + critical_bounds(params, p)


def best_exponent(params: ModelParams, p: float) -> float:
    """Sharpest available eps-exponent at (params, p).

    Power bounds always beat exponential ones; among bounds of equal form
    the smallest exponent wins.  NaN when no bound applies.
    """
    powers = [b.eps_exponent for b in power_bounds(params, p) if b.applicable]
    if powers:
        return min(powers)
    crits = [b.eps_exponent for b in critical_bounds(params, p) if b.applicable]
    if crits:
        return min(crits)
    return math.nan


def classify(params: ModelParams, p: float, tol: float = CRITICAL_TOL) -> RegionLabel:
    """Region label of the sharpest bound at (params, p).

    A: intermediate bound is best (p <= 2(1-alpha)/(n(1-alpha)+mu-1));
    B: wavelike is best (above both crossing thresholds, below p_c);
    C: heatlike is best (p <= 2(1-alpha)/(n(1-alpha)-mu+1) and p below the
    Fujita-type exponent).  Critical labels win on their curves; ties between
    A/B/C resolve in enum order.  Points above every applicable bound are
    UNCLASSIFIED.
    """
    if p <= 1.0:
        raise ValueError(f"classification requires p > 1, got {p}")
    p_f = fujita(params.effective_dim)
    pc = _p_c_or_inf(params)
    if abs(p - p_f) <= tol:
        return RegionLabel.CRITICAL_FUJITA
    if math.isfinite(pc) and abs(p - pc) <= tol and pc > p_f + tol:
        return RegionLabel.CRITICAL_PC
    if p <= intermediate_wavelike_threshold(params):
        return RegionLabel.A
    if p <= heatlike_wavelike_threshold(params) and p < p_f:
        return RegionLabel.C
    if p < pc:
        # p already exceeds both crossing thresholds here: the heatlike/
        # wavelike threshold can reach p_f only at mu >= mu*, where p_c <= p_f
        # rules out this branch (the three curves meet at mu*).
        return RegionLabel.B
    return RegionLabel.UNCLASSIFIED


@dataclass(frozen=True)
class AxisSpec:
    """Uniform sweep axis: values start, start+step, ..., up to stop."""

    name: str
    start: float
    stop: float
    step: float

    def __post_init__(self):
        if self.step <= 0.0:
            raise ValueError(f"axis step must be positive, got {self.step}")
        if self.stop < self.start:
            raise ValueError(f"axis stop {self.stop} below start {self.start}")

    def values(self) -> list[float]:
        count = int(math.floor((self.stop - self.start) / self.step + 0.5)) + 1
        return [round(self.start + k * self.step, 12) for k in range(count)]


@dataclass
class RegionMap:
    """Grid of region labels over (axis1, axis2) with the best exponent per cell.

    ``labels[i][j]`` and ``best[i][j]`` correspond to axis1.values()[i],
    axis2.values()[j].
    """

    axis1: AxisSpec
    axis2: AxisSpec
    labels: list[list[RegionLabel]]
    best: list[list[float]]

    def label_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {label.value: 0 for label in RegionLabel}
        for row in self.labels:
            for lab in row:
                counts[lab.value] += 1
        return counts

    def rows(self):
        """Yield (axis1_value, axis2_value, label, best_exponent) in row-major order."""
        v1 = self.axis1.values()
        v2 = self.axis2.values()
        for i, a in enumerate(v1):
            for j, b in enumerate(v2):
                yield a, b, self.labels[i][j], self.best[i][j]


def _build_map(axis1: AxisSpec, axis2: AxisSpec, params_of) -> RegionMap:
    v1 = axis1.values()
    v2 = axis2.values()
    if not v1 or not v2:
        raise ValueError("region map axes must contain at least one sample each")
    labels = []
    best = []
    for a in v1:
        params = params_of(a)
        labels.append([classify(params, p) for p in v2])
        best.append([best_exponent(params, p) for p in v2])
    return RegionMap(axis1, axis2, labels, best)


def region_map_model(n: int, alpha: float, mu_axis: AxisSpec, p_axis: AxisSpec) -> RegionMap:
    """Phase diagram in the (mu, p) plane at fixed (n, alpha)."""
    return _build_map(mu_axis, p_axis, lambda mu: ModelParams(n, alpha, mu))


def region_map_flrw(n: int, w_axis: AxisSpec, p_axis: AxisSpec) -> RegionMap:
    """Phase diagram in the (w, p) plane; parameters pass through the
    cosmological map alpha = 2/(n(1+w)), mu = 2/(1+w)."""
    return _build_map(w_axis, p_axis, lambda w: flrw_to_model(FlrwParams(n, w)))

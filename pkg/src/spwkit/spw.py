"""Security-per-watt calculus: security gain, operational power, the
SpW ratio with uncertainty, normalisation and the multi-criteria index.

The core quantities::

    gain        = sum(cvss_i * p_i * m_i * rrf_i)           over contributions
    power       = sum(p_base * duty_cycle * env * nodes)    over components
    spw         = gain / power, with a sigma band
    spw_norm    = spw_candidate / spw_baseline
    index (SEI) = alpha*spw_term + beta*latency + gamma*storage + delta*complexity

Sigma on SpW is this toolkit's own estimate (first-order relative
propagation, or seeded Monte Carlo over per-component uniform intervals);
published uncertainty figures for the modelled scenarios are not derivable
from their stated inputs and are only ever shown as reference values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Sequence

import numpy as np

from .errors import (
    EmptyPowerModelError,
    FactorOutOfRangeError,
    NonPositivePowerError,
    WeightsNotNormalizedError,
    ZeroBaselineError,
)


@dataclass(frozen=True)
class VulnContribution:
    """One addressed vulnerability's term in the security gain sum."""

    vuln_id: str
    cvss: float
    exploit_probability: float
    mission_criticality: float
    rrf: float

    def validate(self) -> None:
        checks = (
            ("cvss", self.cvss, 0.0, 10.0),
            ("exploit_probability", self.exploit_probability, 0.0, 1.0),
            ("mission_criticality", self.mission_criticality, 0.0, 1.0),
            ("rrf", self.rrf, 0.0, 1.0),
        )
        for name, value, lo, hi in checks:
            if not lo <= value <= hi:
                raise FactorOutOfRangeError(
                    f"{self.vuln_id}: {name}={value} outside [{lo}, {hi}]")

    @property
    def gain(self) -> float:
        return self.cvss * self.exploit_probability * self.mission_criticality * self.rrf


@dataclass(frozen=True)
class PowerComponent:
    """One power draw: base watts scaled by duty cycle, environment and
    node count, with a +/- half-width in watts on the component total."""

    label: str
    p_base: float
    duty_cycle: float = 1.0
    environmental_factor: float = 1.0
    node_count: int = 1
    uncertainty: float = 0.0

    def validate(self) -> None:
        if self.p_base <= 0:
            raise NonPositivePowerError(f"{self.label}: p_base must be > 0")
        if not 0.0 <= self.duty_cycle <= 1.0:
            raise FactorOutOfRangeError(f"{self.label}: duty_cycle outside [0, 1]")
        if self.environmental_factor <= 0:
            raise FactorOutOfRangeError(f"{self.label}: environmental_factor must be > 0")
        if self.node_count < 1:
            raise FactorOutOfRangeError(f"{self.label}: node_count must be >= 1")
        if self.uncertainty < 0:
            raise FactorOutOfRangeError(f"{self.label}: uncertainty must be >= 0")

    @property
    def total(self) -> float:
        return self.p_base * self.duty_cycle * self.environmental_factor * self.node_count


class PowerEstimate(NamedTuple):
    """Total operational watts and a worst-case +/- half-width."""

    total: float
    uncertainty: float


class SigmaMethod(Enum):
    FIRST_ORDER = "first-order"
    MONTE_CARLO = "monte-carlo"


@dataclass(frozen=True)
class SpwResult:
    sg: float
    p_operational: float
    p_uncertainty: float
    spw: float
    spw_sigma: float
    spw_normalised: float | None = None


@dataclass(frozen=True)
class SeiWeights:
    alpha: float
    beta: float
    gamma: float
    delta: float

    def validate(self) -> None:
        for name, w in zip("alpha beta gamma delta".split(), self.as_tuple()):
            if not 0.0 <= w <= 1.0:
                raise WeightsNotNormalizedError(f"weight {name}={w} outside [0, 1]")
        if abs(sum(self.as_tuple()) - 1.0) > 1e-9:
            raise WeightsNotNormalizedError(
                f"weights sum to {sum(self.as_tuple())}, expected 1.0")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.alpha, self.beta, self.gamma, self.delta)


@dataclass(frozen=True)
class SeiCriteria:
    """Criterion inputs for the index.

    ``spw_term`` enters the weighted sum as given. It is a raw per-watt
    magnitude (typically ~1-40), deliberately not rescaled to [0, 1];
    the remaining criterion scores are unit-interval ratings.
    """

    spw_term: float
    latency_score: float
    storage_score: float
    complexity_score: float

    def validate(self) -> None:
        for name in ("latency_score", "storage_score", "complexity_score"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise FactorOutOfRangeError(f"{name}={value} outside [0, 1]")


def security_gain(contributions: Sequence[VulnContribution]) -> float:
    """Sum of cvss * p * m * rrf over the addressed vulnerabilities."""
    for c in contributions:
        c.validate()
    return sum(c.gain for c in contributions)


def operational_power(components: Sequence[PowerComponent]) -> PowerEstimate:
    """Aggregate a power model.

    The combined uncertainty is the plain sum of component half-widths:
    each half-width bounds an interval, so the sum bounds the total.
    """
    if not components:
        raise EmptyPowerModelError("power model has no components")
    for comp in components:
        comp.validate()
    return PowerEstimate(
        total=sum(c.total for c in components),
        uncertainty=sum(c.uncertainty for c in components),
    )


def spw(
    sg: float,
    power: PowerEstimate | tuple[float, float],
    sigma_method: SigmaMethod = SigmaMethod.FIRST_ORDER,
    *,
    components: Sequence[PowerComponent] | None = None,
    n_samples: int = 10_000,
    seed: int = 0,
) -> SpwResult:
    """Security gain per operational watt, with a sigma band.

    First-order sigma propagates the relative power uncertainty:
    ``spw * (u / total)``. Monte Carlo draws each power component total
    uniformly from ``[total - u, total + u]`` (independently, seeded) and
    reports the sample standard deviation of ``sg / power``; when no
    component list is given the aggregate estimate is treated as a single
    component.
    """
    total, uncertainty = power
    if total <= 0:
        raise NonPositivePowerError(f"operational power {total} W must be > 0")
    ratio = sg / total

    if sigma_method is SigmaMethod.FIRST_ORDER:
        sigma = ratio * (uncertainty / total)
    else:
        if components:
            centres = np.array([c.total for c in components])
            widths = np.array([c.uncertainty for c in components])
        else:
            centres = np.array([total])
            widths = np.array([uncertainty])
        rng = np.random.default_rng(seed)
        samples = rng.uniform(centres - widths, centres + widths,
                              size=(n_samples, len(centres))).sum(axis=1)
        if np.any(samples <= 0):
            raise NonPositivePowerError(
                "power uncertainty admits non-positive totals; narrow the intervals")
        sigma = float(np.std(sg / samples, ddof=1)) if n_samples > 1 else 0.0

    return SpwResult(sg=sg, p_operational=total, p_uncertainty=uncertainty,
                     spw=ratio, spw_sigma=sigma)


def spw_normalised(candidate: SpwResult, baseline: SpwResult) -> float:
    """Candidate-to-baseline SpW ratio."""
    if baseline.spw <= 0:
        raise ZeroBaselineError("baseline SpW must be > 0 for normalisation")
    return candidate.spw / baseline.spw


def sei(weights: SeiWeights, criteria: SeiCriteria) -> float:
    """Weighted multi-criteria index, exactly as the weights are given."""
    weights.validate()
    criteria.validate()
    return (
        weights.alpha * criteria.spw_term
        + weights.beta * criteria.latency_score
        + weights.gamma * criteria.storage_score
        + weights.delta * criteria.complexity_score
    )


def sei_normalised(weights: SeiWeights, criteria: SeiCriteria,
                   spw_scale: float) -> float:
    """Index variant with the SpW term rescaled by a caller-chosen scale.

    Opt-in alternative for callers that want all four terms in [0, 1];
    never the default.
    """
    if spw_scale <= 0 or not math.isfinite(spw_scale):
        raise FactorOutOfRangeError(f"spw_scale={spw_scale} must be finite and > 0")
    rescaled = SeiCriteria(
        spw_term=criteria.spw_term / spw_scale,
        latency_score=criteria.latency_score,
        storage_score=criteria.storage_score,
        complexity_score=criteria.complexity_score,
    )
    return sei(weights, rescaled)

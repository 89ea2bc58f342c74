"""Declarative trade-off scenarios: loading, validation and evaluation.

A scenario file is JSON with this shape::

    {
      "name": "...",
      "register": "register_42.csv",          // path, relative to this file
      "baseline": "strategy name",
      "weights": {"alpha": .., "beta": .., "gamma": .., "delta": ..},
      "monte_carlo_n": 20000,                  // optional, default 10000
      "seed": 7,                               // optional, default 0
      "strategies": [
        {
          "name": "...",
          "controls": [
            {"id": "SC-8/ECC", "rrf": 0.9,
             "description": "...",             // optional
             "adapted_from": "SC-8",           // optional
             "power": [
               {"label": "...", "p_base_w": 0.18,
                "duty_cycle": 1.0,             // optional, default 1.0
                "env_factor": 1.0,             // optional, default 1.0
                "node_count": 1,               // optional, default 1
                "uncertainty_w": 0.02}         // optional, default 0.0
             ]}
          ],
          "targets": [{"vuln_id": "C1", "p": 0.8, "m": 1.0}],
          "criteria": {"latency": 0.2, "storage": 0.1, "complexity": 0.9}
        }, ...
      ]
    }

Every control in a strategy applies to every target of that strategy;
when a strategy layers several controls the effective risk-reduction
factor is ``1 - prod(1 - rrf_j)`` (independent layers), and evaluation
flags that the composition rule fired.

Per-target probability and criticality live here, not on register rows,
because the same register entry can carry different estimates in
different studies.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .errors import (
    DuplicatePowerLabelWarning,
    DuplicateStrategyNameError,
    SchemaViolationError,
    UnknownBaselineError,
    UnresolvedVulnIdError,
)
from .register import Register, load_register
from .spw import (
    PowerComponent,
    PowerEstimate,
    SeiCriteria,
    SeiWeights,
    SigmaMethod,
    SpwResult,
    VulnContribution,
    operational_power,
    security_gain,
    sei,
    spw,
    spw_normalised,
)
from .taxonomy import RiskTier, classify_tier

DEFAULT_MONTE_CARLO_N = 10_000

SPW_DISPLAY_DECIMALS = 2


@dataclass(frozen=True)
class ControlSpec:
    """A candidate control: risk reduction plus its power cost."""

    control_id: str
    rrf: float
    power_components: tuple[PowerComponent, ...]
    description: str = ""
    adapted_from: str = ""


@dataclass(frozen=True)
class TargetSpec:
    """One addressed register entry with per-scenario estimates."""

    vuln_id: str
    exploit_probability: float
    mission_criticality: float


@dataclass(frozen=True)
class StrategySpec:
    name: str
    controls: tuple[ControlSpec, ...]
    targets: tuple[TargetSpec, ...]
    latency_score: float
    storage_score: float
    complexity_score: float

    def effective_rrf(self) -> float:
        """Combined risk reduction of all layered controls."""
        residual = 1.0
        for control in self.controls:
            residual *= 1.0 - control.rrf
        return 1.0 - residual

    def power_components(self) -> tuple[PowerComponent, ...]:
        return tuple(c for control in self.controls for c in control.power_components)


@dataclass(frozen=True)
class ScenarioSpec:
    name: str
    register_path: str
    baseline_strategy: str
    strategies: tuple[StrategySpec, ...]
    sei_weights: SeiWeights
    monte_carlo_n: int = DEFAULT_MONTE_CARLO_N
    seed: int = 0

    def strategy(self, name: str) -> StrategySpec:
        for s in self.strategies:
            if s.name == name:
                return s
        raise KeyError(name)


@dataclass(frozen=True)
class StrategyOutcome:
    """Everything computed for one strategy."""

    name: str
    contributions: tuple[VulnContribution, ...]
    power: PowerEstimate
    first_order: SpwResult
    monte_carlo: SpwResult
    sei_value: float
    rrf_composed: bool

    @property
    def sg(self) -> float:
        return self.first_order.sg

    @property
    def spw(self) -> float:
        return self.first_order.spw


@dataclass(frozen=True)
class StrategyComparison:
    """A strategy measured against the scenario baseline."""

    candidate: str
    spw_ratio: float
    power_saving: float
    security_reduction: float
    sei_ratio: float


@dataclass(frozen=True)
class ComparisonReport:
    scenario_name: str
    baseline: str
    outcomes: tuple[StrategyOutcome, ...]
    comparisons: tuple[StrategyComparison, ...]

    def outcome(self, name: str) -> StrategyOutcome:
        for o in self.outcomes:
            if o.name == name:
                return o
        raise KeyError(name)

    def comparison(self, name: str) -> StrategyComparison:
        for c in self.comparisons:
            if c.candidate == name:
                return c
        raise KeyError(name)


def _require(mapping: dict, key: str, kind, where: str):
    if key not in mapping:
        raise SchemaViolationError(f"{where}: missing key '{key}'")
    value = mapping[key]
    if kind is float:
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise SchemaViolationError(f"{where}: '{key}' must be a number")
        return float(value)
    if not isinstance(value, kind):
        raise SchemaViolationError(f"{where}: '{key}' must be {kind.__name__}")
    return value


def _optional(mapping: dict, key: str, default, where: str):
    if key not in mapping:
        return default
    if isinstance(default, bool):
        raise TypeError("booleans unsupported here")
    if isinstance(default, float) or isinstance(default, int):
        value = mapping[key]
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise SchemaViolationError(f"{where}: '{key}' must be a number")
        return type(default)(value)
    value = mapping[key]
    if not isinstance(value, type(default)):
        raise SchemaViolationError(f"{where}: '{key}' must be {type(default).__name__}")
    return value


def _parse_component(doc: dict, where: str) -> PowerComponent:
    comp = PowerComponent(
        label=_require(doc, "label", str, where),
        p_base=_require(doc, "p_base_w", float, where),
        duty_cycle=_optional(doc, "duty_cycle", 1.0, where),
        environmental_factor=_optional(doc, "env_factor", 1.0, where),
        node_count=int(_optional(doc, "node_count", 1, where)),
        uncertainty=_optional(doc, "uncertainty_w", 0.0, where),
    )
    comp.validate()
    return comp


def _parse_control(doc: dict, where: str) -> ControlSpec:
    control_id = _require(doc, "id", str, where)
    rrf = _require(doc, "rrf", float, where)
    if not 0.0 <= rrf <= 1.0:
        raise SchemaViolationError(f"{where}: rrf {rrf} outside [0, 1]")
    power = _require(doc, "power", list, where)
    if not power:
        raise SchemaViolationError(f"{where}: power model must not be empty")
    components = tuple(
        _parse_component(c, f"{where}.power[{i}]") for i, c in enumerate(power))
    return ControlSpec(
        control_id=control_id, rrf=rrf, power_components=components,
        description=_optional(doc, "description", "", where),
        adapted_from=_optional(doc, "adapted_from", "", where))


def _parse_strategy(doc: dict, index: int) -> StrategySpec:
    where = f"strategies[{index}]"
    name = _require(doc, "name", str, where)
    controls_doc = _require(doc, "controls", list, where)
    if not controls_doc:
        raise SchemaViolationError(f"{where}: needs at least one control")
    controls = tuple(
        _parse_control(c, f"{where}.controls[{i}]") for i, c in enumerate(controls_doc))

    targets_doc = _require(doc, "targets", list, where)
    targets = []
    for i, t in enumerate(targets_doc):
        t_where = f"{where}.targets[{i}]"
        target = TargetSpec(
            vuln_id=_require(t, "vuln_id", str, t_where),
            exploit_probability=_require(t, "p", float, t_where),
            mission_criticality=_require(t, "m", float, t_where))
        for key, value in (("p", target.exploit_probability),
                           ("m", target.mission_criticality)):
            if not 0.0 <= value <= 1.0:
                raise SchemaViolationError(f"{t_where}: {key}={value} outside [0, 1]")
        targets.append(target)

    criteria = _require(doc, "criteria", dict, where)
    scores = {
        key: _require(criteria, key, float, f"{where}.criteria")
        for key in ("latency", "storage", "complexity")
    }
    for key, value in scores.items():
        if not 0.0 <= value <= 1.0:
            raise SchemaViolationError(f"{where}.criteria: {key}={value} outside [0, 1]")
    strategy = StrategySpec(
        name=name, controls=controls, targets=tuple(targets),
        latency_score=scores["latency"], storage_score=scores["storage"],
        complexity_score=scores["complexity"])

    labels = [c.label for c in strategy.power_components()]
    for label in sorted({l for l in labels if labels.count(l) > 1}):
        warnings.warn(
            f"strategy '{name}' lists power label '{label}' more than once; "
            "shared components must not be double-counted",
            DuplicatePowerLabelWarning, stacklevel=3)
    return strategy


def parse_scenario(doc: dict, base_dir: Path | None = None) -> ScenarioSpec:
    """Validate a scenario document; register path resolves against base_dir."""
    if not isinstance(doc, dict):
        raise SchemaViolationError("scenario document must be a JSON object")
    known = {"name", "register", "baseline", "weights", "monte_carlo_n", "seed",
             "strategies"}
    unknown = set(doc) - known
    if unknown:
        raise SchemaViolationError(f"unknown top-level key(s): {sorted(unknown)}")

    name = _require(doc, "name", str, "scenario")
    register_path = _require(doc, "register", str, "scenario")
    if base_dir is not None:
        register_path = str((base_dir / register_path).resolve())

    weights_doc = _require(doc, "weights", dict, "scenario")
    weights = SeiWeights(
        alpha=_require(weights_doc, "alpha", float, "weights"),
        beta=_require(weights_doc, "beta", float, "weights"),
        gamma=_require(weights_doc, "gamma", float, "weights"),
        delta=_require(weights_doc, "delta", float, "weights"))
    weights.validate()

    strategies_doc = _require(doc, "strategies", list, "scenario")
    if len(strategies_doc) < 2:
        raise SchemaViolationError("scenario needs at least two strategies")
    strategies = tuple(_parse_strategy(s, i) for i, s in enumerate(strategies_doc))

    names = [s.name for s in strategies]
    for dup in sorted({n for n in names if names.count(n) > 1}):
        raise DuplicateStrategyNameError(f"strategy name '{dup}' appears twice")

    baseline = _require(doc, "baseline", str, "scenario")
    if baseline not in names:
        raise UnknownBaselineError(
            f"baseline '{baseline}' is not a strategy (have: {', '.join(names)})")

    monte_carlo_n = int(_optional(doc, "monte_carlo_n", DEFAULT_MONTE_CARLO_N, "scenario"))
    if monte_carlo_n < 1:
        raise SchemaViolationError("monte_carlo_n must be >= 1")

    return ScenarioSpec(
        name=name, register_path=register_path, baseline_strategy=baseline,
        strategies=strategies, sei_weights=weights, monte_carlo_n=monte_carlo_n,
        seed=int(_optional(doc, "seed", 0, "scenario")))


def check_targets_resolve(scenario: ScenarioSpec, register: Register) -> None:
    for strategy in scenario.strategies:
        for target in strategy.targets:
            if register.get(target.vuln_id) is None:
                raise UnresolvedVulnIdError(
                    f"strategy '{strategy.name}' targets unknown register id "
                    f"'{target.vuln_id}'")


def load_scenario(path: str | Path, register: Register | None = None) -> ScenarioSpec:
    """Load a scenario file and resolve its cross-references.

    The scenario's register is loaded (relative paths resolve against the
    scenario file's directory) to verify every targeted id exists; pass
    ``register`` to check against an already-loaded one instead.
    """
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise SchemaViolationError(f"cannot read scenario file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaViolationError(f"{path} is not valid JSON: {exc}") from exc
    scenario = parse_scenario(doc, base_dir=path.parent)
    if register is None:
        register = load_register(scenario.register_path)
    check_targets_resolve(scenario, register)
    return scenario


def _strategy_contributions(strategy: StrategySpec,
                            register: Register) -> tuple[VulnContribution, ...]:
    rrf = strategy.effective_rrf()
    contributions = []
    for target in strategy.targets:
        entry = register.get(target.vuln_id)
        if entry is None:
            raise UnresolvedVulnIdError(
                f"strategy '{strategy.name}' targets unknown register id "
                f"'{target.vuln_id}'")
        contributions.append(VulnContribution(
            vuln_id=target.vuln_id, cvss=entry.cvss_score,
            exploit_probability=target.exploit_probability,
            mission_criticality=target.mission_criticality, rrf=rrf))
    return tuple(contributions)


def evaluate(scenario: ScenarioSpec, register: Register,
             seed: int | None = None) -> ComparisonReport:
    """Evaluate every strategy and compare each against the baseline.

    Deterministic for a fixed (scenario, register, seed); each strategy's
    Monte Carlo stream is seeded independently from the master seed. The
    multi-criteria index takes the SpW term at display precision (two
    decimals) so the printed arithmetic stays self-consistent.
    """
    check_targets_resolve(scenario, register)
    master_seed = scenario.seed if seed is None else seed
    child_seeds = np.random.SeedSequence(master_seed).generate_state(
        len(scenario.strategies))

    outcomes = []
    for strategy, child_seed in zip(scenario.strategies, child_seeds):
        contributions = _strategy_contributions(strategy, register)
        sg = security_gain(contributions)
        components = strategy.power_components()
        power = operational_power(components)
        first_order = spw(sg, power, SigmaMethod.FIRST_ORDER)
        monte_carlo = spw(sg, power, SigmaMethod.MONTE_CARLO,
                          components=components, n_samples=scenario.monte_carlo_n,
                          seed=int(child_seed))
        criteria = SeiCriteria(
            spw_term=round(first_order.spw, SPW_DISPLAY_DECIMALS),
            latency_score=strategy.latency_score,
            storage_score=strategy.storage_score,
            complexity_score=strategy.complexity_score)
        outcomes.append(StrategyOutcome(
            name=strategy.name, contributions=contributions, power=power,
            first_order=first_order, monte_carlo=monte_carlo,
            sei_value=sei(scenario.sei_weights, criteria),
            rrf_composed=sum(1 for c in strategy.controls if c.rrf > 0) > 1))

    by_name = {o.name: o for o in outcomes}
    base = by_name[scenario.baseline_strategy]
    comparisons = []
    normalised_outcomes = []
    for outcome in outcomes:
        ratio = spw_normalised(outcome.first_order, base.first_order)
        comparisons.append(StrategyComparison(
            candidate=outcome.name,
            spw_ratio=ratio,
            power_saving=1.0 - outcome.power.total / base.power.total,
            security_reduction=(base.sg - outcome.sg) / base.sg if base.sg else 0.0,
            sei_ratio=outcome.sei_value / base.sei_value if base.sei_value else float("nan")))
        normalised_outcomes.append(replace(
            outcome, first_order=replace(outcome.first_order, spw_normalised=ratio)))

    return ComparisonReport(
        scenario_name=scenario.name, baseline=scenario.baseline_strategy,
        outcomes=tuple(normalised_outcomes), comparisons=tuple(comparisons))


def classify_targets(scenario: ScenarioSpec,
                     register: Register) -> list[tuple[str, RiskTier]]:
    """Tier every targeted register entry (deduplicated, first-seen order)."""
    seen = []
    for strategy in scenario.strategies:
        for target in strategy.targets:
            if target.vuln_id in seen:
                continue
            if register.get(target.vuln_id) is None:
                raise UnresolvedVulnIdError(
                    f"strategy '{strategy.name}' targets unknown register id "
                    f"'{target.vuln_id}'")
            seen.append(target.vuln_id)
    return [(vuln_id, classify_tier(register.get(vuln_id))) for vuln_id in seen]

# -*- mode:python; coding:utf-8 -*-

# Copyright (c) 2022 IBM Corp. All rights reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

from dataclasses import dataclass, field
from typing import Dict, List, Optional

import jsonpickle
import numpy as np


class DomainError(ValueError):
    category = "domain"


class InvalidProblemError(Exception):
    category = "invalid"

    def __init__(self, violations):
        self.violations = list(violations)
        lines = ["{} violation(s) in the plan problem".format(len(self.violations))]
        lines.extend("- " + v.message for v in self.violations)
        super().__init__("\n".join(lines))


class InfeasibleProblemError(Exception):
    category = "infeasible"

    def __init__(self, message, blocking=None):
        # plant id -> reason
        self.blocking = dict(blocking or {})
        super().__init__(message)


class OracleRefusedError(Exception):
    category = "refused"


class LinkageError(Exception):
    category = "linkage"


class ZeroDenominatorError(LinkageError):
    category = "zero_denominator"


class NoRealSolutionError(LinkageError):
    category = "no_real_solution"


class DegenerateMatchError(LinkageError):
    category = "degenerate"


class ExtraneousRootError(LinkageError):
    category = "extraneous_root"


class ScenarioError(Exception):
    category = "scenario"


class ScenarioNotFoundError(ScenarioError):
    category = "missing"


class ScenarioSyntaxError(ScenarioError):
    category = "syntax"


class ScenarioSchemaError(ScenarioError):
    category = "schema"

    def __init__(self, path, problems):
        self.path = path
        self.problems = list(problems)
        lines = ["{}: {} schema problem(s)".format(path, len(self.problems))]
        lines.extend("- " + p for p in self.problems)
        super().__init__("\n".join(lines))


class ScenarioInvariantError(ScenarioError):
    category = "invariant"

    def __init__(self, path, violations, scenario=None):
        self.path = path
        self.violations = list(violations)
        # parsed, but not usable for solving
        self.scenario = scenario
        lines = ["{}: {} invariant violation(s)".format(path, len(self.violations))]
        lines.extend("- " + v.message for v in self.violations)
        super().__init__("\n".join(lines))


class ReportError(Exception):
    category = "report"


class ReportFormatError(ReportError):
    category = "format"


class ReportWriteError(ReportError):
    category = "write"


class Mode:
    LITERAL = "literal"
    RECTIFIED = "rectified"


supported_modes = [Mode.LITERAL, Mode.RECTIFIED]


class Cheaper:
    PLANT = "plant"
    ROOFTOP = "rooftop"
    TIE = "tie"


class JSONSerializable(object):
    def dump(self):
        return self.to_json()

    def to_json(self):
        return jsonpickle.encode(self, make_refs=False)


@dataclass
class Violation(JSONSerializable):
    rule: str = ""
    plant: str = ""
    # 1-based; 0 when the rule is not tied to a period
    period: int = 0
    residual: float = 0.0
    message: str = ""


@dataclass
class PeriodParams(JSONSerializable):
    npw: float = 0.0
    transfer: float = 0.0
    excess: float = 0.0
    cap_min: float = 0.0
    cap_max: float = 0.0
    demand: float = 0.0


@dataclass
class PlantSpec(JSONSerializable):
    id: str = ""
    setup_cost: float = 0.0
    periods: List[PeriodParams] = field(default_factory=list)


@dataclass
class ProblemArrays(object):
    setup: np.ndarray
    npw: np.ndarray
    transfer: np.ndarray
    excess: np.ndarray
    cap_min: np.ndarray
    cap_max: np.ndarray
    demand: np.ndarray
    # (1+i)^-t for t = 1..T
    discount: np.ndarray


@dataclass
class PlanProblem(JSONSerializable):
    plants: List[PlantSpec] = field(default_factory=list)
    horizon: int = 1
    required_count: int = 0
    discount_rate: float = 0.0
    mode: str = Mode.RECTIFIED
    allow_shortage: bool = False

    @property
    def plant_ids(self) -> List[str]:
        return [p.id for p in self.plants]

    def demand_matrix(self) -> List[List[float]]:
        return [[pp.demand for pp in p.periods] for p in self.plants]

    def with_demand(self, demand) -> "PlanProblem":
        plants = []
        for plant, row in zip(self.plants, demand):
            periods = [
                PeriodParams(
                    npw=pp.npw,
                    transfer=pp.transfer,
                    excess=pp.excess,
                    cap_min=pp.cap_min,
                    cap_max=pp.cap_max,
                    demand=float(d),
                )
                for pp, d in zip(plant.periods, row)
            ]
            plants.append(PlantSpec(id=plant.id, setup_cost=plant.setup_cost, periods=periods))
        return PlanProblem(
            plants=plants,
            horizon=self.horizon,
            required_count=self.required_count,
            discount_rate=self.discount_rate,
            mode=self.mode,
            allow_shortage=self.allow_shortage,
        )

    def as_arrays(self) -> ProblemArrays:
        def _matrix(attr):
            return np.array([[getattr(pp, attr) for pp in p.periods] for p in self.plants], dtype=float).reshape(len(self.plants), self.horizon)

        t = np.arange(1, self.horizon + 1, dtype=float)
        return ProblemArrays(
            setup=np.array([p.setup_cost for p in self.plants], dtype=float),
            npw=_matrix("npw"),
            transfer=_matrix("transfer"),
            excess=_matrix("excess"),
            cap_min=_matrix("cap_min"),
            cap_max=_matrix("cap_max"),
            demand=_matrix("demand"),
            discount=(1.0 + self.discount_rate) ** (-t),
        )


@dataclass
class DispatchResult(JSONSerializable):
    period: int = 1
    production: float = 0.0
    surplus: float = 0.0
    period_cost: float = 0.0
    feasible: bool = True
    reason: str = ""


@dataclass
class PlantCost(JSONSerializable):
    plant_id: str = ""
    total: float = 0.0
    feasible: bool = True
    dispatch: List[DispatchResult] = field(default_factory=list)


@dataclass
class PlanSolution(JSONSerializable):
    selected: List[int] = field(default_factory=list)
    production: List[List[float]] = field(default_factory=list)
    surplus: List[List[float]] = field(default_factory=list)
    objective: float = 0.0
    per_plant_cost: List[float] = field(default_factory=list)

    # discounted contribution of each plant-period to the objective
    period_cost: List[List[float]] = field(default_factory=list)
    plant_ids: List[str] = field(default_factory=list)
    mode: str = Mode.RECTIFIED
    allow_shortage: bool = False

    @property
    def selected_ids(self) -> List[str]:
        return [pid for pid, y in zip(self.plant_ids, self.selected) if y == 1]


@dataclass
class PvParams(JSONSerializable):
    interest: float = 0.0
    lifetime: int = 1
    op_cost: float = 0.0
    panel_price: float = 0.0
    consumption: float = 0.0
    panel_capacity: float = 0.0


@dataclass
class PvResult(JSONSerializable):
    z_star: float = 0.0
    z_stationary: float = 0.0
    f_star: float = 0.0
    beta: float = 0.0
    panels: float = 0.0
    panels_ceil: int = 0

    @property
    def f_star_magnitude(self) -> float:
        return abs(self.f_star)


@dataclass
class LinkResult(JSONSerializable):
    z_breakeven: float = 0.0
    n_star: float = 0.0
    n_star_ceil: int = 0
    residual: float = 0.0


@dataclass
class McConfig(JSONSerializable):
    base: PlanProblem = field(default_factory=PlanProblem)
    demand_low: List[List[float]] = field(default_factory=list)
    demand_high: List[List[float]] = field(default_factory=list)
    replications: int = 1
    seed: int = 0

    @staticmethod
    def from_spread(base: PlanProblem, spread: float, replications: int, seed: int) -> "McConfig":
        if spread < 0:
            raise DomainError("spread must be non-negative, got {}".format(spread))
        nominal = base.demand_matrix()
        low = [[max(0.0, d * (1.0 - spread)) for d in row] for row in nominal]
        high = [[d * (1.0 + spread) for d in row] for row in nominal]
        return McConfig(base=base, demand_low=low, demand_high=high, replications=replications, seed=seed)


@dataclass
class ReplicationRecord(JSONSerializable):
    index: int = 0
    feasible: bool = True
    objective: Optional[float] = None
    selected: List[int] = field(default_factory=list)
    waste_rate: Optional[float] = None
    reason: str = ""


@dataclass
class McReport(JSONSerializable):
    cost_mean: Optional[float] = None
    cost_stddev: Optional[float] = None
    cost_quantiles: Dict[str, float] = field(default_factory=dict)
    waste_rate_mean: Optional[float] = None
    selection_frequency: Dict[str, float] = field(default_factory=dict)
    infeasible_count: int = 0
    replications_run: int = 0

    feasible_count: int = 0
    cost_ci_half_width: Optional[float] = None
    all_infeasible: bool = False
    seed: int = 0


@dataclass
class ComparisonReport(JSONSerializable):
    plan_cost: float = 0.0
    pv_cost_magnitude: float = 0.0
    cheaper: str = Cheaper.TIE
    waste_rate: float = 0.0

    reported_cheaper: str = ""
    note: str = ""


@dataclass
class McOverlay(JSONSerializable):
    replications: int = 1000
    seed: int = 0
    # relative half-width of the demand interval around the nominal demand
    spread: float = 0.0


@dataclass
class ScenarioFile(JSONSerializable):
    schema_version: str = "1"
    problem: PlanProblem = field(default_factory=PlanProblem)
    pv: Optional[PvParams] = None
    pv_alternatives: Dict[str, PvParams] = field(default_factory=dict)
    default_alternative: str = ""
    mc: Optional[McOverlay] = None
    metadata: dict = field(default_factory=dict)

    @property
    def name(self) -> str:
        return str(self.metadata.get("name", ""))

    @property
    def reported(self) -> dict:
        return self.metadata.get("reported", {}) or {}

    def alternative(self, name: str = "") -> PvParams:
        if not name:
            if self.pv is None:
                raise DomainError("scenario {} has no rooftop PV parameters".format(self.name or "(unnamed)"))
            return self.pv
        if name not in self.pv_alternatives:
            raise DomainError("unknown PV alternative {}; available: {}".format(name, ", ".join(self.pv_alternatives) or "none"))
        return self.pv_alternatives[name]

    def alternative_names(self) -> List[str]:
        if self.pv_alternatives:
            return list(self.pv_alternatives)
        return [self.default_alternative or "default"] if self.pv is not None else []

    def mc_config(self, replications: Optional[int] = None, seed: Optional[int] = None, spread: Optional[float] = None) -> McConfig:
        overlay = self.mc or McOverlay()
        return McConfig.from_spread(
            self.problem,
            overlay.spread if spread is None else spread,
            overlay.replications if replications is None else replications,
            overlay.seed if seed is None else seed,
        )

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

import logging
import math
from typing import List

import yaml

from .constraint_checker import validate_problem
from .models import (
    McOverlay,
    PeriodParams,
    PlanProblem,
    PlantSpec,
    PvParams,
    ScenarioFile,
    ScenarioInvariantError,
    ScenarioNotFoundError,
    ScenarioSchemaError,
    ScenarioSyntaxError,
    Violation,
    supported_modes,
)
from .pv_analytic import validate_pv_params
from .simulator import seed_problems


supported_schema_versions = ["1"]

# file field -> model attribute
problem_fields = {
    "horizon_periods": "horizon",
    "required_plant_count": "required_count",
    "discount_rate_per_period": "discount_rate",
    "mode": "mode",
    "allow_shortage": "allow_shortage",
}
period_fields = {
    "npw_cost_per_kwh": "npw",
    "transfer_cost_per_kwh": "transfer",
    "excess_cost_per_kwh": "excess",
    "capacity_min_kw": "cap_min",
    "capacity_max_kw": "cap_max",
    "demand_kw": "demand",
}
pv_fields = {
    "interest_rate_per_period": "interest",
    "lifetime_periods": "lifetime",
    "op_cost_per_period": "op_cost",
    "panel_price": "panel_price",
    "consumption_w_per_year": "consumption",
    "panel_capacity_w": "panel_capacity",
}
mc_fields = {
    "replications": "replications",
    "seed": "seed",
    "spread": "spread",
}
top_level_fields = ["schema_version", "metadata", "problem", "pv", "pv_alternatives", "pv_default", "mc"]


def load_scenario(path: str, validate: bool = True) -> ScenarioFile:
    """Read a YAML scenario file.

    Syntax, schema and invariant failures raise distinct ScenarioError
    subclasses. Schema and invariant errors list every problem found.
    """
    try:
        with open(path, "r") as file:
            text = file.read()
    except OSError as e:
        raise ScenarioNotFoundError("cannot read scenario {}: {}".format(path, e.strerror or e))
    return parse_scenario(text, path=path, validate=validate)


def parse_scenario(text: str, path: str = "<string>", validate: bool = True) -> ScenarioFile:
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise ScenarioSyntaxError("{}: malformed YAML: {}".format(path, e))

    reader = _SchemaReader()
    scenario = reader.scenario(data)
    if reader.problems:
        raise ScenarioSchemaError(path, reader.problems)

    if validate:
        violations = scenario_violations(scenario)
        if violations:
            raise ScenarioInvariantError(path, violations, scenario=scenario)
    logging.debug("parse_scenario() {} loaded with {} plant(s)".format(path, len(scenario.problem.plants)))
    return scenario


def scenario_violations(scenario: ScenarioFile) -> List[Violation]:
    violations = list(validate_problem(scenario.problem))
    alternatives = dict(scenario.pv_alternatives)
    if scenario.pv is not None and not alternatives:
        alternatives[scenario.default_alternative or "pv"] = scenario.pv
    for name, params in alternatives.items():
        for problem in validate_pv_params(params):
            violations.append(Violation(rule="pv_params", plant=name, message="pv_params: alternative {}: {}".format(name, problem)))
    if scenario.mc is not None:
        if scenario.mc.replications < 1:
            violations.append(Violation(rule="mc", message="mc: replications must be >= 1, got {}".format(scenario.mc.replications)))
        for problem in seed_problems(scenario.mc.seed):
            violations.append(Violation(rule="mc", message="mc: " + problem))
        if not (scenario.mc.spread >= 0 and math.isfinite(scenario.mc.spread)):
            violations.append(Violation(rule="mc", message="mc: spread must be a non-negative number, got {}".format(scenario.mc.spread)))
    return violations


def dump_scenario(scenario: ScenarioFile, path: str = "") -> str:
    data = scenario_to_dict(scenario)
    text = yaml.safe_dump(data, sort_keys=False, default_flow_style=False)
    if path:
        with open(path, "w") as file:
            file.write(text)
    return text


def scenario_to_dict(scenario: ScenarioFile) -> dict:
    problem = scenario.problem
    data = {"schema_version": scenario.schema_version}
    if scenario.metadata:
        data["metadata"] = scenario.metadata
    data["problem"] = {key: getattr(problem, attr) for key, attr in problem_fields.items()}
    data["problem"]["plants"] = [
        {
            "id": plant.id,
            "setup_cost": plant.setup_cost,
            "periods": [{key: getattr(pp, attr) for key, attr in period_fields.items()} for pp in plant.periods],
        }
        for plant in problem.plants
    ]
    if scenario.pv is not None:
        data["pv"] = _pv_to_dict(scenario.pv)
    if scenario.pv_alternatives:
        data["pv_alternatives"] = {name: _pv_to_dict(params) for name, params in scenario.pv_alternatives.items()}
    if scenario.default_alternative:
        data["pv_default"] = scenario.default_alternative
    if scenario.mc is not None:
        data["mc"] = {key: getattr(scenario.mc, attr) for key, attr in mc_fields.items()}
    return data


def _pv_to_dict(params: PvParams) -> dict:
    return {key: getattr(params, attr) for key, attr in pv_fields.items()}


class _SchemaReader(object):
    def __init__(self):
        self.problems = []

    def scenario(self, data) -> ScenarioFile:
        if not isinstance(data, dict):
            self.problems.append("top level must be a mapping, got {}".format(type(data).__name__))
            return ScenarioFile()
        self._unknown(data, top_level_fields, "")

        version = data.get("schema_version")
        if version is None:
            self.problems.append("schema_version is required")
        elif str(version) not in supported_schema_versions:
            self.problems.append("schema_version {} is not supported; expected one of {}".format(version, supported_schema_versions))

        metadata = data.get("metadata", {}) or {}
        if not isinstance(metadata, dict):
            self.problems.append("metadata must be a mapping")
            metadata = {}

        scenario = ScenarioFile(schema_version=str(version or ""), metadata=metadata)
        if "problem" not in data:
            self.problems.append("problem is required")
        else:
            scenario.problem = self.problem(data["problem"])

        if data.get("pv") is not None:
            scenario.pv = self.pv(data["pv"], "pv")
        alternatives = data.get("pv_alternatives") or {}
        if not isinstance(alternatives, dict):
            self.problems.append("pv_alternatives must be a mapping of name to PV parameters")
            alternatives = {}
        for name, params in alternatives.items():
            scenario.pv_alternatives[str(name)] = self.pv(params, "pv_alternatives.{}".format(name))

        default = data.get("pv_default")
        if default is not None:
            scenario.default_alternative = str(default)
            if scenario.default_alternative not in scenario.pv_alternatives:
                self.problems.append("pv_default {} does not name an entry of pv_alternatives".format(default))
            elif scenario.pv is None:
                scenario.pv = scenario.pv_alternatives[scenario.default_alternative]

        if data.get("mc") is not None:
            scenario.mc = self.mc(data["mc"])
        return scenario

    def problem(self, data) -> PlanProblem:
        if not isinstance(data, dict):
            self.problems.append("problem must be a mapping")
            return PlanProblem()
        self._unknown(data, list(problem_fields) + ["plants"], "problem")
        problem = PlanProblem(
            horizon=self._integer(data, "horizon_periods", "problem"),
            required_count=self._integer(data, "required_plant_count", "problem"),
            discount_rate=self._number(data, "discount_rate_per_period", "problem"),
            mode=self._string(data, "mode", "problem"),
            allow_shortage=self._boolean(data, "allow_shortage", "problem"),
        )
        if problem.mode and problem.mode not in supported_modes:
            self.problems.append("problem.mode must be one of {}, got {}".format(supported_modes, problem.mode))

        plants = data.get("plants")
        if not isinstance(plants, list):
            self.problems.append("problem.plants must be a list")
            return problem
        for j, entry in enumerate(plants):
            problem.plants.append(self.plant(entry, "problem.plants[{}]".format(j)))
        ids = [p.id for p in problem.plants]
        duplicates = sorted({i for i in ids if ids.count(i) > 1})
        if duplicates:
            self.problems.append("problem.plants: duplicate plant id(s) {}".format(", ".join(duplicates)))
        return problem

    def plant(self, data, where: str) -> PlantSpec:
        if not isinstance(data, dict):
            self.problems.append("{} must be a mapping".format(where))
            return PlantSpec()
        self._unknown(data, ["id", "setup_cost", "periods"], where)
        plant = PlantSpec(id=str(data.get("id", "")), setup_cost=self._number(data, "setup_cost", where))
        if not plant.id:
            self.problems.append("{}.id is required".format(where))
        periods = data.get("periods")
        if not isinstance(periods, list):
            self.problems.append("{}.periods must be a list".format(where))
            return plant
        for t, row in enumerate(periods, start=1):
            at = "{}.periods[{}]".format(where, t - 1)
            if not isinstance(row, dict):
                self.problems.append("{} must be a mapping".format(at))
                continue
            self._unknown(row, list(period_fields), at)
            plant.periods.append(PeriodParams(**{attr: self._number(row, key, at) for key, attr in period_fields.items()}))
        return plant

    def pv(self, data, where: str) -> PvParams:
        if not isinstance(data, dict):
            self.problems.append("{} must be a mapping".format(where))
            return PvParams()
        self._unknown(data, list(pv_fields), where)
        values = {}
        for key, attr in pv_fields.items():
            values[attr] = self._integer(data, key, where) if attr == "lifetime" else self._number(data, key, where)
        return PvParams(**values)

    def mc(self, data) -> McOverlay:
        if not isinstance(data, dict):
            self.problems.append("mc must be a mapping")
            return McOverlay()
        self._unknown(data, list(mc_fields), "mc")
        overlay = McOverlay()
        if "replications" in data:
            overlay.replications = self._integer(data, "replications", "mc")
        if "seed" in data:
            overlay.seed = self._integer(data, "seed", "mc")
        if "spread" in data:
            overlay.spread = self._number(data, "spread", "mc")
        return overlay

    def _unknown(self, data: dict, known: list, where: str):
        for key in data:
            if key not in known:
                self.problems.append("{}: unknown field {}".format(where or "top level", key))

    def _present(self, data: dict, key: str, where: str) -> bool:
        if key not in data or data[key] is None:
            self.problems.append("{}.{} is required".format(where, key))
            return False
        return True

    def _number(self, data: dict, key: str, where: str) -> float:
        if not self._present(data, key, where):
            return 0.0
        value = data[key]
        # bool is an int subclass
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            self.problems.append("{}.{} must be a number, got {!r}".format(where, key, value))
            return 0.0
        return float(value)

    def _integer(self, data: dict, key: str, where: str) -> int:
        if not self._present(data, key, where):
            return 0
        value = data[key]
        if isinstance(value, bool) or not isinstance(value, int):
            self.problems.append("{}.{} must be an integer, got {!r}".format(where, key, value))
            return 0
        return value

    def _string(self, data: dict, key: str, where: str) -> str:
        if not self._present(data, key, where):
            return ""
        value = data[key]
        if not isinstance(value, str):
            self.problems.append("{}.{} must be a string, got {!r}".format(where, key, value))
            return ""
        return value

    def _boolean(self, data: dict, key: str, where: str) -> bool:
        if not self._present(data, key, where):
            return False
        value = data[key]
        if not isinstance(value, bool):
            self.problems.append("{}.{} must be true or false, got {!r}".format(where, key, value))
            return False
        return value

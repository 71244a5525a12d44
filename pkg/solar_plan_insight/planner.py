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
import os
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .linkage import breakeven_output, panel_count_match
from .models import ComparisonReport, DomainError, LinkResult, McReport, PlanSolution, PvParams, PvResult, ScenarioFile
from .plant_solver import solve_plan
from .pv_analytic import pv_cost, pv_optimal_output
from .report import ABSENT, Check, Discrepancy, ReportBundle, export_report, format_extensions
from .scenario import load_scenario
from .simulator import compare_models, run_simulation
from .utils import relative_discrepancy, resolve_scenario_path
from .verification import OracleVerdict, bisect_panel_count, breakeven_by_quadrature, confirm_stationary_point, oracle_agreement


class Config:
    out_dir: str = os.environ.get("SPI_OUT_DIR", os.path.join("/tmp", "spi-data"))
    log_level: str = os.environ.get("SPI_LOG_LEVEL", "info").lower()


log_level_map = {
    "error": logging.ERROR,
    "warning": logging.WARNING,
    "info": logging.INFO,
    "debug": logging.DEBUG,
}

# relative tolerances of the independent checks
check_tolerances = {
    "stationary_point": 1e-8,
    "optimal_cost": 1e-9,
    "breakeven": 1e-8,
    "panel_count": 1e-8,
}
discrepancy_tolerance = 1e-6

config = Config()


logging.basicConfig()
logging.getLogger().setLevel(log_level_map.get(config.log_level, logging.INFO))


@dataclass
class SolarPlanner(object):
    scenario: ScenarioFile = field(default_factory=ScenarioFile)
    name: str = ""
    n_jobs: int = 1

    do_save: bool = False
    out_dir: str = ""

    bundle: ReportBundle = field(default_factory=ReportBundle)

    def __post_init__(self):
        if not self.name:
            self.name = self.scenario.name or "scenario"
        self.bundle.metadata["scenario"] = self.name

    @staticmethod
    def from_target(target: str, **kwargs) -> "SolarPlanner":
        path = resolve_scenario_path(target)
        scenario = load_scenario(path)
        name = scenario.name or os.path.splitext(os.path.basename(path))[0]
        return SolarPlanner(scenario=scenario, name=name, **kwargs)

    def solve(self) -> PlanSolution:
        if self.bundle.solution is None:
            solution = solve_plan(self.scenario.problem, n_jobs=self.n_jobs)
            self.bundle.solution = solution
            reported = self.scenario.reported.get("objective")
            if reported is not None:
                self._record("objective", solution.objective, reported)
        return self.bundle.solution

    def oracle(self, grid_steps: int = 200) -> OracleVerdict:
        verdict = oracle_agreement(self.scenario.problem, grid_steps=grid_steps)
        reported = self.scenario.reported.get("objective")
        if reported is not None and verdict.oracle_objective is not None:
            self._record("oracle objective", verdict.oracle_objective, reported)
        return verdict

    def optimize_pv(self, alternative: str = "", verify: bool = False) -> Dict[str, PvResult]:
        results = {}
        reported = self.scenario.reported.get("pv", {}) or {}
        for name, params in self._alternatives(alternative):
            if name in self.bundle.pv:
                results[name] = self.bundle.pv[name]
                continue
            result = pv_optimal_output(params)
            results[name] = result
            self.bundle.pv[name] = result
            if verify:
                self._verify_pv(name, params, result)
            expected = reported.get(name, {}) or {}
            if "z_star" in expected:
                self._record("{} Z*".format(name), result.z_star, expected["z_star"])
            if "cost" in expected:
                self._record("{} |F*|".format(name), result.f_star_magnitude, expected["cost"])
        return results

    def link(self, alternative: str = "", verify: bool = False) -> LinkResult:
        problem = self.scenario.problem
        solution = self.solve()
        name, params = self._alternatives(alternative)[0]
        result = self.optimize_pv(name if alternative else "")[name]

        z_target = breakeven_output(problem, solution)
        if verify:
            quad = breakeven_by_quadrature(problem, solution)
            self._check("breakeven by quadrature", quad, z_target, check_tolerances["breakeven"])

        link = panel_count_match(z_target, params.panel_price, params.op_cost, result.f_star_magnitude, result.beta)
        self.bundle.link = link
        if verify:
            try:
                n_bisect = bisect_panel_count(z_target, params.panel_price, params.op_cost, result.f_star_magnitude, result.beta)
            except ValueError as e:
                # the bracket [1e-6, 1e9] holds no sign change
                self.bundle.checks.append(Check(name="panel count by bisection", reference=link.n_star, passed=False, message=str(e)))
            else:
                self._check("panel count by bisection", n_bisect, link.n_star, check_tolerances["panel_count"])
        return link

    def simulate(self, replications: Optional[int] = None, seed: Optional[int] = None, spread: Optional[float] = None) -> McReport:
        mc_config = self.scenario.mc_config(replications=replications, seed=seed, spread=spread)
        self.bundle.metadata["replications"] = mc_config.replications
        self.bundle.metadata["seed"] = mc_config.seed
        report = run_simulation(mc_config, n_jobs=self.n_jobs)
        self.bundle.mc = report
        return report

    def compare(self, alternative: str = "") -> ComparisonReport:
        solution = self.solve()
        name, _ = self._alternatives(alternative)[0]
        result = self.optimize_pv(name if alternative else "")[name]
        conclusion = self.scenario.reported.get("conclusion", {}) or {}
        comparison = compare_models(self.scenario.problem, solution, result, reported_cheaper=str(conclusion.get("cheaper", "")))
        self.bundle.comparison = comparison
        if "plan_cost" in conclusion:
            self._record("conclusion plan cost", comparison.plan_cost, conclusion["plan_cost"])
        if "pv_cost" in conclusion:
            self._record("conclusion rooftop cost", comparison.pv_cost_magnitude, conclusion["pv_cost"])
        return comparison

    def report(self, sections: List[str], fmt: str, label: str = "") -> str:
        self.bundle.sections = list(sections)
        for name in self.bundle.absent_sections():
            logging.warning("report() section {} has no result and is marked {}".format(name, ABSENT))
        text = export_report(self.bundle, fmt)
        if self.do_save or self.out_dir:
            self.save(fmt, label or "-".join(sections))
        return text

    def save(self, fmt: str, label: str) -> str:
        out_dir = self.out_dir or config.out_dir
        os.makedirs(out_dir, exist_ok=True)
        path = os.path.join(out_dir, "{}-{}.{}".format(self.name, label, format_extensions[fmt]))
        export_report(self.bundle, fmt, path)
        logging.info("report saved at {}".format(path))
        return path

    def _alternatives(self, alternative: str) -> List[Tuple[str, PvParams]]:
        if alternative == "all":
            names = self.scenario.alternative_names()
            if not names:
                raise DomainError("scenario {} has no rooftop PV parameters".format(self.name))
            if not self.scenario.pv_alternatives:
                return [(names[0], self.scenario.alternative(""))]
            return [(n, self.scenario.alternative(n)) for n in names]
        if alternative:
            return [(alternative, self.scenario.alternative(alternative))]
        return [(self.scenario.default_alternative or "default", self.scenario.alternative(""))]

    def _verify_pv(self, name: str, params: PvParams, result: PvResult):
        z_numeric = confirm_stationary_point(params)
        self._check("{} golden-section z".format(name), z_numeric, result.z_stationary, check_tolerances["stationary_point"])
        self._check("{} F(z stationary)".format(name), float(pv_cost(params, result.z_stationary)), result.f_star, check_tolerances["optimal_cost"])

    def _check(self, name: str, value: float, reference: float, tolerance: float):
        error = relative_discrepancy(value, reference)
        passed = error <= tolerance
        self.bundle.checks.append(Check(name=name, value=value, reference=reference, relative_error=error, passed=passed))
        if not passed:
            logging.warning("{}: {} differs from {} by {:.3g} relative (tolerance {})".format(name, value, reference, error, tolerance))

    def _record(self, quantity: str, computed: float, reported: float):
        reported = float(reported)
        relative = relative_discrepancy(computed, reported)
        self.bundle.discrepancies.append(Discrepancy(quantity=quantity, computed=computed, reported=reported, relative=relative))
        if relative > discrepancy_tolerance:
            logging.warning("{}: computed {} differs from the reported {} ({:.3g} relative)".format(quantity, computed, reported, relative))

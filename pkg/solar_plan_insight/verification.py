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
from dataclasses import dataclass, field
from typing import List, Optional

import mpmath
import numpy as np
from scipy import integrate, optimize

from .finance import annuity_factor, discount_factor
from .linkage import output_given_panels
from .models import InfeasibleProblemError, Mode, PeriodParams, PlanProblem, PlanSolution, PlantSpec, PvParams
from .oracle import enumerate_oracle
from .plant_solver import solve_plan
from .pv_analytic import pv_cost


def golden_section_minimize(func, lo: float, hi: float, rel_tol: float = 1e-15, max_iter: int = 400, dps: int = 40) -> float:
    """Minimize a unimodal func on [lo, hi] by golden-section search.

    The search runs in mpmath arithmetic with `dps` digits: in float64 the
    function values near a quadratic minimum stop resolving the argument at
    about sqrt(machine epsilon).
    """
    with mpmath.workdps(dps):
        invphi = (mpmath.sqrt(5) - 1) / 2
        a = mpmath.mpf(lo)
        b = mpmath.mpf(hi)
        c = b - invphi * (b - a)
        d = a + invphi * (b - a)
        fc = func(c)
        fd = func(d)
        for _ in range(max_iter):
            if abs(b - a) <= rel_tol * max(1, abs(a), abs(b)):
                break
            if fc < fd:
                b, d, fd = d, c, fc
                c = b - invphi * (b - a)
                fc = func(c)
            else:
                a, c, fc = c, d, fd
                d = a + invphi * (b - a)
                fd = func(d)
        return float((a + b) / 2)


def confirm_stationary_point(params: PvParams) -> float:
    """Locate the minimizer of pv_cost numerically on [-10 C / beta, 0]."""
    beta = annuity_factor(params)
    return golden_section_minimize(lambda z: pv_cost(params, z), -10.0 * params.panel_price / beta, 0.0)


def bisect_panel_count(z_target: float, c: float, q: float, f_target: float, beta: float, lo: float = 1e-6, hi: float = 1e9) -> float:
    def gap(n):
        return output_given_panels(n, c, q, f_target, beta) - z_target

    return optimize.bisect(gap, lo, hi, xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=400)


def breakeven_by_quadrature(problem: PlanProblem, solution: PlanSolution) -> float:
    """Breakeven output with the excess-cost integral done by numeric quadrature."""
    excess = 0.0
    setup = 0.0
    npw = 0.0
    for j, plant in enumerate(problem.plants):
        if solution.selected[j] != 1:
            continue
        setup += plant.setup_cost
        for t, pp in enumerate(plant.periods, start=1):
            k = solution.surplus[j][t - 1]
            area, _ = integrate.quad(lambda x, h=pp.excess: h * x, 0.0, k, epsabs=0.0, epsrel=1e-12)
            excess += area * discount_factor(problem.discount_rate, t)
            npw += pp.npw
    return (-excess - setup) / npw


def random_problem(
    rng: np.random.Generator,
    plants: int,
    periods: int,
    required_count: Optional[int] = None,
    mode: str = Mode.RECTIFIED,
    allow_shortage: bool = False,
    cost_high: float = 1e5,
    power_high: float = 1e4,
) -> PlanProblem:
    specs = []
    for j in range(plants):
        rows = []
        for _ in range(periods):
            cap_min = float(rng.uniform(0.0, power_high))
            rows.append(
                PeriodParams(
                    npw=float(rng.uniform(0.0, cost_high)),
                    transfer=float(rng.uniform(0.0, cost_high)),
                    excess=float(rng.uniform(0.0, cost_high)),
                    cap_min=cap_min,
                    cap_max=float(rng.uniform(cap_min, power_high)),
                    demand=float(rng.uniform(0.0, power_high)),
                )
            )
        specs.append(PlantSpec(id="p{}".format(j + 1), setup_cost=float(rng.uniform(0.0, cost_high)), periods=rows))
    if required_count is None:
        required_count = int(rng.integers(0, plants + 1))
    return PlanProblem(
        plants=specs,
        horizon=periods,
        required_count=required_count,
        discount_rate=float(rng.uniform(0.0, 0.2)),
        mode=mode,
        allow_shortage=allow_shortage,
    )


@dataclass
class OracleVerdict(object):
    agree: bool = False
    feasible: bool = False
    solver_objective: Optional[float] = None
    oracle_objective: Optional[float] = None
    solver_selected: List[str] = field(default_factory=list)
    oracle_selected: List[str] = field(default_factory=list)
    relative_gap: float = 0.0


def oracle_agreement(problem: PlanProblem, grid_steps: int = 200, rel_tol: float = 1e-6) -> OracleVerdict:
    """Solve with both the ranked selection and the enumeration and compare."""
    solver = _solve_or_none(solve_plan, problem)
    oracle = _solve_or_none(lambda p: enumerate_oracle(p, grid_steps=grid_steps), problem)
    verdict = OracleVerdict()
    if solver is None or oracle is None:
        verdict.agree = solver is None and oracle is None
        verdict.feasible = False
        if solver is not None:
            verdict.solver_objective = solver.objective
            verdict.solver_selected = solver.selected_ids
        if oracle is not None:
            verdict.oracle_objective = oracle.objective
            verdict.oracle_selected = oracle.selected_ids
        return verdict
    verdict.feasible = True
    verdict.solver_objective = solver.objective
    verdict.oracle_objective = oracle.objective
    verdict.solver_selected = solver.selected_ids
    verdict.oracle_selected = oracle.selected_ids
    scale = max(1.0, abs(solver.objective), abs(oracle.objective))
    verdict.relative_gap = abs(solver.objective - oracle.objective) / scale
    verdict.agree = verdict.relative_gap <= rel_tol
    logging.debug("oracle_agreement() solver={} oracle={} gap={}".format(solver.objective, oracle.objective, verdict.relative_gap))
    return verdict


def _solve_or_none(solve, problem):
    try:
        return solve(problem)
    except InfeasibleProblemError:
        return None

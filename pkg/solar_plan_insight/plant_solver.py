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
from typing import List, Optional

import numpy as np
from joblib import Parallel, delayed

from .constraint_checker import check_feasibility, validate_problem
from .finance import discount_factor
from .models import (
    DispatchResult,
    InfeasibleProblemError,
    InvalidProblemError,
    Mode,
    PlanProblem,
    PlanSolution,
    PlantCost,
    PlantSpec,
    ProblemArrays,
)


__all__ = [
    "inner_optimal_dispatch",
    "plant_total_cost",
    "solve_plan",
    "evaluate_objective",
    "check_feasibility",
    "period_cost_matrix",
]


def inner_optimal_dispatch(plant: PlantSpec, t: int, discount_rate: float, mode: str, allow_shortage: bool) -> DispatchResult:
    """Cheapest production of a selected plant in period t (1-based).

    With K = Z - D substituted, the period cost is affine in Z with slope
    (NPW + V + H) >= 0, so the lower end of the feasible interval is optimal.
    """
    pp = plant.periods[t - 1]
    weight = discount_factor(discount_rate, t)
    if mode == Mode.RECTIFIED and not allow_shortage:
        z = max(pp.cap_min, pp.demand)
        if z > pp.cap_max:
            return DispatchResult(
                period=t,
                production=0.0,
                surplus=0.0,
                period_cost=math.inf,
                feasible=False,
                reason="period {}: required output {} exceeds cap_max {}".format(t, z, pp.cap_max),
            )
    else:
        z = pp.cap_min
    k = z - pp.demand
    cost = ((pp.npw + pp.transfer) * z + pp.excess * k) * weight
    return DispatchResult(period=t, production=z, surplus=k, period_cost=cost, feasible=True)


def plant_total_cost(plant: PlantSpec, problem: PlanProblem) -> PlantCost:
    dispatch = [
        inner_optimal_dispatch(plant, t, problem.discount_rate, problem.mode, problem.allow_shortage) for t in range(1, problem.horizon + 1)
    ]
    feasible = all(d.feasible for d in dispatch)
    total = plant.setup_cost + sum(d.period_cost for d in dispatch) if feasible else math.inf
    return PlantCost(plant_id=plant.id, total=total, feasible=feasible, dispatch=dispatch)


def idle_cost(plant: PlantSpec, problem: PlanProblem) -> Optional[float]:
    """Objective contribution of leaving the plant unselected, or None if it cannot stay idle.

    Literal mode applies the capacity bounds to Y*Z, so any positive cap_min
    forces selection, and the surplus of an idle plant is -D.
    """
    if problem.mode != Mode.LITERAL:
        return 0.0
    if any(pp.cap_min > 0.0 for pp in plant.periods):
        return None
    return sum(-pp.excess * pp.demand * discount_factor(problem.discount_rate, t) for t, pp in enumerate(plant.periods, start=1))


def solve_plan(problem: PlanProblem, n_jobs: int = 1) -> PlanSolution:
    violations = validate_problem(problem)
    if violations:
        raise InvalidProblemError(violations)

    if n_jobs == 1:
        costs = [plant_total_cost(plant, problem) for plant in problem.plants]
    else:
        costs = Parallel(n_jobs=n_jobs)(delayed(plant_total_cost)(plant, problem) for plant in problem.plants)
    idle = [idle_cost(plant, problem) for plant in problem.plants]

    required = problem.required_count
    forced = [j for j, c in enumerate(idle) if c is None]
    if len(forced) > required:
        blocking = {problem.plants[j].id: "positive minimum capacity forces selection" for j in forced}
        raise InfeasibleProblemError(
            "{} plants cannot stay unselected but only {} may be selected: {}".format(len(forced), required, ", ".join(blocking)),
            blocking=blocking,
        )

    feasible = [j for j, c in enumerate(costs) if c.feasible]
    if len(feasible) < required or any(not costs[j].feasible for j in forced):
        blocking = {}
        for c in costs:
            if c.feasible:
                continue
            blocking[c.plant_id] = "; ".join(d.reason for d in c.dispatch if not d.feasible)
        raise InfeasibleProblemError(
            "only {} of {} plants can meet demand within capacity, {} required; blocking: {}".format(
                len(feasible), len(costs), required, ", ".join(blocking)
            ),
            blocking=blocking,
        )

    # rank by the marginal cost of selecting; ties go to the lowest index
    optional = sorted((j for j in feasible if j not in forced), key=lambda j: (costs[j].total - idle[j], j))
    chosen = set(forced) | set(optional[: required - len(forced)])
    selected = [1 if j in chosen else 0 for j in range(len(problem.plants))]

    production = []
    surplus = []
    for j, plant in enumerate(problem.plants):
        if selected[j]:
            production.append([d.production for d in costs[j].dispatch])
            surplus.append([d.surplus for d in costs[j].dispatch])
        elif problem.mode == Mode.LITERAL:
            production.append([0.0] * problem.horizon)
            surplus.append([-pp.demand for pp in plant.periods])
        else:
            production.append([0.0] * problem.horizon)
            surplus.append([0.0] * problem.horizon)

    solution = build_solution(problem, selected, production, surplus)
    logging.debug("solve_plan() selected {} with objective {}".format(solution.selected_ids, solution.objective))
    return solution


def build_solution(problem: PlanProblem, selected: List[int], production, surplus) -> PlanSolution:
    """Attach costs to a (Y, Z, K) triple; objective and breakdown come from one evaluation."""
    arr = problem.as_arrays()
    y, z, k = _as_arrays(problem, selected, production, surplus)
    cells = period_cost_matrix(arr, y, z, k)
    per_plant = arr.setup * y + cells.sum(axis=1)
    return PlanSolution(
        selected=[int(v) for v in selected],
        production=z.tolist(),
        surplus=k.tolist(),
        objective=_objective(arr, y, cells),
        per_plant_cost=per_plant.tolist(),
        period_cost=cells.tolist(),
        plant_ids=problem.plant_ids,
        mode=problem.mode,
        allow_shortage=problem.allow_shortage,
    )


def period_cost_matrix(arr: ProblemArrays, y: np.ndarray, z: np.ndarray, k: np.ndarray) -> np.ndarray:
    return ((arr.npw + arr.transfer) * y[:, None] * z + arr.excess * k) * arr.discount[None, :]


def evaluate_objective(problem: PlanProblem, solution: PlanSolution) -> float:
    """sum_j R_j Y_j + sum_jt (NPW+V) Y_j Z_jt (1+i)^-t + sum_jt H_jt K_jt (1+i)^-t"""
    arr = problem.as_arrays()
    y, z, k = _as_arrays(problem, solution.selected, solution.production, solution.surplus)
    return _objective(arr, y, period_cost_matrix(arr, y, z, k))


def _objective(arr: ProblemArrays, y: np.ndarray, cells: np.ndarray) -> float:
    return float(np.dot(arr.setup, y) + cells.sum())


def _as_arrays(problem: PlanProblem, selected, production, surplus):
    shape = (len(problem.plants), problem.horizon)
    y = np.asarray(selected, dtype=float).reshape(shape[0])
    z = np.asarray(production, dtype=float).reshape(shape)
    k = np.asarray(surplus, dtype=float).reshape(shape)
    return y, z, k

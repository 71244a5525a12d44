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

import itertools
import logging
import math

import numpy as np

from .constraint_checker import validate_problem
from .models import (
    DomainError,
    InfeasibleProblemError,
    InvalidProblemError,
    Mode,
    OracleRefusedError,
    PlanProblem,
    PlanSolution,
    ProblemArrays,
)
from .plant_solver import build_solution


max_oracle_plants = 12
min_grid_steps = 100


def enumerate_oracle(problem: PlanProblem, grid_steps: int = 200) -> PlanSolution:
    """Brute-force reference for solve_plan.

    Every selection with sum(Y) = F is tried; production is chosen per cell by
    grid search over the capacity interval, with the interval endpoints and the
    demand point added as candidates.
    """
    m = len(problem.plants)
    if m > max_oracle_plants:
        raise OracleRefusedError("enumeration over 2^{} selections refused; the oracle accepts at most {} plants".format(m, max_oracle_plants))
    if grid_steps < min_grid_steps:
        raise DomainError("grid_steps must be >= {}, got {}".format(min_grid_steps, grid_steps))
    violations = validate_problem(problem)
    if violations:
        raise InvalidProblemError(violations)

    arr = problem.as_arrays()
    # a cell's search does not depend on the other plants, so both outcomes are tabulated once
    on_z, on_cost = _search_selected(problem, arr, grid_steps)
    off_z, off_k, off_cost = _idle_cells(problem, arr)

    best = None
    combos = list(itertools.combinations(range(m), problem.required_count))
    for n, combo in enumerate(combos):
        y = np.zeros(m)
        y[list(combo)] = 1.0
        mask = y[:, None] == 1.0
        cells = np.where(mask, on_cost, off_cost)
        if not np.all(np.isfinite(cells)):
            continue
        value = float(np.dot(arr.setup, y) + cells.sum())
        if best is None or value < best[0]:
            best = (value, y, np.where(mask, on_z, off_z), np.where(mask, on_z - arr.demand, off_k))
        logging.debug("enumerate_oracle() [{}/{}] {}".format(n + 1, len(combos), value))

    if best is None:
        raise InfeasibleProblemError("no selection of {} out of {} plants admits a feasible dispatch".format(problem.required_count, m))
    _, y, z, k = best
    return build_solution(problem, [int(v) for v in y], z, k)


def _search_selected(problem: PlanProblem, arr: ProblemArrays, grid_steps: int):
    steps = np.linspace(0.0, 1.0, grid_steps)
    grid = arr.cap_min[..., None] + (arr.cap_max - arr.cap_min)[..., None] * steps
    extra = np.stack(
        [
            arr.cap_min,
            arr.cap_max,
            np.clip(arr.demand, arr.cap_min, arr.cap_max),
            np.maximum(arr.cap_min, arr.demand),
        ],
        axis=-1,
    )
    z = np.concatenate([grid, extra], axis=-1)
    surplus = z - arr.demand[..., None]
    cost = ((arr.npw + arr.transfer)[..., None] * z + arr.excess[..., None] * surplus) * arr.discount[None, :, None]

    feasible = z <= arr.cap_max[..., None]
    if problem.mode == Mode.RECTIFIED and not problem.allow_shortage:
        feasible &= surplus >= 0.0
    cost = np.where(feasible, cost, math.inf)

    best = np.argmin(cost, axis=-1)
    best_z = np.take_along_axis(z, best[..., None], axis=-1)[..., 0]
    best_cost = np.take_along_axis(cost, best[..., None], axis=-1)[..., 0]
    return best_z, best_cost


def _idle_cells(problem: PlanProblem, arr: ProblemArrays):
    zeros = np.zeros_like(arr.demand)
    if problem.mode != Mode.LITERAL:
        return zeros, zeros, zeros
    # Y*Z = 0 must still satisfy cap_min <= Y*Z
    k = -arr.demand
    cost = np.where(arr.cap_min <= 0.0, arr.excess * k * arr.discount[None, :], math.inf)
    return zeros, k, cost

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

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from solar_plan_insight.constraint_checker import check_feasibility
from solar_plan_insight.models import InfeasibleProblemError, InvalidProblemError, Mode, PeriodParams, PlanProblem, PlanSolution, PlantSpec
from solar_plan_insight.plant_solver import evaluate_objective, idle_cost, inner_optimal_dispatch, plant_total_cost, solve_plan
from solar_plan_insight.scenario import load_scenario
from solar_plan_insight.utils import resolve_scenario_path
from solar_plan_insight.verification import random_problem


@pytest.mark.parametrize(
    "name, selected, objective",
    [
        ("table1_low_demand", ["plant1", "plant3", "plant4"], 13_716_400_000.0),
        ("table2_medium_demand", ["plant2", "plant3", "plant4"], 11_731_800_000.0),
        ("table3_high_demand", ["plant2", "plant3", "plant4"], 11_686_300_000.0),
    ],
)
def test_solve_shipped_scenarios(name, selected, objective):
    problem = _load(name)
    solution = solve_plan(problem)
    assert solution.selected_ids == selected
    assert solution.objective == pytest.approx(objective, rel=1e-12)
    assert evaluate_objective(problem, solution) == pytest.approx(solution.objective, rel=1e-12)
    assert check_feasibility(problem, solution) == []
    assert sum(solution.per_plant_cost) == pytest.approx(solution.objective, rel=1e-12)


def test_table1_plant2_cannot_meet_demand():
    problem = _load("table1_low_demand")
    cost = plant_total_cost(problem.plants[1], problem)
    assert not cost.feasible
    assert math.isinf(cost.total)
    assert "exceeds cap_max" in cost.dispatch[0].reason

    problem.required_count = 4
    with pytest.raises(InfeasibleProblemError) as e:
        solve_plan(problem)
    assert list(e.value.blocking) == ["plant2"]


def test_hand_computed_instance():
    problem = _single(discount_rate=0.0)
    solution = solve_plan(problem)
    assert solution.selected == [1]
    assert solution.production == [[4.0]]
    assert solution.surplus == [[0.0]]
    assert solution.objective == pytest.approx(18.0)


def test_discounting_applies_per_period():
    solution = solve_plan(_single(discount_rate=0.1))
    assert solution.objective == pytest.approx(10.0 + 8.0 / 1.1, rel=1e-12)


def test_dispatch_uses_lower_bound():
    plant = PlantSpec(id="p", setup_cost=0.0, periods=[PeriodParams(npw=1.0, transfer=1.0, excess=1.0, cap_min=6.0, cap_max=10.0, demand=4.0)])
    d = inner_optimal_dispatch(plant, 1, 0.0, Mode.RECTIFIED, False)
    assert (d.production, d.surplus, d.feasible) == (6.0, 2.0, True)
    # shortage allowed: cap_min even when below demand
    plant.periods[0].cap_min = 1.0
    d = inner_optimal_dispatch(plant, 1, 0.0, Mode.RECTIFIED, True)
    assert (d.production, d.surplus) == (1.0, -3.0)


def test_zero_required_plants():
    problem = _load("table1_low_demand")
    problem.required_count = 0
    solution = solve_plan(problem)
    assert solution.selected == [0, 0, 0, 0]
    assert solution.objective == 0.0


def test_invalid_problem_is_rejected():
    problem = _single(discount_rate=0.0)
    problem.plants[0].periods[0].cap_min = 20.0
    with pytest.raises(InvalidProblemError) as e:
        solve_plan(problem)
    assert e.value.violations[0].rule == "capacity_bounds"


def test_literal_mode_forces_plants_with_minimum_capacity():
    problem = _load("table1_low_demand")
    problem.mode = Mode.LITERAL
    # every plant has cap_min > 0, so at most F = 3 of 4 cannot stay idle
    assert all(idle_cost(p, problem) is None for p in problem.plants)
    with pytest.raises(InfeasibleProblemError) as e:
        solve_plan(problem)
    assert len(e.value.blocking) == 4


def test_literal_mode_idle_plant_contributes_negative_surplus():
    problem = _single(discount_rate=0.0, mode=Mode.LITERAL)
    problem.plants[0].periods[0].cap_min = 0.0
    problem.required_count = 0
    solution = solve_plan(problem)
    assert solution.selected == [0]
    assert solution.surplus == [[-4.0]]
    assert solution.objective == pytest.approx(-4.0)
    assert check_feasibility(problem, solution) == []


def test_parallel_costs_match_serial():
    problem = _load("table2_medium_demand")
    assert solve_plan(problem, n_jobs=2) == solve_plan(problem)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**32 - 1), scale=st.floats(min_value=1e-3, max_value=1e3))
def test_cost_scaling_keeps_selection(seed, scale):
    problem = random_problem(np.random.default_rng(seed), 5, 2, allow_shortage=True)
    scaled = random_problem(np.random.default_rng(seed), 5, 2, allow_shortage=True)
    for plant in scaled.plants:
        plant.setup_cost *= scale
        for pp in plant.periods:
            pp.npw *= scale
            pp.transfer *= scale
            pp.excess *= scale
    base = solve_plan(problem)
    other = solve_plan(scaled)
    assert other.selected == base.selected
    assert other.objective == pytest.approx(base.objective * scale, rel=1e-9, abs=1e-3 * scale)


@pytest.mark.parametrize("mode", [Mode.RECTIFIED, Mode.LITERAL])
def test_objective_matches_direct_sum_on_random_solutions(mode):
    rng = np.random.default_rng(404)
    for _ in range(50):
        m, t = int(rng.integers(1, 7)), int(rng.integers(1, 4))
        problem = random_problem(rng, m, t, mode=mode)
        solution = PlanSolution(
            selected=rng.integers(0, 2, size=m).tolist(),
            production=rng.uniform(0.0, 1e4, size=(m, t)).tolist(),
            surplus=rng.uniform(0.0, 1e4, size=(m, t)).tolist(),
        )
        assert evaluate_objective(problem, solution) == pytest.approx(_direct_objective(problem, solution), rel=1e-12)


def test_raising_excess_cost_never_lowers_optimum():
    solved = 0
    for seed in range(60):
        rng = np.random.default_rng(seed)
        problem = random_problem(rng, 6, 2, required_count=2)
        try:
            before = solve_plan(problem).objective
        except InfeasibleProblemError:
            continue
        j, t = int(rng.integers(0, 6)), int(rng.integers(0, 2))
        problem.plants[j].periods[t].excess += float(rng.uniform(0.0, 1e5))
        after = solve_plan(problem).objective
        assert after >= before * (1 - 1e-12)
        solved += 1
    assert solved > 20


@pytest.mark.parametrize("allow_shortage", [False, True])
def test_objective_separates_into_plant_costs(allow_shortage):
    solved = 0
    for seed in range(60):
        problem = random_problem(np.random.default_rng(seed), 6, 3, required_count=2, allow_shortage=allow_shortage)
        try:
            solution = solve_plan(problem)
        except InfeasibleProblemError:
            continue
        scale = sum(abs(c) for c in solution.per_plant_cost) or 1.0
        assert sum(solution.per_plant_cost) == pytest.approx(solution.objective, rel=1e-12, abs=1e-12 * scale)
        for j, plant in enumerate(problem.plants):
            if solution.selected[j]:
                assert solution.per_plant_cost[j] == pytest.approx(plant_total_cost(plant, problem).total, rel=1e-12, abs=1e-12 * scale)
            else:
                assert solution.per_plant_cost[j] == 0.0
        solved += 1
    assert solved > 20


def _load(name):
    return load_scenario(resolve_scenario_path(name)).problem


def _single(discount_rate, mode=Mode.RECTIFIED):
    return PlanProblem(
        plants=[
            PlantSpec(
                id="p",
                setup_cost=10.0,
                periods=[PeriodParams(npw=1.0, transfer=1.0, excess=1.0, cap_min=0.0, cap_max=10.0, demand=4.0)],
            )
        ],
        horizon=1,
        required_count=1,
        discount_rate=discount_rate,
        mode=mode,
        allow_shortage=False,
    )


def _direct_objective(problem, solution):
    terms = []
    for j, plant in enumerate(problem.plants):
        y = solution.selected[j]
        terms.append(plant.setup_cost * y)
        for t, pp in enumerate(plant.periods):
            weight = (1.0 + problem.discount_rate) ** -(t + 1)
            terms.append((pp.npw + pp.transfer) * y * solution.production[j][t] * weight)
            terms.append(pp.excess * solution.surplus[j][t] * weight)
    return math.fsum(terms)

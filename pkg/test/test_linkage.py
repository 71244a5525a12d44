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

from solar_plan_insight.linkage import breakeven_output, output_given_panels, panel_count_match
from solar_plan_insight.models import (
    DegenerateMatchError,
    DomainError,
    ExtraneousRootError,
    NoRealSolutionError,
    PeriodParams,
    PlanProblem,
    PlantSpec,
    ZeroDenominatorError,
)
from solar_plan_insight.plant_solver import solve_plan
from solar_plan_insight.scenario import load_scenario
from solar_plan_insight.utils import resolve_scenario_path
from solar_plan_insight.verification import bisect_panel_count, breakeven_by_quadrature


def test_breakeven_of_single_plant():
    problem = _single(setup_cost=2.0, npw=1.0, excess=0.0)
    assert breakeven_output(problem, solve_plan(problem)) == pytest.approx(-2.0)


def test_breakeven_without_fixed_or_excess_costs():
    problem = _single(setup_cost=0.0, npw=1.0, excess=0.0)
    assert breakeven_output(problem, solve_plan(problem)) == 0.0


def test_breakeven_needs_operational_cost():
    problem = _single(setup_cost=2.0, npw=0.0, excess=1.0)
    with pytest.raises(ZeroDenominatorError):
        breakeven_output(problem, solve_plan(problem))


def test_breakeven_of_table1():
    problem = _load("table1_low_demand")
    solution = solve_plan(problem)
    # no surplus; setup 12e9 over operational cost 2.2e5
    assert breakeven_output(problem, solution) == pytest.approx(-12e9 / 2.2e5, rel=1e-12)


@pytest.mark.parametrize("name", ["table1_low_demand", "table2_medium_demand", "table3_high_demand"])
def test_breakeven_matches_quadrature(name):
    problem = _load(name)
    solution = solve_plan(problem)
    assert breakeven_output(problem, solution) == pytest.approx(breakeven_by_quadrature(problem, solution), rel=1e-8)


def test_output_given_panels_hand_example():
    assert output_given_panels(1.0, 1.0, 1.0, 4.0, 2.0) == pytest.approx((-1 + math.sqrt(17)) / 2, rel=1e-15)
    assert output_given_panels(3.0, 2.0, 5.0, 0.0, 1.5) == 0.0


def test_output_given_panels_errors():
    with pytest.raises(NoRealSolutionError):
        output_given_panels(1.0, 0.0, 1.0, -1.0, 2.0)
    with pytest.raises(DomainError):
        output_given_panels(0.0, 1.0, 1.0, 4.0, 2.0)
    with pytest.raises(DomainError):
        output_given_panels(1.0, 1.0, 1.0, 4.0, 0.0)


def test_panel_count_hand_example():
    z = (-1 + math.sqrt(17)) / 2
    result = panel_count_match(z, 1.0, 1.0, 4.0, 2.0)
    assert result.n_star == pytest.approx(1.0, rel=1e-12)
    assert result.n_star_ceil in (1, 2)
    assert result.residual <= 1e-9


def test_panel_count_degenerate_when_target_is_zero():
    with pytest.raises(DegenerateMatchError):
        panel_count_match(0.0, 1.0, 1.0, 0.0, 2.0)


@pytest.mark.parametrize("z_target", [-0.5, -1e6])
def test_panel_count_rejects_unreachable_output(z_target):
    with pytest.raises(ExtraneousRootError):
        panel_count_match(z_target, 1.0, 1.0, 4.0, 2.0)


def test_round_trip_and_bisection_agree():
    rng = np.random.default_rng(11)
    for _ in range(120):
        c = float(rng.uniform(1.0, 1000.0))
        q = float(rng.uniform(0.1, 100.0))
        f = float(10 ** rng.uniform(0.0, 10.0))
        beta = float(rng.uniform(0.1, 10.0))
        n_true = float(10 ** rng.uniform(-2.0, 6.0))
        z = output_given_panels(n_true, c, q, f, beta)

        result = panel_count_match(z, c, q, f, beta)
        assert result.n_star == pytest.approx(n_true, rel=1e-8)
        assert output_given_panels(result.n_star, c, q, f, beta) == pytest.approx(z, rel=1e-9)
        assert bisect_panel_count(z, c, q, f, beta) == pytest.approx(result.n_star, rel=1e-8)


def test_output_decreases_with_panel_count():
    counts = np.logspace(-3, 6, 200)
    outputs = [output_given_panels(float(n), 410.0, 80.0, 3.8e9, 3.2) for n in counts]
    assert all(a > b for a, b in zip(outputs, outputs[1:]))


def _load(name):
    return load_scenario(resolve_scenario_path(name)).problem


def _single(setup_cost, npw, excess):
    return PlanProblem(
        plants=[PlantSpec(id="p", setup_cost=setup_cost, periods=[PeriodParams(npw=npw, transfer=0.0, excess=excess, cap_min=0.0, cap_max=10.0, demand=3.0)])],
        horizon=1,
        required_count=1,
        discount_rate=0.0,
        mode="rectified",
        allow_shortage=False,
    )

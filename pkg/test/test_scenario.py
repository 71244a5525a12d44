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

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from solar_plan_insight.models import (
    McOverlay,
    Mode,
    PvParams,
    ScenarioFile,
    ScenarioInvariantError,
    ScenarioNotFoundError,
    ScenarioSchemaError,
    ScenarioSyntaxError,
)
from solar_plan_insight.scenario import dump_scenario, load_scenario, parse_scenario
from solar_plan_insight.utils import dataset_names, resolve_scenario_path
from solar_plan_insight.verification import random_problem

shipped = ["table1_low_demand", "table2_medium_demand", "table3_high_demand", "table4_rooftop"]


def test_all_datasets_are_shipped():
    assert dataset_names() == shipped


@pytest.mark.parametrize("name", shipped)
def test_shipped_scenarios_load_without_violations(name):
    scenario = load_scenario(resolve_scenario_path(name))
    assert scenario.name == name
    assert len(scenario.problem.plants) == 4
    assert scenario.problem.horizon == 2
    assert scenario.problem.required_count == 3


@pytest.mark.parametrize("name", shipped)
def test_shipped_scenarios_round_trip(name):
    scenario = load_scenario(resolve_scenario_path(name))
    assert parse_scenario(dump_scenario(scenario)) == scenario


def test_rooftop_scenario_alternatives():
    scenario = load_scenario(resolve_scenario_path("table4_rooftop"))
    assert scenario.alternative_names() == ["korea", "china", "taiwan", "usa", "japan"]
    assert scenario.default_alternative == "korea"
    assert scenario.alternative("") == scenario.alternative("korea")
    assert scenario.alternative("usa").lifetime == 36
    assert scenario.reported["conclusion"]["cheaper"] == "plant"


@settings(max_examples=40, deadline=None)
@given(
    seed=st.integers(min_value=0, max_value=2**32 - 1),
    plants=st.integers(min_value=1, max_value=6),
    periods=st.integers(min_value=1, max_value=4),
    mode=st.sampled_from([Mode.LITERAL, Mode.RECTIFIED]),
    shortage=st.booleans(),
)
def test_generated_scenarios_round_trip(seed, plants, periods, mode, shortage):
    problem = random_problem(np.random.default_rng(seed), plants, periods, mode=mode, allow_shortage=shortage)
    scenario = ScenarioFile(
        problem=problem,
        pv=PvParams(interest=0.1, lifetime=12, op_cost=3.5, panel_price=200.0, consumption=1e5, panel_capacity=300.0),
        mc=McOverlay(replications=50, seed=seed, spread=0.25),
        metadata={"name": "generated", "seed": seed},
    )
    assert parse_scenario(dump_scenario(scenario), validate=False) == scenario


def test_invariant_violation_keeps_parsed_scenario(tmp_path):
    text = _table1_text().replace("capacity_min_kw: 3000.0", "capacity_min_kw: 5000.0", 1)
    path = tmp_path / "bad.yaml"
    path.write_text(text)
    with pytest.raises(ScenarioInvariantError) as e:
        load_scenario(str(path))
    assert len(e.value.violations) == 1
    assert e.value.violations[0].rule == "capacity_bounds"
    assert e.value.violations[0].plant == "plant1"
    assert e.value.scenario.problem.plants[0].periods[0].cap_min == 5000.0
    assert e.value.category == "invariant"


def test_negative_mc_seed_is_an_invariant_violation():
    text = _table1_text().replace("seed: 20221", "seed: -5")
    with pytest.raises(ScenarioInvariantError) as e:
        parse_scenario(text)
    assert [v.rule for v in e.value.violations] == ["mc"]
    assert "seed" in e.value.violations[0].message


def test_truncated_file_is_a_syntax_error():
    text = _table1_text()
    cut = text.index("transfer_cost_per_kwh: 34000.0")
    with pytest.raises(ScenarioSyntaxError):
        parse_scenario(text[:cut])


def test_missing_file(tmp_path):
    with pytest.raises(ScenarioNotFoundError) as e:
        load_scenario(str(tmp_path / "nope.yaml"))
    assert e.value.category == "missing"


def test_schema_errors_are_all_collected():
    text = _table1_text()
    text = text.replace("horizon_periods: 2", "horizon_periods: two")
    text = text.replace("  mode: rectified\n", "")
    text = text.replace("setup_cost: 5000000000.0", "setup_cost: 5e9")
    text = text.replace("  allow_shortage: false\n", "  allow_shortage: false\n  discount: 0.1\n")
    with pytest.raises(ScenarioSchemaError) as e:
        parse_scenario(text)
    problems = e.value.problems
    assert len(problems) == 4
    assert any("horizon_periods must be an integer" in p for p in problems)
    assert any("mode is required" in p for p in problems)
    assert any("setup_cost must be a number" in p for p in problems)
    assert any("unknown field discount" in p for p in problems)


@pytest.mark.parametrize("text", ["", "- 1\n- 2\n", "schema_version: '2'\nproblem: {}\n"])
def test_malformed_documents_are_schema_errors(text):
    with pytest.raises(ScenarioSchemaError):
        parse_scenario(text)


def test_unknown_pv_default_is_reported():
    text = _table1_text() + "pv_default: mars\n"
    with pytest.raises(ScenarioSchemaError) as e:
        parse_scenario(text)
    assert any("pv_default mars" in p for p in e.value.problems)


def _table1_text():
    with open(resolve_scenario_path("table1_low_demand"), "r") as file:
        return file.read()

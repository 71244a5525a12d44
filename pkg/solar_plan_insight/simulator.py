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

import numpy as np
from joblib import Parallel, delayed
from scipy import stats

from .models import (
    Cheaper,
    ComparisonReport,
    DomainError,
    InfeasibleProblemError,
    McConfig,
    McReport,
    PlanProblem,
    PlanSolution,
    PvResult,
    ReplicationRecord,
)
from .plant_solver import solve_plan


confidence_level = 0.95
quantile_levels = {"p5": 0.05, "p50": 0.50, "p95": 0.95}

# root seeds are unsigned 64-bit integers
seed_limit = 2**64


def validate_config(config: McConfig) -> List[str]:
    problems = []
    if config.replications < 1:
        problems.append("replications must be >= 1, got {}".format(config.replications))
    problems.extend(seed_problems(config.seed))
    shape = (len(config.base.plants), config.base.horizon)
    for label, matrix in (("demand_low", config.demand_low), ("demand_high", config.demand_high)):
        if len(matrix) != shape[0] or any(len(row) != shape[1] for row in matrix):
            problems.append("{} must be a {} x {} matrix".format(label, *shape))
    if not problems:
        for j, (lows, highs) in enumerate(zip(config.demand_low, config.demand_high)):
            for t, (low, high) in enumerate(zip(lows, highs), start=1):
                if not (0.0 <= low <= high):
                    problems.append("plant {} period {}: need 0 <= demand_low <= demand_high, got {} > {}".format(config.base.plants[j].id, t, low, high))
    return problems


def seed_problems(seed) -> List[str]:
    if isinstance(seed, bool) or not isinstance(seed, int) or not 0 <= seed < seed_limit:
        return ["seed must be an integer in [0, 2**64), got {}".format(seed)]
    return []


def sample_demand(config: McConfig, replication_index: int) -> List[List[float]]:
    """Draw one demand matrix, each cell uniform on [low, high].

    Every cell has its own stream keyed by (seed, replication, j, t), so a draw
    does not depend on which worker runs it or in which order.
    """
    if not 0 <= replication_index < config.replications:
        raise DomainError("replication index {} outside [0, {})".format(replication_index, config.replications))
    problems = seed_problems(config.seed)
    if problems:
        raise DomainError(problems[0])
    demand = []
    for j, (lows, highs) in enumerate(zip(config.demand_low, config.demand_high)):
        row = []
        for t, (low, high) in enumerate(zip(lows, highs)):
            rng = np.random.default_rng(np.random.SeedSequence(entropy=config.seed, spawn_key=(replication_index, j, t)))
            row.append(float(rng.uniform(low, high)))
        demand.append(row)
    return demand


def run_replication(config: McConfig, replication_index: int) -> ReplicationRecord:
    problem = config.base.with_demand(sample_demand(config, replication_index))
    try:
        solution = solve_plan(problem)
    except InfeasibleProblemError as e:
        return ReplicationRecord(index=replication_index, feasible=False, reason=str(e))
    return ReplicationRecord(
        index=replication_index,
        feasible=True,
        objective=solution.objective,
        selected=list(solution.selected),
        waste_rate=waste_rate(solution),
    )


def run_simulation(config: McConfig, n_jobs: int = 1) -> McReport:
    problems = validate_config(config)
    if problems:
        raise DomainError("invalid simulation config: " + "; ".join(problems))

    indices = range(config.replications)
    if n_jobs == 1:
        records = []
        for i in indices:
            records.append(run_replication(config, i))
            logging.debug("run_simulation() [{}/{}] done".format(i + 1, config.replications))
    else:
        # joblib returns results in submission order
        records = Parallel(n_jobs=n_jobs)(delayed(run_replication)(config, i) for i in indices)
    return summarize_replications(config, records)


def summarize_replications(config: McConfig, records: List[ReplicationRecord]) -> McReport:
    records = sorted(records, key=lambda r: r.index)
    feasible = [r for r in records if r.feasible]
    report = McReport(
        infeasible_count=len(records) - len(feasible),
        replications_run=len(records),
        feasible_count=len(feasible),
        seed=config.seed,
    )
    if not feasible:
        report.all_infeasible = True
        logging.warning("all {} replications were infeasible; no statistics reported".format(len(records)))
        return report

    costs = np.array([r.objective for r in feasible], dtype=float)
    # shifted by the first sample so identical costs give exactly zero spread
    shifted = costs - costs[0]
    report.cost_mean = float(costs[0] + shifted.mean())
    report.cost_stddev = float(shifted.std(ddof=1)) if len(costs) > 1 else 0.0
    report.cost_quantiles = {name: float(np.quantile(costs, level)) for name, level in quantile_levels.items()}
    report.cost_ci_half_width = confidence_half_width(report.cost_stddev, len(costs))
    report.waste_rate_mean = float(np.mean([r.waste_rate for r in feasible]))
    selections = np.array([r.selected for r in feasible], dtype=float).reshape(len(feasible), len(config.base.plants))
    report.selection_frequency = dict(zip(config.base.plant_ids, selections.mean(axis=0).tolist()))
    return report


def confidence_half_width(stddev: float, n: int, level: float = confidence_level) -> float:
    z_score = stats.norm.ppf(1 - (1 - level) / 2)
    return float(z_score * stddev / math.sqrt(n))


def waste_rate(solution: PlanSolution) -> float:
    """Positive surplus of the selected plants over their total production."""
    selected = np.asarray(solution.selected) == 1
    if not selected.any():
        return 0.0
    production = np.asarray(solution.production, dtype=float)[selected]
    surplus = np.asarray(solution.surplus, dtype=float)[selected]
    produced = float(production.sum())
    if produced == 0.0:
        return 0.0
    return float(np.maximum(surplus, 0.0).sum()) / produced


def compare_models(problem: PlanProblem, solution: PlanSolution, pv: PvResult, reported_cheaper: str = "") -> ComparisonReport:
    return compare_costs(solution.objective, pv.f_star_magnitude, waste_rate(solution), reported_cheaper=reported_cheaper)


def compare_costs(plan_cost: float, pv_cost_magnitude: float, waste: float = 0.0, reported_cheaper: str = "") -> ComparisonReport:
    if math.isclose(plan_cost, pv_cost_magnitude, rel_tol=1e-12, abs_tol=0.0):
        cheaper = Cheaper.TIE
    elif plan_cost < pv_cost_magnitude:
        cheaper = Cheaper.PLANT
    else:
        cheaper = Cheaper.ROOFTOP
    note = ""
    if reported_cheaper and reported_cheaper != cheaper:
        note = "computed costs favour {} while the reported conclusion favours {}".format(cheaper, reported_cheaper)
        logging.warning(note)
    return ComparisonReport(
        plan_cost=plan_cost,
        pv_cost_magnitude=pv_cost_magnitude,
        cheaper=cheaper,
        waste_rate=waste,
        reported_cheaper=reported_cheaper,
        note=note,
    )

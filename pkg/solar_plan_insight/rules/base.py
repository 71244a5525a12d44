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

from typing import List

from ..models import PlanProblem, PlanSolution, Violation


class Rule(object):
    name: str = ""
    enabled: bool = False
    description: str = ""

    # IN: problem as loaded from a scenario
    # OUT: violations of input invariants
    def validate(self, problem: PlanProblem) -> List[Violation]:
        return []

    # IN: problem that passed validate() and a candidate solution of matching shape
    # OUT: violated constraint instances with their residuals
    def check(self, problem: PlanProblem, solution: PlanSolution, tol: float = 1e-9) -> List[Violation]:
        return []

    def violation(self, message: str, plant: str = "", period: int = 0, residual: float = 0.0) -> Violation:
        return Violation(
            rule=self.name,
            plant=plant,
            period=period,
            residual=residual,
            message="{}: {}".format(self.name, message),
        )


def exceeds(value: float, limit: float, tol: float) -> float:
    """Return how far value lies above limit, or 0.0 within tolerance."""
    gap = value - limit
    if gap > tol * max(1.0, abs(value), abs(limit)):
        return gap
    return 0.0


def differs(value: float, expected: float, tol: float) -> float:
    gap = value - expected
    if abs(gap) > tol * max(1.0, abs(value), abs(expected)):
        return gap
    return 0.0


def where(plant_id: str, period: int) -> str:
    return "plant {} period {}".format(plant_id, period)

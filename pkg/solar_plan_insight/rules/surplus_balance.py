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

from ..models import Mode, PlanProblem, PlanSolution, Violation
from .base import Rule, differs, where


class SurplusBalanceRule(Rule):
    name: str = "surplus_balance"
    enabled: bool = True
    description: str = "surplus equals production minus demand (literal: Y*Z - D, rectified: Y*(Z - D))"

    def check(self, problem: PlanProblem, solution: PlanSolution, tol: float = 1e-9) -> List[Violation]:
        violations = []
        for j, plant in enumerate(problem.plants):
            y = solution.selected[j]
            for t, pp in enumerate(plant.periods, start=1):
                z = solution.production[j][t - 1]
                k = solution.surplus[j][t - 1]
                if problem.mode == Mode.LITERAL:
                    expected = y * z - pp.demand
                else:
                    expected = y * (z - pp.demand)
                gap = differs(k, expected, tol)
                if gap:
                    violations.append(
                        self.violation(
                            "{}: surplus {} differs from {} by {}".format(where(plant.id, t), k, expected, gap),
                            plant=plant.id,
                            period=t,
                            residual=gap,
                        )
                    )
        return violations

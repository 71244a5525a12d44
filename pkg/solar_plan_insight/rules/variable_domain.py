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
from .base import Rule, exceeds, where


class VariableDomainRule(Rule):
    name: str = "variable_domain"
    enabled: bool = True
    description: str = "production is non-negative; rectified mode without shortage keeps surplus >= 0"

    def check(self, problem: PlanProblem, solution: PlanSolution, tol: float = 1e-9) -> List[Violation]:
        violations = []
        no_shortage = problem.mode == Mode.RECTIFIED and not problem.allow_shortage
        for j, plant in enumerate(problem.plants):
            y = solution.selected[j]
            for t in range(1, problem.horizon + 1):
                z = solution.production[j][t - 1]
                k = solution.surplus[j][t - 1]
                negative = exceeds(0.0, z, tol)
                if negative:
                    violations.append(
                        self.violation("{}: production {} is negative".format(where(plant.id, t), z), plant=plant.id, period=t, residual=-negative)
                    )
                shortage = exceeds(0.0, k, tol)
                if no_shortage and y == 1 and shortage:
                    violations.append(
                        self.violation("{}: shortage of {} not allowed".format(where(plant.id, t), -k), plant=plant.id, period=t, residual=-shortage)
                    )
        return violations

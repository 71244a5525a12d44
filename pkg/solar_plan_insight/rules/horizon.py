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
from .base import Rule


class HorizonRule(Rule):
    name: str = "horizon"
    enabled: bool = True
    description: str = "every plant carries exactly T >= 1 periods and solutions are m x T"

    def validate(self, problem: PlanProblem) -> List[Violation]:
        violations = []
        if not problem.horizon >= 1:
            violations.append(self.violation("horizon must be >= 1, got {}".format(problem.horizon)))
        for plant in problem.plants:
            if len(plant.periods) != problem.horizon:
                violations.append(
                    self.violation(
                        "plant {} has {} periods, expected {}".format(plant.id, len(plant.periods), problem.horizon),
                        plant=plant.id,
                    )
                )
        return violations

    # other solution rules index Z/K by (j, t), so a shape mismatch stops the check
    def check(self, problem: PlanProblem, solution: PlanSolution, tol: float = 1e-9) -> List[Violation]:
        m = len(problem.plants)
        T = problem.horizon
        violations = []
        if len(solution.selected) != m:
            violations.append(self.violation("selection has {} entries, expected {}".format(len(solution.selected), m)))
        for label, matrix in (("production", solution.production), ("surplus", solution.surplus)):
            if len(matrix) != m or any(len(row) != T for row in matrix):
                violations.append(self.violation("{} matrix is not {} x {}".format(label, m, T)))
        return violations

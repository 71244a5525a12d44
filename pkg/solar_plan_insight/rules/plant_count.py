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


class PlantCountRule(Rule):
    name: str = "plant_count"
    enabled: bool = True
    description: str = "exactly F plants are selected and selections are binary"

    def validate(self, problem: PlanProblem) -> List[Violation]:
        m = len(problem.plants)
        if not (0 <= problem.required_count <= m):
            return [
                self.violation(
                    "required plant count must lie in [0, {}], got {}".format(m, problem.required_count),
                    residual=float(problem.required_count - m),
                )
            ]
        return []

    def check(self, problem: PlanProblem, solution: PlanSolution, tol: float = 1e-9) -> List[Violation]:
        violations = []
        for j, y in enumerate(solution.selected):
            if y not in (0, 1):
                violations.append(self.violation("selection of plant {} is {}, not 0/1".format(problem.plants[j].id, y), plant=problem.plants[j].id))
        count = sum(solution.selected)
        if count != problem.required_count:
            violations.append(
                self.violation(
                    "{} plants selected, required {}".format(count, problem.required_count),
                    residual=float(count - problem.required_count),
                )
            )
        return violations

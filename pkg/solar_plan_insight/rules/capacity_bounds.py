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
from typing import List

from ..models import Mode, PlanProblem, PlanSolution, Violation
from .base import Rule, exceeds, where


class CapacityBoundsRule(Rule):
    name: str = "capacity_bounds"
    enabled: bool = True
    description: str = "production stays within [cap_min, cap_max] of the plant-period"

    def validate(self, problem: PlanProblem) -> List[Violation]:
        violations = []
        for plant in problem.plants:
            for t, pp in enumerate(plant.periods, start=1):
                if not (0.0 <= pp.cap_min <= pp.cap_max) or not math.isfinite(pp.cap_max):
                    violations.append(
                        self.violation(
                            "{}: need 0 <= cap_min <= cap_max, got cap_min={} cap_max={}".format(where(plant.id, t), pp.cap_min, pp.cap_max),
                            plant=plant.id,
                            period=t,
                            residual=pp.cap_min - pp.cap_max,
                        )
                    )
        return violations

    def check(self, problem: PlanProblem, solution: PlanSolution, tol: float = 1e-9) -> List[Violation]:
        violations = []
        for j, plant in enumerate(problem.plants):
            y = solution.selected[j]
            for t, pp in enumerate(plant.periods, start=1):
                z = solution.production[j][t - 1]
                if problem.mode == Mode.LITERAL:
                    # the bounds apply to Y*Z, selected or not
                    value, low, high = y * z, pp.cap_min, pp.cap_max
                else:
                    value, low, high = z, pp.cap_min * y, pp.cap_max * y
                below = exceeds(low, value, tol)
                above = exceeds(value, high, tol)
                if below:
                    violations.append(
                        self.violation(
                            "{}: production {} below lower bound {}".format(where(plant.id, t), value, low),
                            plant=plant.id,
                            period=t,
                            residual=below,
                        )
                    )
                if above:
                    violations.append(
                        self.violation(
                            "{}: production {} above upper bound {}".format(where(plant.id, t), value, high),
                            plant=plant.id,
                            period=t,
                            residual=above,
                        )
                    )
        return violations

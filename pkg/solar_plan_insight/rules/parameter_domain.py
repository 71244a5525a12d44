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

from ..models import PlanProblem, Violation, supported_modes
from .base import Rule, where


non_negative_period_fields: list = ["npw", "transfer", "excess", "demand"]


class ParameterDomainRule(Rule):
    name: str = "parameter_domain"
    enabled: bool = True
    description: str = "costs and demand are finite and non-negative, discount rate > -1, mode is known"

    def validate(self, problem: PlanProblem) -> List[Violation]:
        violations = []
        if not problem.discount_rate > -1.0 or not math.isfinite(problem.discount_rate):
            violations.append(self.violation("discount rate must be a finite value > -1, got {}".format(problem.discount_rate)))
        if problem.mode not in supported_modes:
            violations.append(self.violation("unknown mode {!r}; expected one of {}".format(problem.mode, supported_modes)))
        for plant in problem.plants:
            if not _non_negative(plant.setup_cost):
                violations.append(self.violation("plant {} setup cost must be >= 0, got {}".format(plant.id, plant.setup_cost), plant=plant.id))
            for t, pp in enumerate(plant.periods, start=1):
                for attr in non_negative_period_fields:
                    value = getattr(pp, attr)
                    if not _non_negative(value):
                        violations.append(
                            self.violation(
                                "{}: {} must be >= 0, got {}".format(where(plant.id, t), attr, value),
                                plant=plant.id,
                                period=t,
                            )
                        )
        return violations


def _non_negative(value: float) -> bool:
    # NaN fails both comparisons
    return value >= 0.0 and math.isfinite(value)

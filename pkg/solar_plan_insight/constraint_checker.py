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
from typing import List

from .models import PlanProblem, PlanSolution, Violation
from .rules.horizon import HorizonRule
from . import rules


def load_rules():
    _rules = []
    for rule in rules.__all__:
        _rules.append(getattr(rules, rule)())
    return _rules


def validate_problem(problem: PlanProblem) -> List[Violation]:
    """Check the input invariants of a plan problem.

    Never raises on a well-formed object; an empty list means the problem is valid.
    """
    violations = []
    for rule in load_rules():
        if not rule.enabled:
            continue
        violations.extend(rule.validate(problem))
    logging.debug("validate_problem() found {} violation(s)".format(len(violations)))
    return violations


def check_feasibility(problem: PlanProblem, solution: PlanSolution, tol: float = 1e-9) -> List[Violation]:
    violations = []
    for rule in load_rules():
        if not rule.enabled:
            continue
        found = rule.check(problem, solution, tol=tol)
        violations.extend(found)
        if found and isinstance(rule, HorizonRule):
            break
    logging.debug("check_feasibility() found {} violation(s)".format(len(violations)))
    return violations

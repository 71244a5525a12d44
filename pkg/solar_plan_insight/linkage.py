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

import numpy as np

from .models import (
    DegenerateMatchError,
    DomainError,
    ExtraneousRootError,
    LinkResult,
    NoRealSolutionError,
    PlanProblem,
    PlanSolution,
    ZeroDenominatorError,
)


match_tolerance = 1e-9


def breakeven_output(problem: PlanProblem, solution: PlanSolution) -> float:
    """Output z_i at which the selected plants' fixed and excess costs are recovered.

    z_i = (-sum_jt H_jt K_jt^2 / 2 (1+i)^-t Y_j - sum_j R_j Y_j) / sum_jt NPW_jt Y_j

    The excess-cost integral runs from 0 to the solution's surplus K_jt.
    """
    arr = problem.as_arrays()
    y = np.asarray(solution.selected, dtype=float)
    k = np.asarray(solution.surplus, dtype=float).reshape(arr.demand.shape)
    excess = (arr.excess * k * k / 2.0 * arr.discount[None, :]).sum(axis=1)
    numerator = -float(np.dot(excess, y)) - float(np.dot(arr.setup, y))
    denominator = float(np.dot(arr.npw.sum(axis=1), y))
    if denominator == 0.0:
        raise ZeroDenominatorError(
            "breakeven output is undefined: operational cost of the selected plants {} sums to zero".format(solution.selected_ids or solution.selected)
        )
    return numerator / denominator


def output_given_panels(n: float, c: float, q: float, f_target: float, beta: float) -> float:
    """Per-panel output Z at which n panels reach cost f_target.

    Nonnegative root of (n*q*beta/2) Z^2 + n*c*q Z - f_target = 0.
    """
    if not (n > 0 and q > 0 and beta > 0):
        raise DomainError("need n > 0, q > 0 and beta > 0, got n={} q={} beta={}".format(n, q, beta))
    linear = n * c * q
    discriminant = linear * linear + 2.0 * f_target * n * q * beta
    if discriminant < 0.0:
        raise NoRealSolutionError("no real output for n={}: discriminant {} is negative".format(n, discriminant))
    root = math.sqrt(discriminant)
    if linear > 0.0:
        # same root without cancellation between -linear and the square root
        return 2.0 * f_target / (linear + root)
    return (root - linear) / (n * q * beta)


def panel_count_match(z_target: float, c: float, q: float, f_target: float, beta: float) -> LinkResult:
    """Panel count N* for which output_given_panels(N*) equals z_target.

    Isolating the radical and squaring gives N = 2 f beta / (q ((beta z + c)^2 - c^2));
    the squared equation also admits roots with beta z + c < 0, so every N is
    checked by substituting it back.
    """
    if not (q > 0 and beta > 0):
        raise DomainError("need q > 0 and beta > 0, got q={} beta={}".format(q, beta))
    shifted = beta * z_target
    # (beta z + c)^2 - c^2 factored to avoid cancellation
    gap = shifted * (shifted + 2.0 * c)
    if gap == 0.0:
        raise DegenerateMatchError("no finite panel count: output {} is reached for every N (or none)".format(z_target))
    n_star = 2.0 * f_target * beta / (q * gap)
    if not (n_star > 0 and math.isfinite(n_star)):
        raise ExtraneousRootError("panel count {} is not positive; output {} is unreachable".format(n_star, z_target))
    try:
        reached = output_given_panels(n_star, c, q, f_target, beta)
    except NoRealSolutionError as e:
        raise ExtraneousRootError("panel count {} does not solve the output equation: {}".format(n_star, e))
    residual = abs(reached - z_target)
    if residual > match_tolerance * max(1.0, abs(z_target)):
        raise ExtraneousRootError("panel count {} reaches output {}, not {} (residual {})".format(n_star, reached, z_target, residual))
    logging.debug("panel_count_match() N*={} residual={}".format(n_star, residual))
    return LinkResult(z_breakeven=z_target, n_star=n_star, n_star_ceil=int(math.ceil(n_star)), residual=residual)

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
from typing import List, Tuple

from .finance import annuity_factor
from .models import DomainError, PvParams, PvResult


positive_fields: list = ["interest", "lifetime", "op_cost", "panel_price", "consumption", "panel_capacity"]


def validate_pv_params(params: PvParams) -> List[str]:
    problems = []
    for attr in positive_fields:
        value = getattr(params, attr)
        if not (value > 0 and math.isfinite(value)):
            problems.append("{} must be a positive finite number, got {}".format(attr, value))
    if not float(params.lifetime).is_integer():
        problems.append("lifetime must be a whole number of periods, got {}".format(params.lifetime))
    return problems


def pv_cost(params: PvParams, z):
    """Rooftop cost F(z) = A*C*Q*z/B + A*Q*z^2/(2B) * beta.

    Integrating the discounted per-period stream from 0 leaves no constant term.
    `z` may be any number type supporting arithmetic with floats.
    """
    beta = annuity_factor(params)
    scale = params.consumption * params.op_cost / params.panel_capacity
    return scale * params.panel_price * z + scale * z * z / 2.0 * beta


def pv_stationary_residual(params: PvParams, z):
    """dF/dz = A*C*Q/B + A*Q*z/B * beta."""
    beta = annuity_factor(params)
    scale = params.consumption * params.op_cost / params.panel_capacity
    return scale * params.panel_price + scale * z * beta


def pv_optimal_output(params: PvParams) -> PvResult:
    """Stationary point and optimal cost of the rooftop cost function.

    F is a parabola opening upward, so the stationary point -C/beta is its
    minimum and lies at negative output; z_star is the magnitude that gets
    reported as the per-panel output.
    """
    beta = annuity_factor(params)
    z_stationary = -params.panel_price / beta
    # closed form of F(z_stationary)
    f_star = -(params.consumption * params.panel_price**2 * params.op_cost) / (2.0 * params.panel_capacity * beta)
    panels, panels_ceil = panels_needed(params.consumption, params.panel_capacity)
    return PvResult(
        z_star=abs(z_stationary),
        z_stationary=z_stationary,
        f_star=f_star,
        beta=beta,
        panels=panels,
        panels_ceil=panels_ceil,
    )


def panels_needed(consumption: float, panel_capacity: float) -> Tuple[float, int]:
    if not panel_capacity > 0:
        raise DomainError("panel capacity must be positive, got {}".format(panel_capacity))
    panels = consumption / panel_capacity
    return panels, int(math.ceil(panels))

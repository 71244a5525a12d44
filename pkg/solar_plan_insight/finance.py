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

from .models import DomainError, PvParams


def discount_factor(rate: float, t: int) -> float:
    """Present-value weight (1+rate)^-t of a cost incurred in period t."""
    if not rate > -1.0:
        raise DomainError("discount rate must be greater than -1, got {}".format(rate))
    if t < 1:
        raise DomainError("period index must be >= 1, got {}".format(t))
    return (1.0 + rate) ** (-t)


def annuity_factor(params: PvParams) -> float:
    """beta = (1 - (1+I)^-T) / (I(I+1)).

    Equals sum_{t=1..T} (1+I)^-t / (1+I); the PV cost model multiplies its
    quadratic term by this factor.
    """
    return annuity_factor_of(params.interest, params.lifetime)


def annuity_factor_of(interest: float, lifetime: int) -> float:
    if not interest > 0.0:
        raise DomainError("interest rate must be positive, got {}".format(interest))
    if lifetime < 1:
        raise DomainError("lifetime must be >= 1 period, got {}".format(lifetime))
    # 1 - (1+I)^-T without cancellation for small I
    remaining = -math.expm1(-lifetime * math.log1p(interest))
    return remaining / (interest * (1.0 + interest))

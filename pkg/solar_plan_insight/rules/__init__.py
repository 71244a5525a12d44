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

from .horizon import HorizonRule
from .parameter_domain import ParameterDomainRule
from .capacity_bounds import CapacityBoundsRule
from .surplus_balance import SurplusBalanceRule
from .plant_count import PlantCountRule
from .variable_domain import VariableDomainRule

# HorizonRule stays first: a shape failure stops the solution check
__all__ = [
    "HorizonRule",
    "ParameterDomainRule",
    "CapacityBoundsRule",
    "SurplusBalanceRule",
    "PlantCountRule",
    "VariableDomainRule",
]

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

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from solar_plan_insight.finance import annuity_factor
from solar_plan_insight.models import DomainError, PvParams
from solar_plan_insight.pv_analytic import panels_needed, pv_cost, pv_optimal_output, pv_stationary_residual, validate_pv_params
from solar_plan_insight.verification import confirm_stationary_point, golden_section_minimize

# rows of the rooftop alternatives shipped in table4_rooftop: (I, T, Q, C, A, B)
alternatives = {
    "korea": (0.25, 60, 80.0, 410.0, 456250.0, 250.0),
    "china": (0.12, 12, 10.0, 170.0, 32850.0, 90.0),
    "taiwan": (0.18, 48, 50.0, 250.0, 423400.0, 290.0),
    "usa": (0.10, 36, 90.0, 390.0, 279225.0, 255.0),
    "japan": (0.13, 24, 50.0, 433.0, 175200.0, 240.0),
}


@pytest.mark.parametrize("center", [-3.5, 0.0, 1e-3, 250.0])
def test_golden_section_finds_parabola_minimum(center):
    z = golden_section_minimize(lambda x: (x - center) ** 2 + 1, center - 10.0, center + 7.0)
    assert z == pytest.approx(center, rel=1e-12, abs=1e-12)


@pytest.mark.parametrize("name", list(alternatives))
def test_stationary_point_confirmed_by_golden_section(name):
    params = _params(*alternatives[name])
    result = pv_optimal_output(params)
    assert confirm_stationary_point(params) == pytest.approx(result.z_stationary, rel=1e-8)
    assert result.f_star == pytest.approx(pv_cost(params, result.z_stationary), rel=1e-9)
    assert result.z_star == abs(result.z_stationary)
    assert result.f_star < 0


@pytest.mark.parametrize("name", list(alternatives))
def test_stationary_residual_vanishes(name):
    params = _params(*alternatives[name])
    result = pv_optimal_output(params)
    scale = params.consumption * params.panel_price * params.op_cost / params.panel_capacity
    assert abs(pv_stationary_residual(params, result.z_stationary)) <= 1e-9 * scale


def test_korea_formula_value_differs_from_printed_value():
    result = pv_optimal_output(_params(*alternatives["korea"]))
    assert result.beta == pytest.approx((1 - 1.25**-60) / 0.3125, rel=1e-12)
    assert result.z_star == pytest.approx(410.0 / result.beta, rel=1e-12)
    # the printed 191.23 does not follow from the listed inputs
    assert abs(result.z_star - 191.23) / 191.23 > 0.3
    assert result.panels == pytest.approx(1825.0)
    assert result.panels_ceil == 1825


def test_derivative_matches_central_differences():
    rng = np.random.default_rng(7)
    for _ in range(100):
        params = PvParams(
            interest=float(rng.uniform(0.01, 0.5)),
            lifetime=int(rng.integers(1, 121)),
            op_cost=float(rng.uniform(1.0, 100.0)),
            panel_price=float(rng.uniform(10.0, 1000.0)),
            consumption=float(rng.uniform(1e3, 1e6)),
            panel_capacity=float(rng.uniform(10.0, 500.0)),
        )
        beta = annuity_factor(params)
        bound = 10.0 * params.panel_price / beta
        z = float(rng.uniform(-bound, bound))
        h = 1e-4 * max(1.0, abs(z))
        numeric = (pv_cost(params, z + h) - pv_cost(params, z - h)) / (2 * h)
        s = params.consumption * params.op_cost / params.panel_capacity
        tolerance = 1e-6 * (s * params.panel_price + s * beta * abs(z))
        assert pv_stationary_residual(params, z) == pytest.approx(numeric, abs=tolerance)


@settings(max_examples=100, deadline=None)
@given(
    name=st.sampled_from(sorted(alternatives)),
    z=st.floats(min_value=-1000.0, max_value=1000.0),
    h=st.floats(min_value=1.0, max_value=100.0),
)
def test_cost_is_convex(name, z, h):
    params = _params(*alternatives[name])
    assert pv_cost(params, z - h) + pv_cost(params, z + h) - 2 * pv_cost(params, z) > 0


@settings(max_examples=50, deadline=None)
@given(name=st.sampled_from(sorted(alternatives)), factor=st.floats(min_value=1e-3, max_value=1e3))
def test_optimal_cost_is_linear_in_consumption(name, factor):
    params = _params(*alternatives[name])
    scaled = _params(*alternatives[name])
    scaled.consumption *= factor
    base = pv_optimal_output(params)
    other = pv_optimal_output(scaled)
    assert other.z_stationary == base.z_stationary
    assert other.f_star == pytest.approx(base.f_star * factor, rel=1e-12)


@pytest.mark.parametrize("name, z", [("korea", 100.0), ("china", -30.0), ("japan", 250.0)])
def test_cost_matches_summed_then_integrated_stream(name, z):
    params = _params(*alternatives[name])
    a, q, b, c, i = params.consumption, params.op_cost, params.panel_capacity, params.panel_price, params.interest
    with mpmath.workdps(30):
        # period t carries weight (1+I)^-(t+1), the stream the annuity factor sums
        weight = mpmath.fsum(mpmath.power(1 + mpmath.mpf(i), -(t + 1)) for t in range(1, params.lifetime + 1))
        integral = mpmath.quad(lambda s: a * q * s / b * weight, [0, z])
        expected = float(a * c * q * mpmath.mpf(z) / b + integral)
    assert pv_cost(params, z) == pytest.approx(expected, rel=1e-12)


@settings(max_examples=50, deadline=None)
@given(name=st.sampled_from(sorted(alternatives)), factor=st.floats(min_value=1e-3, max_value=1e3))
def test_optimum_is_homogeneous_in_panel_price(name, factor):
    params = _params(*alternatives[name])
    scaled = _params(*alternatives[name])
    scaled.panel_price *= factor
    base = pv_optimal_output(params)
    other = pv_optimal_output(scaled)
    assert other.z_star == pytest.approx(base.z_star * factor, rel=1e-12)
    assert other.f_star == pytest.approx(base.f_star * factor**2, rel=1e-12)


@pytest.mark.parametrize(
    "field, value",
    [("interest", 0.0), ("op_cost", -1.0), ("panel_capacity", float("inf")), ("lifetime", 2.5)],
)
def test_invalid_params_are_reported(field, value):
    params = _params(*alternatives["usa"])
    setattr(params, field, value)
    problems = validate_pv_params(params)
    assert problems
    assert any(field in p for p in problems)


def test_panels_needed_requires_capacity():
    assert panels_needed(1000.0, 300.0) == (pytest.approx(1000.0 / 300.0), 4)
    with pytest.raises(DomainError):
        panels_needed(1000.0, 0.0)


def _params(interest, lifetime, op_cost, panel_price, consumption, panel_capacity):
    return PvParams(
        interest=interest,
        lifetime=lifetime,
        op_cost=op_cost,
        panel_price=panel_price,
        consumption=consumption,
        panel_capacity=panel_capacity,
    )

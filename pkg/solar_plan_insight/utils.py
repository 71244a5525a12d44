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
import os
from typing import List

from tabulate import tabulate

from .report import ABSENT, ReportBundle, Section


datasets_dir = os.path.join(os.path.dirname(os.path.abspath(__file__)), "datasets")
scenario_suffixes = [".yaml", ".yml"]


def dataset_names() -> List[str]:
    if not os.path.isdir(datasets_dir):
        return []
    names = []
    for fname in sorted(os.listdir(datasets_dir)):
        base, ext = os.path.splitext(fname)
        if ext in scenario_suffixes:
            names.append(base)
    return names


def resolve_scenario_path(target: str) -> str:
    """A path to an existing file is used as is; otherwise `target` may name a shipped dataset."""
    if os.path.exists(target):
        return target
    for ext in scenario_suffixes:
        candidate = os.path.join(datasets_dir, target + ext)
        if os.path.exists(candidate):
            return candidate
    # let the loader report it as missing
    return target


def format_currency(value) -> str:
    if value is None:
        return ABSENT
    if not math.isfinite(value):
        return str(value)
    return "{:,.2f}".format(value)


def format_number(value, digits: int = 6) -> str:
    if value is None:
        return ABSENT
    if isinstance(value, int):
        return str(value)
    return "{:.{}g}".format(value, digits)


def relative_discrepancy(computed: float, reported: float) -> float:
    if reported == 0:
        return 0.0 if computed == 0 else math.inf
    return abs(computed - reported) / abs(reported)


def summarize_bundle(bundle: ReportBundle) -> str:
    output_lines = []
    output_lines.append("-" * 90)
    output_lines.append("Solar Plan Insight Report: {}".format(bundle.metadata.get("scenario", "")))
    output_lines.append("-" * 90)
    for name in bundle.sections:
        value = bundle.section(name)
        if value is None:
            output_lines.append("{}: {}".format(section_titles.get(name, name), ABSENT))
        else:
            output_lines.append(section_renderers[name](value))
        output_lines.append("-" * 90)
    if bundle.checks:
        output_lines.append(checks_to_display(bundle))
        output_lines.append("-" * 90)
    if bundle.discrepancies:
        output_lines.append(discrepancies_to_display(bundle))
        output_lines.append("-" * 90)
    return "\n".join(output_lines) + "\n"


def solution_to_display(solution) -> str:
    lines = []
    shortage = "allowed" if solution.allow_shortage else "disallowed"
    lines.append("Plant selection (mode={}, shortage {})".format(solution.mode, shortage))
    lines.append("  Objective: {}".format(format_currency(solution.objective)))
    lines.append("  Selected: {}".format(", ".join(solution.selected_ids) or "none"))
    table = [("PLANT", "T", "Y", "Z (kW)", "K (kW)", "PERIOD COST")]
    for j, pid in enumerate(solution.plant_ids):
        for t in range(len(solution.production[j])):
            table.append(
                (
                    pid,
                    t + 1,
                    solution.selected[j],
                    format_currency(solution.production[j][t]),
                    format_currency(solution.surplus[j][t]),
                    format_currency(solution.period_cost[j][t]),
                )
            )
    lines.append(tabulate(table, headers="firstrow", disable_numparse=True))
    cost_table = [("PLANT", "TOTAL COST")]
    cost_table.extend((pid, format_currency(cost)) for pid, cost in zip(solution.plant_ids, solution.per_plant_cost))
    lines.append(tabulate(cost_table, headers="firstrow", disable_numparse=True))
    return "\n".join(lines)


def pv_to_display(results) -> str:
    table = [("ALTERNATIVE", "BETA", "Z STATIONARY", "Z*", "F*", "PANELS", "PANELS (CEIL)")]
    for name, r in results.items():
        table.append(
            (
                name,
                format_number(r.beta, 10),
                format_number(r.z_stationary, 10),
                format_number(r.z_star, 10),
                format_currency(r.f_star),
                format_number(r.panels, 10),
                r.panels_ceil,
            )
        )
    return "Rooftop PV optimum\n" + tabulate(table, headers="firstrow", disable_numparse=True)


def link_to_display(link) -> str:
    lines = ["Model linkage"]
    lines.append("  Breakeven output: {}".format(format_number(link.z_breakeven, 12)))
    lines.append("  Panel count N*: {} (purchase {})".format(format_number(link.n_star, 12), link.n_star_ceil))
    lines.append("  Back-substitution residual: {}".format(format_number(link.residual, 3)))
    return "\n".join(lines)


def mc_to_display(mc) -> str:
    lines = ["Monte Carlo replications (seed {})".format(mc.seed)]
    lines.append("  Replications: {} ({} feasible, {} infeasible)".format(mc.replications_run, mc.feasible_count, mc.infeasible_count))
    if mc.all_infeasible:
        lines.append("  Every replication was infeasible; cost statistics: {}".format(ABSENT))
        return "\n".join(lines)
    table = [("STATISTIC", "VALUE")]
    table.append(("cost mean", format_currency(mc.cost_mean)))
    table.append(("cost stddev", format_currency(mc.cost_stddev)))
    table.append(("95% CI half-width", format_currency(mc.cost_ci_half_width)))
    for name, value in mc.cost_quantiles.items():
        table.append(("cost {}".format(name), format_currency(value)))
    table.append(("waste rate mean", format_number(mc.waste_rate_mean)))
    lines.append(tabulate(table, headers="firstrow", disable_numparse=True))
    freq = [("PLANT", "SELECTION FREQUENCY")]
    freq.extend((pid, format_number(v)) for pid, v in mc.selection_frequency.items())
    lines.append(tabulate(freq, headers="firstrow", disable_numparse=True))
    return "\n".join(lines)


def comparison_to_display(comparison) -> str:
    lines = ["Plant plan vs rooftop PV"]
    lines.append("  Plan cost: {}".format(format_currency(comparison.plan_cost)))
    lines.append("  Rooftop cost |F*|: {}".format(format_currency(comparison.pv_cost_magnitude)))
    lines.append("  Waste rate: {}".format(format_number(comparison.waste_rate)))
    lines.append("  Cheaper: {}".format(comparison.cheaper))
    if comparison.reported_cheaper:
        lines.append("  Reported conclusion: {}".format(comparison.reported_cheaper))
    if comparison.note:
        lines.append("  Note: {}".format(comparison.note))
    return "\n".join(lines)


def checks_to_display(bundle: ReportBundle) -> str:
    table = [("CHECK", "VALUE", "REFERENCE", "REL. ERROR", "RESULT")]
    for c in bundle.checks:
        result = "ok" if c.passed else "FAILED"
        if c.message:
            result += " ({})".format(c.message)
        table.append((c.name, format_number(c.value, 15), format_number(c.reference, 15), format_number(c.relative_error, 3), result))
    return "Independent checks\n" + tabulate(table, headers="firstrow", disable_numparse=True)


def discrepancies_to_display(bundle: ReportBundle) -> str:
    table = [("QUANTITY", "COMPUTED", "REPORTED", "REL. DIFFERENCE")]
    for d in bundle.discrepancies:
        table.append((d.quantity, format_number(d.computed, 10), format_number(d.reported, 10), format_number(d.relative, 4)))
    return "Computed vs reported values\n" + tabulate(table, headers="firstrow", disable_numparse=True)


section_titles = {
    Section.SOLUTION: "Plant selection",
    Section.PV: "Rooftop PV optimum",
    Section.LINK: "Model linkage",
    Section.MC: "Monte Carlo replications",
    Section.COMPARISON: "Plant plan vs rooftop PV",
}

section_renderers = {
    Section.SOLUTION: solution_to_display,
    Section.PV: pv_to_display,
    Section.LINK: link_to_display,
    Section.MC: mc_to_display,
    Section.COMPARISON: comparison_to_display,
}

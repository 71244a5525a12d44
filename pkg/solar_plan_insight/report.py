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

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import jsonpickle

from .models import ComparisonReport, LinkResult, McReport, PlanSolution, PvResult, ReportFormatError, ReportWriteError


ABSENT = "ABSENT"


class Section:
    SOLUTION = "solution"
    PV = "pv"
    LINK = "link"
    MC = "mc"
    COMPARISON = "comparison"


class ReportFormat:
    TEXT = "text"
    CSV = "csv"
    JSON = "json"


supported_formats = [ReportFormat.TEXT, ReportFormat.CSV, ReportFormat.JSON]
format_extensions = {ReportFormat.TEXT: "txt", ReportFormat.CSV: "csv", ReportFormat.JSON: "json"}

solution_columns = ["id", "t", "Y", "Z", "K", "period_cost"]


@dataclass
class Discrepancy(object):
    quantity: str = ""
    computed: float = 0.0
    reported: float = 0.0
    # |computed - reported| / |reported|
    relative: float = 0.0


@dataclass
class Check(object):
    name: str = ""
    value: float = 0.0
    reference: float = 0.0
    relative_error: float = 0.0
    passed: bool = True
    message: str = ""


@dataclass
class ReportBundle(object):
    metadata: dict = field(default_factory=dict)
    sections: List[str] = field(default_factory=list)

    solution: Optional[PlanSolution] = None
    pv: Dict[str, PvResult] = field(default_factory=dict)
    link: Optional[LinkResult] = None
    mc: Optional[McReport] = None
    comparison: Optional[ComparisonReport] = None

    checks: List[Check] = field(default_factory=list)
    discrepancies: List[Discrepancy] = field(default_factory=list)

    def section(self, name: str):
        value = getattr(self, name)
        if name == Section.PV and not value:
            return None
        return value

    def absent_sections(self) -> List[str]:
        return [name for name in self.sections if self.section(name) is None]

    def dump(self, fpath=""):
        json_str = jsonpickle.encode(self, make_refs=False)
        if fpath:
            with open(fpath, "w") as file:
                file.write(json_str)
        return json_str

    @staticmethod
    def load(fpath="", json_str=""):
        if fpath:
            with open(fpath, "r") as file:
                json_str = file.read()
        bundle = jsonpickle.decode(json_str)
        return bundle


def export_report(bundle: ReportBundle, fmt: str, path: str = "") -> str:
    """Render the bundle in the given format and write it to `path` if one is given.

    Formatters only read values already stored in the bundle.
    """
    if fmt == ReportFormat.TEXT:
        # imported here because utils renders bundles and imports this module
        from .utils import summarize_bundle

        text = summarize_bundle(bundle)
    elif fmt == ReportFormat.CSV:
        text = bundle_to_csv(bundle)
    elif fmt == ReportFormat.JSON:
        text = bundle.dump()
    else:
        raise ReportFormatError("unknown report format {}; supported formats are {}".format(fmt, ", ".join(supported_formats)))
    if path:
        try:
            with open(path, "w") as file:
                file.write(text)
        except OSError as e:
            raise ReportWriteError("cannot write report to {}: {}".format(path, e.strerror or e))
    return text


def bundle_to_csv(bundle: ReportBundle) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    blocks = 0
    for name in bundle.sections:
        if blocks:
            writer.writerow([])
        blocks += 1
        value = bundle.section(name)
        if value is None:
            writer.writerow([name, ABSENT])
            continue
        if name == Section.SOLUTION:
            writer.writerow(solution_columns)
            writer.writerows(solution_rows(value))
        else:
            writer.writerow(["section", "key", "value"])
            writer.writerows([name, key, item] for key, item in section_items(name, value))
    return buf.getvalue()


def solution_rows(solution: PlanSolution) -> list:
    rows = []
    for j, pid in enumerate(solution.plant_ids):
        for t in range(len(solution.production[j])):
            rows.append([pid, t + 1, solution.selected[j], solution.production[j][t], solution.surplus[j][t], solution.period_cost[j][t]])
    return rows


def section_items(name: str, value) -> list:
    """Flatten a non-tabular section into (key, value) pairs."""
    if name == Section.PV:
        items = []
        for alt, result in value.items():
            items.extend(("{}.{}".format(alt, key), item) for key, item in _fields(result))
        return items
    if name == Section.MC:
        items = []
        for key, item in _fields(value):
            if isinstance(item, dict):
                items.extend(("{}.{}".format(key, k), v) for k, v in item.items())
            else:
                items.append((key, ABSENT if item is None else item))
        return items
    return list(_fields(value))


def _fields(obj):
    for key, item in obj.__dict__.items():
        if isinstance(item, float) and math.isnan(item):
            item = ABSENT
        yield key, item

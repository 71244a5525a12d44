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

import argparse
import sys

import numpy as np

from ..models import (
    DomainError,
    InfeasibleProblemError,
    InvalidProblemError,
    LinkageError,
    OracleRefusedError,
    ReportError,
    ScenarioError,
)
from ..oracle import min_grid_steps
from ..planner import SolarPlanner, config
from ..report import Section, supported_formats
from ..scenario import load_scenario, scenario_violations
from ..utils import dataset_names, format_currency, resolve_scenario_path
from ..verification import oracle_agreement, random_problem


EXIT_OK = 0
EXIT_USAGE = 2
EXIT_MODEL = 3

# usage and input problems exit 2, model outcomes exit 3
usage_errors = (ScenarioError, DomainError, InvalidProblemError, OracleRefusedError, ReportError)
model_errors = (InfeasibleProblemError, LinkageError)

actions = ["solve", "oracle", "pv", "link", "simulate", "compare", "validate"]


class SPICLI:
    args = None

    def __init__(self, argv=None):
        scenario_help = "scenario file or shipped dataset name ({})".format(", ".join(dataset_names()) or "none installed")
        parser = argparse.ArgumentParser(prog="spi", description="Solar plant selection and rooftop PV planning")
        subparsers = parser.add_subparsers(dest="action", metavar="ACTION")
        subparsers.required = True

        solve = subparsers.add_parser("solve", help="select plants and production for a scenario")
        solve.add_argument("scenario", help=scenario_help)
        solve.add_argument("--jobs", type=_jobs, default=1, help="worker processes for per-plant costs, -1 for all cores (default=1)")
        self._add_output_args(solve)

        oracle = subparsers.add_parser("oracle", help="cross-check the solver against brute-force enumeration")
        oracle.add_argument("scenario", nargs="?", help=scenario_help)
        oracle.add_argument("--random", action="store_true", help="use a random instance instead of a scenario")
        oracle.add_argument("--plants", type=_positive_int, default=4, help="plants in the random instance (default=4)")
        oracle.add_argument("--periods", type=_positive_int, default=2, help="periods in the random instance (default=2)")
        oracle.add_argument("--seed", type=_non_negative_int, default=0, help="seed of the random instance (default=0)")
        oracle.add_argument("--grid-steps", type=int, default=200, help="grid points per capacity interval (default=200, min={})".format(min_grid_steps))

        pv = subparsers.add_parser("pv", help="optimal per-panel output of the rooftop PV model")
        pv.add_argument("scenario", help=scenario_help)
        pv.add_argument("--alternative", default="", help="PV alternative name, or 'all' (default: the scenario default)")
        pv.add_argument("--verify", action="store_true", help="confirm the stationary point by golden-section search")

        link = subparsers.add_parser("link", help="breakeven output and matching panel count")
        link.add_argument("scenario", help=scenario_help)
        link.add_argument("--alternative", default="", help="PV alternative name (default: the scenario default)")
        link.add_argument("--verify", action="store_true", help="confirm by quadrature and bisection")

        simulate = subparsers.add_parser("simulate", help="Monte Carlo replications under uncertain demand")
        simulate.add_argument("scenario", help=scenario_help)
        simulate.add_argument("--replications", type=int, default=None, help="number of replications (default: scenario mc section, else 1000)")
        simulate.add_argument("--seed", type=_non_negative_int, default=None, help="root seed (default: scenario mc section, else 0)")
        simulate.add_argument("--spread", type=float, default=None, help="relative demand half-width (default: scenario mc section, else 0)")
        simulate.add_argument("--jobs", type=_jobs, default=1, help="worker processes for replications, -1 for all cores (default=1)")
        self._add_output_args(simulate)

        compare = subparsers.add_parser("compare", help="compare the plan cost with the rooftop PV cost")
        compare.add_argument("scenario", help=scenario_help)
        compare.add_argument("--alternative", default="", help="PV alternative name (default: the scenario default)")

        validate = subparsers.add_parser("validate", help="check a scenario's schema and invariants")
        validate.add_argument("scenario", help=scenario_help)

        self.parser = parser
        self.args = parser.parse_args(argv)

    @staticmethod
    def _add_output_args(parser):
        parser.add_argument("--format", default="text", choices=supported_formats, help="report format (default=text)")
        parser.add_argument(
            "-s",
            "--save",
            action="store_true",
            help="enable report save under SPI_OUT_DIR (default={})".format(config.out_dir),
        )
        parser.add_argument("-o", "--out-dir", help="output directory for saved reports")

    def run(self) -> int:
        args = self.args
        try:
            return getattr(self, "run_" + args.action)(args)
        except usage_errors as e:
            return _fail(e, EXIT_USAGE)
        except model_errors as e:
            return _fail(e, EXIT_MODEL)

    def run_solve(self, args) -> int:
        planner = SolarPlanner.from_target(args.scenario, n_jobs=args.jobs, do_save=args.save, out_dir=args.out_dir or "")
        planner.solve()
        _emit(planner.report([Section.SOLUTION], args.format, label="solve"))
        return EXIT_OK

    def run_oracle(self, args) -> int:
        if args.random == bool(args.scenario):
            self.parser.error("oracle needs exactly one of SCENARIO or --random")
        planner = None
        if args.random:
            rng = np.random.default_rng(args.seed)
            problem = random_problem(rng, args.plants, args.periods)
            label = "random instance (plants={}, periods={}, seed={})".format(args.plants, args.periods, args.seed)
        else:
            planner = SolarPlanner.from_target(args.scenario)
            label = args.scenario
        if args.grid_steps < min_grid_steps:
            raise DomainError("--grid-steps must be >= {}, got {}".format(min_grid_steps, args.grid_steps))

        if planner is None:
            verdict = oracle_agreement(problem, grid_steps=args.grid_steps)
        else:
            verdict = planner.oracle(grid_steps=args.grid_steps)
        lines = ["AGREE" if verdict.agree else "DISAGREE", "instance: {}".format(label)]
        if not verdict.feasible and verdict.agree:
            lines.append("both report the instance infeasible")
        else:
            lines.append("solver objective: {}".format(format_currency(verdict.solver_objective)))
            lines.append("oracle objective: {}".format(format_currency(verdict.oracle_objective)))
            lines.append("solver selected: {}".format(", ".join(verdict.solver_selected) or "none"))
            lines.append("oracle selected: {}".format(", ".join(verdict.oracle_selected) or "none"))
            lines.append("relative gap: {:.3g}".format(verdict.relative_gap))
        if planner is not None:
            for d in planner.bundle.discrepancies:
                lines.append("reported objective: {} (oracle {}, relative difference {:.3g})".format(format_currency(d.reported), format_currency(d.computed), d.relative))
        _emit("\n".join(lines) + "\n")
        return EXIT_OK if verdict.agree else EXIT_MODEL

    def run_pv(self, args) -> int:
        planner = SolarPlanner.from_target(args.scenario)
        planner.optimize_pv(args.alternative, verify=args.verify)
        _emit(planner.report([Section.PV], "text", label="pv"))
        return EXIT_OK if all(c.passed for c in planner.bundle.checks) else EXIT_MODEL

    def run_link(self, args) -> int:
        planner = SolarPlanner.from_target(args.scenario)
        planner.link(args.alternative, verify=args.verify)
        _emit(planner.report([Section.PV, Section.LINK], "text", label="link"))
        return EXIT_OK if all(c.passed for c in planner.bundle.checks) else EXIT_MODEL

    def run_simulate(self, args) -> int:
        planner = SolarPlanner.from_target(args.scenario, n_jobs=args.jobs, do_save=args.save, out_dir=args.out_dir or "")
        planner.simulate(replications=args.replications, seed=args.seed, spread=args.spread)
        _emit(planner.report([Section.MC], args.format, label="simulate"))
        return EXIT_OK

    def run_compare(self, args) -> int:
        planner = SolarPlanner.from_target(args.scenario)
        planner.compare(args.alternative)
        _emit(planner.report([Section.SOLUTION, Section.PV, Section.COMPARISON], "text", label="compare"))
        return EXIT_OK

    def run_validate(self, args) -> int:
        path = resolve_scenario_path(args.scenario)
        scenario = load_scenario(path, validate=False)
        violations = scenario_violations(scenario)
        if not violations:
            counts = (len(scenario.problem.plants), scenario.problem.horizon, len(scenario.alternative_names()))
            _emit("{}: valid ({} plants, {} periods, {} PV alternative(s))\n".format(path, *counts))
            return EXIT_OK
        lines = ["{}: {} violation(s)".format(path, len(violations))]
        lines.extend("- " + v.message for v in violations)
        _emit("\n".join(lines) + "\n")
        return EXIT_USAGE


def _non_negative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be a non-negative integer, got {}".format(value))
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer, got {}".format(value))
    return value


def _jobs(text: str) -> int:
    # joblib counts negative values back from the number of cores
    value = int(text)
    if value == 0:
        raise argparse.ArgumentTypeError("must not be 0; use -1 for all cores")
    return value


def cli_dispatch(argv=None) -> int:
    try:
        cli = SPICLI(argv)
        return cli.run()
    except SystemExit as e:
        # argparse exits 0 for --help and 2 for usage errors
        return e.code if isinstance(e.code, int) else EXIT_USAGE


def _emit(text: str):
    sys.stdout.write(text)
    sys.stdout.flush()


def _fail(e: Exception, code: int) -> int:
    category = getattr(e, "category", "error")
    print("error[{}]: {}".format(category, e), file=sys.stderr)
    return code

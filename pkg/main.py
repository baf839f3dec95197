#!/usr/bin/env python3
"""
Main orchestrator for gowers-lab.
Runs Gowers norm, correlation and identity experiments and writes their reports.
"""

import argparse
import os
import sys
import time
import logging
import yaml
from typing import Callable, Dict, List, Optional
from dotenv import load_dotenv

from correlation import (
    max_correlation_exhaustive, max_correlation_naive, max_correlation_spectral,
    sampled_correlation_profile,
)
from experiments import ExperimentReport, ReportRow, RUNNERS, run_experiment
from field import DomainError
from functions import DENSE_CAP, materialize, parse_descriptor
from gowers import gowers_norm_exact, gowers_norm_mc
from render import FORMATS, ReportRenderer
from store import Database

# Load environment variables
load_dotenv()

# Configure logging
logging.basicConfig(
    level=os.getenv('LOG_LEVEL', 'INFO'),
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class ExperimentOrchestrator:
    """Loads configuration, runs experiments, records them and renders reports."""

    def __init__(self, config_path: Optional[str] = None, use_store: Optional[bool] = None):
        config_path = config_path or os.getenv('GOWERS_LAB_CONFIG', 'config.yaml')
        # Load configuration
        if os.path.exists(config_path):
            with open(config_path, 'r') as f:
                self.config = yaml.safe_load(f) or {}
        else:
            logger.warning(f"No config at {config_path}; using built-in defaults")
            self.config = {}

        store_config = self.config.get('store', {})
        enabled = store_config.get('enabled', False) if use_store is None else use_store
        self.db = None
        if enabled:
            self.db = Database(os.getenv('DATABASE_PATH', store_config.get('path', './gowers_lab.db')))

        self.renderer = ReportRenderer(self.config)

    @property
    def limits(self) -> Dict:
        return {**(self.config.get('limits') or {}), **(self.config.get('sampling') or {})}

    def experiment_config(self, name: str) -> Dict:
        return dict((self.config.get('experiments') or {}).get(name) or {})

    def run(self, name: str, overrides: Optional[Dict] = None, seed: int = 0,
            threads: int = 1) -> ExperimentReport:
        """Run one registered experiment; every run lands in the ledger, failed ones too."""
        params = {**self.experiment_config(name), **(overrides or {})}
        try:
            report = run_experiment(name, params, seed=seed, threads=threads, limits=self.limits)
        except Exception as e:
            logger.error(f"Experiment {name} failed: {e}", exc_info=not isinstance(e, DomainError))
            self._record(name, params, seed, None, error=str(e))
            raise
        self._record(name, params, seed, report)
        return report

    def run_command(self, name: str, params: Dict, build: Callable[[], ExperimentReport],
                    seed: int = 0) -> ExperimentReport:
        """Run a one-off computation; it is recorded exactly like a registered experiment."""
        start = time.perf_counter()
        try:
            report = build()
        except Exception as e:
            logger.error(f"{name} failed: {e}", exc_info=not isinstance(e, DomainError))
            self._record(name, params, seed, None, error=str(e))
            raise
        report.wall_clock = time.perf_counter() - start
        self._record(name, params, seed, report)
        return report

    def _record(self, name: str, params: Dict, seed: int, report: Optional[ExperimentReport],
                error: Optional[str] = None):
        if not self.db:
            return
        if report is None:
            self.db.log_run(name, params, seed, 0.0, 0, 0, error=error)
            return
        run_id = self.db.log_run(name, report.params, seed, report.wall_clock,
                                 len(report.rows), len(report.failures))
        for row in report.rows:
            self.db.log_metric(f"{row.metric}@N={row.N}", row.value, run_id=run_id,
                               metadata={'bound': row.bound, 'err': row.err, 'pass': row.passed})

    def emit(self, report: ExperimentReport, fmt: str = 'json', out: Optional[str] = None,
             timestamp: bool = True) -> int:
        """Render the report to `out` (or stdout) and map it to an exit code."""
        self.renderer.stamp(report, with_timestamp=timestamp)
        text = self.renderer.write(report, fmt, out)
        if not out:
            sys.stdout.write(text)
        self._log_summary(report)
        return EXIT_OK if report.passed else EXIT_FAILED

    def _log_summary(self, report: ExperimentReport):
        logger.info(f"\n{'='*80}")
        logger.info(f"📊 {report.experiment.upper()} SUMMARY")
        logger.info(f"{'='*80}")
        logger.info(f"✅ Rows passed: {len(report.rows) - len(report.failures)}")
        logger.info(f"❌ Rows failed: {len(report.failures)}")
        for row in report.failures[:10]:
            logger.info(f"  ❌ N={row.N} {row.metric}: {row.value:.6g} not {row.relation} {row.bound:.6g}")
        logger.info(f"{'='*80}")


def _load_function(spec: str, p: int, N: Optional[int], dense_cap: int):
    """Materialize a FunctionSpec; poly/table descriptors carry their own space."""
    if spec.startswith("sym:"):
        if N is None:
            raise DomainError("--N is required for sym descriptors")
        return materialize(spec, p, N, dense_cap=dense_cap)
    desc = parse_descriptor(spec, p, N or 0)
    if desc.p != p or (N is not None and desc.N != N):
        raise DomainError(f"{spec} lives in F_{desc.p}^{desc.N}, requested F_{p}^{N}")
    return materialize(desc, desc.p, desc.N, dense_cap=dense_cap)


def _command_params(args) -> Dict:
    params = {"p": args.p, "N": args.N, "function": args.function}
    if args.command == "gowers":
        params.update(order=args.order, mode=args.mode,
                      samples=args.samples if args.mode == "mc" else None)
    else:
        params.update(degree=args.degree, method=args.method,
                      trials=args.trials if args.method == "sampled" else None)
    return params


def _gowers_report(args) -> ExperimentReport:
    f = _load_function(args.function, args.p, args.N, args.dense_cap or DENSE_CAP)
    report = ExperimentReport("gowers", {**_command_params(args), "N": f.N}, args.seed)
    if args.mode == "exact":
        est = gowers_norm_exact(f, args.order)
    else:
        est = gowers_norm_mc(f, args.order, args.samples, args.seed, threads=args.threads)
    raw = est.exact if est.exact is not None else est.raw_power
    report.add(ReportRow.measure(f.N, f"u{args.order}_norm", est.value, ">=", 0.0, err=est.std_error))
    report.add(ReportRow.measure(f.N, f"u{args.order}_raw_power", raw, ">=", 0.0, err=est.std_error))
    return report


def _correlate_report(args) -> ExperimentReport:
    f = _load_function(args.function, args.p, args.N, args.dense_cap or DENSE_CAP)
    report = ExperimentReport("correlate", {**_command_params(args), "N": f.N}, args.seed)
    if args.method == "sampled":
        profile = sampled_correlation_profile(f, args.degree, args.trials, args.seed)
        for name, value in profile.quantiles.items():
            report.add(ReportRow.measure(f.N, f"corr_{name}", value, "<=", 1.0, err=profile.std_error))
        return report
    if args.method == "exhaustive":
        result = max_correlation_exhaustive(f, args.degree, threads=args.threads)
    elif args.method == "naive":
        result = max_correlation_naive(f, args.degree)
    else:
        result = max_correlation_spectral(f, args.degree)
    value = result.exact if result.exact is not None else result.max_abs
    report.add(ReportRow.measure(f.N, "max_corr", value, "<=", 1))
    return report


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gowers-lab", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--seed', type=int, default=0)
    common.add_argument('--threads', type=int, default=os.cpu_count() or 1)
    common.add_argument('--format', choices=FORMATS, default=None)
    common.add_argument('--out', default=None)
    common.add_argument('--no-timestamp', action='store_true')
    common.add_argument('--dense-cap', type=int, default=None)
    common.add_argument('--config', default=None)
    common.add_argument('--no-store', action='store_true')
    common.add_argument('--verbose', action='store_true')

    function = argparse.ArgumentParser(add_help=False)
    function.add_argument('--p', type=int, default=2)
    function.add_argument('--N', type=int, default=None)
    function.add_argument('--function', default='sym:4')

    sub = parser.add_subparsers(dest='command', required=True)

    g = sub.add_parser('gowers', parents=[common, function], help='Gowers norm of one function')
    g.add_argument('--order', type=int, required=True)
    g.add_argument('--mode', choices=['exact', 'mc'], default='exact')
    g.add_argument('--samples', type=int, default=10 ** 6)

    c = sub.add_parser('correlate', parents=[common, function], help='best low-degree correlation')
    c.add_argument('--degree', type=int, required=True)
    c.add_argument('--method', choices=['exhaustive', 'naive', 'spectral', 'sampled'],
                   default='exhaustive')
    c.add_argument('--trials', type=int, default=2000)

    for name, text in (('identities', 'randomized identity suite'), ('dixon', 'Dixon spectrum suite')):
        s = sub.add_parser(name, parents=[common], help=text)
        s.add_argument('--trials', type=int, default=None)

    e = sub.add_parser('experiment', parents=[common], help='run a registered experiment')
    e.add_argument('name', choices=sorted(RUNNERS))
    e.add_argument('--samples', type=int, default=None)
    e.add_argument('--trials', type=int, default=None)
    e.add_argument('--freeze-golden', action='store_true')
    return parser


def _suite_overrides(command: str, args) -> Dict:
    overrides: Dict = {}
    trials = getattr(args, 'trials', None)
    samples = getattr(args, 'samples', None)
    if command == 'identities' and trials:
        overrides['instances'] = {key: trials for key in
                                  ('expansion', 'coefficient', 'h_vs_s', 'incomplete', 'vanishing')}
    elif command == 'dixon' and trials:
        overrides.update(instances=trials, s4_instances=trials)
    elif trials:
        overrides['trials'] = trials
    if samples:
        overrides['samples'] = samples
    if getattr(args, 'freeze_golden', False):
        overrides['freeze_golden'] = True
    return overrides


def cli_main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)

    try:
        orchestrator = ExperimentOrchestrator(args.config, use_store=False if args.no_store else None)
        fmt = args.format or (orchestrator.config.get('report') or {}).get('format', 'json')
        if args.command in ('gowers', 'correlate'):
            build = _gowers_report if args.command == 'gowers' else _correlate_report
            report = orchestrator.run_command(args.command, _command_params(args),
                                              lambda: build(args), seed=args.seed)
        else:
            name = args.name if args.command == 'experiment' else args.command
            overrides = _suite_overrides(name, args)
            if args.dense_cap:
                overrides['dense_cap'] = args.dense_cap
            report = orchestrator.run(name, overrides, seed=args.seed, threads=args.threads)
        return orchestrator.emit(report, fmt, args.out, timestamp=not args.no_timestamp)
    except DomainError as e:
        print(f"gowers-lab: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(cli_main())

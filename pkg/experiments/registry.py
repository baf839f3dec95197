"""Experiment registry: parameters from config.yaml, dispatch and timing."""

import copy
import logging
import time
from pathlib import Path
from typing import Callable, Dict, Optional, Union

import yaml

from correlation import EXHAUSTIVE_SPACE
from correlation.profile import LAZY_POINTS
from field import DomainError
from functions import DENSE_CAP
from gowers import GOWERS_BUDGET, REJECTION_CAP
from gowers.norms import BATCH, SHARDS
from quadratic.cubic import PAIR_CAP

from .icgn import general_n, icgn_correlation, icgn_gowers
from .report import ExperimentReport
from .suites import digits, dixon, distributions, identities, mixed_derivative, rank_tail

logger = logging.getLogger(__name__)

Runner = Callable[[ExperimentReport, Dict, int], None]

DEFAULT_CONFIG = Path(__file__).resolve().parent.parent / "config.yaml"

LIMITS = {
    "dense_cap": DENSE_CAP,
    "gowers_budget": GOWERS_BUDGET,
    "exhaustive_space": EXHAUSTIVE_SPACE,
    "rejection_cap": REJECTION_CAP,
    "pair_cap": PAIR_CAP,
    "shards": SHARDS,
    "lazy_points": LAZY_POINTS,
    "batch": BATCH,
}

RUNNERS: Dict[str, Runner] = {
    "icgn-gowers": icgn_gowers,
    "icgn-correlation": icgn_correlation,
    "general-n": general_n,
    "digits": digits,
    "identities": identities,
    "dixon": dixon,
    "rank-tail": rank_tail,
    "distributions": distributions,
    "mixed-derivative": mixed_derivative,
}


def _merge(base: Dict, override: Optional[Dict]) -> Dict:
    out = copy.deepcopy(base)
    for key, value in (override or {}).items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _merge(out[key], value)
        else:
            out[key] = value
    return out


def experiment_defaults(path: Union[str, Path] = DEFAULT_CONFIG) -> Dict[str, Dict]:
    """The `experiments` section of the packaged config.yaml."""
    with open(path, 'r') as f:
        config = yaml.safe_load(f) or {}
    return config.get('experiments') or {}


def experiment_params(name: str, overrides: Optional[Dict] = None, limits: Optional[Dict] = None) -> Dict:
    """Library limits, then config.yaml defaults for `name`, then overrides."""
    if name not in RUNNERS:
        raise DomainError(f"unknown experiment {name!r}; choose from {sorted(RUNNERS)}")
    defaults = experiment_defaults()
    if name not in defaults:
        raise DomainError(f"{DEFAULT_CONFIG} has no parameters for {name!r}")
    params = _merge(LIMITS, limits)
    return _merge(_merge(params, defaults[name]), overrides)


def run_experiment(
    name: str,
    params: Optional[Dict] = None,
    seed: int = 0,
    threads: int = 1,
    limits: Optional[Dict] = None,
) -> ExperimentReport:
    params = experiment_params(name, params, limits)
    report = ExperimentReport(name, {k: v for k, v in params.items() if k not in LIMITS}, seed)
    logger.info(f"\n{'='*80}")
    logger.info(f"🧪 EXPERIMENT {name} (seed {seed}, {threads} threads)")
    logger.info(f"{'='*80}")
    start = time.perf_counter()
    RUNNERS[name](report, params, threads)
    report.wall_clock = time.perf_counter() - start

    for row in report.rows:
        mark = "✅" if row.passed else "❌"
        logger.info(f"  {mark} N={row.N:<3} {row.metric}: {row.value:.6g} {row.relation} {row.bound:.6g}")
    logger.info(f"{len(report.rows) - len(report.failures)}/{len(report.rows)} rows passed "
                f"in {report.wall_clock:.1f}s")
    return report

"""S_4 at desk scale: large U^4 norm on one side, small cubic correlation on the other."""

import logging
from fractions import Fraction
from typing import Dict

from correlation import max_correlation_exhaustive, sampled_correlation_profile
from functions import materialize
from gowers import chain_bound_estimate, gowers_norm_exact, gowers_norm_mc

from .golden import freeze_golden, load_golden
from .report import ExperimentReport, ReportRow

logger = logging.getLogger(__name__)


def icgn_gowers(report: ExperimentReport, params: Dict, threads: int = 1):
    """Exact ||S_4||_{U^4} at small N, sampled at larger N, checked against the exact trend."""
    seed = report.seed
    exact: Dict[int, Fraction] = {}
    for N in params["exact_N"]:
        f = materialize("sym:4", 2, N, dense_cap=params["dense_cap"])
        est = gowers_norm_exact(f, 4, budget=params["gowers_budget"])
        exact[N] = est.exact
        logger.info(f"📊 ||S_4||_U4 at N={N}: {est.value:.6f} (raw {est.exact})")
        report.add(ReportRow.measure(N, "u4_norm_exact", est.value, ">=", params["floor"]))

    golden = load_golden(params["golden_path"])
    if params.get("freeze_golden"):
        freeze_golden(params["golden_path"], report.experiment, exact)
    elif golden is not None:
        for N, raw in exact.items():
            if N in golden:
                report.add(ReportRow.measure(N, "u4_raw_vs_golden", raw, "==", golden[N]))
    else:
        logger.warning(f"No golden file at {params['golden_path']}; run with --freeze-golden to create it")

    # Exact raw powers decrease towards a positive limit; MC values must sit
    # inside the spread of the exact trend widened by three standard errors.
    tail = exact[max(exact)]
    spread = float(max(exact.values()) - min(exact.values()))
    for N in params["mc_N"]:
        f = materialize("sym:4", 2, N, dense_cap=params["dense_cap"])
        est = gowers_norm_mc(f, 4, params["samples"], seed, shards=params["shards"],
                             threads=threads, batch=params["batch"])
        logger.info(f"📊 MC ||S_4||_U4 at N={N}: raw {est.raw_power:.5f} ± {est.std_error:.5f}")
        report.add(ReportRow.measure(N, "u4_raw_mc_vs_trend", est.raw_power, "==", float(tail),
                                     err=est.std_error, slack=3 * est.std_error + spread))
        report.add(ReportRow.measure(N, "u4_raw_mc_floor", est.raw_power, ">=",
                                     params["raw_floor"], err=est.std_error))
        if params.get("chain_samples"):
            chain = chain_bound_estimate(2, N, params["chain_samples"], seed,
                                         pairs=params["chain_pairs"])
            report.add(ReportRow.measure(N, "chain_lower_bound", chain.bound, "<=",
                                         est.raw_power, slack=3 * est.std_error))


def icgn_correlation(report: ExperimentReport, params: Dict, threads: int = 1):
    """Best cubic correlation of S_4: exhaustive at tiny N, sampled profiles beyond."""
    exhaustive = {}
    for N in params["exhaustive_N"]:
        f = materialize("sym:4", 2, N)
        result = max_correlation_exhaustive(f, 3, space_cap=params["exhaustive_space"],
                                            shards=params["shards"], threads=threads)
        exhaustive[N] = result.exact
        logger.info(f"🔎 max |<S_4, cubic>| at N={N}: {result.exact}")

    previous = None
    for N in sorted(exhaustive):
        bound = Fraction(1) if previous is None else previous
        relation = "<" if previous is None else "<="
        report.add(ReportRow.measure(N, "max_corr_exhaustive", exhaustive[N], relation, bound))
        previous = exhaustive[N]

    ceiling = exhaustive[max(exhaustive)]
    previous_p99 = None
    for N in params["profile_N"]:
        f = materialize("sym:4", 2, N, dense_cap=params["dense_cap"])
        profile = sampled_correlation_profile(f, 3, params["trials"], report.seed,
                                              points=params["lazy_points"])
        q = profile.quantiles
        logger.info(f"📊 N={N}: p50 {q['p50']:.4f}, p99 {q['p99']:.4f}, max {q['max']:.4f}")
        report.add(ReportRow.measure(N, "p99_sampled_vs_exhaustive", q["p99"], "<", ceiling,
                                     err=profile.std_error))
        if previous_p99 is not None:
            report.add(ReportRow.measure(N, "p99_sampled_trend", q["p99"], "<=", previous_p99,
                                         err=profile.std_error, slack=2 * profile.std_error))
        previous_p99 = q["p99"]


def general_n(report: ExperimentReport, params: Dict, threads: int = 1):
    """||S_n||_{U^{n-p+2}} stays away from zero."""
    for p, n, Ns in params["cases"]:
        k = n - p + 2
        for N in Ns:
            f = materialize(f"sym:{n}", p, N, dense_cap=params["dense_cap"])
            est = gowers_norm_exact(f, k, budget=params["gowers_budget"])
            logger.info(f"📊 ||S_{n}||_U{k} over F_{p}^{N}: {est.value:.6f}")
            report.add(ReportRow.measure(N, f"u{k}_norm_s{n}_p{p}", est.value, ">",
                                         params["floor"]))

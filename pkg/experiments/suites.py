"""Randomized identity suites; every row counts mismatches against an independent oracle."""

import logging
from fractions import Fraction
from itertools import combinations
from math import comb, factorial
from typing import Dict

import numpy as np

from correlation import derivative_inequality_check
from field import FieldVector
from functions import (
    FiniteFunction, all_points, coefficient_table, iterated_derivative, materialize,
)
from gowers import power_product_distribution, vanishing_lemma_check
from matrix import (
    ColumnExclusion, RowMatrix, eval_matrix_function, incomplete_expansion, incomplete_single,
    partition_expansion_sym,
)
from quadratic import (
    AffineSupport, CubicTensor, QuadraticForm, SymmetricBitMatrix, af_event_estimate,
    common_zero_bound_check, dixon_spectrum_check, magnitude_bound_holds,
    minor_determinant_family, rank_tail_check, s_pair, second_derivative_s4, support_within,
)
from symmetric import (
    MultiIndexPolynomial, SymmetricSpec, derivative_expansion, digit_dependence,
    eval_symmetric_many, monomial_coefficient,
)

from .report import ExperimentReport, ReportRow

logger = logging.getLogger(__name__)


def _mismatch_row(N: int, name: str, mismatches: int, checked: int) -> ReportRow:
    level = logging.INFO if mismatches == 0 else logging.WARNING
    logger.log(level, f"{'✅' if mismatches == 0 else '❌'} {name}: {mismatches} mismatches in {checked}")
    return ReportRow.measure(N, f"mismatches_{name}", mismatches, "==", 0)


def _random_rows(rng, p, N, n):
    return [FieldVector.random(N, p, rng) for _ in range(n)]


def digits(report: ExperimentReport, params: Dict, threads: int = 1):
    """Lucas digit tables for S_{p^2} and boolean-cube values of S_n against C(w, n) mod p."""
    for p in params["primes"]:
        table = digit_dependence(p, 2)
        n = table["n"]
        report.add(ReportRow.check(n, f"s{n}_p{p}_depends_on_digit_only", table["depends_on_digit_only"]))
        report.add(ReportRow.check(n, f"s{n}_p{p}_lower_degrees_ignore_digit",
                                   table["lower_degrees_ignore_digit"]))

        # weights 0..p^3 - 1 on the first w coordinates
        N = p ** 3 - 1
        X = (np.arange(N)[None, :] < np.arange(N + 1)[:, None]).astype(np.int64)
        values = eval_symmetric_many(SymmetricSpec(n, p, N), X)
        expected = [comb(w, n) % p for w in range(N + 1)]
        report.add(_mismatch_row(N, f"s{n}_p{p}_weight_values",
                                 int(np.sum(values != np.array(expected))), N + 1))

        cube_N = params["cube_N"]
        X = all_points(2, cube_N)
        weights = X.sum(axis=1)
        mismatches = 0
        for m in range(params["max_degree"] + 1):
            got = eval_symmetric_many(SymmetricSpec(m, p, cube_N), X)
            binomials = np.array([comb(w, m) % p for w in range(cube_N + 1)])
            mismatches += int(np.sum(got != binomials[weights]))
        report.add(_mismatch_row(cube_N, f"cube_values_p{p}", mismatches,
                                 len(X) * (params["max_degree"] + 1)))


def identities(report: ExperimentReport, params: Dict, threads: int = 1):
    """Expansion identities for derivatives of S_n and for the S / F / H functionals."""
    rng = np.random.default_rng(report.seed)
    counts = params["instances"]

    for p in params["primes"]:
        n, N = params["n"], params["N"]
        spec = SymmetricSpec(n, p, N)
        f = materialize(spec, p, N)
        weights = p ** np.arange(N)

        bad = 0
        for _ in range(counts["expansion"]):
            k = int(rng.integers(1, 4))
            dirs = _random_rows(rng, p, N, k)
            table = iterated_derivative(f, dirs).table
            X = rng.integers(0, p, size=(params["points"], N))
            got = derivative_expansion(spec, dirs).evaluate_many(X)
            bad += int(np.sum(got != table[X @ weights].astype(np.int64)))
        report.add(_mismatch_row(N, f"derivative_expansion_p{p}", bad, counts["expansion"]))

        bad = 0
        for _ in range(counts["coefficient"]):
            k = int(rng.integers(1, 3))
            dirs = _random_rows(rng, p, N, k)
            coeffs = coefficient_table(iterated_derivative(f, dirs))
            m = int(rng.integers(0, min(n - k, N) + 1))
            J = sorted(rng.choice(N, size=m, replace=False).tolist())
            out = monomial_coefficient(spec, dirs, J)
            exps = np.zeros(N, dtype=np.int64)
            exps[J] = 1
            if out["h_form"].value != coeffs[int(exps @ weights)]:
                bad += 1
            elif out["s_form_applies"] and out["s_form"] != out["h_form"]:
                bad += 1
        report.add(_mismatch_row(N, f"coefficient_forms_p{p}", bad, counts["coefficient"]))

    for p in params["matrix_primes"]:
        N = params["matrix_N"]
        bad = 0
        for _ in range(counts["h_vs_s"]):
            groups = [(FieldVector.random(N, p, rng), int(rng.integers(1, 4)))
                      for _ in range(int(rng.integers(1, 4)))]
            M = RowMatrix.from_groups(groups)
            s = eval_matrix_function("S", M).value
            h = eval_matrix_function("H", M).value
            if all(m < p for m in M.multiplicities):
                scale = 1
                for m in M.multiplicities:
                    scale *= factorial(m)
                bad += s != (scale * h) % p
            else:
                bad += s != 0
        report.add(_mismatch_row(N, f"h_vs_s_p{p}", bad, counts["h_vs_s"]))

        bad_single = bad_full = bad_partition = 0
        for _ in range(counts["incomplete"]):
            rows = _random_rows(rng, p, N, int(rng.integers(1, 5)))
            missing = rng.choice(N, size=int(rng.integers(1, 4)), replace=False).tolist()
            M = RowMatrix.from_rows(rows)
            bad_full += incomplete_expansion(rows, missing) != eval_matrix_function(
                "S", M, ColumnExclusion.of(missing, N))
            bad_single += incomplete_single(rows, missing[0]) != eval_matrix_function(
                "S", M, ColumnExclusion.of(missing[:1], N))
            bad_partition += partition_expansion_sym(rows) != eval_matrix_function("S", M)
        report.add(_mismatch_row(N, f"incomplete_single_p{p}", int(bad_single), counts["incomplete"]))
        report.add(_mismatch_row(N, f"incomplete_expansion_p{p}", int(bad_full), counts["incomplete"]))
        report.add(_mismatch_row(N, f"partition_expansion_p{p}", int(bad_partition), counts["incomplete"]))

    vanish = vanishing_lemma_check(2, params["vanishing_N"], counts["vanishing"], report.seed,
                                   cap=params["rejection_cap"])
    report.add(ReportRow.check(vanish.N, "vanishing_lemma", vanish.passed and not vanish.cap_exhausted))


def dixon(report: ExperimentReport, params: Dict, threads: int = 1):
    """Dixon spectra of random quadratics and of S_4 second derivatives."""
    rng = np.random.default_rng(report.seed)
    max_N = params["max_N"]
    bad = 0
    for _ in range(params["instances"]):
        N = int(rng.integers(2, max_N + 1))
        Q = QuadraticForm(rng.integers(0, 2, size=(N, N)), rng.integers(0, 2, size=N),
                          int(rng.integers(0, 2)))
        bad += not dixon_spectrum_check(Q).passed
    report.add(_mismatch_row(max_N, "dixon_random_quadratics", bad, params["instances"]))

    N = params["s4_N"]
    support_bad = magnitude_bad = done_zero = done_one = 0
    while done_zero < params["s4_instances"] or done_one < params["s4_instances"]:
        y, z = FieldVector.random(N, 2, rng), FieldVector.random(N, 2, rng)
        Q = second_derivative_s4(y, z)
        if s_pair(y, z) == 0 and done_zero < params["s4_instances"]:
            support_bad += not support_within(Q, AffineSupport.of(y, z))
            done_zero += 1
        elif s_pair(y, z) == 1 and done_one < params["s4_instances"]:
            magnitude_bad += not magnitude_bound_holds(Q, (N - 5) / 2)
            done_one += 1
    report.add(_mismatch_row(N, "s4_support_in_affine_set", support_bad, done_zero))
    report.add(_mismatch_row(N, "s4_magnitude_when_s_is_one", magnitude_bad, done_one))


def rank_tail(report: ExperimentReport, params: Dict, threads: int = 1):
    """Affine-support events of cubic forms and the low-rank chain behind them."""
    rng = np.random.default_rng(report.seed)

    N = params["af_N"]
    worst, chain_ok = Fraction(0), True
    for _ in range(params["cubics"]):
        af = af_event_estimate(CubicTensor.random(N, rng), pair_cap=params["pair_cap"])
        worst = max(worst, af.max_frequency)
        chain_ok &= af.holds
    report.add(ReportRow.measure(N, "af_max_frequency", worst, "<=", Fraction(3, 4) ** N))
    report.add(ReportRow.check(N, "af_rank_average_chain", chain_ok))

    N = params["tail_N"]
    families = [CubicTensor.random(N, rng) for _ in range(params["families"])]
    for k in params["ks"]:
        worst, bound = Fraction(0), None
        for g in families:
            for C in (SymmetricBitMatrix.zeros(N), SymmetricBitMatrix.identity(N)):
                tail = rank_tail_check(g, C, k)
                worst, bound = max(worst, tail.frequency), tail.bound
        report.add(ReportRow.measure(N, f"rank_tail_k{k}", worst, "<=", bound))

    N, k = params["common_N"], params["common_k"]
    tight = common_zero_bound_check({}, N, k)
    report.add(ReportRow.measure(N, f"common_zeros_zero_perturbation_k{k}", tight.zeros, "==", tight.bound))
    worst = 0
    for _ in range(params["perturbed"]):
        perturbations = {I: MultiIndexPolynomial.random(2, N, k - 1, rng)
                         for I in combinations(range(N), k)}
        report_k = common_zero_bound_check(perturbations, N, k)
        worst = max(worst, report_k.zeros)
    report.add(ReportRow.measure(N, f"common_zeros_perturbed_k{k}", worst, "<=", tight.bound))

    N = params["minor_N"]
    bad = checked = 0
    for _ in range(params["minor_families"]):
        g = CubicTensor.random(N, rng)
        C = SymmetricBitMatrix(_random_symmetric(rng, N))
        for k in params["minor_ks"]:
            _, chain = minor_determinant_family(g, C, k)
            bad += not chain.holds
            checked += 1
    report.add(_mismatch_row(N, "principal_minor_chain", bad, checked))


def _random_symmetric(rng, N: int) -> np.ndarray:
    m = np.triu(rng.integers(0, 2, size=(N, N)))
    return (m | m.T).astype(np.uint8)


def distributions(report: ExperimentReport, params: Dict, threads: int = 1):
    """L1 distance of the power-product sums to uniform shrinks with N."""
    l1: Dict[int, float] = {}
    for N in params["N"]:
        stat = power_product_distribution(params["n"], params["p"], N, params["samples"],
                                          report.seed, shards=params["shards"], threads=threads)
        logger.info(f"📊 n={params['n']} p={params['p']} N={N}: L1 = {stat.l1:.5f}")
        if not l1:
            report.add(ReportRow.measure(N, "l1_distance", stat.l1, "<=", 2.0, err=stat.std_error))
            l1[N] = stat.l1
            continue
        smallest, previous = min(l1), max(l1)
        report.add(ReportRow.measure(N, "l1_distance_vs_smallest_N", stat.l1, "<", l1[smallest],
                                     err=stat.std_error))
        if previous != smallest:
            report.add(ReportRow.measure(N, f"l1_distance_vs_N{previous}", stat.l1, "<", l1[previous],
                                         err=stat.std_error))
        report.add(ReportRow.measure(N, "l1_distance", stat.l1, "<", params["l1_ceiling"],
                                     err=stat.std_error))
        l1[N] = stat.l1


def mixed_derivative(report: ExperimentReport, params: Dict, threads: int = 1):
    """<f,g>^{2^{k+1}} against the averaged squared derivative biases, k = 1, 2."""
    rng = np.random.default_rng(report.seed)
    failures = transform_bad = 0
    for _ in range(params["pairs"]):
        N = int(rng.integers(1, params["max_N"] + 1))
        f = FiniteFunction.dense(2, N, rng.integers(0, 2, size=1 << N))
        g = FiniteFunction.dense(2, N, rng.integers(0, 2, size=1 << N))
        out = derivative_inequality_check(f, g)
        failures += not out.holds
        transform_bad += sum(c.rhs != c.transform_rhs for c in (out.first, out.second))
    report.add(_mismatch_row(params["max_N"], "derivative_inequality", failures, params["pairs"]))
    report.add(_mismatch_row(params["max_N"], "transform_identity", transform_bad, 2 * params["pairs"]))

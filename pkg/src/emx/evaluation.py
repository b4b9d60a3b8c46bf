"""Compose compress-then-reconstruct learners and measure their failure
probability by seeded Monte Carlo.

A trial fails when the hypothesis captures at most 1 - epsilon of the
mass; the comparison is exact (rationals), uses <= on the boundary, and
the best capturable mass is exactly 1 because the support itself is a
hypothesis. Floats enter only in the confidence half-width.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .chains import DEFAULT_CAP, ResourceLimitError, compress_chain, decompress_chain
from .core import (
    FiniteSupportDistribution,
    Hypothesis,
    Sample,
    draw_sample,
    expectation,
)
from .schemes import MonotoneScheme
from .seeds import split_seed


@dataclass(frozen=True)
class EmxLearner:
    """Proper learner: compress the sample's distinct points to a d-point
    kernel, then union-expand it back to a finite hypothesis with
    M - d reconstruction rounds (M the number of distinct points)."""

    scheme: MonotoneScheme
    d: int
    cap: int = DEFAULT_CAP

    def __post_init__(self):
        if self.d != self.scheme.m:
            raise ValueError("kernel size d must equal the scheme arity m")


def apply_learner(learner: EmxLearner, sample: Sample) -> Hypothesis:
    """Hypothesis for one sample; always finite.

    A sample with fewer than d distinct points is returned as-is (proper
    and sound). Reconstruction-cap overruns propagate as
    ResourceLimitError.
    """
    distinct = sample.distinct()
    if len(distinct) < learner.d:
        return Hypothesis(distinct)
    trace = compress_chain(distinct, learner.scheme)
    rounds = len(distinct) - learner.d
    return Hypothesis(decompress_chain(trace.kernel, learner.scheme, rounds, learner.cap))


@dataclass(frozen=True)
class TrialRecord:
    index: int
    seed: int
    captured: Fraction | None
    failed: bool
    error: str | None


@dataclass(frozen=True)
class EvalReport:
    """Empirical failure rate over seeded trials, with a binomial
    normal-approximation half-width at the stated confidence."""

    m: int
    epsilon: Fraction
    trials: int
    completed: int
    failures: int
    errors: int
    failure_rate: Fraction
    ci_halfwidth: float
    confidence: float
    master_seed: int
    delta: Fraction | None = None
    records: tuple[TrialRecord, ...] | None = None


def normal_quantile(p: float) -> float:
    """Inverse standard-normal CDF by bisection on math.erf."""
    if not 0.0 < p < 1.0:
        raise ValueError("quantile probability must be in (0, 1)")
    lo, hi = -10.0, 10.0
    for _ in range(80):
        mid = (lo + hi) / 2
        if 0.5 * (1 + math.erf(mid / math.sqrt(2))) < p:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def evaluate(
    learner: EmxLearner,
    dist: FiniteSupportDistribution,
    m: int,
    epsilon: Fraction | int | str,
    trials: int,
    seed: int,
    confidence: float = 0.99,
    delta: Fraction | int | str | None = None,
    keep_records: bool = False,
    workers: int = 1,
) -> EvalReport:
    """Run independent sample-learn-measure rounds.

    Trial i draws with split_seed(seed, i), so identical arguments
    reproduce the report exactly and trials may run in parallel. Learner
    errors (reconstruction cap) are counted separately, never dropped;
    the failure rate is over completed trials. Two invariants are
    asserted on every trial: the hypothesis is finite by construction,
    and it captures at least the sample's own distinct mass, because the
    reconstruction contains the sample.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    epsilon = Fraction(epsilon)
    threshold = 1 - epsilon

    def run(index: int) -> TrialRecord:
        child = split_seed(seed, index)
        sample = draw_sample(dist, m, child)
        try:
            hypothesis = apply_learner(learner, sample)
        except ResourceLimitError as err:
            return TrialRecord(index, child, None, False, str(err))
        captured = expectation(dist, hypothesis)
        floor = sum((dist.mass(pid) for pid in sample.distinct()), Fraction(0))
        assert captured >= floor, "hypothesis lost sample mass"
        return TrialRecord(index, child, captured, captured <= threshold, None)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(run, range(trials)))
    else:
        records = [run(i) for i in range(trials)]

    errors = sum(1 for r in records if r.error is not None)
    completed = trials - errors
    failures = sum(1 for r in records if r.failed)
    rate = Fraction(failures, completed) if completed else Fraction(0)
    if completed:
        z = normal_quantile(0.5 + confidence / 2)
        halfwidth = z * math.sqrt(float(rate) * (1 - float(rate)) / completed)
    else:
        halfwidth = float("nan")
    return EvalReport(
        m=m,
        epsilon=epsilon,
        trials=trials,
        completed=completed,
        failures=failures,
        errors=errors,
        failure_rate=rate,
        ci_halfwidth=halfwidth,
        confidence=confidence,
        master_seed=seed,
        delta=Fraction(delta) if delta is not None else None,
        records=tuple(records) if keep_records else None,
    )

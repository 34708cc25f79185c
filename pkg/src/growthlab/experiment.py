"""End-to-end numerical experiments on the growth law.

run_sweep is the Monte Carlo verification of gamma(beta): a grid of
(C, beta) cells, each synthesizing a multi-day series under the chosen
truncation protocol and fitting the growth exponent, exactly the
simulation that traces the theoretical curve gamma = 2/beta (beta < 2),
1 (beta >= 2) when coupled truncation is on and departs from it when it
is off. compare_prediction and collapse_check run the same measurement on
a single series: estimate beta from the daily histograms, map it through
the law, and confront the prediction with the directly fitted exponent.

Cells are embarrassingly parallel and every cell derives its RNG streams
from (seed, cell index) alone, so results are identical for any thread
count; GROWTHLAB_THREADS (0 = auto) caps the pool when max_workers is not
given explicitly.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import seeding
from .errors import DomainError, GrowthlabError
from .estimators import (
    BetaFit,
    TlsFit,
    fit_gamma_tls,
    pool_and_fit_beta,
    rescale_histogram,
    score_against_beta,
)
from .ingest import DailySnapshot
from .sampler import (
    SamplerConfig,
    SyntheticSeries,
    canonical_protocol,
    log_uniform_schedule,
    series_totals,
)
from .theory import gamma_of_beta

__all__ = [
    "SweepCell",
    "GrowthPrediction",
    "default_c_values",
    "default_beta_grid",
    "run_sweep",
    "compare_prediction",
    "collapse_check",
]


@dataclass(frozen=True)
class SweepCell:
    """One (C, beta) cell of a sweep: fitted vs theoretical exponent."""

    c: float
    beta: float
    inverse_beta: float
    gamma_fit: float
    gamma_theory: float
    fit_quality: float
    status: str
    message: str = ""

    def __post_init__(self) -> None:
        if not math.isclose(self.inverse_beta, 1.0 / self.beta, rel_tol=1e-12):
            raise DomainError("inverse_beta must equal 1/beta")
        if self.status == "ok" and not math.isfinite(self.gamma_fit):
            raise DomainError("an ok cell must carry a finite gamma_fit")


@dataclass(frozen=True)
class GrowthPrediction:
    """Collapse-measured beta mapped through the law, vs the direct fit."""

    beta_fit: BetaFit
    gamma_theory: float
    gamma_fit: TlsFit
    consistent: bool

    def __post_init__(self) -> None:
        low, high = self.gamma_fit.ci95_slope
        if self.consistent != (low <= self.gamma_theory <= high):
            raise DomainError("consistent flag contradicts the interval")


def default_c_values() -> list[float]:
    """Lower cutoffs 1..10, the span used for the reference sweep."""
    return [float(c) for c in range(1, 11)]


def default_beta_grid(count: int = 40) -> list[float]:
    """beta grid uniform in 1/beta on [0.1, 1), i.e. beta in (1, 10].

    Uniform spacing in 1/beta matches the natural axis of the gamma curve,
    concentrating resolution where gamma varies.
    """
    if count < 1:
        raise DomainError("grid needs at least one beta")
    inverse = np.linspace(0.1, 1.0, num=count, endpoint=False)
    return [float(1.0 / v) for v in inverse]


def _resolve_workers(max_workers: int | None) -> int:
    if max_workers is None:
        raw = os.environ.get("GROWTHLAB_THREADS", "0")
        try:
            max_workers = int(raw)
        except ValueError:
            raise DomainError(f"GROWTHLAB_THREADS must be an integer, got {raw!r}")
    if max_workers < 0:
        raise DomainError("thread cap must be >= 0")
    if max_workers == 0:
        return min(32, os.cpu_count() or 1)
    return max_workers


def run_sweep(c_values: Sequence[float] | None = None,
              beta_values: Sequence[float] | None = None,
              days_per_cell: int = 100,
              population_range: tuple[float, float] = (100.0, 10_000.0),
              protocol: str = "coupled-truncation",
              seed: int = 0,
              bootstrap_reps: int = 0,
              integerize: bool = False,
              max_workers: int | None = None) -> list[SweepCell]:
    """Fit the growth exponent over a (C, beta) grid of synthetic series.

    Each cell draws its own log-uniform population schedule, synthesizes
    days under `protocol` and fits gamma by TLS. A cell that cannot be
    synthesized or fitted (e.g. cutoff collapsing below C at high beta and
    high C) is returned with status "failed" and the error message; it
    never aborts the sweep. Cell results depend only on (seed, cell index),
    so any max_workers value produces identical output, ordered by cell.
    """
    protocol = canonical_protocol(protocol)
    cs = list(default_c_values() if c_values is None else c_values)
    betas = list(default_beta_grid() if beta_values is None else beta_values)
    if not cs or not betas:
        raise DomainError("sweep grid must contain at least one C and one beta")
    if days_per_cell < 10:
        raise DomainError("need at least 10 days per cell")
    low, high = population_range
    if not (low >= 10 and high > low):
        raise DomainError("population range must satisfy 10 <= low < high")

    jobs = [
        (index, c, beta)
        for index, (c, beta) in enumerate(
            (c, beta) for c in cs for beta in betas
        )
    ]

    def one_cell(job: tuple[int, float, float]) -> SweepCell:
        index, c, beta = job
        gamma_theory = gamma_of_beta(beta)
        cell_seed = seeding.derive_seed(seed, seeding.STREAM_CELL, index)
        try:
            schedule = log_uniform_schedule(
                seeding.generator(cell_seed, seeding.STREAM_SCHEDULE),
                days_per_cell, (low, high),
            )
            config = SamplerConfig(
                beta=beta, lower_cutoff=c, integerize=integerize, seed=cell_seed
            )
            totals = series_totals(schedule, config, protocol)
            fit = fit_gamma_tls(totals, bootstrap_reps=bootstrap_reps, seed=cell_seed)
        except GrowthlabError as exc:
            return SweepCell(
                c=c, beta=beta, inverse_beta=1.0 / beta,
                gamma_fit=math.nan, gamma_theory=gamma_theory,
                fit_quality=math.nan, status="failed", message=str(exc),
            )
        return SweepCell(
            c=c, beta=beta, inverse_beta=1.0 / beta,
            gamma_fit=fit.slope, gamma_theory=gamma_theory,
            fit_quality=fit.adjusted_r2, status="ok",
        )

    workers = _resolve_workers(max_workers)
    if workers == 1:
        return [one_cell(job) for job in jobs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(one_cell, jobs))


def _snapshots(series) -> list[DailySnapshot]:
    if isinstance(series, SyntheticSeries):
        return list(series.days)
    return list(series)


def compare_prediction(series, bins_per_decade: int = 5,
                       bootstrap_reps: int = 1000, seed: int = 0,
                       per_day_average: bool = True) -> GrowthPrediction:
    """Does the heterogeneity-measured exponent predict the observed growth?

    Fits beta from the pooled rescaled histograms, maps it through
    gamma(beta), fits gamma directly from the (P, F) pairs, and flags
    consistency when the prediction falls inside the direct fit's 95% CI.
    """
    snapshots = _snapshots(series)
    if len(snapshots) < 3:
        raise DomainError("need at least 3 days to compare growth against theory")
    rescaled = [rescale_histogram(s.histogram, s.day) for s in snapshots]
    beta_fit = pool_and_fit_beta(
        rescaled, bins_per_decade=bins_per_decade,
        bootstrap_reps=bootstrap_reps, seed=seed,
        per_day_average=per_day_average,
    )
    gamma_theory = gamma_of_beta(beta_fit.beta)
    gamma_fit = fit_gamma_tls(
        [(s.population, s.total_activity) for s in snapshots],
        bootstrap_reps=bootstrap_reps, seed=seed,
    )
    low, high = gamma_fit.ci95_slope
    return GrowthPrediction(
        beta_fit=beta_fit,
        gamma_theory=gamma_theory,
        gamma_fit=gamma_fit,
        consistent=bool(low <= gamma_theory <= high),
    )


def collapse_check(series, beta_hypothesis: float | None = None,
                   bins_per_decade: int = 5, bootstrap_reps: int = 1000,
                   seed: int = 0,
                   per_day_average: bool = True) -> tuple[float, BetaFit]:
    """How well do the rescaled days collapse onto one master curve?

    Returns (quality, fit). Without a hypothesis, quality is the adjusted
    R^2 of the pooled fit itself. With one, quality scores the pooled cloud
    against the FIXED slope -beta_hypothesis (intercept through the
    centroid) while the freely fitted BetaFit is still returned alongside.
    """
    snapshots = _snapshots(series)
    if len(snapshots) < 2:
        raise DomainError("need at least 2 days for a collapse check")
    rescaled = [rescale_histogram(s.histogram, s.day) for s in snapshots]
    fit = pool_and_fit_beta(
        rescaled, bins_per_decade=bins_per_decade,
        bootstrap_reps=bootstrap_reps, seed=seed,
        per_day_average=per_day_average,
    )
    if beta_hypothesis is None:
        return fit.adjusted_r2, fit
    score = score_against_beta(
        rescaled, beta_hypothesis, bins_per_decade=bins_per_decade,
        per_day_average=per_day_average,
    )
    return score, fit

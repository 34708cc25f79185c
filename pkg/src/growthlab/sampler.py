"""Synthetic generators for heavy-tailed daily activity.

Per-user daily activity is drawn from a power-law density
p(x) ~ x^(-beta) on [C, infinity) or, truncated, on [C, U] via the
inverse-CDF transform. A day is P iid draws; a series is a schedule of
days, each with its own derived RNG stream so that day k's data never
depends on how many days preceded it or on which thread produced it.

The essential modelling choice lives in synthesize_series' protocol:

* "coupled-truncation" (default): each day's upper cutoff is recomputed
  from that day's population via theory.cutoff_for_population. This is the
  mechanism that makes iid sampling respect the bounded-distribution
  growth law F ~ P^(2/beta).
* "fixed-truncation": one configured cutoff for every day.
* "unbounded": no cutoff; for beta < 2 the resulting growth exponent is
  the iid-sum value 1/(beta-1), NOT 2/beta, which is exactly the
  divergence the protocol switch exists to expose.

Continuous activities are the default (estimators see no binning
artifacts); integerize=True floors draws to integers (minimum 1) for
event-log round trips and histogram work.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from . import seeding
from .errors import DomainError
from .ingest import DailySnapshot
from .theory import cutoff_for_population

__all__ = [
    "SamplerConfig",
    "SyntheticSeries",
    "PROTOCOLS",
    "sample_activity",
    "synthesize_day",
    "day_totals",
    "synthesize_series",
    "series_totals",
    "events_from_series",
    "log_uniform_schedule",
    "canonical_protocol",
]

PROTOCOLS = ("coupled-truncation", "fixed-truncation", "unbounded")

_PROTOCOL_ALIASES = {
    "coupled": "coupled-truncation",
    "fixed": "fixed-truncation",
    "coupled-truncation": "coupled-truncation",
    "fixed-truncation": "fixed-truncation",
    "unbounded": "unbounded",
}


@dataclass(frozen=True)
class SamplerConfig:
    """Parameters of the activity generator.

    beta > 1 is the power-law exponent, lower_cutoff (C) >= 1 the smallest
    possible activity, upper_cutoff (U) an optional truncation point > C,
    seed the 64-bit base seed all day streams derive from.
    """

    beta: float
    lower_cutoff: float = 1.0
    upper_cutoff: float | None = None
    integerize: bool = False
    seed: int = 0

    def __post_init__(self) -> None:
        if not self.beta > 1:
            raise DomainError(f"beta must exceed 1, got {self.beta}")
        if not self.lower_cutoff >= 1:
            raise DomainError(f"lower cutoff must be >= 1, got {self.lower_cutoff}")
        if self.upper_cutoff is not None and not self.upper_cutoff > self.lower_cutoff:
            raise DomainError(
                f"upper cutoff {self.upper_cutoff} must exceed lower cutoff "
                f"{self.lower_cutoff}"
            )
        if not 0 <= int(self.seed) < 2**64:
            raise DomainError(f"seed must fit in 64 bits, got {self.seed}")


@dataclass(frozen=True)
class SyntheticSeries:
    """A generated multi-day series plus everything needed to regenerate it."""

    days: tuple[DailySnapshot, ...]
    generator_config: SamplerConfig
    population_schedule: tuple[int, ...]
    protocol: str = "coupled-truncation"

    def __post_init__(self) -> None:
        if len(self.days) != len(self.population_schedule):
            raise DomainError("one snapshot per scheduled day required")


def sample_activity(config: SamplerConfig, u):
    """Map uniform u in [0, 1) to an activity via the inverse CDF.

    Unbounded:  x = C (1-u)^(-1/(beta-1))
    Truncated:  x = C (1 - u (1 - (U/C)^(1-beta)))^(-1/(beta-1))

    Strictly increasing in u, with x(0) = C and x(u -> 1) -> U (or infinity
    when unbounded). Accepts scalars or arrays and returns the same shape.
    """
    u_arr = np.asarray(u, dtype=float)
    if np.any((u_arr < 0.0) | (u_arr >= 1.0)):
        raise DomainError("u must lie in [0, 1)")
    c = config.lower_cutoff
    exponent = -1.0 / (config.beta - 1.0)
    if config.upper_cutoff is None:
        x = c * (1.0 - u_arr) ** exponent
    else:
        ratio = (config.upper_cutoff / c) ** (1.0 - config.beta)
        x = c * (1.0 - u_arr * (1.0 - ratio)) ** exponent
    if np.isscalar(u) or np.ndim(u) == 0:
        return float(x)
    return x


def _draw_day(day_index: int, population: int, config: SamplerConfig,
              rng: np.random.Generator | None) -> np.ndarray:
    """The shared draw pipeline: one activity array for one day.

    Both the snapshot path and the totals path run through here, so they
    consume the identical derived stream and agree to the last bit.
    """
    if not isinstance(population, (int, np.integer)) or isinstance(population, bool):
        raise DomainError(f"population must be an integer, got {population!r}")
    if population < 1:
        raise DomainError(f"population must be >= 1, got {population}")
    if rng is None:
        rng = seeding.generator(config.seed, seeding.STREAM_DAY, day_index)
    u = rng.random(int(population))
    x = sample_activity(config, u)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if config.integerize:
        x = np.maximum(1.0, np.floor(x))
    return x


def synthesize_day(day_index: int, population: int, config: SamplerConfig,
                   rng: np.random.Generator | None = None) -> DailySnapshot:
    """Generate one day's snapshot: P draws, summed and histogrammed.

    The RNG stream is derived from (config.seed, day_index) unless an
    explicit generator is passed, so equal (day_index, population, config)
    always reproduce the same snapshot regardless of call order.
    """
    x = _draw_day(day_index, population, config, rng)
    if config.integerize:
        levels, counts = np.unique(x.astype(np.int64), return_counts=True)
        histogram = dict(zip(levels.tolist(), counts.tolist()))
        total = float(int(levels @ counts))
        f_max = float(levels[-1])
    else:
        levels, counts = np.unique(x, return_counts=True)
        histogram = dict(zip(levels.tolist(), counts.tolist()))
        total = float(x.sum())
        f_max = float(levels[-1])
    return DailySnapshot(
        day=day_index,
        population=int(population),
        total_activity=total,
        histogram=histogram,
        f_max=f_max,
    )


def day_totals(day_index: int, population: int, config: SamplerConfig,
               rng: np.random.Generator | None = None) -> tuple[int, float]:
    """(P, F) for one day without materializing the histogram.

    Consumes the same stream as synthesize_day, so the pair equals the
    snapshot's (population, total_activity) exactly. This is the cheap path
    for exponent sweeps, which never read histograms.
    """
    x = _draw_day(day_index, population, config, rng)
    if config.integerize:
        return int(population), float(int(x.astype(np.int64).sum()))
    return int(population), float(x.sum())


def log_uniform_schedule(rng: np.random.Generator, days: int,
                         population_range: tuple[float, float]) -> list[int]:
    """Daily populations drawn log-uniformly over population_range.

    Log-uniform spacing gives the fitted growth exponent even leverage per
    decade instead of letting the largest days dominate the regression.
    """
    if days < 1:
        raise DomainError(f"need at least one day, got {days}")
    low, high = population_range
    if not (1 <= low < high):
        raise DomainError(
            f"population range must satisfy 1 <= low < high, got {population_range}"
        )
    exponents = rng.uniform(math.log10(low), math.log10(high), size=days)
    return [max(1, int(round(10.0**e))) for e in exponents]


def canonical_protocol(name: str) -> str:
    try:
        return _PROTOCOL_ALIASES[name]
    except KeyError:
        raise DomainError(
            f"unknown protocol {name!r}; expected one of {', '.join(PROTOCOLS)}"
        ) from None


def _day_config(config: SamplerConfig, protocol: str, day_index: int,
                population: int) -> SamplerConfig:
    if protocol == "coupled-truncation":
        try:
            cutoff = cutoff_for_population(float(population), config.beta)
        except DomainError as exc:
            raise DomainError(f"day {day_index}: {exc}") from None
        if cutoff <= config.lower_cutoff:
            raise DomainError(
                f"day {day_index}: population {population} gives cutoff "
                f"{cutoff:.6g} at or below the lower cutoff {config.lower_cutoff}"
            )
        return replace(config, upper_cutoff=cutoff)
    if protocol == "fixed-truncation":
        if config.upper_cutoff is None:
            raise DomainError("fixed-truncation requires config.upper_cutoff")
        return config
    # Unbounded overrides any configured cutoff.
    if config.upper_cutoff is None:
        return config
    return replace(config, upper_cutoff=None)


def synthesize_series(schedule: Sequence[int], config: SamplerConfig,
                      protocol: str = "coupled-truncation") -> SyntheticSeries:
    """Generate a full series: one snapshot per scheduled population.

    Day k uses the stream derived from (config.seed, k), so the series is a
    pure function of (schedule, config, protocol) and individual days can
    be regenerated in isolation with synthesize_day.
    """
    protocol = canonical_protocol(protocol)
    if len(schedule) == 0:
        raise DomainError("schedule must contain at least one day")
    snapshots = []
    for day_index, population in enumerate(schedule):
        day_cfg = _day_config(config, protocol, day_index, population)
        snapshots.append(synthesize_day(day_index, int(population), day_cfg))
    return SyntheticSeries(
        days=tuple(snapshots),
        generator_config=config,
        population_schedule=tuple(int(p) for p in schedule),
        protocol=protocol,
    )


def series_totals(schedule: Sequence[int], config: SamplerConfig,
                  protocol: str = "coupled-truncation") -> list[tuple[int, float]]:
    """Per-day (P, F) pairs for a whole schedule via the lean totals path."""
    protocol = canonical_protocol(protocol)
    if len(schedule) == 0:
        raise DomainError("schedule must contain at least one day")
    totals = []
    for day_index, population in enumerate(schedule):
        day_cfg = _day_config(config, protocol, day_index, population)
        totals.append(day_totals(day_index, int(population), day_cfg))
    return totals


def events_from_series(series: SyntheticSeries):
    """Flatten a generated (integerized) series into ingest events.

    User ids are u000000, u000001, ... per day; ids repeat across days by
    design (each day is a fresh population draw). Raises unless the series
    was generated with integerize=True, because event counts are integers.
    """
    from .ingest import ActivityEvent

    if not series.generator_config.integerize:
        raise DomainError("events require an integerized series")
    events = []
    for snapshot in series.days:
        index = 0
        for level in sorted(snapshot.histogram):
            for _ in range(snapshot.histogram[level]):
                events.append(
                    ActivityEvent(
                        user_id=f"u{index:06d}",
                        day=snapshot.day,
                        count=int(level),
                    )
                )
                index += 1
    return events

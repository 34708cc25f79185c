"""Reading, aggregating and writing per-user activity event logs.

The on-disk interchange format is deliberately tiny. CSV files carry a
header ``user_id,day,count``; JSONL files carry one object per line with
the same three keys. ``day`` is either an ISO-8601 calendar date or an
integer day index, ``count`` a positive integer. Parsing is strict and
error messages name the offending line, because silent coercion of a
malformed activity log poisons every estimate downstream.
"""

from __future__ import annotations

import csv
import datetime as dt
import io
import json
import math
from dataclasses import dataclass, field
from typing import IO, Iterable, Mapping, Union

from .errors import DataError, DomainError

__all__ = [
    "ActivityEvent",
    "DailySnapshot",
    "parse_events",
    "load_events",
    "aggregate",
    "export_events_csv",
    "write_events_csv",
]

Day = Union[int, dt.date]

_CSV_HEADER = ["user_id", "day", "count"]


@dataclass(frozen=True)
class ActivityEvent:
    """One user's tag count on one day."""

    user_id: str
    day: Day
    count: int

    def __post_init__(self) -> None:
        if not self.user_id:
            raise DataError("user_id must be non-empty")
        if isinstance(self.count, bool) or not isinstance(self.count, int):
            raise DataError(f"count must be an integer, got {self.count!r}")
        if self.count < 1:
            raise DataError(f"count must be >= 1, got {self.count}")
        if isinstance(self.day, bool) or not isinstance(self.day, (int, dt.date)):
            raise DataError(f"day must be a date or integer index, got {self.day!r}")


@dataclass(frozen=True)
class DailySnapshot:
    """One day's aggregate state: population, total activity and histogram.

    histogram maps an activity level f (tags per user that day) to n(f),
    the number of users that produced exactly f tags. Consistency is
    enforced on construction: sum n(f) == population,
    sum f*n(f) == total_activity, f_max == max level.
    """

    day: Day
    population: int
    total_activity: float
    histogram: Mapping[float, int] = field(repr=False)
    f_max: float

    def __post_init__(self) -> None:
        if not self.histogram:
            raise DomainError("histogram must be non-empty")
        users = 0
        total = 0.0
        top = -math.inf
        for level, count in self.histogram.items():
            if not level > 0:
                raise DomainError(f"activity level must be positive, got {level}")
            if count < 1:
                raise DomainError(f"user count must be >= 1, got {count}")
            users += count
            total += level * count
            top = max(top, level)
        if users != self.population:
            raise DomainError(
                f"population {self.population} != histogram user total {users}"
            )
        if not math.isclose(total, self.total_activity, rel_tol=1e-9, abs_tol=1e-6):
            raise DomainError(
                f"total_activity {self.total_activity} != histogram sum {total}"
            )
        if not math.isclose(top, self.f_max, rel_tol=1e-12):
            raise DomainError(f"f_max {self.f_max} != max activity level {top}")


def _parse_day(text: str) -> Day:
    """ISO date if it looks like one, else integer index."""
    text = text.strip()
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return dt.date.fromisoformat(text)
    except ValueError:
        raise DataError(f"day {text!r} is neither an ISO date nor an integer") from None


def _parse_count(raw: object) -> int:
    if isinstance(raw, bool):
        raise DataError(f"count must be an integer, got {raw!r}")
    if isinstance(raw, int):
        count = raw
    elif isinstance(raw, str):
        try:
            count = int(raw.strip())
        except ValueError:
            raise DataError(f"count {raw!r} is not an integer") from None
    else:
        raise DataError(f"count must be an integer, got {raw!r}")
    if count < 1:
        raise DataError(f"count must be >= 1, got {count}")
    return count


def _decode(stream: IO) -> io.TextIOBase:
    data = stream.read()
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise DataError(f"input is not valid UTF-8: {exc}") from None
    return io.StringIO(data)


def _parse_csv(text: io.TextIOBase) -> list[ActivityEvent]:
    reader = csv.reader(text)
    try:
        header = next(reader)
    except StopIteration:
        return []
    if [column.strip() for column in header] != _CSV_HEADER:
        raise DataError(
            f"line 1: expected header {','.join(_CSV_HEADER)!r}, got {','.join(header)!r}"
        )
    events: list[ActivityEvent] = []
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != 3:
            raise DataError(f"line {lineno}: expected 3 fields, got {len(row)}")
        user_id, day_text, count_text = (cell.strip() for cell in row)
        try:
            events.append(
                ActivityEvent(
                    user_id=user_id,
                    day=_parse_day(day_text),
                    count=_parse_count(count_text),
                )
            )
        except DataError as exc:
            raise DataError(f"line {lineno}: {exc}") from None
    return events


def _parse_jsonl(text: io.TextIOBase) -> list[ActivityEvent]:
    events: list[ActivityEvent] = []
    for lineno, line in enumerate(text, start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise DataError(f"line {lineno}: invalid JSON ({exc.msg})") from None
        if not isinstance(record, dict):
            raise DataError(f"line {lineno}: expected an object")
        missing = [key for key in _CSV_HEADER if key not in record]
        if missing:
            raise DataError(f"line {lineno}: missing key(s) {', '.join(missing)}")
        day_raw = record["day"]
        try:
            if isinstance(day_raw, bool):
                raise DataError(f"day {day_raw!r} is neither an ISO date nor an integer")
            day = day_raw if isinstance(day_raw, int) else _parse_day(str(day_raw))
            events.append(
                ActivityEvent(
                    user_id=str(record["user_id"]),
                    day=day,
                    count=_parse_count(record["count"]),
                )
            )
        except DataError as exc:
            raise DataError(f"line {lineno}: {exc}") from None
    return events


def parse_events(stream: IO, format: str = "csv") -> list[ActivityEvent]:
    """Parse an event log from a byte or text stream.

    format is "csv" or "jsonl". Events are returned in input order; empty
    input yields an empty list. Malformed rows raise DataError naming the
    line number.
    """
    text = _decode(stream)
    if format == "csv":
        return _parse_csv(text)
    if format == "jsonl":
        return _parse_jsonl(text)
    raise DataError(f"unknown format {format!r} (expected 'csv' or 'jsonl')")


def load_events(path: str, format: str | None = None) -> list[ActivityEvent]:
    """parse_events on a file path, sniffing the format from the suffix."""
    if format is None:
        format = "jsonl" if str(path).endswith((".jsonl", ".ndjson")) else "csv"
    with open(path, "rb") as stream:
        return parse_events(stream, format=format)


def _day_sort_key(day: Day) -> tuple:
    # Integer indices and calendar dates are mutually unordered; rank the
    # type first so mixed logs still sort deterministically.
    return (isinstance(day, dt.date), day)


def _format_day(day: Day) -> str:
    return day.isoformat() if isinstance(day, dt.date) else str(day)


def aggregate(events: Iterable[ActivityEvent]) -> list[DailySnapshot]:
    """Collapse an event log into per-day snapshots.

    Multiple events for the same (user, day) pair sum their counts. Days
    come back sorted ascending; days with no events simply do not appear.
    The result is invariant under permutation of the input.
    """
    per_day: dict[Day, dict[str, int]] = {}
    for event in events:
        per_day.setdefault(event.day, {})
        user_totals = per_day[event.day]
        user_totals[event.user_id] = user_totals.get(event.user_id, 0) + event.count
    snapshots = []
    for day in sorted(per_day, key=_day_sort_key):
        user_totals = per_day[day]
        histogram: dict[float, int] = {}
        for total in user_totals.values():
            histogram[total] = histogram.get(total, 0) + 1
        snapshots.append(
            DailySnapshot(
                day=day,
                population=len(user_totals),
                total_activity=float(sum(user_totals.values())),
                histogram=histogram,
                f_max=float(max(histogram)),
            )
        )
    return snapshots


def export_events_csv(events: Iterable[ActivityEvent]) -> str:
    """Serialize events as the canonical CSV interchange text.

    Rows are ordered by (day, user_id lexicographic), so the output is a
    pure function of the event multiset: equal inputs give byte-identical
    text, and parse_events(export_events_csv(events)) returns the same
    events up to ordering.
    """
    ordered = sorted(events, key=lambda e: (_day_sort_key(e.day), e.user_id))
    sink = io.StringIO()
    writer = csv.writer(sink, lineterminator="\n")
    writer.writerow(_CSV_HEADER)
    for event in ordered:
        if isinstance(event.count, bool) or not isinstance(event.count, int):
            raise DataError(f"cannot export non-integer count {event.count!r}")
        writer.writerow([event.user_id, _format_day(event.day), event.count])
    return sink.getvalue()


def write_events_csv(events: Iterable[ActivityEvent], path: str) -> None:
    """export_events_csv straight to a file (UTF-8, \\n line endings)."""
    with open(path, "w", encoding="utf-8", newline="\n") as sink:
        sink.write(export_events_csv(events))

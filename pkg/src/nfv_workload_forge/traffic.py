"""Per-enterprise traffic timelines and the initial per-policy load split.

Rates are plain floats in units of 10 MBps.  A timeline holds one sample
every 120 minutes starting at minute 0; between samples the rate changes
linearly.
"""

from __future__ import annotations

import bisect
import csv
import math
from dataclasses import dataclass
from typing import IO, Iterable, Sequence

from .errors import TimelineParseError, TrafficError

SAMPLE_SPACING = 120
DAY_MINUTES = 1440
SAMPLES_PER_DAY = DAY_MINUTES // SAMPLE_SPACING + 1


@dataclass(frozen=True)
class TrafficTimeline:
    enterprise_id: int
    samples: tuple[tuple[int, float], ...]

    def __post_init__(self):
        samples = tuple((int(m), float(r)) for m, r in self.samples)
        object.__setattr__(self, "samples", samples)
        if not samples:
            raise TrafficError("timeline needs at least one sample")
        for i, (minute, rate) in enumerate(samples):
            if minute != i * SAMPLE_SPACING or minute > DAY_MINUTES:
                raise TrafficError(
                    f"sample {i} of enterprise {self.enterprise_id} is at minute {minute}, "
                    f"expected {i * SAMPLE_SPACING}"
                )
            if not math.isfinite(rate) or rate < 0:
                raise TrafficError(f"rate at minute {minute} must be finite and non-negative")

    @property
    def minutes(self) -> list[int]:
        return [m for m, _ in self.samples]

    @property
    def rates(self) -> list[float]:
        return [r for _, r in self.samples]

    @property
    def last_minute(self) -> int:
        return self.samples[-1][0]

    @property
    def initial_rate(self) -> float:
        return self.samples[0][1]


@dataclass(frozen=True)
class FlowAssignment:
    enterprise_id: int
    per_policy_rate: dict[int, float]


def load_timeline(source: IO[str] | Iterable[str]) -> list[TrafficTimeline]:
    """Parse ``enterprise_id,minute,rate`` rows into validated full-day timelines.

    Each enterprise must have exactly one sample at every minute 0, 120, ...,
    1440.  Row numbers in errors count the header as row 1.
    """
    reader = csv.reader(source)
    header = next(reader, None)
    if header is None:
        return []
    if [h.strip() for h in header] != ["enterprise_id", "minute", "rate"]:
        raise TimelineParseError("header must be 'enterprise_id,minute,rate'", 1)

    per_enterprise: dict[int, dict[int, float]] = {}
    for row_no, row in enumerate(reader, start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != 3:
            raise TimelineParseError(f"expected 3 columns, got {len(row)}", row_no)
        try:
            eid = int(row[0])
            minute = int(row[1])
            rate = float(row[2])
        except ValueError as exc:
            raise TimelineParseError(f"malformed value ({exc})", row_no) from None
        if eid < 0:
            raise TimelineParseError("negative enterprise_id", row_no)
        if minute < 0 or minute > DAY_MINUTES or minute % SAMPLE_SPACING:
            raise TimelineParseError("off-grid sample", row_no)
        if not math.isfinite(rate) or rate < 0:
            raise TimelineParseError("negative rate", row_no)
        samples = per_enterprise.setdefault(eid, {})
        if minute in samples:
            raise TimelineParseError(f"duplicate minute {minute} for enterprise {eid}", row_no)
        samples[minute] = rate

    timelines = []
    for eid in sorted(per_enterprise):
        samples = per_enterprise[eid]
        missing = [m for m in range(0, DAY_MINUTES + 1, SAMPLE_SPACING) if m not in samples]
        if missing:
            raise TimelineParseError(f"missing sample for enterprise {eid} at minute {missing[0]}")
        timelines.append(TrafficTimeline(eid, tuple(sorted(samples.items()))))
    return timelines


def dump_timeline(timelines: Iterable[TrafficTimeline], out: IO[str]) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["enterprise_id", "minute", "rate"])
    for tl in timelines:
        for minute, rate in tl.samples:
            writer.writerow([tl.enterprise_id, minute, repr(rate)])


def equal_split(total_rate: float, num_policies: int) -> float:
    if num_policies < 1:
        raise TrafficError("no policies to carry traffic")
    if total_rate < 0:
        raise TrafficError("total rate must be non-negative")
    return total_rate / num_policies


def initial_distribution(timeline: TrafficTimeline, policies: Sequence) -> FlowAssignment:
    if not policies:
        raise TrafficError(f"no policies to carry traffic for enterprise {timeline.enterprise_id}")
    for p in policies:
        if p.enterprise_id != timeline.enterprise_id:
            raise TrafficError(
                f"policy {p.policy_id} belongs to enterprise {p.enterprise_id}, "
                f"timeline is for enterprise {timeline.enterprise_id}"
            )
    share = equal_split(timeline.initial_rate, len(policies))
    return FlowAssignment(timeline.enterprise_id, {p.policy_id: share for p in policies})


def interpolate(timeline: TrafficTimeline, t: float) -> float:
    """Piecewise-linear rate at minute ``t``; exact at sample minutes."""
    minutes = timeline.minutes
    if not minutes[0] <= t <= minutes[-1]:
        raise TrafficError(f"time out of range: {t} not in [{minutes[0]}, {minutes[-1]}]")
    i = bisect.bisect_right(minutes, t) - 1
    m0, r0 = timeline.samples[i]
    if t == m0 or i == len(minutes) - 1:
        return r0
    m1, r1 = timeline.samples[i + 1]
    f = (t - m0) / (m1 - m0)
    value = (1.0 - f) * r0 + f * r1
    return min(max(value, min(r0, r1)), max(r0, r1))


def sample_timelines(enterprise_ids: Iterable[int]) -> list[TrafficTimeline]:
    """Synthetic demo timelines: quiet overnight, climbing to an evening peak.

    These values are made up for demonstrations; they are not measured data.
    """
    base = (4.0, 2.5, 2.0, 3.0, 6.0, 9.0, 11.0, 12.0, 13.5, 16.0, 20.0, 14.0, 6.0)
    out = []
    for eid in enterprise_ids:
        scale = 1.0 + 0.25 * (eid % 5)
        out.append(
            TrafficTimeline(eid, tuple((i * SAMPLE_SPACING, round(r * scale, 6)) for i, r in enumerate(base)))
        )
    return out

"""Scale-out / scale-in and path-change event schedules.

For every enterprise and every window the signed traffic change ``C`` is
turned into ``I = sign(C) * floor(|C| / L)`` single-instance events spread
evenly through the window.  A window with ``C != 0`` but ``I == 0`` yields
PATH_CHANGE markers at the window start instead.

Random choices are made per enterprise on the sub-stream
``derive_seed(derive_seed(seed, SCALING_STREAM), enterprise_id)``.  For
each window with ``C != 0`` the stream is consumed in a fixed order:

1. the affected policies (uniform sample without replacement of the
   enterprise's policies, sorted by policy_id, in selection order);
2. only when ``|I| >= 1``: one bottleneck index per selected policy, in
   selection order.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import ScalingError
from .rng import SplitMix64
from .traffic import SAMPLE_SPACING, TrafficTimeline, interpolate
from .workload import Policy

SCALING_STREAM = 0x5CA1E


class Action(str, enum.Enum):
    ADD = "ADD"
    REMOVE = "REMOVE"
    PATH_CHANGE = "PATH_CHANGE"


@dataclass(frozen=True)
class ScalingConfig:
    threshold_L: float
    policies_per_change: int = 5
    window_minutes: int = SAMPLE_SPACING

    def __post_init__(self):
        if not (isinstance(self.threshold_L, (int, float)) and self.threshold_L > 0 and math.isfinite(self.threshold_L)):
            raise ScalingError(f"threshold_L must be a positive rate, got {self.threshold_L}")
        if self.policies_per_change < 1:
            raise ScalingError("policies_per_change must be >= 1")
        if self.window_minutes < 1 or SAMPLE_SPACING % self.window_minutes:
            raise ScalingError(f"window_minutes must divide {SAMPLE_SPACING}, got {self.window_minutes}")


@dataclass(frozen=True, order=True)
class ScalingEvent:
    time_minute: int
    enterprise_id: int
    policy_id: int
    nf_index: int
    action: Action

    def sort_key(self):
        return (self.time_minute, self.enterprise_id, self.policy_id, self.nf_index)


@dataclass(frozen=True)
class WindowDelta:
    enterprise_id: int
    window_start: int
    C: float


def window_deltas(timeline: TrafficTimeline, config: ScalingConfig) -> list[WindowDelta]:
    w = config.window_minutes
    deltas = []
    for start in range(0, timeline.last_minute, w):
        end = start + w
        c = interpolate(timeline, end) - interpolate(timeline, start)
        deltas.append(WindowDelta(timeline.enterprise_id, start, c))
    return deltas


def instances_required(C: float, L: float) -> int:
    """Signed instance count ``sign(C) * floor(|C| / L)``."""
    if not L > 0:
        raise ScalingError(f"threshold L must be positive, got {L}")
    n = math.floor(abs(C) / L)
    return n if C >= 0 else -n


def event_times(window_start: int, count: int, window: int = SAMPLE_SPACING) -> list[int]:
    """Minutes ``round(T + k * window / (count + 1))`` for k = 1..count, ties up.

    Rounded in exact integer arithmetic.  More than ``window - 1`` events
    cannot get distinct whole minutes strictly inside the window.
    """
    if count < 1:
        raise ScalingError("event count must be >= 1")
    if count > window - 1:
        raise ScalingError(
            f"{count} instance changes do not fit one at a time into a {window}-minute window"
        )
    d = count + 1
    return [(2 * (window_start * d + k * window) + d) // (2 * d) for k in range(1, count + 1)]


def select_affected_policies(
    policies: Sequence[Policy], config: ScalingConfig, rng: SplitMix64
) -> list[int]:
    if not policies:
        raise ScalingError("enterprise has no policies")
    ids = sorted(p.policy_id for p in policies)
    return rng.sample(ids, min(config.policies_per_change, len(ids)))


def nf_index_from_uniform(u: float, length: int) -> int:
    return min(int(u * length), length - 1)


def select_bottleneck_nf(policy: Policy, rng: SplitMix64) -> int:
    if not policy.chain:
        raise ScalingError(f"policy {policy.policy_id} has an empty chain")
    return nf_index_from_uniform(rng.random(), len(policy.chain))


def enterprise_schedule(
    timeline: TrafficTimeline,
    policies: Sequence[Policy],
    config: ScalingConfig,
    rng: SplitMix64,
) -> list[ScalingEvent]:
    by_id = {p.policy_id: p for p in policies}
    eid = timeline.enterprise_id
    events = []
    for delta in window_deltas(timeline, config):
        if delta.C == 0:
            continue
        selected = select_affected_policies(policies, config, rng)
        count = instances_required(delta.C, config.threshold_L)
        if count == 0:
            events.extend(
                ScalingEvent(delta.window_start, eid, pid, 0, Action.PATH_CHANGE) for pid in selected
            )
            continue
        pairs = [(pid, select_bottleneck_nf(by_id[pid], rng)) for pid in selected]
        action = Action.ADD if count > 0 else Action.REMOVE
        times = event_times(delta.window_start, abs(count), config.window_minutes)
        for j, t in enumerate(times):
            pid, nf = pairs[j % len(pairs)]
            events.append(ScalingEvent(t, eid, pid, nf, action))
    return events


def build_schedule(
    timelines: Iterable[TrafficTimeline],
    workload: Mapping[int, Sequence[Policy]],
    config: ScalingConfig,
    seed: int,
) -> list[ScalingEvent]:
    """Merged, canonically sorted schedule over all enterprises.

    ``workload`` maps enterprise_id to that enterprise's policies.
    """
    stream = SplitMix64(seed).spawn(SCALING_STREAM)
    events = []
    for tl in timelines:
        if tl.enterprise_id not in workload:
            raise ScalingError(f"timeline references unknown enterprise {tl.enterprise_id}")
        events.extend(enterprise_schedule(tl, workload[tl.enterprise_id], config, stream.spawn(tl.enterprise_id)))
    events.sort(key=ScalingEvent.sort_key)
    return events

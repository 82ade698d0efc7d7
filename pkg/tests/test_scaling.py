import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_force_instances, brute_force_schedule, round_half_up

from nfv_workload_forge.errors import ScalingError
from nfv_workload_forge.rng import SplitMix64
from nfv_workload_forge.scaling import (
    Action,
    ScalingConfig,
    ScalingEvent,
    build_schedule,
    event_times,
    instances_required,
    nf_index_from_uniform,
    select_affected_policies,
    select_bottleneck_nf,
    window_deltas,
)
from nfv_workload_forge.traffic import TrafficTimeline
from nfv_workload_forge.workload import NfInstance, Policy, generate_workload


def timeline(eid, rates):
    return TrafficTimeline(eid, tuple((120 * i, r) for i, r in enumerate(rates)))


def make_policies(eid, lengths):
    out, nid = [], 0
    for pid, n in enumerate(lengths):
        out.append(Policy(eid, pid, tuple(NfInstance(f"t{j}", nid + j) for j in range(n))))
        nid += n
    return out


def as_tuples(events):
    return [(e.time_minute, e.enterprise_id, e.policy_id, e.nf_index, e.action.value) for e in events]


CFG = ScalingConfig(threshold_L=100.0)


def test_config_validation():
    with pytest.raises(ScalingError):
        ScalingConfig(threshold_L=0)
    with pytest.raises(ScalingError):
        ScalingConfig(threshold_L=-1)
    with pytest.raises(ScalingError):
        ScalingConfig(threshold_L=1, window_minutes=50)
    with pytest.raises(ScalingError):
        ScalingConfig(threshold_L=1, policies_per_change=0)


def test_window_deltas():
    deltas = window_deltas(timeline(0, [10, 30, 30]), CFG)
    assert [(d.window_start, d.C) for d in deltas] == [(0, 20.0), (120, 0.0)]
    assert all(d.C == 0 for d in window_deltas(timeline(0, [5] * 13), CFG))
    assert window_deltas(timeline(0, [30, 10]), CFG)[0].C == -20.0


def test_window_deltas_sub_window():
    cfg = ScalingConfig(threshold_L=1, window_minutes=60)
    deltas = window_deltas(timeline(0, [10, 30]), cfg)
    assert [(d.window_start, d.C) for d in deltas] == [(0, 10.0), (60, 10.0)]


@pytest.mark.parametrize("C, L, expected", [(200, 100, 2), (-300, 100, -3), (150, 100, 1), (0, 5, 0), (-99, 100, 0)])
def test_instances_required(C, L, expected):
    assert instances_required(C, L) == expected
    assert brute_force_instances(C, L) == expected


def test_instances_required_bad_threshold():
    with pytest.raises(ScalingError):
        instances_required(5, 0)


@settings(max_examples=300)
@given(st.integers(-10_000, 10_000), st.integers(1, 500))
def test_instances_required_matches_brute_force(c, l):
    C, L = c / 8, l / 4
    I = instances_required(C, L)
    assert I == brute_force_instances(C, L)
    assert abs(I) * L <= abs(C) < (abs(I) + 1) * L


@pytest.mark.parametrize(
    "T, I, expected",
    [(0, 2, [40, 80]), (120, 3, [150, 180, 210]), (0, 1, [60]), (0, 7, [15, 30, 45, 60, 75, 90, 105])],
)
def test_event_times(T, I, expected):
    assert event_times(T, I, 120) == expected


@given(st.integers(0, 11), st.integers(1, 119))
def test_event_times_strictly_inside_and_rounded(w, count):
    T = 120 * w
    times = event_times(T, count, 120)
    assert times == sorted(set(times))
    assert T < times[0] and times[-1] < T + 120
    assert times == [round_half_up(T + Fraction(120 * k, count + 1)) for k in range(1, count + 1)]


def test_event_times_rejects_overfull_window():
    with pytest.raises(ScalingError):
        event_times(0, 120, 120)


def test_select_affected_policies():
    pols = make_policies(0, [2] * 20)
    chosen = select_affected_policies(pols, CFG, SplitMix64(1))
    assert len(chosen) == len(set(chosen)) == 5
    assert chosen == select_affected_policies(pols, CFG, SplitMix64(1))
    assert sorted(select_affected_policies(make_policies(0, [2] * 3), CFG, SplitMix64(1))) == [0, 1, 2]


def test_select_bottleneck_nf(fixed_rng):
    assert select_bottleneck_nf(make_policies(0, [2])[0], fixed_rng(0.0)) == 0
    assert select_bottleneck_nf(make_policies(0, [7])[0], fixed_rng(1 - 2**-53)) == 6
    assert nf_index_from_uniform(0.999999, 7) == 6


def test_bottleneck_uniformity():
    rng = SplitMix64(77)
    pol = make_policies(0, [4])[0]
    counts = [0] * 4
    for _ in range(100_000):
        counts[select_bottleneck_nf(pol, rng)] += 1
    for c in counts:
        assert abs(c / 100_000 - 0.25) < 0.01


def test_worked_example_two_adds():
    # C = 200 over the first window with L = 100
    tl = timeline(0, [100.0, 300.0])
    events = build_schedule([tl], {0: make_policies(0, [3] * 20)}, CFG, seed=9)
    assert [(e.time_minute, e.action) for e in events] == [(40, Action.ADD), (80, Action.ADD)]


def test_round_robin_assignment():
    tl = timeline(0, [0.0, 700.0])
    events = build_schedule([tl], {0: make_policies(0, [3] * 20)}, CFG, seed=4)
    assert len(events) == 7
    pids = [e.policy_id for e in sorted(events, key=lambda e: e.time_minute)]
    assert len(set(pids[:5])) == 5
    assert pids[5:] == pids[:2]


def test_constant_timeline_empty_schedule():
    assert build_schedule([timeline(0, [5.0] * 13)], {0: make_policies(0, [2] * 10)}, CFG, seed=1) == []


def test_path_change_when_below_threshold():
    tl = timeline(0, [0.0, 50.0])
    events = build_schedule([tl], {0: make_policies(0, [2] * 10)}, CFG, seed=1)
    assert len(events) == 5
    assert {(e.time_minute, e.action, e.nf_index) for e in events} == {(0, Action.PATH_CHANGE, 0)}
    assert len({e.policy_id for e in events}) == 5


def test_unknown_enterprise():
    with pytest.raises(ScalingError, match="unknown enterprise"):
        build_schedule([timeline(5, [0, 1])], {0: make_policies(0, [2])}, CFG, seed=1)


def test_remove_events():
    events = build_schedule([timeline(0, [500.0, 150.0])], {0: make_policies(0, [2] * 10)}, CFG, seed=2)
    assert [e.action for e in events] == [Action.REMOVE] * 3
    assert [e.time_minute for e in events] == [30, 60, 90]


def test_hand_built_two_enterprise_oracle():
    rates = {0: [10.0, 250.0, 260.0, 40.0], 1: [80.0, 80.0, 390.0, 300.0]}
    lengths = {0: [2, 3, 4, 5, 6, 7, 2, 3], 1: [7, 2, 2]}
    tls = [timeline(e, r) for e, r in rates.items()]
    wl = {e: make_policies(e, ls) for e, ls in lengths.items()}
    got = as_tuples(build_schedule(tls, wl, CFG, seed=31337))
    assert got == brute_force_schedule(rates, lengths, 100.0, 5, 31337)
    # windows: e0 +240 (2 ADD), +10 (PATH_CHANGE x5), -220 (2 REMOVE);
    #          e1 0 (none), +310 (3 ADD), -90 (PATH_CHANGE x3)
    kinds = [(t, e, a) for t, e, _, _, a in got]
    assert kinds.count((40, 0, "ADD")) == 1 and kinds.count((80, 0, "ADD")) == 1
    assert kinds.count((120, 0, "PATH_CHANGE")) == 5
    assert [t for t, e, a in kinds if a == "REMOVE"] == [280, 320]
    assert [t for t, e, a in kinds if e == 1 and a == "ADD"] == [150, 180, 210]
    assert kinds.count((240, 1, "PATH_CHANGE")) == 3


def test_schedule_invariants_on_generated_workload():
    wl = {p.enterprise_id: pols for p, pols in generate_workload(3, 5)}
    rnd = random.Random(0)
    tls = [timeline(e, [round(rnd.uniform(0, 400), 2) for _ in range(13)]) for e in wl]
    cfg = ScalingConfig(threshold_L=37.5)
    events = build_schedule(tls, wl, cfg, seed=5)
    assert events == sorted(events, key=ScalingEvent.sort_key)
    assert events == build_schedule(tls, wl, cfg, seed=5)
    for tl in tls:
        for d in window_deltas(tl, cfg):
            mine = [e for e in events if e.enterprise_id == tl.enterprise_id and d.window_start <= e.time_minute < d.window_start + 120]
            adds = sum(e.action is Action.ADD for e in mine)
            removes = sum(e.action is Action.REMOVE for e in mine)
            assert adds - removes == instances_required(d.C, cfg.threshold_L)
            scaled = [e.time_minute for e in mine if e.action is not Action.PATH_CHANGE]
            assert len(scaled) == len(set(scaled))
            assert all(d.window_start < t < d.window_start + 120 for t in scaled)
            assert all(e.time_minute == d.window_start for e in mine if e.action is Action.PATH_CHANGE)
    for e in events:
        assert e.nf_index < len(wl[e.enterprise_id][e.policy_id].chain)

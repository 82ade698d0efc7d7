"""Independent recomputations used to check the generators.

Nothing here calls the code under test except the raw generator, whose
documented consumption order is replayed by hand.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction

from nfv_workload_forge.rng import SplitMix64, derive_seed

SCALING_STREAM = 0x5CA1E


def brute_force_instances(C: float, L: float) -> int:
    """Count whole thresholds under |C| by repeated subtraction in exact arithmetic."""
    remaining, step, count = abs(Fraction(C)), Fraction(L), 0
    while remaining >= step:
        remaining -= step
        count += 1
    return count if C >= 0 else -count


def round_half_up(x: Fraction) -> int:
    fl = x.numerator // x.denominator
    return fl + 1 if x - fl >= Fraction(1, 2) else fl


def brute_force_schedule(timelines, workload, L, per_change, seed, window=120):
    """Straight-line recomputation of the event list as plain tuples.

    ``timelines``: {eid: [rate at minute 0, 120, ...]}; ``workload``:
    {eid: [chain length of policy 0, 1, ...]}.  Returns sorted
    ``(t, eid, pid, nf_index, action)`` tuples.
    """
    assert window == 120
    events = []
    for eid, rates in timelines.items():
        rng = SplitMix64(derive_seed(derive_seed(seed, SCALING_STREAM), eid))
        lengths = workload[eid]
        for w, (r0, r1) in enumerate(zip(rates, rates[1:])):
            start = w * window
            C = r1 - r0
            if C == 0:
                continue
            pool = list(range(len(lengths)))
            m = min(per_change, len(pool))
            for i in range(m):
                j = i + rng.randbelow(len(pool) - i)
                pool[i], pool[j] = pool[j], pool[i]
            chosen = pool[:m]
            I = brute_force_instances(C, L)
            if I == 0:
                events += [(start, eid, pid, 0, "PATH_CHANGE") for pid in chosen]
                continue
            nfs = []
            for pid in chosen:
                u = rng.random()
                nfs.append(min(int(u * lengths[pid]), lengths[pid] - 1))
            for j in range(1, abs(I) + 1):
                t = round_half_up(start + Fraction(j * window, abs(I) + 1))
                slot = (j - 1) % m
                events.append((t, eid, chosen[slot], nfs[slot], "ADD" if I > 0 else "REMOVE"))
    events.sort(key=lambda e: e[:4])
    return events


def bfs_all_shortest_paths(nodes, links, src, dst):
    """Every shortest src->dst path by exhaustive layered BFS over an edge list."""
    adj = {v: set() for v in nodes}
    for a, b in links:
        adj[a].add(b)
        adj[b].add(a)
    paths, frontier = [], deque([(src,)])
    best = None
    while frontier:
        path = frontier.popleft()
        if best is not None and len(path) > best:
            break
        if path[-1] == dst:
            best = len(path)
            paths.append(path)
            continue
        for v in adj[path[-1]]:
            if v not in path:
                frontier.append(path + (v,))
    return sorted(paths)

"""JSON forms of the four datasets; every ``*_to_json`` has a parsing inverse."""

from __future__ import annotations

import json
from typing import Any, Iterable, Sequence

from .scaling import Action, ScalingEvent
from .topology.model import Arch, Node, NodeKind, Topology
from .traffic import FlowAssignment, TrafficTimeline, interpolate
from .workload import EnterpriseProfile, NfInstance, Policy


def dumps(obj: Any, *, compact: bool = False) -> str:
    if compact:
        return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def policies_to_json(seed: int, workload: Iterable[tuple[EnterpriseProfile, Sequence[Policy]]]) -> dict:
    return {
        "seed": seed,
        "enterprises": [
            {
                "id": profile.enterprise_id,
                "nf_budget": profile.nf_budget,
                "policies": [
                    {
                        "policy_id": p.policy_id,
                        "chain": [{"type": nf.type, "instance_id": nf.instance_id} for nf in p.chain],
                    }
                    for p in policies
                ],
            }
            for profile, policies in workload
        ],
    }


def policies_from_json(data: dict) -> tuple[int, dict[int, list[Policy]]]:
    """Return ``(seed, {enterprise_id: policies})``."""
    out = {}
    for ent in data["enterprises"]:
        eid = int(ent["id"])
        out[eid] = [
            Policy(
                eid,
                int(p["policy_id"]),
                tuple(NfInstance(str(nf["type"]), int(nf["instance_id"])) for nf in p["chain"]),
            )
            for p in ent["policies"]
        ]
    return int(data["seed"]), out


def flows_to_json(flows: Iterable[FlowAssignment]) -> list[dict]:
    return [
        {
            "enterprise_id": f.enterprise_id,
            "per_policy_rate": {str(pid): rate for pid, rate in sorted(f.per_policy_rate.items())},
        }
        for f in flows
    ]


def flows_from_json(data: list[dict]) -> list[FlowAssignment]:
    return [
        FlowAssignment(
            int(item["enterprise_id"]),
            {int(pid): float(rate) for pid, rate in item["per_policy_rate"].items()},
        )
        for item in data
    ]


def events_to_json(events: Iterable[ScalingEvent]) -> list[dict]:
    return [
        {
            "t": e.time_minute,
            "enterprise": e.enterprise_id,
            "policy": e.policy_id,
            "nf_index": e.nf_index,
            "action": e.action.value,
        }
        for e in events
    ]


def events_from_json(data: list[dict]) -> list[ScalingEvent]:
    return [
        ScalingEvent(int(d["t"]), int(d["enterprise"]), int(d["policy"]), int(d["nf_index"]), Action(d["action"]))
        for d in data
    ]


def path_key(src: int, dst: int) -> str:
    return f"s{src}-s{dst}"


def parse_path_key(key: str) -> tuple[int, int]:
    a, b = key.split("-")
    return int(a[1:]), int(b[1:])


def topology_to_json(topo: Topology) -> dict:
    return {
        "arch": topo.arch.value,
        "params": dict(topo.params),
        "nodes": [{"id": n.id, "kind": n.kind.value, "level": n.level, "label": n.label} for n in topo.nodes],
        "links": [[a, b] for a, b in topo.links],
        "paths": {path_key(s, d): [list(p) for p in plist] for (s, d), plist in sorted(topo.paths.items())},
    }


def topology_from_json(data: dict) -> Topology:
    return Topology(
        Arch(data["arch"]),
        dict(data["params"]),
        tuple(Node(int(n["id"]), NodeKind(n["kind"]), int(n["level"]), str(n["label"])) for n in data["nodes"]),
        tuple((int(a), int(b)) for a, b in data["links"]),
        {
            parse_path_key(key): tuple(tuple(int(v) for v in p) for p in plist)
            for key, plist in data.get("paths", {}).items()
        },
    )


def export_plot_data(timelines: Iterable[TrafficTimeline]) -> dict[int, str]:
    """Two-column ``minute rate`` text per enterprise at one-minute resolution."""
    out = {}
    for tl in timelines:
        lines = [f"{m} {interpolate(tl, m)!r}" for m in range(tl.minutes[0], tl.last_minute + 1)]
        out[tl.enterprise_id] = "\n".join(lines) + "\n"
    return out

"""Fat tree, VL2 and BCube construction with even server placement.

Every builder first produces a :class:`Skeleton` (switches, switch-to-switch
links and the server slots hanging off each ToR) and then places servers
into the slots.  Switch ids come first in a fixed per-architecture order,
followed by servers in (ToR, slot) order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from ..errors import TopologyError
from .model import Arch, Node, NodeKind, Topology

DEFAULT_SERVERS_PER_TOR = 20
DEFAULT_BCUBE_N = 4
DEFAULT_MAX_PATHS = 8


@dataclass(frozen=True)
class Slot:
    label: str
    uplinks: tuple[int, ...]


@dataclass
class Skeleton:
    arch: Arch
    params: dict[str, Any]
    switches: list[Node] = field(default_factory=list)
    links: list[tuple[int, int]] = field(default_factory=list)
    tors: list[list[Slot]] = field(default_factory=list)

    def add_switch(self, kind: NodeKind, level: int, label: str) -> int:
        node = Node(len(self.switches), kind, level, label)
        self.switches.append(node)
        return node.id

    def link(self, a: int, b: int) -> None:
        self.links.append((min(a, b), max(a, b)))

    @property
    def capacity(self) -> int:
        return sum(len(slots) for slots in self.tors)


def _check_even(name: str, value: int) -> None:
    if isinstance(value, bool) or not isinstance(value, int) or value < 2 or value % 2:
        raise TopologyError(f"{name} must be even and ≥ 2, got {value!r}")


def fat_tree_skeleton(k: int) -> Skeleton:
    _check_even("k", k)
    half = k // 2
    sk = Skeleton(Arch.FAT_TREE, {"k": k})
    cores = [sk.add_switch(NodeKind.CORE, 0, f"core{j}") for j in range(half * half)]
    for pod in range(k):
        aggs = [sk.add_switch(NodeKind.AGGREGATION, pod, f"pod{pod}-agg{a}") for a in range(half)]
        edges = [sk.add_switch(NodeKind.EDGE_TOR, pod, f"pod{pod}-edge{e}") for e in range(half)]
        for a, agg in enumerate(aggs):
            for edge in edges:
                sk.link(edge, agg)
            # aggregation a of every pod reaches the same block of k/2 cores
            for j in range(half):
                sk.link(agg, cores[a * half + j])
        for e, edge in enumerate(edges):
            sk.tors.append([Slot(f"pod{pod}-edge{e}-srv{h}", (edge,)) for h in range(half)])
    return sk


def vl2_skeleton(d_a: int, d_i: int, servers_per_tor: int = DEFAULT_SERVERS_PER_TOR) -> Skeleton:
    _check_even("d_a", d_a)
    _check_even("d_i", d_i)
    if isinstance(servers_per_tor, bool) or not isinstance(servers_per_tor, int) or servers_per_tor < 1:
        raise TopologyError(f"servers_per_tor must be a positive integer, got {servers_per_tor!r}")
    sk = Skeleton(Arch.VL2, {"d_a": d_a, "d_i": d_i, "servers_per_tor": servers_per_tor})
    ints = [sk.add_switch(NodeKind.INTERMEDIATE, 0, f"int{i}") for i in range(d_a // 2)]
    aggs = [sk.add_switch(NodeKind.AGGREGATION, 0, f"agg{j}") for j in range(d_i)]
    tors = [sk.add_switch(NodeKind.EDGE_TOR, 0, f"tor{t}") for t in range(d_a * d_i // 4)]
    for agg in aggs:
        for i in ints:
            sk.link(agg, i)
    for t, tor in enumerate(tors):
        sk.link(tor, aggs[(2 * t) % d_i])
        sk.link(tor, aggs[(2 * t + 1) % d_i])
        sk.tors.append([Slot(f"tor{t}-srv{h}", (tor,)) for h in range(servers_per_tor)])
    return sk


def bcube_digits(address: int, n: int, k: int) -> tuple[int, ...]:
    """Base-n digits of ``address``, least significant (level 0) first."""
    digits = []
    for _ in range(k + 1):
        address, d = divmod(address, n)
        digits.append(d)
    return tuple(digits)


def bcube_switch_index(digits: tuple[int, ...], level: int, n: int) -> int:
    """Index of the level-``level`` switch: the address with that digit removed."""
    rest = digits[:level] + digits[level + 1:]
    return sum(d * n**i for i, d in enumerate(rest))


def bcube_server_label(digits: tuple[int, ...]) -> str:
    return "bcube-srv-" + ".".join(str(d) for d in reversed(digits))


def parse_bcube_server_label(label: str) -> tuple[int, ...]:
    return tuple(int(d) for d in reversed(label[len("bcube-srv-"):].split(".")))


def bcube_switch_label(level: int, index: int) -> str:
    return f"bcube-L{level}-S{index}"


def bcube_skeleton(n: int, k: int) -> Skeleton:
    if isinstance(n, bool) or not isinstance(n, int) or n < 2:
        raise TopologyError(f"n must be an integer ≥ 2, got {n!r}")
    if isinstance(k, bool) or not isinstance(k, int) or k < 0:
        raise TopologyError(f"levels k must be a non-negative integer, got {k!r}")
    sk = Skeleton(Arch.BCUBE, {"n": n, "k": k})
    per_level = n**k
    switch_id = {}
    for level in range(k + 1):
        for s in range(per_level):
            switch_id[level, s] = sk.add_switch(NodeKind.BCUBE_SWITCH, level, bcube_switch_label(level, s))
    for s in range(per_level):
        slots = []
        for d0 in range(n):
            digits = bcube_digits(s * n + d0, n, k)
            uplinks = tuple(switch_id[lvl, bcube_switch_index(digits, lvl, n)] for lvl in range(k + 1))
            slots.append(Slot(bcube_server_label(digits), uplinks))
        sk.tors.append(slots)
    return sk


def server_counts(requested: int, num_tors: int) -> list[int]:
    """Even split: the first ``requested % num_tors`` ToRs get one extra."""
    base, extra = divmod(requested, num_tors)
    return [base + (1 if i < extra else 0) for i in range(num_tors)]


def place_servers(skeleton: Skeleton, requested_servers: int) -> Topology:
    """Attach ``requested_servers`` servers as evenly as possible over the ToRs.

    Unused slots produce no nodes.  Switches left without any link (only
    possible in a partially filled BCube) are dropped and ids re-densified.
    """
    if requested_servers < 1:
        raise TopologyError("requested_servers must be >= 1")
    if requested_servers > skeleton.capacity:
        raise TopologyError(
            f"over capacity: {requested_servers} servers requested, "
            f"{skeleton.arch.value} {skeleton.params} holds {skeleton.capacity}"
        )
    nodes = list(skeleton.switches)
    links = list(skeleton.links)
    for slots, count in zip(skeleton.tors, server_counts(requested_servers, len(skeleton.tors))):
        for slot in slots[:count]:
            sid = len(nodes)
            nodes.append(Node(sid, NodeKind.SERVER, 0, slot.label))
            links.extend((min(sid, u), max(sid, u)) for u in slot.uplinks)

    used = {v for link in links for v in link}
    remap = {}
    kept = []
    for node in nodes:
        if node.id in used or node.kind is NodeKind.SERVER:
            remap[node.id] = len(kept)
            kept.append(Node(len(kept), node.kind, node.level, node.label))
    links = sorted({(remap[a], remap[b]) for a, b in links})
    params = dict(skeleton.params, servers=requested_servers)
    return Topology(skeleton.arch, params, tuple(kept), tuple(links))


def build_fat_tree(k: int) -> Topology:
    sk = fat_tree_skeleton(k)
    return place_servers(sk, sk.capacity)


def build_vl2(d_a: int, d_i: int, servers_per_tor: int = DEFAULT_SERVERS_PER_TOR) -> Topology:
    sk = vl2_skeleton(d_a, d_i, servers_per_tor)
    return place_servers(sk, sk.capacity)


def build_bcube(n: int, k: int) -> Topology:
    sk = bcube_skeleton(n, k)
    return place_servers(sk, sk.capacity)


def fit_architecture(arch: Arch | str, requested_servers: int, **knobs) -> dict[str, int]:
    """Smallest parameterization holding ``requested_servers``.

    Knobs given explicitly are kept as-is (capacity is checked at placement).
    Fat tree: ``k``.  VL2: ``d_a``, ``d_i``, ``servers_per_tor`` (default 20);
    when the switch degrees are not given both grow together.  BCube: ``n``
    (default 4) and ``k`` (levels).
    """
    arch = Arch.parse(arch)
    if requested_servers < 1:
        raise TopologyError("requested_servers must be >= 1")
    knobs = {key: v for key, v in knobs.items() if v is not None}
    if arch is Arch.FAT_TREE:
        _reject_unknown(knobs, {"k"})
        if "k" in knobs:
            return {"k": knobs["k"]}
        k = 2
        while k**3 // 4 < requested_servers:
            k += 2
        return {"k": k}
    if arch is Arch.VL2:
        _reject_unknown(knobs, {"d_a", "d_i", "servers_per_tor"})
        spt = knobs.get("servers_per_tor", DEFAULT_SERVERS_PER_TOR)
        if "d_a" in knobs or "d_i" in knobs:
            d_a = knobs.get("d_a", knobs.get("d_i"))
            d_i = knobs.get("d_i", d_a)
            return {"d_a": d_a, "d_i": d_i, "servers_per_tor": spt}
        d = 2
        while (d * d // 4) * spt < requested_servers:
            d += 2
        return {"d_a": d, "d_i": d, "servers_per_tor": spt}
    _reject_unknown(knobs, {"n", "k"})
    n = knobs.get("n", DEFAULT_BCUBE_N)
    if "k" in knobs:
        return {"n": n, "k": knobs["k"]}
    if n < 2:
        raise TopologyError(f"n must be an integer ≥ 2, got {n!r}")
    k = 0
    while n ** (k + 1) < requested_servers:
        k += 1
    return {"n": n, "k": k}


def _reject_unknown(knobs: dict, allowed: set[str]) -> None:
    extra = sorted(set(knobs) - allowed)
    if extra:
        raise TopologyError(f"unsupported knobs for this architecture: {', '.join(extra)}")


def skeleton_for(arch: Arch | str, params: dict[str, int]) -> Skeleton:
    arch = Arch.parse(arch)
    if arch is Arch.FAT_TREE:
        return fat_tree_skeleton(params["k"])
    if arch is Arch.VL2:
        return vl2_skeleton(params["d_a"], params["d_i"], params["servers_per_tor"])
    return bcube_skeleton(params["n"], params["k"])


def build_full(
    arch: Arch | str,
    requested_servers: int,
    knobs: dict[str, int] | None = None,
    max_paths: int = DEFAULT_MAX_PATHS,
) -> Topology:
    from .paths import with_paths

    params = fit_architecture(arch, requested_servers, **(knobs or {}))
    topo = place_servers(skeleton_for(arch, params), requested_servers)
    return with_paths(topo, max_paths)

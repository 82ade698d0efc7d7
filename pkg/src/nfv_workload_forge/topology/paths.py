"""Server-to-server path enumeration.

Fat tree and VL2 paths are built from the switch hierarchy; BCube paths
follow BCube's k+1 parallel-path construction (digit correction in rotated
orders).  Every list is ordered shortest first, then lexicographically by
node id, and truncated to ``max_paths``.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations

from ..errors import TopologyError
from .builders import (
    DEFAULT_MAX_PATHS,
    bcube_server_label,
    bcube_switch_index,
    bcube_switch_label,
    parse_bcube_server_label,
)
from .model import Arch, NodeKind, Path, Topology

AGG = NodeKind.AGGREGATION
CORE = NodeKind.CORE
TOR = NodeKind.EDGE_TOR
INT = NodeKind.INTERMEDIATE


def canonical(paths, max_paths: int) -> list[Path]:
    unique = sorted(set(tuple(p) for p in paths), key=lambda p: (len(p), p))
    return unique[:max_paths]


def _tor_of(topo: Topology, server: int) -> int:
    (tor,) = topo.neighbors(server, TOR)
    return tor


def fat_tree_paths(topo: Topology, src: int, dst: int) -> list[Path]:
    e1, e2 = _tor_of(topo, src), _tor_of(topo, dst)
    if e1 == e2:
        return [(src, e1, dst)]
    aggs1 = topo.neighbors(e1, AGG)
    if topo.nodes[e1].level == topo.nodes[e2].level:
        return [(src, e1, a, e2, dst) for a in aggs1]
    dst_pod = topo.nodes[e2].level
    out = []
    for a1 in aggs1:
        for core in topo.neighbors(a1, CORE):
            (a2,) = [a for a in topo.neighbors(core, AGG) if topo.nodes[a].level == dst_pod]
            out.append((src, e1, a1, core, a2, e2, dst))
    return out


def vl2_paths(topo: Topology, src: int, dst: int) -> list[Path]:
    """Direct paths through shared aggregation switches plus every loop-free
    up-over-down path through an intermediate switch."""
    t1, t2 = _tor_of(topo, src), _tor_of(topo, dst)
    if t1 == t2:
        return [(src, t1, dst)]
    aggs1, aggs2 = topo.neighbors(t1, AGG), topo.neighbors(t2, AGG)
    out = [(src, t1, a, t2, dst) for a in aggs1 if a in aggs2]
    for sa in aggs1:
        for da in aggs2:
            if sa == da:
                continue
            for i in topo.neighbors(sa, INT):
                if topo.has_link(i, da):
                    out.append((src, t1, sa, i, da, t2, dst))
    return out


def _bcube_route(a: list[int], b: tuple[int, ...], order: list[int]) -> list[tuple[int, ...]]:
    node = list(a)
    hops = [tuple(node)]
    for pos in order:
        if node[pos] != b[pos]:
            node[pos] = b[pos]
            hops.append(tuple(node))
    return hops


def bcube_server_sequences(a: tuple[int, ...], b: tuple[int, ...], n: int) -> list[list[tuple[int, ...]]]:
    """The k+1 parallel server sequences from ``a`` to ``b`` (digits, level 0 first).

    For each level i from k down to 0: when the level-i digits differ, correct
    digits in the order i, i-1, ..., i-k (mod k+1); otherwise step first to the
    level-i neighbour of ``a`` with digit ``(a[i] + 1) mod n`` and from there
    correct in the order i-1, ..., i-1-k.
    """
    k = len(a) - 1
    width = k + 1
    seqs = []
    for i in range(k, -1, -1):
        if a[i] != b[i]:
            order = [(i - j) % width for j in range(width)]
            seqs.append(_bcube_route(list(a), b, order))
        else:
            c = list(a)
            c[i] = (a[i] + 1) % n
            order = [(i - 1 - j) % width for j in range(width)]
            seqs.append([a] + _bcube_route(c, b, order))
    return seqs


def bcube_paths(topo: Topology, src: int, dst: int) -> list[Path]:
    n = topo.params["n"]
    index = topo.label_index
    a = parse_bcube_server_label(topo.nodes[src].label)
    b = parse_bcube_server_label(topo.nodes[dst].label)
    out = []
    for seq in bcube_server_sequences(a, b, n):
        hops = []
        for prev, cur in zip(seq, seq[1:]):
            (level,) = [lvl for lvl in range(len(prev)) if prev[lvl] != cur[lvl]]
            hops.append(index.get(bcube_server_label(prev)))
            hops.append(index.get(bcube_switch_label(level, bcube_switch_index(prev, level, n))))
        hops.append(index.get(bcube_server_label(seq[-1])))
        # relay servers may be absent when the fabric is partially filled
        if None not in hops:
            out.append(tuple(hops))
    if not out:
        out = shortest_paths(topo, src, dst)
    return out


def shortest_paths(topo: Topology, src: int, dst: int, limit: int | None = None) -> list[Path]:
    """All shortest paths by BFS layering; used where structure gives no route."""
    dist = {src: 0}
    preds: dict[int, list[int]] = {src: []}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        if u == dst:
            break
        for v in topo.adjacency[u]:
            if v not in dist:
                dist[v] = dist[u] + 1
                preds[v] = [u]
                queue.append(v)
            elif dist[v] == dist[u] + 1:
                preds[v].append(u)
    if dst not in dist:
        return []
    out: list[Path] = []

    def walk(node, suffix):
        if limit is not None and len(out) >= limit:
            return
        if node == src:
            out.append(tuple([src] + suffix))
            return
        for p in sorted(preds[node]):
            walk(p, [node] + suffix)

    walk(dst, [])
    return out


_ENUMERATORS = {Arch.FAT_TREE: fat_tree_paths, Arch.VL2: vl2_paths, Arch.BCUBE: bcube_paths}


def enumerate_paths(topo: Topology, src: int, dst: int, max_paths: int = DEFAULT_MAX_PATHS) -> list[Path]:
    if max_paths < 1:
        raise TopologyError("max_paths must be >= 1")
    if src == dst:
        raise TopologyError("source and destination must differ")
    for node in (src, dst):
        if not 0 <= node < len(topo.nodes) or not topo.nodes[node].is_server:
            raise TopologyError(f"node {node} is not a server")
    return canonical(_ENUMERATORS[topo.arch](topo, src, dst), max_paths)


def with_paths(topo: Topology, max_paths: int = DEFAULT_MAX_PATHS) -> Topology:
    """Copy of ``topo`` with paths for every unordered server pair."""
    paths = {
        (s, d): tuple(enumerate_paths(topo, s, d, max_paths))
        for s, d in combinations(sorted(topo.servers), 2)
    }
    return Topology(topo.arch, dict(topo.params, max_paths=max_paths), topo.nodes, topo.links, paths)

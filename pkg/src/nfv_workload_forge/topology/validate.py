from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

from .model import Arch, NodeKind, Topology


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, message: str) -> None:
        self.violations.append(message)


def validate(topo: Topology) -> ValidationReport:
    """Structural checks; findings are collected, never raised."""
    report = ValidationReport()
    _check_nodes(topo, report)
    if not _check_links(topo, report):
        return report
    _check_connected(topo, report)
    _check_degrees(topo, report)
    _check_paths(topo, report)
    return report


def _check_nodes(topo: Topology, report: ValidationReport) -> None:
    for i, node in enumerate(topo.nodes):
        if node.id != i:
            report.add(f"node at position {i} has id {node.id}; ids must be dense")


def _check_links(topo: Topology, report: ValidationReport) -> bool:
    n = len(topo.nodes)
    sound = True
    seen = set()
    for a, b in topo.links:
        if not (0 <= a < n and 0 <= b < n):
            report.add(f"link ({a}, {b}) references a missing node")
            sound = False
            continue
        if a == b:
            report.add(f"self-loop on node {a}")
        elif a > b:
            report.add(f"link ({a}, {b}) not stored with a < b")
        if (min(a, b), max(a, b)) in seen:
            report.add(f"duplicate link ({a}, {b})")
        seen.add((min(a, b), max(a, b)))
    return sound


def _check_connected(topo: Topology, report: ValidationReport) -> None:
    if not topo.nodes:
        return
    seen = {0}
    queue = deque([0])
    while queue:
        for v in topo.adjacency[queue.popleft()]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    if len(seen) != len(topo.nodes):
        report.add(f"graph is disconnected: {len(topo.nodes) - len(seen)} nodes unreachable from node 0")


def _check_degrees(topo: Topology, report: ValidationReport) -> None:
    p = topo.params

    def expect(node, kind, want, *, at_most=False):
        got = len(topo.neighbors(node.id, kind))
        if (got > want) if at_most else (got != want):
            rel = "at most " if at_most else ""
            what = kind.value if kind else "total"
            report.add(f"{node.label}: {what} degree {got}, expected {rel}{want}")

    for node in topo.nodes:
        kind = node.kind
        if topo.arch is Arch.FAT_TREE:
            half = p["k"] // 2
            if kind is NodeKind.CORE:
                expect(node, None, p["k"])
            elif kind is NodeKind.AGGREGATION:
                expect(node, NodeKind.EDGE_TOR, half)
                expect(node, NodeKind.CORE, half)
            elif kind is NodeKind.EDGE_TOR:
                expect(node, NodeKind.AGGREGATION, half)
                expect(node, NodeKind.SERVER, half, at_most=True)
            elif kind is NodeKind.SERVER:
                expect(node, None, 1)
                expect(node, NodeKind.EDGE_TOR, 1)
            else:
                report.add(f"{node.label}: unexpected kind {kind.value} in a fat tree")
        elif topo.arch is Arch.VL2:
            if kind is NodeKind.INTERMEDIATE:
                expect(node, NodeKind.AGGREGATION, p["d_i"])
                expect(node, None, p["d_i"])
            elif kind is NodeKind.AGGREGATION:
                expect(node, NodeKind.INTERMEDIATE, p["d_a"] // 2)
            elif kind is NodeKind.EDGE_TOR:
                expect(node, NodeKind.AGGREGATION, 2)
                expect(node, NodeKind.SERVER, p["servers_per_tor"], at_most=True)
            elif kind is NodeKind.SERVER:
                expect(node, None, 1)
                expect(node, NodeKind.EDGE_TOR, 1)
            else:
                report.add(f"{node.label}: unexpected kind {kind.value} in VL2")
        else:
            if kind is NodeKind.SERVER:
                expect(node, NodeKind.BCUBE_SWITCH, p["k"] + 1)
                expect(node, None, p["k"] + 1)
            elif kind is NodeKind.BCUBE_SWITCH:
                expect(node, NodeKind.SERVER, p["n"], at_most=True)
                expect(node, None, p["n"], at_most=True)
            else:
                report.add(f"{node.label}: unexpected kind {kind.value} in BCube")


def _check_paths(topo: Topology, report: ValidationReport) -> None:
    if not topo.paths:
        return
    n = len(topo.nodes)
    servers = set(topo.servers)
    for pair in combinations(sorted(servers), 2):
        if not topo.paths.get(pair):
            report.add(f"no path listed for server pair {pair}")
    for (src, dst), plist in topo.paths.items():
        for path in plist:
            tag = f"path {list(path)} for pair ({src}, {dst})"
            if not path or path[0] != src or path[-1] != dst:
                report.add(f"{tag} does not run from {src} to {dst}")
            if any(not 0 <= v < n for v in path):
                report.add(f"{tag} references a missing node")
                continue
            if path and not (path[0] in servers and path[-1] in servers):
                report.add(f"{tag} does not start and end at servers")
            if len(set(path)) != len(path):
                report.add(f"{tag} repeats a node")
            for a, b in zip(path, path[1:]):
                if not topo.has_link(a, b):
                    report.add(f"{tag} uses missing link ({a}, {b})")

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any


class Arch(str, enum.Enum):
    FAT_TREE = "FAT_TREE"
    VL2 = "VL2"
    BCUBE = "BCUBE"

    @classmethod
    def parse(cls, value: "str | Arch") -> "Arch":
        if isinstance(value, Arch):
            return value
        key = str(value).strip().upper().replace("-", "_")
        if key == "FATTREE":
            key = "FAT_TREE"
        try:
            return cls[key]
        except KeyError:
            raise ValueError(f"unknown architecture {value!r}") from None


class NodeKind(str, enum.Enum):
    SERVER = "SERVER"
    EDGE_TOR = "EDGE_TOR"
    AGGREGATION = "AGGREGATION"
    CORE = "CORE"
    INTERMEDIATE = "INTERMEDIATE"
    BCUBE_SWITCH = "BCUBE_SWITCH"


@dataclass(frozen=True)
class Node:
    id: int
    kind: NodeKind
    level: int
    label: str

    @property
    def is_server(self) -> bool:
        return self.kind is NodeKind.SERVER


PathKey = tuple[int, int]
Path = tuple[int, ...]


@dataclass(frozen=True)
class Topology:
    """Architecture-tagged graph.

    ``links`` are undirected pairs stored ``(a, b)`` with ``a < b`` in sorted
    order.  ``paths`` maps ``(src, dst)`` server ids with ``src < dst`` to hop
    lists; it is empty until paths are enumerated.
    """

    arch: Arch
    params: dict[str, Any]
    nodes: tuple[Node, ...]
    links: tuple[tuple[int, int], ...]
    paths: dict[PathKey, tuple[Path, ...]] = field(default_factory=dict)

    @cached_property
    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.nodes]
        for a, b in self.links:
            adj[a].append(b)
            adj[b].append(a)
        for row in adj:
            row.sort()
        return adj

    @cached_property
    def link_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.links)

    @cached_property
    def label_index(self) -> dict[str, int]:
        return {n.label: n.id for n in self.nodes}

    @property
    def servers(self) -> list[int]:
        return [n.id for n in self.nodes if n.kind is NodeKind.SERVER]

    @property
    def switches(self) -> list[int]:
        return [n.id for n in self.nodes if n.kind is not NodeKind.SERVER]

    def of_kind(self, kind: NodeKind) -> list[int]:
        return [n.id for n in self.nodes if n.kind is kind]

    def neighbors(self, node: int, kind: NodeKind | None = None) -> list[int]:
        nbrs = self.adjacency[node]
        if kind is None:
            return nbrs
        return [v for v in nbrs if self.nodes[v].kind is kind]

    def has_link(self, a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in self.link_set

    def counts(self) -> dict[str, int]:
        return {
            "servers": len(self.servers),
            "switches": len(self.switches),
            "links": len(self.links),
        }

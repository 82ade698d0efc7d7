"""Data-center fabrics (fat tree, VL2, BCube) with nodes, links and server paths."""

from .builders import (
    DEFAULT_MAX_PATHS,
    Skeleton,
    bcube_skeleton,
    build_bcube,
    build_fat_tree,
    build_full,
    build_vl2,
    fat_tree_skeleton,
    fit_architecture,
    place_servers,
    server_counts,
    skeleton_for,
    vl2_skeleton,
)
from .model import Arch, Node, NodeKind, Topology
from .paths import enumerate_paths, shortest_paths, with_paths
from .validate import ValidationReport, validate

__all__ = [
    "Arch",
    "DEFAULT_MAX_PATHS",
    "Node",
    "NodeKind",
    "Skeleton",
    "Topology",
    "ValidationReport",
    "bcube_skeleton",
    "build_bcube",
    "build_fat_tree",
    "build_full",
    "build_vl2",
    "enumerate_paths",
    "fat_tree_skeleton",
    "fit_architecture",
    "place_servers",
    "server_counts",
    "shortest_paths",
    "skeleton_for",
    "validate",
    "vl2_skeleton",
    "with_paths",
]

"""Stage orchestration and the per-run manifest.

A run writes into one directory: the stage outputs plus ``manifest.json``,
which echoes the config and records a SHA-256 digest per emitted file.
Stage dependencies: policies and topology stand alone, traffic needs
policies and a timeline, scaling additionally needs ``threshold_L``.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from . import __version__
from .config import RunConfig
from .errors import ConfigError, TrafficError
from .scaling import ScalingConfig, build_schedule
from .serialize import (
    dumps,
    events_to_json,
    export_plot_data,
    flows_to_json,
    policies_from_json,
    policies_to_json,
    topology_to_json,
)
from .topology import Arch, build_full
from .traffic import TrafficTimeline, initial_distribution, load_timeline, sample_timelines
from .workload import NfTypeCatalog, Policy, generate_workload

TOOL = "nfv-workload-forge"
STAGES = ("policies", "traffic", "scaling", "topology")
SAMPLE_TIMELINE = "sample"

_ARCH = {"fat-tree": Arch.FAT_TREE, "vl2": Arch.VL2, "bcube": Arch.BCUBE}


@dataclass(frozen=True)
class RunManifest:
    config: dict
    version: str
    files: dict[str, str]

    def to_json(self) -> dict:
        return {"tool": TOOL, "version": self.version, "config": self.config, "files": self.files}


def digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def read_timelines(source: str, enterprise_ids: Iterable[int] = (0,)) -> list[TrafficTimeline]:
    """Load a timeline CSV; the name ``sample`` selects the bundled demo shape."""
    if source == SAMPLE_TIMELINE:
        return sample_timelines(enterprise_ids)
    try:
        with open(source, encoding="utf-8", newline="") as fh:
            return load_timeline(fh)
    except OSError as exc:
        raise TrafficError(f"cannot read timeline {source}: {exc.strerror}") from None


def read_policies(path: str) -> tuple[int, dict[int, list[Policy]]]:
    try:
        with open(path, encoding="utf-8") as fh:
            return policies_from_json(json.load(fh))
    except OSError as exc:
        raise TrafficError(f"cannot read policies {path}: {exc.strerror}") from None
    except (ValueError, KeyError, TypeError) as exc:
        raise TrafficError(f"malformed policies file {path}: {exc}") from None


def flows_for(timelines: list[TrafficTimeline], workload: dict[int, list[Policy]]):
    flows = []
    for tl in timelines:
        if tl.enterprise_id not in workload:
            raise TrafficError(f"timeline references unknown enterprise {tl.enterprise_id}")
        flows.append(initial_distribution(tl, workload[tl.enterprise_id]))
    return flows


def render(
    config: RunConfig,
    stages: Iterable[str] = STAGES,
    workload: dict[int, list[Policy]] | None = None,
) -> dict[str, str]:
    """File name -> content for the requested stages, without touching disk.

    ``workload`` supplies existing policies; otherwise they are generated
    from ``config`` (and ``policies.json`` is emitted only if requested).
    """
    stages = set(stages)
    unknown = stages - set(STAGES)
    if unknown:
        raise ValueError(f"unknown stages: {sorted(unknown)}")
    files: dict[str, str] = {}
    needs_policies = stages & {"policies", "traffic", "scaling"}
    if needs_policies and workload is None:
        catalog = NfTypeCatalog.from_mapping(config.catalog) if config.catalog else None
        generated = generate_workload(config.num_enterprises, config.seed, config.nf_budget, catalog)
        if "policies" in stages:
            files["policies.json"] = dumps(policies_to_json(config.seed, generated))
        workload = {profile.enterprise_id: policies for profile, policies in generated}

    if stages & {"traffic", "scaling"}:
        if config.timeline is None:
            raise ConfigError("timeline", "traffic and scaling stages need a timeline")
        timelines = read_timelines(config.timeline, sorted(workload))
        if "traffic" in stages:
            files["flows.json"] = dumps(flows_to_json(flows_for(timelines, workload)))
        if "scaling" in stages:
            if config.threshold_L is None:
                raise ConfigError("threshold_L", "scaling stage needs a threshold")
            scfg = ScalingConfig(config.threshold_L, config.policies_per_change, config.window_minutes)
            events = build_schedule(timelines, workload, scfg, config.seed)
            files["events.json"] = dumps(events_to_json(events))

    if "topology" in stages:
        topo = build_full(_ARCH[config.arch], config.requested_servers, config.topology_knobs(), config.max_paths)
        files["topology.json"] = dumps(topology_to_json(topo), compact=True)
    return files


def write_run(out_dir: str | Path, config: RunConfig, files: dict[str, str]) -> RunManifest:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    digests = {}
    for name in sorted(files):
        data = files[name].encode("utf-8")
        target = out / name
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_bytes(data)
        digests[name] = digest(data)
    manifest = RunManifest(config.echo(), __version__, digests)
    (out / "manifest.json").write_text(dumps(manifest.to_json()), encoding="utf-8")
    return manifest


def run_pipeline(config: RunConfig, stages: Iterable[str] = STAGES) -> RunManifest:
    return write_run(config.out, config, render(config, stages))


def plot_files(timelines: list[TrafficTimeline]) -> dict[str, str]:
    return {f"plot/enterprise_{eid}.dat": text for eid, text in export_plot_data(timelines).items()}

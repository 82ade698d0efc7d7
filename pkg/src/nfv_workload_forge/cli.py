"""Command-line entry point.

Exit codes: 0 success, 2 configuration error, 3 input-data error.
"""

from __future__ import annotations

import argparse
import io
import logging
import sys

from .config import ARCH_CHOICES, parse_config
from .errors import ConfigError, ForgeError, ScalingError, TopologyError, TrafficError, WorkloadError
from .pipeline import plot_files, read_policies, read_timelines, render, write_run
from .serialize import dumps
from .traffic import dump_timeline, sample_timelines

log = logging.getLogger("nfv_workload_forge")

EXIT_CONFIG = 2
EXIT_INPUT = 3


def _u64(text: str) -> int:
    try:
        return int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def _globals(parser: argparse.ArgumentParser, default) -> None:
    parser.add_argument("--seed", type=_u64, default=default, help="master seed (unsigned 64-bit)")
    parser.add_argument("--out", default=default, help="output directory for this run")
    parser.add_argument("--config", default=default, help="TOML config file; flags override it")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nfv-workload-forge", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    _globals(parser, None)
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, help):
        p = sub.add_parser(name, help=help)
        _globals(p, argparse.SUPPRESS)
        return p

    p = command("policies", "generate NF chain policies per enterprise")
    p.add_argument("--enterprises", type=int, dest="num_enterprises")
    p.add_argument("--nf-budget", type=int, dest="nf_budget")
    p.add_argument("--catalog", help="TOML/JSON table of type = weight")

    p = command("traffic", "split each enterprise's initial load over its policies")
    p.add_argument("--policies", dest="policies_file", required=True)
    p.add_argument("--timeline", required=True)

    p = command("scaling", "derive the scaling / path-change event schedule")
    p.add_argument("--policies", dest="policies_file", required=True)
    p.add_argument("--timeline", required=True)
    p.add_argument("--threshold", type=float, dest="threshold_L")
    p.add_argument("--policies-per-change", type=int, dest="policies_per_change")
    p.add_argument("--window", type=int, dest="window_minutes")

    p = command("topology", "build a data-center topology with server paths")
    p.add_argument("--arch", choices=ARCH_CHOICES)
    p.add_argument("--servers", type=int, dest="requested_servers")
    p.add_argument("--k", type=int)
    p.add_argument("--da", type=int, dest="d_a")
    p.add_argument("--di", type=int, dest="d_i")
    p.add_argument("--servers-per-tor", type=int, dest="servers_per_tor")
    p.add_argument("--n", type=int)
    p.add_argument("--max-paths", type=int, dest="max_paths")

    p = command("plot", "export per-minute rate series for plotting")
    p.add_argument("--timeline", required=True)

    p = command("sample-timeline", "write the bundled synthetic demo timeline as CSV")
    p.add_argument("--enterprises", type=int, dest="num_enterprises")

    command("all", "run policies, traffic, scaling and topology into one directory")
    return parser


_NOT_CONFIG = {"command", "verbose", "config", "policies_file"}


def _config_from(args: argparse.Namespace, **extra):
    overrides = {k: v for k, v in vars(args).items() if k not in _NOT_CONFIG}
    overrides.update(extra)
    return parse_config(getattr(args, "config", None), overrides)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return _dispatch(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (WorkloadError, TopologyError) as exc:
        # raised only for parameter combinations the config checks cannot see
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (TrafficError, ScalingError, ForgeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def _dispatch(args: argparse.Namespace) -> int:
    cmd = args.command
    if cmd in ("traffic", "scaling"):
        file_seed, workload = read_policies(args.policies_file)
        seed = args.seed if getattr(args, "seed", None) is not None else file_seed
        config = _config_from(args, seed=seed)
        files = render(config, [cmd], workload=workload)
    elif cmd == "plot":
        config = _config_from(args)
        files = plot_files(read_timelines(config.timeline))
    elif cmd == "sample-timeline":
        config = _config_from(args)
        buf = io.StringIO()
        dump_timeline(sample_timelines(range(config.num_enterprises)), buf)
        files = {"timeline.csv": buf.getvalue()}
    else:
        config = _config_from(args)
        stages = {"policies": ["policies"], "topology": ["topology"]}.get(cmd)
        files = render(config, stages) if stages else render(config)
    manifest = write_run(config.out, config, files)
    for name, sha in manifest.files.items():
        log.info("wrote %s/%s (%s)", config.out, name, sha[:12])
    print(dumps(manifest.to_json()), end="")
    return 0


if __name__ == "__main__":
    sys.exit(main())

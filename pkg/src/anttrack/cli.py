"""Command-line entry point: scenario runs, seed sweeps, and pheromone
value traces.

Exit codes: 0 success, 2 configuration error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import statistics
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import engine
from .detection import DetectorModel
from .pheromone import PheromoneEvent, PheromoneParams, PheromoneState
from .topology import NetworkTopology, TopologyError, load_topology
from .traffic import TrafficRates


class ScenarioError(Exception):
    """Scenario file or override problem; reported with key context."""


_SCALAR_KEYS = {
    "seed": int,
    "ant_count": int,
    "inc": float,
    "dec": float,
    "threshold": float,
    "detect_prob": float,
    "false_positive_prob": float,
    "good_packets_per_tick": int,
    "attack_packets_per_infected_per_tick": int,
    "max_ticks": int,
    "ant_choice": str,
    "topology_file": str,
}


def parse_scenario(text: str, base_dir: Path) -> dict:
    """Parse the flat key-value scenario format into a raw dict.

    Repeatable keys: ``edge a b`` and ``infect_at tick node``.  The key
    ``infected`` takes a space-separated node list.  Unknown keys are
    rejected by name.
    """
    data: dict = {"edges": [], "infect_at": [], "base_dir": base_dir}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, *rest = line.split()
        try:
            if key == "edge":
                a, b = (int(x) for x in rest)
                data["edges"].append((a, b))
            elif key == "infect_at":
                tick, node = (int(x) for x in rest)
                data["infect_at"].append((tick, node))
            elif key == "nodes":
                (data["nodes"],) = (int(x) for x in rest)
            elif key == "random_topology":
                n, p = rest
                data["random_topology"] = (int(n), float(p))
            elif key == "infected":
                data["infected"] = [int(x) for x in rest]
            elif key in _SCALAR_KEYS:
                if key in data:
                    raise ScenarioError(f"line {lineno}: duplicate key {key!r}")
                (value,) = rest
                data[key] = _SCALAR_KEYS[key](value)
            else:
                raise ScenarioError(f"line {lineno}: unknown key {key!r}")
        except (ValueError, TypeError):
            raise ScenarioError(f"line {lineno}: bad value for {key!r}: {' '.join(rest)!r}")
    return data


def apply_overrides(data: dict, overrides: list[str]) -> None:
    """Apply repeatable ``--set key=value`` strings onto a parsed scenario."""
    for item in overrides:
        key, sep, value = item.partition("=")
        if not sep:
            raise ScenarioError(f"override {item!r} is not of the form key=value")
        if key == "infected":
            try:
                data["infected"] = [int(x) for x in value.split()]
            except ValueError:
                raise ScenarioError(f"override infected={value!r} is not a node list")
        elif key in _SCALAR_KEYS:
            try:
                data[key] = _SCALAR_KEYS[key](value)
            except ValueError:
                raise ScenarioError(f"override {key}={value!r} has the wrong type")
        else:
            raise ScenarioError(f"unknown key {key!r}")


def build_config(data: dict, seed_override: int | None = None) -> engine.SimulationConfig:
    """Turn a parsed scenario into a validated SimulationConfig."""
    seed = seed_override if seed_override is not None else data.get("seed", 0)

    sources = [s for s in ("nodes", "topology_file", "random_topology") if s in data]
    if "nodes" not in data and data["edges"]:
        raise ScenarioError("edge lines given without a nodes line")
    if len(sources) != 1:
        raise ScenarioError(
            "scenario needs exactly one topology source: inline nodes/edge lines, "
            "topology_file, or random_topology"
        )
    try:
        if "nodes" in data:
            topology = NetworkTopology.from_edges(data["nodes"], data["edges"])
        elif "topology_file" in data:
            path = data["base_dir"] / data["topology_file"]
            topology = load_topology(path.read_text(encoding="utf-8"))
        else:
            n, p = data["random_topology"]
            topology = engine.generate_random_topology(n, p, engine.derive_rng(seed, "topology"))
    except TopologyError as exc:
        raise ScenarioError(f"topology: {exc}")

    try:
        params = PheromoneParams(
            increase=data.get("inc", 20.0),
            decay=data.get("dec", 0.95),
            threshold=data.get("threshold", 10.0),
        )
        rates = TrafficRates(
            good_packets_per_tick=data.get("good_packets_per_tick", 50),
            attack_packets_per_infected_per_tick=data.get(
                "attack_packets_per_infected_per_tick", 3
            ),
        )
        detector = DetectorModel(
            detect_prob=data.get("detect_prob", 1.0),
            false_positive_prob=data.get("false_positive_prob", 0.0),
        )
    except ValueError as exc:
        raise ScenarioError(str(exc))

    config = engine.SimulationConfig(
        topology=topology,
        params=params,
        rates=rates,
        detector=detector,
        ant_count=data.get("ant_count", 3),
        initial_infected=frozenset(data.get("infected", [])),
        scripted_infections=tuple(sorted(data["infect_at"])),
        max_ticks=data.get("max_ticks", 1000),
        seed=seed,
        ant_choice=data.get("ant_choice", "greedy"),
    )
    config.validate()
    return config


def _load_scenario_file(path: Path, overrides: list[str]) -> dict:
    data = parse_scenario(path.read_text(encoding="utf-8"), path.parent)
    apply_overrides(data, overrides)
    return data


def _write_outputs(outputs: list[tuple[Path, str]]) -> None:
    """Write all output files, removing everything written on failure."""
    written: list[Path] = []
    try:
        for path, content in outputs:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(content, encoding="utf-8")
            written.append(path)
    except OSError:
        for path in written:
            try:
                path.unlink()
            except OSError:
                pass
        raise


def _summary_text(config: engine.SimulationConfig, metrics: engine.Metrics) -> str:
    lines = [
        f"nodes: {config.topology.node_count}",
        f"connections: {len(config.topology.edges)}",
        f"seed: {config.seed}",
        f"ticks: {config.max_ticks}",
        f"ants: {config.ant_count}",
        f"infected nodes: {len(metrics.infection_tick)}",
    ]
    for node in sorted(metrics.infection_tick):
        dtick = metrics.first_declaration_tick.get(node)
        if dtick is None:
            lines.append(f"  node {node}: infected at {metrics.infection_tick[node]}, never declared")
        else:
            lines.append(
                f"  node {node}: infected at {metrics.infection_tick[node]}, "
                f"declared at {dtick} (latency {dtick - metrics.infection_tick[node]})"
            )
    if metrics.all_identified_tick is not None:
        lines.append(f"all infected nodes identified by tick {metrics.all_identified_tick}")
    else:
        lines.append("not all infected nodes were identified")
    lines.append(f"false declarations: {len(metrics.false_declarations)}")
    return "\n".join(lines) + "\n"


def cmd_run(args) -> int:
    data = _load_scenario_file(Path(args.scenario), args.set or [])
    config = build_config(data, args.seed)
    metrics, log = engine.run(config)
    out_dir = Path(args.out)
    _write_outputs(
        [
            (out_dir / "metrics.csv", engine.metrics_to_csv(metrics)),
            (out_dir / "events.log", log.render()),
            (out_dir / "summary.txt", _summary_text(config, metrics)),
        ]
    )
    return 0


def _sweep_one(config: engine.SimulationConfig) -> engine.Metrics:
    metrics, _ = engine.run(config)
    return metrics


def cmd_sweep(args) -> int:
    data = _load_scenario_file(Path(args.scenario), args.set or [])
    seeds = _expand_seeds(args.seeds)
    configs = [build_config(data, seed) for seed in seeds]

    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_sweep_one, configs))
    else:
        results = [_sweep_one(c) for c in configs]

    out_dir = Path(args.out)
    outputs = []
    rows = ["seed,all_identified_tick,latency_median,latency_min,latency_max"]
    latencies = []
    for seed, metrics in zip(seeds, results):
        outputs.append((out_dir / f"metrics_seed{seed}.csv", engine.metrics_to_csv(metrics)))
        tick = metrics.all_identified_tick
        rows.append(f"{seed},{'' if tick is None else tick},,,")
        if tick is not None:
            latencies.append(tick)
    if latencies:
        rows.append(
            f"summary,,{statistics.median(latencies):g},{min(latencies)},{max(latencies)}"
        )
    else:
        rows.append("summary,,,,")
    outputs.append((out_dir / "aggregate.csv", "\n".join(rows) + "\n"))
    _write_outputs(outputs)
    return 0


def _expand_seeds(tokens: list[str]) -> list[int]:
    seeds: list[int] = []
    for tok in tokens:
        if ".." in tok:
            lo, _, hi = tok.partition("..")
            try:
                lo_i, hi_i = int(lo), int(hi)
            except ValueError:
                raise ScenarioError(f"bad seed range {tok!r}")
            if hi_i < lo_i:
                raise ScenarioError(f"bad seed range {tok!r}")
            seeds.extend(range(lo_i, hi_i + 1))
        else:
            try:
                seeds.append(int(tok))
            except ValueError:
                raise ScenarioError(f"bad seed {tok!r}")
    return seeds


def trace_events(mode: str, packets: int, custom: str | None) -> list[PheromoneEvent]:
    """Event sequence for a trace: the 100-packet pattern with bad packets
    at positions 3, 10 and 15; the periodic every-fifth-bad pattern; or an
    explicit G/B string."""
    if mode == "fig1":
        bad_at = {3, 10, 15}
        return [
            PheromoneEvent.BAD if i in bad_at else PheromoneEvent.GOOD
            for i in range(1, 101)
        ]
    if mode == "fig2":
        return [
            PheromoneEvent.BAD if i % 5 == 0 else PheromoneEvent.GOOD
            for i in range(1, packets + 1)
        ]
    if not custom:
        raise ScenarioError("custom mode needs --events")
    events = []
    for ch in custom.upper():
        if ch == "G":
            events.append(PheromoneEvent.GOOD)
        elif ch == "B":
            events.append(PheromoneEvent.BAD)
        else:
            raise ScenarioError(f"event string may only contain G and B, got {ch!r}")
    return events


def render_trace(events: list[PheromoneEvent], params: PheromoneParams) -> str:
    """CSV trace of the running value after each event, 9 significant digits."""
    state = PheromoneState()
    rows = ["packet_index,kind,af_value"]
    for i, ev in enumerate(events, 1):
        if ev is PheromoneEvent.BAD:
            state.apply_bad(params)
        else:
            state.apply_good(params)
        rows.append(f"{i},{ev.value},{state.value:.9g}")
    return "\n".join(rows) + "\n"


def cmd_trace(args) -> int:
    try:
        params = PheromoneParams(increase=args.inc, decay=args.dec)
    except ValueError as exc:
        raise ScenarioError(str(exc))
    events = trace_events(args.mode, args.packets, args.events)
    _write_outputs([(Path(args.out), render_trace(events, params))])
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="anttrack",
        description="Pheromone-trail identification of infected nodes on simulated networks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one scenario")
    p_run.add_argument("--scenario", required=True)
    p_run.add_argument("--out", default="out")
    p_run.add_argument("--seed", type=int, default=None)
    p_run.add_argument("--set", action="append", metavar="KEY=VALUE")
    p_run.set_defaults(func=cmd_run)

    p_sweep = sub.add_parser("sweep", help="run a scenario over several seeds")
    p_sweep.add_argument("--scenario", required=True)
    p_sweep.add_argument("--out", default="out")
    p_sweep.add_argument("--seeds", nargs="+", required=True, metavar="SEED|A..B")
    p_sweep.add_argument("--jobs", type=int, default=1)
    p_sweep.add_argument("--set", action="append", metavar="KEY=VALUE")
    p_sweep.set_defaults(func=cmd_sweep)

    p_trace = sub.add_parser("trace", help="emit a pheromone value trace as CSV")
    p_trace.add_argument("--mode", choices=["fig1", "fig2", "custom"], required=True)
    p_trace.add_argument("--events", default=None, help="event string of G/B for custom mode")
    p_trace.add_argument("--inc", type=float, default=20.0)
    p_trace.add_argument("--dec", type=float, default=0.95)
    p_trace.add_argument("--packets", type=int, default=200)
    p_trace.add_argument("--out", default="trace.csv")
    p_trace.set_defaults(func=cmd_trace)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ScenarioError, engine.InvalidConfig) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

"""Simulation clock, scenario execution, metrics, and the event log.

Intra-tick order is fixed: (1) scripted infections, (2) traffic generation,
(3) confirmation movement (pheromone updates), (4) packet movement
(inspections; confirmations spawned here first move next tick), (5) field
digest, (6) agent steps against the now-stable field in ant_id order,
(7) declaration collection.  A run is a pure function of its config: the
master seed derives independent substreams per role, so traffic and
detection randomness do not depend on how many agents are deployed.
"""

from __future__ import annotations

import hashlib
import random
import struct
from dataclasses import dataclass, field

from .ant import AntState, ant_step, collect_declarations
from .detection import DetectorModel
from .pheromone import PheromoneField, PheromoneParams
from .topology import NetworkTopology
from .traffic import InfectionState, TrafficRates, generate_tick_traffic
from .transport import InFlight, advance_confirmations, advance_packets


class InvalidConfig(Exception):
    pass


def derive_rng(master_seed: int, tag: str) -> random.Random:
    """Independent substream for a role, stable in the seed and tag only."""
    digest = hashlib.sha256(f"{master_seed}/{tag}".encode("utf-8")).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


@dataclass(frozen=True)
class SimulationConfig:
    topology: NetworkTopology
    params: PheromoneParams = PheromoneParams()
    rates: TrafficRates = TrafficRates()
    detector: DetectorModel = DetectorModel()
    ant_count: int = 3
    initial_infected: frozenset[int] = frozenset()
    scripted_infections: tuple[tuple[int, int], ...] = ()
    max_ticks: int = 1000
    seed: int = 0
    ant_choice: str = "greedy"

    def validate(self) -> None:
        n = self.topology.node_count
        if self.max_ticks <= 0:
            raise InvalidConfig(f"max_ticks must be > 0, got {self.max_ticks}")
        if self.ant_count < 0:
            raise InvalidConfig(f"ant_count must be >= 0, got {self.ant_count}")
        if self.ant_choice not in ("greedy", "proportional"):
            raise InvalidConfig(f"ant_choice must be greedy or proportional, got {self.ant_choice!r}")
        bad = [x for x in self.initial_infected if not 0 <= x < n]
        if bad:
            raise InvalidConfig(f"initial_infected nodes out of range: {sorted(bad)}")
        seen = set(self.initial_infected)
        for tick, node in self.scripted_infections:
            if tick < 0:
                raise InvalidConfig(f"scripted infection tick {tick} is negative")
            if not 0 <= node < n:
                raise InvalidConfig(f"scripted infection node {node} out of range")
            if node in seen:
                raise InvalidConfig(f"node {node} would be infected twice")
            seen.add(node)


@dataclass
class Metrics:
    """Identification outcomes of one run."""

    first_declaration_tick: dict[int, int] = field(default_factory=dict)
    all_identified_tick: int | None = None
    false_declarations: list[tuple[int, int]] = field(default_factory=list)
    confirmation_hops_per_tick: list[int] = field(default_factory=list)
    infection_tick: dict[int, int] = field(default_factory=dict)


class EventLog:
    """Append-only, tick-stamped record lines (PHERO/ANT/DECL/PKT/FIELD)."""

    def __init__(self):
        self.lines: list[str] = []

    def append(self, line: str) -> None:
        self.lines.append(line)

    def render(self) -> str:
        return "\n".join(self.lines) + ("\n" if self.lines else "")

    def __iter__(self):
        return iter(self.lines)

    def __len__(self):
        return len(self.lines)


def _field_digest(pheromones: PheromoneField) -> str:
    h = hashlib.sha1()
    for (u, v), st in pheromones.items():
        h.update(struct.pack("<iid", u, v, st.value))
    return h.hexdigest()[:16]


def run(config: SimulationConfig) -> tuple[Metrics, EventLog]:
    """Execute max_ticks ticks of the scenario and return what happened."""
    config.validate()
    topo = config.topology
    traffic_rng = derive_rng(config.seed, "traffic")
    detect_rng = derive_rng(config.seed, "detect")
    ant_rngs = [derive_rng(config.seed, f"ant-{i}") for i in range(config.ant_count)]

    infection = InfectionState()
    for node in sorted(config.initial_infected):
        infection.infect(node, 0)
    pending_infections = sorted(config.scripted_infections)

    pheromones = PheromoneField(topo)
    inflight = InFlight()
    ants = [
        AntState(i, location=ant_rngs[i].randrange(topo.node_count))
        for i in range(config.ant_count)
    ]
    log = EventLog()
    metrics = Metrics()
    declared_true: set[int] = set()
    declared_false: set[int] = set()
    next_packet_id = 0

    for tick in range(config.max_ticks):
        while pending_infections and pending_infections[0][0] <= tick:
            _, node = pending_infections.pop(0)
            infection.infect(node, tick)

        new_packets = generate_tick_traffic(
            topo, infection, config.rates, traffic_rng, next_packet_id
        )
        next_packet_id += len(new_packets)
        for pkt in new_packets:
            log.append(
                f"PKT,{tick},spawn,{pkt.id},{pkt.source},{pkt.destination},"
                f"{1 if pkt.malicious else 0}"
            )
        inflight.packets.extend(new_packets)

        updates = advance_confirmations(inflight, pheromones, config.params)
        for u, v, kind, value in updates:
            log.append(f"PHERO,{tick},{u},{v},{kind.value},{value:.9g}")
        metrics.confirmation_hops_per_tick.append(len(updates))

        spawned, outcomes = advance_packets(inflight, topo, config.detector, detect_rng)
        for out in outcomes:
            log.append(f"PKT,{tick},{out.event},{out.packet_id},{out.node}")
        inflight.confirmations.extend(spawned)

        log.append(f"FIELD,{tick},{_field_digest(pheromones)}")

        for ant in ants:
            ant_step(
                ant, topo, pheromones, config.params,
                ant_rngs[ant.ant_id], tick, config.ant_choice,
            )
            log.append(f"ANT,{tick},{ant.ant_id},{ant.location},{ant.mode.value}")

        for ant in ants:
            for node, dtick in collect_declarations(ant):
                log.append(f"DECL,{dtick},{ant.ant_id},{node}")
                if node in infection.infected:
                    if node not in declared_true:
                        declared_true.add(node)
                        metrics.first_declaration_tick[node] = dtick
                elif node not in declared_false:
                    declared_false.add(node)
                    metrics.false_declarations.append((node, dtick))

    metrics.infection_tick = dict(infection.infection_tick)
    if infection.infected and infection.infected <= declared_true:
        metrics.all_identified_tick = max(
            metrics.first_declaration_tick[n] for n in infection.infected
        )
    return metrics, log


def generate_random_topology(
    node_count: int, extra_edge_prob: float, rng: random.Random
) -> NetworkTopology:
    """Random connected graph: a random spanning tree plus every remaining
    node pair independently with extra_edge_prob."""
    if node_count < 2:
        raise InvalidConfig(f"node_count must be >= 2, got {node_count}")
    if not 0.0 <= extra_edge_prob <= 1.0:
        raise InvalidConfig(f"extra_edge_prob must be in [0, 1], got {extra_edge_prob}")
    order = list(range(node_count))
    rng.shuffle(order)
    edges: set[tuple[int, int]] = set()
    for i in range(1, node_count):
        a, b = order[i], order[rng.randrange(i)]
        edges.add((a, b) if a < b else (b, a))
    for a in range(node_count):
        for b in range(a + 1, node_count):
            if (a, b) not in edges and rng.random() < extra_edge_prob:
                edges.add((a, b))
    return NetworkTopology.from_edges(node_count, sorted(edges))


@dataclass
class BandwidthStats:
    ant_moves: int = 0
    declarations: int = 0
    confirmation_hops: int = 0

    @property
    def agent_total(self) -> int:
        """Traffic attributable to the agents themselves; confirmations are
        part of the surrounding confirmation protocol, not agent overhead."""
        return self.ant_moves + self.declarations


def compute_bandwidth_stats(log: EventLog) -> dict[int, BandwidthStats]:
    """Per-tick traffic accounting recovered from the event log."""
    stats: dict[int, BandwidthStats] = {}
    for line in log:
        tag, tick_s, _ = line.split(",", 2)
        tick = int(tick_s)
        per_tick = stats.get(tick)
        if per_tick is None:
            per_tick = stats[tick] = BandwidthStats()
        if tag == "ANT":
            per_tick.ant_moves += 1
        elif tag == "DECL":
            per_tick.declarations += 1
        elif tag == "PHERO":
            per_tick.confirmation_hops += 1
    return stats


def metrics_to_csv(metrics: Metrics) -> str:
    """CSV summary: one row per infected node with declaration latency."""
    rows = ["node,infected_tick,declared_tick,latency"]
    for node in sorted(metrics.infection_tick):
        itick = metrics.infection_tick[node]
        dtick = metrics.first_declaration_tick.get(node)
        if dtick is None:
            rows.append(f"{node},{itick},,")
        else:
            rows.append(f"{node},{itick},{dtick},{dtick - itick}")
    return "\n".join(rows) + "\n"

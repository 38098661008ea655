"""Per-tick traffic generation: background packets plus attack packets from
infected nodes.

Infection itself is scripted; a malicious packet reaching a node never
infects it, which keeps the ground truth exact for metrics.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .topology import NetworkTopology, Route, shortest_route


class AlreadyInfected(Exception):
    pass


class NotInfected(Exception):
    pass


@dataclass
class Packet:
    id: int
    source: int
    destination: int
    malicious: bool
    route: Route
    position: int = 0


@dataclass
class InfectionState:
    """Which nodes are infected, and since which tick."""

    infected: set[int] = field(default_factory=set)
    infection_tick: dict[int, int] = field(default_factory=dict)

    def infect(self, node: int, tick: int) -> None:
        if node in self.infected:
            raise AlreadyInfected(f"node {node} is already infected")
        self.infected.add(node)
        self.infection_tick[node] = tick

    def disinfect(self, node: int) -> None:
        if node not in self.infected:
            raise NotInfected(f"node {node} is not infected")
        self.infected.remove(node)
        del self.infection_tick[node]


@dataclass(frozen=True)
class TrafficRates:
    """Fixed integer emission rates per tick."""

    good_packets_per_tick: int = 50
    attack_packets_per_infected_per_tick: int = 3

    def __post_init__(self):
        if self.good_packets_per_tick < 0:
            raise ValueError("good_packets_per_tick must be >= 0")
        if self.attack_packets_per_infected_per_tick < 1:
            raise ValueError("attack_packets_per_infected_per_tick must be >= 1")


def _random_other(rng: random.Random, node_count: int, exclude: int) -> int:
    # exactly one draw regardless of outcome, so the stream stays aligned
    d = rng.randrange(node_count - 1)
    return d + 1 if d >= exclude else d


def generate_tick_traffic(
    topology: NetworkTopology,
    infection: InfectionState,
    rates: TrafficRates,
    rng: random.Random,
    first_id: int,
) -> list[Packet]:
    """Packets entering the network this tick.

    Good packets come first with uniform random distinct endpoints, then each
    infected node (ascending id) emits its attack packets toward uniform
    random other nodes.  Every packet starts at position 0 on its
    minimum-hop route.  Ids are assigned sequentially from first_id.
    """
    n = topology.node_count
    packets: list[Packet] = []
    pid = first_id
    for _ in range(rates.good_packets_per_tick):
        src = rng.randrange(n)
        dst = _random_other(rng, n, src)
        packets.append(Packet(pid, src, dst, False, shortest_route(topology, src, dst)))
        pid += 1
    for node in sorted(infection.infected):
        for _ in range(rates.attack_packets_per_infected_per_tick):
            dst = _random_other(rng, n, node)
            packets.append(Packet(pid, node, dst, True, shortest_route(topology, node, dst)))
            pid += 1
    return packets

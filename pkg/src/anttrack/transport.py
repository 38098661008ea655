"""One-hop-per-tick movement of packets and confirmation packets.

A packet that is detected or delivered spawns exactly one confirmation,
routed back toward the packet's source over the reversed portion of the
path it actually traveled.  Confirmations update the directed pheromone
state of every connection they traverse: bad confirmations boost it, clean
confirmations decay it.  That direction of travel is what makes the
resulting trails point at attack sources.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .detection import DetectorModel, Verdict, inspect_at_hop
from .pheromone import PheromoneEvent, PheromoneField, PheromoneParams
from .topology import NetworkTopology, Route
from .traffic import Packet


@dataclass
class ConfirmationPacket:
    kind: PheromoneEvent
    route: Route
    for_packet: int
    position: int = 0


@dataclass
class InFlight:
    """Everything currently traveling through the network."""

    packets: list[Packet] = field(default_factory=list)
    confirmations: list[ConfirmationPacket] = field(default_factory=list)


@dataclass(frozen=True)
class PacketOutcome:
    """Terminal event for one packet: 'detected' or 'delivered' at a node."""

    packet_id: int
    event: str
    node: int


def advance_packets(
    state: InFlight,
    topology: NetworkTopology,
    detector: DetectorModel,
    rng: random.Random,
) -> tuple[list[ConfirmationPacket], list[PacketOutcome]]:
    """Move every packet one hop and run the detector at the new hop.

    Detection removes the packet and spawns a bad confirmation from the
    detecting node back over the reversed traversed prefix.  Delivery
    (including a malicious packet that evaded every check: the destination
    believes it is clean) removes the packet and spawns a clean confirmation
    over the full reverse route.  Spawned confirmations are returned, not
    inserted, so they start moving only on the next tick.
    """
    survivors: list[Packet] = []
    spawned: list[ConfirmationPacket] = []
    outcomes: list[PacketOutcome] = []
    for pkt in state.packets:
        pkt.position += 1
        node = pkt.route[pkt.position]
        verdict = inspect_at_hop(pkt, node, detector, rng)
        if verdict is Verdict.MALICIOUS_DETECTED:
            back = tuple(reversed(pkt.route[: pkt.position + 1]))
            spawned.append(ConfirmationPacket(PheromoneEvent.BAD, back, pkt.id))
            outcomes.append(PacketOutcome(pkt.id, "detected", node))
            continue
        if node == pkt.destination:
            back = tuple(reversed(pkt.route))
            spawned.append(ConfirmationPacket(PheromoneEvent.GOOD, back, pkt.id))
            outcomes.append(PacketOutcome(pkt.id, "delivered", node))
            continue
        survivors.append(pkt)
    state.packets = survivors
    return spawned, outcomes


def advance_confirmations(
    state: InFlight, pheromones: PheromoneField, params: PheromoneParams
) -> list[tuple[int, int, PheromoneEvent, float]]:
    """Move every confirmation one hop, updating the pheromone state of the
    directed connection it traverses.  Returns one (from, to, kind, new
    value) record per traversal; confirmations that reach the end of their
    route are removed.
    """
    survivors: list[ConfirmationPacket] = []
    updates: list[tuple[int, int, PheromoneEvent, float]] = []
    for conf in state.confirmations:
        u = conf.route[conf.position]
        v = conf.route[conf.position + 1]
        if conf.kind is PheromoneEvent.BAD:
            new_value = pheromones.apply_bad(u, v, params)
        else:
            new_value = pheromones.apply_good(u, v, params)
        updates.append((u, v, conf.kind, new_value))
        conf.position += 1
        if conf.position < len(conf.route) - 1:
            survivors.append(conf)
    state.confirmations = survivors
    return updates

"""Packet-level simulator of pheromone-trail identification of infected
network nodes.

Connections carry a scalar pheromone value updated by confirmation packets
traveling back toward each data packet's source; lightweight agents follow
value trails above a threshold and declare the node where a trail ends as
infected.
"""

from .ant import AntMode, AntState, Declare, Move, ant_step, collect_declarations
from .detection import DetectorModel, Verdict, inspect_at_hop
from .engine import (
    BandwidthStats,
    EventLog,
    InvalidConfig,
    Metrics,
    SimulationConfig,
    compute_bandwidth_stats,
    derive_rng,
    generate_random_topology,
    metrics_to_csv,
    run,
)
from .pheromone import (
    NotAConnection,
    PheromoneEvent,
    PheromoneField,
    PheromoneParams,
    PheromoneState,
    closed_form_value,
)
from .topology import (
    DisconnectedGraph,
    DuplicateEdge,
    MalformedSpec,
    NetworkTopology,
    NoRoute,
    Route,
    SameNode,
    SelfLoop,
    TopologyError,
    dump_topology,
    is_valid_route,
    load_topology,
    reverse_route,
    shortest_route,
)
from .traffic import (
    AlreadyInfected,
    InfectionState,
    NotInfected,
    Packet,
    TrafficRates,
    generate_tick_traffic,
)
from .transport import (
    ConfirmationPacket,
    InFlight,
    PacketOutcome,
    advance_confirmations,
    advance_packets,
)

__version__ = "0.1.0"

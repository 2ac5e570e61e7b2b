"""Deterministic discrete-event model of the security-processor dataflow.

Every packet passes five stages in order: ingress transfer, write DMA, crypto,
read DMA, egress transfer.  Forward packets carry plaintext from the system
side toward the network; reverse packets carry ciphertext the other way.  The
three topologies differ only in which stages contend for shared resources:

* dual-interface: forward and reverse paths own disjoint interfaces, DMA
  channels and crypto engines; the only serialization is per-stage pipelining
  within a direction.
* split-bus-single-pci: one write bus and one read bus each carry both
  directions' DMA transfers, and a single shared channel carries forward
  egress plus reverse ingress; the remaining interfaces are private.
* shared-bidirectional-bus: every ingress, egress and DMA transfer in both
  directions serializes on one bus.

Shared resources arbitrate greedily: first by ready time, ties broken
forward-direction-first, then lower packet id.  Stages never buffer-block
(memory between stages is assumed ample), so a stage frees as soon as its
packet's service completes.  Times are integer nanoseconds; durations round
up so completion times are conservative.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field, replace
from enum import Enum


class Topology(str, Enum):
    DUAL_INTERFACE = "dual-interface"
    SPLIT_BUS_SINGLE_PCI = "split-bus-single-pci"
    SHARED_BIDIRECTIONAL_BUS = "shared-bidirectional-bus"


class Direction(str, Enum):
    FORWARD = "forward"
    REVERSE = "reverse"


class Stage(str, Enum):
    INGRESS = "ingress-transfer"
    WRITE_DMA = "write-dma"
    CRYPTO = "crypto"
    READ_DMA = "read-dma"
    EGRESS = "egress-transfer"


STAGE_ORDER: tuple[Stage, ...] = (
    Stage.INGRESS,
    Stage.WRITE_DMA,
    Stage.CRYPTO,
    Stage.READ_DMA,
    Stage.EGRESS,
)

_DIR_PRIORITY = {Direction.FORWARD: 0, Direction.REVERSE: 1}


@dataclass(frozen=True)
class SimConfig:
    """Workload and timing parameters for one simulation run.

    ``reconfig_delay`` is the one-time cost of loading the selected suite
    before any data moves; ``key_exchange_delay`` is the one-time session
    setup that follows it.  Both default to 0 and simply offset the start of
    the timeline.  ``crypto_gbps_forward`` / ``crypto_gbps_reverse``
    override the per-engine rate; unset engines run at ``suite_throughput``.
    """

    topology: Topology
    packet_size: int  # bits
    n_forward_packets: int
    n_reverse_packets: int
    bus_bandwidth: float  # Gbps per bus/interface
    suite_throughput: float  # Gbps, composed rate of the selected suite
    dma_setup: int = 0  # ns added to every transfer
    reconfig_delay: int = 0  # ns, one-time
    key_exchange_delay: int = 0  # ns, one-time
    crypto_gbps_forward: float | None = None
    crypto_gbps_reverse: float | None = None

    def __post_init__(self) -> None:
        if not isinstance(self.topology, Topology):
            object.__setattr__(self, "topology", Topology(self.topology))
        if self.packet_size <= 0:
            raise ValueError(f"packet_size must be positive, got {self.packet_size}")
        if self.n_forward_packets < 0 or self.n_reverse_packets < 0:
            raise ValueError("packet counts must be >= 0")
        if not self.bus_bandwidth > 0:
            raise ValueError(f"bus_bandwidth must be positive, got {self.bus_bandwidth}")
        if not self.suite_throughput > 0:
            raise ValueError(f"suite_throughput must be positive, got {self.suite_throughput}")
        for label, value in (
            ("dma_setup", self.dma_setup),
            ("reconfig_delay", self.reconfig_delay),
            ("key_exchange_delay", self.key_exchange_delay),
        ):
            if value < 0:
                raise ValueError(f"{label} must be >= 0, got {value}")
        for label, value in (
            ("crypto_gbps_forward", self.crypto_gbps_forward),
            ("crypto_gbps_reverse", self.crypto_gbps_reverse),
        ):
            if value is not None and not value > 0:
                raise ValueError(f"{label} must be positive, got {value}")

    def crypto_rate(self, direction: Direction) -> float:
        if direction is Direction.FORWARD and self.crypto_gbps_forward is not None:
            return self.crypto_gbps_forward
        if direction is Direction.REVERSE and self.crypto_gbps_reverse is not None:
            return self.crypto_gbps_reverse
        return self.suite_throughput


@dataclass(frozen=True)
class StageEvent:
    packet_id: int
    direction: Direction
    stage: Stage
    resource: str
    start: int  # ns
    end: int  # ns


@dataclass(frozen=True)
class PacketStats:
    direction: Direction
    packet_id: int
    first_start: int  # ns, ingress start
    completion: int  # ns, egress end
    latency: int  # ns, completion - first_start


@dataclass(frozen=True)
class SimResult:
    config: SimConfig
    events: tuple[StageEvent, ...]
    makespan: int  # ns, end of the last event (0 for an empty workload)
    utilization: dict[str, float] = field(default_factory=dict)
    packets: tuple[PacketStats, ...] = ()


@dataclass(frozen=True)
class TopologyComparison:
    """Results of one workload run under every topology."""

    results: tuple[SimResult, ...]
    ranking: tuple[tuple[Topology, int], ...]  # (topology, makespan), fastest first


def _stage_resource(topology: Topology, direction: Direction, stage: Stage) -> str:
    fwd = direction is Direction.FORWARD
    if stage is Stage.CRYPTO:
        return "ce1" if fwd else "ce2"
    if topology is Topology.DUAL_INTERFACE:
        return {
            (True, Stage.INGRESS): "pci_rx",
            (True, Stage.WRITE_DMA): "wdma_fwd",
            (True, Stage.READ_DMA): "rdma_fwd",
            (True, Stage.EGRESS): "eth_tx",
            (False, Stage.INGRESS): "eth_rx",
            (False, Stage.WRITE_DMA): "wdma_rev",
            (False, Stage.READ_DMA): "rdma_rev",
            (False, Stage.EGRESS): "pci_tx",
        }[(fwd, stage)]
    if topology is Topology.SPLIT_BUS_SINGLE_PCI:
        if stage is Stage.WRITE_DMA:
            return "write_bus"
        if stage is Stage.READ_DMA:
            return "read_bus"
        # forward egress and reverse ingress squeeze through the one shared
        # channel; the opposite interface transfers remain private
        if (fwd and stage is Stage.EGRESS) or (not fwd and stage is Stage.INGRESS):
            return "pci"
        return "ingress_fwd" if fwd else "egress_rev"
    return "bus"


def _ceil_div_ns(bits: int, gbps: float, setup: int = 0) -> int:
    # Gbps == bits/ns, so bits / gbps is already nanoseconds
    return math.ceil(bits / gbps) + setup


def _stage_duration(config: SimConfig, direction: Direction, stage: Stage) -> int:
    if stage is Stage.CRYPTO:
        return _ceil_div_ns(config.packet_size, config.crypto_rate(direction))
    return _ceil_div_ns(config.packet_size, config.bus_bandwidth, config.dma_setup)


def run_simulation(config: SimConfig) -> SimResult:
    """Schedule every packet's five stages and return the full event timeline."""
    t0 = config.reconfig_delay + config.key_exchange_delay
    workload = [
        (direction, pid)
        for direction, count in (
            (Direction.FORWARD, config.n_forward_packets),
            (Direction.REVERSE, config.n_reverse_packets),
        )
        for pid in range(count)
    ]
    if not workload:
        return SimResult(config=config, events=(), makespan=0)

    resource_of = {
        (direction, stage): _stage_resource(config.topology, direction, stage)
        for direction, _ in workload
        for stage in STAGE_ORDER
    }
    duration_of = {
        (direction, stage): _stage_duration(config, direction, stage)
        for direction, _ in workload
        for stage in STAGE_ORDER
    }

    # waiting[resource]: heap of (ready, direction priority, packet id, stage idx)
    waiting: dict[str, list[tuple[int, int, int, int]]] = {}
    busy_until: dict[str, int] = {}
    completions: list[tuple[int, int, int, int]] = []  # (end, dirpri, pid, stage idx)
    events: list[StageEvent] = []

    def enqueue(direction: Direction, pid: int, stage_idx: int, ready: int) -> None:
        resource = resource_of[(direction, STAGE_ORDER[stage_idx])]
        heapq.heappush(
            waiting.setdefault(resource, []),
            (ready, _DIR_PRIORITY[direction], pid, stage_idx),
        )

    def start_pending(now: int, resources) -> None:
        for resource in resources:
            queue = waiting.get(resource)
            while queue and busy_until.get(resource, 0) <= now:
                ready, dirpri, pid, stage_idx = heapq.heappop(queue)
                direction = Direction.FORWARD if dirpri == 0 else Direction.REVERSE
                stage = STAGE_ORDER[stage_idx]
                end = now + duration_of[(direction, stage)]
                busy_until[resource] = end
                events.append(
                    StageEvent(
                        packet_id=pid,
                        direction=direction,
                        stage=stage,
                        resource=resource,
                        start=now,
                        end=end,
                    )
                )
                heapq.heappush(completions, (end, dirpri, pid, stage_idx))

    for direction, pid in workload:
        enqueue(direction, pid, 0, t0)
    start_pending(t0, list(waiting))

    while completions:
        now = completions[0][0]
        touched = set()
        while completions and completions[0][0] == now:
            _, dirpri, pid, stage_idx = heapq.heappop(completions)
            direction = Direction.FORWARD if dirpri == 0 else Direction.REVERSE
            touched.add(resource_of[(direction, STAGE_ORDER[stage_idx])])
            if stage_idx + 1 < len(STAGE_ORDER):
                enqueue(direction, pid, stage_idx + 1, now)
                touched.add(resource_of[(direction, STAGE_ORDER[stage_idx + 1])])
        start_pending(now, sorted(touched))

    makespan = max(e.end for e in events)
    busy: dict[str, int] = {}
    for e in events:
        busy[e.resource] = busy.get(e.resource, 0) + (e.end - e.start)
    utilization = {r: busy[r] / makespan for r in sorted(busy)} if makespan else {}

    stats = []
    for direction, pid in workload:
        mine = [e for e in events if e.direction is direction and e.packet_id == pid]
        first = min(e.start for e in mine)
        last = max(e.end for e in mine)
        stats.append(
            PacketStats(
                direction=direction,
                packet_id=pid,
                first_start=first,
                completion=last,
                latency=last - first,
            )
        )
    return SimResult(
        config=config,
        events=tuple(events),
        makespan=makespan,
        utilization=utilization,
        packets=tuple(stats),
    )


def compare_topologies(base: SimConfig) -> TopologyComparison:
    """Run the same workload under all three topologies; fastest ranked first."""
    results = tuple(
        run_simulation(replace(base, topology=topology)) for topology in Topology
    )
    order = {topology: i for i, topology in enumerate(Topology)}
    ranking = tuple(
        (r.config.topology, r.makespan)
        for r in sorted(results, key=lambda r: (r.makespan, order[r.config.topology]))
    )
    return TopologyComparison(results=results, ranking=ranking)

"""
Sequential networks: BLIF-lite I/O, elaboration and latch splitting
"""
from .blif import parse_blif_lite, read_blif_lite, write_blif_lite
from .elaborate import (
    OutputFunction,
    PartitionedMachine,
    cs_name,
    elaborate,
    machine_from_network,
    machine_layout,
    ns_name,
)
from .generate import counter_family, random_network
from .network import Gate, Latch, Network, check_structure, output_label, simulate
from .split import SplitResult, compose_split, latch_split, parse_split_spec

__all__ = [
    "Gate",
    "Latch",
    "Network",
    "OutputFunction",
    "PartitionedMachine",
    "SplitResult",
    "check_structure",
    "compose_split",
    "counter_family",
    "cs_name",
    "elaborate",
    "latch_split",
    "machine_from_network",
    "machine_layout",
    "ns_name",
    "output_label",
    "parse_blif_lite",
    "parse_split_spec",
    "random_network",
    "read_blif_lite",
    "simulate",
    "write_blif_lite",
]

"""
Symbolic relations over partitioned machines
"""
from .conformance import conformance, conformance_parts, undefined_labels
from .image import Schedule, StateSet, fixpoint_reach, image, make_schedule, reachable, schedule_valid
from .monolithic import MonolithicRelation, build_monolithic
from .partitions import internal_parts, output_parts, transition_parts

__all__ = [
    "MonolithicRelation",
    "Schedule",
    "StateSet",
    "build_monolithic",
    "conformance",
    "conformance_parts",
    "fixpoint_reach",
    "image",
    "internal_parts",
    "make_schedule",
    "output_parts",
    "reachable",
    "schedule_valid",
    "transition_parts",
    "undefined_labels",
]

"""
Sequential network model: primary inputs, primary outputs, latches and
single-output gates described by phase-1 cube covers.
"""
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field, field_validator

from app.core.errors import FormatError

Bits = Dict[str, int]


class Latch(BaseModel):
    model_config = ConfigDict(frozen=True)

    data_in: str
    state: str
    init: int = Field(default=0, ge=0, le=1)


class Gate(BaseModel):
    """A single-output gate; the function is the OR of its cover rows"""
    model_config = ConfigDict(frozen=True)

    output: str
    inputs: Tuple[str, ...] = ()
    cover: Tuple[str, ...] = ()

    @field_validator("cover")
    @classmethod
    def _rows_match_inputs(cls, cover, info):
        width = len(info.data.get("inputs", ()))
        for row in cover:
            if len(row) != width or any(ch not in "01-" for ch in row):
                raise ValueError(f"cover row '{row}' does not match {width} gate inputs")
        return cover

    def evaluate(self, values: Mapping[str, int]) -> int:
        args = [values[name] for name in self.inputs]
        for row in self.cover:
            if all(ch == "-" or int(ch) == bit for ch, bit in zip(row, args)):
                return 1
        return 0

    @classmethod
    def buffer(cls, output: str, source: str) -> "Gate":
        return cls(output=output, inputs=(source,), cover=("1",))


class Network(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str = "unnamed"
    inputs: Tuple[str, ...] = ()
    outputs: Tuple[str, ...] = ()
    latches: Tuple[Latch, ...] = ()
    gates: Tuple[Gate, ...] = ()

    @property
    def latch_names(self) -> List[str]:
        return [latch.state for latch in self.latches]

    @property
    def init_state(self) -> Bits:
        return {latch.state: latch.init for latch in self.latches}

    def latch(self, state: str) -> Latch:
        for latch in self.latches:
            if latch.state == state:
                return latch
        raise KeyError(state)

    def drivers(self) -> Dict[str, Gate]:
        return {gate.output: gate for gate in self.gates}

    def gate_order(self) -> List[Gate]:
        """Gates in topological order; the network must be acyclic"""
        graph = gate_graph(self)
        drivers = self.drivers()
        try:
            order = list(nx.topological_sort(graph))
        except nx.NetworkXUnfeasible:
            raise FormatError("combinational cycle") from None
        return [drivers[name] for name in order if name in drivers]

    def output_labels(self) -> List[str]:
        return [output_label(self.inputs, name) for name in self.outputs]


def output_label(inputs: Iterable[str], name: str) -> str:
    """Label name of a primary output, kept apart from an input of the same name"""
    return f"{name}.o" if name in set(inputs) else name


def gate_graph(network: Network) -> nx.DiGraph:
    """Directed graph from each gate input signal to the gate output"""
    graph = nx.DiGraph()
    for gate in network.gates:
        graph.add_node(gate.output)
        for source in gate.inputs:
            graph.add_edge(source, gate.output)
    return graph


def check_structure(network: Network, lines: Optional[Mapping[str, int]] = None) -> None:
    """Raise FormatError unless every signal is defined once, used signals exist
    and the combinational part is acyclic. `lines` maps signals to source lines."""
    lines = lines or {}
    defined: Dict[str, str] = {}

    def define(signal: str, kind: str) -> None:
        if signal in defined:
            raise FormatError(f"signal '{signal}' defined as {defined[signal]} and {kind}", lines.get(signal))
        defined[signal] = kind

    for name in network.inputs:
        define(name, "input")
    for latch in network.latches:
        define(latch.state, "latch")
    for gate in network.gates:
        define(gate.output, "gate output")

    for gate in network.gates:
        for source in gate.inputs:
            if source not in defined:
                raise FormatError(f"undefined signal '{source}' used by gate '{gate.output}'", lines.get(gate.output))
    for latch in network.latches:
        if latch.data_in not in defined:
            raise FormatError(f"undefined signal '{latch.data_in}' feeds latch '{latch.state}'", lines.get(latch.state))
    for name in network.outputs:
        if name not in defined:
            raise FormatError(f"undefined primary output '{name}'", lines.get(name))

    graph = gate_graph(network)
    try:
        cycle = nx.find_cycle(graph)
    except nx.NetworkXNoCycle:
        return
    signal = cycle[0][1]
    raise FormatError(f"combinational cycle through '{signal}'", lines.get(signal))


def simulate(network: Network, inputs: Mapping[str, int], state: Mapping[str, int],
             order: Optional[List[Gate]] = None) -> Tuple[Bits, Bits]:
    """One clock cycle of gate-level simulation: (outputs, next state)"""
    values: Dict[str, int] = {}
    values.update(inputs)
    values.update(state)
    for gate in order if order is not None else network.gate_order():
        values[gate.output] = gate.evaluate(values)
    outputs = {name: values[name] for name in network.outputs}
    next_state = {latch.state: values[latch.data_in] for latch in network.latches}
    return outputs, next_state


def complement_cover(rows: Iterable[str], width: int) -> List[str]:
    """Cube cover of the complement of an OR of cubes (recursive Shannon split)"""
    rows = list(rows)
    if not rows:
        return ["-" * width]
    if any(set(row) <= {"-"} for row in rows):
        return []
    column = next(k for k in range(width) if any(row[k] != "-" for row in rows))
    result = []
    for bit in "01":
        cofactor = [row[:column] + "-" + row[column + 1:] for row in rows if row[column] in ("-", bit)]
        for cube in complement_cover(cofactor, width):
            result.append(cube[:column] + bit + cube[column + 1:])
    return result

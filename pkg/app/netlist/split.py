"""
Latch splitting: cut a sequential network into a fixed component F and a
particular implementation X_p of the unknown component.

X_p keeps the chosen latches and the gates of their data-input cones. F keeps
the remaining latches, the primary outputs and the gates of their cones;
gates in both cones are duplicated. X_p reads only u wires: every primary
input or F latch state that X_p logic needs is forwarded by a buffer gate in
F. Every X latch state read by F logic leaves X_p on a v wire.
"""
from typing import Dict, Iterable, List, Set, Tuple

from pydantic import BaseModel, ConfigDict

from app.core.errors import UsageError
from app.core.logging import logger
from app.netlist.network import Gate, Network, check_structure


class SplitResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    fixed: Network
    unknown: Network
    u_signals: Tuple[str, ...]
    v_signals: Tuple[str, ...]
    # cut wire name -> signal it carries in the original network
    u_sources: Dict[str, str]
    v_sources: Dict[str, str]


def fanin_cone(network: Network, roots: Iterable[str]) -> Tuple[Set[str], Set[str]]:
    """(gate outputs, leaf signals) in the transitive fanin of `roots`"""
    drivers = network.drivers()
    gates: Set[str] = set()
    leaves: Set[str] = set()
    stack = list(roots)
    while stack:
        signal = stack.pop()
        if signal in gates or signal in leaves:
            continue
        gate = drivers.get(signal)
        if gate is None:
            leaves.add(signal)
            continue
        gates.add(signal)
        stack.extend(gate.inputs)
    return gates, leaves


def parse_split_spec(network: Network, spec: str) -> List[str]:
    """Latch names from `a,b,c` or `k:N` (first N latches in declaration order)"""
    spec = spec.strip()
    if spec.startswith("k:"):
        try:
            count = int(spec[2:])
        except ValueError:
            raise UsageError(f"malformed split spec '{spec}'") from None
        if count < 1 or count >= len(network.latches):
            raise UsageError(f"split 'k:{count}' must select between 1 and {len(network.latches) - 1} latches")
        return network.latch_names[:count]
    names = [name.strip() for name in spec.split(",") if name.strip()]
    if not names:
        raise UsageError("empty split spec")
    return names


def _fresh_name(base: str, taken: Set[str]) -> str:
    name = base
    suffix = 1
    while name in taken:
        name = f"{base}_{suffix}"
        suffix += 1
    taken.add(name)
    return name


def latch_split(n: Network, x_latches: Iterable[str]) -> SplitResult:
    x_set = set(x_latches)
    all_latches = n.latch_names
    unknown_names = sorted(x_set - set(all_latches))
    if unknown_names:
        raise UsageError(f"unknown latch(es) in split: {', '.join(unknown_names)}")
    if not x_set:
        raise UsageError("split must select at least one latch")
    if len(x_set) == len(all_latches):
        raise UsageError("split must leave at least one latch in the fixed component")

    x_latches = [latch for latch in n.latches if latch.state in x_set]
    f_latches = [latch for latch in n.latches if latch.state not in x_set]
    f_states = {latch.state for latch in f_latches}

    x_gates, x_leaves = fanin_cone(n, [latch.data_in for latch in x_latches])
    f_gates, f_leaves = fanin_cone(n, [latch.data_in for latch in f_latches] + list(n.outputs))

    taken = {s for s in n.inputs} | set(all_latches) | {g.output for g in n.gates}
    u_sources: Dict[str, str] = {}
    for signal in list(n.inputs) + [latch.state for latch in f_latches]:
        if signal in x_leaves:
            u_sources[_fresh_name(f"u_{signal}", taken)] = signal
    v_sources: Dict[str, str] = {}
    for latch in x_latches:
        if latch.state in f_leaves:
            v_sources[_fresh_name(f"v_{latch.state}", taken)] = latch.state

    fixed_gates: List[Gate] = [g for g in n.gates if g.output in f_gates]
    fixed_gates += [Gate.buffer(state, wire) for wire, state in v_sources.items()]
    fixed_gates += [Gate.buffer(wire, signal) for wire, signal in u_sources.items()]
    fixed = Network(
        name=f"{n.name}_F",
        inputs=tuple(n.inputs) + tuple(v_sources),
        outputs=tuple(n.outputs) + tuple(u_sources),
        latches=tuple(f_latches),
        gates=tuple(fixed_gates),
    )

    unknown_gates: List[Gate] = [g for g in n.gates if g.output in x_gates]
    unknown_gates += [Gate.buffer(signal, wire) for wire, signal in u_sources.items()]
    unknown_gates += [Gate.buffer(wire, state) for wire, state in v_sources.items()]
    unknown = Network(
        name=f"{n.name}_Xp",
        inputs=tuple(u_sources),
        outputs=tuple(v_sources),
        latches=tuple(x_latches),
        gates=tuple(unknown_gates),
    )
    check_structure(fixed)
    check_structure(unknown)

    shared = f_gates & x_gates
    logger.debug(
        f"[SPLIT] {n.name}: F={len(f_latches)} latches, Xp={len(x_latches)} latches, "
        f"u={len(u_sources)} v={len(v_sources)} shared_gates={len(shared)}"
    )
    return SplitResult(
        fixed=fixed,
        unknown=unknown,
        u_signals=tuple(u_sources),
        v_signals=tuple(v_sources),
        u_sources=u_sources,
        v_sources=v_sources,
    )


def compose_split(split: SplitResult) -> Network:
    """Reconnect F and X_p on the u and v wires; X_p internals get an `xp.` prefix"""
    wires = set(split.u_signals) | set(split.v_signals)

    def rename(signal: str) -> str:
        return signal if signal in wires else f"xp.{signal}"

    unknown = split.unknown
    gates = list(split.fixed.gates)
    gates += [
        Gate(output=rename(g.output), inputs=tuple(rename(s) for s in g.inputs), cover=g.cover)
        for g in unknown.gates
    ]
    latches = list(split.fixed.latches)
    latches += [
        latch.model_copy(update={"data_in": rename(latch.data_in), "state": rename(latch.state)})
        for latch in unknown.latches
    ]
    composed = Network(
        name=split.fixed.name[:-2] if split.fixed.name.endswith("_F") else split.fixed.name,
        inputs=tuple(s for s in split.fixed.inputs if s not in split.v_signals),
        outputs=tuple(s for s in split.fixed.outputs if s not in split.u_signals),
        latches=tuple(latches),
        gates=tuple(gates),
    )
    check_structure(composed)
    return composed

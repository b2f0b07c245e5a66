"""
Seeded circuit generators for tests and benchmark families.
"""
import random
from typing import List, Sequence, Tuple

from app.netlist.network import Gate, Latch, Network, check_structure

# two-input covers by name; wider gates use AND/OR/XOR style covers
_COVERS_2 = {
    "and": ("11",),
    "or": ("1-", "-1"),
    "xor": ("10", "01"),
    "nand": ("0-", "-0"),
    "nor": ("00",),
    "xnor": ("11", "00"),
    "andn": ("10",),
}


def _random_cover(rng: random.Random, width: int) -> Tuple[str, ...]:
    if width == 1:
        return rng.choice([("1",), ("0",)])
    if width == 2:
        return _COVERS_2[rng.choice(sorted(_COVERS_2))]
    kind = rng.choice(["and", "or", "mux", "random"])
    if kind == "and":
        return ("".join(rng.choice("01") for _ in range(width)),)
    if kind == "or":
        return tuple("-" * k + rng.choice("01") + "-" * (width - k - 1) for k in range(width))
    if kind == "mux" and width == 3:
        return ("11-", "0-1")
    rows = {"".join(rng.choice("01-") for _ in range(width)) for _ in range(rng.randint(1, 3))}
    return tuple(sorted(rows))


def _gate(rng: random.Random, name: str, pool: Sequence[str], max_fanin: int) -> Gate:
    width = rng.randint(1, min(max_fanin, len(pool)))
    inputs = tuple(rng.sample(list(pool), width))
    return Gate(output=name, inputs=inputs, cover=_random_cover(rng, width))


def random_network(seed: int, n_inputs: int = 2, n_outputs: int = 1, n_latches: int = 3,
                   n_gates: int = 4, max_fanin: int = 3, name: str = "") -> Network:
    """A random acyclic sequential network with random latch initial values"""
    rng = random.Random(seed)
    inputs = [f"in{k}" for k in range(n_inputs)]
    states = [f"l{k}" for k in range(n_latches)]
    pool: List[str] = inputs + states
    gates: List[Gate] = []
    for k in range(n_gates):
        gate = _gate(rng, f"g{k}", pool, max_fanin)
        gates.append(gate)
        pool.append(gate.output)
    latches = []
    for k, state in enumerate(states):
        gate = _gate(rng, f"d{k}", pool, max_fanin)
        gates.append(gate)
        latches.append(Latch(data_in=gate.output, state=state, init=rng.randint(0, 1)))
    outputs = []
    for k in range(n_outputs):
        gate = _gate(rng, f"out{k}", pool, max_fanin)
        gates.append(gate)
        outputs.append(gate.output)
    network = Network(
        name=name or f"rand{seed}",
        inputs=tuple(inputs),
        outputs=tuple(outputs),
        latches=tuple(latches),
        gates=tuple(gates),
    )
    check_structure(network)
    return network


def counter_family(n_latches: int, n_inputs: int = 2) -> Network:
    """An n-bit enabled counter whose carry chain mixes in a second input.

    Bit k toggles when the enable input and every lower bit are 1; the second
    input clears bit 0. The single output is the parity of the count.
    """
    inputs = ["en", "clr"] + [f"in{k}" for k in range(2, n_inputs)]
    gates: List[Gate] = []
    latches: List[Latch] = []
    carry = "en"
    for k in range(n_latches):
        state = f"c{k}"
        data = f"d{k}"
        if k == 0:
            gates.append(Gate(output=data, inputs=(state, carry, "clr"), cover=("100", "010")))
        else:
            gates.append(Gate(output=data, inputs=(state, carry), cover=("10", "01")))
        next_carry = f"k{k}"
        gates.append(Gate(output=next_carry, inputs=(carry, state), cover=("11",)))
        carry = next_carry
        latches.append(Latch(data_in=data, state=state, init=0))
    parity = latches[0].state
    for k in range(1, n_latches):
        name = f"p{k}"
        gates.append(Gate(output=name, inputs=(parity, latches[k].state), cover=("10", "01")))
        parity = name
    gates.append(Gate.buffer("par", parity))
    network = Network(
        name=f"counter{n_latches}",
        inputs=tuple(inputs),
        outputs=("par",),
        latches=tuple(latches),
        gates=tuple(gates),
    )
    check_structure(network)
    return network

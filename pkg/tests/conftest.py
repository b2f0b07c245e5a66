import random
from pathlib import Path

import pytest

from app.automata import Edge, ExplicitAutomaton, ExplicitState, merge_edges
from app.core.metrics import metrics
from app.dd import Manager, varset
from app.netlist import Gate, Network, SplitResult, latch_split, parse_blif_lite, random_network

CIRCUITS = Path(__file__).resolve().parent.parent / "circuits"


@pytest.fixture(autouse=True)
def clean_metrics():
    metrics.reset_metrics()
    yield


@pytest.fixture
def circuits_dir() -> Path:
    return CIRCUITS


@pytest.fixture
def twolatch_text() -> str:
    return (CIRCUITS / "twolatch.blif").read_text()


@pytest.fixture
def twolatch(twolatch_text) -> Network:
    return parse_blif_lite(twolatch_text)


PASSTHROUGH_BLIF = """\
.model passthrough
.inputs i
.outputs o
.latch na a 0
.latch nb b 0
.names i o
1 1
.names i b na
1- 1
-1 1
.names a nb
0 1
.end
"""


@pytest.fixture
def passthrough() -> Network:
    """Two latches that never reach the output: o = i"""
    return parse_blif_lite(PASSTHROUGH_BLIF)


@pytest.fixture
def s27_text() -> str:
    return (CIRCUITS / "s27.blif").read_text()


@pytest.fixture
def s27(s27_text) -> Network:
    return parse_blif_lite(s27_text)


def random_split(network: Network, rng: random.Random):
    """A non-empty proper subset of the latches"""
    names = network.latch_names
    count = rng.randint(1, len(names) - 1)
    return sorted(rng.sample(names, count))


def random_instance(seed: int, max_latches: int = 4):
    """(network, x_latches) small enough for every flow and the oracle"""
    rng = random.Random(seed)
    network = random_network(
        seed,
        n_inputs=rng.randint(1, 2),
        n_outputs=rng.randint(1, 2),
        n_latches=rng.randint(2, max_latches),
        n_gates=rng.randint(1, 4),
        max_fanin=3,
    )
    return network, random_split(network, rng)


def random_explicit(seed: int, max_states: int = 6, labels=("a", "b")) -> ExplicitAutomaton:
    """A random (usually nondeterministic, incomplete) automaton over `labels`"""
    rng = random.Random(seed)
    m = Manager(list(labels))
    order = [m.id_of(name) for name in labels]
    n = rng.randint(1, max_states)
    states = tuple(ExplicitState(accepting=rng.random() < 0.5) for _ in range(n))
    edges = []
    for src in range(n):
        for _ in range(rng.randint(0, 3)):
            cube = {v: rng.randint(0, 1) for v in order if rng.random() < 0.7}
            edges.append(Edge(src, m.cube(cube), rng.randrange(n)))
    return ExplicitAutomaton(
        manager=m,
        label_vars=varset(order),
        states=states,
        initial=0,
        edges=tuple(merge_edges(edges)),
    )


def constant_output_split(network: Network, x_latches, value: int) -> SplitResult:
    """The latch split of `network` with every primary output of F tied to `value`"""
    split = latch_split(network, x_latches)
    gates = [gate for gate in split.fixed.gates if gate.output not in network.outputs]
    gates += [Gate(output=o, cover=("",) if value else ()) for o in network.outputs]
    fixed = split.fixed.model_copy(update={"gates": tuple(gates)})
    return split.model_copy(update={"fixed": fixed})

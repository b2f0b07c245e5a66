import itertools

import pytest

from app.core.errors import FormatError, UsageError
from app.dd import Manager
from app.netlist import (
    Gate,
    Latch,
    Network,
    check_structure,
    compose_split,
    elaborate,
    latch_split,
    machine_from_network,
    parse_blif_lite,
    parse_split_spec,
    simulate,
    write_blif_lite,
)
from app.netlist.generate import counter_family, random_network
from app.netlist.network import complement_cover
from app.netlist.split import fanin_cone


def test_parse_twolatch(twolatch):
    assert twolatch.name == "twolatch"
    assert twolatch.inputs == ("i",)
    assert twolatch.outputs == ("o",)
    assert twolatch.latch_names == ["cs1", "cs2"]
    assert twolatch.init_state == {"cs1": 0, "cs2": 0}


def test_unknown_directive_reports_line():
    with pytest.raises(FormatError) as info:
        parse_blif_lite(".model m\n.inputs a\n.clock c\n.end\n")
    assert info.value.line == 3
    assert "line 3" in str(info.value)


def test_latch_init_defaults_to_zero():
    n = parse_blif_lite(".model m\n.inputs a\n.outputs q\n.latch a q\n.end\n")
    assert n.latches[0].init == 0


def test_continuation_and_comments():
    text = ".model m # name\n.inputs a \\\n b\n.outputs y\n.names a b y\n11 1\n.end\n"
    n = parse_blif_lite(text)
    assert n.inputs == ("a", "b")


def test_phase_zero_cover_is_complemented():
    n = parse_blif_lite(".model m\n.inputs a b\n.outputs y\n.names a b y\n11 0\n.end\n")
    gate = n.gates[0]
    for a, b in itertools.product((0, 1), repeat=2):
        assert gate.evaluate({"a": a, "b": b}) == 1 - (a & b)


def test_mixed_phases_rejected():
    with pytest.raises(FormatError):
        parse_blif_lite(".model m\n.inputs a\n.outputs y\n.names a y\n1 1\n0 0\n.end\n")


def test_constant_gate():
    n = parse_blif_lite(".model m\n.outputs y\n.names y\n1\n.end\n")
    outputs, _ = simulate(n, {}, {})
    assert outputs == {"y": 1}


@pytest.mark.parametrize(
    "text",
    [
        ".model m\n.inputs a a\n.outputs a\n.end\n",
        ".model m\n.inputs a\n.outputs y\n.names b y\n1 1\n.end\n",
        ".model m\n.inputs a\n.outputs y\n.names a z y\n11 1\n.names y z\n1 1\n.end\n",
        ".model m\n.inputs a\n.outputs nowhere\n.end\n",
    ],
)
def test_structural_errors(text):
    with pytest.raises(FormatError):
        parse_blif_lite(text)


def test_write_then_parse_preserves_behaviour(s27):
    again = parse_blif_lite(write_blif_lite(s27))
    state = s27.init_state
    for step in range(6):
        inputs = {name: (step >> k) & 1 for k, name in enumerate(s27.inputs)}
        expected = simulate(s27, inputs, state)
        assert simulate(again, inputs, state) == expected
        state = expected[1]


def test_twolatch_elaboration_matches_functions(twolatch):
    pm = machine_from_network(twolatch)
    m = pm.manager
    i, cs1, cs2 = m.named("i"), m.named("s.cs.cs1"), m.named("s.cs.cs2")
    assert pm.next_state[0] == (i & cs2)
    assert pm.next_state[1] == (~i | cs1)
    assert pm.outputs[0].func == (cs1 ^ cs2)
    assert pm.init == {m.id_of("s.cs.cs1"): 0, m.id_of("s.cs.cs2"): 0}


def test_elaborate_needs_complete_maps(twolatch):
    m = Manager(["i"])
    with pytest.raises(UsageError):
        elaborate(twolatch, m, {"i": 0}, {}, {})


def test_simulation_of_twolatch(twolatch):
    outputs, next_state = simulate(twolatch, {"i": 0}, {"cs1": 0, "cs2": 0})
    assert outputs == {"o": 0}
    assert next_state == {"cs1": 0, "cs2": 1}


def test_complement_cover_is_exact():
    rows = ["1-0", "01-"]
    complement = complement_cover(rows, 3)
    for bits in itertools.product("01", repeat=3):
        covered = any(all(c in ("-", b) for c, b in zip(row, bits)) for row in rows)
        negated = any(all(c in ("-", b) for c, b in zip(row, bits)) for row in complement)
        assert covered != negated


def test_split_twolatch(twolatch):
    split = latch_split(twolatch, ["cs2"])
    assert split.fixed.latch_names == ["cs1"]
    assert split.unknown.latch_names == ["cs2"]
    assert split.u_sources == {"u_i": "i", "u_cs1": "cs1"}
    assert split.v_sources == {"v_cs2": "cs2"}
    assert split.fixed.inputs == ("i", "v_cs2")
    assert split.fixed.outputs == ("o", "u_i", "u_cs1")
    assert split.unknown.inputs == ("u_i", "u_cs1")
    assert split.unknown.outputs == ("v_cs2",)


def test_split_rejects_bad_selections(twolatch):
    with pytest.raises(UsageError):
        latch_split(twolatch, ["missing"])
    with pytest.raises(UsageError):
        latch_split(twolatch, [])
    with pytest.raises(UsageError):
        latch_split(twolatch, ["cs1", "cs2"])


def test_split_spec_forms(s27):
    assert parse_split_spec(s27, "k:2") == ["G5", "G6"]
    assert parse_split_spec(s27, "G7, G5") == ["G7", "G5"]
    with pytest.raises(UsageError):
        parse_split_spec(s27, "k:3")
    with pytest.raises(UsageError):
        parse_split_spec(s27, "k:x")


def _run(network: Network, words, state=None):
    state = dict(state or network.init_state)
    order = network.gate_order()
    trace = []
    for inputs in words:
        outputs, state = simulate(network, inputs, state, order)
        trace.append(outputs)
    return trace


@pytest.mark.parametrize("split_spec", ["G5", "G6", "G7", "G5,G7"])
def test_composed_split_is_equivalent_to_original(s27, split_spec):
    composed = compose_split(latch_split(s27, split_spec.split(",")))
    words = [
        {name: ((step * 7 + k * 3) % 2) ^ ((step >> k) & 1) for k, name in enumerate(s27.inputs)}
        for step in range(24)
    ]
    assert _run(composed, words) == _run(s27, words)


def test_fanin_cone_of_s27(s27):
    gates, leaves = fanin_cone(s27, ["G13"])
    assert gates == {"G13", "G12"}
    assert leaves == {"G2", "G1", "G7"}


def test_generators_are_seeded():
    a = random_network(5, n_latches=4)
    b = random_network(5, n_latches=4)
    assert a == b
    check_structure(a)
    counter = counter_family(6)
    assert counter.latch_names == [f"c{k}" for k in range(6)]
    state = counter.init_state
    for _ in range(3):
        _, state = simulate(counter, {"en": 1, "clr": 0}, state)
    assert [state[f"c{k}"] for k in range(3)] == [1, 1, 0]


def test_gate_cover_validation():
    with pytest.raises(ValueError):
        Gate(output="y", inputs=("a",), cover=("11",))
    assert Gate.buffer("y", "a").evaluate({"a": 1}) == 1
    with pytest.raises(ValueError):
        Latch(data_in="d", state="q", init=2)

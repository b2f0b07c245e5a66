import pytest

from app.automata import (
    Edge,
    ExplicitAutomaton,
    ExplicitState,
    StateKind,
    SymbolicAutomaton,
    complement_det,
    complete,
    complete_explicit,
    contains,
    determinize,
    determinize_explicit,
    emit_aut,
    encode_explicit,
    equivalent,
    expand_support,
    from_machine,
    hide,
    parse_aut,
    prefix_close,
    product,
    progressive,
    to_dot,
)
from app.core.errors import DeadlineExceeded, FormatError, SubsetLimitExceeded, UsageError
from app.dd import Manager, varset
from app.netlist import machine_from_network
from tests.conftest import random_explicit


@pytest.fixture
def twolatch_automaton(twolatch):
    return from_machine(machine_from_network(twolatch))


def _labels(m, **bits):
    return {m.id_of(name): bit for name, bit in bits.items()}


def test_twolatch_automaton(twolatch_automaton):
    a = twolatch_automaton
    m = a.manager
    assert a.label_vars == varset([m.id_of("i"), m.id_of("o")])
    assert a.deterministic
    assert not a.is_complete()
    explicit = determinize(a)
    assert explicit.num_states == 3
    assert explicit.all_accepting()
    assert explicit.is_deterministic()


def test_completion_routes_undefined_labels_to_dc(twolatch_automaton):
    done = complete(twolatch_automaton)
    m = done.manager
    assert done.is_complete()
    dc, dc_next = done.cs_vars[-1], done.ns_vars[-1]
    assert m.name_of(dc).endswith(".dc")
    point = _labels(m, i=1, o=1, **{"s.cs.cs1": 0, "s.cs.cs2": 0})
    point[dc] = 0
    moves = m.cofactor(done.to, point)
    assert moves == m.var(dc_next) & m.cube({v: 0 for v in done.ns_vars[:-1]})
    assert (done.init & m.var(dc)).is_false


def test_completion_then_complement_leaves_only_dc_accepting(twolatch_automaton):
    flipped = complement_det(complete(twolatch_automaton))
    explicit = determinize(flipped)
    assert explicit.num_states == 4
    assert sum(1 for s in explicit.states if s.accepting) == 1
    assert explicit.is_complete()


def test_complement_needs_complete_deterministic(twolatch_automaton):
    with pytest.raises(UsageError):
        complement_det(twolatch_automaton)
    hidden = hide(complete(twolatch_automaton), varset([twolatch_automaton.manager.id_of("i")]))
    assert not hidden.deterministic
    with pytest.raises(UsageError):
        complement_det(hidden)


def test_hide_without_dropping_labels_is_identity(twolatch_automaton):
    assert hide(twolatch_automaton, twolatch_automaton.label_vars) is twolatch_automaton


def test_product_and_support_preconditions(twolatch_automaton):
    with pytest.raises(UsageError):
        product(twolatch_automaton, twolatch_automaton)
    with pytest.raises(UsageError):
        expand_support(twolatch_automaton, varset())


def test_subset_limit(twolatch_automaton):
    with pytest.raises(SubsetLimitExceeded):
        determinize(twolatch_automaton, subset_limit=2)


def _nondeterministic():
    m = Manager(["a"])
    a = m.named("a")
    states = (ExplicitState(False), ExplicitState(False), ExplicitState(True))
    edges = (Edge(0, m.true, 0), Edge(0, a, 1), Edge(1, a, 2))
    return ExplicitAutomaton(manager=m, label_vars=varset([0]), states=states, initial=0, edges=edges)


def test_explicit_determinization_keeps_language():
    nfa = _nondeterministic()
    dfa = determinize_explicit(nfa)
    assert dfa.is_deterministic()
    assert equivalent(nfa, dfa)
    one, zero = {0: 1}, {0: 0}
    assert dfa.accepts([zero, one, one])
    assert not dfa.accepts([one, zero])
    with pytest.raises(SubsetLimitExceeded):
        equivalent(nfa, dfa, subset_limit=1)


@pytest.mark.parametrize("seed", range(40))
def test_completion_commutes_with_determinization(seed):
    e = random_explicit(seed)
    left = complete_explicit(determinize_explicit(e))
    right = determinize_explicit(complete_explicit(e))
    assert contains(left, right)
    assert contains(right, left)


@pytest.mark.slow
def test_completion_commutes_with_determinization_suite():
    for seed in range(200):
        e = random_explicit(10_000 + seed)
        left = complete_explicit(determinize_explicit(e))
        right = determinize_explicit(complete_explicit(e))
        assert equivalent(left, right), seed


def test_containment_detects_extra_words():
    m = Manager(["a"])
    a = m.named("a")
    ones = ExplicitAutomaton(manager=m, label_vars=varset([0]), states=(ExplicitState(True),),
                             initial=0, edges=(Edge(0, a, 0),))
    anything = ExplicitAutomaton(manager=m, label_vars=varset([0]), states=(ExplicitState(True),),
                                 initial=0, edges=(Edge(0, m.true, 0),))
    assert contains(ones, anything)
    assert not contains(anything, ones)
    assert not equivalent(ones, anything)


def test_encoding_preserves_language():
    e = random_explicit(3)
    encoded = encode_explicit(e, prefix="enc")
    assert equivalent(determinize(encoded), e)


def test_prefix_close_and_progressive():
    m = Manager(["u", "v"])
    u, v = m.named("u"), m.named("v")
    states = (ExplicitState(True), ExplicitState(True), ExplicitState(False))
    edges = (
        Edge(0, ~u, 0),
        Edge(0, u & v, 0),
        Edge(0, u & ~v, 1),
        Edge(1, ~u, 1),
        Edge(1, u, 2),
    )
    e = ExplicitAutomaton(manager=m, label_vars=varset([0, 1]), states=states, initial=0, edges=edges)
    closed = prefix_close(e)
    assert closed.num_states == 2
    assert closed.all_accepting()
    # state 1 offers nothing under u=1
    pruned = progressive(closed, varset([m.id_of("u")]))
    assert pruned.num_states == 1
    assert pruned.is_u_progressive(varset([m.id_of("u")]))
    assert pruned.input_vars == varset([m.id_of("u")])


def test_progressive_on_empty_cover_empties():
    m = Manager(["u"])
    e = ExplicitAutomaton(manager=m, label_vars=varset([0]), states=(ExplicitState(True),),
                          initial=0, edges=())
    assert progressive(e, varset([0])).is_empty


def test_complete_explicit_reuses_sink_and_handles_empty():
    e = random_explicit(7)
    once = complete_explicit(e)
    twice = complete_explicit(once)
    assert once.is_complete()
    assert twice.num_states == once.num_states
    empty = ExplicitAutomaton(manager=e.manager, label_vars=e.label_vars, states=(), initial=None, edges=())
    sink_only = complete_explicit(empty, StateKind.DCA, accepting=True)
    assert sink_only.num_states == 1
    assert sink_only.initial == 0
    with pytest.raises(UsageError):
        complete_explicit(e, StateKind.NORMAL)


def test_aut_text_is_canonical(twolatch_automaton):
    explicit = complete_explicit(determinize(twolatch_automaton))
    text = emit_aut(explicit)
    again = emit_aut(parse_aut(text))
    assert text == again
    assert any(line.startswith(".kind ") and line.endswith(" DC") for line in text.splitlines())
    assert text.startswith(".aut ")
    assert text.rstrip().endswith(".end")


def test_aut_parse_errors_have_line_numbers():
    with pytest.raises(FormatError) as info:
        parse_aut(".aut x\n.labels a\n.states 1\n.initial 0\n.trans 0 11 0\n.end\n")
    assert info.value.line == 5
    with pytest.raises(FormatError):
        parse_aut(".aut x\n.labels a\n.states 1\n.initial 3\n")
    with pytest.raises(FormatError):
        parse_aut(".aut x\n.labels a\n.states 2\n.kind 0 XYZ\n")
    with pytest.raises(FormatError):
        parse_aut(".aut x\n.labels a\n.states 1\n")


def test_dot_of_completed_twolatch(twolatch_automaton):
    explicit = complete_explicit(determinize(twolatch_automaton))
    dot = to_dot(explicit)
    node_lines = [line for line in dot.splitlines() if line.strip().startswith("s") and "->" not in line]
    assert len(node_lines) == 4
    assert 'label="DC"' in dot
    assert "__start -> s0;" in dot


def test_dot_of_empty_automaton():
    m = Manager(["a"])
    empty = ExplicitAutomaton(manager=m, label_vars=varset([0]), states=(), initial=None, edges=())
    dot = to_dot(empty)
    assert 'empty [label="empty", shape=plaintext];' in dot
    assert "->" not in dot


def _two_copies(e: ExplicitAutomaton):
    """The same deterministic automaton encoded twice on one manager with disjoint state bits"""
    dfa = determinize_explicit(e)
    return encode_explicit(dfa, prefix="l"), encode_explicit(dfa, dfa.manager, prefix="r")


@pytest.mark.parametrize("seed", range(10))
def test_product_with_own_complement_accepts_nothing(seed):
    left, right = _two_copies(random_explicit(seed))
    crossed = determinize(product(left, complement_det(complete(right))))
    assert crossed.num_states > 0
    assert not any(state.accepting for state in crossed.states)


def test_product_with_own_complement_on_twolatch(twolatch_automaton):
    left, right = _two_copies(determinize(twolatch_automaton))
    crossed = determinize(product(left, complement_det(complete(right))))
    assert not any(state.accepting for state in crossed.states)


def _words(length: int, width: int):
    for bits in range(1 << (length * width)):
        yield [[(bits >> (k * width + j)) & 1 for j in range(width)] for k in range(length)]


@pytest.mark.parametrize("seed", range(6))
def test_hide_projects_words_onto_kept_labels(seed):
    e = random_explicit(seed)
    m = e.manager
    a, b = m.id_of("a"), m.id_of("b")
    hidden = determinize(hide(encode_explicit(e, prefix="h"), varset([a])))
    assert hidden.label_vars == varset([a])
    for length in range(4):
        for word in _words(length, 1):
            short = [{a: letter[0]} for letter in word]
            witnessed = any(
                e.accepts([{a: letter[0], b: choice[0]} for letter, choice in zip(word, choices)])
                for choices in _words(length, 1)
            )
            assert hidden.accepts(short) == witnessed, (seed, word)


def _third_from_last() -> SymbolicAutomaton:
    """Words over one bit whose third-from-last letter is 1: wait, saw 1, one more, accept"""
    m = Manager(["a", "q0", "q0'", "q1", "q1'"])
    a = m.named("a")
    cs, ns = [m.id_of("q0"), m.id_of("q1")], [m.id_of("q0'"), m.id_of("q1'")]

    def code(k, vs):
        return m.cube({v: (k >> j) & 1 for j, v in enumerate(vs)})

    to = (code(0, cs) & code(0, ns)) | (code(0, cs) & a & code(1, ns)) \
        | (code(1, cs) & code(2, ns)) | (code(2, cs) & code(3, ns))
    return SymbolicAutomaton(manager=m, label_vars=varset([m.id_of("a")]), cs_vars=cs, ns_vars=ns,
                             to=to, init=code(0, cs), accepting=code(3, cs), deterministic=False,
                             name="third_last")


def test_symbolic_determinization_of_third_from_last():
    nfa = _third_from_last()
    dfa = determinize(nfa)
    assert dfa.num_states == 8
    assert sum(1 for state in dfa.states if state.accepting) == 4
    assert dfa.is_deterministic() and dfa.is_complete()
    one, zero = {0: 1}, {0: 0}
    assert dfa.accepts([one, zero, zero])
    assert dfa.accepts([zero, one, one, one])
    assert not dfa.accepts([one, zero])
    assert not dfa.accepts([zero, zero, one])


@pytest.mark.parametrize("seed", range(20))
def test_symbolic_completion_commutes_with_determinization(seed):
    a = encode_explicit(random_explicit(seed), prefix="sym")
    left = complete_explicit(determinize(a))
    right = determinize(complete(a))
    assert contains(left, right)
    assert contains(right, left)


def test_deadline_stops_explicit_phases(twolatch_automaton):
    x = complete_explicit(determinize(twolatch_automaton))
    m = x.manager
    m.set_deadline(0)
    with pytest.raises(DeadlineExceeded):
        contains(x, x)
    with pytest.raises(DeadlineExceeded):
        progressive(x, varset([m.id_of("i")]))
    with pytest.raises(DeadlineExceeded):
        determinize(twolatch_automaton)
    m.set_deadline(None)
    assert contains(x, x)

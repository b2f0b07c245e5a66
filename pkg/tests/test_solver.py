import pytest

from app.automata import StateKind, emit_aut, equivalent, parse_aut
from app.automata.determinize import SubsetState
from app.core.errors import DeadlineExceeded, NodeLimitExceeded, SubsetLimitExceeded
from app.core.metrics import metrics
from app.dd import varset
from app.oracle import explicit_to_table, table_equivalent, table_solve
from app.solver import (
    VerificationContext,
    add_edge_to_universal,
    build_problem,
    find_maximality_violations,
    solve_monolithic,
    solve_partitioned,
    trim_on_violation,
    verify_solution,
)
from app.workflow import MONOLITHIC_FLOW, STEP_REGISTRY
from app.workflow.base import FlowProcessor
from tests.conftest import constant_output_split, random_instance


def _both(network, x_latches):
    p, _ = build_problem(network, x_latches)
    return p, solve_partitioned(p), solve_monolithic(p)


def test_problem_variable_layout(twolatch):
    p, split = build_problem(twolatch, ["cs2"])
    m = p.manager
    names = [m.name_of(v) for v in range(m.var_count)]
    assert names == [
        "i", "v_cs2", "u_i", "u_cs1", "o",
        "f.cs.cs1", "f.ns.cs1",
        "s.cs.cs1", "s.ns.cs1", "s.cs.cs2", "s.ns.cs2",
    ]
    assert p.roles["u"] == varset([m.id_of("u_i"), m.id_of("u_cs1")])
    assert p.solution_labels == varset(m.id_of(n) for n in ("v_cs2", "u_i", "u_cs1"))
    assert split.unknown.latch_names == ["cs2"]


def test_twolatch_flows_agree(twolatch):
    p, part, mono = _both(twolatch, ["cs2"])
    assert not part.is_empty
    assert equivalent(part.automaton, mono.automaton)
    assert part.audit() == []
    assert mono.audit() == []
    assert part.stats.flow == "partitioned"
    assert mono.stats.flow == "monolithic"
    assert part.stats.states == part.automaton.num_states
    assert part.stats.explored >= part.stats.states - 1


def test_twolatch_matches_reference(twolatch):
    p, part, _ = _both(twolatch, ["cs2"])
    reference = table_solve(twolatch, ["cs2"])
    assert table_equivalent(explicit_to_table(part.automaton), reference)


def test_twolatch_solution_verifies(twolatch):
    p, part, mono = _both(twolatch, ["cs2"])
    for csf in (part, mono):
        result = verify_solution(p, csf)
        assert result.xp_contained
        assert result.composition_contained
        assert result.particular_equivalent
        assert result.all_passed


def test_solution_survives_aut_round_trip(twolatch):
    p, part, _ = _both(twolatch, ["cs2"])
    reloaded = parse_aut(emit_aut(part.automaton))
    assert verify_solution(p, reloaded).all_passed


def test_particular_solution_is_a_progressive_member(twolatch):
    p, part, _ = _both(twolatch, ["cs2"])
    ctx = VerificationContext(p)
    xp = ctx.particular()
    assert xp.name == "twolatch_xp"
    assert sorted(xp.manager.name_of(v) for v in xp.input_vars) == ["u_cs1", "u_i"]
    assert xp.is_u_progressive(xp.input_vars)
    assert ctx.xp_contained(part.automaton)
    assert verify_solution(p, part, xp).all_passed


@pytest.mark.parametrize("split_spec", [["G7"], ["G5"], ["G6"], ["G5", "G7"]])
def test_s27_flows_agree_and_verify(s27, split_spec):
    p, part, mono = _both(s27, split_spec)
    assert equivalent(part.automaton, mono.automaton)
    assert part.audit() == []
    assert verify_solution(p, part).all_passed


def _check_instance(seed: int, max_latches: int) -> None:
    network, x_latches = random_instance(seed, max_latches)
    p, part, mono = _both(network, x_latches)
    assert part.audit() == [], (seed, x_latches)
    assert equivalent(part.automaton, mono.automaton), (seed, x_latches)
    assert table_equivalent(explicit_to_table(part.automaton), table_solve(network, x_latches)), seed
    assert verify_solution(p, part).all_passed, (seed, x_latches)


@pytest.mark.parametrize("seed", range(8))
def test_random_instances_agree(seed):
    _check_instance(seed, max_latches=3)


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(100, 150))
def test_random_instances_agree_exhaustive(seed):
    _check_instance(seed, max_latches=4)


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(200, 250))
def test_random_flows_agree_on_larger_circuits(seed):
    network, x_latches = random_instance(seed, max_latches=8)
    p, part, mono = _both(network, x_latches)
    assert equivalent(part.automaton, mono.automaton), (seed, x_latches)
    assert verify_solution(p, part).all_passed, (seed, x_latches)


@pytest.mark.parametrize("circuit,split_spec", [
    ("twolatch", ["cs2"]),
    ("s27", ["G7"]),
    ("s27", ["G5"]),
])
def test_trimming_explores_fewer_subsets(request, circuit, split_spec):
    network = request.getfixturevalue(circuit)
    p, _ = build_problem(network, split_spec)
    trimmed = solve_partitioned(p, trim=True)
    untrimmed = solve_partitioned(p, trim=False)
    assert trimmed.stats.dcn_edges > 0
    assert untrimmed.stats.explored > trimmed.stats.explored
    assert equivalent(trimmed.automaton, untrimmed.automaton)


def test_trim_on_violation_routing(twolatch):
    p, _ = build_problem(twolatch, ["cs2"])
    m = p.manager
    zeta = SubsetState(chi=m.true, id=0)
    u = m.var(m.id_of("u_i"))
    called = []

    def successors():
        called.append(1)
        return m.var(m.id_of("v_cs2"))

    everything = trim_on_violation(zeta, m.true, successors)
    assert everything.dcn.is_true and everything.live.is_false
    assert called == []

    routing = trim_on_violation(zeta, u, successors)
    assert routing.dcn == u
    assert routing.live == m.var(m.id_of("v_cs2")) & ~u
    assert called == [1]


@pytest.mark.parametrize("circuit,split_spec", [
    ("twolatch", ["cs2"]),
    pytest.param("s27", ["G7"], marks=pytest.mark.slow),
    pytest.param("s27", ["G5"], marks=pytest.mark.slow),
])
def test_maximality(request, circuit, split_spec):
    network = request.getfixturevalue(circuit)
    p, part, _ = _both(network, split_spec)
    tried, survivors = find_maximality_violations(p, part)
    assert tried > 0
    assert survivors == []


def test_enlarged_solution_fails_composition(twolatch):
    p, part, _ = _both(twolatch, ["cs2"])
    x = part.automaton
    m = x.manager
    covered = m.disjoin(edge.pred for edge in x.out_edges()[x.initial])
    order = x.label_order
    missing = next(
        {v: (bits >> k) & 1 for k, v in enumerate(order)}
        for bits in range(1 << len(order))
        if not m.eval(covered, {v: (bits >> k) & 1 for k, v in enumerate(order)})
    )
    mutant = add_edge_to_universal(x, x.initial, missing)
    assert mutant.state_of_kind(StateKind.DCA) is not None
    result = verify_solution(p, mutant)
    assert result.xp_contained
    assert not result.composition_contained
    assert not result.all_passed


def test_subset_limit(twolatch):
    p, _ = build_problem(twolatch, ["cs2"])
    with pytest.raises(SubsetLimitExceeded):
        solve_partitioned(p, subset_limit=1)
    with pytest.raises(SubsetLimitExceeded):
        solve_monolithic(p, subset_limit=1)


def test_node_limit(s27):
    with pytest.raises(NodeLimitExceeded):
        p, _ = build_problem(s27, ["G7"], node_limit=20)
        solve_partitioned(p)


def test_flow_metrics_recorded(twolatch):
    _both(twolatch, ["cs2"])
    snapshot = metrics.get_metrics()
    assert metrics.counter("solver.subset_states") > 0
    assert "solver.flow_duration_ms|flow=partitioned" in snapshot
    assert "solver.flow_duration_ms|flow=monolithic" in snapshot


def test_monolithic_execution_plan():
    processor = FlowProcessor(MONOLITHIC_FLOW, STEP_REGISTRY, {"limits": {"subset_limit": None}})
    plan = processor.get_execution_plan()
    assert [step["id"] for step in plan] == [f"{k:02d}" for k in range(1, 12)]
    assert [step["type"] for step in plan] == [
        "complete", "determinize", "complement", "support", "product", "hide",
        "determinize", "complete_explicit", "complement", "prefix_close", "progressive",
    ]


def test_monolithic_flow_traces_every_step(twolatch):
    p, _ = build_problem(twolatch, ["cs2"])
    solve_monolithic(p)
    assert metrics.counter("flow.step_total", {"flow": "monolithic", "step": "11", "status": "success"}) == 1


def test_contradicting_fixed_part_gives_empty_csf(twolatch, monkeypatch):
    # F always drives o=1 while S starts at 00 with o=0
    split = constant_output_split(twolatch, ["cs2"], value=1)
    monkeypatch.setattr("app.solver.problem.latch_split", lambda network, x_latches: split)
    p, _ = build_problem(twolatch, ["cs2"])
    part = solve_partitioned(p)
    mono = solve_monolithic(p)
    assert part.is_empty and part.automaton.initial is None
    assert mono.is_empty and mono.automaton.initial is None
    assert part.stats.explored == 1
    assert part.stats.dcn_edges == 1
    assert part.stats.states == 0


def test_output_independent_of_split_never_violates(passthrough):
    p, part, mono = _both(passthrough, ["b"])
    assert part.stats.dcn_edges == 0
    assert part.automaton.state_of_kind(StateKind.DCN) is None
    assert equivalent(part.automaton, mono.automaton)
    untrimmed = solve_partitioned(p, trim=False)
    assert untrimmed.stats.explored == part.stats.explored
    assert verify_solution(p, part).all_passed


def test_problem_records_partition_sizes(twolatch):
    p, _ = build_problem(twolatch, ["cs2"], timeout_s=60)
    assert p.manager.deadline is not None
    gauge = metrics.get_metrics()["solver.partition_nodes|name=twolatch"]
    assert gauge["type"] == "gauge" and gauge["value"] > 0


def test_deadline_stops_the_subset_loop(twolatch):
    p, _ = build_problem(twolatch, ["cs2"], timeout_s=0)
    with pytest.raises(DeadlineExceeded):
        solve_partitioned(p)
    with pytest.raises(DeadlineExceeded):
        solve_monolithic(p)

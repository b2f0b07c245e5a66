import itertools

import pytest

from app.core.errors import DeadlineExceeded, FormatError, NodeLimitExceeded, UsageError
from app.core.metrics import metrics
from app.dd import Manager, new_manager, varset


@pytest.fixture
def twolatch_manager():
    return new_manager(["i", "cs1", "cs2", "ns1", "ns2", "o"])


def test_manager_echoes_variable_order(twolatch_manager):
    assert twolatch_manager.var_count == 6
    assert twolatch_manager.order == ["i", "cs1", "cs2", "ns1", "ns2", "o"]
    assert twolatch_manager.name_of(twolatch_manager.id_of("ns2")) == "ns2"


def test_duplicate_and_unknown_names():
    with pytest.raises(FormatError):
        Manager(["a", "a"])
    m = Manager(["a"])
    with pytest.raises(UsageError):
        m.id_of("b")
    with pytest.raises(UsageError):
        m.var(5)


def test_transition_part_evaluates(twolatch_manager):
    m = twolatch_manager
    t1 = m.apply("iff", m.named("ns1"), m.apply("and", m.named("i"), m.named("cs2")))
    ids = {name: m.id_of(name) for name in ("ns1", "i", "cs2")}
    assert m.eval(t1, {ids["ns1"]: 1, ids["i"]: 1, ids["cs2"]: 1}) == 1
    assert m.eval(t1, {ids["ns1"]: 1, ids["i"]: 0, ids["cs2"]: 1}) == 0


def test_canonical_nodes_are_shared(twolatch_manager):
    m = twolatch_manager
    a, b = m.named("i"), m.named("cs1")
    assert (a & b) | (a & ~b) == a
    assert (a ^ b) == ~(a.iff(b))
    assert a.implies(b) == (~a | b)
    assert m.ite(a, b, m.false) == (a & b)


def test_func_has_no_truth_value(twolatch_manager):
    with pytest.raises(TypeError):
        bool(twolatch_manager.named("i"))


def test_cross_manager_operands_rejected(twolatch_manager):
    other = Manager(["i"])
    with pytest.raises(UsageError):
        twolatch_manager.named("i") & other.named("i")


def test_and_exists_matches_exists_of_conjunction(twolatch_manager):
    m = twolatch_manager
    f = m.named("i") | m.named("ns1")
    g = m.named("cs1").iff(m.named("ns2")) & ~m.named("o")
    qs = varset([m.id_of("i"), m.id_of("cs1")])
    assert m.and_exists(f, g, qs) == m.exists(f & g, qs)
    assert m.forall(f | g, qs) == ~m.exists(~(f | g), qs)


def test_image_of_reset_state(twolatch_manager):
    m = twolatch_manager
    i, cs1, cs2, ns1, ns2 = (m.named(n) for n in ("i", "cs1", "cs2", "ns1", "ns2"))
    t = ns1.iff(i & cs2) & ns2.iff(~i | cs1)
    zeta = ~cs1 & ~cs2
    image = m.and_exists(t, zeta, [m.id_of("i"), m.id_of("cs1"), m.id_of("cs2")])
    ids = [m.id_of("ns1"), m.id_of("ns2")]
    reached = {bits for bits in itertools.product((0, 1), repeat=2) if m.eval(image, dict(zip(ids, bits)))}
    assert reached == {(0, 0), (0, 1)}


def test_sat_count_of_transition_part(twolatch_manager):
    m = twolatch_manager
    t1 = m.named("ns1").iff(m.named("i") & m.named("cs2"))
    over = [m.id_of(n) for n in ("i", "cs1", "cs2", "ns1")]
    assert m.sat_count(t1, over) == 8
    assert len(list(m.enumerate_cubes(t1, over))) == 8
    with pytest.raises(UsageError):
        m.sat_count(t1, over[:2])


def test_support_and_cofactor(twolatch_manager):
    m = twolatch_manager
    f = m.named("i") & (m.named("cs2") | m.named("o"))
    assert m.support(f) == varset(m.id_of(n) for n in ("i", "cs2", "o"))
    assert m.cofactor(f, {m.id_of("i"): 0}).is_false
    assert m.cofactor(f, {m.id_of("i"): 1, m.id_of("o"): 1}).is_true


def test_rename_requires_compatible_order():
    m = Manager(["a", "b", "a2", "b2"])
    a, b = m.named("a"), m.named("b")
    ids = {n: m.id_of(n) for n in m.order}
    renamed = m.rename(a & ~b, {ids["a"]: ids["a2"], ids["b"]: ids["b2"]})
    assert renamed == (m.named("a2") & ~m.named("b2"))
    with pytest.raises(UsageError):
        m.rename(a & b, {ids["a"]: ids["b2"]})


def test_split_cubes_groups_by_prefix_variables():
    m = Manager(["x", "y", "q"])
    x, y, q = m.named("x"), m.named("y"), m.named("q")
    f = (x & q) | (~x & ~q) | (x & y)
    groups = m.split_cubes(f, [m.id_of("x"), m.id_of("y")])
    rebuilt = m.disjoin(m.cube(cube) & rest for cube, rest in groups)
    assert rebuilt == f
    with pytest.raises(UsageError):
        m.split_cubes(f, [m.id_of("q")])


def test_node_limit_raises():
    m = Manager(["a", "b"], node_limit=2)
    with pytest.raises(NodeLimitExceeded):
        m.named("a") & m.named("b")


def test_deadline_raises_during_node_creation():
    names = [f"x{k}" for k in range(12)]
    m = Manager(names)
    m.set_deadline(0)
    with pytest.raises(DeadlineExceeded):
        for bits in range(1 << len(names)):
            m.cube({k: (bits >> k) & 1 for k in range(len(names))})
    m.set_deadline(None)
    assert m.deadline is None


def test_deadline_checked_without_new_nodes():
    m = Manager(["a", "b", "c"])
    f = (m.named("a") & m.named("b")) | m.named("c")
    m.set_deadline(0)
    with pytest.raises(DeadlineExceeded):
        m.check_deadline()
    with pytest.raises(DeadlineExceeded):
        m.split_cubes(f, [m.id_of("a"), m.id_of("b")])
    m.set_deadline(None)
    m.check_deadline()
    assert len(m.split_cubes(f, [m.id_of("a"), m.id_of("b")])) == 3


def test_collect_garbage_and_audit(twolatch_manager):
    m = twolatch_manager
    f = m.named("i") ^ m.named("cs1") ^ m.named("o")
    before = metrics.counter("dd.cache_clears")
    m.collect_garbage()
    assert metrics.counter("dd.cache_clears") == before + 1
    assert m.audit() >= m.dag_size(f) - 2
    assert m.dag_size(f) == 7


def test_add_var_appends_below_existing():
    m = Manager(["a"])
    f = m.named("a")
    b = m.add_var("b")
    assert b == 1
    assert m.order == ["a", "b"]
    assert (f & m.var(b)) != f

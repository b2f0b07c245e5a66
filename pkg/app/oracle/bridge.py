"""
Conversion of decision-diagram based automata into reference tables.
"""
from app.automata import ExplicitAutomaton, StateKind
from app.oracle.table import TableAutomaton, check_size


def explicit_to_table(e: ExplicitAutomaton) -> TableAutomaton:
    order = e.label_order
    check_size(len(order), e.num_states)
    m = e.manager
    transitions = set()
    for edge in e.edges:
        for minterm in m.enumerate_cubes(edge.pred, order):
            transitions.add((edge.src, tuple(minterm[v] for v in order), edge.dst))
    return TableAutomaton(
        labels=tuple(e.label_names),
        states=list(range(e.num_states)),
        initial=e.initial,
        accepting={k for k, s in enumerate(e.states) if s.accepting},
        transitions=transitions,
        inputs=tuple(m.name_of(v) for v in sorted(e.input_vars)),
        kinds={k: s.kind.value for k, s in enumerate(e.states) if s.kind != StateKind.NORMAL},
    )


def table_to_aut_text(t: TableAutomaton, name: str = "oracle") -> str:
    """AUT text with one fully specified cube per letter"""
    index = {s: k for k, s in enumerate(t.states)}
    lines = [f".aut {name}", ".labels " + " ".join(t.labels)]
    if t.inputs:
        lines.append(".ilabels " + " ".join(t.inputs))
    lines.append(f".states {len(t.states)}")
    if t.initial is not None:
        lines.append(f".initial {index[t.initial]}")
    lines.append(" ".join([".accepting"] + [str(index[s]) for s in t.states if s in t.accepting]))
    for s, kind in t.kinds.items():
        if s in index:
            lines.append(f".kind {index[s]} {kind}")
    rows = sorted((index[s], "".join(map(str, a)) or "-", index[d]) for s, a, d in t.transitions)
    lines += [f".trans {s} {cube} {d}" for s, cube, d in rows]
    lines.append(".end")
    return "\n".join(lines) + "\n"

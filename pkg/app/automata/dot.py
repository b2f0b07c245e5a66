"""
Graphviz DOT rendering of explicit automata.
"""
from app.automata.aut_format import EMPTY_CUBE, canonical_order
from app.automata.explicit import ExplicitAutomaton, StateKind


def _quote(text: str) -> str:
    return '"' + text.replace('"', '\\"') + '"'


def to_dot(e: ExplicitAutomaton) -> str:
    name = e.name or "automaton"
    lines = [f"digraph {_quote(name)} {{", "  rankdir=LR;", '  node [fontname="Helvetica"];']
    if e.initial is None:
        lines.append('  empty [label="empty", shape=plaintext];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    index = canonical_order(e)
    ordered = sorted(index.items(), key=lambda item: item[1])
    lines.append('  __start [label="", shape=point];')
    for old, new in ordered:
        state = e.states[old]
        shape = "doublecircle" if state.accepting else "circle"
        label = str(new) if state.kind == StateKind.NORMAL else state.kind.value
        style = ', style=filled, fillcolor="lightgray"' if state.kind != StateKind.NORMAL else ""
        lines.append(f"  s{new} [label={_quote(label)}, shape={shape}{style}];")
    lines.append("  __start -> s0;")
    rows = []
    for src, cubes, dst in e.to_cubes():
        if src in index and dst in index:
            text = "\\n".join(cube or EMPTY_CUBE for cube in cubes)
            rows.append((index[src], index[dst], text))
    for src, dst, text in sorted(rows):
        lines.append(f"  s{src} -> s{dst} [label={_quote(text)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"

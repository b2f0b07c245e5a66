"""
AUT text format.

    .aut <name>
    .labels <names...>
    .ilabels <names...>
    .states <N>
    .initial <idx>
    .accepting <idx...>
    .kind <idx> <DC|DCN|DCA>
    .trans <src> <cube> <dst>
    .end

Emission is canonical: states are numbered in breadth-first order from the
initial state, successors visited in order of their smallest cube, and cubes
listed lexicographically.
"""
from collections import deque
from typing import Dict, List, Optional

from app.core.errors import FormatError
from app.dd import Manager, varset
from app.automata.explicit import (
    Edge,
    ExplicitAutomaton,
    ExplicitState,
    StateKind,
    cubes_to_func,
    merge_edges,
)

EMPTY_CUBE = "-"


def canonical_order(e: ExplicitAutomaton) -> Dict[int, int]:
    if e.initial is None:
        return {}
    rows: Dict[int, List] = {k: [] for k in range(e.num_states)}
    for src, cubes, dst in e.to_cubes():
        rows[src].append((cubes, dst))
    index = {e.initial: 0}
    queue = deque([e.initial])
    while queue:
        s = queue.popleft()
        for _, dst in sorted(rows[s]):
            if dst not in index:
                index[dst] = len(index)
                queue.append(dst)
    return index


def emit_aut(e: ExplicitAutomaton) -> str:
    index = canonical_order(e)
    states: List[Optional[ExplicitState]] = [None] * len(index)
    for old, new in index.items():
        states[new] = e.states[old]
    names = e.label_names
    out = [f".aut {e.name or 'csf'}", ".labels " + " ".join(names)]
    if e.input_vars:
        out.append(".ilabels " + " ".join(e.manager.name_of(v) for v in sorted(e.input_vars)))
    out.append(f".states {len(states)}")
    if states:
        out.append(".initial 0")
    out.append(" ".join([".accepting"] + [str(k) for k, s in enumerate(states) if s.accepting]))
    for k, state in enumerate(states):
        if state.kind != StateKind.NORMAL:
            out.append(f".kind {k} {state.kind.value}")
    rows = []
    for src, cubes, dst in e.to_cubes():
        if src in index and dst in index:
            for cube in cubes:
                rows.append((index[src], cube or EMPTY_CUBE, index[dst]))
    for src, cube, dst in sorted(rows):
        out.append(f".trans {src} {cube} {dst}")
    out.append(".end")
    return "\n".join(out) + "\n"


def parse_aut(text: str, manager: Optional[Manager] = None) -> ExplicitAutomaton:
    name = ""
    labels: Optional[List[str]] = None
    ilabels: List[str] = []
    count: Optional[int] = None
    initial: Optional[int] = None
    accepting: set = set()
    kinds: Dict[int, StateKind] = {}
    trans: List[tuple] = []

    def state_index(token: str, line: int) -> int:
        try:
            k = int(token)
        except ValueError:
            raise FormatError(f"state index expected, got '{token}'", line) from None
        if count is None:
            raise FormatError(".states must precede state references", line)
        if not 0 <= k < count:
            raise FormatError(f"state {k} out of range 0..{count - 1}", line)
        return k

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        head, args = tokens[0], tokens[1:]
        if head == ".aut":
            name = args[0] if args else ""
        elif head == ".labels":
            if len(set(args)) != len(args):
                raise FormatError("duplicate label names", number)
            labels = args
        elif head == ".ilabels":
            ilabels = args
        elif head == ".states":
            if len(args) != 1 or not args[0].isdigit():
                raise FormatError(".states expects one count", number)
            count = int(args[0])
        elif head == ".initial":
            if len(args) != 1:
                raise FormatError(".initial expects one state", number)
            initial = state_index(args[0], number)
        elif head == ".accepting":
            accepting.update(state_index(t, number) for t in args)
        elif head == ".kind":
            if len(args) != 2:
                raise FormatError(".kind expects a state and a kind", number)
            try:
                kind = StateKind(args[1])
            except ValueError:
                raise FormatError(f"unknown state kind '{args[1]}'", number) from None
            kinds[state_index(args[0], number)] = kind
        elif head == ".trans":
            if labels is None:
                raise FormatError(".labels must precede transitions", number)
            if len(args) != 3:
                raise FormatError(".trans expects <src> <cube> <dst>", number)
            cube = "" if (args[1] == EMPTY_CUBE and not labels) else args[1]
            if len(cube) != len(labels) or any(ch not in "01-" for ch in cube):
                raise FormatError(f"malformed cube '{args[1]}' for {len(labels)} labels", number)
            trans.append((state_index(args[0], number), cube, state_index(args[2], number)))
        elif head == ".end":
            break
        else:
            raise FormatError(f"unknown directive '{head}'", number)

    if labels is None or count is None:
        raise FormatError("AUT text needs .labels and .states")
    if count and initial is None:
        raise FormatError("non-empty automaton without .initial")
    unknown_inputs = set(ilabels) - set(labels)
    if unknown_inputs:
        raise FormatError(f".ilabels names unknown labels: {', '.join(sorted(unknown_inputs))}")

    m = manager or Manager(labels or ["_"])
    order = [m.id_of(label) for label in labels]
    if order != sorted(order):
        raise FormatError("label order disagrees with the manager's variable order")
    edges = [Edge(src, cubes_to_func(m, [cube], order), dst) for src, cube, dst in trans]
    states = tuple(
        ExplicitState(accepting=k in accepting, kind=kinds.get(k, StateKind.NORMAL))
        for k in range(count)
    )
    return ExplicitAutomaton(
        manager=m,
        label_vars=varset(order),
        states=states,
        initial=initial if count else None,
        edges=tuple(merge_edges(edges)),
        input_vars=varset(m.id_of(label) for label in ilabels),
        name=name,
    )

"""
BLIF-lite reader and writer.

One directive per line, `\\` continues a line, `#` starts a comment. Covers
with output phase 0 are complemented into phase-1 covers while parsing.
"""
from typing import Dict, List, Optional, Tuple

from pydantic import ValidationError

from app.core.errors import FormatError
from app.netlist.network import Gate, Latch, Network, check_structure, complement_cover

_DIRECTIVES = (".model", ".inputs", ".outputs", ".latch", ".names", ".end")


def _logical_lines(text: str) -> List[Tuple[int, str]]:
    """Strip comments and join continuations; keeps the starting line number"""
    result: List[Tuple[int, str]] = []
    pending: Optional[Tuple[int, str]] = None
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        continued = line.endswith("\\")
        if continued:
            line = line[:-1]
        if pending is not None:
            start, head = pending
            line = f"{head} {line}"
            number = start
        if continued:
            pending = (number, line)
            continue
        pending = None
        if line.strip():
            result.append((number, line.strip()))
    if pending is not None and pending[1].strip():
        result.append((pending[0], pending[1].strip()))
    return result


class _GateBuilder:
    def __init__(self, line: int, signals: List[str]):
        self.line = line
        self.inputs = tuple(signals[:-1])
        self.output = signals[-1]
        self.rows: List[str] = []
        self.phase: Optional[str] = None

    def add_row(self, line: int, tokens: List[str]) -> None:
        width = len(self.inputs)
        if width == 0:
            if len(tokens) != 1:
                raise FormatError(f"constant gate '{self.output}' expects a single output bit", line)
            cube, bit = "", tokens[0]
        else:
            if len(tokens) != 2:
                raise FormatError(f"cover row for '{self.output}' needs a cube and an output bit", line)
            cube, bit = tokens
        if len(cube) != width or any(ch not in "01-" for ch in cube):
            raise FormatError(f"malformed cube '{cube}' for gate '{self.output}' with {width} inputs", line)
        if bit not in ("0", "1"):
            raise FormatError(f"output bit must be 0 or 1, got '{bit}'", line)
        if self.phase is not None and bit != self.phase:
            raise FormatError(f"gate '{self.output}' mixes output phases", line)
        self.phase = bit
        self.rows.append(cube)

    def build(self) -> Gate:
        cover = self.rows
        if self.phase == "0":
            cover = complement_cover(self.rows, len(self.inputs))
        return Gate(output=self.output, inputs=self.inputs, cover=tuple(cover))


def parse_blif_lite(text: str) -> Network:
    name = "unnamed"
    inputs: List[str] = []
    outputs: List[str] = []
    latches: List[Latch] = []
    gates: List[Gate] = []
    lines: Dict[str, int] = {}
    current: Optional[_GateBuilder] = None

    def close_gate() -> None:
        nonlocal current
        if current is not None:
            gates.append(current.build())
            current = None

    for number, line in _logical_lines(text):
        tokens = line.split()
        head = tokens[0]
        if not head.startswith("."):
            if current is None:
                raise FormatError(f"cover row outside a .names block: '{line}'", number)
            current.add_row(number, tokens)
            continue

        close_gate()
        if head not in _DIRECTIVES:
            raise FormatError(f"unknown directive '{head}'", number)
        args = tokens[1:]
        if head == ".model":
            if len(args) != 1:
                raise FormatError(".model takes exactly one name", number)
            name = args[0]
        elif head == ".inputs":
            for signal in args:
                lines.setdefault(signal, number)
            inputs.extend(args)
        elif head == ".outputs":
            for signal in args:
                lines.setdefault(signal, number)
            outputs.extend(args)
        elif head == ".latch":
            if len(args) not in (2, 3):
                raise FormatError(".latch expects <data_in> <state> [<init>]", number)
            init = args[2] if len(args) == 3 else "0"
            if init not in ("0", "1"):
                raise FormatError(f"latch init must be 0 or 1, got '{init}'", number)
            lines[args[1]] = number
            latches.append(Latch(data_in=args[0], state=args[1], init=int(init)))
        elif head == ".names":
            if not args:
                raise FormatError(".names needs at least an output signal", number)
            lines[args[-1]] = number
            current = _GateBuilder(number, args)
        else:  # .end
            break
    close_gate()

    try:
        network = Network(
            name=name,
            inputs=tuple(inputs),
            outputs=tuple(outputs),
            latches=tuple(latches),
            gates=tuple(gates),
        )
    except ValidationError as e:
        raise FormatError(f"invalid network: {e.errors()[0]['msg']}") from e
    check_structure(network, lines)
    return network


def read_blif_lite(path) -> Network:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as e:
        raise FormatError(f"cannot read circuit '{path}': {e.strerror}") from e
    return parse_blif_lite(text)


def write_blif_lite(network: Network) -> str:
    out = [f".model {network.name}"]
    if network.inputs:
        out.append(".inputs " + " ".join(network.inputs))
    if network.outputs:
        out.append(".outputs " + " ".join(network.outputs))
    for latch in network.latches:
        out.append(f".latch {latch.data_in} {latch.state} {latch.init}")
    for gate in network.gates:
        out.append(".names " + " ".join(gate.inputs + (gate.output,)))
        for row in gate.cover:
            out.append(f"{row} 1" if row else "1")
    out.append(".end")
    return "\n".join(out) + "\n"

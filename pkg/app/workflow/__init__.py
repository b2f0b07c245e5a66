from app.workflow.steps import (
    ComplementStep,
    CompleteExplicitStep,
    CompleteStep,
    DeterminizeStep,
    HideStep,
    PrefixCloseStep,
    ProductStep,
    ProgressiveStep,
    SupportStep,
)


# Step registry for the flow processor with dependency information
STEP_REGISTRY = {
    "complete": {
        "class": CompleteStep,
        "dependencies": []
    },
    "determinize": {
        "class": DeterminizeStep,
        "dependencies": ["limits"]
    },
    "complement": {
        "class": ComplementStep,
        "dependencies": []
    },
    "support": {
        "class": SupportStep,
        "dependencies": []
    },
    "product": {
        "class": ProductStep,
        "dependencies": []
    },
    "hide": {
        "class": HideStep,
        "dependencies": []
    },
    "complete_explicit": {
        "class": CompleteExplicitStep,
        "dependencies": []
    },
    "prefix_close": {
        "class": PrefixCloseStep,
        "dependencies": []
    },
    "progressive": {
        "class": ProgressiveStep,
        "dependencies": []
    },
}


def _linear(name: str, steps: list) -> dict:
    nodes = [{"id": step_id, "type": step_type, "config": config} for step_id, step_type, config in steps]
    edges = [{"source": a["id"], "target": b["id"]} for a, b in zip(nodes, nodes[1:])]
    return {"name": name, "nodes": nodes, "edges": edges}


# The generic most-general prefix-closed progressive solution, step by step.
# The state holds "s" and "f" (symbolic automata of S and F) and "x" (the
# automaton being built).
MONOLITHIC_FLOW = _linear("monolithic", [
    ("01", "complete", {"source": "s", "target": "x"}),
    ("02", "determinize", {"mode": "symbolic"}),
    ("03", "complement", {}),
    ("04", "support", {"labels": ["i", "v", "u", "o"]}),
    ("05", "product", {"left": "f", "right": "x", "complete_left": True}),
    ("06", "hide", {"labels": ["u", "v"]}),
    ("07", "determinize", {"mode": "explicit"}),
    ("08", "complete_explicit", {"kind": "DCA", "accepting": False}),
    ("09", "complement", {}),
    ("10", "prefix_close", {}),
    ("11", "progressive", {"inputs": ["u"]}),
])

"""
Flow steps, one per automaton operation
"""
from .explicit_steps import CompleteExplicitStep, PrefixCloseStep, ProgressiveStep
from .symbolic_steps import CompleteStep, ComplementStep, DeterminizeStep, HideStep, ProductStep, SupportStep

__all__ = [
    "ComplementStep",
    "CompleteExplicitStep",
    "CompleteStep",
    "DeterminizeStep",
    "HideStep",
    "PrefixCloseStep",
    "ProductStep",
    "ProgressiveStep",
    "SupportStep",
]

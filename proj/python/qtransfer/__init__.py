"""GHZ-state transfer on XX spin chains."""

from ._core import (
    Record,
    Verdict,
    couplings,
    evaluate,
    evolve,
    frequencies,
    receiver_density,
    solve_gmn,
    spectrum,
    sweep,
    validate,
)

__all__ = [
    "Record",
    "Verdict",
    "couplings",
    "evaluate",
    "evolve",
    "frequencies",
    "receiver_density",
    "solve_gmn",
    "spectrum",
    "sweep",
    "validate",
]

"""Exception hierarchy shared by all tuhyper modules."""

from __future__ import annotations


class TuhyperError(Exception):
    """Base class for all tuhyper errors."""


class InputError(TuhyperError):
    """Malformed or out-of-contract input (bad ids, bad JSON, bad shapes)."""


class PreconditionError(InputError):
    """An operation's stated precondition does not hold for the given input."""


class NotDisjointError(PreconditionError):
    """Input hypergraph has overlapping hyperedges of size >= 4."""

    def __init__(self, edge_a: int, edge_b: int, message: str):
        super().__init__(message)
        self.edge_a = edge_a
        self.edge_b = edge_b


class SizeGuardError(TuhyperError):
    """Desk-scale exceeded: the requested exhaustive computation is too large."""


class BudgetExceededError(TuhyperError):
    """A backtracking search exceeded its node-expansion budget."""


class InternalConsistencyError(TuhyperError):
    """A machine-checked step of the structure-extraction argument failed.

    These are wired as hard errors on purpose: a reproducible failure here is
    a counterexample to a step the extraction relies on, which is the most
    valuable possible output.  The `step` names the failed check.
    """

    def __init__(self, step: str, message: str = ""):
        super().__init__(f"{step}: {message}" if message else step)
        self.step = step

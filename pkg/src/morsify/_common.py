"""Shared search-budget and verdict types used by the equivalence searches.

Every semi-decidable search in this package (braid isotopy, quiver mutation
equivalence, plabic move equivalence) returns one of three verdicts:

* ``Equivalent(witness)`` -- a replayable certificate of equivalence;
* ``DistinctByInvariant(reason)`` -- a proof of inequivalence (either a cheap
  invariant mismatch or exhaustion of a provably finite orbit);
* ``Unknown(reason)`` -- the search budget ran out before a decision.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Budget:
    """Caps shared by all equivalence searches."""

    max_states: int = 10**6
    max_seconds: float = 300.0

    def start(self) -> "BudgetClock":
        return BudgetClock(self)


@dataclass
class BudgetClock:
    """Running tally against a :class:`Budget`."""

    budget: Budget
    states: int = 0
    t0: float = field(default_factory=time.monotonic)

    def tick(self, n: int = 1) -> bool:
        """Charge ``n`` states; return ``True`` while within budget."""
        self.states += n
        if self.states > self.budget.max_states:
            return False
        return time.monotonic() - self.t0 <= self.budget.max_seconds


@dataclass(frozen=True)
class Equivalent:
    witness: tuple

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class DistinctByInvariant:
    reason: str

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class Unknown:
    reason: str

    def __bool__(self) -> bool:
        return False


Verdict = Any  # Equivalent | DistinctByInvariant | Unknown

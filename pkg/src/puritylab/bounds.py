"""Enumeration budgets, bounded-infinity quantifiers and engine settings."""

from __future__ import annotations

from dataclasses import dataclass

DEFAULT_UP_TO = 3
DEFAULT_BUDGET = 2_000_000
DEFAULT_THREADS = 1
DEFAULT_SEED = 0

# Hard caps a workspace/CLI may not exceed.
MAX_BUDGET = 1_000_000_000
MAX_UP_TO = 16
MAX_THREADS = 64


class BudgetExceededError(RuntimeError):
    """Raised when an enumeration would exceed its configured budget.

    Checkers convert this into an honest "undecided" verdict; it never turns
    into a wrong pass/fail answer.
    """

    def __init__(self, needed: int, limit: int, what: str = "enumeration"):
        super().__init__(f"{what} needs {needed} steps, budget is {limit}")
        self.needed = needed
        self.limit = limit
        self.what = what


class Budget:
    """A mutable step counter with a hard limit.

    Spending is done by the sequential driver loops (before work is handed to
    worker threads), so the exhaustion point is deterministic and independent
    of thread count.
    """

    def __init__(self, limit: int = DEFAULT_BUDGET):
        self.limit = int(limit)
        self.spent = 0

    def spend(self, n: int, what: str = "enumeration") -> None:
        if self.spent + n > self.limit:
            raise BudgetExceededError(self.spent + n, self.limit, what)
        self.spent += n

    def remaining(self) -> int:
        return self.limit - self.spent


@dataclass(frozen=True)
class UpTo:
    """Bounded surrogate for an aleph_0 quantifier: all values 1..limit."""

    limit: int

    def __str__(self) -> str:
        return f"UP_TO({self.limit})"


def resolve_quantifier(value, up_to: int) -> tuple[list[int], str]:
    """Expand an (n or m) quantifier into the list of values to check.

    ``value`` may be a positive int, an UpTo marker, or the string "inf"
    (meaning UP_TO(up_to)).  Returns (values, recorded_bound).
    """
    if isinstance(value, UpTo):
        return list(range(1, value.limit + 1)), str(value)
    if isinstance(value, str):
        if value in ("inf", "aleph0"):
            marker = UpTo(up_to)
            return list(range(1, up_to + 1)), str(marker)
        raise ValueError(f"bad quantifier {value!r}")
    v = int(value)
    if v < 0:
        raise ValueError("quantifiers must be >= 0")
    return [v], str(v)


@dataclass
class Settings:
    """Engine-wide knobs, mirrored by CLI flags and workspace settings."""

    up_to: int = DEFAULT_UP_TO
    budget: int = DEFAULT_BUDGET
    threads: int = DEFAULT_THREADS
    seed: int = DEFAULT_SEED

    def validate(self) -> None:
        if not (1 <= self.up_to <= MAX_UP_TO):
            raise ValueError(f"up_to must be in 1..{MAX_UP_TO}")
        if not (1 <= self.budget <= MAX_BUDGET):
            raise ValueError(f"budget must be in 1..{MAX_BUDGET}")
        if not (1 <= self.threads <= MAX_THREADS):
            raise ValueError(f"threads must be in 1..{MAX_THREADS}")

    def new_budget(self) -> Budget:
        return Budget(self.budget)

    def to_payload(self) -> dict:
        return {
            "up_to": self.up_to,
            "budget": self.budget,
            "seed": self.seed,
        }

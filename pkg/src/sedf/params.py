from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True, order=True)
class SedfParams:
    """An (n, m, k, lambda) parameter tuple; the rules judge everything beyond positivity."""

    n: int
    m: int
    k: int
    lam: int

    def __post_init__(self) -> None:
        for name in ("n", "m", "k", "lam"):
            v = getattr(self, name)
            if int(v) != v or v < 1:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")

    def satisfies_count(self) -> bool:
        """(m-1)k^2 == lambda(n-1), the basic counting identity."""
        return (self.m - 1) * self.k ** 2 == self.lam * (self.n - 1)

    @classmethod
    def with_derived_lambda(cls, n: int, m: int, k: int) -> SedfParams | None:
        num = (m - 1) * k * k
        if n < 2 or num % (n - 1):
            return None
        lam = num // (n - 1)
        return cls(n, m, k, lam) if lam >= 1 else None

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.n, self.m, self.k, self.lam)

    def __str__(self) -> str:
        return f"({self.n},{self.m},{self.k},{self.lam})"

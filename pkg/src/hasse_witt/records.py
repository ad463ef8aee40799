"""Result types for Hasse-Witt rows and matrices."""

import enum
from dataclasses import dataclass


class Provenance(enum.Enum):
    BATCH = "batch"
    SINGLE_PRIME = "single-prime"
    RECONSTRUCTED = "reconstructed"
    DIRECT_EXPANSION = "direct-expansion"
    SINGLE_PRIME_WHOLE = "single-prime-whole"


@dataclass(frozen=True)
class HasseWittRow:
    """First row (w_11(a), ..., w_1g(a)) of the matrix of y^2 = f(x + a) at p."""

    p: int
    a: int
    entries: tuple
    provenance: Provenance


@dataclass(frozen=True)
class HasseWittMatrix:
    p: int
    entries: tuple
    provenance: Provenance

    @property
    def g(self):
        return len(self.entries)

    def trace(self):
        return sum(self.entries[i][i] for i in range(self.g)) % self.p

    def rows(self):
        return [list(row) for row in self.entries]

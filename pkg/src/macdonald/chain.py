"""The fixed root chain attached to a strictly decreasing partition.

For a regular dominant weight, i.e. a partition lambda_1 > ... > lambda_{n-1}
> lambda_n = 0, the alcove-walk formula is evaluated along one specific
reduced chain of positive roots.  The chain factors by diagram columns
j = lambda_1 down to 2; the factor for column j lists roots (i, k) with
i <= lambda'_j < k, rows in decreasing i, and k decreasing within a row.
Whenever j is the first column with its conjugate height, the last root of
each row is dropped.

Each chain position carries a multiplicity: the number of occurrences of its
root up to and including that position.  For this chain the multiplicity has
the closed form lambda_i - (j - 1), the arm length of the cell (i, j-1); the
constructor counts occurrences and asserts the closed form, since this index
bookkeeping is the easiest place for an off-by-one to hide.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .weyl import Root


class NonRegularError(ValueError):
    """Partition is not strictly decreasing down to a single trailing zero."""


class InternalInvariantError(AssertionError):
    """A structural identity the construction guarantees failed to hold."""


class Partition:
    """A regular partition: lambda_1 > ... > lambda_{n-1} > 0, lambda_n = 0.

    Stored with its trailing zero, so n == len(parts) and the coordinate sum
    of every weight in play is fixed at |lambda|.
    """

    __slots__ = ("parts", "n", "conjugate")

    def __init__(self, parts: Sequence[int], n: int | None = None):
        parts = tuple(int(p) for p in parts)
        if n is not None:
            if len(parts) > n:
                raise NonRegularError(f"{parts} has more than n={n} parts")
            parts = parts + (0,) * (n - len(parts))
        if len(parts) < 2 or parts[-1] != 0:
            raise NonRegularError(f"{parts} must end with a single zero part")
        body = parts[:-1]
        if any(p <= 0 for p in body) or any(
            body[i] <= body[i + 1] for i in range(len(body) - 1)
        ):
            raise NonRegularError(
                f"{parts} is not regular: need parts strictly decreasing to 0"
            )
        self.parts = parts
        self.n = len(parts)
        width = parts[0]
        self.conjugate = tuple(
            sum(1 for p in parts if p >= j) for j in range(1, width + 1)
        )
        if self.conjugate and self.conjugate[0] != self.n - 1:
            raise InternalInvariantError(
                f"conjugate head {self.conjugate} != n-1 for {parts}"
            )

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Partition) and self.parts == other.parts

    def __hash__(self) -> int:
        return hash(self.parts)

    def __repr__(self) -> str:
        return f"Partition({self.parts})"


def column_roots(height: int, n: int) -> list[Root]:
    """Roots for a column of conjugate height k: rows i = k..1, k within a
    row running from n down to height+1."""
    if not 1 <= height <= n - 1:
        raise ValueError(f"height {height} out of range for n={n}")
    return [(i, k) for i in range(height, 0, -1) for k in range(n, height, -1)]


def column_roots_trimmed(height: int, n: int) -> list[Root]:
    """Same as column_roots with the last root of each row removed."""
    if not 1 <= height <= n - 1:
        raise ValueError(f"height {height} out of range for n={n}")
    return [(i, k) for i in range(height, 0, -1) for k in range(n, height + 1, -1)]


@dataclass(frozen=True)
class ChainEntry:
    root: Root
    column: int
    mult: int

    @property
    def height(self) -> int:
        return self.root[1] - self.root[0]


class LambdaChain:
    """The annotated chain: entries in order, plus the column factorization."""

    __slots__ = ("partition", "entries", "segments", "m", "column_positions")

    def __init__(self, partition: Partition, entries: list[ChainEntry],
                 segments: list[tuple[int, int, int]]):
        self.partition = partition
        self.entries = tuple(entries)
        self.segments = tuple(segments)       # (column, start, stop) position ranges
        self.m = len(entries)
        self.column_positions = {
            col: tuple(range(start, stop)) for col, start, stop in segments
        }

    def __iter__(self) -> Iterator[ChainEntry]:
        return iter(self.entries)


def build_chain(partition: Partition, n: int | None = None) -> LambdaChain:
    """Concatenate the column factors for columns lambda_1 down to 2.

    A column factor is trimmed exactly when its column is the leftmost one of
    its conjugate height.  Multiplicities are counted and then checked against
    the arm-length closed form.
    """
    if n is not None and n != partition.n:
        raise ValueError(f"n={n} does not match partition {partition.parts}")
    n = partition.n
    conj = partition.conjugate
    entries: list[ChainEntry] = []
    segments: list[tuple[int, int, int]] = []
    seen: dict[Root, int] = {}
    for j in range(partition.parts[0], 1, -1):
        height = conj[j - 1]
        first_of_height = min(c for c in range(1, len(conj) + 1)
                              if conj[c - 1] == height)
        roots = (column_roots_trimmed(height, n) if first_of_height == j
                 else column_roots(height, n))
        start = len(entries)
        for root in roots:
            seen[root] = seen.get(root, 0) + 1
            entry = ChainEntry(root, j, seen[root])
            i, _ = root
            if entry.mult != partition.parts[i - 1] - (j - 1):
                raise InternalInvariantError(
                    f"multiplicity {entry.mult} of root {root} in column {j} "
                    f"!= arm {partition.parts[i - 1] - (j - 1)}"
                )
            entries.append(entry)
        segments.append((j, start, len(entries)))
    return LambdaChain(partition, entries, segments)


@lru_cache(maxsize=None)
def cached_chain(parts: tuple[int, ...]) -> LambdaChain:
    return build_chain(Partition(parts))


def render_chain(chain: LambdaChain) -> str:
    """Factored rendering, e.g. ((1,4),(1,3) | (2,4),(2,3),(1,4),(1,3) | ...)."""
    groups = []
    for _, start, stop in chain.segments:
        groups.append(
            ",".join(f"({i},{k})" for (i, k) in
                     (e.root for e in chain.entries[start:stop]))
        )
    return "(" + " | ".join(g for g in groups if g) + ")"

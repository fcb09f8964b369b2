"""Small immutable permutations on {0, ..., n-1}.

Composition follows the same convention as everywhere else in the package:
``(p * q)(i) == p(q(i))``, i.e. the right factor acts first.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@dataclass(frozen=True)
class Perm:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images}")

    @staticmethod
    def identity(n: int) -> "Perm":
        return Perm(tuple(range(n)))

    @staticmethod
    def from_cycle(cycle, n: int) -> "Perm":
        """The cyclic permutation sending cycle[i] to cycle[i+1]."""
        images = list(range(n))
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            images[a] = b
        return Perm(tuple(images))

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __len__(self) -> int:
        return len(self.images)

    def __mul__(self, other: "Perm") -> "Perm":
        if len(self) != len(other):
            raise ValueError("size mismatch")
        return Perm(tuple(self.images[other.images[i]] for i in range(len(self))))

    def inverse(self) -> "Perm":
        images = [0] * len(self)
        for i, j in enumerate(self.images):
            images[j] = i
        return Perm(tuple(images))

    def __pow__(self, k: int) -> "Perm":
        if k < 0:
            return self.inverse() ** (-k)
        result = Perm.identity(len(self))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def cycles(self, include_fixed: bool = False) -> list[list[int]]:
        """Disjoint cycles, each starting at its smallest element."""
        seen = [False] * len(self)
        out = []
        for i in range(len(self)):
            if seen[i]:
                continue
            cycle = [i]
            seen[i] = True
            j = self.images[i]
            while j != i:
                seen[j] = True
                cycle.append(j)
                j = self.images[j]
            if len(cycle) > 1 or include_fixed:
                out.append(cycle)
        return out

    def order(self) -> int:
        n = 1
        for cycle in self.cycles():
            n = _lcm(n, len(cycle))
        return n

    def is_identity(self) -> bool:
        return all(self.images[i] == i for i in range(len(self)))

    def transpositions(self) -> list[tuple[int, int]]:
        """Write the permutation as (a1 a2)(a2 a3)...(a_{m-1} a_m) per cycle.

        The returned list composes left-to-right (rightmost acts first) to
        the permutation itself.
        """
        out = []
        for cycle in self.cycles():
            out.extend(zip(cycle, cycle[1:]))
        return out

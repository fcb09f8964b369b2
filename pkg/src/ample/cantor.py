"""Exact model of a Cantor set presented by a generalized odometer.

The space is the profinite completion defined by an eventually periodic
radix sequence: a point is a mixed-radix "adic integer", written with the
least-significant digit first.  Clopen sets are finite unions of cylinders
taken at a single common depth; a cylinder at depth ``d`` is a residue
class modulo ``K_d``, the product of the first ``d`` radices.  Everything
is exact: integers, tuples and :class:`fractions.Fraction` only, no floats.

All values are immutable and all operations are pure functions, so objects
may be shared freely between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import BaseMismatchError, PartitionError
from .limits import require_depth


@dataclass(frozen=True)
class BaseSequence:
    """Eventually periodic radix sequence defining the odometer space.

    ``radix(i)`` is ``pre[i]`` for ``i < len(pre)`` and cycles through
    ``period`` afterwards.  Every radix must be at least 2 and the period
    must be nonempty, so the moduli ``K_d = radix(0) * ... * radix(d-1)``
    are strictly increasing and each divides the next.
    """

    pre: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "pre", tuple(self.pre))
        object.__setattr__(self, "period", tuple(self.period))
        if not self.period:
            raise ValueError("period must be nonempty")
        if any(r < 2 for r in self.pre + self.period):
            raise ValueError("every radix must be >= 2")

    @staticmethod
    def constant(radix: int) -> "BaseSequence":
        return BaseSequence((), (radix,))

    def radix(self, i: int) -> int:
        if i < 0:
            raise ValueError("digit index must be nonnegative")
        if i < len(self.pre):
            return self.pre[i]
        return self.period[(i - len(self.pre)) % len(self.period)]

    def modulus(self, depth: int) -> int:
        """K_depth, the number of cylinders at the given depth."""
        if depth < 0:
            raise ValueError("depth must be nonnegative")
        k = 1
        for i in range(depth):
            k *= self.radix(i)
        return k

    def check_same(self, other: "BaseSequence") -> None:
        if self != other:
            raise BaseMismatchError(f"{self} vs {other}")


def _require_same_base(*objects) -> BaseSequence:
    base = objects[0].base
    for obj in objects[1:]:
        base.check_same(obj.base)
    return base


@dataclass(frozen=True)
class Cylinder:
    """The clopen set of points with a fixed digit prefix of length depth."""

    base: BaseSequence
    depth: int
    residue: int

    def __post_init__(self):
        if not 0 <= self.residue < self.base.modulus(self.depth):
            raise ValueError(
                f"residue {self.residue} out of range at depth {self.depth}"
            )

    def to_clopen(self) -> "ClopenSet":
        return ClopenSet(self.base, self.depth, (self.residue,))

    def contains_point(self, x: "Point") -> bool:
        return x.residue(self.depth) == self.residue


@dataclass(frozen=True)
class ClopenSet:
    """Finite union of depth-``depth`` cylinders, kept in canonical form.

    Canonical form stores the minimal depth at which the set is a union of
    cylinders (the empty set and the full space live at depth 0).  Two
    clopen sets are equal iff their canonical forms are equal, so dataclass
    equality is set equality.
    """

    base: BaseSequence
    depth: int
    residues: tuple[int, ...]

    def __post_init__(self):
        depth = self.depth
        residues = sorted(set(self.residues))
        k = self.base.modulus(depth)
        if residues and not (0 <= residues[0] and residues[-1] < k):
            raise ValueError("residue out of range")
        # merge complete sibling families until the depth is minimal
        while depth > 0:
            k_down = self.base.modulus(depth - 1)
            r = self.base.radix(depth - 1)
            parents = sorted({w % k_down for w in residues})
            if len(residues) != len(parents) * r:
                break
            present = set(residues)
            if all(
                p + j * k_down in present for p in parents for j in range(r)
            ):
                depth -= 1
                residues = parents
            else:
                break
        object.__setattr__(self, "depth", depth)
        object.__setattr__(self, "residues", tuple(residues))

    @staticmethod
    def empty(base: BaseSequence) -> "ClopenSet":
        return ClopenSet(base, 0, ())

    @staticmethod
    def full(base: BaseSequence) -> "ClopenSet":
        return ClopenSet(base, 0, (0,))

    def is_empty(self) -> bool:
        return not self.residues

    def is_full(self) -> bool:
        return self.depth == 0 and self.residues == (0,)

    def residues_at_depth(self, depth: int) -> tuple[int, ...]:
        """Residues of the same set refined to a deeper (or equal) depth."""
        if depth < self.depth:
            raise ValueError("cannot coarsen below canonical depth")
        require_depth(depth)
        k_own = self.base.modulus(self.depth)
        k = self.base.modulus(depth)
        step = k // k_own
        return tuple(
            w + m * k_own for w in self.residues for m in range(step)
        )

    def refine_to_depth(self, depth: int) -> "ClopenSet":
        return ClopenSet(self.base, depth, self.residues_at_depth(depth))

    def measure(self) -> Fraction:
        """Haar measure: the number of cylinders over the modulus."""
        return Fraction(len(self.residues), self.base.modulus(self.depth))

    def cylinders(self) -> list[Cylinder]:
        return [Cylinder(self.base, self.depth, w) for w in self.residues]

    def contains_point(self, x: "Point") -> bool:
        return x.residue(self.depth) in set(self.residues)

    def _joint(self, other: "ClopenSet") -> tuple[int, set, set]:
        _require_same_base(self, other)
        depth = max(self.depth, other.depth)
        return (
            depth,
            set(self.residues_at_depth(depth)),
            set(other.residues_at_depth(depth)),
        )

    def union(self, other: "ClopenSet") -> "ClopenSet":
        depth, a, b = self._joint(other)
        return ClopenSet(self.base, depth, tuple(a | b))

    def intersection(self, other: "ClopenSet") -> "ClopenSet":
        depth, a, b = self._joint(other)
        return ClopenSet(self.base, depth, tuple(a & b))

    def difference(self, other: "ClopenSet") -> "ClopenSet":
        depth, a, b = self._joint(other)
        return ClopenSet(self.base, depth, tuple(a - b))

    def complement(self) -> "ClopenSet":
        k = self.base.modulus(self.depth)
        present = set(self.residues)
        return ClopenSet(
            self.base, self.depth, tuple(w for w in range(k) if w not in present)
        )

    def is_subset(self, other: "ClopenSet") -> bool:
        return self.difference(other).is_empty()

    def is_disjoint(self, other: "ClopenSet") -> bool:
        return self.intersection(other).is_empty()

    def __or__(self, other):
        return self.union(other)

    def __and__(self, other):
        return self.intersection(other)

    def __sub__(self, other):
        return self.difference(other)


def clopen_algebra(a: ClopenSet, b: ClopenSet | None, op: str) -> ClopenSet:
    """Dispatch set algebra by name; used by the command-line front end."""
    if op == "complement":
        return a.complement()
    if b is None:
        raise ValueError(f"operation {op!r} needs two operands")
    if op == "union":
        return a.union(b)
    if op == "intersection":
        return a.intersection(b)
    if op == "difference":
        return a.difference(b)
    raise ValueError(f"unknown set operation {op!r}")


def check_partition(whole: ClopenSet, parts: list[ClopenSet]) -> None:
    """Raise PartitionError unless the parts tile the whole set exactly."""
    union = ClopenSet.empty(whole.base)
    total = Fraction(0)
    for part in parts:
        total += part.measure()
        union = union.union(part)
    if union != whole or total != whole.measure():
        raise PartitionError("parts do not partition the set")


@dataclass(frozen=True)
class Point:
    """Eventually periodic point: digits pre + (period repeated forever).

    Digit ``i`` lies in ``[0, radix(i))``.  The pre-period always covers the
    base's pre-period and the period length is a multiple of the base's
    period length, so the digit bound is stable under repetition.  The
    stored form is canonical (shortest period, then shortest pre-period),
    which makes dataclass equality point equality.
    """

    base: BaseSequence
    pre: tuple[int, ...]
    period_digits: tuple[int, ...]

    def __post_init__(self):
        pre = list(self.pre)
        per = list(self.period_digits)
        if not per:
            raise ValueError("period must be nonempty")
        # align: unroll the period so the pre-period covers the base's
        while len(pre) < len(self.base.pre):
            pre.append(per[0])
            per = per[1:] + per[:1]
        big_l = len(self.base.period)
        if len(per) % big_l != 0:
            # pad to the alignment the base demands
            reps = big_l // gcd(len(per), big_l)
            per = per * reps
        start = len(pre)
        for i, d in enumerate(pre):
            if not 0 <= d < self.base.radix(i):
                raise ValueError(f"digit {d} out of range at index {i}")
        for j, d in enumerate(per):
            if not 0 <= d < self.base.radix(start + j):
                raise ValueError(f"digit {d} out of range at index {start + j}")
        # canonical period: shortest repeating block whose length is a
        # multiple of the base period length
        n = len(per)
        for cand in range(big_l, n + 1, big_l):
            if n % cand == 0 and per[:cand] * (n // cand) == per:
                per = per[:cand]
                break
        # canonical pre-period: absorb trailing digits that already match
        # the periodic tail (rotating the period keeps the digit stream)
        while len(pre) > len(self.base.pre) and pre[-1] == per[-1]:
            pre.pop()
            per = [per[-1]] + per[:-1]
        object.__setattr__(self, "pre", tuple(pre))
        object.__setattr__(self, "period_digits", tuple(per))

    @staticmethod
    def zero(base: BaseSequence) -> "Point":
        return Point(base, (0,) * len(base.pre), (0,) * len(base.period))

    @staticmethod
    def from_int(base: BaseSequence, n: int) -> "Point":
        return Point.zero(base).add_int(n)

    def digit(self, i: int) -> int:
        if i < len(self.pre):
            return self.pre[i]
        return self.period_digits[(i - len(self.pre)) % len(self.period_digits)]

    def residue(self, depth: int) -> int:
        """Value of the first ``depth`` digits in mixed radix."""
        value, k = 0, 1
        for i in range(depth):
            value += self.digit(i) * k
            k *= self.base.radix(i)
        return value

    def cylinder(self, depth: int) -> Cylinder:
        return Cylinder(self.base, depth, self.residue(depth))

    def _burn_in(self) -> int:
        return max(len(self.pre), len(self.base.pre))

    def add_int(self, n: int) -> "Point":
        """Exact mixed-radix addition of an integer, carry propagated.

        The carry settles into {-1, 0, 1} after finitely many digits,
        after which the digit stream is periodic; a repeated (phase,
        carry) state closes the period.
        """
        digits: list[int] = []
        carry = n
        i = 0
        seen: dict[tuple[int, int], int] = {}
        start = self._burn_in()
        ell = len(self.period_digits)
        while True:
            if i >= start and carry in (-1, 0, 1):
                state = ((i - len(self.pre)) % ell, carry)
                if state in seen:
                    j = seen[state]
                    return Point(self.base, tuple(digits[:j]), tuple(digits[j:i]))
                seen[state] = i
            r = self.base.radix(i)
            raw = self.digit(i) + carry
            dig = raw % r
            carry = (raw - dig) // r
            digits.append(dig)
            i += 1

    def subtract(self, other: "Point") -> "Point":
        """The adic difference self - other (an eventually periodic point)."""
        _require_same_base(self, other)
        digits: list[int] = []
        borrow = 0
        i = 0
        seen: dict[tuple[int, int, int], int] = {}
        start = max(self._burn_in(), other._burn_in())
        la, lb = len(self.period_digits), len(other.period_digits)
        ell = la * lb // gcd(la, lb)
        while True:
            if i >= start:
                state = (
                    (i - len(self.pre)) % ell,
                    (i - len(other.pre)) % ell,
                    borrow,
                )
                if state in seen:
                    j = seen[state]
                    return Point(self.base, tuple(digits[:j]), tuple(digits[j:i]))
                seen[state] = i
            r = self.base.radix(i)
            raw = self.digit(i) - other.digit(i) + borrow
            if raw < 0:
                digits.append(raw + r)
                borrow = -1
            else:
                digits.append(raw)
                borrow = 0
            i += 1

    def as_integer(self) -> int | None:
        """The integer this point encodes, or None.

        Nonnegative integers end in all-zero digits; negative ones end in
        the all-maximal digit pattern.
        """
        start = len(self.pre)
        if all(d == 0 for d in self.period_digits):
            return sum(d * self.base.modulus(i) for i, d in enumerate(self.pre))
        if all(
            d == self.base.radix(start + j) - 1
            for j, d in enumerate(self.period_digits)
        ):
            prefix = sum(d * self.base.modulus(i) for i, d in enumerate(self.pre))
            return prefix - self.base.modulus(start)
        return None

    def difference_as_integer(self, other: "Point") -> int | None:
        return self.subtract(other).as_integer()

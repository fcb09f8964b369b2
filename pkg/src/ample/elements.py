"""Canonical group arithmetic for the ample group of an odometer.

An element is stored as a cocycle table over the cylinders of some depth
``d``: it sends every point ``x`` to ``x + n(x mod K_d)``, i.e. it acts as
a power of the odometer on each cylinder.  Bijectivity forces the residue
map ``w -> (w + n(w)) mod K_d`` to be a permutation, which together with
the carry table per residue gives a finite "wreath" normal form that makes
orders and factorizations computable.

Elements are immutable and always canonical (minimal depth), so dataclass
equality is group-element equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .cantor import BaseSequence, ClopenSet, Point, _require_same_base
from .limits import require_depth
from .perms import Perm


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@dataclass(frozen=True)
class TfgElement:
    base: BaseSequence
    depth: int
    cocycle: tuple[int, ...]

    def __post_init__(self):
        require_depth(self.depth)
        k = self.base.modulus(self.depth)
        cocycle = tuple(self.cocycle)
        if len(cocycle) != k:
            raise ValueError(f"cocycle must have {k} entries, got {len(cocycle)}")
        if sorted((w + n) % k for w, n in enumerate(cocycle)) != list(range(k)):
            raise ValueError("cocycle does not map cylinders bijectively")
        depth = self.depth
        # canonical form: merge while the cocycle is constant on every
        # sibling family of the next-coarser cylinders
        while depth > 0:
            k_down = self.base.modulus(depth - 1)
            r = self.base.radix(depth - 1)
            if all(
                cocycle[p] == cocycle[p + j * k_down]
                for p in range(k_down)
                for j in range(1, r)
            ):
                depth -= 1
                cocycle = cocycle[:k_down]
            else:
                break
        object.__setattr__(self, "depth", depth)
        object.__setattr__(self, "cocycle", cocycle)

    # -- basic queries ---------------------------------------------------

    def is_identity(self) -> bool:
        return self.depth == 0 and self.cocycle == (0,)

    def cocycle_at_depth(self, depth: int) -> tuple[int, ...]:
        if depth < self.depth:
            raise ValueError("cannot coarsen below canonical depth")
        require_depth(depth)
        k_own = self.base.modulus(self.depth)
        k = self.base.modulus(depth)
        return tuple(self.cocycle[w % k_own] for w in range(k))

    def translation_on(self, residue: int, depth: int) -> int:
        """The odometer power applied on the given depth-``depth`` cylinder."""
        if depth < self.depth:
            raise ValueError("cylinder too coarse to carry a single value")
        return self.cocycle[residue % self.base.modulus(self.depth)]

    def residue_action(self, depth: int) -> tuple[int, ...]:
        """How the element permutes the cylinders at ``depth >= self.depth``.

        This is the pointwise arithmetic view of the element and serves as
        an independent oracle for the table-level group operations.
        """
        k = self.base.modulus(depth)
        table = self.cocycle_at_depth(depth)
        return tuple((w + table[w]) % k for w in range(k))

    # -- group structure -------------------------------------------------

    def compose(self, other: "TfgElement") -> "TfgElement":
        """The element acting as self after other: (self*other)(x) = self(other(x))."""
        _require_same_base(self, other)
        depth = max(self.depth, other.depth)
        k = self.base.modulus(depth)
        a = self.cocycle_at_depth(depth)
        b = other.cocycle_at_depth(depth)
        table = tuple(b[w] + a[(w + b[w]) % k] for w in range(k))
        return TfgElement(self.base, depth, table)

    def __mul__(self, other: "TfgElement") -> "TfgElement":
        return self.compose(other)

    def inverse(self) -> "TfgElement":
        k = self.base.modulus(self.depth)
        table = [0] * k
        for w, n in enumerate(self.cocycle):
            table[(w + n) % k] = -n
        return TfgElement(self.base, self.depth, tuple(table))

    def power(self, exponent: int) -> "TfgElement":
        if exponent < 0:
            return self.inverse().power(-exponent)
        result = identity(self.base)
        square = self
        while exponent:
            if exponent & 1:
                result = result.compose(square)
            square = square.compose(square)
            exponent >>= 1
        return result

    def __pow__(self, exponent: int) -> "TfgElement":
        return self.power(exponent)

    # -- actions ----------------------------------------------------------

    def apply(self, x: Point) -> Point:
        _require_same_base(self, x)
        return x.add_int(self.cocycle[x.residue(self.depth)])

    def image(self, u: ClopenSet) -> ClopenSet:
        _require_same_base(self, u)
        depth = max(self.depth, u.depth)
        k = self.base.modulus(depth)
        table = self.cocycle_at_depth(depth)
        return ClopenSet(
            self.base,
            depth,
            tuple((w + table[w]) % k for w in u.residues_at_depth(depth)),
        )

    def preimage(self, u: ClopenSet) -> ClopenSet:
        return self.inverse().image(u)

    def support(self) -> ClopenSet:
        """Union of the cylinders the element moves.

        The odometer acts freely, so the fixed-point set is exactly the
        union of cylinders with zero cocycle and the support is clopen.
        """
        return ClopenSet(
            self.base,
            self.depth,
            tuple(w for w, n in enumerate(self.cocycle) if n != 0),
        )

    # -- index and wreath form --------------------------------------------

    def index(self) -> int:
        """Value of the homomorphism to the integers normalized on the odometer."""
        k = self.base.modulus(self.depth)
        total = sum(self.cocycle)
        if total % k != 0:
            raise ValueError("cocycle sum not divisible by the modulus; corrupt element")
        return total // k

    def wreath(self) -> "WreathForm":
        return self.wreath_at(self.depth)

    def wreath_at(self, depth: int) -> "WreathForm":
        k = self.base.modulus(depth)
        table = self.cocycle_at_depth(depth)
        sigma = Perm(tuple((w + n) % k for w, n in enumerate(table)))
        carry = tuple(
            (n - (sigma(w) - w)) // k for w, n in enumerate(table)
        )
        return WreathForm(self.base, depth, sigma, carry)

    def order(self) -> int | None:
        """The order of the element, or None if infinite.

        Finite order means every cycle of the residue permutation has zero
        total carry; the order is then the lcm of the cycle lengths.  The
        verdict is cross-checked by exact composition.
        """
        form = self.wreath()
        m = 1
        for cycle in form.sigma.cycles(include_fixed=True):
            if sum(form.carry[w] for w in cycle) != 0:
                return None
            m = _lcm(m, len(cycle))
        assert self.power(m).is_identity()
        for p in _prime_divisors(m):
            assert not self.power(m // p).is_identity()
        return m

    def commutes_with(self, other: "TfgElement") -> bool:
        return self.compose(other) == other.compose(self)


@dataclass(frozen=True)
class WreathForm:
    """Residue permutation plus integer carries: n(w) = sigma(w) - w + K*c(w)."""

    base: BaseSequence
    depth: int
    sigma: Perm
    carry: tuple[int, ...]

    def __post_init__(self):
        k = self.base.modulus(self.depth)
        if len(self.sigma) != k or len(self.carry) != k:
            raise ValueError("wreath tables must match the modulus")

    def lift(self) -> TfgElement:
        k = self.base.modulus(self.depth)
        return TfgElement(
            self.base,
            self.depth,
            tuple(self.sigma(w) - w + k * self.carry[w] for w in range(k)),
        )

    def index(self) -> int:
        return sum(self.carry)


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def identity(base: BaseSequence) -> TfgElement:
    return TfgElement(base, 0, (0,))


def odometer(base: BaseSequence) -> TfgElement:
    """The generator: add one with carry."""
    return TfgElement(base, 0, (1,))


def odometer_power(base: BaseSequence, n: int) -> TfgElement:
    return TfgElement(base, 0, (n,))


def compose(g: TfgElement, h: TfgElement) -> TfgElement:
    """compose(g, h) acts as x -> g(h(x))."""
    return g.compose(h)


def compose_word(base: BaseSequence, word) -> TfgElement:
    """Left-to-right composition: the last factor of the word acts first."""
    result = identity(base)
    for factor in word:
        result = result.compose(factor)
    return result


def from_translation_table(
    base: BaseSequence, depth: int, table: dict[int, int]
) -> TfgElement:
    """Element from a sparse residue -> translation map (zero elsewhere)."""
    k = base.modulus(depth)
    cocycle = [0] * k
    for w, n in table.items():
        cocycle[w] = n
    return TfgElement(base, depth, tuple(cocycle))

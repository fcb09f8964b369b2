"""Generalized permutations and generalized 2-cycles.

A generalized permutation ``mu[U; f_1..f_n; pi]`` permutes the disjoint
images ``f_i(U)`` of a clopen set according to a finite permutation: on
``f_i(U)`` it acts as ``f_{pi(i)} o f_i^{-1}``, elsewhere as the identity.
Generalized 2-cycles are the two-image case and generate the same group;
this module also provides the constructive decompositions between torsion
elements, generalized permutations and 2-cycles.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cantor import ClopenSet, _require_same_base, check_partition
from .elements import TfgElement, compose_word, identity
from .errors import DisjointnessError
from .perms import Perm


@dataclass(frozen=True)
class GenPermSpec:
    """Data of mu[u; maps; pi]; the images maps[i](u) must be disjoint."""

    u: ClopenSet
    maps: tuple[TfgElement, ...]
    pi: Perm

    def __post_init__(self):
        object.__setattr__(self, "maps", tuple(self.maps))
        if len(self.pi) != len(self.maps):
            raise ValueError("permutation size must match the number of maps")
        _require_same_base(self.u, *self.maps)
        images = self.images()
        union = ClopenSet.empty(self.u.base)
        for img in images:
            if not union.is_disjoint(img):
                raise DisjointnessError("images of u overlap")
            union = union.union(img)

    def images(self) -> list[ClopenSet]:
        return [g.image(self.u) for g in self.maps]


@dataclass(frozen=True)
class TwoCycleSpec:
    """Data of the involution swapping u and g(u); they must be disjoint."""

    u: ClopenSet
    g: TfgElement

    def __post_init__(self):
        _require_same_base(self.u, self.g)
        if not self.u.is_disjoint(self.g.image(self.u)):
            raise DisjointnessError("g(u) meets u")

    def as_genperm(self) -> GenPermSpec:
        n = 2
        return GenPermSpec(
            self.u, (identity(self.u.base), self.g), Perm.from_cycle([0, 1], n)
        )


def realize(spec: GenPermSpec) -> TfgElement:
    """The element of mu[u; maps; pi], built cylinder by cylinder."""
    base = spec.u.base
    pieces: list[tuple[ClopenSet, TfgElement]] = []
    for i, f_i in enumerate(spec.maps):
        mover = spec.maps[spec.pi(i)].compose(f_i.inverse())
        pieces.append((f_i.image(spec.u), mover))
    depth = max([spec.u.depth] + [img.depth for img, _ in pieces]
                + [g.depth for _, g in pieces])
    k = base.modulus(depth)
    cocycle = [0] * k
    for img, mover in pieces:
        table = mover.cocycle_at_depth(depth)
        for w in img.residues_at_depth(depth):
            cocycle[w] = table[w]
    return TfgElement(base, depth, tuple(cocycle))


def realize_two_cycle(spec: TwoCycleSpec) -> TfgElement:
    return realize(spec.as_genperm())


def perm_hom_holds(
    u: ClopenSet, maps: tuple[TfgElement, ...], pi: Perm, sigma: Perm
) -> bool:
    """Exact check that realizing permutations is a group homomorphism."""
    product = realize(GenPermSpec(u, maps, pi * sigma))
    left = realize(GenPermSpec(u, maps, pi))
    right = realize(GenPermSpec(u, maps, sigma))
    return product == left.compose(right)


def conjugate_spec(h: TfgElement, spec: GenPermSpec) -> GenPermSpec:
    """Spec realizing h * realize(spec) * h^{-1}."""
    return GenPermSpec(spec.u, tuple(h.compose(f) for f in spec.maps), spec.pi)


def reparametrize_spec(h: TfgElement, spec: GenPermSpec) -> GenPermSpec:
    """Spec over h^{-1}(u) with maps f_i * h realizing the same element."""
    return GenPermSpec(
        h.inverse().image(spec.u),
        tuple(f.compose(h) for f in spec.maps),
        spec.pi,
    )


def split_two_cycle(
    spec: TwoCycleSpec, parts: list[ClopenSet]
) -> list[TwoCycleSpec]:
    """Split the swap of u along a partition of u into commuting swaps."""
    check_partition(spec.u, parts)
    return [TwoCycleSpec(part, spec.g) for part in parts]


def torsion_to_genperms(g: TfgElement) -> list[GenPermSpec]:
    """Write a finite-order element as commuting generalized permutations.

    Points in a cylinder on a length-k cycle of the residue permutation
    have period exactly k, so the period-k part of the space is the union
    of those cylinders.  Choosing the lowest-residue cylinder per cycle as
    the base set, the element coincides on the period-k part with the
    cyclic generalized permutation over its own powers.
    """
    if g.order() is None:
        raise ValueError("element has infinite order")
    base = g.base
    form = g.wreath()
    by_length: dict[int, list[int]] = {}
    for cycle in form.sigma.cycles():
        by_length.setdefault(len(cycle), []).append(min(cycle))
    specs = []
    for k in sorted(by_length):
        v = ClopenSet(base, g.depth, tuple(by_length[k]))
        maps = tuple(g.power(i) for i in range(k))
        specs.append(GenPermSpec(v, maps, Perm.from_cycle(list(range(k)), k)))
    return specs


def genperm_to_two_cycles(spec: GenPermSpec) -> list[TwoCycleSpec]:
    """Ordered 2-cycles whose left-to-right composition realizes the spec.

    Each cycle of pi is written as a chain of transpositions and each
    transposition (i j) collapses to the swap of f_i(u) by f_j * f_i^{-1}.
    """
    out = []
    for i, j in spec.pi.transpositions():
        out.append(
            TwoCycleSpec(
                spec.maps[i].image(spec.u),
                spec.maps[j].compose(spec.maps[i].inverse()),
            )
        )
    return out


def two_cycles_compose_to(spec: GenPermSpec) -> bool:
    """Round-trip check used by the test suites."""
    word = [realize_two_cycle(tc) for tc in genperm_to_two_cycles(spec)]
    return compose_word(spec.u.base, word) == realize(spec)

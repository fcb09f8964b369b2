"""Seeded random generators for property suites.

Random elements are drawn through the wreath normal form: a random residue
permutation plus bounded random carries always lifts to a valid element,
and zeroing each cycle's carry sum yields torsion elements.
"""

from __future__ import annotations

from random import Random

from .cantor import BaseSequence, ClopenSet, Point
from .elements import TfgElement
from .perms import Perm

CARRY_SPAN = 2


def random_perm(rng: Random, n: int) -> Perm:
    images = list(range(n))
    rng.shuffle(images)
    return Perm(tuple(images))


def random_element(
    rng: Random, base: BaseSequence, max_depth: int
) -> TfgElement:
    depth = rng.randint(0, max_depth)
    k = base.modulus(depth)
    sigma = random_perm(rng, k)
    carry = [rng.randint(-CARRY_SPAN, CARRY_SPAN) for _ in range(k)]
    return TfgElement(
        base, depth, tuple(sigma(w) - w + k * carry[w] for w in range(k))
    )


def random_torsion(
    rng: Random, base: BaseSequence, max_depth: int
) -> TfgElement:
    depth = rng.randint(0, max_depth)
    k = base.modulus(depth)
    sigma = random_perm(rng, k)
    carry = [0] * k
    for cycle in sigma.cycles(include_fixed=True):
        values = [rng.randint(-CARRY_SPAN, CARRY_SPAN) for _ in cycle]
        values[-1] = -sum(values[:-1])
        for w, c in zip(cycle, values):
            carry[w] = c
    return TfgElement(
        base, depth, tuple(sigma(w) - w + k * carry[w] for w in range(k))
    )


def random_index_zero(
    rng: Random, base: BaseSequence, max_depth: int
) -> TfgElement:
    depth = rng.randint(0, max_depth)
    k = base.modulus(depth)
    sigma = random_perm(rng, k)
    carry = [rng.randint(-CARRY_SPAN, CARRY_SPAN) for _ in range(k)]
    carry[-1] -= sum(carry)
    return TfgElement(
        base, depth, tuple(sigma(w) - w + k * carry[w] for w in range(k))
    )


def random_clopen(
    rng: Random, base: BaseSequence, max_depth: int, nonempty: bool = False
) -> ClopenSet:
    depth = rng.randint(0, max_depth)
    k = base.modulus(depth)
    residues = [w for w in range(k) if rng.random() < 0.5]
    if nonempty and not residues:
        residues = [rng.randrange(k)]
    return ClopenSet(base, depth, tuple(residues))


def random_element_supported_in(
    rng: Random, base: BaseSequence, support: ClopenSet, depth: int,
    index_zero: bool = False,
) -> TfgElement:
    """Element moving only cylinders of the given clopen set."""
    depth = max(depth, support.depth)
    k = base.modulus(depth)
    inside = list(support.residues_at_depth(depth))
    images = list(inside)
    rng.shuffle(images)
    sigma = list(range(k))
    for w, v in zip(inside, images):
        sigma[w] = v
    carry = [0] * k
    for w in inside:
        carry[w] = rng.randint(-CARRY_SPAN, CARRY_SPAN)
    if index_zero and inside:
        carry[inside[-1]] -= sum(carry)
    return TfgElement(
        base, depth, tuple(sigma[w] - w + k * carry[w] for w in range(k))
    )


def random_point(rng: Random, base: BaseSequence, span: int = 4) -> Point:
    pre_len = len(base.pre) + rng.randint(0, span)
    per_len = len(base.period) * rng.randint(1, 2)
    pre = [rng.randrange(base.radix(i)) for i in range(pre_len)]
    per = [
        rng.randrange(base.radix(pre_len + j)) for j in range(per_len)
    ]
    return Point(base, tuple(pre), tuple(per))


BASES = (
    BaseSequence.constant(2),
    BaseSequence((2,), (3,)),
)

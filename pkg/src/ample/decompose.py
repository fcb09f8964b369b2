"""Factorization of elements into local factors over two overlapping
clopen sets, with verifiable certificates.

Given clopen sets u1, u2 with nonempty intersection and an element
supported in their union, ``decompose_local`` produces an ordered word of
factors, each supported in u1 or in u2, whose left-to-right composition
is exactly the input.  The pipeline: reduce by a power of the
first-return element of u1, factor the remainder into two finite-order
elements, write those as generalized permutations and then 2-cycles, and
split every 2-cycle along the nine intersection blocks of (u1, u2); the
two cross blocks are rewritten through the overlap with a conjugation by
an odometer power.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .cantor import ClopenSet
from .elements import TfgElement, compose_word, identity, odometer_power
from .genperm import TwoCycleSpec, genperm_to_two_cycles, realize_two_cycle, torsion_to_genperms
from .perms import Perm
from .towers import first_return


class Tag(Enum):
    U1 = "U1"
    U2 = "U2"


@dataclass(frozen=True)
class Certificate:
    """Ordered word of tagged factors proving a local decomposition.

    Valid iff every factor is supported in its tagged set and the
    left-to-right composition of the factors equals the target.
    """

    target: TfgElement
    u1: ClopenSet
    u2: ClopenSet
    factors: tuple[tuple[TfgElement, Tag], ...]

    def __len__(self) -> int:
        return len(self.factors)

    def composed(self) -> TfgElement:
        return compose_word(self.target.base, [g for g, _ in self.factors])

    def tagged_set(self, tag: Tag) -> ClopenSet:
        return self.u1 if tag is Tag.U1 else self.u2


@dataclass(frozen=True)
class TorsionFactorization:
    """input = compose(t2, t1) with both factors of finite order."""

    input: TfgElement
    t1: TfgElement
    t2: TfgElement
    order_t1: int
    order_t2: int


def coset_reduce(g: TfgElement, u: ClopenSet) -> tuple[int, TfgElement]:
    """Strip the index: g = f_u^k * h with k = index(g) and index(h) = 0.

    f_u is the first-return element of u, so the correction factor is
    supported in u and h stays supported in supp(g) united with u.
    """
    if u.is_empty():
        raise ValueError("reduction set must be nonempty")
    k = g.index()
    f_u, _ = first_return(u)
    h = f_u.inverse().power(k).compose(g)
    return k, h


def factor_kernel(
    h: TfgElement, w: ClopenSet | None = None
) -> TorsionFactorization:
    """Write an index-zero element as a product of two torsion elements.

    In the wreath form over the cylinders of w, h = (sigma, c) with the
    carries summing to zero.  Take pi one full ascending cycle over the
    residues of w: then t1 = (pi, c) is torsion (single cycle, zero carry
    sum), t2 = (sigma * pi^{-1}, 0) is torsion (no carries), and
    compose(t2, t1) = h exactly.
    """
    if h.index() != 0:
        raise ValueError("element has nonzero index")
    base = h.base
    order_h = h.order()
    if order_h is not None:
        return TorsionFactorization(h, h, identity(base), order_h, 1)
    if w is None:
        w = ClopenSet.full(base)
    if not h.support().is_subset(w):
        raise ValueError("support escapes the restriction set")
    depth = max(h.depth, w.depth)
    k = base.modulus(depth)
    residues = list(w.residues_at_depth(depth))
    table = h.cocycle_at_depth(depth)
    sigma = [(v + table[v]) % k for v in range(k)]
    carry = [(table[v] - (sigma[v] - v)) // k for v in range(k)]
    pi = list(range(k))
    for a, b in zip(residues, residues[1:] + residues[:1]):
        pi[a] = b
    t1 = TfgElement(
        base, depth, tuple(pi[v] - v + k * carry[v] for v in range(k))
    )
    pi_perm = Perm(tuple(pi))
    rho = Perm(tuple(sigma)) * pi_perm.inverse()
    t2 = TfgElement(base, depth, tuple(rho(v) - v for v in range(k)))
    assert t2.compose(t1) == h
    o1, o2 = t1.order(), t2.order()
    assert o1 is not None and o2 is not None
    return TorsionFactorization(h, t1, t2, o1, o2)


def _two_cycle_word(t: TfgElement) -> list[TwoCycleSpec]:
    """Torsion element as an ordered word of generalized 2-cycles."""
    word: list[TwoCycleSpec] = []
    for spec in torsion_to_genperms(t):
        word.extend(genperm_to_two_cycles(spec))
    return word


def _cross_block_word(
    tc: TwoCycleSpec, u1: ClopenSet, u2: ClopenSet, work_depth: int
) -> list[tuple[TfgElement, Tag]]:
    """Rewrite a 2-cycle swapping u1-only with u2-only cylinders.

    For each cylinder c of the base set, conjugate through the overlap:
    with a = swap of c and f^j(c) (inside u1, f^j carrying c into the
    fixed lowest cylinder of the overlap) and b = swap of f^j(c) and the
    image (inside u2), the word [a, b, a] composes to the piece of the
    2-cycle over c.
    """
    base = tc.u.base
    overlap = u1.intersection(u2)
    d3 = overlap.depth
    target = overlap.residues[0]
    k3 = base.modulus(d3)
    out: list[tuple[TfgElement, Tag]] = []
    for c in tc.u.refine_to_depth(work_depth).cylinders():
        piece = c.to_clopen()
        j = (target - c.residue) % k3
        carrier = odometer_power(base, j)
        a = realize_two_cycle(TwoCycleSpec(piece, carrier))
        b = realize_two_cycle(
            TwoCycleSpec(
                carrier.image(piece), tc.g.compose(carrier.inverse())
            )
        )
        out.extend([(a, Tag.U1), (b, Tag.U2), (a, Tag.U1)])
    return out


def _split_two_cycle_by_blocks(
    tc: TwoCycleSpec, u1: ClopenSet, u2: ClopenSet
) -> list[tuple[TfgElement, Tag]]:
    """Split one 2-cycle along the nine blocks Q_ij = P_i ∩ t^{-1}(P_j).

    P1, P2, P3 are u1-only, u2-only, and the overlap; blocks inside u1 are
    tagged U1, blocks inside u2 are tagged U2, and the two cross blocks go
    through the overlap rewrite.
    """
    base = tc.u.base
    t = realize_two_cycle(tc)
    p = {
        1: u1.difference(u2),
        2: u2.difference(u1),
        3: u1.intersection(u2),
    }
    t_inv = t.inverse()
    pre = {j: t_inv.image(p[j]) for j in p}
    overlap_depth = p[3].depth
    work_depth = max(
        u1.depth, u2.depth, tc.u.depth, tc.g.depth, overlap_depth
    )
    out: list[tuple[TfgElement, Tag]] = []
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            block = tc.u.intersection(p[i]).intersection(pre[j])
            if block.is_empty():
                continue
            piece = TwoCycleSpec(block, tc.g)
            if (i, j) == (2, 1):
                # flip the swap so its base set sits on the u1 side
                piece = TwoCycleSpec(tc.g.image(block), tc.g.inverse())
                i, j = 1, 2
            if (i, j) == (1, 2):
                out.extend(_cross_block_word(piece, u1, u2, work_depth))
            elif i != 2 and j != 2:
                out.append((realize_two_cycle(piece), Tag.U1))
            else:
                out.append((realize_two_cycle(piece), Tag.U2))
    return out


def decompose_local(
    g: TfgElement, u1: ClopenSet, u2: ClopenSet
) -> Certificate:
    """Certificate writing g as a word of factors local to u1 or u2."""
    if u1.intersection(u2).is_empty():
        raise ValueError("the sets must intersect")
    union = u1.union(u2)
    support = g.support()
    if not support.is_subset(union):
        raise ValueError("support escapes the union of the two sets")
    factors: list[tuple[TfgElement, Tag]] = []
    if g.is_identity():
        return Certificate(g, u1, u2, ())
    if support.is_subset(u1):
        return Certificate(g, u1, u2, ((g, Tag.U1),))
    if support.is_subset(u2):
        return Certificate(g, u1, u2, ((g, Tag.U2),))
    k, h = coset_reduce(g, u1)
    if k != 0:
        f_u, _ = first_return(u1)
        factors.append((f_u.power(k), Tag.U1))
    torsion = factor_kernel(h, union)
    for t in (torsion.t2, torsion.t1):
        if t.is_identity():
            continue
        for tc in _two_cycle_word(t):
            factors.extend(_split_two_cycle_by_blocks(tc, u1, u2))
    return Certificate(g, u1, u2, tuple(factors))


def verify_certificate(cert: Certificate) -> bool:
    """Exact check of both certificate invariants."""
    for factor, tag in cert.factors:
        if not factor.support().is_subset(cert.tagged_set(tag)):
            return False
    return cert.composed() == cert.target

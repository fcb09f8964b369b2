"""Kakutani-Rokhlin towers, parity exchange, and first-return splitting.

Return times are computed combinatorially: at the joint depth of the base
set and the element, membership in the base set depends only on the
residue and the element permutes residues, so the first-return time is
constant on cylinders and bounded by the modulus.  A tower of height k
collects the cylinders between two consecutive visits to the base set.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .cantor import BaseSequence, ClopenSet
from .elements import TfgElement, odometer
from .errors import KRCoverageError
from .limits import require_depth


@dataclass(frozen=True)
class KRPartition:
    """Towers of clopen levels: level ell of tower k is shifted to level
    ell+1 by the element, and the top level returns into the base set."""

    u: ClopenSet
    g: TfgElement
    towers: tuple[tuple[int, tuple[ClopenSet, ...]], ...]

    def levels(self) -> list[ClopenSet]:
        return [w for _, tower in self.towers for w in tower]

    def heights(self) -> list[int]:
        return [k for k, _ in self.towers]

    def tower(self, height: int) -> tuple[ClopenSet, ...]:
        for k, tower in self.towers:
            if k == height:
                return tower
        raise KeyError(height)


def _segments(u: ClopenSet, g: TfgElement):
    """Walk the residue cycles of g and cut them at visits to u.

    Yields (height, [residues by level], [cumulative translations]) per
    ground residue, plus the list of residues on cycles never meeting u.
    Computed at the joint depth, returned together with that depth.
    """
    depth = max(u.depth, g.depth)
    k = u.base.modulus(depth)
    table = g.cocycle_at_depth(depth)
    sigma = [(w + table[w]) % k for w in range(k)]
    in_u = [False] * k
    for w in u.residues_at_depth(depth):
        in_u[w] = True
    seen = [False] * k
    segments = []
    uncovered = []
    for start in range(k):
        if seen[start]:
            continue
        cycle = [start]
        seen[start] = True
        w = sigma[start]
        while w != start:
            seen[w] = True
            cycle.append(w)
            w = sigma[w]
        grounds = [i for i, w in enumerate(cycle) if in_u[w]]
        if not grounds:
            uncovered.extend(cycle)
            continue
        m = len(cycle)
        for gi, ground_pos in enumerate(grounds):
            next_pos = grounds[(gi + 1) % len(grounds)]
            height = (next_pos - ground_pos) % m
            if height == 0:
                height = m
            levels = []
            shifts = []
            pos = ground_pos
            total = 0
            for _ in range(height):
                levels.append(cycle[pos % m])
                shifts.append(total)
                total += table[cycle[pos % m]]
                pos += 1
            segments.append((height, levels, shifts, total))
    return depth, segments, uncovered


def build_kr(u: ClopenSet, g: TfgElement) -> KRPartition:
    """The Kakutani-Rokhlin partition of the space over the base set u.

    Every orbit must visit u (equivalently, every residue cycle of g at
    the joint depth meets u); otherwise return times are unbounded and a
    KRCoverageError is raised.
    """
    if u.is_empty():
        raise ValueError("base set must be nonempty")
    depth, segments, uncovered = _segments(u, g)
    if uncovered:
        raise KRCoverageError(
            f"{len(uncovered)} cylinders at depth {depth} never visit the base set"
        )
    base = u.base
    by_height: dict[int, list[list[int]]] = {}
    for height, levels, _, _ in segments:
        rows = by_height.setdefault(height, [[] for _ in range(height)])
        for ell, w in enumerate(levels):
            rows[ell].append(w)
    towers = tuple(
        (
            height,
            tuple(
                ClopenSet(base, depth, tuple(row)) for row in by_height[height]
            ),
        )
        for height in sorted(by_height)
    )
    return KRPartition(u, g, towers)


def parity_exchange(u: ClopenSet, g: TfgElement) -> TfgElement:
    """An involution carrying {x in u : g(x) not in u} onto
    {x not in u : g(x) in u}, built by swapping the ground and top levels
    of every tower of height at least two.

    Unlike build_kr this never fails: orbits that miss u contribute
    nothing to either set.
    """
    depth, segments, _ = _segments(u, g)
    k = u.base.modulus(depth)
    cocycle = [0] * k
    for height, levels, shifts, _ in segments:
        if height < 2:
            continue
        ground, top = levels[0], levels[-1]
        lift = shifts[-1]
        cocycle[ground] = lift
        cocycle[top] = -lift
    return TfgElement(u.base, depth, tuple(cocycle))


def first_return(u: ClopenSet) -> tuple[TfgElement, TfgElement]:
    """Split the odometer as f = f_u * h_u.

    f_u applies the first-return power on u and fixes everything else;
    h_u cycles every tower and has finite order.  The product (f_u after
    h_u) is exactly the odometer.
    """
    if u.is_empty():
        raise ValueError("base set must be nonempty")
    f = odometer(u.base)
    depth, segments, uncovered = _segments(u, f)
    assert not uncovered  # the odometer is minimal: one cycle through u
    k = u.base.modulus(depth)
    f_table = [0] * k
    h_table = [0] * k
    for height, levels, _, total in segments:
        f_table[levels[0]] = total
        for ell, w in enumerate(levels):
            h_table[w] = 1 if ell < height - 1 else 1 - height
    f_u = TfgElement(u.base, depth, tuple(f_table))
    h_u = TfgElement(u.base, depth, tuple(h_table))
    return f_u, h_u


def _stable_gcd(base: BaseSequence, n: int) -> tuple[int, int]:
    """(g, depth) with g = gcd(n, K_d) for every large d, g | K_depth.

    The gcd is nondecreasing in the depth and stabilizes once one full
    period of radices passes without changing it.
    """
    n = abs(n)
    depth = len(base.pre)
    g = gcd(n, base.modulus(depth))
    while True:
        nxt = depth + len(base.period)
        g2 = gcd(n, base.modulus(nxt))
        if g2 == g:
            return g, depth
        g, depth = g2, nxt


def minimal_power_partition(
    base: BaseSequence, n: int, test_depth: int = 6
) -> list[ClopenSet]:
    """Partition of the space into clopen pieces on which f^n acts minimally.

    The pieces are the congruence classes modulo the stabilized gcd of n
    against the moduli.  Minimality of each piece is certified at
    ``test_depth`` by checking that the f^n-orbit of every cylinder in a
    piece reaches every cylinder of that piece.
    """
    if n == 0:
        raise ValueError("power must be nonzero")
    g, gcd_depth = _stable_gcd(base, n)
    depth = gcd_depth
    while base.modulus(depth) % g != 0:  # pragma: no cover - g | K_gcd_depth
        depth += 1
    k = base.modulus(depth)
    parts = [
        ClopenSet(base, depth, tuple(range(j, k, g))) for j in range(g)
    ]
    d = max(test_depth, depth)
    require_depth(d)
    k_big = base.modulus(d)
    for part in parts:
        residues = set(part.residues_at_depth(d))
        for w in residues:
            orbit = set()
            v = w
            while v not in orbit:
                orbit.add(v)
                v = (v + n) % k_big
            if orbit != residues:
                raise AssertionError(
                    "minimality certificate failed; partition is not minimal"
                )
    return parts

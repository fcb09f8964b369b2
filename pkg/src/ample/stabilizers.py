"""Orbit tests, permutation realization on finite point sets, the
maximality classifier for stabilizers of finite sets, partition-action
tools, and a brute-force oracle over finite models.

Over the odometer all orbits are the integer translates, so two points
are in the same orbit iff their adic difference is an integer, and every
orbit is infinite.  A finite set's stabilizer is then maximal exactly
when the set sits inside a single orbit; the cases requiring finite
orbits (index two, whole group, reduction by full orbits) are exercised
in the finite model, where the ample group of a transitive permutation
group is the full symmetric group and brute-force subgroup closure gives
ground truth.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum

from .cantor import ClopenSet, Point, _require_same_base
from .elements import TfgElement, compose_word, identity
from .errors import ClosureCapError, PartitionError
from .perms import Perm


def same_orbit(x: Point, y: Point) -> bool:
    """True iff x and y differ by an integer translate."""
    return y.difference_as_integer(x) is not None


@dataclass(frozen=True)
class FinitePointSet:
    points: tuple[Point, ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        if not self.points:
            raise ValueError("point set must be nonempty")
        _require_same_base(*self.points)
        if len(set(self.points)) != len(self.points):
            raise ValueError("points must be distinct")

    def orbit_blocks(self) -> list[list[int]]:
        """Indices grouped by odometer orbit."""
        blocks: list[list[int]] = []
        for i, x in enumerate(self.points):
            for block in blocks:
                if same_orbit(self.points[block[0]], x):
                    block.append(i)
                    break
            else:
                blocks.append([i])
        return blocks


class StabKind(Enum):
    MAXIMAL = "Maximal"
    INDEX_TWO_IN_PARTITION_STABILIZER = "IndexTwoInPartitionStabilizer"
    NOT_MAXIMAL = "NotMaximal"
    WHOLE_GROUP = "WholeGroup"
    REDUCES_TO = "ReducesTo"


@dataclass(frozen=True)
class StabilizerClass:
    kind: StabKind
    orbit_blocks: tuple[tuple[int, ...], ...]
    reduces_to: tuple[int, ...] = ()
    partition_stabilizer_is_whole_group: bool = False


def classify_finite_stabilizer(y: FinitePointSet) -> StabilizerClass:
    """Maximality of the stabilizer of a finite set of odometer points.

    Every orbit is infinite, so the stabilizer is maximal iff the set is
    contained in a single orbit; otherwise two orbits witness that it is
    not maximal.  The finite-orbit cases only occur in finite models.
    """
    blocks = tuple(tuple(b) for b in y.orbit_blocks())
    kind = StabKind.MAXIMAL if len(blocks) == 1 else StabKind.NOT_MAXIMAL
    return StabilizerClass(kind, blocks)


def separation_depth(points: tuple[Point, ...]) -> int:
    """Smallest depth putting all the points into distinct cylinders."""
    depth = 0
    while True:
        residues = [x.residue(depth) for x in points]
        if len(set(residues)) == len(points):
            return depth
        depth += 1


def realize_permutation(
    y: FinitePointSet, pi: Perm, z: FinitePointSet | None = None
) -> TfgElement:
    """An element acting as pi on the points of y and fixing those of z.

    pi must move points within odometer orbits only.  The element is a
    product of cylinder swaps of the odometer powers matching the integer
    differences, over cylinders separating all points involved.
    """
    base = y.points[0].base
    fixed = z.points if z is not None else ()
    if z is not None and set(y.points) & set(fixed):
        raise ValueError("the permuted and fixed sets intersect")
    everyone = y.points + tuple(fixed)
    depth = separation_depth(everyone) + 1  # one extra level for the images
    word = []
    for i, j in pi.transpositions():
        n = y.points[j].difference_as_integer(y.points[i])
        if n is None:
            raise ValueError("permutation moves a point across orbits")
        k = base.modulus(depth)
        w = y.points[i].residue(depth)
        cocycle = [0] * k
        cocycle[w] = n
        cocycle[(w + n) % k] = -n
        word.append(TfgElement(base, depth, tuple(cocycle)))
    return compose_word(base, word)


def partition_action_transitive(
    generators: list[TfgElement], parts: list[ClopenSet]
) -> bool:
    """Whether the induced action on a clopen partition is transitive.

    Every generator must carry each part onto some part (collective
    stabilizer membership); a violation raises PartitionError naming the
    offending generator and part.
    """
    if not parts:
        raise PartitionError("empty partition")
    base = parts[0].base
    union = ClopenSet.empty(base)
    for part in parts:
        if not union.is_disjoint(part):
            raise PartitionError("parts overlap")
        union = union.union(part)
    if not union.is_full():
        raise PartitionError("parts do not cover the space")
    index_of = {part: i for i, part in enumerate(parts)}
    edges: list[list[int]] = [[] for _ in parts]
    for gi, g in enumerate(generators):
        for i, part in enumerate(parts):
            img = g.image(part)
            if img not in index_of:
                raise PartitionError(
                    f"generator {gi} maps part {i} off the partition"
                )
            j = index_of[img]
            edges[i].append(j)
            edges[j].append(i)
    seen = {0}
    queue = [0]
    while queue:
        i = queue.pop()
        for j in edges[i]:
            if j not in seen:
                seen.add(j)
                queue.append(j)
    return len(seen) == len(parts)


# -- finite models ------------------------------------------------------

ORACLE_CAP = 40320  # 8!


@dataclass(frozen=True)
class FiniteModel:
    """A finite space {0..n-1} with a generating set of permutations."""

    n: int
    generators: tuple[Perm, ...]

    def __post_init__(self):
        if self.n > 8:
            raise ValueError("finite oracle capped at 8 points")
        object.__setattr__(self, "generators", tuple(self.generators))
        for g in self.generators:
            if len(g) != self.n:
                raise ValueError("generator size mismatch")

    @staticmethod
    def symmetric(n: int) -> "FiniteModel":
        gens = [Perm.from_cycle(list(range(n)), n)]
        if n >= 2:
            gens.append(Perm.from_cycle([0, 1], n))
        return FiniteModel(n, tuple(gens))

    def orbits(self) -> list[tuple[int, ...]]:
        seen = [False] * self.n
        out = []
        for start in range(self.n):
            if seen[start]:
                continue
            block = {start}
            queue = [start]
            while queue:
                i = queue.pop()
                for g in self.generators:
                    j = g(i)
                    if j not in block:
                        block.add(j)
                        queue.append(j)
            for i in block:
                seen[i] = True
            out.append(tuple(sorted(block)))
        return out

    def ample_group(self) -> set[Perm]:
        """All permutations preserving every orbit: the piecewise closure."""
        orbits = self.orbits()
        group: set[Perm] = set()
        images_by_orbit = [list(itertools.permutations(o)) for o in orbits]
        size = 1
        for images in images_by_orbit:
            size *= len(images)
            if size > ORACLE_CAP:
                raise ClosureCapError("ample group exceeds the oracle cap")
        for choice in itertools.product(*images_by_orbit):
            images = [0] * self.n
            for orbit, img in zip(orbits, choice):
                for a, b in zip(orbit, img):
                    images[a] = b
            group.add(Perm(tuple(images)))
        return group


def closure(generators: set[Perm], n: int, cap: int = ORACLE_CAP) -> set[Perm]:
    """Breadth-first multiplication closure with a hash set of permutations."""
    group = {Perm.identity(n)} | set(generators)
    frontier = list(group)
    while frontier:
        fresh = []
        for a in frontier:
            for g in generators:
                b = a * g
                if b not in group:
                    group.add(b)
                    fresh.append(b)
                    if len(group) > cap:
                        raise ClosureCapError("closure exceeded the cap")
        frontier = fresh
    return group


def set_stabilizer(group: set[Perm], y: frozenset[int]) -> set[Perm]:
    return {g for g in group if frozenset(g(i) for i in y) == y}


def pair_stabilizer(
    group: set[Perm], y: frozenset[int], y2: frozenset[int]
) -> set[Perm]:
    """Collective stabilizer of the pair of sets {y, y2}."""
    pair = {y, y2}
    return {
        g
        for g in group
        if {frozenset(g(i) for i in y), frozenset(g(i) for i in y2)} == pair
    }


def _subgroup_generators(subgroup: set[Perm]) -> set[Perm]:
    """A small generating set, found greedily by closure growth."""
    gens: set[Perm] = set()
    n = len(next(iter(subgroup)))
    have = {Perm.identity(n)}
    for g in sorted(subgroup, key=lambda p: p.images):
        if g not in have:
            gens.add(g)
            have = closure(gens, n)
            if have == subgroup:
                break
    return gens


def brute_force_maximal(group: set[Perm], subgroup: set[Perm]) -> bool:
    """Whether the subgroup is maximal, by exhaustive subgroup closure.

    Adjoining any g outside must generate the whole group.  The generated
    subgroup depends only on the double coset of g, so each closure run
    marks off everything it already covers.
    """
    if subgroup == group:
        return False
    n = len(next(iter(group)))
    gens = _subgroup_generators(subgroup)
    covered = set(subgroup)
    for g in sorted(group - subgroup, key=lambda p: p.images):
        if g in covered:
            continue
        generated = closure(gens | {g}, n)
        if generated != group:
            return False
        # anything in the cosets of g generates the same subgroup
        covered.update(h * g for h in subgroup)
        covered.update(g * h for h in subgroup)
    return True


def classify_finite_model(model: FiniteModel, y: frozenset[int]) -> StabilizerClass:
    """Theorem-side classification of the stabilizer of y in the model."""
    if not y:
        raise ValueError("the set must be nonempty")
    orbits = model.orbits()
    blocks = tuple(
        tuple(sorted(y & set(o))) for o in orbits if y & set(o)
    )
    proper = [o for o in orbits if y & set(o) and not set(o) <= y]
    full = [o for o in orbits if set(o) <= y]
    if not proper:
        return StabilizerClass(StabKind.WHOLE_GROUP, blocks)
    if len(proper) >= 2:
        return StabilizerClass(StabKind.NOT_MAXIMAL, blocks)
    if full:
        reduced = tuple(sorted(y & set(proper[0])))
        return StabilizerClass(StabKind.REDUCES_TO, blocks, reduces_to=reduced)
    orbit = proper[0]
    y1 = y & set(orbit)
    if 2 * len(y1) == len(orbit):
        return StabilizerClass(
            StabKind.INDEX_TWO_IN_PARTITION_STABILIZER,
            blocks,
            partition_stabilizer_is_whole_group=(len(y1) == 1),
        )
    return StabilizerClass(StabKind.MAXIMAL, blocks)


def resolve_maximal(model: FiniteModel, y: frozenset[int]) -> bool | None:
    """Final maximality verdict of St(y), resolving reductions.

    None means the stabilizer is the whole group (not a proper subgroup).
    """
    verdict = classify_finite_model(model, y)
    if verdict.kind is StabKind.WHOLE_GROUP:
        return None
    if verdict.kind is StabKind.MAXIMAL:
        return True
    if verdict.kind is StabKind.NOT_MAXIMAL:
        return False
    if verdict.kind is StabKind.REDUCES_TO:
        return resolve_maximal(model, frozenset(verdict.reduces_to))
    # index two in the pair stabilizer: maximal exactly when the pair
    # stabilizer is the whole group (one point of a two-point orbit)
    return verdict.partition_stabilizer_is_whole_group


def finite_oracle_maximality(
    model: FiniteModel, y: frozenset[int]
) -> dict:
    """Classifier verdict plus brute-force confirmation, as a report."""
    group = model.ample_group()
    stab = set_stabilizer(group, y)
    verdict = classify_finite_model(model, y)
    brute_maximal = brute_force_maximal(group, stab)
    report = {
        "kind": verdict.kind.value,
        "stabilizer_order": len(stab),
        "group_order": len(group),
        "brute_force_maximal": brute_maximal,
    }
    claimed = resolve_maximal(model, y)
    report["classifier_maximal"] = claimed
    if claimed is None:
        report["agree"] = len(stab) == len(group)
    else:
        report["agree"] = claimed == brute_maximal
    if verdict.kind is StabKind.INDEX_TWO_IN_PARTITION_STABILIZER:
        orbit = next(o for o in model.orbits() if y & set(o))
        complement = frozenset(orbit) - y
        pair = pair_stabilizer(group, frozenset(y & set(orbit)), complement)
        report["pair_stabilizer_order"] = len(pair)
        report["index_two"] = len(pair) == 2 * len(stab)
        report["pair_is_whole_group"] = len(pair) == len(group)
        if verdict.partition_stabilizer_is_whole_group:
            report["pair_maximal"] = None
            report["agree"] = report["agree"] and report["pair_is_whole_group"]
        else:
            pair_max = brute_force_maximal(group, pair)
            report["pair_maximal"] = pair_max
            report["agree"] = report["agree"] and report["index_two"] and pair_max
    return report


def sym_on(subset: frozenset[int], n: int) -> set[Perm]:
    """All permutations of {0..n-1} supported inside the subset."""
    others = [i for i in range(n) if i not in subset]
    ordered = sorted(subset)
    out = set()
    for img in itertools.permutations(ordered):
        images = [0] * n
        for i in others:
            images[i] = i
        for a, b in zip(ordered, img):
            images[a] = b
        out.add(Perm(tuple(images)))
    return out


def finite_property_e_holds(n: int, u1: frozenset[int], u2: frozenset[int]) -> bool:
    """Closure check: Sym(u1) and Sym(u2) generate Sym(u1 | u2)."""
    if not u1 & u2:
        raise ValueError("the sets must intersect")
    generated = closure(sym_on(u1, n) | sym_on(u2, n), n)
    return generated == sym_on(u1 | u2, n)

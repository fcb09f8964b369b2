"""Nested families of cylinder swaps generating locally finite groups
whose orbit closures are nowhere dense Cantor subsets.

Each stage n picks a cylinder u_n around the all-zero point inside the
previous one, together with two odometer powers g_n, h_n carrying u_n to
two further disjoint cylinders inside u_{n-1}.  The stage involutions
swap u_n with one of the two images.  A word over {1,2} selects one
involution per stage; the orbit closure of the base point under the
selected involutions is covered, at truncation depth N, by the 2^N
cylinders indexed by words with letters in {0, chosen}.  All certificates
here are finite-depth and exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cantor import BaseSequence, ClopenSet, Cylinder, Point
from .elements import TfgElement, odometer_power
from .errors import ClosureCapError
from .genperm import TwoCycleSpec, realize_two_cycle
from .limits import require_depth
from .perms import Perm


@dataclass(frozen=True)
class Stage:
    u: ClopenSet
    g: TfgElement
    h: TfgElement
    swap_g: TfgElement
    swap_h: TfgElement


@dataclass(frozen=True)
class NDConstruction:
    base: BaseSequence
    stages: tuple[Stage, ...]

    @property
    def depth_of(self) -> tuple[int, ...]:
        return tuple(stage.u.depth for stage in self.stages)

    def x0(self) -> Point:
        return Point.zero(self.base)

    def u(self, n: int) -> ClopenSet:
        """u_0 is the full space; u_n the stage-n cylinder."""
        if n == 0:
            return ClopenSet.full(self.base)
        return self.stages[n - 1].u

    def involution(self, n: int, letter: int) -> TfgElement:
        """f^{(letter)}_n: the stage-n swap by g (letter 1) or h (letter 2)."""
        stage = self.stages[n - 1]
        if letter == 1:
            return stage.swap_g
        if letter == 2:
            return stage.swap_h
        raise ValueError("letter must be 1 or 2")

    def stage_map(self, n: int, letter: int) -> TfgElement:
        """f^{(letter)}_n including the identity for letter 0."""
        if letter == 0:
            return TfgElement(self.base, 0, (0,))
        return self.involution(n, letter)

    def stage_set(self, word: tuple[int, ...]) -> ClopenSet:
        """V^(w) = f^{(w_1)}_1 ... f^{(w_n)}_n (u_n) for a word over {0,1,2}."""
        n = len(word)
        v = self.u(n)
        for k in range(n, 0, -1):
            v = self.stage_map(k, word[k - 1]).image(v)
        return v


def check_omega(omega: str) -> tuple[int, ...]:
    word = tuple(int(c) for c in omega)
    if any(c not in (1, 2) for c in word):
        raise ValueError("omega must be a word over {1,2}")
    return word


def build_construction(base: BaseSequence, n_stages: int, seed: int = 0) -> NDConstruction:
    """Deterministic construction with odometer-power stage maps.

    Stage n descends to the first depth whose modulus is at least three
    times the previous one, so u_n, g_n(u_n) and h_n(u_n) are distinct
    cylinders inside u_{n-1}; g_n and h_n are the smallest positive
    odometer powers doing that.  The seed is recorded for interface
    stability but the policy is deterministic.
    """
    del seed
    if n_stages < 1:
        raise ValueError("need at least one stage")
    stages = []
    depth = 0
    for _ in range(n_stages):
        k_prev = base.modulus(depth)
        new_depth = depth + 1
        while base.modulus(new_depth) < 3 * k_prev:
            new_depth += 1
        require_depth(new_depth)
        u = Cylinder(base, new_depth, 0).to_clopen()
        g = odometer_power(base, k_prev)
        h = odometer_power(base, 2 * k_prev)
        stages.append(
            Stage(
                u,
                g,
                h,
                realize_two_cycle(TwoCycleSpec(u, g)),
                realize_two_cycle(TwoCycleSpec(u, h)),
            )
        )
        depth = new_depth
    return NDConstruction(base, tuple(stages))


def check_invariants(c: NDConstruction) -> None:
    """Nesting, disjointness and single-cylinder diameter control, exact."""
    x0 = c.x0()
    for n in range(1, len(c.stages) + 1):
        stage = c.stages[n - 1]
        prev = c.u(n - 1)
        images = [stage.u, stage.g.image(stage.u), stage.h.image(stage.u)]
        if not stage.u.contains_point(x0):
            raise AssertionError(f"stage {n}: base point left the cylinder")
        for img in images:
            if not img.is_subset(prev):
                raise AssertionError(f"stage {n}: image escapes the previous set")
        for i in range(3):
            for j in range(i + 1, 3):
                if not images[i].is_disjoint(images[j]):
                    raise AssertionError(f"stage {n}: images overlap")
    _check_diameters(c)


def _check_diameters(c: NDConstruction) -> None:
    words: list[tuple[int, ...]] = [()]
    for n in range(1, len(c.stages) + 1):
        words = [w + (a,) for w in words for a in (0, 1, 2)]
        for w in words:
            v = c.stage_set(w)
            if len(v.residues) != 1 or v.depth < n:
                raise AssertionError(
                    f"stage set of word {w} is not a deep single cylinder"
                )


def y_cover(c: NDConstruction, omega: str) -> ClopenSet:
    """Union of the 2^N stage sets whose letters are 0 or the omega letter."""
    word = check_omega(omega)
    if len(word) > len(c.stages):
        raise ValueError("omega longer than the construction")
    cover = ClopenSet.empty(c.base)
    options: list[tuple[int, ...]] = [()]
    for letter in word:
        options = [w + (a,) for w in options for a in (0, letter)]
    for w in options:
        cover = cover.union(c.stage_set(w))
    return cover


def cover_measures(c: NDConstruction, omega: str) -> list[Fraction]:
    word = check_omega(omega)
    return [
        y_cover(c, omega[:n]).measure() for n in range(len(word) + 1)
    ]


def check_nowhere_dense(c: NDConstruction, omega: str) -> bool:
    """Every admissible stage set keeps a nonempty residual after removing
    its two admissible children; the residual avoids the covered set."""
    word = check_omega(omega)
    prefixes: list[tuple[int, ...]] = [()]
    for n, letter in enumerate(word, start=1):
        for w in prefixes:
            parent = c.stage_set(w)
            child0 = c.stage_set(w + (0,))
            child1 = c.stage_set(w + (letter,))
            residual = parent.difference(child0.union(child1))
            if residual.is_empty():
                return False
        prefixes = [w + (a,) for w in prefixes for a in (0, letter)]
    return True


def truncated_group_order(
    c: NDConstruction, omega: str, n: int, cap: int = 500_000
) -> int:
    """Order of the group generated by the first n selected involutions,
    by exact closure on canonical elements."""
    word = check_omega(omega)
    if n > len(word):
        raise ValueError("not enough letters in omega")
    gens = [c.involution(k + 1, word[k]) for k in range(n)]
    ident = TfgElement(c.base, 0, (0,))
    group = {ident}
    frontier = [ident]
    while frontier:
        fresh = []
        for a in frontier:
            for g in gens:
                b = a.compose(g)
                if b not in group:
                    group.add(b)
                    fresh.append(b)
                    if len(group) > cap:
                        raise ClosureCapError("group closure exceeded the cap")
        frontier = fresh
    return len(group)


def gamma_truncated_order(n: int, cap: int = 500_000) -> int:
    """Order of the abstract-model group truncated to length-n strings.

    The k-th generator flips character k of the strings beginning with
    k-1 zeros.  Reported alongside truncated_group_order; the two values
    are computed independently and no relation is asserted.
    """
    strings = list(range(2 ** n))  # bit i of s = character i+1
    perms = []
    for k in range(1, n + 1):
        low_mask = (1 << (k - 1)) - 1
        images = [
            s ^ (1 << (k - 1)) if (s & low_mask) == 0 else s for s in strings
        ]
        perms.append(Perm(tuple(images)))
    group = {Perm.identity(2 ** n)}
    frontier = list(group)
    while frontier:
        fresh = []
        for a in frontier:
            for g in perms:
                b = a * g
                if b not in group:
                    group.add(b)
                    fresh.append(b)
                    if len(group) > cap:
                        raise ClosureCapError("gamma closure exceeded the cap")
        frontier = fresh
    return len(group)


def check_minimality_on_y(c: NDConstruction, omega: str) -> bool:
    """The orbit of the base point under the selected involutions meets
    every admissible stage-N cylinder."""
    word = check_omega(omega)
    n = len(word)
    gens = [c.involution(k + 1, word[k]) for k in range(n)]
    orbit = {c.x0()}
    frontier = [c.x0()]
    while frontier:
        fresh = []
        for x in frontier:
            for g in gens:
                y = g.apply(x)
                if y not in orbit:
                    orbit.add(y)
                    fresh.append(y)
        frontier = fresh
    options: list[tuple[int, ...]] = [()]
    for letter in word:
        options = [w + (a,) for w in options for a in (0, letter)]
    for w in options:
        v = c.stage_set(w)
        if not any(v.contains_point(x) for x in orbit):
            return False
    return True

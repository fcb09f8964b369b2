"""Self-contained property suites, runnable from the command line.

Each suite returns a list of (check-name, passed, detail) triples; a fixed
seed makes the reports reproducible byte for byte.
"""

from __future__ import annotations

from random import Random

from . import randgen
from .elements import compose_word, identity, odometer


def _suite_group_laws(rng: Random, cases: int = 200) -> list[tuple[str, bool, str]]:
    failures = 0
    for _ in range(cases):
        base = rng.choice(randgen.BASES)
        g = randgen.random_element(rng, base, 4)
        h = randgen.random_element(rng, base, 4)
        k = randgen.random_element(rng, base, 4)
        e = identity(base)
        ok = (
            g.compose(h).compose(k) == g.compose(h.compose(k))
            and g.compose(e) == g == e.compose(g)
            and g.compose(g.inverse()).is_identity()
            and g.inverse().compose(g).is_identity()
        )
        failures += not ok
    return [("group-laws", failures == 0, f"{cases} random triples")]


def _suite_index(rng: Random, cases: int = 200) -> list[tuple[str, bool, str]]:
    checks = []
    base_ok = all(odometer(b).index() == 1 for b in randgen.BASES)
    checks.append(("index-odometer", base_ok, "I(f) = 1"))
    failures = 0
    for _ in range(cases):
        base = rng.choice(randgen.BASES)
        g = randgen.random_element(rng, base, 4)
        h = randgen.random_element(rng, base, 4)
        if g.compose(h).index() != g.index() + h.index():
            failures += 1
        t = randgen.random_torsion(rng, base, 3)
        if t.index() != 0:
            failures += 1
    checks.append(("index-homomorphism", failures == 0, f"{cases} random pairs"))
    return checks


def _suite_measures(rng: Random, cases: int = 200) -> list[tuple[str, bool, str]]:
    failures = 0
    for _ in range(cases):
        base = rng.choice(randgen.BASES)
        g = randgen.random_element(rng, base, 4)
        u = randgen.random_clopen(rng, base, 4)
        v = randgen.random_clopen(rng, base, 4)
        img = g.image(u)
        if img.measure() != u.measure():
            failures += 1
        if u.measure() + v.measure() != u.union(v).measure() + u.intersection(v).measure():
            failures += 1
        if img.is_subset(u) and img != u:
            failures += 1
    return [("measures", failures == 0, f"{cases} random (g, u, v)")]


def _suite_words(rng: Random, cases: int = 100) -> list[tuple[str, bool, str]]:
    from .genperm import genperm_to_two_cycles, realize, realize_two_cycle, torsion_to_genperms

    failures = 0
    for _ in range(cases):
        base = rng.choice(randgen.BASES)
        t = randgen.random_torsion(rng, base, 3)
        word = []
        for spec in torsion_to_genperms(t):
            if realize(spec) != compose_word(
                base, [realize_two_cycle(tc) for tc in genperm_to_two_cycles(spec)]
            ):
                failures += 1
            word.extend(
                realize_two_cycle(tc) for tc in genperm_to_two_cycles(spec)
            )
        if compose_word(base, word) != t:
            failures += 1
    return [("two-cycle-words", failures == 0, f"{cases} random torsion elements")]


SUITES = {
    "group-laws": _suite_group_laws,
    "index": _suite_index,
    "measures": _suite_measures,
    "two-cycle-words": _suite_words,
}


def run_suite(name: str, seed: int = 0) -> list[tuple[str, bool, str]]:
    if name == "all":
        out = []
        for key in SUITES:
            out.extend(SUITES[key](Random(seed)))
        return out
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'")
    return SUITES[name](Random(seed))

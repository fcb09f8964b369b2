"""JSON-style serialization for every object type.

Integers stay JSON integers (arbitrary precision end to end); rationals
are serialized as "p/q" strings so no consumer is tempted to read them as
floats.  Clopen sets and points do not embed their radix sequence; the
parse functions take it as context, matching the file formats used by the
command-line front end.
"""

from __future__ import annotations

from fractions import Fraction

from .cantor import BaseSequence, ClopenSet, Point
from .decompose import Certificate, Tag
from .elements import TfgElement
from .genperm import GenPermSpec, TwoCycleSpec
from .perms import Perm
from .towers import KRPartition


def fraction_to_json(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def fraction_from_json(s: str) -> Fraction:
    num, _, den = s.partition("/")
    return Fraction(int(num), int(den or "1"))


def base_to_json(base: BaseSequence) -> dict:
    return {"pre": list(base.pre), "period": list(base.period)}


def base_from_json(data: dict) -> BaseSequence:
    return BaseSequence(tuple(data["pre"]), tuple(data["period"]))


def clopen_to_json(u: ClopenSet) -> dict:
    return {"depth": u.depth, "residues": list(u.residues)}


def clopen_from_json(data: dict, base: BaseSequence) -> ClopenSet:
    return ClopenSet(base, data["depth"], tuple(data["residues"]))


def point_to_json(x: Point) -> dict:
    return {"pre": list(x.pre), "period": list(x.period_digits)}


def point_from_json(data: dict, base: BaseSequence) -> Point:
    return Point(base, tuple(data["pre"]), tuple(data["period"]))


def element_to_json(g: TfgElement) -> dict:
    return {
        "base": base_to_json(g.base),
        "depth": g.depth,
        "cocycle": list(g.cocycle),
    }


def element_from_json(data: dict) -> TfgElement:
    return TfgElement(
        base_from_json(data["base"]), data["depth"], tuple(data["cocycle"])
    )


def genperm_to_json(spec: GenPermSpec) -> dict:
    return {
        "u": clopen_to_json(spec.u),
        "maps": [element_to_json(g) for g in spec.maps],
        "pi": list(spec.pi.images),
    }


def genperm_from_json(data: dict, base: BaseSequence) -> GenPermSpec:
    return GenPermSpec(
        clopen_from_json(data["u"], base),
        tuple(element_from_json(g) for g in data["maps"]),
        Perm(tuple(data["pi"])),
    )


def two_cycle_to_json(spec: TwoCycleSpec) -> dict:
    return {"u": clopen_to_json(spec.u), "g": element_to_json(spec.g)}


def two_cycle_from_json(data: dict, base: BaseSequence) -> TwoCycleSpec:
    return TwoCycleSpec(
        clopen_from_json(data["u"], base), element_from_json(data["g"])
    )


def kr_to_json(kr: KRPartition) -> dict:
    return {
        "u": clopen_to_json(kr.u),
        "g": element_to_json(kr.g),
        "towers": [
            {"height": k, "levels": [clopen_to_json(w) for w in tower]}
            for k, tower in kr.towers
        ],
    }


def kr_from_json(data: dict, base: BaseSequence) -> KRPartition:
    return KRPartition(
        clopen_from_json(data["u"], base),
        element_from_json(data["g"]),
        tuple(
            (
                t["height"],
                tuple(clopen_from_json(w, base) for w in t["levels"]),
            )
            for t in data["towers"]
        ),
    )


def certificate_to_json(cert: Certificate) -> dict:
    return {
        "target": element_to_json(cert.target),
        "u1": clopen_to_json(cert.u1),
        "u2": clopen_to_json(cert.u2),
        "factors": [
            {"tag": tag.value, "element": element_to_json(g)}
            for g, tag in cert.factors
        ],
    }


def certificate_from_json(data: dict) -> Certificate:
    target = element_from_json(data["target"])
    base = target.base
    return Certificate(
        target,
        clopen_from_json(data["u1"], base),
        clopen_from_json(data["u2"], base),
        tuple(
            (element_from_json(f["element"]), Tag(f["tag"]))
            for f in data["factors"]
        ),
    )

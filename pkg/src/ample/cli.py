"""Command-line front end.

Subcommands: elem, kr, return-map, prop-e, stab, nd, oracle, selftest.
Reports are single-line JSON with sorted keys, so a fixed command line and
seed reproduce byte-identical output.  Exit codes: 0 success, 1 a
verification failed, 2 argument or parse errors, 3 resource limits.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import serialize
from .cantor import BaseSequence
from .decompose import decompose_local, verify_certificate
from .elements import odometer
from .errors import AmpleError, ClosureCapError, DepthLimitError
from .limits import set_depth_limit
from .nowhere_dense import (
    build_construction,
    check_invariants,
    check_minimality_on_y,
    check_nowhere_dense,
    cover_measures,
    gamma_truncated_order,
    truncated_group_order,
    y_cover,
)
from .perms import Perm
from .stabilizers import (
    FiniteModel,
    FinitePointSet,
    classify_finite_stabilizer,
    finite_oracle_maximality,
    finite_property_e_holds,
    realize_permutation,
    same_orbit,
)
from .towers import build_kr, first_return, parity_exchange
from .selftest import run_suite


def _parse_base(text: str) -> BaseSequence:
    """Either a bare radix like "2" or JSON {"pre": [...], "period": [...]}."""
    text = text.strip()
    if text.isdigit():
        return BaseSequence.constant(int(text))
    return serialize.base_from_json(json.loads(text))


def _load_json(text_or_path: str):
    """Inline JSON if it parses, otherwise a path to a JSON file."""
    try:
        return json.loads(text_or_path)
    except json.JSONDecodeError:
        with open(text_or_path) as fh:
            return json.load(fh)


def _emit(report: dict, out_path: str | None) -> None:
    line = json.dumps(report, sort_keys=True, separators=(",", ":"))
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(line + "\n")
    else:
        print(line)


def _cmd_elem(args) -> int:
    g = serialize.element_from_json(_load_json(args.elem))
    report: dict = {"op": args.op}
    if args.op == "index":
        report["index"] = g.index()
    elif args.op == "inverse":
        report["result"] = serialize.element_to_json(g.inverse())
    elif args.op == "compose":
        h = serialize.element_from_json(_load_json(args.other))
        report["result"] = serialize.element_to_json(g.compose(h))
    elif args.op == "order":
        order = g.order()
        report["order"] = "infinite" if order is None else order
    elif args.op == "support":
        support = g.support()
        report["support"] = serialize.clopen_to_json(support)
        report["measure"] = serialize.fraction_to_json(support.measure())
    elif args.op == "apply":
        x = serialize.point_from_json(_load_json(args.point), g.base)
        report["result"] = serialize.point_to_json(g.apply(x))
    elif args.op == "image":
        u = serialize.clopen_from_json(_load_json(args.clopen), g.base)
        report["result"] = serialize.clopen_to_json(g.image(u))
    elif args.op == "wreath":
        form = g.wreath()
        report["sigma"] = list(form.sigma.images)
        report["carry"] = list(form.carry)
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(args.op)
    _emit(report, args.out)
    return 0


def _cmd_kr(args) -> int:
    base = _parse_base(args.base)
    u = serialize.clopen_from_json(_load_json(args.u), base)
    g = (
        serialize.element_from_json(_load_json(args.g))
        if args.g
        else odometer(base)
    )
    kr = build_kr(u, g)
    report = {
        "kr": serialize.kr_to_json(kr),
        "heights": kr.heights(),
        "levels": len(kr.levels()),
    }
    _emit(report, args.out)
    return 0


def _cmd_return_map(args) -> int:
    base = _parse_base(args.base)
    u = serialize.clopen_from_json(_load_json(args.u), base)
    f_u, h_u = first_return(u)
    order = h_u.order()
    ok = (
        f_u.compose(h_u) == odometer(base)
        and f_u.index() == 1
        and order is not None
    )
    report = {
        "f_u": serialize.element_to_json(f_u),
        "h_u": serialize.element_to_json(h_u),
        "index_f_u": f_u.index(),
        "order_h_u": order if order is not None else "infinite",
        "verified": ok,
    }
    _emit(report, args.out)
    return 0 if ok else 1


def _cmd_prop_e(args) -> int:
    base = _parse_base(args.base)
    g = serialize.element_from_json(_load_json(args.g))
    u1 = serialize.clopen_from_json(_load_json(args.u1), base)
    u2 = serialize.clopen_from_json(_load_json(args.u2), base)
    cert = decompose_local(g, u1, u2)
    ok = verify_certificate(cert)
    report = {
        "certificate": serialize.certificate_to_json(cert),
        "factors": len(cert),
        "verified": ok,
    }
    _emit(report, args.out)
    return 0 if ok else 1


def _cmd_stab(args) -> int:
    base = _parse_base(args.base)
    report: dict = {"action": args.action}
    ok = True
    if args.action == "classify":
        pts = FinitePointSet(
            tuple(
                serialize.point_from_json(p, base) for p in _load_json(args.points)
            )
        )
        verdict = classify_finite_stabilizer(pts)
        report["kind"] = verdict.kind.value
        report["orbit_blocks"] = [list(b) for b in verdict.orbit_blocks]
    elif args.action == "same-orbit":
        data = _load_json(args.points)
        x = serialize.point_from_json(data[0], base)
        y = serialize.point_from_json(data[1], base)
        report["same_orbit"] = same_orbit(x, y)
    elif args.action == "realize":
        pts = FinitePointSet(
            tuple(
                serialize.point_from_json(p, base) for p in _load_json(args.points)
            )
        )
        pi = Perm(tuple(_load_json(args.perm)))
        fixed = (
            FinitePointSet(
                tuple(
                    serialize.point_from_json(p, base)
                    for p in _load_json(args.fixed)
                )
            )
            if args.fixed
            else None
        )
        g = realize_permutation(pts, pi, fixed)
        ok = all(
            g.apply(pts.points[i]) == pts.points[pi(i)]
            for i in range(len(pts.points))
        )
        report["element"] = serialize.element_to_json(g)
        report["verified"] = ok
    else:  # pragma: no cover
        raise ValueError(args.action)
    _emit(report, args.out)
    return 0 if ok else 1


def _cmd_nd(args) -> int:
    base = _parse_base(args.base)
    c = build_construction(base, args.stages, args.seed)
    check_invariants(c)
    omega = args.omega or "1" * args.stages
    measures = cover_measures(c, omega)
    report: dict = {
        "stages": args.stages,
        "omega": omega,
        "cylinder_depths": [stage.u.depth for stage in c.stages],
        "cover": serialize.clopen_to_json(y_cover(c, omega)),
        "cover_measures": [serialize.fraction_to_json(m) for m in measures],
        "nowhere_dense": check_nowhere_dense(c, omega),
        "minimal_on_y": check_minimality_on_y(c, omega),
    }
    if args.order_n is not None:
        report["truncated_group_order"] = truncated_group_order(
            c, omega, args.order_n
        )
        report["gamma_model_order"] = gamma_truncated_order(args.order_n)
    ok = report["nowhere_dense"] and report["minimal_on_y"]
    _emit(report, args.out)
    return 0 if ok else 1


def _cmd_oracle(args) -> int:
    if args.generators:
        model = FiniteModel(
            args.n,
            tuple(Perm(tuple(p)) for p in _load_json(args.generators)),
        )
    else:
        model = FiniteModel.symmetric(args.n)
    y = frozenset(int(part) for part in args.y.split(","))
    report = finite_oracle_maximality(model, y)
    if args.u1 and args.u2:
        u1 = frozenset(int(p) for p in args.u1.split(","))
        u2 = frozenset(int(p) for p in args.u2.split(","))
        report["property_e"] = finite_property_e_holds(args.n, u1, u2)
    _emit(report, args.out)
    return 0 if report["agree"] else 1


def _cmd_selftest(args) -> int:
    results = run_suite(args.suite, args.seed)
    ok = all(passed for _, passed, _ in results)
    report = {
        "suite": args.suite,
        "seed": args.seed,
        "checks": [
            {"name": name, "passed": passed, "detail": detail}
            for name, passed, detail in results
        ],
        "all_passed": ok,
    }
    _emit(report, args.out)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ample",
        description="Exact computation in ample groups of odometers.",
    )
    parser.add_argument("--depth-limit", type=int, default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("elem", help="operations on single elements")
    p.add_argument("op", choices=[
        "index", "inverse", "compose", "order", "support", "apply",
        "image", "wreath",
    ])
    p.add_argument("--in", dest="elem", required=True,
                   help="element JSON (inline or path)")
    p.add_argument("--other", help="second element for compose")
    p.add_argument("--point", help="point JSON for apply")
    p.add_argument("--clopen", help="clopen JSON for image")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_elem)

    p = sub.add_parser("kr", help="Kakutani-Rokhlin towers")
    p.add_argument("--base", default="2")
    p.add_argument("--u", required=True)
    p.add_argument("--g", help="element JSON; defaults to the odometer")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_kr)

    p = sub.add_parser("return-map", help="first-return splitting f = f_u h_u")
    p.add_argument("--base", default="2")
    p.add_argument("--u", required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_return_map)

    p = sub.add_parser("prop-e", help="local decomposition certificates")
    p.add_argument("--base", default="2")
    p.add_argument("--g", required=True)
    p.add_argument("--u1", required=True)
    p.add_argument("--u2", required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_prop_e)

    p = sub.add_parser("stab", help="orbit tests and stabilizer tools")
    p.add_argument("action", choices=["classify", "same-orbit", "realize"])
    p.add_argument("--base", default="2")
    p.add_argument("--points", required=True, help="JSON list of points")
    p.add_argument("--perm", help="JSON image list for realize")
    p.add_argument("--fixed", help="JSON list of points to fix")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_stab)

    p = sub.add_parser("nd", help="nowhere-dense construction and checks")
    p.add_argument("--base", default="2")
    p.add_argument("--stages", type=int, required=True)
    p.add_argument("--omega", help="word over {1,2}; defaults to all 1s")
    p.add_argument("--order-n", type=int, default=None,
                   help="also compute the truncated group order")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_nd)

    p = sub.add_parser("oracle", help="finite-model maximality oracle")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--y", required=True, help="comma-separated points")
    p.add_argument("--generators", help="JSON list of permutation image lists")
    p.add_argument("--u1", help="comma-separated subset for property E")
    p.add_argument("--u2")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("selftest", help="run a verification suite")
    p.add_argument("--suite", default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.depth_limit is not None:
        set_depth_limit(args.depth_limit)
    try:
        return args.func(args)
    except (DepthLimitError, ClosureCapError) as exc:
        print(json.dumps({"error": str(exc), "kind": "resource"}), file=sys.stderr)
        return 3
    except (AmpleError, ValueError, KeyError, OSError) as exc:
        print(json.dumps({"error": str(exc), "kind": "input"}), file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

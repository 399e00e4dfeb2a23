"""Command-line front door.

Every subcommand reads schema-validated JSON, runs one library
operation, and prints a deterministic report to stdout: same inputs and
seed, same bytes.  Timing goes to stderr so it never breaks that
promise.  Exit codes: 0 success, 2 a lift correctly refused a target
outside its validity region, 1 anything malformed (including failing
verify rows).
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io as _io
import json
import os
import re
import sys
import time
from typing import Optional

from . import io as codecs
from .approximation import cover_approximation, refinement_sweep
from .barycenter import barycenter_point
from .core import ConvexParams, odot, oplus, rho, s_point
from .errors import BadInput, Rejection, TropibaryError
from .geometry import (
    Box,
    certify_id_oplus_not_open,
    certify_y_beta_not_open,
    extremal_points,
    hull_membership,
    render_polytope_svg,
)
from .lifting import (
    BoxHost,
    brute_force_lift_beta,
    brute_force_lift_box,
    brute_force_lift_interval,
    brute_force_lift_s,
    lift_beta,
    lift_s_box,
    lift_s_interval,
    lift_s_finite,
    witness_distance,
)
from .measures import IdemMeasure, combine, map_atoms, measure_dist, pushforward
from .verify import SCALES, SUITES, run_all, run_suite

DEFAULT_SEED = 7


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let option values be negative rationals: --t -1/4, --p -inf
        self._negative_number_matcher = re.compile(r"^-(inf|\d+(/\d+)?|\d*\.\d+)$")

    # argparse exits with 2 on usage errors; 2 is reserved for rejections here.
    def error(self, message):
        self.print_usage(sys.stderr)
        raise BadInput(message)


def _digest(*paths: str) -> str:
    h = hashlib.sha256()
    for p in paths:
        with open(p, "rb") as fh:
            h.update(fh.read())
    return h.hexdigest()[:16]


def _emit(report: dict):
    sys.stdout.write(codecs.dump_document(report) + "\n")


def _resolve_seed(value: Optional[int]) -> int:
    if value is not None:
        return value
    env = os.environ.get("TROPIBARY_SEED")
    return int(env) if env else DEFAULT_SEED


def _embedded(mu: IdemMeasure) -> IdemMeasure:
    if mu.space is None:
        return mu
    space = mu.space
    if space.points is None:
        raise BadInput("this measure's space has no embedding, so no barycenter")
    return map_atoms(lambda i: space.points[i], mu)


# -- subcommand handlers -------------------------------------------------------


def _cmd_eval(args) -> dict:
    mu = codecs.measure_from_json(codecs.read_document(args.measure, "measure"))
    phi = codecs.table_from_json(codecs.read_document(args.table, "table"))
    value = mu(phi)
    return {
        "subcommand": "eval",
        "inputs_digest": _digest(args.measure, args.table),
        "outputs": {"value": str(value)},
    }


def _cmd_combine(args) -> dict:
    first = codecs.measure_from_json(codecs.read_document(args.first, "measure"))
    second = codecs.measure_from_json(codecs.read_document(args.second, "measure"))
    params = ConvexParams(args.t, args.p)
    out = combine(first, second, params)
    return {
        "subcommand": "combine",
        "inputs_digest": _digest(args.first, args.second),
        "outputs": {"measure": codecs.measure_to_json(out)},
    }


def _cmd_pushforward(args) -> dict:
    f = codecs.map_from_json(codecs.read_document(args.map, "map"))
    mu = codecs.measure_from_json(codecs.read_document(args.measure, "measure"))
    out = pushforward(f, mu)
    return {
        "subcommand": "pushforward",
        "inputs_digest": _digest(args.map, args.measure),
        "outputs": {"measure": codecs.measure_to_json(out)},
    }


def _cmd_barycenter(args) -> dict:
    mu = codecs.measure_from_json(codecs.read_document(args.measure, "measure"))
    point = barycenter_point(_embedded(mu))
    outputs: dict = {"point": codecs.vector_to_json(point)}
    digests = [args.measure]
    if args.in_polytope:
        poly = codecs.polytope_from_json(codecs.read_document(args.in_polytope, "polytope"))
        coeffs = hull_membership(poly, point)
        outputs["membership"] = {
            "member": coeffs is not None,
            "coefficients": [str(c) for c in coeffs] if coeffs else None,
        }
        digests.append(args.in_polytope)
    return {
        "subcommand": "barycenter",
        "inputs_digest": _digest(*digests),
        "outputs": outputs,
    }


def _witness_payload(kind: str, w) -> dict:
    if kind == "combination-measures":
        first = codecs.measure_to_json(w.lifted_first)
        second = codecs.measure_to_json(w.lifted_second)
    elif kind == "interval":
        first = str(w.lifted_first)
        second = str(w.lifted_second)
    else:
        first = codecs.vector_to_json(w.lifted_first)
        second = codecs.vector_to_json(w.lifted_second)
    return {
        "first": first,
        "second": second,
        "params": codecs.params_to_json(w.params),
        "case_tag": w.case_tag,
    }


def _cmd_lift_s(instance: dict, target_doc: dict, oracle: bool) -> dict:
    kind = instance["kind"]
    if kind == "combination-measures":
        space = codecs.space_from_json(instance["space"])
        first = IdemMeasure(codecs._atoms_from_json(instance["first"], space), space=space)
        second = IdemMeasure(codecs._atoms_from_json(instance["second"], space), space=space)
        params = codecs.params_from_json(instance["params"])
        target = IdemMeasure(codecs._atoms_from_json(target_doc["measure"], space), space=space)
        w = lift_s_finite(first, second, params, target)
        exact = combine(w.lifted_first, w.lifted_second, w.params) == target
        dist = witness_distance(w, first, second, params)
        found = brute_force_lift_s(first, second, params, target, mode="best") if oracle else None
    elif kind == "interval":
        lo, hi = (codecs.scalar_from_json(v) for v in instance["bounds"])
        x = codecs.scalar_from_json(instance["x"])
        y = codecs.scalar_from_json(instance["y"])
        params = codecs.params_from_json(instance["params"])
        target = codecs.scalar_from_json(target_doc["scalar"])
        w = lift_s_interval(x, y, params, target, (lo, hi))
        exact = oplus(odot(w.params.t, w.lifted_first), odot(w.params.p, w.lifted_second)) == target
        dist = max(rho(w.lifted_first, x), rho(w.lifted_second, y), w.params.dist(params))
        found = (
            brute_force_lift_interval(x, y, params, target, (lo, hi), mode="best")
            if oracle
            else None
        )
    elif kind == "box":
        box = Box(codecs.vector_from_json(instance["low"]), codecs.vector_from_json(instance["high"]))
        x = codecs.vector_from_json(instance["x"])
        y = codecs.vector_from_json(instance["y"])
        params = codecs.params_from_json(instance["params"])
        target = codecs.vector_from_json(target_doc["point"])
        w = lift_s_box(x, y, params, target, box)
        exact = s_point(w.lifted_first, w.lifted_second, w.params) == target
        dist = witness_distance(w, x, y, params)
        found = brute_force_lift_box(x, y, params, target, box, mode="best") if oracle else None
    else:
        raise BadInput(f"instance kind {kind!r} does not fit lift s")
    out = {
        "witness": _witness_payload(kind, w),
        "exactness": exact,
        "distance": dist,
    }
    if oracle:
        out["oracle"] = {
            "witness_found": found is not None,
            "witness": _witness_payload(kind, found) if found is not None else None,
        }
    return out


def _cmd_lift_beta(instance: dict, target_doc: dict, oracle: bool) -> dict:
    box = Box(codecs.vector_from_json(instance["low"]), codecs.vector_from_json(instance["high"]))
    nu = IdemMeasure(codecs._atoms_from_json(instance["measure"], None))
    target = codecs.vector_from_json(target_doc["point"])
    out = lift_beta(nu, target, BoxHost(box))
    payload = {
        "witness": codecs.measure_to_json(out),
        "exactness": barycenter_point(out) == target,
        "distance": measure_dist(out, nu),
    }
    if oracle:
        found = brute_force_lift_beta(nu, target, box, mode="best")
        payload["oracle"] = {
            "witness_found": found is not None,
            "witness": codecs.measure_to_json(found) if found is not None else None,
        }
    return payload


def _cmd_lift(args) -> dict:
    instance = codecs.read_document(args.instance, "instance")
    target_doc = codecs.read_document(args.target, "target")
    if args.map == "s":
        payload = _cmd_lift_s(instance, target_doc, args.oracle)
    else:
        if instance["kind"] != "barycenter-box":
            raise BadInput("lift beta expects a barycenter-box instance")
        payload = _cmd_lift_beta(instance, target_doc, args.oracle)
    return {
        "subcommand": f"lift {args.map}",
        "inputs_digest": _digest(args.instance, args.target),
        "outputs": payload,
    }


def _cmd_approx(args) -> dict:
    mu = codecs.measure_from_json(codecs.read_document(args.measure, "measure"))
    if args.chain:
        covers = [codecs.cover_from_json(codecs.read_document(p, "cover")) for p in args.chain]
        rows = refinement_sweep(mu, covers)
        buf = _io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["cover_index", "dist"])
        for k, d in rows:
            writer.writerow([k, repr(d)])
        sys.stdout.write(buf.getvalue())
        return {}
    if args.cover is None:
        raise BadInput("approx needs --cover or --chain")
    cover = codecs.cover_from_json(codecs.read_document(args.cover, "cover"))
    nu = cover_approximation(mu, cover)
    embedded_nu, embedded_mu = _embedded(nu), _embedded(mu)
    return {
        "subcommand": "approx",
        "inputs_digest": _digest(args.measure, args.cover),
        "outputs": {
            "measure": codecs.measure_to_json(nu),
            "beta_preserved": barycenter_point(embedded_nu) == barycenter_point(embedded_mu),
            "dist": measure_dist(nu, mu),
        },
    }


def _cmd_ext(args) -> dict:
    poly = codecs.polytope_from_json(codecs.read_document(args.polytope, "polytope"))
    ext = extremal_points(poly, samples=200, seed=_resolve_seed(args.seed))
    if args.svg:
        render_polytope_svg(poly, args.svg, extremal=ext)
    return {
        "subcommand": "ext",
        "inputs_digest": _digest(args.polytope),
        "outputs": {"extremal": [codecs.vector_to_json(p) for p in ext]},
    }


def _cmd_member(args) -> dict:
    poly = codecs.polytope_from_json(codecs.read_document(args.polytope, "polytope"))
    point = codecs.vector_from_json(json.loads(args.point))
    coeffs = hull_membership(poly, point)
    return {
        "subcommand": "member",
        "inputs_digest": _digest(args.polytope),
        "outputs": {
            "member": coeffs is not None,
            "coefficients": [str(c) for c in coeffs] if coeffs else None,
        },
    }


def _cmd_counterexample(args) -> dict:
    seed = _resolve_seed(args.seed)
    if args.which == "id-oplus":
        cert = certify_id_oplus_not_open(args.i, samples=args.samples, seed=seed)
    else:
        cert = certify_y_beta_not_open(args.i, samples=args.samples, seed=seed)
    doc = codecs.certificate_to_json(cert)
    codecs.validate_document(doc, "certificate")
    return {
        "subcommand": f"counterexample {args.which}",
        "seed": seed,
        "outputs": {"certificate": doc},
    }


def _cmd_verify(args) -> tuple[dict, bool]:
    seed = _resolve_seed(args.seed)
    if args.suite == "all":
        results = run_all(seed=seed, scale=args.scale)
    else:
        results = [run_suite(args.suite, seed=seed, scale=args.scale)]
    rows = [r for sr in results for r in sr.rows]
    for r in rows:
        sys.stdout.write(f"{r.verdict.upper():4s} {r.suite}/{r.case}: {r.detail}\n")
    ok = all(r.ok for r in rows)
    failed = sum(1 for r in rows if not r.ok)
    sys.stdout.write(
        f"verify: {'PASS' if ok else 'FAIL'} "
        f"({len(rows)} rows, {failed} failed, seed {seed}, scale {args.scale})\n"
    )
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["suite", "case", "verdict", "detail"])
            for r in rows:
                writer.writerow([r.suite, r.case, r.verdict, r.detail])
    return {}, ok


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tropibary", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a measure on a function table")
    p.add_argument("--measure", required=True)
    p.add_argument("--table", required=True)

    p = sub.add_parser("combine", help="max-plus convex combination of two measures")
    p.add_argument("--first", required=True)
    p.add_argument("--second", required=True)
    p.add_argument("--t", required=True)
    p.add_argument("--p", required=True)

    p = sub.add_parser("pushforward", help="image of a measure under a space map")
    p.add_argument("--map", required=True)
    p.add_argument("--measure", required=True)

    p = sub.add_parser("barycenter", help="idempotent barycenter of a measure")
    p.add_argument("measure")
    p.add_argument("--in-polytope", default=None)

    p = sub.add_parser("lift", help="openness lift: exact preimage of a nearby target")
    p.add_argument("map", choices=["s", "beta"])
    p.add_argument("--instance", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--oracle", action="store_true")

    p = sub.add_parser("approx", help="cover approximation preserving the barycenter")
    p.add_argument("--measure", required=True)
    p.add_argument("--cover", default=None)
    p.add_argument("--chain", nargs="+", default=None)

    p = sub.add_parser("ext", help="extremal points of a tropical polytope")
    p.add_argument("--polytope", required=True)
    p.add_argument("--svg", default=None)
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("member", help="hull membership via residuated coefficients")
    p.add_argument("--polytope", required=True)
    p.add_argument("--point", required=True, help="JSON array of coordinates")

    p = sub.add_parser("counterexample", help="build an obstruction certificate")
    p.add_argument("which", choices=["id-oplus", "y-beta"])
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("verify", help="run the machine-checked invariant suites")
    p.add_argument("--suite", default="all", choices=["all"] + sorted(SUITES))
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--scale", default="default", choices=sorted(SCALES))
    p.add_argument("--csv", default=None)

    return parser


_HANDLERS = {
    "eval": _cmd_eval,
    "combine": _cmd_combine,
    "pushforward": _cmd_pushforward,
    "barycenter": _cmd_barycenter,
    "lift": _cmd_lift,
    "approx": _cmd_approx,
    "ext": _cmd_ext,
    "member": _cmd_member,
    "counterexample": _cmd_counterexample,
}


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    started = time.monotonic()
    try:
        args = parser.parse_args(argv)
        if args.command == "verify":
            _, ok = _cmd_verify(args)
            return 0 if ok else 1
        report = _HANDLERS[args.command](args)
        if report:
            _emit(report)
        return 0
    except Rejection as exc:
        _emit({"rejected": str(exc), "kind": type(exc).__name__})
        return 2
    except TropibaryError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    finally:
        sys.stderr.write(f"elapsed: {time.monotonic() - started:.3f}s\n")


if __name__ == "__main__":
    sys.exit(main())

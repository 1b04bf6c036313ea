"""Command-line front end: ``bitcong <command> [options]``; reports are JSON."""
from __future__ import annotations

import argparse
import json
import random
import sys
import time
from pathlib import Path

from . import kummer as K
from . import quartic_curves as QC
from .bitangent import (
    SCHEMA,
    QuarticSurface,
    SamplingError,
    SurfaceError,
    class_count,
    draw_generic,
    order_count,
)
from .fields import parse_element, parse_field
from .poly import (
    MAX_DISC_DEGREE,
    PolyError,
    disc_sqrt_char2,
    format_poly,
    parse_poly,
    universal_discriminant,
)
from .projgeom import ProjPlane, ProjPoint, random_plane, random_point

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class InputError(Exception):
    pass


def _field(args):
    try:
        return parse_field(args.field)
    except ValueError as e:
        raise InputError(str(e)) from e


def _poly_text(args) -> str | None:
    if args.poly and args.poly_file:
        raise InputError("give --poly or --poly-file, not both")
    if args.poly_file:
        try:
            return Path(args.poly_file).read_text().strip()
        except OSError as e:
            raise InputError(f"cannot read {args.poly_file}: {e}") from e
    return args.poly


def _parse(text: str, field, nvars: int):
    try:
        return parse_poly(text, field, nvars)
    except (PolyError, ValueError) as e:
        raise InputError(f"cannot parse polynomial: {e}") from e


def _coords(text: str, field, n: int = 4) -> list[int]:
    parts = K._split_args(text)
    if len(parts) != n:
        raise InputError(f"expected {n} coordinates, got {len(parts)}")
    try:
        return [parse_element(field, p).value for p in parts]
    except ValueError as e:
        raise InputError(str(e)) from e


# -- verify-kummer -----------------------------------------------------------------

class _Suite:
    def __init__(self):
        self.checks: list[dict] = []

    def add(self, name: str, ok: bool, **detail):
        self.checks.append({"check": name, "passed": bool(ok), "detail": detail})

    @property
    def first_failure(self) -> str | None:
        return next((c["check"] for c in self.checks if not c["passed"]), None)


def cmd_verify_kummer(args) -> tuple[dict, int]:
    field = _field(args)
    rng = random.Random(args.seed)
    if not args.family:
        raise InputError("--family is required")
    try:
        fam = K.parse_family(args.family, field, rng)
    except ValueError as e:
        raise InputError(str(e)) from e
    suite = _Suite()
    X = K.kummer_surface(fam)
    suite.add("surface", True, polynomial=format_poly(X.F, ["x", "y", "z", "w"]))
    try:
        sing = K.singular_points(fam)
        suite.add("singular_points", True, **sing.to_json())
    except AssertionError as e:
        suite.add("singular_points", False, error=str(e))
    try:
        tropes = K.trope_data(fam)
        suite.add(
            "tropes", True,
            planes=[{"plane": p.to_json(), "conic": format_poly(c, ["x", "y", "z", "w"])} for p, c in tropes],
        )
    except (AssertionError, ValueError) as e:
        suite.add("tropes", False, error=str(e))
    n_inv = min(args.samples, 200)
    for T in K.involutions(fam):
        pres, M = K.check_preserves(X, T)
        inv, h = K.check_involutive(T)
        suite.add(f"preserves:{T.name}", pres, multiplier_degree=M.degree() if M is not None else None)
        suite.add(f"involutive:{T.name}", inv, factor_degree=h.degree() if h is not None else None)
        rep = K.check_bitangent_involution(X, T, n_inv, rng)
        if T.name != "tau":
            suite.add(f"bitangent:{T.name}", rep.passed, **rep.to_json())
        else:
            # a projective symmetry: its orbit lines are expected not to be bitangent
            suite.add(f"not_bitangent:{T.name}", not rep.symbolic and bool(rep.failures), **rep.to_json())
    for name, rels in K.congruence_relations(fam).items():
        T = next(t for t in K.involutions(fam) if t.name == name)
        pc = K.plucker_congruence(T, rels, X, rng=rng)
        suite.add(f"plucker:{name}", all(r.identity for r in pc.relations), **pc.to_json())
    m_exp, n_exp = K.expected_bidegree_family(fam)
    orders, classes = [], []
    for _ in range(args.samples if args.samples < 20 else 20):
        try:
            q, redraws = K.generic_point(fam, rng, X)
            P, predraws = K.generic_plane(fam, rng)
        except SamplingError as e:
            suite.add("sampling", False, error=str(e))
            break
        ro = order_count(X, q, workers=args.workers, predicted=K.predicted_bitangents(fam, through=q), seed=args.seed)
        rc = class_count(X, P, workers=args.workers, predicted=K.predicted_bitangents(fam, in_plane=P), seed=args.seed)
        orders.append(_strip_time(ro.to_json()) | {"redraws": redraws})
        classes.append(_strip_time(rc.to_json()) | {"redraws": predraws})
    suite.add("order", all(r["count"] == m_exp and r["match"] for r in orders), expected=m_exp, reports=orders)
    suite.add("class", all(r["count"] == n_exp and r["match"] for r in classes), expected=n_exp, reports=classes)
    if fam.variant == "ordinary":
        fl = K.fixed_locus_check(fam, min(args.samples, 200), rng)
        suite.add("fixed_locus", fl.passed, **fl.to_json())
    report = {
        "schema": SCHEMA,
        "command": "verify-kummer",
        "family": fam.to_json(),
        "seed": args.seed,
        "bidegree": [m_exp, n_exp],
        "checks": suite.checks,
        "first_failure": suite.first_failure,
        "passed": suite.first_failure is None,
    }
    return report, EXIT_PASS if report["passed"] else EXIT_FAIL


def _strip_time(d: dict) -> dict:
    d = dict(d)
    d.pop("elapsed_ms", None)
    return d


# -- count ----------------------------------------------------------------------------

def _surface_from_args(args, field, rng) -> tuple[QuarticSurface, K.KummerFamily | None]:
    text = _poly_text(args)
    if text and args.family:
        raise InputError("give a polynomial or a family, not both")
    if args.family:
        try:
            fam = K.parse_family(args.family, field, rng)
        except ValueError as e:
            raise InputError(str(e)) from e
        return K.kummer_surface(fam), fam
    if not text:
        raise InputError("a surface is required (--poly, --poly-file or --family)")
    try:
        return QuarticSurface(_parse(text, field, 4), text), None
    except SurfaceError as e:
        raise InputError(str(e)) from e


def _prediction(fam, **sample):
    if fam is None:
        return None
    try:
        return K.predicted_bitangents(fam, **sample)
    except ValueError:
        # the sample is not in general position; report the count without a prediction
        return None


def cmd_count(args) -> tuple[dict, int]:
    field = _field(args)
    if not field.is_finite or field.characteristic != 2:
        raise InputError("count needs a finite field of characteristic 2")
    rng = random.Random(args.seed)
    X, fam = _surface_from_args(args, field, rng)
    if args.mode == "point":
        if args.at:
            q = ProjPoint.of(field, _coords(args.at, field))
        elif fam:
            q, _ = K.generic_point(fam, rng, X)
        else:
            q, _ = draw_generic(rng, lambda r: random_point(field, r), [X.contains])
        pred = _prediction(fam, through=q)
        rep = order_count(X, q, workers=args.workers, predicted=pred, seed=args.seed)
        return _strip_time(rep.to_json()) | {"command": "count"}, EXIT_PASS
    if args.at:
        plane = ProjPlane.of(field, _coords(args.at, field))
    elif fam:
        plane, _ = K.generic_plane(fam, rng)
    else:
        plane = random_plane(field, rng)
    pred = _prediction(fam, in_plane=plane)
    rep = class_count(X, plane, workers=args.workers, predicted=pred, seed=args.seed)
    out = _strip_time(rep.to_json()) | {"command": "count"}
    code = EXIT_PASS
    if args.k_max:
        C = QC.plane_section(X.F, plane)
        sm = QC.curve_is_smooth(C, 2)
        if sm.smooth:
            st = QC.plane_bitangent_count(C, args.k_max, args.workers, check_smooth=False)
            out["section"] = _strip_time(st.to_json())
            code = EXIT_PASS if st.stabilized else EXIT_INCONCLUSIVE
        else:
            out["section"] = {"smoothness": sm.to_json(), "stabilized": False}
            code = EXIT_INCONCLUSIVE
    return out, code


# -- disc -------------------------------------------------------------------------------

def cmd_disc(args) -> tuple[dict, int]:
    d = args.degree
    if not 2 <= d <= MAX_DISC_DEGREE:
        raise InputError(f"degree must be between 2 and {MAX_DISC_DEGREE}")
    names = [f"a{i}" for i in range(d + 1)]
    D = universal_discriminant(d, char2=True)
    P = disc_sqrt_char2(d)
    ok = P * P == D and P.is_homogeneous() == d - 1
    report = {
        "schema": SCHEMA,
        "command": "disc",
        "degree": d,
        "discriminant_mod_2": format_poly(D, names),
        "sqrt": format_poly(P, names),
        "sqrt_degree": P.is_homogeneous(),
        "expected_sqrt_degree": d - 1,
        "square_verified": P * P == D,
        "passed": ok,
    }
    return report, EXIT_PASS if ok else EXIT_FAIL


# -- wall -------------------------------------------------------------------------------

def cmd_wall(args) -> tuple[dict, int]:
    text = _poly_text(args)
    if args.kind:
        if text:
            raise InputError("give --kind or a polynomial, not both")
        if args.kind not in QC.KINDS:
            raise InputError(f"unknown kind {args.kind!r}")
        C = QC.wall_fixture(args.kind)
    else:
        if not text:
            raise InputError("a plane quartic is required (--poly, --poly-file or --kind)")
        field = _field(args)
        try:
            C = QC.PlaneQuartic(_parse(text, field, 3), text)
        except QC.CurveError as e:
            raise InputError(str(e)) from e
    try:
        res = QC.plane_bitangent_count(C, args.k_max, args.workers)
    except QC.CurveError as e:
        return {"schema": SCHEMA, "command": "wall", "curve": C.name, "error": str(e), "passed": False}, EXIT_FAIL
    out = _strip_time(res.to_json()) | {"command": "wall"}
    if args.kind:
        f = C.field
        listed = {tuple(ln) for ln in QC.listed_bitangents(args.kind)}
        k0 = min(res.witnesses)
        got = {tuple(parse_element(f, c).value for c in w) for w in res.witnesses[k0]}
        out["listed_found"] = listed <= got
    return out, EXIT_PASS if res.stabilized else EXIT_INCONCLUSIVE


# -- fixtures -------------------------------------------------------------------------

def cmd_fixtures(args) -> tuple[dict, int]:
    field = parse_field(args.field) if args.field else None
    rng = random.Random(args.seed)
    results = [
        K.verify_cyclic_fixture(field, min(args.samples, 200), rng).to_json(),
        K.verify_center_fixture(field, rng=rng).to_json(),
    ]
    walls = []
    for kind in QC.KINDS:
        spec, q = QC.WALL_FIXTURES[kind]
        C = QC.wall_fixture(kind)
        walls.append({"kind": kind, "field": spec, "Q": q, "quartic": format_poly(C.C, ["x", "y", "z"])})
    ok = all(r["passed"] for r in results)
    return {"schema": SCHEMA, "command": "fixtures", "surfaces": results, "wall": walls, "passed": ok}, (
        EXIT_PASS if ok else EXIT_FAIL
    )


# -- entry point ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bitcong", description="Bitangent congruences of quartic surfaces in characteristic 2.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, field_default="GF(2^5)"):
        p.add_argument("--field", default=field_default, help="field spec, e.g. GF(2^5)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--samples", type=int, default=20)
        p.add_argument("--k-max", dest="k_max", type=int, default=None)
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--out", default=None, help="write the JSON report here instead of stdout")
        p.add_argument("--poly", default=None)
        p.add_argument("--poly-file", dest="poly_file", default=None)
        p.add_argument("--family", default=None, help="ordinary:a,b,c | rank1:alpha,beta | supersingular:alpha (or :rand)")

    p = sub.add_parser("verify-kummer", help="run the full verification suite for a Kummer family")
    common(p)
    p.set_defaults(func=cmd_verify_kummer)

    p = sub.add_parser("count", help="order (point) or class (plane) count of the bitangent congruence")
    common(p)
    p.add_argument("--mode", choices=("point", "plane"), default="point")
    p.add_argument("--at", default=None, help="coordinates of the point or plane (comma separated)")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("disc", help="universal binary discriminant modulo 2 and its square root")
    common(p)
    p.add_argument("--degree", "-d", type=int, required=True)
    p.set_defaults(func=cmd_disc)

    p = sub.add_parser("wall", help="bitangent count and 2-rank of a plane quartic")
    common(p, field_default="GF(2)")
    p.add_argument("--kind", default=None, help="use the pinned Wall fixture of this kind (I-IV)")
    p.set_defaults(func=cmd_wall)

    p = sub.add_parser("fixtures", help="check the pinned fixture surfaces and list the Wall fixtures")
    common(p, field_default=None)
    p.set_defaults(func=cmd_fixtures)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "wall" and args.k_max is None:
        args.k_max = 10
    if args.workers < 1 or args.samples < 1:
        print("error: --workers and --samples must be positive", file=sys.stderr)
        return EXIT_INPUT
    t0 = time.perf_counter()
    try:
        report, code = args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except AssertionError as e:
        print(f"verification failed: {e}", file=sys.stderr)
        return EXIT_FAIL
    report["elapsed_ms"] = round((time.perf_counter() - t0) * 1000, 3)
    text = json.dumps(report, indent=2, sort_keys=False)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    if code == EXIT_FAIL and report.get("first_failure"):
        print(f"failed: {report['first_failure']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: ``blade-angles <command> [options]``.

Exit codes: 0 success, 1 identity failure, 2 input/usage error,
3 numerical or rank error.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from collections import OrderedDict

import numpy as np

from . import identities as ids
from .algebra import DEFAULT_TOL, MAX_DIM, Tolerance, anticommutator, commutator, left_contraction, outer_product, scalar_product
from .angles import oriented_angles
from .bivector import (
    angle_bivector_from_data,
    coordinate_basis_labels,
    exp_angle_bivector,
    geodesic_sample,
    geodesic_length,
    plucker_decomposition,
)
from .blades import Blade
from .errors import BladeAnglesError
from .io import InputDocument, InputError, fmt_human, load_csv, load_json, mv_terms, to_json
from .principal import principal_data
from .sampling import controlled_pair, digest, random_blade, random_homogeneous, trial_rng

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_NUMERIC = 0, 1, 2, 3
ENV_EPS = "BLADE_ANGLES_EPS"


class UsageError(Exception):
    pass


def _tolerance(args, doc: InputDocument | None = None) -> Tolerance:
    eps = DEFAULT_TOL.identity
    if doc is not None and "eps" in doc.options:
        eps = float(doc.options["eps"])
    env = os.environ.get(ENV_EPS)
    if env:
        try:
            eps = float(env)
        except ValueError as exc:
            raise UsageError(f"{ENV_EPS}={env!r} is not a number") from exc
    if args.eps is not None:
        eps = args.eps
    try:
        return Tolerance(DEFAULT_TOL.structural, eps)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _document(args) -> InputDocument:
    if args.input and args.csv:
        raise UsageError("use either --input or --csv, not both")
    if args.input:
        return load_json(args.input)
    if args.csv:
        return load_csv(*args.csv)
    raise UsageError("this command needs --input PATH or --csv A.csv B.csv")


def _deg(x: float) -> float:
    return math.degrees(x)


# ----------------------------------------------------------------- reports


def _principal_section(pd) -> dict:
    return OrderedDict(
        thetas=[float(t) for t in pd.thetas],
        d=pd.d,
        D=pd.D,
        eps_a=pd.eps_a,
        eps_b=pd.eps_b,
        eps_ab=pd.eps_ab,
        orientation_determinate=pd.orientation_determinate,
    )


def _flags(pd, phi=None) -> list[str]:
    out = []
    if not pd.orientation_determinate:
        out.append("relative orientation is basis-dependent (~A * B vanishes)")
    if phi is not None:
        out.extend(phi.flags)
    elif pd.m and pd.right_mask[pd.m - 1]:
        out.append("non-unique: last principal angle is pi/2")
    return out


def report_angles(a: Blade, b: Blade, tol: Tolerance) -> dict:
    pd = principal_data(a, b, tol)
    rep = oriented_angles(a, b, pd, tol)
    angles = OrderedDict()
    for k, v in rep.as_dict().items():
        angles[k] = v
    degrees = OrderedDict((k, _deg(v)) for k, v in rep.as_dict().items() if k.startswith(("asym", "comp", "max", "min", "oriented_a", "oriented_c", "oriented_m")))
    return OrderedDict(principal=_principal_section(pd), angles=angles, degrees=degrees, flags=_flags(pd))


def _plucker_section(pd, phi) -> dict:
    terms = plucker_decomposition(phi)
    by_subset = {tuple(i - 1 for i in t.index): t.coefficient for t in terms}
    coords = []
    for label, subset in coordinate_basis_labels(pd):
        coords.append([label, by_subset.get(subset, 0.0) if subset is not None else 0.0])
    total = math.sqrt(sum(c * c for _, c in coords))
    return OrderedDict(
        coordinates=coords,
        sum_of_squares=sum(c * c for _, c in coords) / (total * total if total else 1.0),
        terms=[OrderedDict(index=list(t.index), coefficient=t.coefficient, planes=mv_terms(t.plane_product), coordinate_blade=t.label) for t in terms],
    )


def report_product(a: Blade, b: Blade, tol: Tolerance) -> dict:
    pd = principal_data(a, b, tol)
    phi = angle_bivector_from_data(pd, oriented=True)
    A, B = a.mv, b.mv
    products = OrderedDict(
        rev_a_b=mv_terms(~A * B),
        lcontr=mv_terms(left_contraction(A, B)),
        outer=mv_terms(outer_product(A, B)),
        anticommutator=mv_terms(anticommutator(A, B)),
        commutator=mv_terms(commutator(A, B)),
    )
    return OrderedDict(
        principal=_principal_section(pd),
        products=products,
        plucker=_plucker_section(pd, phi),
        flags=_flags(pd, phi),
    )


def report_bivector(a: Blade, b: Blade, tol: Tolerance) -> dict:
    pd = principal_data(a, b, tol)
    phi = angle_bivector_from_data(pd, oriented=True)
    terms = [OrderedDict(index=i + 1, theta=t, plane=mv_terms(pl)) for i, t, pl in zip(phi.indices, phi.thetas, phi.planes)]
    exp_terms = [
        OrderedDict(index=list(t.index), coefficient=t.coefficient, coordinate_blade=t.label)
        for t in plucker_decomposition(phi)
        if abs(t.coefficient) > 1e-15
    ]
    return OrderedDict(
        principal=_principal_section(pd),
        bivector=OrderedDict(oriented=True, terms=terms, multivector=mv_terms(phi.multivector), length=geodesic_length(phi)),
        exp_phi=OrderedDict(coefficients=mv_terms(exp_angle_bivector(phi)), plucker_terms=exp_terms),
        flags=_flags(pd, phi),
    )


def report_geodesic(a: Blade, b: Blade, steps: int, tol: Tolerance) -> dict:
    if steps < 2:
        raise UsageError("--steps must be at least 2")
    pd = principal_data(a, b, tol)
    phi = angle_bivector_from_data(pd, oriented=a.grade == b.grade)
    unit = a.unit()
    samples = []
    for k in range(steps):
        t = k / (steps - 1)
        f = geodesic_sample(phi, unit, t, tol)
        angles = principal_data(unit, f, tol).thetas if f.grade else np.zeros(0)
        samples.append(OrderedDict(t=t, frame=[list(map(float, v)) for v in f.factors], scale=f.scale, angles_to_start=[float(x) for x in angles]))
    return OrderedDict(principal=_principal_section(pd), length=geodesic_length(phi), samples=samples, flags=_flags(pd, phi))


def report_hitzer(a: Blade, b: Blade, tol: Tolerance) -> dict:
    x, y = (a, b) if a.grade <= b.grade else (b, a)
    ux, uy = x.unit(), y.unit()
    flags = []
    if ux.grade == uy.grade:
        s = scalar_product(~ux.mv, uy.mv)
        if s < 0:
            uy = -uy
            flags.append("second blade negated so that the relative orientation is +1")
        elif abs(s) <= tol.structural:
            flags.append("relative orientation is basis-dependent; only angles are reported")
    rec = ids.hitzer_recover(~ux.mv * uy.mv, ux.grade, uy.grade, tol)
    svd = principal_data(ux, uy, tol).thetas
    return OrderedDict(
        d=rec.d,
        D=rec.D,
        thetas=[float(t) for t in rec.thetas],
        svd_thetas=[float(t) for t in svd],
        max_difference=float(np.max(np.abs(np.sort(rec.thetas) - svd))) if len(svd) else 0.0,
        planes=[mv_terms(p) for p in rec.planes],
        b_perp=mv_terms(rec.b_perp),
        flags=flags,
    )


def _document_report(command: str, doc: InputDocument, body: dict) -> dict:
    full = OrderedDict(command=command, input=doc.to_dict())
    full.update(body)
    return full


def cmd_angles(doc: InputDocument, tol: Tolerance = DEFAULT_TOL) -> dict:
    """Full ``angles`` report for a parsed input document."""
    a, b = doc.blades()
    return _document_report("angles", doc, report_angles(a, b, tol))


def cmd_product(doc: InputDocument, tol: Tolerance = DEFAULT_TOL) -> dict:
    a, b = doc.blades()
    return _document_report("product", doc, report_product(a, b, tol))


def cmd_bivector(doc: InputDocument, tol: Tolerance = DEFAULT_TOL) -> dict:
    a, b = doc.blades()
    return _document_report("bivector", doc, report_bivector(a, b, tol))


def cmd_geodesic(doc: InputDocument, steps: int, tol: Tolerance = DEFAULT_TOL) -> dict:
    """Frames at ``t_k = k / (steps - 1)``; ``steps`` must be at least 2."""
    a, b = doc.blades()
    return _document_report("geodesic", doc, report_geodesic(a, b, steps, tol))


def cmd_hitzer(doc: InputDocument, tol: Tolerance = DEFAULT_TOL) -> dict:
    a, b = doc.blades()
    return _document_report("hitzer", doc, report_hitzer(a, b, tol))


# ------------------------------------------------------------------ verify

PAIR_CHECKS = (
    ("product:mixed", lambda a, b, pd, tol: [ids.check_mixed_grade_product(a, b, pd, tol)]),
    ("subnorms", lambda a, b, pd, tol: ids.check_subproduct_norms(a, b, tol)),
    ("oriented", lambda a, b, pd, tol: ids.check_oriented_subproducts(a, b, pd, tol)),
    ("commutators", lambda a, b, pd, tol: ids.check_commutator_suite(a, b, pd, tol)),
    ("vanishing", lambda a, b, pd, tol: ids.check_vanishing_conditions(a, b, pd, tol)),
    ("duality", lambda a, b, pd, tol: ids.check_duality(a, b, pd, tol)),
    ("grassmann", lambda a, b, pd, tol: ids.check_grassmann_contraction(a, b, pd, tol)),
    ("norms", lambda a, b, pd, tol: ids.check_norm_multiplicativity(a, b, pd, tol)),
)


def run_trial(seed: int, trial: int, nmax: int, tol: Tolerance, fault: bool = False) -> list:
    """All checks for one seeded trial; results carry the reproduction digest."""
    rng = trial_rng(seed, trial)
    n = int(rng.integers(min(3, nmax), nmax + 1))
    top = min(4, n)
    p = int(rng.integers(1, top + 1))
    q = p if rng.random() < 0.5 else int(rng.integers(1, top + 1))
    a, b = random_blade(rng, p, n), random_blade(rng, q, n)
    dg = digest(seed, trial, n=n, p=p, q=q)
    pd = principal_data(a, b, tol)
    results = []
    if p == q:
        bb = -b if fault else b
        results.append(ids.check_equal_grade_product(a, bb, pd, tol))
        results.extend(ids.check_invertibility_reconstruction(a, b, pd, tol))
    for _, fn in PAIR_CHECKS:
        results.extend(fn(a, b, pd, tol))
    h = random_homogeneous(rng, int(rng.integers(1, min(4, n) + 1)), n)
    results.extend(ids.check_hyperbolic_suite(h, tol))
    if 2 * p <= n and p <= q and p + q <= n:
        thetas = np.sort(rng.uniform(0.05, math.pi / 2 - 0.05, p))
        if p == 1 or np.min(np.diff(thetas)) > 1e-3:
            ua, ub = controlled_pair(rng, thetas, q, n)
            rec = ids.hitzer_recover(~ua.mv * ub.mv, p, q, tol)
            err = float(np.max(np.abs(rec.thetas - thetas)))
            results.append(ids.IdentityResult("hitzer", 0.0, 0.0, err, err <= 1e-8))
    return [r.with_digest(dg) for r in results]


def run_verify(seed: int, trials: int, nmax: int, tol: Tolerance, fault: bool = False):
    stats: "OrderedDict[str, dict]" = OrderedDict()
    for trial in range(trials):
        for r in run_trial(seed, trial, nmax, tol, fault and trial == 0):
            s = stats.setdefault(r.name, {"passed": 0, "total": 0, "skipped": 0, "max_residual": 0.0, "first_failure": None})
            if r.skipped:
                s["skipped"] += 1
                continue
            s["total"] += 1
            s["passed"] += int(r.passed)
            s["max_residual"] = max(s["max_residual"], r.relative_residual)
            if not r.passed and s["first_failure"] is None:
                s["first_failure"] = r.digest
    ok = all(s["passed"] == s["total"] for s in stats.values())
    return ok, stats


# --------------------------------------------------------------- printing


def _print_human(report: dict, out) -> None:
    def walk(obj, prefix=""):
        if isinstance(obj, dict):
            for k, v in obj.items():
                if isinstance(v, (dict, list)) and v and not _is_terms(v) and not _is_numbers(v):
                    print(f"{prefix}{k}:", file=out)
                    walk(v, prefix + "  ")
                else:
                    print(f"{prefix}{k}: {_human_value(v)}", file=out)
        elif isinstance(obj, list):
            for item in obj:
                if isinstance(item, dict):
                    print(f"{prefix}-", file=out)
                    walk(item, prefix + "  ")
                else:
                    print(f"{prefix}- {_human_value(item)}", file=out)

    walk(report)


def _is_terms(v) -> bool:
    return isinstance(v, list) and all(isinstance(t, list) and len(t) == 2 and isinstance(t[0], str) for t in v)


def _is_numbers(v) -> bool:
    return isinstance(v, list) and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in v)


def _human_value(v) -> str:
    if isinstance(v, bool) or v is None:
        return str(v).lower()
    if isinstance(v, float):
        return fmt_human(v)
    if _is_terms(v) and v:
        return " ".join(f"{fmt_human(c)}*{lab}" for lab, c in v)
    if _is_numbers(v):
        return "[" + ", ".join(fmt_human(x) if isinstance(x, float) else str(x) for x in v) + "]"
    if isinstance(v, list) and not v:
        return "[]"
    return str(v)


def _emit(report: dict, args, out) -> None:
    if args.json:
        print(to_json(report), file=out)
    else:
        _print_human(report, out)


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="blade-angles", description="Angles, products and identities for blades of R^n.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", metavar="PATH", help="JSON input document")
    common.add_argument("--csv", nargs=2, metavar=("A.csv", "B.csv"), help="two CSV files, one vector per row")
    common.add_argument("--eps", type=float, default=None, help="identity tolerance (overrides BLADE_ANGLES_EPS)")
    common.add_argument("--json", action="store_true", help="machine-readable JSON output")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("angles", "principal and derived angles"),
        ("product", "geometric product, subproducts and Plücker coordinates"),
        ("bivector", "oriented angle bivector and its exponential"),
        ("hitzer", "recover principal angles from the geometric product"),
    ):
        sub.add_parser(name, parents=[common], help=help_text)
    g = sub.add_parser("geodesic", parents=[common], help="sample the geodesic from [A] to [B]")
    g.add_argument("--steps", type=int, default=5)
    v = sub.add_parser("verify", parents=[common], help="seeded randomized identity verification")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("--nmax", type=int, default=6)
    v.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    return parser


DOCUMENT_COMMANDS = {"angles": cmd_angles, "product": cmd_product, "bivector": cmd_bivector, "hitzer": cmd_hitzer}


def main(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_PARSE
    try:
        if args.command == "verify":
            return _cmd_verify(args, out)
        doc = _document(args)
        tol = _tolerance(args, doc)
        if args.command == "geodesic":
            report = cmd_geodesic(doc, args.steps, tol)
        else:
            report = DOCUMENT_COMMANDS[args.command](doc, tol)
        _emit(report, args, out)
        return EXIT_OK
    except (UsageError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (BladeAnglesError, ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


def cmd_verify(seed: int, trials: int, nmax: int, tol: Tolerance = DEFAULT_TOL, fault: bool = False) -> tuple[dict, int]:
    """Run the seeded identity sweep; returns the summary and the exit code."""
    if trials < 1:
        raise UsageError("--trials must be at least 1")
    if not 1 <= nmax <= MAX_DIM:
        raise UsageError(f"--nmax must be in 1..{MAX_DIM}")
    ok, stats = run_verify(seed, trials, nmax, tol, fault)
    summary = OrderedDict(seed=seed, trials=trials, nmax=nmax, eps=tol.identity, ok=ok, identities=stats)
    return summary, EXIT_OK if ok else EXIT_FAIL


def _cmd_verify(args, out) -> int:
    try:
        tol = _tolerance(args)
        summary, code = cmd_verify(args.seed, args.trials, args.nmax, tol, args.inject_fault)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if args.json:
        print(to_json(summary), file=out)
        return code
    stats = summary["identities"]
    print(f"verify seed={args.seed} trials={args.trials} nmax={args.nmax} eps={tol.identity:g}", file=out)
    width = max(len(k) for k in stats)
    for name, s in stats.items():
        status = "ok" if s["passed"] == s["total"] else "FAIL"
        line = f"{name:<{width}}  {s['passed']:>5}/{s['total']:<5} max_rel_residual={s['max_residual']:.3e}  {status}"
        if s["skipped"]:
            line += f"  skipped={s['skipped']}"
        if s["first_failure"]:
            line += f"  reproduce: {s['first_failure']}"
        print(line, file=out)
    print("all identities passed" if summary["ok"] else "identity failures detected", file=out)
    return code


if __name__ == "__main__":
    sys.exit(main())

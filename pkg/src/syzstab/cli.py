"""Command-line front end.

Commands
--------
analyze      full stability report: certificate construction (no --A),
             asymptotic candidate scan (--A), or a fixed-exponent
             destabilizer search (--A with --d); --verify re-checks a
             previously emitted JSON report
destabilize  candidate subbundle search at a fixed exponent
polarize     boundary polarization construction on rank >= 3 surfaces
hirzebruch   region test for a tuple (ell, a, b)
h0           exact section count of a divisor on a toric surface
classify     surface type of a fan, optionally with a blow-down reduction
sweep        grid sweep of the Hirzebruch region, CSV or JSON rows

Toric divisors are entered as comma-separated integer coefficients in fan
ray order.  On Hirzebruch fans ``--sf`` accepts section/fiber class
coordinates (two coefficients are auto-interpreted this way), and on the
blown-up plane ``--he`` accepts hyperplane/exceptional coordinates.
Rationals are written as "p/q"; decimals are rejected everywhere.

Exit status: 0 success, 2 invalid input, 1 internal error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from fractions import Fraction

from . import __version__
from .divisors import AbstractSurface, Divisor, ToricSurface
from .errors import InputError, InternalError, SyzstabError
from .fan import HIRZEBRUCH, Fan, reduce_to_minimal
from .files import (
    divisor_from_jsonable,
    divisor_to_jsonable,
    dumps_canonical,
    format_rational,
    load_abstract_surface,
    load_fan,
    parse_divisor_arg,
    parse_rational,
)
from .stability import (
    CHI_ASSUMPTION,
    EQUAL,
    GREATER,
    NOT_SEMISTABLE,
    NOT_STABLE,
    NO_DESTABILIZER,
    UNSTABLE_FOR_LARGE_D,
    Certificate,
    StabilityReport,
    abstract_driver,
    alpha_beta,
    construct_polarization,
    d_threshold,
    find_destabilizer,
    hirzebruch_region,
    scan_candidates,
    slope_compare,
    syzygy_slope,
    toric_driver,
)


def _surface_from_args(args):
    """Load the surface model plus a JSON echo of its source data."""
    fan_path = getattr(args, "fan", None)
    surface_path = getattr(args, "surface", None)
    if fan_path and surface_path:
        raise InputError("give either --fan or --surface, not both")
    if fan_path:
        fan = load_fan(fan_path)
        X = ToricSurface(fan)
        return X, {"fan": {"rays": [list(r) for r in fan.rays]}}
    if surface_path:
        X = load_abstract_surface(surface_path)
        pairing = [
            [
                int(x) if x.denominator == 1 else format_rational(x)
                for x in row
            ]
            for row in X.matrix
        ]
        return X, {
            "surface": {
                "labels": list(X.labels),
                "pairing": pairing,
                "canonical": divisor_to_jsonable(X.canonical),
                "effective_generators": list(X.effective_generators),
            }
        }
    raise InputError("a surface is required: pass --fan FILE or --surface FILE")


def _surface_from_echo(echo: dict):
    if "fan" in echo:
        return ToricSurface(Fan(echo["fan"]["rays"]))
    if "surface" in echo:
        s = echo["surface"]
        pairing = [[parse_rational(x) for x in row] for row in s["pairing"]]
        canonical = [parse_rational(x) for x in s["canonical"]]
        return AbstractSurface(
            s["labels"], pairing, canonical, s["effective_generators"]
        )
    raise InputError("report echo names no surface")


def _divisor_in_ambient(X, text: str, args, role: str):
    """Parse a divisor argument into ambient coordinates.

    Returns (divisor, basis_tag); basis_tag records how the user wrote it.
    """
    D = parse_divisor_arg(text)
    use_sf = bool(getattr(args, "sf", False))
    use_he = bool(getattr(args, "he", False))
    if isinstance(X, AbstractSurface):
        if use_sf or use_he:
            raise InputError("--sf/--he apply only to toric Hirzebruch fans")
        if len(D) != X.n:
            raise InputError(
                f"{role} needs {X.n} coefficients for this surface, got {len(D)}"
            )
        return D, "labels"
    if use_he:
        ell, _, _ = X.hirzebruch_presentation()
        if ell != 1:
            raise InputError(
                "--he needs the blown-up plane (the first Hirzebruch surface)"
            )
        if len(D) != 2:
            raise InputError(f"--he takes 2 coefficients for {role}")
        h, e = D.coeffs
        return X.from_section_fiber(h + e, h), "he"
    auto_sf = (
        len(D) == 2
        and X.n == 4
        and X.fan.surface_type().kind == HIRZEBRUCH
        and X.fan.surface_type().ell >= 1
    )
    if use_sf or auto_sf:
        if len(D) != 2:
            raise InputError(f"--sf takes 2 coefficients for {role}")
        s, f = D.coeffs
        return X.from_section_fiber(s, f), "sf"
    if len(D) != X.n:
        raise InputError(
            f"{role} needs {X.n} coefficients for this fan, got {len(D)}"
        )
    return D, "prime"


def _pretty_divisor(X, D: Divisor) -> str:
    coeffs = "[" + ", ".join(format_rational(c) for c in D.coeffs) + "]"
    if isinstance(X, ToricSurface):
        st = X.fan.surface_type()
        if st.kind == HIRZEBRUCH and st.ell >= 1:
            s, f = X.to_section_fiber(D)
            return f"{coeffs} (= {format_rational(s)} S + {format_rational(f)} F)"
    else:
        named = [
            f"{format_rational(c)}*{X.labels[i]}"
            for i, c in enumerate(D.coeffs)
            if c
        ]
        if named:
            return f"{coeffs} (= {' + '.join(named)})"
    return coeffs


def _emit(args, text: str, payload: dict) -> None:
    out = dumps_canonical(payload) if args.json else text + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _report_jsonable(report: StabilityReport) -> dict:
    cert = None
    if report.certificate is not None:
        c = report.certificate
        cert = {
            "A": divisor_to_jsonable(c.polarization),
            "S": divisor_to_jsonable(c.shift),
            "d0": c.d0,
            "slopes": {
                "subbundle": format_rational(c.subbundle_slope),
                "ambient": format_rational(c.ambient_slope),
            },
        }
    return {
        "verdict": report.verdict,
        "certificate": cert,
        "assumptions": list(report.assumptions),
        "echo": report.echo,
    }


def _render_report(X, report: StabilityReport) -> str:
    lines = [f"verdict: {report.verdict}"]
    if report.certificate is not None:
        c = report.certificate
        lines.append(f"polarization A: {_pretty_divisor(X, c.polarization)}")
        lines.append(f"shift S: {_pretty_divisor(X, c.shift)}")
        lines.append(f"d0: {c.d0}")
        lines.append(
            f"slopes at d0: subbundle {format_rational(c.subbundle_slope)}"
            f" vs ambient {format_rational(c.ambient_slope)}"
        )
    for note in report.assumptions:
        lines.append(f"note: {note}")
    return "\n".join(lines)


def _analysis_at_d(X, D, A, d, echo) -> StabilityReport:
    assumptions = [CHI_ASSUMPTION] if X.uses_chi_for_h0 else []
    found = find_destabilizer(X, D, A, d)
    if found is None:
        return StabilityReport(
            NO_DESTABILIZER, None, tuple(assumptions), echo
        )
    verdict = NOT_SEMISTABLE if found.strict else NOT_STABLE
    cert = Certificate(
        A, found.shift, d, found.subbundle_slope, found.ambient_slope
    )
    return StabilityReport(verdict, cert, tuple(assumptions), echo)


def _run_from_echo(echo: dict) -> StabilityReport:
    X = _surface_from_echo(echo)
    D = divisor_from_jsonable(echo["D"])
    mode = echo.get("mode")
    if mode == "driver":
        if isinstance(X, ToricSurface):
            report = toric_driver(X, D)
        else:
            report = abstract_driver(X, D)
        return dataclasses.replace(report, echo=echo)
    A = divisor_from_jsonable(echo["A"])
    if mode == "fixed-exponent":
        return _analysis_at_d(X, D, A, int(echo["d"]), echo)
    if mode == "asymptotic-scan":
        report = scan_candidates(X, D, A)
        return dataclasses.replace(report, echo=echo)
    raise InputError(f"report echo has unknown mode {mode!r}")


def _cmd_verify(args) -> int:
    with open(args.verify, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"{args.verify}: invalid JSON: {exc}") from exc
    if "echo" not in data or "verdict" not in data:
        raise InputError(f"{args.verify}: not a syzstab report")
    echo = data["echo"]
    report = _run_from_echo(echo)
    fresh = _report_jsonable(report)
    same_verdict = fresh["verdict"] == data["verdict"]
    same_cert = fresh["certificate"] == data.get("certificate")

    # independent slope re-check of the stored certificate
    cert_ok = True
    cert = data.get("certificate")
    if cert is not None:
        X = _surface_from_echo(echo)
        D = divisor_from_jsonable(echo["D"])
        A = divisor_from_jsonable(cert["A"])
        S = divisor_from_jsonable(cert["S"])
        order = slope_compare(X, D, S, A, int(cert["d0"]))
        expected = GREATER if data["verdict"] == NOT_SEMISTABLE else EQUAL
        cert_ok = order == expected

    ok = same_verdict and same_cert and cert_ok
    status = "verified" if ok else "MISMATCH"
    text = f"{status}: {data['verdict']}"
    payload = {
        "verified": ok,
        "verdict": data["verdict"],
        "recomputed_verdict": fresh["verdict"],
        "certificate_matches": same_cert,
        "certificate_slopes_check": cert_ok,
    }
    _emit(args, text, payload)
    return 0 if ok else 1


def _cmd_analyze(args) -> int:
    if args.verify:
        return _cmd_verify(args)
    if args.D is None:
        raise InputError("--D is required (or use --verify REPORT)")
    X, src_echo = _surface_from_args(args)
    D, basis = _divisor_in_ambient(X, args.D, args, "--D")
    if not D.is_integral:
        raise InputError("--D must have integer coefficients")
    echo = {
        "command": "analyze",
        **src_echo,
        "D": divisor_to_jsonable(D),
        "input_basis": basis,
        "tool": {"name": "syzstab", "version": __version__},
    }
    if args.A is not None:
        A, _ = _divisor_in_ambient(X, args.A, args, "--A")
        if not A.is_integral:
            A = A.scaled_primitive()
        echo["A"] = divisor_to_jsonable(A)
        if args.d is not None:
            echo["mode"] = "fixed-exponent"
            echo["d"] = args.d
            report = _analysis_at_d(X, D, A, args.d, echo)
        else:
            echo["mode"] = "asymptotic-scan"
            report = dataclasses.replace(
                scan_candidates(X, D, A), echo=echo
            )
    else:
        if args.d is not None:
            raise InputError("--d needs --A as well")
        echo["mode"] = "driver"
        if isinstance(X, ToricSurface):
            report = dataclasses.replace(toric_driver(X, D), echo=echo)
        else:
            report = dataclasses.replace(abstract_driver(X, D), echo=echo)
    _emit(args, _render_report(X, report), _report_jsonable(report))
    return 0


def _cmd_destabilize(args) -> int:
    X, src_echo = _surface_from_args(args)
    D, basis = _divisor_in_ambient(X, args.D, args, "--D")
    if not D.is_integral:
        raise InputError("--D must have integer coefficients")
    A, _ = _divisor_in_ambient(X, args.A, args, "--A")
    if not A.is_integral:
        A = A.scaled_primitive()
    echo = {
        "command": "destabilize",
        **src_echo,
        "D": divisor_to_jsonable(D),
        "A": divisor_to_jsonable(A),
        "d": args.d,
        "input_basis": basis,
        "mode": "fixed-exponent",
        "tool": {"name": "syzstab", "version": __version__},
    }
    report = _analysis_at_d(X, D, A, args.d, echo)
    _emit(args, _render_report(X, report), _report_jsonable(report))
    return 0


def _cmd_polarize(args) -> int:
    X, src_echo = _surface_from_args(args)
    D, _ = _divisor_in_ambient(X, args.D, args, "--D")
    if not D.is_integral:
        raise InputError("--D must have integer coefficients")
    pol = construct_polarization(X, D, allow_low_rank=args.allow_low_rank)
    payload = {
        "polarization": divisor_to_jsonable(pol.polarization),
        "polarization_integral": divisor_to_jsonable(
            pol.polarization_integral
        ),
        "generator_index": pol.generator_index,
        "generator": divisor_to_jsonable(pol.generator),
        "epsilon": format_rational(pol.epsilon),
        "nef_threshold": format_rational(pol.threshold),
        "alpha": format_rational(pol.alpha),
        "notes": list(pol.notes),
        "echo": {**src_echo, "D": divisor_to_jsonable(D)},
    }
    lines = [
        f"polarization A: {_pretty_divisor(X, pol.polarization)}",
        f"integral A: {_pretty_divisor(X, pol.polarization_integral)}",
        f"generator E: index {pol.generator_index}, "
        f"{_pretty_divisor(X, pol.generator)}",
        f"nef threshold t: {format_rational(pol.threshold)}",
        f"epsilon: {format_rational(pol.epsilon)}",
        f"alpha: {format_rational(pol.alpha)}",
    ]
    lines += [f"note: {note}" for note in pol.notes]
    _emit(args, "\n".join(lines), payload)
    return 0


def _cmd_hirzebruch(args) -> int:
    a = parse_rational(args.a)
    b = parse_rational(args.b)
    verdict = hirzebruch_region(args.ell, a, b)
    payload = {
        "ell": args.ell,
        "a": format_rational(a),
        "b": format_rational(b),
        "verdict": verdict,
    }
    _emit(args, verdict, payload)
    return 0


def _cmd_h0(args) -> int:
    X, _ = _surface_from_args(args)
    if not isinstance(X, ToricSurface):
        raise InputError("h0 by lattice count needs a toric surface (--fan)")
    D, _ = _divisor_in_ambient(X, args.D, args, "--D")
    value = X.h0(D)
    _emit(args, str(value), {"h0": value, "D": divisor_to_jsonable(D)})
    return 0


def _cmd_classify(args) -> int:
    fan = load_fan(args.fan)
    st = fan.surface_type()
    payload = {
        "type": st.kind,
        "ell": st.ell,
        "picard_rank": st.picard_rank,
        "rays": [list(r) for r in fan.rays],
        "self_intersections": list(fan.self_intersections()),
    }
    lines = [
        f"type: {st}",
        f"picard rank: {st.picard_rank}",
        f"rays (ccw): {[list(r) for r in fan.rays]}",
        f"self-intersections: {list(fan.self_intersections())}",
    ]
    if args.reduction:
        reduced, removed = reduce_to_minimal(fan)
        payload["reduction"] = {
            "blown_down_rays": [list(r) for r in removed],
            "minimal_type": str(reduced.surface_type()),
        }
        lines.append(f"blow-downs to minimal: {[list(r) for r in removed]}")
        lines.append(f"minimal model: {reduced.surface_type()}")
    _emit(args, "\n".join(lines), payload)
    return 0


def _parse_range(text: str) -> tuple[Fraction, Fraction]:
    parts = text.split(":")
    if len(parts) == 1:
        v = parse_rational(parts[0])
        return v, v
    if len(parts) == 2:
        lo, hi = parse_rational(parts[0]), parse_rational(parts[1])
        if hi < lo:
            raise InputError(f"range {text!r} is reversed")
        return lo, hi
    raise InputError(f"range {text!r} must be VALUE or LO:HI")


def _grid(lo: Fraction, hi: Fraction, step: Fraction):
    v = lo
    while v <= hi:
        yield v
        v += step


def _cmd_sweep(args) -> int:
    from .errors import EmptyGridError

    try:
        ells = [int(x) for x in args.ell.split(",")]
    except ValueError as exc:
        raise InputError(f"--ell must list integers: {args.ell!r}") from exc
    if any(e < 1 for e in ells):
        raise InputError("--ell entries must be >= 1")
    a_lo, a_hi = _parse_range(args.a)
    b_lo, b_hi = _parse_range(args.b)
    step = parse_rational(args.step)
    if step <= 0:
        raise InputError("--step must be positive")

    rows = []
    for ell in ells:
        fan = Fan([(1, 0), (0, 1), (-1, ell), (0, -1)])
        X = ToricSurface(fan)
        _, s_idx, _ = X.hirzebruch_presentation()
        S = X.generator(s_idx)
        for a in _grid(a_lo, a_hi, step):
            if a <= ell:
                continue
            for b in _grid(b_lo, b_hi, step):
                if b <= ell:
                    continue
                verdict = hirzebruch_region(ell, a, b)
                D = X.from_section_fiber(b.denominator, b.numerator)
                A = X.from_section_fiber(a.denominator, a.numerator)
                ab = alpha_beta(X, D, S, A)
                row = {
                    "ell": ell,
                    "a": format_rational(a),
                    "b": format_rational(b),
                    "verdict": verdict,
                    "alpha": format_rational(ab.alpha),
                    "beta": format_rational(ab.beta),
                    "d0": None,
                    "strict": None,
                }
                if verdict == UNSTABLE_FOR_LARGE_D:
                    th = d_threshold(X, D, S, A)
                    row["d0"] = th.d0
                    row["strict"] = th.strict
                rows.append(row)
    if not rows:
        raise EmptyGridError(
            "no grid point satisfies the ampleness bounds a, b > ell"
        )
    header = ["ell", "a", "b", "verdict", "alpha", "beta", "d0", "strict"]
    lines = [",".join(header)]
    for row in rows:
        lines.append(
            ",".join(
                "" if row[k] is None else str(row[k]).lower()
                if isinstance(row[k], bool)
                else str(row[k])
                for k in header
            )
        )
    _emit(args, "\n".join(lines), {"rows": rows})
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="syzstab",
        description=(
            "Exact destabilization certificates for syzygy bundles on "
            "smooth complete toric surfaces."
        ),
    )
    parser.add_argument(
        "--version", action="version", version=f"syzstab {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, surface=True, divisor=True, basis=True):
        if surface:
            p.add_argument("--fan", help="fan JSON file")
            p.add_argument("--surface", help="abstract surface JSON file")
        if divisor:
            p.add_argument("--D", help="divisor coefficients, comma separated")
        if basis:
            p.add_argument(
                "--sf",
                action="store_true",
                help="divisors given in section/fiber class coordinates",
            )
            p.add_argument(
                "--he",
                action="store_true",
                help="divisors given in hyperplane/exceptional coordinates",
            )
        p.add_argument("--json", action="store_true", help="emit JSON")
        p.add_argument("--out", help="write output to a file")

    p = sub.add_parser("analyze", help="full stability report")
    add_common(p)
    p.add_argument("--A", help="polarization coefficients")
    p.add_argument("--d", type=int, help="fixed tensor exponent")
    p.add_argument("--verify", help="re-check a previously emitted report")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("destabilize", help="candidate search at fixed exponent")
    add_common(p)
    p.add_argument("--A", required=True, help="polarization coefficients")
    p.add_argument("--d", type=int, required=True, help="tensor exponent")
    p.set_defaults(func=_cmd_destabilize)

    p = sub.add_parser("polarize", help="construct a boundary polarization")
    add_common(p)
    p.add_argument(
        "--allow-low-rank",
        action="store_true",
        help="run outside the rank >= 3 hypotheses (informational)",
    )
    p.set_defaults(func=_cmd_polarize)

    p = sub.add_parser("hirzebruch", help="region test for (ell, a, b)")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--a", required=True, help="polarization slope A2/A1")
    p.add_argument("--b", required=True, help="bundle slope B2/B1")
    p.add_argument("--json", action="store_true", help="emit JSON")
    p.add_argument("--out", help="write output to a file")
    p.set_defaults(func=_cmd_hirzebruch)

    p = sub.add_parser("h0", help="exact section count")
    add_common(p)
    p.set_defaults(func=_cmd_h0)

    p = sub.add_parser("classify", help="surface type of a fan")
    p.add_argument("--fan", required=True, help="fan JSON file")
    p.add_argument(
        "--reduction",
        action="store_true",
        help="also print a blow-down sequence to a minimal model",
    )
    p.add_argument("--json", action="store_true", help="emit JSON")
    p.add_argument("--out", help="write output to a file")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("sweep", help="grid sweep of the Hirzebruch region")
    p.add_argument("--ell", required=True, help="comma-separated ell values")
    p.add_argument("--a", required=True, help="value or range LO:HI")
    p.add_argument("--b", required=True, help="value or range LO:HI")
    p.add_argument("--step", default="1/8", help="grid step (default 1/8)")
    p.add_argument("--json", action="store_true", help="emit JSON")
    p.add_argument("--out", help="write output to a file")
    p.set_defaults(func=_cmd_sweep)

    return parser


def run(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    return args.func(args)


def main(argv=None) -> int:
    try:
        return run(argv)
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 1
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SyzstabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

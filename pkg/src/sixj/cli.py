"""Command-line surface: exact values, geometry, identity checks, convergence
sweeps to CSV, Minkowskian decay fits, and the continuous-entry integral.

Exit codes: 0 success, 2 usage or domain error, 3 internal invariant failure
(including identity-check failures).
"""

from __future__ import annotations

import argparse
import cmath
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .asymptotics import (decay_rate, integral_estimate, ponzano_regge,
                          prefactor_terms, saddle_contribution,
                          saddle_decomposition)
from .errors import (DegenerateError, DomainError, InternalError,
                     MinkowskianError, ParseError, SixJError)
from .exact import orthogonality_residual, sixj_decimal, sixj_exact
from .geometry import (TetraKind, cayley_menger_volume_sq, classify,
                       discriminant, exterior_dihedral_angles,
                       quadratic_coefficients, saddle_points, volume)
from .spins import (EDGE_NAMES, HalfInt, SpinSextet, is_admissible_triple,
                    triad_sums)

CSV_HEADER = "k,exact,pr,amplitude,abs_err,env_rel_err,phase"


@dataclass(frozen=True)
class SweepConfig:
    """One convergence sweep: which sextet, which k values, where the CSV goes."""

    sextet: SpinSextet
    k_values: tuple[int, ...]
    output_path: Path
    digits: int = 8

    def __post_init__(self):
        if not self.k_values or any(k <= 0 for k in self.k_values):
            raise DomainError("k values must be positive integers")
        if list(self.k_values) != sorted(set(self.k_values)):
            raise DomainError("k values must be strictly increasing")


def _fmt(x: float) -> str:
    return f"{x:.17e}"


def run_sweep(config: SweepConfig) -> list[dict]:
    """Evaluate exact vs asymptotic over k; deterministic row order by k."""
    if classify(config.sextet) is not TetraKind.EUCLIDEAN:
        raise DomainError(f"{config.sextet} is not Euclidean; use the decay command")
    rows = []
    for k in config.k_values:
        exact_value = float(sixj_exact(config.sextet.scaled(k)))
        estimate = ponzano_regge(config.sextet, k)
        abs_err = abs(exact_value - estimate.value)
        rows.append({
            "k": k,
            "exact": exact_value,
            "pr": estimate.value,
            "amplitude": estimate.amplitude,
            "abs_err": abs_err,
            "env_rel_err": abs_err / estimate.amplitude,
            "phase": estimate.phase,
        })
    return rows


def write_sweep_csv(rows: list[dict], path: Path) -> None:
    lines = [CSV_HEADER]
    for row in rows:
        lines.append(",".join([str(row["k"])] + [
            _fmt(row[key]) for key in
            ("exact", "pr", "amplitude", "abs_err", "env_rel_err", "phase")]))
    path.write_text("\n".join(lines) + "\n", encoding="ascii", newline="\n")


def _parse_sextet(spins: list[str]) -> SpinSextet:
    return SpinSextet.from_strings(*spins)


def _cmd_exact(args) -> int:
    s = _parse_sextet(args.spins)
    result = sixj_exact(s)
    print(f"symbol    : {s}")
    if not s.is_admissible:
        print("note      : inadmissible sextet, zero by convention")
    print(f"sum part  : {result.sum_part}")
    print(f"triangles : {' '.join(str(t) for t in result.triangles)}")
    coeff, radicand = result.radical_form()
    print(f"value     : {coeff} * sqrt({radicand})")
    print(f"decimal   : {sixj_decimal(result, args.digits)}")
    return 0


def _cmd_geometry(args) -> int:
    s = _parse_sextet(args.spins)
    q = quadratic_coefficients(s)
    delta = discriminant(s)
    kind = classify(s)
    print(f"symbol       : {s}")
    print(f"quadratic    : a={q.a} b={q.b} c={q.c}")
    print(f"discriminant : {delta}")
    print(f"kind         : {kind.value}")
    pair = saddle_points(s)
    if kind is TetraKind.MINKOWSKIAN:
        print("volume       : imaginary (Minkowskian)")
        print(f"saddles      : x+={pair.x_plus.real!r} x-={pair.x_minus.real!r} (real pair)")
        return 0
    print(f"volume       : {volume(s)!r}")
    print(f"saddles      : x+={pair.x_plus!r} x-={pair.x_minus!r}")
    if kind is TetraKind.EUCLIDEAN:
        angles = exterior_dihedral_angles(s)
        for edge in EDGE_NAMES:
            print(f"theta[{edge}]    : {angles[edge]!r}")
    return 0


def _cmd_scan(args) -> int:
    if args.output is None:
        raise DomainError("scan requires --output PATH for the CSV")
    if args.k_values:
        try:
            k_values = tuple(int(k) for k in args.k_values.split(","))
        except ValueError as exc:
            raise ParseError(f"bad --k-values list {args.k_values!r}") from exc
    else:
        k_values = tuple(range(args.k_min, args.k_max + 1, args.k_step))
    config = SweepConfig(_parse_sextet(args.spins), k_values,
                         Path(args.output), args.digits)
    rows = run_sweep(config)
    write_sweep_csv(rows, config.output_path)
    top_half = rows[len(rows) // 2:]
    median = float(np.median([row["env_rel_err"] for row in top_half]))
    print(f"wrote {len(rows)} rows to {config.output_path}")
    print(f"median envelope-relative error over top half of k: {median:.6e}")
    return 0


def _identity_checks(s: SpinSextet) -> list[tuple[str, str, str]]:
    """(name, status, detail) triples; status in PASS/FAIL/SKIP."""
    results = []

    def record(name, ok, detail=""):
        results.append((name, "PASS" if ok else "FAIL", detail))

    ts = triad_sums(s)
    v, p = ts.vertex_sums, ts.pair_sums
    record("triad/pair sum balance", sum(v) == sum(p), f"sum v={sum(v)} sum p={sum(p)}")
    record("summation window nonempty", max(v) <= min(p), f"[{max(v)}, {min(p)}]")

    q = quadratic_coefficients(s)  # raises InternalError on closed/symmetric mismatch
    record("quadratic closed forms equal symmetric forms", True)
    delta = discriminant(s)
    record("discriminant equals 576 * V^2 (Cayley-Menger)",
           delta == 576 * cayley_menger_volume_sq(s), f"delta={delta}")
    quartic_ok = all(
        x * math.prod(Fraction(pj) - x for pj in p)
        + math.prod(x - Fraction(vi) for vi in v) == q.a * x**2 - q.b * x + q.c
        for x in (Fraction(1, 3), Fraction(7, 2), Fraction(11)))
    record("saddle quartic collapses to the quadratic", quartic_ok)

    residual = orthogonality_residual(s.j1, s.j2, s.J1, s.J2, s.J3, s.J3)
    record("orthogonality row (diagonal)", residual == 0, f"residual={residual}")
    alt = _alternative_orthogonality_partner(s)
    if alt is None:
        results.append(("orthogonality row (off-diagonal)", "SKIP",
                        "no second admissible value"))
    else:
        residual = orthogonality_residual(s.j1, s.j2, s.J1, s.J2, s.J3, alt)
        record("orthogonality row (off-diagonal)", residual == 0, f"residual={residual}")

    kind = classify(s)
    asymptotic = [
        "prefactor cancellation h_e + Re f_e = 0",
        "saddle phase equals exterior dihedral angle",
        "second derivative gives the volume factor",
        "saddle stationarity f'(x+) = 0",
        "conjugate saddle pair sums to the real estimate",
    ]
    if kind is not TetraKind.EUCLIDEAN:
        for name in asymptotic:
            results.append((name, "SKIP", f"{kind.value} sextet"))
        if kind is TetraKind.MINKOWSKIAN:
            est = decay_rate(s)
            record("decay rate is real and negative", est.rate < 0,
                   f"rate={est.rate!r}")
        return results

    pf = prefactor_terms(s)
    sd = saddle_decomposition(s)
    angles = exterior_dihedral_angles(s)
    worst_re = max(abs(pf.per_edge[e] + sd.per_edge[e].real) for e in EDGE_NAMES)
    record(asymptotic[0], worst_re <= 1e-10, f"max residual {worst_re:.3e}")
    worst_im = max(abs(sd.per_edge[e].imag - angles[e]) for e in EDGE_NAMES)
    record(asymptotic[1], worst_im <= 1e-10, f"max residual {worst_im:.3e}")
    x = sd.saddle
    lhs = -sd.second_derivative * x * math.prod(pj - x for pj in p)
    rhs = -1j * math.sqrt(float(delta))
    rel = abs(lhs - rhs) / abs(rhs)
    record(asymptotic[2], rel <= 1e-10, f"relative residual {rel:.3e}")
    fprime = (1j * math.pi + cmath.log(x) - sum(cmath.log(x - vi) for vi in v)
              + sum(cmath.log(pj - x) for pj in p))
    record(asymptotic[3], abs(fprime) <= 1e-10, f"|f'(x+)| = {abs(fprime):.3e}")
    estimate = ponzano_regge(s, 5)
    gap = abs(estimate.value - 2 * saddle_contribution(s, 5).real)
    record(asymptotic[4], gap <= 1e-10, f"|PR - 2 Re C| = {gap:.3e} at k=5")
    return results


def _alternative_orthogonality_partner(s: SpinSextet) -> HalfInt | None:
    for dq in range(0, s.j1.doubled + s.J2.doubled + 1):
        if dq == s.J3.doubled:
            continue
        q = HalfInt(dq)
        if (is_admissible_triple(s.j1, s.J2, q)
                and is_admissible_triple(s.J1, s.j2, q)):
            return q
    return None


def _cmd_check(args) -> int:
    s = _parse_sextet(args.spins)
    if not s.is_admissible:
        raise DomainError(f"{s} is inadmissible; nothing to check")
    results = _identity_checks(s)
    width = max(len(name) for name, _, _ in results)
    failed = False
    for name, status, detail in results:
        suffix = f"  ({detail})" if detail else ""
        print(f"{status:4} {name:<{width}}{suffix}")
        failed = failed or status == "FAIL"
    if failed:
        raise InternalError("identity check failed")
    return 0


def _cmd_decay(args) -> int:
    s = _parse_sextet(args.spins)
    if classify(s) is not TetraKind.MINKOWSKIAN:
        raise DomainError(f"{s} is not Minkowskian; use scan for oscillatory sextets")
    k_values = list(range(args.k_min, args.k_max + 1, args.k_step))
    if len(k_values) < 4:
        raise DomainError(f"k range {args.k_min}..{args.k_max} step {args.k_step} "
                          f"gives {len(k_values)} points; need at least 4 for a fit")
    estimate = decay_rate(s)
    logs = [sixj_exact(s.scaled(k)).log_abs() for k in k_values]
    ks = np.asarray(k_values, dtype=float)
    raw_slope = float(np.polyfit(ks, np.asarray(logs), 1)[0])
    corrected = float(np.polyfit(ks, np.asarray(logs) + 1.5 * np.log(ks), 1)[0])
    print(f"symbol                : {s}")
    print(f"predicted decay rate  : {estimate.rate!r} (dominant saddle "
          f"x={estimate.dominant_saddle!r})")
    print(f"fitted slope          : {raw_slope!r} over k={args.k_min}..{args.k_max} "
          f"step {args.k_step}")
    print(f"relative difference   : {abs(raw_slope - estimate.rate) / abs(estimate.rate):.4f}")
    print(f"prefactor-corrected   : {corrected!r} (slope of ln|6j| + 1.5 ln k; "
          f"removes the k^-3/2 amplitude drift)")
    return 0


def _cmd_integral(args) -> int:
    estimate = integral_estimate(args.sums[:4], args.sums[4:], args.k, args.n_points)
    print(f"vertex sums : {args.sums[:4]}")
    print(f"pair sums   : {args.sums[4:]}")
    print(f"k           : {args.k}")
    print(f"estimate    : {estimate!r}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--digits", type=int, default=argparse.SUPPRESS,
                        help="decimal digits for exact rendering (default 8)")
    common.add_argument("--output", type=str, default=argparse.SUPPRESS,
                        help="output file path (CSV for scan)")

    parser = argparse.ArgumentParser(
        prog="sixj",
        description="Exact and asymptotic Wigner 6j symbols with the full "
                    "saddle-point machinery exposed.")
    parser.add_argument("--digits", type=int, default=8, help=argparse.SUPPRESS)
    parser.add_argument("--output", type=str, default=None, help=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    spins_help = "six spins: j1 j2 j3 J1 J2 J3, each as 'n', 'n/2' or 'n.5'"

    p = sub.add_parser("exact", parents=[common],
                       help="exact value from the Racah sum")
    p.add_argument("spins", nargs=6, help=spins_help)
    p.set_defaults(func=_cmd_exact)

    p = sub.add_parser("geometry", parents=[common],
                       help="saddle quadratic, discriminant, volume, angles")
    p.add_argument("spins", nargs=6, help=spins_help)
    p.set_defaults(func=_cmd_geometry)

    p = sub.add_parser("scan", parents=[common],
                       help="exact vs asymptotic sweep over k, CSV output")
    p.add_argument("spins", nargs=6, help=spins_help)
    p.add_argument("--k-min", type=int, default=1)
    p.add_argument("--k-max", type=int, default=64)
    p.add_argument("--k-step", type=int, default=1)
    p.add_argument("--k-values", type=str, default="",
                   help="explicit comma-separated k list (overrides min/max/step)")
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("check", parents=[common],
                       help="run the identity suite on one sextet")
    p.add_argument("spins", nargs=6, help=spins_help)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("decay", parents=[common],
                       help="Minkowskian decay rate vs fitted exact slope")
    p.add_argument("spins", nargs=6, help=spins_help)
    p.add_argument("k_min", type=int)
    p.add_argument("k_max", type=int)
    p.add_argument("--k-step", type=int, default=2)
    p.set_defaults(func=_cmd_decay)

    p = sub.add_parser("integral", parents=[common],
                       help="continuous-entry estimate by direct quadrature")
    p.add_argument("sums", nargs=7, type=float,
                   help="four vertex sums v1..v4 then three pair sums p1..p3")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n-points", type=int, default=400)
    p.set_defaults(func=_cmd_integral)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3


def run() -> None:
    sys.exit(main())

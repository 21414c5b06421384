"""Large-spin asymptotics of the 6j symbol and its intermediate quantities.

Covers the Stirling log-prefactor of the four triangle coefficients, the
per-edge decomposition of the exponent at the complex saddle, the oscillatory
closed form (amplitude times cosine), the single-saddle complex contribution
assembled from raw pieces, the Minkowskian exponential decay rate, and direct
quadrature of the continuous-spin integral representation.

All logarithms at the upper-half-plane saddle are principal-branch; the
factor arguments stay in half-planes where no cut is crossed, which is
asserted at runtime rather than assumed.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (DegenerateError, DomainError, InternalError,
                     MinkowskianError)
from .exact import sixj_exact
from .geometry import TetraKind, classify, discriminant, saddle_points, volume
from .spins import (EDGE_NAMES, EDGE_PAIRS, EDGE_TRIADS, SpinSextet,
                    TRIAD_INDICES, triad_sums)


@dataclass(frozen=True)
class PrefactorTerms:
    """Per-edge Stirling log-slopes of the triangle-coefficient prefactor,
    plus the constant part (half the per-edge sum)."""

    per_edge: dict[str, float]
    total: float


@dataclass(frozen=True)
class SaddleDecomposition:
    """Per-edge log factors of the exponent at the upper saddle, the second
    derivative there, and the saddle actually used."""

    per_edge: dict[str, complex]
    second_derivative: complex
    saddle: complex


@dataclass(frozen=True)
class AsymptoticEstimate:
    k: int
    amplitude: float
    phase: float
    value: float


@dataclass(frozen=True)
class DecayEstimate:
    rate: float
    dominant_saddle: float


def _edge_prefactor_terms(spin: dict[str, float]) -> dict[str, float]:
    """h_e = half the log of the product over the two triads containing e of
    (e+u-w)(e-u+w) / ((e+u+w)(-e+u+w)); requires strictly positive factors."""
    terms = {}
    for edge in EDGE_NAMES:
        ratio = 1.0
        for triad_index in EDGE_TRIADS[edge]:
            others = [EDGE_NAMES[i] for i in TRIAD_INDICES[triad_index]
                      if EDGE_NAMES[i] != edge]
            e, u, w = spin[edge], spin[others[0]], spin[others[1]]
            num = (e + u - w) * (e - u + w)
            den = (e + u + w) * (-e + u + w)
            if num <= 0.0 or den <= 0.0:
                raise DegenerateError(
                    f"degenerate triad at edge {edge}: prefactor log argument <= 0")
            ratio *= num / den
        terms[edge] = 0.5 * math.log(ratio)
    return terms


def prefactor_terms(s: SpinSextet) -> PrefactorTerms:
    """Stirling prefactor terms of an admissible sextet with strictly
    non-degenerate triads."""
    triad_sums(s)  # admissibility gate
    per_edge = _edge_prefactor_terms({e: float(v) for e, v in s.edges.items()})
    return PrefactorTerms(per_edge, 0.5 * sum(per_edge.values()))


def _linear_prefactor(spin: dict[str, float]) -> tuple[float, float]:
    """(k-slope, constant) of the log prefactor: sum(e * h_e) and half-sum(h_e)."""
    per_edge = _edge_prefactor_terms(spin)
    slope = sum(spin[e] * per_edge[e] for e in EDGE_NAMES)
    return slope, 0.5 * sum(per_edge.values())


def saddle_decomposition(s: SpinSextet) -> SaddleDecomposition:
    """Per-edge exponent logs at the upper saddle of a Euclidean sextet.

    Each edge takes the two vertex sums containing it over the two pair sums
    containing it; the quotient's argument is the exterior dihedral angle, so
    a single principal log never wraps.
    """
    if classify(s) is not TetraKind.EUCLIDEAN:
        raise MinkowskianError(f"{s} is not Euclidean; no complex saddle pair")
    x = saddle_points(s).x_plus
    ts = triad_sums(s)
    v, p = ts.vertex_sums, ts.pair_sums

    for vi in v:
        if (x - vi).imag <= 0.0:
            raise InternalError(f"saddle factor x-{vi} left the upper half-plane")
    for pj in p:
        if (pj - x).imag >= 0.0:
            raise InternalError(f"saddle factor {pj}-x left the lower half-plane")
    stationarity = -x * math.prod(pj - x for pj in p) / math.prod(x - vi for vi in v)
    if abs(stationarity - 1.0) > 1e-9:
        raise InternalError(f"first exponent term fails to vanish at the saddle "
                            f"of {s}: ratio {stationarity}")

    per_edge = {}
    for edge in EDGE_NAMES:
        va, vb = (v[i] for i in EDGE_TRIADS[edge])
        pc, pd = (p[i] for i in EDGE_PAIRS[edge])
        per_edge[edge] = cmath.log((x - va) * (x - vb) / ((pc - x) * (pd - x)))
    second = 1.0 / x - sum(1.0 / (x - vi) for vi in v) - sum(1.0 / (pj - x) for pj in p)
    return SaddleDecomposition(per_edge, second, x)


def ponzano_regge(s: SpinSextet, k: int) -> AsymptoticEstimate:
    """Oscillatory large-k estimate: amplitude 1/sqrt(12 pi k^3 V), phase
    pi/4 + sum over edges of (k*spin + 1/2) * exterior dihedral angle."""
    if k <= 0:
        raise DomainError(f"k must be a positive integer, got {k}")
    kind = classify(s)
    if kind is TetraKind.DEGENERATE:
        raise DegenerateError(f"{s} is flat (zero volume); the estimate diverges")
    if kind is TetraKind.MINKOWSKIAN:
        raise MinkowskianError(f"{s} is Minkowskian; use decay_rate instead")
    from .geometry import exterior_dihedral_angles

    vol = volume(s)
    angles = exterior_dihedral_angles(s)
    amplitude = 1.0 / math.sqrt(12.0 * math.pi * k**3 * vol)
    phase = math.pi / 4 + sum((k * float(getattr(s, e)) + 0.5) * angles[e]
                              for e in EDGE_NAMES)
    return AsymptoticEstimate(k, amplitude, phase, amplitude * math.cos(phase))


def saddle_contribution(s: SpinSextet, k: int) -> complex:
    """Complex contribution of the upper saddle, assembled from the raw
    Stirling and saddle quantities rather than the cancelled closed form.
    Twice its real part reproduces ponzano_regge(s, k).value."""
    if k <= 0:
        raise DomainError(f"k must be a positive integer, got {k}")
    pf = prefactor_terms(s)
    sd = saddle_decomposition(s)
    x = sd.saddle
    ts = triad_sums(s)
    v, p = ts.vertex_sums, ts.pair_sums

    spin = {e: float(val) for e, val in s.edges.items()}
    f_at_saddle = sum(spin[e] * sd.per_edge[e] for e in EDGE_NAMES)
    h_slope = sum(spin[e] * pf.per_edge[e] for e in EDGE_NAMES)
    big_f = 0.5 * (3.0 * cmath.log(x)
                   - sum(cmath.log(x - vi) for vi in v)
                   - sum(cmath.log(pj - x) for pj in p))
    exponent = (pf.total + big_f + k * (h_slope + f_at_saddle)
                - 0.5 * cmath.log(-sd.second_derivative))
    return cmath.exp(exponent) / math.sqrt(2.0 * math.pi * k**3)


def decay_rate(s: SpinSextet) -> DecayEstimate:
    """Exponential decay exponent per unit k for a Minkowskian sextet.

    Both saddles of the quadratic are real and sit just outside the summation
    window [max v, min p]; the magnitude of the analytically continued
    exponent h + Re f is still well defined there.  The dominant saddle is
    the one the descent contour crosses, which is the one of smaller
    h + Re f; this matches the measured slope of the exact symbol.
    """
    if classify(s) is not TetraKind.MINKOWSKIAN:
        raise DomainError(f"{s} is not Minkowskian; decay rate is undefined")
    pair = saddle_points(s)
    ts = triad_sums(s)
    v, p = ts.vertex_sums, ts.pair_sums
    spin = {e: float(val) for e, val in s.edges.items()}
    h_slope, _ = _linear_prefactor(spin)

    def continued_exponent(x: float) -> float:
        for vi in v:
            if x == vi:
                raise DegenerateError(f"saddle collides with vertex sum {vi}")
        for pj in p:
            if x == pj:
                raise DegenerateError(f"saddle collides with pair sum {pj}")
        return h_slope + (sum(vi * math.log(abs(x - vi)) for vi in v)
                          - sum(pj * math.log(abs(pj - x)) for pj in p))

    candidates = sorted(
        (continued_exponent(x.real), x.real) for x in (pair.x_plus, pair.x_minus))
    rate, dominant = candidates[0]
    if rate >= 0.0:
        raise InternalError(f"Minkowskian decay rate came out non-negative "
                            f"({rate}) for {s}")
    return DecayEstimate(rate, dominant)


def exact_log_slope(s: SpinSextet, k_values) -> float:
    """Least-squares slope of ln|exact 6j(k*s)| against k."""
    ks = sorted(set(int(k) for k in k_values))
    if len(ks) < 4:
        raise DomainError(f"need at least 4 scale factors for a fit, got {len(ks)}")
    logs = [sixj_exact(s.scaled(k)).log_abs() for k in ks]
    return float(np.polyfit(np.asarray(ks, dtype=float), np.asarray(logs), 1)[0])


def _spins_from_sums(v, p) -> dict[str, float]:
    """Invert the triad/pair sums back to the six edges (exact for consistent
    inputs; the continuous extension evaluates whatever it is given)."""
    return {
        "j1": 0.5 * (v[0] + v[3] - p[0]),
        "j2": 0.5 * (v[0] + v[1] - p[1]),
        "j3": 0.5 * (v[0] + v[2] - p[2]),
        "J1": 0.5 * (v[1] + v[2] - p[0]),
        "J2": 0.5 * (v[2] + v[3] - p[1]),
        "J3": 0.5 * (v[1] + v[3] - p[2]),
    }


def _integral_raw(v, p, k: int, n_points: int) -> complex:
    """Quadrature of the one-sided oscillatory integral over [max v, min p],
    endpoint square-root singularities removed by x = endpoint +- u**2."""
    lo, hi = max(v), min(p)
    spin = _spins_from_sums(v, p)
    if any(value <= 0.0 for value in spin.values()):
        raise DomainError("continuous inputs imply a non-positive edge")
    h_slope, h_const = _linear_prefactor(spin)

    def exponent(x: float) -> complex:
        big_f = 0.5 * math.log(x**3 / (math.prod(x - vi for vi in v)
                                       * math.prod(pj - x for pj in p)))
        f = (1j * math.pi * x + x * math.log(x)
             - sum((x - vi) * math.log(x - vi) for vi in v)
             - sum((pj - x) * math.log(pj - x) for pj in p))
        return h_const + big_f + k * (h_slope + f)

    nodes, weights = np.polynomial.legendre.leggauss(n_points)
    mid = 0.5 * (lo + hi)
    total = 0.0 + 0.0j
    for end, half_width in ((lo, mid - lo), (hi, hi - mid)):
        u_max = math.sqrt(half_width)
        u = 0.5 * u_max * (nodes + 1.0)
        scale = 0.5 * u_max
        for ui, wi in zip(u, weights):
            x = end + ui * ui if end == lo else end - ui * ui
            total += wi * scale * 2.0 * ui * cmath.exp(exponent(x))
    return total


def integral_estimate(v, p, k: int, n_points: int = 400) -> float:
    """Continuous-entry estimate of the symbol by direct quadrature.

    The alternating sum equals twice the real part of the one-sided
    oscillatory integral (its conjugate-frequency partner is implicit), so
    the estimate is real by construction.  Exponential cancellation limits
    double precision to roughly k <= 60 at unit spins.
    """
    v = tuple(float(x) for x in v)
    p = tuple(float(x) for x in p)
    if len(v) != 4 or len(p) != 3:
        raise DomainError(f"need 4 vertex sums and 3 pair sums, got {len(v)}/{len(p)}")
    if k <= 0:
        raise DomainError(f"k must be a positive integer, got {k}")
    if n_points < 100:
        raise DomainError(f"n_points must be >= 100, got {n_points}")
    if max(v) >= min(p):
        raise DomainError(f"empty summation window: max v {max(v)} >= min p {min(p)}")
    coarse = _integral_raw(v, p, k, n_points)
    fine = _integral_raw(v, p, k, 2 * n_points)
    scale = max(abs(fine), 1e-300)
    if abs(fine - coarse) > 1e-6 * scale:
        warnings.warn(f"integral estimate changed by {abs(fine - coarse) / scale:.3e} "
                      f"(relative) when doubling n_points={n_points}; increase n_points",
                      stacklevel=2)
    return fine.real / (math.pi * k)

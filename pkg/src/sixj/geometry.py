"""Saddle-point algebra of the 6j symbol and the tetrahedron geometry behind it.

The quadratic a*x^2 - b*x + c obtained from the stationarity condition of the
Racah sum carries the whole Euclidean geometry of the spin tetrahedron: its
discriminant is 576 * V^2, and the saddle phases are the exterior dihedral
angles.  Everything that can be rational here is kept rational.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateError, DomainError, InternalError, MinkowskianError
from .spins import EDGE_NAMES, SpinSextet, triad_sums


class TetraKind(enum.Enum):
    EUCLIDEAN = "euclidean"
    MINKOWSKIAN = "minkowskian"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class QuadraticCoefficients:
    """Coefficients of a*x^2 - b*x + c (note the minus sign on b)."""

    a: Fraction
    b: Fraction
    c: Fraction


@dataclass(frozen=True)
class SaddlePair:
    """Roots of the saddle quadratic; complex conjugates when Euclidean,
    a real pair when Minkowskian."""

    x_plus: complex
    x_minus: complex


def quadratic_coefficients(s: SpinSextet) -> QuadraticCoefficients:
    """a, b, c from the closed forms, cross-checked exactly against the
    elementary-symmetric expressions in the v/p sums."""
    ts = triad_sums(s)
    v, p = ts.vertex_sums, ts.pair_sums
    if all(d == 0 for d in s.doubled):
        raise DomainError("all-zero sextet has no saddle quadratic")

    j1, j2, j3 = s.j1.as_fraction, s.j2.as_fraction, s.j3.as_fraction
    k1, k2, k3 = s.J1.as_fraction, s.J2.as_fraction, s.J3.as_fraction
    cross = j1 * k1 + j2 * k2 + j3 * k3
    a = 2 * cross
    b = 2 * (cross * (j1 + j2 + j3 + k1 + k2 + k3)
             + j1 * j2 * j3 + k1 * j2 * k3 + k1 * k2 * j3 + j1 * k2 * k3)
    c = Fraction(v[0] * v[1] * v[2] * v[3])

    a_sym = Fraction(sum(v[i] * v[j] for i in range(4) for j in range(i + 1, 4))
                     - sum(p[i] * p[j] for i in range(3) for j in range(i + 1, 3)))
    b_sym = Fraction(sum(v[i] * v[j] * v[k]
                         for i in range(4) for j in range(i + 1, 4)
                         for k in range(j + 1, 4))
                     - p[0] * p[1] * p[2])
    if (a, b) != (a_sym, b_sym):
        raise InternalError(f"quadratic coefficient mismatch for {s}: "
                            f"closed ({a}, {b}) vs symmetric ({a_sym}, {b_sym})")
    return QuadraticCoefficients(a, b, c)


def discriminant(s: SpinSextet) -> Fraction:
    """4ac - b^2; positive exactly when the six spins embed as a Euclidean
    tetrahedron."""
    q = quadratic_coefficients(s)
    return 4 * q.a * q.c - q.b**2


def classify(s: SpinSextet) -> TetraKind:
    delta = discriminant(s)
    if delta > 0:
        return TetraKind.EUCLIDEAN
    return TetraKind.DEGENERATE if delta == 0 else TetraKind.MINKOWSKIAN


def volume(s: SpinSextet) -> float:
    """Tetrahedron volume sqrt(discriminant)/24; rejects Minkowskian input."""
    delta = discriminant(s)
    if delta < 0:
        raise MinkowskianError(f"{s} has negative discriminant {delta}; no real volume")
    return math.sqrt(float(delta)) / 24.0


def saddle_points(s: SpinSextet) -> SaddlePair:
    """Roots (b +- i sqrt(discriminant)) / (2a) of the saddle quadratic."""
    q = quadratic_coefficients(s)
    if q.a == 0:
        raise DegenerateError(f"saddle quadratic degenerates (a=0) for {s}")
    delta = 4 * q.a * q.c - q.b**2
    re = float(q.b / (2 * q.a))
    if delta >= 0:
        im = math.sqrt(float(delta)) / float(2 * q.a)
        return SaddlePair(complex(re, im), complex(re, -im))
    off = math.sqrt(float(-delta)) / float(2 * q.a)
    return SaddlePair(complex(re + off, 0.0), complex(re - off, 0.0))


# For each edge e: (e, opposite, a, A, b, B) field names such that (e,a,b),
# (e,A,B), (opp,a,B), (opp,A,b) are the four triads of the sextet.  The
# denominator polynomial below is invariant under the residual relabeling
# freedom of this arrangement.
_ANGLE_FRAMES = {
    "j1": ("j1", "J1", "j2", "J2", "j3", "J3"),
    "j2": ("j2", "J2", "j1", "J1", "j3", "J3"),
    "j3": ("j3", "J3", "j1", "J1", "j2", "J2"),
    "J1": ("J1", "j1", "j2", "J2", "J3", "j3"),
    "J2": ("J2", "j2", "J1", "j1", "j3", "J3"),
    "J3": ("J3", "j3", "J1", "j1", "j2", "J2"),
}


def _angle_denominator(s: SpinSextet, edge: str) -> Fraction:
    e, o, a, aa, b, bb = (getattr(s, name).as_fraction for name in _ANGLE_FRAMES[edge])
    e2, o2, a2, aa2, b2, bb2 = (x**2 for x in (e, o, a, aa, b, bb))
    return (e2 * (e2 + 2 * o2 - a2 - aa2 - b2 - bb2)
            + a2 * bb2 + b2 * aa2 - a2 * aa2 - b2 * bb2)


def exterior_dihedral_angles(s: SpinSextet) -> dict[str, float]:
    """Exterior dihedral angle in (0, pi) for each edge of a Euclidean sextet,
    via atan2(edge * sqrt(discriminant), denominator polynomial)."""
    delta = discriminant(s)
    if delta == 0:
        raise DegenerateError(f"{s} is flat; dihedral angles are degenerate")
    if delta < 0:
        raise MinkowskianError(f"{s} is Minkowskian; dihedral angles are complex")
    sqrt_delta = math.sqrt(float(delta))
    angles = {}
    for edge in EDGE_NAMES:
        numerator = float(getattr(s, edge)) * sqrt_delta
        angles[edge] = math.atan2(numerator, float(_angle_denominator(s, edge)))
    return angles


def _det(matrix: list[list[Fraction]]) -> Fraction:
    """Exact determinant by fraction-free-ish Gaussian elimination."""
    m = [row[:] for row in matrix]
    n = len(m)
    det = Fraction(1)
    for i in range(n):
        pivot_row = next((r for r in range(i, n) if m[r][i] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != i:
            m[i], m[pivot_row] = m[pivot_row], m[i]
            det = -det
        pivot = m[i][i]
        det *= pivot
        for r in range(i + 1, n):
            if m[r][i] == 0:
                continue
            factor = m[r][i] / pivot
            for col in range(i, n):
                m[r][col] -= factor * m[i][col]
    return det


def _squared_distances(s: SpinSextet) -> dict[tuple[int, int], Fraction]:
    """Squared edge lengths for vertices O, O+j1, O+j3, O+J2 (indices 0..3)."""
    sq = {name: getattr(s, name).as_fraction ** 2 for name in EDGE_NAMES}
    return {(0, 1): sq["j1"], (0, 2): sq["j3"], (0, 3): sq["J2"],
            (1, 2): sq["j2"], (1, 3): sq["J3"], (2, 3): sq["J1"]}


def cayley_menger_volume_sq(s: SpinSextet) -> Fraction:
    """Exact squared volume from the 5x5 Cayley-Menger determinant; negative
    for Minkowskian sextets.  Independent of the saddle quadratic."""
    if not s.is_admissible:
        raise DomainError(f"{s} is not admissible")
    d2 = _squared_distances(s)
    size = 5
    m = [[Fraction(0)] * size for _ in range(size)]
    for i in range(1, size):
        m[0][i] = m[i][0] = Fraction(1)
    for (i, j), value in d2.items():
        m[i + 1][j + 1] = m[j + 1][i + 1] = value
    return _det(m) / 288

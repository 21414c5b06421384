"""Exact 6j symbols from the Racah single-sum formula in rational arithmetic.

The symbol is kept in un-evaluated radical form: a rational alternating sum
times the square root of the product of four rational triangle coefficients.
Factorial ratios are cancelled prime-by-prime before any big-integer
multiplication, which keeps sums with factorials of a few thousand cheap.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .spins import HalfInt, SpinSextet, is_admissible_triple, triad_sums

_PRIMES: list[int] = [2, 3, 5, 7]
# Cache of factored factorials. Concurrent use is safe: entries for a given n
# are identical, so racing writers are benign (last writer wins).
_FACTORIAL_CACHE: dict[int, "FactoredFactorial"] = {}


def _primes_upto(n: int) -> list[int]:
    global _PRIMES
    if _PRIMES[-1] < n:
        limit = max(n, 2 * _PRIMES[-1])
        sieve = bytearray([1]) * (limit + 1)
        sieve[0:2] = b"\x00\x00"
        for p in range(2, math.isqrt(limit) + 1):
            if sieve[p]:
                sieve[p * p :: p] = b"\x00" * ((limit - p * p) // p + 1)
        _PRIMES = [i for i, flag in enumerate(sieve) if flag]
    return _PRIMES[: bisect_right(_PRIMES, n)]


@dataclass(frozen=True)
class FactoredFactorial:
    """n! as a map prime -> multiplicity (Legendre's formula)."""

    n: int
    exponents: dict[int, int]

    def value(self) -> int:
        out = 1
        for p, e in self.exponents.items():
            out *= p**e
        return out


def factorial_factored(n: int) -> FactoredFactorial:
    """Prime factorization of n!, cached across calls."""
    if n < 0:
        raise DomainError(f"factorial of negative {n}")
    cached = _FACTORIAL_CACHE.get(n)
    if cached is not None:
        return cached
    exps = {}
    for p in _primes_upto(n):
        e, q = 0, n
        while q:
            q //= p
            e += q
        exps[p] = e
    result = FactoredFactorial(n, exps)
    _FACTORIAL_CACHE[n] = result
    return result


def factorial_ratio(numerators, denominators) -> Fraction:
    """Exact value of prod(n_i!) / prod(d_j!), cancelled in factored form."""
    exps: dict[int, int] = {}
    for n in numerators:
        for p, e in factorial_factored(n).exponents.items():
            exps[p] = exps.get(p, 0) + e
    for n in denominators:
        for p, e in factorial_factored(n).exponents.items():
            exps[p] = exps.get(p, 0) - e
    num = den = 1
    for p, e in exps.items():
        if e > 0:
            num *= p**e
        elif e < 0:
            den *= p ** (-e)
    return Fraction(num, den)


def triangle_coefficient(a: HalfInt, b: HalfInt, c: HalfInt) -> Fraction:
    """(a+b-c)!(a-b+c)!(-a+b+c)! / (a+b+c+1)! as an exact rational."""
    if not is_admissible_triple(a, b, c):
        raise DomainError(f"inadmissible triad ({a}, {b}, {c})")
    da, db, dc = a.doubled, b.doubled, c.doubled
    x = (da + db - dc) // 2
    y = (da - db + dc) // 2
    z = (-da + db + dc) // 2
    return factorial_ratio([x, y, z], [x + y + z + 1])


def racah_alternating_sum(s: SpinSextet) -> Fraction:
    """The alternating factorial sum over t, from max(v) to min(p), exactly.

    The first term is evaluated through the factored-factorial cache; each
    successive term follows from the exact integer recurrence
    T(t+1) = -T(t) * (t+2) * prod(p_j - t) / prod(t+1 - v_i).
    """
    ts = triad_sums(s)
    v, p = ts.vertex_sums, ts.pair_sums
    t_lo, t_hi = max(v), min(p)
    if t_lo > t_hi:
        return Fraction(0)
    term = factorial_ratio([t_lo + 1],
                           [t_lo - vi for vi in v] + [pj - t_lo for pj in p])
    if t_lo % 2:
        term = -term
    total = term
    for t in range(t_lo, t_hi):
        num = -(t + 2)
        for pj in p:
            num *= pj - t
        den = 1
        for vi in v:
            den *= t + 1 - vi
        term *= Fraction(num, den)
        total += term
    return total


@dataclass(frozen=True)
class ExactSixJ:
    """Exact symbol value sum_part * sqrt(prod(triangles)), radical unevaluated."""

    sum_part: Fraction
    triangles: tuple[Fraction, Fraction, Fraction, Fraction]

    def squared(self) -> Fraction:
        """The exact rational square of the symbol value."""
        return self.sum_part**2 * math.prod(self.triangles)

    @property
    def sign(self) -> int:
        if self.sum_part > 0:
            return 1
        return -1 if self.sum_part < 0 else 0

    def __float__(self) -> float:
        sq = self.squared()
        if sq == 0:
            return 0.0
        as_float = float(sq)
        if as_float > 0.0:
            return self.sign * math.sqrt(as_float)
        return self.sign * math.exp(self.log_abs())  # squared underflowed

    def log_abs(self) -> float:
        """ln|value|, stable even when the value underflows a float."""
        sq = self.squared()
        if sq == 0:
            raise DomainError("log of an exactly zero symbol")
        return 0.5 * (math.log(sq.numerator) - math.log(sq.denominator))

    def radical_form(self) -> tuple[Fraction, Fraction]:
        """(coefficient, radicand) with value = coefficient * sqrt(radicand),
        the radicand squarefree in numerator and denominator."""
        if self.sum_part == 0:
            return Fraction(0), Fraction(1)
        radicand = math.prod(self.triangles)
        coeff_num, rad_num = _split_square(radicand.numerator)
        coeff_den, rad_den = _split_square(radicand.denominator)
        coeff = self.sum_part * Fraction(coeff_num, coeff_den)
        return coeff, Fraction(rad_num, rad_den)

    def decimal(self, digits: int) -> str:
        return sixj_decimal(self, digits)


def _split_square(n: int) -> tuple[int, int]:
    """n = square * squarefree; returns (sqrt(square), squarefree).

    Factorial products are smooth, so trial division over a growing sieve
    terminates after reaching the largest factorial argument.
    """
    root, free = 1, 1
    bound = 1024
    while n > 1:
        for p in _primes_upto(bound):
            if p * p > n:
                break
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            root *= p ** (e // 2)
            if e % 2:
                free *= p
        if n == 1:
            break
        if n < bound * bound:  # no factor <= bound, so the cofactor is prime
            free *= n
            n = 1
        else:
            bound *= 4
    return root, free


_CANONICAL_ZERO = ExactSixJ(Fraction(0), (Fraction(1),) * 4)


def sixj_exact(s: SpinSextet) -> ExactSixJ:
    """Exact 6j symbol; inadmissible sextets map to the canonical zero."""
    if not s.is_admissible:
        return _CANONICAL_ZERO
    tri = tuple(triangle_coefficient(*t) for t in s.triads)
    return ExactSixJ(racah_alternating_sum(s), tri)


def sixj_decimal(x: ExactSixJ, digits: int) -> str:
    """Decimal rendering with `digits` digits after the point, error < 1 ulp.

    Rounds the integer sqrt of the scaled exact square, so no floating point
    is involved.
    """
    if digits < 1:
        raise DomainError(f"digits must be >= 1, got {digits}")
    if x.sum_part == 0:
        return "0"
    sq = x.squared()
    scaled_num = sq.numerator * 10 ** (2 * digits)
    # round(sqrt(A/B)) = floor((floor(sqrt(4AB))//B + 1) / 2)
    m = (math.isqrt(4 * scaled_num * sq.denominator) // sq.denominator + 1) // 2
    sign = "-" if x.sign < 0 else ""
    return f"{sign}{m // 10**digits}.{m % 10**digits:0{digits}d}"


def orthogonality_residual(a: HalfInt, b: HalfInt, c: HalfInt, d: HalfInt,
                           p: HalfInt, q: HalfInt) -> Fraction:
    """Exact rational residual of the orthogonality sum over x of
    (2x+1) {a b x; c d p} {a b x; c d q}  -  delta_pq / (2p+1).

    The x-independent square root common to every term is positive, so for
    p != q it is divided out and the residual is zero iff the identity holds;
    for p == q the product of symbols is itself rational.
    """
    for u, w, r in ((a, d, p), (c, b, p), (a, d, q), (c, b, q)):
        if not is_admissible_triple(u, w, r):
            raise DomainError(f"inadmissible triad ({u}, {w}, {r})")
    same = p.doubled == q.doubled
    lo = max(abs(a.doubled - b.doubled), abs(c.doubled - d.doubled))
    hi = min(a.doubled + b.doubled, c.doubled + d.doubled)
    total = Fraction(0)
    for dx in range(lo, hi + 1, 2):
        x = HalfInt(dx)
        if not (is_admissible_triple(a, b, x) and is_admissible_triple(c, d, x)):
            continue
        weight = (dx + 1) * triangle_coefficient(a, b, x) * triangle_coefficient(c, d, x)
        sum_p = racah_alternating_sum(SpinSextet(a, b, x, c, d, p))
        sum_q = sum_p if same else racah_alternating_sum(SpinSextet(a, b, x, c, d, q))
        total += weight * sum_p * sum_q
    if same:
        total *= triangle_coefficient(a, d, p) * triangle_coefficient(c, b, p)
        return total - Fraction(1, p.doubled + 1)
    return total

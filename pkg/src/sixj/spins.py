"""Half-integer spins, the six-spin argument of the 6j symbol, and admissibility.

Spins are stored as doubled integers so that half-integers are exact and
every admissibility test is pure integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, ParseError

EDGE_NAMES = ("j1", "j2", "j3", "J1", "J2", "J3")

# The four vertex triads and three opposite-pair sums, as indices into
# EDGE_NAMES: v1=(j1,j2,j3) v2=(J1,j2,J3) v3=(J1,J2,j3) v4=(j1,J2,J3);
# p1 omits column 1, p2 omits column 2, p3 omits column 3.
TRIAD_INDICES = ((0, 1, 2), (3, 1, 5), (3, 4, 2), (0, 4, 5))
PAIR_INDICES = ((1, 4, 2, 5), (0, 3, 2, 5), (1, 4, 0, 3))

# For each edge: the two vertex triads and the two pair sums it belongs to.
EDGE_TRIADS = {"j1": (0, 3), "j2": (0, 1), "j3": (0, 2),
               "J1": (1, 2), "J2": (2, 3), "J3": (1, 3)}
EDGE_PAIRS = {"j1": (1, 2), "j2": (0, 2), "j3": (0, 1),
              "J1": (1, 2), "J2": (0, 2), "J3": (0, 1)}


@dataclass(frozen=True, order=True)
class HalfInt:
    """A spin stored as twice its value: HalfInt(3) is the spin 3/2."""

    doubled: int

    @property
    def is_integer(self) -> bool:
        return self.doubled % 2 == 0

    @property
    def as_fraction(self) -> Fraction:
        return Fraction(self.doubled, 2)

    def __float__(self) -> float:
        return self.doubled / 2.0

    def __add__(self, other: "HalfInt") -> "HalfInt":
        return HalfInt(self.doubled + other.doubled)

    def __sub__(self, other: "HalfInt") -> "HalfInt":
        return HalfInt(self.doubled - other.doubled)

    def scaled(self, k: int) -> "HalfInt":
        return HalfInt(self.doubled * k)

    def __str__(self) -> str:
        if self.doubled % 2 == 0:
            return str(self.doubled // 2)
        return f"{self.doubled}/2"

    def __repr__(self) -> str:
        return f"HalfInt({self.doubled})"


def parse_spin(text: str) -> HalfInt:
    """Parse "n", "n/2" or "n.5" into an exact non-negative half-integer spin."""
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"cannot parse spin {text!r}") from exc
    if value.denominator not in (1, 2):
        raise DomainError(f"spin {text!r} is not a half-integer")
    if value < 0:
        raise DomainError(f"spin {text!r} is negative")
    return HalfInt(int(value * 2))


def is_admissible_triple(a: HalfInt, b: HalfInt, c: HalfInt) -> bool:
    """Triangle inequality plus integer sum, exactly on doubled values."""
    da, db, dc = a.doubled, b.doubled, c.doubled
    return (da + db - dc >= 0 and da - db + dc >= 0 and -da + db + dc >= 0
            and (da + db + dc) % 2 == 0)


@dataclass(frozen=True)
class SpinSextet:
    """The six arguments {j1 j2 j3; J1 J2 J3}, column i pairing j_i with J_i."""

    j1: HalfInt
    j2: HalfInt
    j3: HalfInt
    J1: HalfInt
    J2: HalfInt
    J3: HalfInt

    @classmethod
    def from_doubled(cls, *doubled: int) -> "SpinSextet":
        if len(doubled) != 6 or any(d < 0 for d in doubled):
            raise DomainError(f"need six non-negative doubled spins, got {doubled}")
        return cls(*(HalfInt(int(d)) for d in doubled))

    @classmethod
    def from_strings(cls, *texts: str) -> "SpinSextet":
        if len(texts) != 6:
            raise ParseError(f"need six spins, got {len(texts)}")
        return cls(*(parse_spin(t) for t in texts))

    @property
    def edges(self) -> dict[str, HalfInt]:
        return {name: getattr(self, name) for name in EDGE_NAMES}

    @property
    def doubled(self) -> tuple[int, ...]:
        return tuple(getattr(self, name).doubled for name in EDGE_NAMES)

    @property
    def triads(self) -> tuple[tuple[HalfInt, HalfInt, HalfInt], ...]:
        spins = [getattr(self, name) for name in EDGE_NAMES]
        return tuple((spins[i], spins[j], spins[k]) for i, j, k in TRIAD_INDICES)

    @property
    def is_admissible(self) -> bool:
        return all(is_admissible_triple(*t) for t in self.triads)

    def scaled(self, k: int) -> "SpinSextet":
        if k <= 0:
            raise DomainError(f"scale factor must be positive, got {k}")
        return SpinSextet(*(getattr(self, name).scaled(k) for name in EDGE_NAMES))

    def __str__(self) -> str:
        up = " ".join(str(getattr(self, n)) for n in EDGE_NAMES[:3])
        lo = " ".join(str(getattr(self, n)) for n in EDGE_NAMES[3:])
        return f"{{{up}; {lo}}}"


@dataclass(frozen=True)
class TriadSums:
    """Vertex-triad sums v_1..v_4 and opposite-pair sums p_1..p_3 (plain integers)."""

    vertex_sums: tuple[int, int, int, int]
    pair_sums: tuple[int, int, int]


def triad_sums(s: SpinSextet) -> TriadSums:
    """Integer v/p sums of an admissible sextet; their totals agree by construction."""
    for triad in s.triads:
        if not is_admissible_triple(*triad):
            raise DomainError(f"inadmissible triad {tuple(str(t) for t in triad)} in {s}")
    d = s.doubled
    v = tuple((d[i] + d[j] + d[k]) // 2 for i, j, k in TRIAD_INDICES)
    p = tuple((d[i] + d[j] + d[k] + d[l]) // 2 for i, j, k, l in PAIR_INDICES)
    return TriadSums(v, p)

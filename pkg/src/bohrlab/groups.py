"""Finite abelian groups ``Z_{n1} x ... x Z_{nd}``, their elements and characters.

Elements and characters are indexed tuples with componentwise modular
arithmetic.  The canonical order of both index spaces is lexicographic on the
coordinate tuples, which coincides with C-order raveling of a ``factors``-shaped
array; every table in the package (densities, spectra, bitsets) uses that order.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import CapacityError, DomainError, ShapeError

TWO_PI = 2.0 * math.pi

DEFAULT_ENUM_CAP = 1 << 16
ENUM_CAP_ENV = "BOHRLAB_ENUM_CAP"


def enumeration_cap() -> int:
    """Current enumeration cap; the BOHRLAB_ENUM_CAP env var overrides the default."""
    raw = os.environ.get(ENUM_CAP_ENV)
    if raw is None:
        return DEFAULT_ENUM_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise DomainError(f"{ENUM_CAP_ENV} must be an integer, got {raw!r}") from exc
    if cap < 1:
        raise DomainError(f"{ENUM_CAP_ENV} must be >= 1, got {cap}")
    return cap


@dataclass(frozen=True)
class GroupSpec:
    """A finite abelian group given as an ordered product of cyclic factors."""

    factors: tuple[int, ...]

    def __post_init__(self) -> None:
        factors = tuple(int(n) for n in self.factors)
        if not factors:
            raise DomainError("a group needs at least one cyclic factor")
        if any(n < 1 for n in factors):
            raise DomainError(f"cycle lengths must be >= 1, got {factors}")
        object.__setattr__(self, "factors", factors)

    @property
    def order(self) -> int:
        n = 1
        for f in self.factors:
            n *= f
        return n

    @property
    def ndim(self) -> int:
        return len(self.factors)

    def __str__(self) -> str:
        return "x".join(str(n) for n in self.factors)


def parse_group(text: str) -> GroupSpec:
    """Parse a spec string like ``"8"``, ``"4x3"`` or ``"2x2x2"``, left to right."""
    parts = text.strip().split("x")
    try:
        factors = tuple(int(p) for p in parts)
    except ValueError as exc:
        raise DomainError(f"cannot parse group spec {text!r}") from exc
    return GroupSpec(factors)


@dataclass(frozen=True)
class Elem:
    """A group element, one coordinate per cyclic factor."""

    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))

    def __str__(self) -> str:
        if len(self.coords) == 1:
            return str(self.coords[0])
        return "(" + ",".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class Char:
    """A character of the group, identified by its frequency tuple."""

    freq: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "freq", tuple(int(t) for t in self.freq))

    def __str__(self) -> str:
        if len(self.freq) == 1:
            return str(self.freq[0])
        return "(" + ",".join(str(t) for t in self.freq) + ")"


def check_elem(g: GroupSpec, a: Elem) -> None:
    if len(a.coords) != g.ndim:
        raise ShapeError(f"element {a} has {len(a.coords)} coords, group {g} has {g.ndim}")
    for c, n in zip(a.coords, g.factors):
        if not 0 <= c < n:
            raise ShapeError(f"coordinate {c} out of range for factor Z_{n}")


def check_char(g: GroupSpec, t: Char) -> None:
    if len(t.freq) != g.ndim:
        raise ShapeError(f"character {t} has {len(t.freq)} coords, group {g} has {g.ndim}")
    for c, n in zip(t.freq, g.factors):
        if not 0 <= c < n:
            raise ShapeError(f"frequency {c} out of range for factor Z_{n}")


def zero_elem(g: GroupSpec) -> Elem:
    return Elem((0,) * g.ndim)


def elem_add(g: GroupSpec, a: Elem, b: Elem) -> Elem:
    check_elem(g, a)
    check_elem(g, b)
    return Elem(tuple((x + y) % n for x, y, n in zip(a.coords, b.coords, g.factors)))


def elem_neg(g: GroupSpec, a: Elem) -> Elem:
    check_elem(g, a)
    return Elem(tuple((-x) % n for x, n in zip(a.coords, g.factors)))


def elem_sub(g: GroupSpec, a: Elem, b: Elem) -> Elem:
    return elem_add(g, a, elem_neg(g, b))


def pairing(g: GroupSpec, t: Char, z: Elem) -> float:
    """The torus pairing ``sum_j t_j z_j / n_j mod 1`` as a float in [0, 1)."""
    check_char(g, t)
    check_elem(g, z)
    acc = 0.0
    for tj, zj, n in zip(t.freq, z.coords, g.factors):
        acc += ((tj * zj) % n) / n
    return acc % 1.0


def pairing_exact(g: GroupSpec, t: Char, z: Elem) -> Fraction:
    """Exact rational value of the torus pairing, reduced mod 1."""
    check_char(g, t)
    check_elem(g, z)
    acc = Fraction(0)
    for tj, zj, n in zip(t.freq, z.coords, g.factors):
        acc += Fraction(tj * zj, n)
    return acc % 1


def char_eval(g: GroupSpec, t: Char, z: Elem) -> complex:
    """Evaluate the character: ``exp(2 pi i sum_j t_j z_j / n_j)``."""
    phase = pairing(g, t, z)
    return complex(math.cos(TWO_PI * phase), math.sin(TWO_PI * phase))


def torus_norm(x: float) -> float:
    """Distance of a real number to the nearest integer, in [0, 1/2]."""
    frac = x % 1.0
    return min(frac, 1.0 - frac)


# --- canonical ranking -------------------------------------------------------

def strides(g: GroupSpec) -> tuple[int, ...]:
    """Mixed-radix strides so that rank = sum_j coords_j * stride_j."""
    out = []
    acc = 1
    for n in reversed(g.factors):
        out.append(acc)
        acc *= n
    return tuple(reversed(out))


@lru_cache(maxsize=32)
def _coords_table(factors: tuple[int, ...]) -> np.ndarray:
    grid = np.indices(factors, dtype=np.int64).reshape(len(factors), -1).T
    grid.flags.writeable = False
    return grid


def coords_table(g: GroupSpec) -> np.ndarray:
    """All N coordinate tuples in canonical order, as an (N, d) int array.

    Plumbing for the dense numerical paths; the user-facing enumeration ops
    apply the capacity cap, this accessor does not.
    """
    return _coords_table(g.factors)


def rank_of_elem(g: GroupSpec, a: Elem) -> int:
    check_elem(g, a)
    return int(sum(c * s for c, s in zip(a.coords, strides(g))))


def elem_at(g: GroupSpec, rank: int) -> Elem:
    if not 0 <= rank < g.order:
        raise DomainError(f"rank {rank} out of range for group of order {g.order}")
    coords = []
    for s, n in zip(strides(g), g.factors):
        coords.append((rank // s) % n)
    return Elem(tuple(coords))


def rank_of_char(g: GroupSpec, t: Char) -> int:
    check_char(g, t)
    return int(sum(c * s for c, s in zip(t.freq, strides(g))))


def char_at(g: GroupSpec, rank: int) -> Char:
    return Char(elem_at(g, rank).coords)


def enumerate_elems(g: GroupSpec, cap: int | None = None) -> list[Elem]:
    """All N elements exactly once, lexicographic on coordinates."""
    cap = enumeration_cap() if cap is None else cap
    if g.order > cap:
        raise CapacityError(f"group order {g.order} exceeds enumeration cap {cap}")
    return [Elem(tuple(row)) for row in _coords_table(g.factors)]


def enumerate_chars(g: GroupSpec, cap: int | None = None) -> list[Char]:
    """All N characters in the same lexicographic order as the elements."""
    cap = enumeration_cap() if cap is None else cap
    if g.order > cap:
        raise CapacityError(f"group order {g.order} exceeds enumeration cap {cap}")
    return [Char(tuple(row)) for row in _coords_table(g.factors)]


def phase_table(g: GroupSpec, freqs: np.ndarray, coords: np.ndarray) -> np.ndarray:
    """Pairing phases in [0, 1) for every (frequency row, coordinate row) pair.

    ``freqs`` is (k, d) and ``coords`` is (m, d); the result is (k, m).  All
    trigonometry downstream goes through these phases, never through
    incremental rotation, so there is no accumulated drift on large groups.
    """
    factors = np.asarray(g.factors, dtype=np.int64)
    prod = (freqs[:, None, :] * coords[None, :, :]) % factors
    return (prod / factors).sum(axis=2) % 1.0

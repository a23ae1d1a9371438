"""Certificate extraction: from two dense sets to an explicit Bohr witness.

Pipeline, for densities f and g with common mean delta after normalization:

    h = f * g * g~            (g~ the reflection; supp h is the sumset)
    S1 = large spectrum of f at threshold delta^3 / 4
    a0 = argmax of h over supp f
    p  = the S1 part of h-hat, as a trigonometric polynomial
    q  = p - delta^4 / 4,  c = Re q(a0)

The certificate then asserts that a0 plus the Bohr set on frequencies S1 with
radius c / |S1| (character-distance form) sits inside supp h.  Every numbered
bound the construction promises is recorded and re-checked; a violation is an
internal error, never a silently weaker certificate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bohr import FORM_CHAR, BohrSpec, char_form_to_torus_form
from .errors import (
    DomainError,
    EmptyInputError,
    InvariantBreach,
    PreconditionError,
    ShapeError,
)
from .groups import Char, Elem, GroupSpec, char_at, char_eval, elem_at, rank_of_char
from .spectral import DensityFn, Spectrum, dft, idft, triple_convolve

BOUND_SLACK = 1e-9
RADIUS_SLACK = 1e-12

MEAN_TOLERANCE = 1e-12


@dataclass(frozen=True, eq=False)
class TrigPoly:
    """A finite trigonometric polynomial: constant_shift + sum of coeff * chi."""

    group: GroupSpec
    terms: dict[Char, complex]
    constant_shift: float = 0.0

    def __post_init__(self) -> None:
        for t in self.terms:
            if len(t.freq) != self.group.ndim:
                raise ShapeError(f"frequency {t.freq} does not fit group {self.group}")
        # Canonical term order makes evaluation sums reproducible.
        ordered = dict(
            sorted(self.terms.items(), key=lambda kv: rank_of_char(self.group, kv[0]))
        )
        object.__setattr__(self, "terms", ordered)

    @property
    def support(self) -> tuple[Char, ...]:
        return tuple(self.terms)

    def evaluate(self, z: Elem) -> complex:
        acc = complex(self.constant_shift)
        for t, coeff in self.terms.items():
            acc += coeff * char_eval(self.group, t, z)
        return acc


def normalize_means(f: DensityFn, g: DensityFn) -> tuple[DensityFn, DensityFn, float]:
    """Scale down the heavier input so both have the smaller mean.

    Values must already lie in [0, 1]; a zero mean on either side is an
    empty-input error (the pipeline needs positive density).  Returns the
    common mean delta alongside the adjusted pair.
    """
    if f.group != g.group:
        raise ShapeError(f"inputs live on different groups: {f.group} vs {g.group}")
    for name, d in (("first", f), ("second", g)):
        lo = float(d.values.min())
        hi = float(d.values.max())
        if lo < -MEAN_TOLERANCE or hi > 1.0 + MEAN_TOLERANCE:
            raise DomainError(
                f"{name} input has values outside [0, 1]: range [{lo}, {hi}]"
            )
    mf, mg = f.mean, g.mean
    if mf <= 0.0 or mg <= 0.0:
        raise EmptyInputError("both inputs must have positive mean")
    if mf == mg:
        return f, g, mf
    delta = min(mf, mg)
    if mf > mg:
        return f.scaled(delta / mf), g, delta
    return f, g.scaled(delta / mg), delta


def large_spectrum(f: DensityFn, threshold: float) -> list[Char]:
    """Characters whose Fourier coefficient has modulus >= threshold.

    Returned in canonical character order.  The trivial character is always
    included whenever threshold <= mean(f).
    """
    if not threshold > 0.0:
        raise DomainError(f"threshold must be positive, got {threshold}")
    coeffs = dft(f).coeffs
    ranks = np.flatnonzero(np.abs(coeffs) >= threshold)
    return [char_at(f.group, int(r)) for r in ranks]


def find_witness(h: DensityFn, f: DensityFn) -> tuple[Elem, float]:
    """Argmax of h over supp f, first in canonical order on ties.

    The averaging identity <h, f> = sum |f-hat|^2 |g-hat|^2 >= delta^4 forces
    the maximum to reach delta^4; falling short means the inputs violated the
    pipeline's preconditions, reported as an invariant breach.
    """
    if h.group != f.group:
        raise ShapeError(f"inputs live on different groups: {h.group} vs {f.group}")
    supp = f.values > 0.0
    if not supp.any():
        raise EmptyInputError("support of f is empty")
    masked = np.where(supp, h.values, -np.inf)
    rank = int(np.argmax(masked))
    a0 = elem_at(h.group, rank)
    h_at_a0 = float(h.values[rank])
    delta = f.mean
    if h_at_a0 < delta**4 - BOUND_SLACK:
        raise InvariantBreach(
            f"witness value {h_at_a0} below delta^4 = {delta**4} at {a0.coords}"
        )
    return a0, h_at_a0


def remainder_bound_check(f: DensityFn, g: DensityFn, s1: list[Char]) -> float:
    """Max modulus of h minus its S1 truncation; must stay under delta^4 / 4.

    h-hat factors as f-hat * |g-hat|^2, so the remainder is the inverse
    transform of that product with the S1 coefficients zeroed out.
    """
    if f.group != g.group:
        raise ShapeError(f"inputs live on different groups: {f.group} vs {g.group}")
    grp = f.group
    if abs(f.mean - g.mean) > BOUND_SLACK:
        raise DomainError(
            f"inputs are not mean-normalized: means {f.mean} vs {g.mean}"
        )
    delta = min(f.mean, g.mean)
    hhat = dft(f).coeffs * np.abs(dft(g).coeffs) ** 2
    rest = hhat.copy()
    for t in s1:
        rest[rank_of_char(grp, t)] = 0.0
    r = idft(Spectrum(grp, rest))
    r_max = float(np.abs(r).max())
    bound = 0.25 * delta**4 + BOUND_SLACK
    if r_max > bound:
        raise InvariantBreach(
            f"remainder {r_max} exceeds delta^4 / 4 = {0.25 * delta**4}"
        )
    return r_max


def bohr_from_trigpoly(p: TrigPoly, a: Elem, c: float) -> BohrSpec:
    """Bohr set on supp p, radius c / |supp p|, centered at a.

    Valid whenever each coefficient has modulus at most 1 and Re p(a) >= c:
    then |p(z + a) - p(a)| < c for every member z, by telescoping the
    character distances.  Violated preconditions raise.
    """
    if not (math.isfinite(c) and c > 0.0):
        raise DomainError(f"level c must be positive and finite, got {c}")
    for t, coeff in p.terms.items():
        if abs(coeff) > 1.0 + RADIUS_SLACK:
            raise PreconditionError(
                f"coefficient at {t.freq} has modulus {abs(coeff)} > 1"
            )
    re_pa = p.evaluate(a).real
    if re_pa < c - RADIUS_SLACK:
        raise PreconditionError(f"Re p(a) = {re_pa} is below the level c = {c}")
    k = len(p.terms)
    radius = c / k if k else c
    return BohrSpec(p.group, p.support, radius, FORM_CHAR, center=a)


@dataclass(frozen=True)
class BoundCheck:
    """One recorded inequality: its achieved value against its stated limit."""

    value: float
    limit: float
    ok: bool


@dataclass(frozen=True, eq=False)
class Certificate:
    """Everything needed to re-verify one extraction from scratch."""

    group: GroupSpec
    delta: float
    a0: Elem
    s1: tuple[Char, ...]
    c: float
    k: int
    h_at_a0: float
    bohr_char_form: BohrSpec
    bohr_torus_form: BohrSpec
    bounds: dict[str, BoundCheck]


def extract(f: DensityFn, g: DensityFn) -> Certificate:
    """Run the full pipeline and return a self-checked certificate.

    Deterministic: identical inputs give identical certificates.  Any recorded
    bound that fails is an invariant breach, not a degraded result.
    """
    f1, g1, delta = normalize_means(f, g)
    grp = f1.group
    h = triple_convolve(f1, g1)
    s1 = large_spectrum(f1, 0.25 * delta**3)
    k = len(s1)
    a0, h_at_a0 = find_witness(h, f1)

    hhat = dft(f1).coeffs * np.abs(dft(g1).coeffs) ** 2
    terms = {t: complex(hhat[rank_of_char(grp, t)]) for t in s1}
    q = TrigPoly(grp, terms, constant_shift=-0.25 * delta**4)
    c = q.evaluate(a0).real
    r_max = remainder_bound_check(f1, g1, s1)

    bohr_char = bohr_from_trigpoly(q, a0, c)
    bohr_torus = char_form_to_torus_form(bohr_char)

    bounds = {
        "dimension": BoundCheck(float(k), 16.0 * delta**-5, k <= 16.0 * delta**-5),
        "witness_value": BoundCheck(
            h_at_a0, delta**4, h_at_a0 >= delta**4 - BOUND_SLACK
        ),
        "c_lower": BoundCheck(c, 0.5 * delta**4, c >= 0.5 * delta**4 - BOUND_SLACK),
        "torus_radius": BoundCheck(
            bohr_torus.radius,
            delta**9 / (64.0 * math.pi),
            bohr_torus.radius >= delta**9 / (64.0 * math.pi) - RADIUS_SLACK,
        ),
        "remainder": BoundCheck(
            r_max, 0.25 * delta**4, r_max <= 0.25 * delta**4 + BOUND_SLACK
        ),
    }
    for name, check in bounds.items():
        if not check.ok:
            raise InvariantBreach(
                f"bound {name} failed: value {check.value} vs limit {check.limit}"
            )
    return Certificate(
        group=grp,
        delta=delta,
        a0=a0,
        s1=tuple(s1),
        c=c,
        k=k,
        h_at_a0=h_at_a0,
        bohr_char_form=bohr_char,
        bohr_torus_form=bohr_torus,
        bounds=bounds,
    )

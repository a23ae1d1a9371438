"""Independent re-checking of certificates, plus the good-shift statistic.

Everything here recomputes from definitions: transforms via the O(N^2)
pairing sums, sumsets via translate enumeration.  None of the extractor's
fast-path results are trusted; a certificate is data to be audited.  Failed
checks are recorded in the report, not raised -- reports are data too.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bohr import (
    DEFAULT_GUARD,
    FORM_CHAR,
    FORM_TORUS,
    BohrSpec,
    halve_radius,
    members_mask,
)
from .errors import CapacityError, DomainError, EmptyInputError, ShapeError
from .extractor import BOUND_SLACK, RADIUS_SLACK, Certificate
from .groups import (
    TWO_PI,
    GroupSpec,
    coords_table,
    elem_at,
    enumeration_cap,
    rank_of_char,
    rank_of_elem,
)
from .sets import GroupSubset, sumset_ABmB
from .spectral import (
    DensityFn,
    convolve,
    dft,
    dft_definitional,
    plancherel_pairing,
    reflect,
    synthesize,
    triple_convolve_definitional,
)

SUITE_TOLERANCE = 1e-9


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass(frozen=True)
class VerificationReport:
    group: GroupSpec
    passed: bool
    checks: tuple[CheckResult, ...]

    def first_failure(self) -> CheckResult | None:
        for check in self.checks:
            if not check.passed:
                return check
        return None

    def to_dict(self) -> dict:
        return {
            "group": str(self.group),
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }


def _close(x: float, y: float, rel: float = RADIUS_SLACK) -> bool:
    return math.isclose(x, y, rel_tol=rel, abs_tol=rel)


def verify_certificate(
    cert: Certificate, A: GroupSubset, B: GroupSubset, guard: float = DEFAULT_GUARD
) -> VerificationReport:
    """Audit every claim in the certificate against A and B from scratch.

    The checks, in report order: the witness lies in A; the translated Bohr
    set sits inside the enumerated sumset; torus-form members are a subset of
    char-form members; the dimension, witness-value, level and remainder
    bounds; then internal consistency (delta, spectrum, radii, centers)
    against the definitional recomputation.
    """
    if A.group != cert.group or B.group != cert.group:
        raise ShapeError(
            f"certificate is for {cert.group}, sets are on {A.group} and {B.group}"
        )
    grp = cert.group
    f0, g0 = A.indicator(), B.indicator()
    if f0.mean <= 0.0 or g0.mean <= 0.0:
        raise EmptyInputError("cannot verify against an empty set")
    delta = min(f0.mean, g0.mean)
    f1 = f0 if f0.mean == delta else f0.scaled(delta / f0.mean)
    g1 = g0 if g0.mean == delta else g0.scaled(delta / g0.mean)

    h_def = triple_convolve_definitional(f1, g1)
    fhat_def = dft_definitional(f1).coeffs
    hhat_def = dft_definitional(h_def).coeffs

    a0_rank = rank_of_elem(grp, cert.a0)
    s1_ranks = np.asarray([rank_of_char(grp, t) for t in cert.s1], dtype=np.int64)
    k = len(cert.s1)

    freq_rows = np.asarray([t.freq for t in cert.s1], dtype=np.int64).reshape(-1, grp.ndim)
    p_vals = synthesize(grp, freq_rows, hhat_def[s1_ranks])
    c_def = float(p_vals[a0_rank].real) - 0.25 * delta**4
    h_at_a0_def = float(h_def.values[a0_rank])
    r_max_def = float(np.abs(h_def.values - p_vals).max())

    sumset = sumset_ABmB(A, B)
    char_members = members_mask(cert.bohr_char_form, guard)
    torus_members = members_mask(cert.bohr_torus_form, guard)

    checks: list[CheckResult] = []

    checks.append(
        CheckResult(
            "witness-in-set",
            A.contains(cert.a0),
            f"a0 = {cert.a0.coords}",
        )
    )

    shifted = np.roll(
        char_members.reshape(grp.factors), cert.a0.coords, axis=tuple(range(grp.ndim))
    ).ravel()
    escapees = np.flatnonzero(shifted & ~sumset.mask)
    if escapees.size:
        first = elem_at(grp, int(escapees[0]))
        detail = f"element {first.coords} lies outside the sumset"
    else:
        detail = f"{int(char_members.sum())} members, all contained after shifting by a0"
    checks.append(CheckResult("containment", escapees.size == 0, detail))

    stray = np.flatnonzero(torus_members & ~char_members)
    if stray.size:
        first = elem_at(grp, int(stray[0]))
        detail = f"torus member {first.coords} is not a char-form member"
    else:
        detail = f"{int(torus_members.sum())} torus members inside {int(char_members.sum())}"
    checks.append(CheckResult("torus-subset", stray.size == 0, detail))

    k_limit = 16.0 * delta**-5
    checks.append(
        CheckResult(
            "dimension-bound",
            cert.k == k and k <= k_limit,
            f"k = {cert.k}, |S1| = {k}, limit = {k_limit}",
        )
    )

    checks.append(
        CheckResult(
            "witness-value",
            h_at_a0_def >= delta**4 - BOUND_SLACK
            and abs(h_at_a0_def - cert.h_at_a0) <= BOUND_SLACK,
            f"h(a0) = {h_at_a0_def} vs certified {cert.h_at_a0}, floor {delta**4}",
        )
    )

    checks.append(
        CheckResult(
            "level-value",
            abs(c_def - cert.c) <= BOUND_SLACK and c_def >= 0.5 * delta**4 - BOUND_SLACK,
            f"c = {c_def} vs certified {cert.c}, floor {0.5 * delta**4}",
        )
    )

    checks.append(
        CheckResult(
            "remainder-bound",
            r_max_def <= 0.25 * delta**4 + BOUND_SLACK,
            f"max |h - p| = {r_max_def}, cap {0.25 * delta**4}",
        )
    )

    checks.append(
        CheckResult(
            "delta-consistent",
            abs(delta - cert.delta) <= BOUND_SLACK,
            f"recomputed {delta} vs certified {cert.delta}",
        )
    )

    # The certified S1 must match the definitional large spectrum, allowing a
    # band around the threshold where floating-point could go either way.
    threshold = 0.25 * delta**3
    moduli = np.abs(fhat_def)
    required = set(np.flatnonzero(moduli >= threshold + BOUND_SLACK).tolist())
    allowed = set(np.flatnonzero(moduli >= threshold - BOUND_SLACK).tolist())
    claimed = set(int(r) for r in s1_ranks)
    spectrum_ok = required <= claimed <= allowed and len(claimed) == k
    missing = sorted(required - claimed)
    excess = sorted(claimed - allowed)
    if missing:
        detail = f"missing character rank {missing[0]}"
    elif excess:
        detail = f"character rank {excess[0]} is below the threshold"
    elif len(claimed) != k:
        detail = "duplicate characters in S1"
    else:
        detail = f"{k} characters at threshold {threshold}"
    checks.append(CheckResult("large-spectrum", spectrum_ok, detail))

    want_char = cert.c / k if k else cert.c
    radii_ok = (
        _close(cert.bohr_char_form.radius, want_char)
        and _close(cert.bohr_torus_form.radius, cert.bohr_char_form.radius / TWO_PI)
    )
    checks.append(
        CheckResult(
            "radius-consistency",
            radii_ok,
            f"char {cert.bohr_char_form.radius} (want {want_char}), "
            f"torus {cert.bohr_torus_form.radius}",
        )
    )

    forms_ok = (
        cert.bohr_char_form.form == FORM_CHAR
        and cert.bohr_torus_form.form == FORM_TORUS
        and cert.bohr_char_form.center == cert.a0
        and cert.bohr_torus_form.center == cert.a0
        and cert.bohr_char_form.freqs == cert.s1
        and cert.bohr_torus_form.freqs == cert.s1
    )
    checks.append(
        CheckResult(
            "forms-and-centers",
            forms_ok,
            "both forms carry S1 and are centered at a0" if forms_ok else "metadata mismatch",
        )
    )

    return VerificationReport(
        group=grp,
        passed=all(c.passed for c in checks),
        checks=tuple(checks),
    )


def good_shift_set(A: GroupSubset, B: GroupSubset, b: BohrSpec) -> GroupSubset:
    """Members a of A with a + (half-radius Bohr set) inside the sumset.

    Halving the radius is what makes the property hereditary: two half-radius
    members sum to a full-radius member, so every shift found here admits its
    own Bohr neighborhood inside A+B-B.
    """
    if A.group != b.group or B.group != b.group:
        raise ShapeError(f"sets on {A.group}/{B.group} but Bohr spec on {b.group}")
    g = b.group
    cap = enumeration_cap()
    if g.order > cap:
        raise CapacityError(f"group order {g.order} exceeds enumeration cap {cap}")
    sumset = sumset_ABmB(A, B)
    half = members_mask(halve_radius(b))
    s_nd = sumset.mask.reshape(g.factors)
    good_nd = np.ones(g.factors, dtype=bool)
    axes = tuple(range(g.ndim))
    for row in coords_table(g)[half]:
        good_nd &= np.roll(s_nd, tuple(int(-x) for x in row), axis=axes)
    return GroupSubset(g, good_nd.ravel() & A.mask)


@dataclass(frozen=True)
class SuiteReport:
    group: GroupSpec
    trials: int
    seed: int
    tolerance: float
    max_errors: dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(v <= self.tolerance for v in self.max_errors.values())

    def to_dict(self) -> dict:
        return {
            "group": str(self.group),
            "trials": self.trials,
            "seed": self.seed,
            "tolerance": self.tolerance,
            "max_errors": dict(self.max_errors),
            "passed": self.passed,
        }


def fourier_identity_suite(g: GroupSpec, trials: int, seed: int = 0) -> SuiteReport:
    """Exercise the transform identities on seeded random tables.

    Four identities per trial: the inner-product identity (Plancherel), its
    diagonal case (Parseval), the convolution theorem, and conjugation under
    reflection.  The report carries the max absolute error of each.
    """
    if trials < 1:
        raise DomainError(f"need at least one trial, got {trials}")
    if seed < 0:
        raise DomainError(f"seed must be non-negative, got {seed}")
    errs = {"plancherel": 0.0, "parseval": 0.0, "convolution": 0.0, "reflection": 0.0}
    n = g.order
    for trial in range(trials):
        rng = np.random.default_rng(np.random.SeedSequence([seed, trial]))
        f = DensityFn(g, rng.random(n))
        h = DensityFn(g, rng.random(n))
        fhat = dft(f).coeffs
        hhat = dft(h).coeffs

        lhs = plancherel_pairing(f, h)
        rhs = complex((fhat * hhat.conj()).sum())
        errs["plancherel"] = max(errs["plancherel"], abs(lhs - rhs))

        errs["parseval"] = max(
            errs["parseval"],
            abs(float((f.values**2).mean()) - float((np.abs(fhat) ** 2).sum())),
        )

        conv_hat = dft(convolve(f, h)).coeffs
        errs["convolution"] = max(
            errs["convolution"], float(np.abs(conv_hat - fhat * hhat).max())
        )

        refl_hat = dft(reflect(h)).coeffs
        errs["reflection"] = max(
            errs["reflection"], float(np.abs(refl_hat - hhat.conj()).max())
        )
    return SuiteReport(
        group=g, trials=trials, seed=seed, tolerance=SUITE_TOLERANCE, max_errors=errs
    )

"""The brute-force auditor: honest certificates pass, tampered fields are caught."""

from __future__ import annotations

import dataclasses

import numpy as np
import pytest

from bohrlab.bohr import FORM_CHAR, BohrSpec
from bohrlab.errors import DomainError, EmptyInputError, ShapeError
from bohrlab.extractor import extract
from bohrlab.groups import Char, Elem, GroupSpec
from bohrlab.sets import GroupSubset, random_nonempty_subset
from bohrlab.spectral import DensityFn, constant_density, convolve, dft, reflect
from bohrlab.verify import (
    SuiteReport,
    fourier_identity_suite,
    good_shift_set,
    verify_certificate,
)

Z8 = GroupSpec((8,))
EVENS = GroupSubset.from_ranks(Z8, [0, 2, 4, 6])


@pytest.fixture(scope="module")
def evens_cert():
    return extract(EVENS.indicator(), EVENS.indicator())


def _check(report, name):
    for c in report.checks:
        if c.name == name:
            return c
    raise AssertionError(f"no check named {name}")


def test_honest_certificate_passes(evens_cert):
    report = verify_certificate(evens_cert, EVENS, EVENS)
    assert report.passed
    assert report.first_failure() is None
    assert [c.name for c in report.checks] == [
        "witness-in-set",
        "containment",
        "torus-subset",
        "dimension-bound",
        "witness-value",
        "level-value",
        "remainder-bound",
        "delta-consistent",
        "large-spectrum",
        "radius-consistency",
        "forms-and-centers",
    ]


def test_full_group_certificate_passes():
    g = GroupSpec((10,))
    whole = GroupSubset.full(g)
    cert = extract(whole.indicator(), whole.indicator())
    report = verify_certificate(cert, whole, whole)
    assert report.passed


@pytest.mark.parametrize("seed", range(6))
def test_random_certificates_pass(seed):
    g = GroupSpec((48,))
    A = random_nonempty_subset(g, 0.3, 1000 + seed)
    B = random_nonempty_subset(g, 0.4, 2000 + seed)
    cert = extract(A.indicator(), B.indicator())
    report = verify_certificate(cert, A, B)
    assert report.passed, report.first_failure()


def test_group_mismatch_raises(evens_cert):
    other = GroupSubset.full(GroupSpec((9,)))
    with pytest.raises(ShapeError):
        verify_certificate(evens_cert, other, other)


def test_empty_set_raises(evens_cert):
    with pytest.raises(EmptyInputError):
        verify_certificate(evens_cert, GroupSubset.empty(Z8), EVENS)


def test_tampered_witness_detected(evens_cert):
    bad = dataclasses.replace(evens_cert, a0=Elem((1,)))
    report = verify_certificate(bad, EVENS, EVENS)
    assert not report.passed
    assert not _check(report, "witness-in-set").passed


def test_tampered_radius_detected(evens_cert):
    doubled = dataclasses.replace(
        evens_cert.bohr_char_form, radius=2 * evens_cert.bohr_char_form.radius
    )
    bad = dataclasses.replace(evens_cert, bohr_char_form=doubled)
    report = verify_certificate(bad, EVENS, EVENS)
    assert not report.passed
    assert not _check(report, "radius-consistency").passed


def test_oversized_bohr_set_escapes_containment(evens_cert):
    # odd elements sit at character distance exactly 2 under t=4, so a radius
    # above 2 sweeps them in and containment must break on a named element
    wide = dataclasses.replace(evens_cert.bohr_char_form, radius=2.5)
    wide_torus = dataclasses.replace(evens_cert.bohr_torus_form, radius=2.5 / (2 * np.pi))
    bad = dataclasses.replace(
        evens_cert, bohr_char_form=wide, bohr_torus_form=wide_torus
    )
    report = verify_certificate(bad, EVENS, EVENS)
    check = _check(report, "containment")
    assert not check.passed
    assert "outside the sumset" in check.detail


def test_tampered_spectrum_detected(evens_cert):
    swapped = (Char((0,)), Char((3,)))  # 3 carries no mass for the evens
    forms = [
        dataclasses.replace(evens_cert.bohr_char_form, freqs=swapped),
        dataclasses.replace(evens_cert.bohr_torus_form, freqs=swapped),
    ]
    bad = dataclasses.replace(
        evens_cert, s1=swapped, bohr_char_form=forms[0], bohr_torus_form=forms[1]
    )
    report = verify_certificate(bad, EVENS, EVENS)
    assert not report.passed
    assert not _check(report, "large-spectrum").passed


def test_tampered_level_detected(evens_cert):
    bad = dataclasses.replace(evens_cert, c=evens_cert.c + 0.01)
    report = verify_certificate(bad, EVENS, EVENS)
    assert not _check(report, "level-value").passed


def test_tampered_witness_value_detected(evens_cert):
    bad = dataclasses.replace(evens_cert, h_at_a0=evens_cert.h_at_a0 + 0.001)
    report = verify_certificate(bad, EVENS, EVENS)
    assert not _check(report, "witness-value").passed


def test_tampered_dimension_detected(evens_cert):
    bad = dataclasses.replace(evens_cert, k=evens_cert.k + 1)
    report = verify_certificate(bad, EVENS, EVENS)
    assert not _check(report, "dimension-bound").passed


def test_tampered_delta_detected(evens_cert):
    bad = dataclasses.replace(evens_cert, delta=evens_cert.delta * 0.9)
    report = verify_certificate(bad, EVENS, EVENS)
    assert not _check(report, "delta-consistent").passed


def test_tampered_center_detected(evens_cert):
    moved = dataclasses.replace(evens_cert.bohr_char_form, center=Elem((2,)))
    bad = dataclasses.replace(evens_cert, bohr_char_form=moved)
    report = verify_certificate(bad, EVENS, EVENS)
    assert not _check(report, "forms-and-centers").passed


def test_report_serializes_stably(evens_cert):
    report = verify_certificate(evens_cert, EVENS, EVENS)
    d = report.to_dict()
    assert list(d) == ["group", "passed", "checks"]
    assert d["group"] == "8"
    assert all(list(c) == ["name", "passed", "detail"] for c in d["checks"])


# --- good shifts -------------------------------------------------------------

def test_good_shift_subgroup_fraction_one(evens_cert):
    good = good_shift_set(EVENS, EVENS, evens_cert.bohr_char_form)
    assert np.array_equal(good.mask, EVENS.mask)
    assert good.size / EVENS.size == 1.0


def test_good_shift_whole_group():
    g = GroupSpec((9,))
    whole = GroupSubset.full(g)
    b = BohrSpec(g, (Char((1,)),), 0.5, FORM_CHAR)
    good = good_shift_set(whole, whole, b)
    assert good.size == 9


def test_good_shift_empty_when_radius_over_wide():
    # Bohr members = whole group, sumset only the evens: containment impossible
    b = BohrSpec(Z8, (Char((1,)),), 10.0, FORM_CHAR)
    good = good_shift_set(EVENS, EVENS, b)
    assert good.size == 0


def test_good_shift_contains_witness(evens_cert):
    good = good_shift_set(EVENS, EVENS, evens_cert.bohr_char_form)
    assert good.contains(evens_cert.a0)


def test_good_shift_monotone_in_radius():
    rng = np.random.default_rng(55)
    g = GroupSpec((24,))
    A = random_nonempty_subset(g, 0.4, 7)
    B = random_nonempty_subset(g, 0.4, 8)
    for _ in range(8):
        freqs = (Char((int(rng.integers(24)),)),)
        r = float(rng.uniform(0.1, 1.0))
        big = good_shift_set(A, B, BohrSpec(g, freqs, r, FORM_CHAR))
        small = good_shift_set(A, B, BohrSpec(g, freqs, r / 3, FORM_CHAR))
        # shrinking the radius can only add good shifts
        assert not (big.mask & ~small.mask).any()


def test_good_shift_group_mismatch():
    b = BohrSpec(GroupSpec((9,)), (Char((1,)),), 0.5, FORM_CHAR)
    with pytest.raises(ShapeError):
        good_shift_set(EVENS, EVENS, b)


# --- identity suite ----------------------------------------------------------

def test_identity_suite_small_errors():
    report = fourier_identity_suite(GroupSpec((64,)), trials=50, seed=4)
    assert report.passed
    assert set(report.max_errors) == {"plancherel", "parseval", "convolution", "reflection"}
    assert all(v <= 1e-9 for v in report.max_errors.values())


def test_identity_suite_multi_factor():
    report = fourier_identity_suite(GroupSpec((4, 3, 5)), trials=20, seed=9)
    assert report.passed


def test_identity_suite_one_point_group():
    report = fourier_identity_suite(GroupSpec((1,)), trials=5, seed=0)
    assert report.passed
    assert max(report.max_errors.values()) <= 1e-12


def test_identity_suite_validation():
    with pytest.raises(DomainError):
        fourier_identity_suite(GroupSpec((8,)), trials=0, seed=0)
    with pytest.raises(DomainError):
        fourier_identity_suite(GroupSpec((8,)), trials=1, seed=-1)


def test_identities_exact_for_constant_tables():
    # power-of-two FFT of a constant table is exact; errors are zero up to a
    # single rounding step in the summation order
    g = GroupSpec((64,))
    f = constant_density(g, 0.3)
    h = constant_density(g, 0.7)
    fhat, hhat = dft(f).coeffs, dft(h).coeffs
    assert np.abs(fhat[1:]).max() == 0.0
    assert abs(complex(np.vdot(h.values, f.values) / 64) - (fhat * hhat.conj()).sum()) < 1e-15
    assert abs((f.values**2).mean() - (np.abs(fhat) ** 2).sum()) < 1e-15
    assert np.abs(dft(convolve(f, h)).coeffs - fhat * hhat).max() < 1e-15
    assert np.abs(dft(reflect(h)).coeffs - hhat.conj()).max() < 1e-15


def test_suite_report_dict_shape():
    report = fourier_identity_suite(GroupSpec((16,)), trials=3, seed=1)
    d = report.to_dict()
    assert list(d) == ["group", "trials", "seed", "tolerance", "max_errors", "passed"]
    assert d["passed"] is True

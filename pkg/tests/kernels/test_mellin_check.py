import math

import numpy as np
import pytest
from scipy import special

from momentlab_engine.core import DomainError
from momentlab_engine.fields import PlaceType
from momentlab_engine.kernels import g_real, mellin_identity_check, seed_fourier_transform
from momentlab_engine.whittaker import whittaker_normalizer


@pytest.mark.parametrize("w", [2.5, 3.0])
def test_real_seed_transform_matches_bessel_form(w, loose_spec):
    a = np.array([0.05, 0.3, 1.0, 2.0])
    nu = (w - 1) / 2
    expected = 2 * math.pi ** (w / 2) * a**nu * special.kv(nu, 2 * math.pi * a) / special.gamma(w / 2)
    ours = seed_fourier_transform(PlaceType.REAL, w, a, loose_spec)
    np.testing.assert_allclose(ours.real, expected, rtol=1e-6)
    assert np.max(np.abs(ours.imag)) < 1e-12


def test_real_seed_transform_at_zero_is_total_mass(loose_spec):
    # int (1 + x^2)^{-3/2} dx = 2
    value = seed_fourier_transform(PlaceType.REAL, 3.0, 1e-8, loose_spec)[0]
    assert value.real == pytest.approx(2.0, rel=1e-6)


def test_complex_seed_transform_matches_bessel_form(loose_spec):
    w = 2.5
    a = np.array([0.1, 0.5, 1.5])
    expected = 4 * math.pi * (2 * math.pi * a) ** (w - 1) * special.kv(w - 1, 4 * math.pi * a) / special.gamma(w)
    ours = seed_fourier_transform(PlaceType.COMPLEX, w, a, loose_spec)
    np.testing.assert_allclose(ours.real, expected, rtol=1e-6)


def test_seed_transform_needs_integrable_seed():
    with pytest.raises(DomainError):
        seed_fourier_transform(PlaceType.REAL, 1.0, 0.5)


@pytest.mark.slow
@pytest.mark.parametrize("place", [PlaceType.REAL, PlaceType.COMPLEX])
def test_mellin_identity(place, loose_spec):
    check = mellin_identity_check(place, 0.6, 1.2, 2.5, loose_spec)
    assert check.relative_gap < 1e-6
    assert check.place_type == place


@pytest.mark.slow
def test_mellin_identity_near_seed_boundary(loose_spec):
    check = mellin_identity_check(PlaceType.REAL, 0.5, 1.0, 1.05, loose_spec)
    assert check.relative_gap < 1e-4
    assert math.isfinite(abs(check.lhs))


@pytest.mark.slow
def test_mellin_identity_reflection(loose_spec):
    s, v, w = 0.35, 1.2, 2.5
    left = mellin_identity_check(PlaceType.REAL, s, v, w, loose_spec)
    right = mellin_identity_check(PlaceType.REAL, 1 - s, v, w, loose_spec)
    kernel_left = left.lhs * whittaker_normalizer(PlaceType.REAL, s)
    kernel_right = right.lhs * whittaker_normalizer(PlaceType.REAL, 1 - s)
    assert kernel_left == pytest.approx(kernel_right, rel=1e-6)
    assert kernel_left == pytest.approx(g_real(s, v, w), rel=1e-6)


def test_mellin_identity_rejects_divergent_strip():
    with pytest.raises(DomainError):
        mellin_identity_check(PlaceType.REAL, 2.5, 0.5, 2.5)

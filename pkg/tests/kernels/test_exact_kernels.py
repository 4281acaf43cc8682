import math

import mpmath
import pytest

from momentlab_engine.core import DomainError, SlowDecayWarning
from momentlab_engine.fields import PlaceType
from momentlab_engine.kernels import (
    LocalCharacterParams,
    MeasureConvention,
    SpectralParams,
    complex_place_profile,
    estimate_real_place_constant,
    k_asym_main,
    k_exact_complex,
    k_exact_real,
    real_place_constant,
)


def _hankel_oracle(rho, t_shift, ell, mu):
    # int_0^inf x^{-lam} K_m(a x) J_n(b x) dx in closed form, lam = -2iT, m = 2i mu, a = 4 pi, b = 4 pi rho
    lam = mpmath.mpc(0, -2 * t_shift)
    m = mpmath.mpc(0, 2 * mu)
    n = ell
    a, b = 4 * mpmath.pi, 4 * mpmath.pi * rho
    p, q = (n - lam + m + 1) / 2, (n - lam - m + 1) / 2
    prefactor = b**n * mpmath.gamma(p) * mpmath.gamma(q) / (2 ** (lam + 1) * a ** (n - lam + 1) * mpmath.gamma(1 + n))
    return complex(prefactor * mpmath.hyp2f1(p, q, n + 1, -(b**2) / a**2))


@pytest.mark.slow
@pytest.mark.parametrize("ell", [0, 2])
def test_profile_matches_hypergeometric_closed_form(ell):
    rho = [0.3, 1.0, 2.5]
    ours = complex_place_profile(rho, 3.0, ell, 0.1)
    for r, value in zip(rho, ours):
        expected = _hankel_oracle(r, 3.0, ell, 0.1)
        assert abs(value - expected) <= 1e-9 + 1e-6 * abs(expected)


def test_profile_rejects_negative_radius():
    with pytest.raises(DomainError):
        complex_place_profile([-1.0], 1.0, 0, 0.1)


@pytest.mark.slow
@pytest.mark.parametrize("ell, t_nu", [(0, 0.0), (3, 0.5)])
def test_complex_kernel_is_real_and_nonnegative(ell, t_nu, loose_spec):
    result = k_exact_complex(2.0, 2.0, LocalCharacterParams(t_nu=t_nu, ell_nu=ell), 0.1, loose_spec)
    magnitude = abs(result.value)
    assert magnitude > 0
    assert abs(result.value.imag) < 1e-8 * magnitude
    assert result.value.real >= -1e-8 * magnitude
    assert result.evaluations > 0


@pytest.mark.slow
def test_complex_kernel_even_in_ell(loose_spec):
    mu = SpectralParams.diagonal(0.1)
    plus = k_exact_complex(1.5, 2.0, LocalCharacterParams(ell_nu=2), mu, loose_spec).value
    minus = k_exact_complex(1.5, 2.0, LocalCharacterParams(ell_nu=-2), mu, loose_spec).value
    assert plus == pytest.approx(minus, rel=1e-12)


@pytest.mark.slow
def test_complex_kernel_approaches_main_term(loose_spec):
    chi = LocalCharacterParams()
    mu = SpectralParams.diagonal(0.1)
    deviations = {}
    for t in (5.0, 10.0, 20.0):
        exact = k_exact_complex(t, 2.0, chi, mu, loose_spec).value
        main = k_asym_main(PlaceType.COMPLEX, t, 0, 2.0, chi, mu, convention=MeasureConvention.INTEGRAL).value
        deviations[t] = abs(exact / main - 1)
    assert deviations[10.0] < 0.15
    assert deviations[20.0] < 0.10
    assert deviations[20.0] <= deviations[10.0] <= deviations[5.0]


def test_complex_kernel_rejects_nonpositive_w():
    with pytest.raises(DomainError):
        k_exact_complex(1.0, 0.0, LocalCharacterParams(), 0.1)


def test_mixed_spectral_parameters_rejected():
    with pytest.raises(DomainError):
        k_exact_complex(1.0, 2.0, LocalCharacterParams(), SpectralParams(mu1=0.1, mu2=0.2))


@pytest.mark.slow
def test_real_kernel_warns_on_slow_decay(loose_spec):
    with pytest.warns(SlowDecayWarning):
        result = k_exact_real(0.5, 0.9, LocalCharacterParams(), 0.1, loose_spec)
    assert result.value.real > 0


@pytest.mark.slow
def test_real_kernel_ratio_tends_to_constant(loose_spec):
    limit = real_place_constant(2.0, 0.1).real
    (ratio,) = estimate_real_place_constant(2.0, 0.1, [40.0], loose_spec)
    assert ratio == pytest.approx(limit, rel=0.2)
    assert math.isfinite(ratio)

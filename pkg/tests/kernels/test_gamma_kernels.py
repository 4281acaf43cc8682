import math

import mpmath
import numpy as np
import pytest
from scipy import integrate

from momentlab_engine.core import PoleError
from momentlab_engine.fields import PlaceType
from momentlab_engine.kernels import (
    LocalCharacterParams,
    MeasureConvention,
    SpectralParams,
    a_complex,
    g_complex,
    g_real,
    k_asym_main,
    q_scalar,
    r_eisenstein,
    real_place_constant,
)
from momentlab_engine.numerics import gamma


def _random_points(rng, n):
    s = rng.uniform(0.1, 0.9, n) + 1j * rng.uniform(-5, 5, n)
    v = rng.uniform(1.0, 3.0, n) + 1j * rng.uniform(-1, 1, n)
    w = rng.uniform(1.5, 4.0, n) + 1j * rng.uniform(-1, 1, n)
    return zip(s, v, w)


def test_g_real_closed_form():
    assert g_real(0.5, 1, 2) == pytest.approx(math.pi / 8, rel=1e-12)


def test_g_complex_closed_form():
    assert g_complex(0.5, 1, 2) == pytest.approx(3 / 512, rel=1e-12)


@pytest.mark.parametrize("kernel", [g_real, g_complex])
def test_kernels_symmetric_in_s(kernel, rng):
    for s, v, w in _random_points(rng, 100):
        value = kernel(s, v, w)
        assert abs(kernel(1 - s, v, w) - value) <= 1e-10 * abs(value)


@pytest.mark.parametrize("kernel", [g_real, g_complex])
def test_kernels_commute_with_conjugation(kernel):
    s, v, w = 0.3 + 1.2j, 1.4 - 0.5j, 2.2 + 0.3j
    conj = kernel(s.conjugate(), v.conjugate(), w.conjugate())
    assert conj == pytest.approx(kernel(s, v, w).conjugate(), rel=1e-12)


def test_g_real_against_mpmath():
    s, v, w = 0.7 + 2j, 1.3, 2.5 - 0.4j
    expected = mpmath.pi ** (-v) * (
        mpmath.gamma((v + 1 - s) / 2) * mpmath.gamma((v + w - s) / 2)
        * mpmath.gamma((v + s) / 2) * mpmath.gamma((v + w + s - 1) / 2)
        / (mpmath.gamma(w / 2) * mpmath.gamma(v + w / 2))
    )
    assert g_real(s, v, w) == pytest.approx(complex(expected), rel=1e-11)


def test_kernel_pole_names_the_factor():
    with pytest.raises(PoleError) as excinfo:
        g_real(0.5, -0.5, 3.0)
    assert excinfo.value.factor.startswith("g_real: Gamma(")
    with pytest.raises(PoleError):
        g_complex(2.0, 0.0, 2.0)


def test_a_complex_trivial_point():
    assert a_complex(0, 1, SpectralParams()) == pytest.approx(1.0, rel=1e-14)


def test_a_complex_against_mpmath():
    mu = SpectralParams(mu1=0.1, mu2=0.1)
    expected = 2**4 * mpmath.gamma(2 + 0.2j) * mpmath.gamma(2) ** 2 * mpmath.gamma(2 - 0.2j) / mpmath.gamma(4)
    assert a_complex(0, 2, mu) == pytest.approx(complex(expected), rel=1e-10)


def test_a_complex_symmetric_in_mu1():
    w = 2.3 + 0.1j
    left = a_complex(0.2, w, SpectralParams(mu1=0.3 + 0.05j, mu2=0.7))
    right = a_complex(0.2, w, SpectralParams(mu1=-0.3 - 0.05j, mu2=0.7))
    assert left == pytest.approx(right, rel=1e-12)


def test_a_complex_vectorised():
    mu = SpectralParams.diagonal(0.25)
    ws = np.array([1.5, 2.0 + 1j, 3.5])
    values = a_complex(0, ws, mu)
    assert values.shape == (3,)
    for w, value in zip(ws, values):
        assert value == pytest.approx(a_complex(0, complex(w), mu), rel=1e-14)


def test_complex_main_term_at_origin():
    chi = LocalCharacterParams(t_nu=2.5, ell_nu=0)
    main = k_asym_main(PlaceType.COMPLEX, -2.5, 0, 1, chi, SpectralParams())
    assert main.value == pytest.approx(math.pi, rel=1e-13)
    assert not main.constant_normalized


def test_complex_main_term_power_decay():
    chi = LocalCharacterParams()
    mu = SpectralParams.diagonal(0.1)
    near = k_asym_main(PlaceType.COMPLEX, 1000.0, 0, 1.5, chi, mu).value
    far = k_asym_main(PlaceType.COMPLEX, 2000.0, 0, 1.5, chi, mu).value
    assert far / near == pytest.approx(2 ** (-3.0), rel=1e-5)


def test_integral_convention_rescales_by_four_to_minus_w():
    chi = LocalCharacterParams(t_nu=0.3, ell_nu=2)
    mu = SpectralParams.diagonal(0.1)
    shown = k_asym_main(PlaceType.COMPLEX, 4.0, 0, 2.5, chi, mu)
    integral = k_asym_main(PlaceType.COMPLEX, 4.0, 0, 2.5, chi, mu, convention=MeasureConvention.INTEGRAL)
    assert integral.value == pytest.approx(shown.value * 4 ** (-2.5), rel=1e-14)
    assert integral.convention == MeasureConvention.INTEGRAL


def test_real_main_term_is_normalised():
    chi = LocalCharacterParams(t_nu=1.0)
    main = k_asym_main(PlaceType.REAL, 2.0, 0.5, 2, chi, SpectralParams())
    assert main.value == pytest.approx(1 / 16, rel=1e-14)
    assert main.constant_normalized


def test_r_eisenstein_rational_matches_quadrature(field_q):
    value = r_eisenstein(field_q, 3)
    oracle, _ = integrate.quad(lambda x: (1 + x * x) ** -1.5, -np.inf, np.inf)
    assert value == pytest.approx(2.0, rel=1e-12)
    assert value == pytest.approx(oracle, rel=1e-8)


def test_r_eisenstein_gaussian(field_qi):
    assert r_eisenstein(field_qi, 2) == pytest.approx(2 * math.pi, rel=1e-14)


@pytest.mark.parametrize("name, limit", [("field_q", 2.0), ("field_qi", 2 * math.pi), ("field_qsqrt2", 4.0)])
def test_r_eisenstein_pole_order(name, limit, request):
    field = request.getfixturevalue(name)
    order = field.r1 + field.r2
    for k in (5, 7):
        eps = 10.0**-k
        assert eps**order * r_eisenstein(field, 1 + eps) == pytest.approx(limit, rel=10 * eps)


def test_r_eisenstein_pole(field_q):
    with pytest.raises(PoleError):
        r_eisenstein(field_q, 1)


def test_q_scalar_rational(field_q):
    assert q_scalar(field_q, 0.5, 1, 2) == pytest.approx(math.pi / 8, rel=1e-12)


@pytest.mark.parametrize("name", ["field_q", "field_qsqrt2"])
def test_q_scalar_reflection(name, request):
    field = request.getfixturevalue(name)
    s, v, w = 0.3 + 0.8j, 1.5, 2.5

    def completed(x):
        return q_scalar(field, x, v, w) * (math.pi ** (-x) * gamma(x)) ** field.r1

    assert completed(s) == pytest.approx(completed(1 - s), rel=1e-11)


def test_q_scalar_unfolds_at_complex_place(field_qi):
    s, v, w = 0.7, 0.3, 2.0
    expected = g_complex(s, v, w) * (2 * math.pi) ** (2 * s + 1) / gamma(2 * s)
    assert q_scalar(field_qi, s, v, w) == pytest.approx(expected, rel=1e-12)


def test_real_place_constant_closed_form():
    # Gamma(3/2)^4 / (pi Gamma(3)) = pi / 32
    assert real_place_constant(2, 0) == pytest.approx(math.pi / 32, rel=1e-13)
    assert abs(real_place_constant(2, 0.1).imag) < 1e-12

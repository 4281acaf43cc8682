import numpy as np
import pytest

from momentlab_engine.core import reset_config_cache
from momentlab_engine.fields import builtin_field
from momentlab_engine.numerics import QuadratureSpec


@pytest.fixture(autouse=True)
def _fresh_config():
    reset_config_cache()
    yield
    reset_config_cache()


@pytest.fixture
def quad_spec() -> QuadratureSpec:
    return QuadratureSpec(rel_tol=1e-10, abs_tol=1e-14, max_subdivisions=14)


@pytest.fixture
def loose_spec() -> QuadratureSpec:
    return QuadratureSpec(rel_tol=1e-7, abs_tol=1e-12, max_subdivisions=12)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240607)


@pytest.fixture
def field_q():
    return builtin_field("Q")


@pytest.fixture
def field_qi():
    return builtin_field("Q_i")


@pytest.fixture
def field_qsqrt2():
    return builtin_field("Q_sqrt2")

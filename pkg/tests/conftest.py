from __future__ import annotations

import math

import pytest

from bivar import (
    Interval,
    RefineConfig,
    estimate_variation,
    euclidean_modulus,
    modulus_product,
    parse_constant_vector,
    resolve_function,
    vec,
)

SQRT2 = math.sqrt(2.0)
SQRT5 = math.sqrt(5.0)

# configuration used by acceptance criterion 8: dyadic refinement that
# converges exactly at the oracle's 2^22-interval uniform grid
ORACLE_MATCH_CFG = RefineConfig(gain_tol=1e-4, max_points=2 ** 22 + 1, strategy="dyadic")


@pytest.fixture(scope="session")
def euclid():
    return euclidean_modulus()


@pytest.fixture(scope="session")
def modprod():
    return modulus_product()


@pytest.fixture(scope="session")
def k_sqrt2():
    return parse_constant_vector("sqrt(2)")


@pytest.fixture(scope="session")
def k_one():
    return vec(1)


@pytest.fixture(scope="session")
def linear_ii():
    return resolve_function("linear_ii")


@pytest.fixture(scope="session")
def x2sin_big_estimate(modprod, k_one):
    """The expensive dyadic run shared by acceptance criteria 8 and 9."""
    spec = resolve_function("x2sin_inv_x", domain=Interval(0.0, 1.0))
    return estimate_variation(spec, modprod, k_one, ORACLE_MATCH_CFG)

from __future__ import annotations

import numpy as np
import pytest

from cubicpoints import (
    DEFAULT_TOLERANCES,
    fermat_cubic,
    inflection_points,
    make_chart,
)


@pytest.fixture(scope="session")
def fermat():
    return fermat_cubic()


@pytest.fixture(scope="session")
def fermat_flexes(fermat):
    return inflection_points(fermat)


@pytest.fixture(scope="session")
def fermat_chart(fermat, fermat_flexes):
    # identity = the canonical first inflection, shared across tests
    return make_chart(fermat, fermat_flexes.sorted_canonical().points[0])


@pytest.fixture
def rng():
    return np.random.default_rng(20240923)


@pytest.fixture
def tol():
    return DEFAULT_TOLERANCES

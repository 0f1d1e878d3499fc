import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from hermq2 import kernels  # noqa: E402
from hermq2.hermitian import generator_set  # noqa: E402
from hermq2.lattice import EISENSTEIN, GAUSS  # noqa: E402
from hermq2.siegel import siegel_generators  # noqa: E402


@pytest.fixture(params=["gauss", "eisenstein"])
def field(request):
    return GAUSS if request.param == "gauss" else EISENSTEIN


@pytest.fixture
def gens6(field):
    return generator_set(field, 6)


@pytest.fixture(scope="session")
def sgens():
    return siegel_generators(8)


@pytest.fixture(params=["python", "cython"])
def backend(request):
    before = kernels.BACKEND
    try:
        kernels.use_backend(request.param)
    except ImportError:
        pytest.skip("compiled kernels not built")
    yield request.param
    kernels.use_backend(before)

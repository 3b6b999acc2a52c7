import warnings

import pytest

from pfcurv import NonWellCenteredWarning, perturb_lengths
from pfcurv.meshgen import gen_boundary_of_simplex, gen_flat_grid, gen_icosphere


@pytest.fixture(scope="session")
def ico():
    return gen_icosphere(0)


@pytest.fixture(scope="session")
def icospheres():
    return {level: gen_icosphere(level) for level in range(4)}


@pytest.fixture(scope="session")
def tet_boundary():
    return gen_boundary_of_simplex(3)


@pytest.fixture(scope="session")
def cell5():
    # boundary of the 4-simplex: the closed 3-manifold with 5 tetrahedra
    return gen_boundary_of_simplex(4)


@pytest.fixture(scope="session")
def simplex5_boundary():
    return gen_boundary_of_simplex(5)


@pytest.fixture(scope="session")
def grid2():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NonWellCenteredWarning)
        return gen_flat_grid(2, 3)


@pytest.fixture(scope="session")
def grid3():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NonWellCenteredWarning)
        return gen_flat_grid(3, 3)


@pytest.fixture(scope="session")
def perturbed_grid(grid3):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NonWellCenteredWarning)
        return perturb_lengths(grid3, 0.05, seed=0)

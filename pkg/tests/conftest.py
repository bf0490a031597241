import pytest

from hexcc import code as code_mod
from hexcc import davies, lattice


@pytest.fixture(scope="session")
def minimal_code():
    return code_mod.build_code(lattice.build_hex_torus(3))


@pytest.fixture(scope="session")
def code_n6():
    return code_mod.build_code(lattice.build_hex_torus(6))


@pytest.fixture(scope="session")
def flat_density():
    return davies.SpectralDensity()


@pytest.fixture(scope="session")
def generator_beta1(minimal_code, flat_density):
    return davies.build_lindbladian(minimal_code, 1.0, flat_density)


@pytest.fixture(scope="session")
def oracle_beta1(minimal_code, generator_beta1, flat_density):
    from hexcc import dense

    return dense.DenseOracle(
        generator_beta1.model, generator_beta1.couplings, 1.0, flat_density
    )

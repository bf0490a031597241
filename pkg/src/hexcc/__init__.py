"""Hexagonal color code on a torus: exact Davies generator, spectral gaps,
and thermal-instability checks."""

from .pauli import PauliOperator
from .lattice import ColexLattice, build_hex_torus, minimal_fixture
from .code import StabilizerCode, build_code
from .davies import (
    DaviesGenerator,
    GapResult,
    JumpComponent,
    LindbladBlock,
    SpectralDensity,
    WalshBlock,
    build_lindbladian,
    gap_result,
    sector_minimum_iterative,
    theorem_check,
)
from .ising import IsingChain, build_inhomogeneous, davies_gap

__version__ = "0.1.0"

__all__ = [
    "PauliOperator",
    "ColexLattice",
    "build_hex_torus",
    "minimal_fixture",
    "StabilizerCode",
    "build_code",
    "DaviesGenerator",
    "GapResult",
    "JumpComponent",
    "LindbladBlock",
    "SpectralDensity",
    "WalshBlock",
    "build_lindbladian",
    "gap_result",
    "sector_minimum_iterative",
    "theorem_check",
    "IsingChain",
    "build_inhomogeneous",
    "davies_gap",
    "__version__",
]

"""Inhomogeneous 1D Ising chain: the comparison model whose Davies gap forms
the right-hand side of the instability bound.

The chain H = -J sum_odd s_z s_z - 2J sum_even s_z s_z reproduces the
excitation bookkeeping of a color-code string: flipping a spin adjacent to
one single- and one double-weight bond releases or costs 2J and 4J, matching
the three-plaquette processes at +-2J and +-6J.  The bath couples through
sigma_x on every site; the machinery is the same coset-block engine as for
the color code, with bond operators in place of plaquettes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .davies import Coupling, DaviesGenerator, SpectralDensity, block_spectra, gap_from_spectra
from .pauli import PauliOperator, hermitian_from_pattern
from .thermal import CommutingModel


@dataclass(frozen=True)
class IsingChain:
    length: int
    couplings: tuple
    boundary: str = "open"

    @property
    def n_bonds(self) -> int:
        return len(self.couplings)


def build_inhomogeneous(length: int, j: float = 1.0, boundary: str = "open") -> IsingChain:
    """Chain with couplings alternating J, 2J starting from J.

    The open chain matches the string geometry (used for the matched-length
    bound); the periodic chain has no boundary nucleation channel and shows
    the size-independent bulk gap already at small lengths."""
    if length < 2:
        raise ValueError("chain needs at least 2 spins")
    if boundary not in ("open", "periodic"):
        raise ValueError("boundary must be 'open' or 'periodic'")
    n_bonds = length - 1 if boundary == "open" else length
    if boundary == "periodic" and length % 2:
        raise ValueError("periodic alternating chain needs an even length")
    couplings = tuple(j if k % 2 == 1 else 2.0 * j for k in range(1, n_bonds + 1))
    return IsingChain(length=length, couplings=couplings, boundary=boundary)


def build_homogeneous(length: int, j: float = 1.0, boundary: str = "open") -> IsingChain:
    if length < 2:
        raise ValueError("chain needs at least 2 spins")
    n_bonds = length - 1 if boundary == "open" else length
    return IsingChain(length=length, couplings=(j,) * n_bonds, boundary=boundary)


def chain_model(chain: IsingChain) -> CommutingModel:
    n = chain.length
    terms = []
    for k in range(chain.n_bonds):
        a, b = k, (k + 1) % n
        terms.append(PauliOperator.from_support(n, "z", (a, b)))
    return CommutingModel(n, terms, chain.couplings)


def chain_couplings(chain: IsingChain):
    """sigma_x on every site; each flips the adjacent bond eigenvalues."""
    n = chain.length
    out = []
    for i in range(n):
        if chain.boundary == "open":
            adj = tuple(k for k in (i - 1, i) if 0 <= k < chain.n_bonds)
        else:
            adj = tuple(sorted({(i - 1) % n, i % n}))
        out.append(Coupling(label=("x", i), sigma=PauliOperator.sigma_x(n, i), flipped=adj))
    return out


def davies_generator(chain: IsingChain, beta, density=SpectralDensity()) -> DaviesGenerator:
    return DaviesGenerator(chain_model(chain), chain_couplings(chain), beta, density)


def _class_representatives(chain: IsingChain):
    """One coset representative per distinct block spectrum.

    The block matrix depends on the x-pattern only through the bond
    commutation bits c_k = a_k xor a_(k+1) and on the z-pattern only modulo
    even-weight shifts, so (c, z-parity) classifies the spectra; each class
    stands for two cosets (a and its global flip).  On the periodic chain,
    translation by two sites preserves the coupling pattern, so classes are
    further deduplicated by rotating c to a canonical position."""
    n = chain.length
    keys = set()
    for par in range(2):
        for cbits in range(2 ** (n - 1)):
            if chain.boundary == "periodic":
                # close the cyclic difference pattern and canonicalize
                full = cbits | (_xor_bits(cbits) << (n - 1))
                canon = min(_rotate_bits(full, 2 * k, n) for k in range(n // 2))
                keys.add((par, "p", canon))
            else:
                keys.add((par, "o", cbits))
    reps = []
    for par, kind, cbits in sorted(keys):
        a = np.zeros(n, dtype=np.uint8)
        for k in range(n - 1):
            a[k + 1] = a[k] ^ ((cbits >> k) & 1)
        b = np.zeros(n, dtype=np.uint8)
        b[0] = par
        reps.append(hermitian_from_pattern(np.concatenate([a, b])))
    return reps


def _xor_bits(v: int) -> int:
    out = 0
    while v:
        out ^= v & 1
        v >>= 1
    return out


def _rotate_bits(v: int, k: int, n: int) -> int:
    k %= n
    mask = (1 << n) - 1
    return ((v >> k) | (v << (n - k))) & mask


def all_coset_representatives(chain: IsingChain):
    gen = davies_generator(chain, 1.0)
    return gen.coset_representatives()


def davies_gap(chain: IsingChain, beta, density=SpectralDensity(), kernel_tol=1e-9,
               jobs=1, dedupe=True) -> float:
    """Global gap of -L for the chain: smallest nonzero generalized
    eigenvalue over every invariant coset (kernel excluded; the chain kernel
    contains both the identity and the global spin flip)."""
    gen = davies_generator(chain, beta, density)
    reps = _class_representatives(chain) if dedupe else gen.coset_representatives()
    value, _ = gap_from_spectra(block_spectra(gen, reps, jobs), kernel_tol)
    return value


def matched_chain_length(n_plaquettes: int) -> int:
    """Chain length matched to a color-code run: the plaquettes-per-color
    count, floored at the single-bond chain for the minimal lattice."""
    return max(2, n_plaquettes // 3)


def single_bond_gap(beta, density=SpectralDensity(), j: float = 1.0) -> float:
    """Closed form for the L = 2 chain under the fixed normalization: the
    slow mode is the symmetric magnetization combination with rate
    2 h(2J) e^(-2 beta J)."""
    return 2.0 * density.h(2.0 * j) * math.exp(-2.0 * beta * j)


def gap_scan(lengths, beta, density=SpectralDensity(), j=1.0, kernel_tol=1e-9,
             jobs=1, homogeneous=False, boundary="open"):
    """(L, beta, gap) rows for the size-constancy scan."""
    rows = []
    for length in lengths:
        chain = (
            build_homogeneous(length, j=j, boundary=boundary)
            if homogeneous
            else build_inhomogeneous(length, j=j, boundary=boundary)
        )
        rows.append((length, beta, davies_gap(chain, beta, density, kernel_tol, jobs=jobs)))
    return rows

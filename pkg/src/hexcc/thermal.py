"""Thermal expectations for commuting-Pauli Hamiltonians.

Everything here works for H = -sum_k J_k T_k with the T_k commuting Hermitian
Paulis squaring to +1 (plaquette operators, Ising bonds).  A maximal
independent subset of the T_k fixes GF(2) coordinates; the realizable joint
eigenvalue patterns are exactly the free configurations of the independent
generators, so Gibbs expectations of arbitrary products reduce to a
Walsh-Hadamard transform of the 2^rank Boltzmann weight vector.  That also
yields the thermal Gram matrix <P g_v, P g_w> = E[g_(v xor w)] of a coset
block in closed form.
"""

from __future__ import annotations

import numpy as np

from . import gf2
from .pauli import PauliOperator, product


def fwht(vec):
    """In-place-free Walsh-Hadamard transform (no normalization)."""
    a = np.array(vec, dtype=float)
    h = 1
    n = a.size
    while h < n:
        a = a.reshape(-1, 2 * h)
        left = a[:, :h].copy()
        right = a[:, h:].copy()
        a[:, :h] = left + right
        a[:, h:] = left - right
        a = a.ravel()
        h *= 2
    return a


class CommutingModel:
    """A commuting-term Hamiltonian with its GF(2) and thermal structure."""

    def __init__(self, n, terms, coeffs):
        self.n = int(n)
        self.terms = list(terms)
        self.coeffs = np.asarray(coeffs, dtype=float)
        if len(self.terms) != self.coeffs.size:
            raise ValueError("one coefficient per term required")
        for t in self.terms:
            if not t.is_hermitian():
                raise ValueError("terms must be Hermitian")
        patterns = np.array([t.pattern() for t in self.terms])
        self.independent = gf2.row_basis(patterns)
        self.solver = gf2.Solver(patterns[self.independent])
        self.rank = len(self.independent)
        self.generators = [self.terms[i] for i in self.independent]
        # term_coords[k] = bitmask of term k over the independent generators;
        # term_signs[k] relates the term to the canonical generator product.
        self.term_coords = np.zeros(len(self.terms), dtype=np.int64)
        self.term_signs = np.ones(len(self.terms))
        for k, t in enumerate(self.terms):
            mask, sign = self.coords_and_sign(t)
            self.term_coords[k] = mask
            self.term_signs[k] = sign
        self._evec_cache = {}

    # -- GF(2) bookkeeping ---------------------------------------------------

    def group_element(self, mask: int) -> PauliOperator:
        """Canonical product of independent generators selected by mask bits.

        Generators commute, are Hermitian and square to +1, so this product
        is well defined regardless of ordering and g(a)g(b) = g(a xor b)."""
        ops = [g for i, g in enumerate(self.generators) if (mask >> i) & 1]
        return product(ops, n=self.n)

    def coords_and_sign(self, op: PauliOperator):
        """(mask, sign) with op = sign * group_element(mask); None if the
        pattern lies outside the group span."""
        coords = self.solver.solve(op.pattern())
        if coords is None:
            return None
        mask = int(sum(1 << i for i, b in enumerate(coords) if b))
        check = op.multiply(self.group_element(mask))
        if check.x.any() or check.z.any():
            raise AssertionError("coordinate solve returned a wrong pattern")
        if check.phase == 0:
            return mask, 1.0
        if check.phase == 2:
            return mask, -1.0
        raise AssertionError("group element with imaginary phase")

    # -- thermal structure ----------------------------------------------------

    def syndrome_energies(self):
        """Energy of every joint eigenvalue configuration of the independent
        generators (free by construction), indexed by generator bitmask."""
        m = self.rank
        v = np.arange(2**m, dtype=np.int64)
        energies = np.zeros(2**m)
        for k in range(len(self.terms)):
            overlap = _parity(v & self.term_coords[k])
            eig = self.term_signs[k] * (1 - 2 * overlap)
            energies -= self.coeffs[k] * eig
        return energies

    def expectation_vector(self, beta: float) -> np.ndarray:
        """E[g_mask] for every group element mask, at inverse temperature beta."""
        key = float(beta)
        if key not in self._evec_cache:
            energies = self.syndrome_energies()
            w = np.exp(-beta * (energies - energies.min()))
            e = fwht(w)
            self._evec_cache[key] = e / e[0]
        return self._evec_cache[key]

    def expectation(self, op: PauliOperator, beta: float) -> float:
        """tr(rho_beta * op) for op in the (signed) group algebra; 0 if the
        pattern is outside the group span; raises for imaginary phases."""
        cs = self.coords_and_sign(op)
        if cs is None:
            # rho is block-diagonal and maximally mixed within each joint
            # eigenspace, so any Pauli outside the group span is traceless
            return 0.0
        mask, sign = cs
        return sign * float(self.expectation_vector(beta)[mask])

    def gram(self, beta: float) -> np.ndarray:
        """Thermal Gram matrix of a coset block basis {P g_v}: entry (v, w)
        equals E[g_(v xor w)] independently of the representative P."""
        e = self.expectation_vector(beta)
        idx = np.arange(2**self.rank, dtype=np.int64)
        return e[idx[:, None] ^ idx[None, :]]

    def ground_energy(self) -> float:
        return float(self.syndrome_energies().min())


def _parity(arr):
    """Bitwise parity of each entry of an integer array."""
    a = np.asarray(arr, dtype=np.int64).copy()
    out = np.zeros(a.shape, dtype=np.int64)
    while a.any():
        out ^= a & 1
        a >>= 1
    return out


def thermal_inner_product(model: CommutingModel, beta: float, x, y) -> complex:
    """Liouville scalar product tr(rho_beta X^dagger Y).

    X and Y may be PauliOperators or {PauliOperator: coefficient} mappings.
    The value is real whenever X^dagger Y is a real combination of group
    elements (always the case for the coset-block bases used here).
    """
    xs = x if isinstance(x, dict) else {x: 1.0}
    ys = y if isinstance(y, dict) else {y: 1.0}
    total = 0.0 + 0.0j
    for px, cx in xs.items():
        for py, cy in ys.items():
            prod = px.adjoint().multiply(py)
            phase = 1j**prod.phase
            bare = PauliOperator(prod.n, x=prod.x, z=prod.z, phase=0)
            # split the exact phase off a phase-free pattern; expectation of
            # the pattern may pick up its own sign through coords_and_sign
            total += np.conj(cx) * cy * phase * model.expectation(bare, beta)
    return complex(total)

"""Dense reference implementation of the Davies generator by explicit
Hamiltonian eigenprojectors.  Test oracle only: no coset structure is used
anywhere, everything is assembled verbatim from the definitions on the full
2^n-dimensional Hilbert space.
"""

from __future__ import annotations

import math

import numpy as np

from .davies import SpectralDensity
from .thermal import CommutingModel

MAX_QUBITS = 8
MAX_SUPEROP_QUBITS = 6


class DenseOracle:
    """Dense H, eigenprojectors, Fourier components and Eq.-by-eq generator
    assembly for a commuting-term model with given bath couplings."""

    def __init__(self, model: CommutingModel, couplings, beta, density: SpectralDensity):
        if model.n > MAX_QUBITS:
            raise ValueError(f"dense oracle limited to {MAX_QUBITS} qubits, got {model.n}")
        self.model = model
        self.couplings = list(couplings)
        self.beta = float(beta)
        self.density = density
        self.dim = 2**model.n

        h = np.zeros((self.dim, self.dim))
        for coeff, term in zip(model.coeffs, model.terms):
            h -= coeff * term.dense().real
        self.hamiltonian = h
        evals, vecs = np.linalg.eigh(h)
        self.energies, self.projectors = self._cluster(evals, vecs)

        w = np.exp(-self.beta * (evals - evals.min()))
        rho = (vecs * w) @ vecs.T
        self.rho = rho / np.trace(rho)

        # S_alpha(omega) for every Bohr frequency, positive and negative
        self.jumps = []
        for c in self.couplings:
            s = c.sigma.dense().real
            by_omega = {}
            for ei, pi in zip(self.energies, self.projectors):
                for ej, pj in zip(self.energies, self.projectors):
                    omega = ei - ej  # maps energy ei to ej = ei - omega
                    mat = pj @ s @ pi
                    if np.max(np.abs(mat)) < 1e-13:
                        continue
                    key = round(float(omega), 9)
                    by_omega[key] = by_omega.get(key, 0.0) + mat
            self.jumps.append(by_omega)

    @staticmethod
    def _cluster(evals, vecs, tol=1e-9):
        energies = []
        projectors = []
        i = 0
        while i < evals.size:
            j = i
            while j + 1 < evals.size and evals[j + 1] - evals[i] < tol:
                j += 1
            cols = vecs[:, i : j + 1]
            energies.append(float(np.mean(evals[i : j + 1])))
            projectors.append(cols @ cols.T)
            i = j + 1
        return energies, projectors

    # -- generator -----------------------------------------------------------

    def apply(self, x: np.ndarray) -> np.ndarray:
        """L(X) assembled term by term from the weak-coupling form."""
        out = np.zeros_like(x, dtype=float)
        for by_omega in self.jumps:
            for omega, s in by_omega.items():
                if omega < -1e-12:
                    continue
                h = self.density.h(omega)
                u = math.exp(-self.beta * omega)
                sd = s.T  # real matrices: adjoint = transpose
                out += 0.5 * h * (
                    sd @ (x @ s - s @ x)
                    + (sd @ x - x @ sd) @ s
                    + u * (s @ (x @ sd - sd @ x))
                    + u * ((s @ x - x @ s) @ sd)
                )
        return out

    def matrix(self) -> np.ndarray:
        """Full superoperator matrix on column-stacked vec(X)."""
        if self.model.n > MAX_SUPEROP_QUBITS:
            raise ValueError("full superoperator limited to 6 qubits")
        d = self.dim
        eye = np.eye(d)
        lmat = np.zeros((d * d, d * d))
        for by_omega in self.jumps:
            for omega, s in by_omega.items():
                if omega < -1e-12:
                    continue
                h = self.density.h(omega)
                u = math.exp(-self.beta * omega)
                sd = s.T
                sds = sd @ s
                ssd = s @ sd
                lmat += 0.5 * h * (
                    2.0 * np.kron(s.T, sd)
                    - np.kron(eye, sds)
                    - np.kron(sds.T, eye)
                    + u * (
                        2.0 * np.kron(sd.T, s)
                        - np.kron(eye, ssd)
                        - np.kron(ssd.T, eye)
                    )
                )
        return lmat

    def gram_matrix(self) -> np.ndarray:
        """<X, Y>_beta = vec(X)^+ M vec(Y) with M = kron(rho^T, I)."""
        return np.kron(self.rho.T, np.eye(self.dim))

    # -- inner products and identities ----------------------------------------

    def inner(self, x, y) -> complex:
        return complex(np.trace(self.rho @ x.conj().T @ y))

    def block_matrix(self, basis_ops):
        """Matrix of -L in a basis of mutually orthogonal Paulis."""
        mats = [op.dense() for op in basis_ops]
        a = np.zeros((len(mats), len(mats)), dtype=complex)
        for v, xv in enumerate(mats):
            image = -self.apply(xv.real) + 1j * (-self.apply(xv.imag))
            for u, xu in enumerate(mats):
                a[u, v] = np.trace(xu.conj().T @ image) / self.dim
        if np.max(np.abs(a.imag)) > 1e-11:
            raise AssertionError("dense block matrix unexpectedly complex")
        return a.real

    def block_gram(self, basis_ops):
        mats = [op.dense() for op in basis_ops]
        g = np.zeros((len(mats), len(mats)), dtype=complex)
        for v, xv in enumerate(mats):
            for u, xu in enumerate(mats):
                g[u, v] = self.inner(xu, xv)
        if np.max(np.abs(g.imag)) > 1e-11:
            raise AssertionError("dense Gram unexpectedly complex")
        return g.real

    def negativity_identity_residual(self, x: np.ndarray) -> float:
        """Residual of -<X, L_aw(X)> = h/2 ( <[S,X],[S,X]> +
        e^(-bw) <[S+,X],[S+,X]> ) over every coupling and w >= 0."""
        worst = 0.0
        for by_omega in self.jumps:
            for omega, s in by_omega.items():
                if omega < -1e-12:
                    continue
                h = self.density.h(omega)
                u = math.exp(-self.beta * omega)
                sd = s.T
                lx = 0.5 * h * (
                    sd @ (x @ s - s @ x)
                    + (sd @ x - x @ sd) @ s
                    + u * (s @ (x @ sd - sd @ x))
                    + u * ((s @ x - x @ s) @ sd)
                )
                lhs = -self.inner(x, lx)
                c1 = s @ x - x @ s
                c2 = sd @ x - x @ sd
                rhs = 0.5 * h * (self.inner(c1, c1) + u * self.inner(c2, c2))
                worst = max(worst, abs(lhs - rhs))
        return worst

    def rho_commutation_residual(self) -> float:
        """Residual of rho S(w) = e^(beta w) S(w) rho over all components."""
        worst = 0.0
        for by_omega in self.jumps:
            for omega, s in by_omega.items():
                diff = self.rho @ s - math.exp(self.beta * omega) * s @ self.rho
                worst = max(worst, float(np.max(np.abs(diff))))
        return worst

    def jump_sum_residual(self) -> float:
        """Residual of sum_w S(w) = S over every coupling."""
        worst = 0.0
        for c, by_omega in zip(self.couplings, self.jumps):
            total = sum(by_omega.values())
            worst = max(worst, float(np.max(np.abs(total - c.sigma.dense().real))))
        return worst

    def adjoint_pairing_residual(self) -> float:
        """Residual of S(-w) = S(w)^+ component by component."""
        worst = 0.0
        for by_omega in self.jumps:
            for omega, s in by_omega.items():
                partner = by_omega.get(round(-omega, 9))
                if partner is None:
                    worst = max(worst, float(np.max(np.abs(s))))
                else:
                    worst = max(worst, float(np.max(np.abs(partner - s.T))))
        return worst

"""Davies-Lindblad generator in the Heisenberg picture, decomposed exactly
into invariant coset blocks.

For a commuting-term Hamiltonian H = -sum_k J_k T_k coupled to the bath
through site Paulis, every jump component is the site Pauli times a signed
polynomial in the few terms it anticommutes with (the local projector onto
the subspace with a fixed local excitation pattern).  Acting on a Pauli X,
the generator therefore only multiplies X by group elements of the term
group: the span of one coset X * <T_k> is invariant, and the generator
restricted to it is a small real matrix.  The decomposition is exact, not a
truncation; the union of the block spectra is the full spectrum of -L.

The generator (with the KMS factors folded in) is

  L(X) = sum_a sum_{w>=0} h_a(w)/2 * ( S+[X,S] + [S+,X]S
                                        + e^{-bw} (S[X,S+] + [S,X]S+) )

with S = S_a(w) the Fourier component of the coupling operator; rates at
negative frequencies follow from h(-w) = e^{-bw} h(w).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .thermal import CommutingModel, _parity
from .pauli import PauliOperator, hermitian_from_pattern, product
from . import gf2

DELTA_FACTOR = 6.0  # gap of the coupling spectrum in units of J


class GramConditionError(RuntimeError):
    """Thermal Gram matrix too ill-conditioned for the dense solver
    (beta too large for float precision)."""

    def __init__(self, cond):
        super().__init__(
            f"thermal Gram matrix condition number {cond:.3e} exceeds the "
            f"float64 budget; reduce beta or use higher precision"
        )
        self.cond = cond


@dataclass(frozen=True)
class SpectralDensity:
    """Bath spectral density h(w) for w >= 0, KMS-extended to w < 0.

    "flat" is h(w) = 1; "ohmic" is h(w) = w / (6 J), normalized to 1 at the
    dominant Bohr frequency.
    """

    kind: str = "flat"
    j: float = 1.0

    def h(self, omega: float) -> float:
        if omega < 0:
            raise ValueError("h is defined for omega >= 0; use h_signed")
        if self.kind == "flat":
            return 1.0
        if self.kind == "ohmic":
            return omega / (DELTA_FACTOR * self.j)
        raise ValueError(f"unknown spectral density {self.kind!r}")

    def h_signed(self, omega: float, beta: float) -> float:
        if omega >= 0:
            return self.h(omega)
        return math.exp(beta * omega) * self.h(-omega)


@dataclass(frozen=True)
class Coupling:
    """One bath coupling operator: a site Pauli and the Hamiltonian terms it
    anticommutes with (the terms whose eigenvalues it flips)."""

    label: tuple
    sigma: PauliOperator
    flipped: tuple


@dataclass(frozen=True)
class JumpComponent:
    """One Fourier component S(w) = sigma * Pi(w) of a coupling, with the
    local projector expanded as a signed combination of term products.

    coeffs[mask] multiplies the product of the flipped terms selected by the
    bits of mask; omega is the (nonnegative) Bohr frequency.
    """

    site: int
    err_type: str
    omega: float
    sigma: PauliOperator
    plaquettes: tuple
    operators: tuple
    coeffs: tuple

    def terms(self):
        """The component as a list of (coefficient, Pauli) pairs."""
        out = []
        for mask, c in enumerate(self.coeffs):
            if c == 0.0:
                continue
            ops = [self.operators[k] for k in range(len(self.operators)) if (mask >> k) & 1]
            out.append((c, product([self.sigma] + ops, n=self.sigma.n)))
        return out

    def adjoint(self) -> "JumpComponent":
        """S(w)^dagger = S(-w): conjugation by sigma flips odd products."""
        flipped = tuple(
            c * (-1.0 if bin(mask).count("1") % 2 else 1.0)
            for mask, c in enumerate(self.coeffs)
        )
        return JumpComponent(
            site=self.site,
            err_type=self.err_type,
            omega=-self.omega,
            sigma=self.sigma,
            plaquettes=self.plaquettes,
            operators=self.operators,
            coeffs=flipped,
        )


def _xor_convolve(a, b):
    out = np.zeros_like(a)
    for t, at in enumerate(a):
        if at != 0.0:
            for u, bu in enumerate(b):
                out[t ^ u] += at * bu
    return out


def _parity_flip(c):
    """Coefficients of sigma * Pi * sigma: negate odd-weight products."""
    return np.array(
        [v * (-1.0 if bin(mask).count("1") % 2 else 1.0) for mask, v in enumerate(c)]
    )


def _components_for(coeffs_flipped):
    """Group the 2^f local eigenvalue configurations by Bohr frequency.

    Returns {omega: coefficient vector over subset masks} for omega >= 0,
    where omega(b) = -2 sum_k J_k b_k is the energy released by the flip.
    """
    f = len(coeffs_flipped)
    comps = {}
    for bits in range(2**f):
        b = np.array([1.0 if (bits >> k) & 1 == 0 else -1.0 for k in range(f)])
        omega = -2.0 * float(np.dot(coeffs_flipped, b))
        if omega < -1e-12:
            continue
        key = round(omega, 9)
        vec = comps.setdefault(key, np.zeros(2**f))
        for mask in range(2**f):
            prod_b = 1.0
            for k in range(f):
                if (mask >> k) & 1:
                    prod_b *= b[k]
            vec[mask] += prod_b / 2**f
    return comps


class LindbladBlock:
    """-L restricted to one coset P * <terms>, with its thermal Gram matrix.

    ``matrix`` is the matrix of -L in the basis X_v = P * g_v over the group
    element masks v; ``gram`` holds <X_v, X_w> = E[g_(v xor w)].
    """

    def __init__(self, rep, matrix, gram, model, label=None, chol=None):
        self.rep = rep
        self.matrix = matrix
        self.gram = gram
        self.model = model
        self.label = label
        self._chol = chol
        self._eig = None
        self._lam = None

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def basis_element(self, v: int) -> PauliOperator:
        return self.rep.multiply(self.model.group_element(v))

    def basis(self):
        return [self.basis_element(v) for v in range(self.dim)]

    def selfadjoint_residual(self) -> float:
        m = self.gram @ self.matrix
        return float(np.max(np.abs(m - m.T)))

    def eigensystem(self):
        """Generalized symmetric eigensystem of -L on the block.

        Returns (lam, phi) with  matrix @ phi[:, k] = lam[k] phi[:, k]  and
        phi.T @ gram @ phi = I; lam ascending."""
        if self._eig is None:
            m = self.gram @ self.matrix
            sym = 0.5 * (m + m.T)
            if self._chol is None:
                lam, phi = scipy.linalg.eigh(sym, self.gram)
            else:
                c = self._chol
                k = scipy.linalg.solve_triangular(c, sym, lower=True)
                k = scipy.linalg.solve_triangular(c, k.T, lower=True).T
                lam, y = scipy.linalg.eigh(0.5 * (k + k.T))
                phi = scipy.linalg.solve_triangular(c.T, y, lower=False)
            self._eig = (lam, phi)
        return self._eig

    def eigenvalues(self):
        """Generalized eigenvalues only (cheaper than the full eigensystem)."""
        if self._eig is not None:
            return self._eig[0]
        if self._lam is None:
            m = self.gram @ self.matrix
            sym = 0.5 * (m + m.T)
            if self._chol is None:
                self._lam = scipy.linalg.eigh(sym, self.gram, eigvals_only=True)
            else:
                c = self._chol
                k = scipy.linalg.solve_triangular(c, sym, lower=True)
                k = scipy.linalg.solve_triangular(c, k.T, lower=True).T
                self._lam = np.linalg.eigvalsh(0.5 * (k + k.T))
        return self._lam

    def kernel_dim(self, tol=1e-9) -> int:
        return int(np.sum(self.eigenvalues() < tol))

    def min_nonzero(self, tol=1e-9):
        lam = self.eigenvalues()
        nz = lam[lam >= tol]
        return float(nz[0]) if nz.size else None


class WalshBlock:
    """-L on one coset in the whitened sector basis.

    The Walsh transform of the coset basis, Y_w = P * Pi_w with Pi_w the
    projector onto the syndrome sector w, diagonalizes the thermal Gram
    exactly: <Y_w, Y_w'> = delta p_w with p_w the sector's Gibbs weight.
    After whitening by sqrt(p_w) the generator is an ordinary sparse
    symmetric matrix whose off-diagonal entries carry detailed-balance
    factors e^(-beta dE / 2) bounded by the local flip energy, so the
    representation stays well conditioned at any beta.  The spectrum equals
    the generalized (matrix, gram) spectrum of the same block.
    """

    def __init__(self, rep, diag, offdiag, energies, beta, label=None):
        self.rep = rep
        self.label = label
        self.beta = float(beta)
        self.energies = energies
        self._diag = diag
        self._offdiag = offdiag  # {flip mask M: coefficient vector C_w}
        self._lam = None
        self._sym_residual = None
        self._matrix = None

    @property
    def dim(self) -> int:
        return self._diag.size

    def matrix(self):
        """Dense symmetric whitened matrix (symmetrized; the asymmetry
        residual is the detailed-balance roundoff, kept for inspection)."""
        if self._matrix is None:
            d = self.dim
            if d > 8192:
                raise ValueError(
                    f"dense Walsh matrix at dimension {d} is out of desk "
                    f"scale; use sparse_matrix / extremal_eigenvalues"
                )
            w = np.arange(d, dtype=np.int64)
            k = np.zeros((d, d))
            k[w, w] = self._diag
            for mask, cvec in self._offdiag.items():
                ratio = np.exp(-0.5 * self.beta * (self.energies[w ^ mask] - self.energies[w]))
                k[w ^ mask, w] += cvec * ratio
            self._sym_residual = float(np.max(np.abs(k - k.T)))
            self._matrix = 0.5 * (k + k.T)
        return self._matrix

    def sparse_matrix(self):
        import scipy.sparse

        d = self.dim
        w = np.arange(d, dtype=np.int64)
        rows = [w]
        cols = [w]
        vals = [self._diag]
        for mask, cvec in self._offdiag.items():
            ratio = np.exp(-0.5 * self.beta * (self.energies[w ^ mask] - self.energies[w]))
            rows.append(w ^ mask)
            cols.append(w)
            vals.append(cvec * ratio)
        k = scipy.sparse.coo_matrix(
            (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
            shape=(d, d),
        ).tocsr()
        asym = k - k.T
        self._sym_residual = float(np.abs(asym.data).max()) if asym.nnz else 0.0
        return 0.5 * (k + k.T)

    def selfadjoint_residual(self) -> float:
        if self._sym_residual is None:
            self.sparse_matrix()
        return self._sym_residual

    def eigenvalues(self):
        if self._lam is None:
            self._lam = np.linalg.eigvalsh(self.matrix())
        return self._lam

    def kernel_dim(self, tol=1e-9) -> int:
        return int(np.sum(self.eigenvalues() < tol))

    def min_nonzero(self, tol=1e-9):
        lam = self.eigenvalues()
        nz = lam[lam >= tol]
        return float(nz[0]) if nz.size else None

    def kernel_candidate(self):
        """Whitened coordinates of the identity element of the coset span
        (the exact kernel vector when the representative is the identity)."""
        p = np.exp(-self.beta * (self.energies - self.energies.min()))
        p /= p.sum()
        return np.sqrt(p)

    def extremal_eigenvalues(self, k=4, tol=1e-8, deflate_kernel=False, maxiter=None,
                             seed=0):
        """Smallest k eigenvalues by LOBPCG on the sparse symmetric matrix;
        this is the path for blocks too large to solve densely.  With
        deflate_kernel the known identity kernel vector is projected out.

        Convergence is verified directly on the returned pairs: each of the
        k smallest must satisfy ||K x - lam x|| <= tol * ||K||; a shortfall
        raises instead of returning silently degraded values."""
        import warnings

        import scipy.sparse.linalg

        mat = self.sparse_matrix()
        d = self.dim
        k_user = min(k, max(1, d - 4))
        k_solve = min(k_user + 2, max(1, d - 2))
        rng = np.random.default_rng(seed)
        x0 = rng.normal(size=(d, k_solve))
        constraints = None
        if deflate_kernel:
            constraints = self.kernel_candidate().reshape(-1, 1)
        with warnings.catch_warnings():
            # residuals are checked explicitly below; scipy's exit chatter
            # ("Exited at iteration/postprocessing ...") is redundant here
            warnings.filterwarnings("ignore", message=r"Exited (at iteration|postprocessing)")
            lam, vecs = scipy.sparse.linalg.lobpcg(
                mat, x0, Y=constraints, largest=False, tol=tol,
                maxiter=maxiter or max(400, 4 * d), verbosityLevel=0,
            )
        order = np.argsort(lam)
        lam = lam[order]
        vecs = vecs[:, order]
        scale = float(np.abs(mat).sum(axis=1).max())  # cheap upper bound on ||K||
        for i in range(k_user):
            resid = float(np.linalg.norm(mat @ vecs[:, i] - lam[i] * vecs[:, i]))
            if resid > 100.0 * tol * max(scale, 1.0):
                raise RuntimeError(
                    f"iterative eigensolver residual {resid:.2e} above budget for "
                    f"eigenvalue {i}; increase maxiter or loosen tol"
                )
        return lam[:k_user]


class DaviesGenerator:
    """Exact coset-block Davies generator for a commuting-term Hamiltonian."""

    def __init__(self, model: CommutingModel, couplings, beta, density: SpectralDensity,
                 cond_limit=1e14):
        self.model = model
        self.couplings = list(couplings)
        self.beta = float(beta)
        self.density = density
        self.cond_limit = cond_limit
        self._prep = [self._precompute(c) for c in self.couplings]
        self._gram = None
        self._gram_cond = None
        self._chol = None

    @property
    def gram(self):
        """Thermal Gram matrix of the block bases (built lazily: only the
        group-element pencil path needs it, and it carries the conditioning
        limit; the whitened Walsh path never touches it)."""
        if self._gram is None:
            gram = self.model.gram(self.beta)
            gev = scipy.linalg.eigvalsh(gram)
            cond = float(gev[-1] / gev[0]) if gev[0] > 0 else float("inf")
            if cond > self.cond_limit or gev[0] <= 0:
                raise GramConditionError(cond)
            self._gram = gram
            self._gram_cond = cond
            self._chol = scipy.linalg.cholesky(gram, lower=True)
        return self._gram

    @property
    def gram_cond(self):
        self.gram
        return self._gram_cond

    def _precompute(self, coupling: Coupling):
        model = self.model
        flipped_terms = [model.terms[k] for k in coupling.flipped]
        comps = _components_for([model.coeffs[k] for k in coupling.flipped])
        # product of flipped terms for every subset: shift mask and sign
        shifts = []
        for mask in range(2 ** len(coupling.flipped)):
            ops = [flipped_terms[k] for k in range(len(flipped_terms)) if (mask >> k) & 1]
            w, sign = model.coords_and_sign(product(ops, n=model.n))
            shifts.append((w, sign))
        sigma_mask = 0
        for i, g in enumerate(model.generators):
            if not coupling.sigma.commutes(g):
                sigma_mask |= 1 << i
        return {"comps": comps, "shifts": shifts, "sigma_mask": sigma_mask}

    def components(self, coupling_index: int):
        """Positive-frequency jump components of one coupling."""
        coupling = self.couplings[coupling_index]
        prep = self._prep[coupling_index]
        site = int(np.flatnonzero(coupling.sigma.x | coupling.sigma.z)[0])
        out = []
        for omega in sorted(prep["comps"]):
            out.append(
                JumpComponent(
                    site=site,
                    err_type=coupling.label[0],
                    omega=float(omega),
                    sigma=coupling.sigma,
                    plaquettes=tuple(coupling.flipped),
                    operators=tuple(self.model.terms[k] for k in coupling.flipped),
                    coeffs=tuple(prep["comps"][omega]),
                )
            )
        return out

    def bohr_frequencies(self, coupling_index: int):
        """All Bohr frequencies of one coupling (positive and negative)."""
        pos = sorted(self._prep[coupling_index]["comps"])
        return sorted({-w for w in pos if w > 0} | set(pos))

    def _shift_values(self, coupling, prep, rep):
        """Per frequency, the coefficients of -L's action on a coset basis
        element, grouped by group-element shift: {shift: (value when the
        coupling commutes with the basis element, value when it
        anticommutes)}."""
        model = self.model
        tau_mask = 0
        for k, term_idx in enumerate(coupling.flipped):
            if not model.terms[term_idx].commutes(rep):
                tau_mask |= 1 << k
        f = len(coupling.flipped)
        tau = np.array(
            [-1.0 if bin(m & tau_mask).count("1") % 2 else 1.0 for m in range(2**f)]
        )
        out = []
        for omega, c in prep["comps"].items():
            h = self.density.h(omega)
            u = math.exp(-self.beta * omega)
            cp = _parity_flip(c)
            ct = tau * c
            cpt = tau * cp
            conv = _xor_convolve(ct, c)
            convp = _xor_convolve(cpt, cp)
            base = ct + c + u * (cpt + cp)
            mix = 2.0 * (conv + u * convp)
            f_plus = 0.5 * h * (base - mix)
            f_minus = 0.5 * h * (base + mix)
            by_shift = {}
            for mask in range(2**f):
                w, sign = prep["shifts"][mask]
                acc = by_shift.setdefault(w, [0.0, 0.0])
                acc[0] += sign * f_plus[mask]
                acc[1] += sign * f_minus[mask]
            out.append(by_shift)
        return out

    def block(self, rep: PauliOperator, label=None) -> LindbladBlock:
        """Assemble -L restricted to the coset of rep, in the group-element
        basis X_v = P g_v with its thermal Gram matrix."""
        model = self.model
        dim = 2**model.rank
        v = np.arange(dim, dtype=np.int64)
        a = np.zeros((dim, dim))
        for coupling, prep in zip(self.couplings, self._prep):
            s_rep = 1.0 if coupling.sigma.commutes(rep) else -1.0
            sign_v = s_rep * (1.0 - 2.0 * _parity(v & prep["sigma_mask"]))
            pos = sign_v > 0
            for by_shift in self._shift_values(coupling, prep, rep):
                for w, (val_p, val_m) in by_shift.items():
                    if val_p == 0.0 and val_m == 0.0:
                        continue
                    vals = np.where(pos, val_p, val_m)
                    a[v ^ w, v] += vals
        gram = self.gram
        return LindbladBlock(rep, a, gram, model, label=label, chol=self._chol)

    def walsh_block(self, rep: PauliOperator, label=None) -> WalshBlock:
        """Assemble -L on the coset of rep in the whitened sector basis.

        Same spectrum as block(rep), but the representation is a sparse
        ordinary symmetric matrix with temperature-bounded entries, so it
        works at any beta and supports iterative extremal eigenvalues."""
        from .thermal import fwht

        model = self.model
        dim = 2**model.rank
        diag = np.zeros(dim)
        off = {}
        for coupling, prep in zip(self.couplings, self._prep):
            s_rep = 1.0 if coupling.sigma.commutes(rep) else -1.0
            mask = prep["sigma_mask"]
            for by_shift in self._shift_values(coupling, prep, rep):
                avec = np.zeros(dim)
                bvec = np.zeros(dim)
                for w, (val_p, val_m) in by_shift.items():
                    avec[w] += 0.5 * (val_p + val_m)
                    bvec[w] += 0.5 * s_rep * (val_p - val_m)
                if mask == 0:
                    # coupling commutes with every generator: the sign split
                    # is constant and both halves act diagonally in w
                    diag += fwht(avec + bvec)
                    continue
                diag += fwht(avec)
                cw = fwht(bvec)
                idx = np.arange(dim, dtype=np.int64) ^ mask
                off[mask] = off.get(mask, 0.0) + cw[idx]
        energies = model.syndrome_energies()
        return WalshBlock(rep, diag, off, energies, self.beta, label=label)

    def coset_representatives(self):
        """Hermitian representatives of every invariant coset (one block per
        coset); feasible when 2^(2n - rank) is desk-sized."""
        npat = 2 * self.model.n
        basis = [g.pattern() for g in self.model.generators]
        extra = []
        current = np.array(basis, dtype=np.uint8)
        for i in range(npat):
            e = np.zeros(npat, dtype=np.uint8)
            e[i] = 1
            if gf2.rank(np.vstack([current, e])) > current.shape[0]:
                current = np.vstack([current, e])
                extra.append(e)
        reps = []
        for mask in range(2 ** len(extra)):
            pat = np.zeros(npat, dtype=np.uint8)
            for i, e in enumerate(extra):
                if (mask >> i) & 1:
                    pat ^= e
            reps.append(hermitian_from_pattern(pat))
        return reps


@dataclass
class GapResult:
    """Spectral-gap summary for one (beta, density) point."""

    beta: float
    j: float
    density: str
    global_gap: float | None
    kernel_dim: int
    sector_minima: dict
    selfadjoint_residual: float
    gram_cond: float | None
    ising_gap: float | None = None
    ising_length: int | None = None
    bound_rhs: float | None = None
    theorem_ok: bool | None = None

    @property
    def slack(self):
        if self.global_gap is None or self.bound_rhs is None:
            return None
        return self.global_gap - self.bound_rhs


def gap(blocks, kernel_tol=1e-9):
    """Smallest nonzero generalized eigenvalue across blocks, with the kernel
    count; blocks may be any iterable of blocks or a {label: block} mapping.
    Blocks are consumed lazily so large enumerations can stream."""
    items = blocks.values() if isinstance(blocks, dict) else blocks
    smallest = None
    kernel = 0
    for b in items:
        kernel += b.kernel_dim(kernel_tol)
        m = b.min_nonzero(kernel_tol)
        if m is not None and (smallest is None or m < smallest):
            smallest = m
    return smallest, kernel


# -- color-code front end ----------------------------------------------------


def tcc_model(code, j=1.0) -> CommutingModel:
    """CommutingModel over the 2N plaquette terms (x-type first)."""
    terms = code.bx_ops + code.bz_ops
    return CommutingModel(code.n, terms, [j] * len(terms))


def tcc_couplings(code):
    """The single-qubit bath couplings of the interaction Hamiltonian:
    sigma_x and sigma_z on every qubit."""
    ncount = code.n
    npla = code.lattice.n_plaquettes
    out = []
    for i in range(ncount):
        out.append(
            Coupling(
                label=("x", i),
                sigma=PauliOperator.sigma_x(ncount, i),
                flipped=tuple(npla + p for p in code.local_plaquettes(i, "x")),
            )
        )
    for i in range(ncount):
        out.append(
            Coupling(
                label=("z", i),
                sigma=PauliOperator.sigma_z(ncount, i),
                flipped=tuple(code.local_plaquettes(i, "z")),
            )
        )
    return out


def build_lindbladian(code, beta, density=SpectralDensity(), j=1.0) -> DaviesGenerator:
    return DaviesGenerator(tcc_model(code, j=j), tcc_couplings(code), beta, density)


def bohr_frequencies(code, site, err_type, j=1.0):
    """Bohr frequency set of a single-qubit coupling: {-6J, -2J, 2J, 6J}.

    The set follows from the three-plaquette flip structure alone; on the
    minimal lattice the +-2J components have identically zero amplitude but
    the frequencies remain defined by the coupling structure."""
    offsets = sorted({-2.0 * (b0 + b1 + b2) for b0 in (-1, 1) for b1 in (-1, 1) for b2 in (-1, 1)})
    return [j * o for o in offsets if o != 0.0]


def fourier_components(code, site, err_type, beta=1.0, density=SpectralDensity(), j=1.0):
    """Positive-frequency jump components S(2J), S(6J) for one coupling."""
    gen = build_lindbladian(code, beta, density, j=j)
    for idx, c in enumerate(gen.couplings):
        if c.label == (err_type, site):
            return gen.components(idx)
    raise ValueError(f"no coupling {(err_type, site)}")


def thermal_inner_product(code, beta, x, y) -> complex:
    """Liouville scalar product tr(rho_beta X^dagger Y) for the code's
    thermal state; X, Y are PauliOperators or {Pauli: coeff} mappings."""
    from .thermal import thermal_inner_product as _tip

    return _tip(tcc_model(code), beta, x, y)


def dense_oracle(code, beta, density=SpectralDensity(), j=1.0):
    """Dense eigenprojector reference implementation (2N <= 8 qubits)."""
    from .dense import DenseOracle

    gen_model = tcc_model(code, j=j)
    return DenseOracle(gen_model, tcc_couplings(code), beta, density)


def negativity_identity_check(code, beta, x, density=SpectralDensity(), j=1.0):
    """Residuals of the per-component dissipativity identity
    -<X, L_aw(X)> = h/2 (<[S,X],[S,X]> + e^(-bw) <[S+,X],[S+,X]>)
    and of the commutation relation rho S(w) = e^(bw) S(w) rho, both
    evaluated on the dense oracle."""
    oracle = dense_oracle(code, beta, density, j=j)
    xmat = x.dense().real if hasattr(x, "dense") else np.asarray(x)
    return {
        "identity_residual": oracle.negativity_identity_residual(xmat),
        "rho_commutation_residual": oracle.rho_commutation_residual(),
    }


def sector_representatives(code):
    """Hermitian representatives of the 16 z-sectors and 16 x-sectors,
    labeled 'Z:0000'..'X:1111' (the identity sector appears under both)."""
    from .code import sector_representative

    reps = {}
    for bits in range(16):
        mu = tuple((bits >> k) & 1 for k in range(4))
        reps["Z:" + "".join(map(str, mu))] = sector_representative(code, mu, (0, 0, 0, 0))
    for bits in range(16):
        nu = tuple((bits >> k) & 1 for k in range(4))
        reps["X:" + "".join(map(str, nu))] = sector_representative(code, (0, 0, 0, 0), nu)
    return reps


def sector_blocks(code, gen: DaviesGenerator):
    return {name: gen.block(rep, label=name) for name, rep in sector_representatives(code).items()}


DENSE_BLOCK_LIMIT = 4096


def gap_result(code, beta, density=SpectralDensity(), j=1.0, kernel_tol=1e-9,
               include_global=None, with_ising_bound=True, jobs=1,
               iterative_tol=1e-8) -> GapResult:
    """Sector minima, global gap (where enumerable), and the instability
    bound e^(-6 beta J) h(6J) Gap_Ising.

    Blocks up to DENSE_BLOCK_LIMIT solve densely (full spectra, Gram
    condition reported); beyond that the sector minima come from the
    matrix-free extremal path at iterative_tol and no global enumeration is
    attempted."""
    gen = build_lindbladian(code, beta, density, j=j)
    dim = 2**gen.model.rank
    sector_minima = {}
    resid = 0.0
    gram_cond = None
    if dim <= DENSE_BLOCK_LIMIT:
        blocks = sector_blocks(code, gen)
        for name in sorted(blocks):
            b = blocks[name]
            resid = max(resid, b.selfadjoint_residual())
            if name in ("Z:0000", "X:0000"):
                sector_minima[name] = b.min_nonzero(kernel_tol)
            else:
                sector_minima[name] = float(b.eigenvalues()[0])
        gram_cond = gen.gram_cond
    else:
        reps = sector_representatives(code)
        for name in sorted(reps):
            b = gen.walsh_block(reps[name], label=name)
            resid = max(resid, b.selfadjoint_residual())
            deflate = name in ("Z:0000", "X:0000")
            lam = b.extremal_eigenvalues(k=4, tol=iterative_tol, deflate_kernel=deflate)
            nz = lam[lam >= kernel_tol]
            sector_minima[name] = float(nz[0]) if nz.size else None

    n_cosets = 2 ** (2 * code.n - gen.model.rank)
    if include_global is None:
        include_global = n_cosets <= 4096 and dim <= DENSE_BLOCK_LIMIT
    global_gap = None
    kernel_dim = 0
    if include_global:
        spectra = block_spectra(gen, gen.coset_representatives(), jobs)
        global_gap, kernel_dim = gap_from_spectra(spectra, kernel_tol)

    result = GapResult(
        beta=beta,
        j=j,
        density=density.kind,
        global_gap=global_gap,
        kernel_dim=kernel_dim,
        sector_minima=sector_minima,
        selfadjoint_residual=resid,
        gram_cond=gram_cond,
    )
    if with_ising_bound:
        from . import ising

        length = ising.matched_chain_length(code.lattice.n_plaquettes)
        chain = ising.build_inhomogeneous(length, j=j)
        result.ising_gap = ising.davies_gap(chain, beta, density, kernel_tol=kernel_tol)
        result.ising_length = length
        delta = DELTA_FACTOR * j
        result.bound_rhs = math.exp(-beta * delta) * density.h(delta) * result.ising_gap
        if result.global_gap is not None:
            result.theorem_ok = bool(result.global_gap - result.bound_rhs >= -1e-10)
    return result


def gap_from_spectra(spectra, kernel_tol=1e-9):
    """Same contract as gap(), consuming a stream of eigenvalue arrays."""
    smallest = None
    kernel = 0
    for lam in spectra:
        kernel += int(np.sum(lam < kernel_tol))
        nz = lam[lam >= kernel_tol]
        if nz.size and (smallest is None or nz[0] < smallest):
            smallest = float(nz[0])
    return smallest, kernel


def block_spectra(gen: DaviesGenerator, reps, jobs=1):
    """Stream the eigenvalues of -L block by block through the whitened
    Walsh representation (same spectra as the Gram pencil, conditioning-
    safe at large beta, and without the pencil's extra matrix products).

    With jobs > 1 the blocks are solved by a process pool (they are
    independent); results arrive chunk-interleaved but gap_from_spectra is
    order-insensitive."""
    reps = list(reps)
    if jobs and jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        chunks = [reps[i::jobs] for i in range(jobs) if reps[i::jobs]]
        with ProcessPoolExecutor(max_workers=len(chunks)) as ex:
            for part in ex.map(_spectra_worker, [(gen, ch) for ch in chunks]):
                yield from part
    else:
        for rep in reps:
            yield gen.walsh_block(rep).eigenvalues()


def _spectra_worker(args):
    gen, reps = args
    return [gen.walsh_block(rep).eigenvalues() for rep in reps]


def sector_minimum_iterative(code, beta, sector_label, density=SpectralDensity(),
                             j=1.0, k=4, tol=1e-8, kernel_tol=1e-9):
    """Smallest decay rate of one logical sector by the matrix-free route:
    whitened Walsh block plus LOBPCG extremal eigenvalues (tolerance 1e-8 by
    default).  This covers block dimensions beyond the dense solvers; the
    identity sector has its exact kernel vector deflated."""
    gen = build_lindbladian(code, beta, density, j=j)
    reps = sector_representatives(code)
    if sector_label not in reps:
        raise ValueError(f"unknown sector {sector_label!r}")
    block = gen.walsh_block(reps[sector_label], label=sector_label)
    deflate = sector_label in ("Z:0000", "X:0000")
    lam = block.extremal_eigenvalues(k=k, tol=tol, deflate_kernel=deflate)
    nz = lam[lam >= kernel_tol]
    return float(nz[0]) if nz.size else None


def theorem_check(code, betas, density=SpectralDensity(), j=1.0, kernel_tol=1e-9, jobs=1):
    """Verify Gap(-L)_TCC >= e^(-6 beta J) h(6J) Gap(-L)_Ising per beta.

    The left side is the global gap, which needs the full coset enumeration;
    that is desk-sized only on the minimal lattice."""
    gen_probe = tcc_model(code, j=j)
    n_cosets = 2 ** (2 * code.n - gen_probe.rank)
    if n_cosets > 4096:
        raise ValueError(
            f"theorem check needs the global gap over {n_cosets} cosets; "
            f"use the minimal lattice (size 3)"
        )
    points = []
    for beta in betas:
        res = gap_result(
            code, beta, density, j=j, kernel_tol=kernel_tol,
            include_global=True, with_ising_bound=True, jobs=jobs,
        )
        points.append(
            {
                "beta": beta,
                "lhs_gap_tcc": res.global_gap,
                "ising_gap": res.ising_gap,
                "ising_length": res.ising_length,
                "rhs_bound": res.bound_rhs,
                "slack": res.slack,
                "ratio": res.global_gap / res.bound_rhs if res.bound_rhs else None,
                "ok": bool(res.slack >= -1e-10),
            }
        )
    return {
        "j": j,
        "density": density.kind,
        "delta": DELTA_FACTOR * j,
        "points": points,
        "ok": all(p["ok"] for p in points),
    }

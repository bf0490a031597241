"""Acceptance suite: one test per criterion, each at its stated tolerance.

Run with `pytest tests/test_acceptance.py -v -s` to see one PASS line per
criterion.  Criterion 12 (the plotting component) lives in the plots
package: plots/tests/test_acceptance.py.
"""

import numpy as np
import pytest
import scipy.linalg

from hexcc import code as code_mod
from hexcc import davies, dense, dynamics, gf2, ising, lattice
from hexcc.pauli import PauliOperator, product

BETAS = (0.25, 0.5, 1.0, 2.0)


@pytest.fixture(scope="module")
def code():
    return code_mod.build_code(lattice.build_hex_torus(3))


@pytest.fixture(scope="module")
def density():
    return davies.SpectralDensity()


@pytest.fixture(scope="module")
def gen1(code, density):
    return davies.build_lindbladian(code, 1.0, density)


@pytest.fixture(scope="module")
def oracle1(gen1, density):
    return dense.DenseOracle(gen1.model, gen1.couplings, 1.0, density)


def test_criterion_1_structural_counts(code):
    lat = code.lattice
    assert lat.n_plaquettes == 3
    assert lat.n_vertices == 6
    assert lat.n_edges == 9
    assert code.rank == 2 * 3 - 4 == 2
    assert code.degeneracy == 16
    print("ACCEPTANCE 1: PASS  N=3, 6 qubits, 9 edges, rank 2, degeneracy 16")


def test_criterion_2_logical_algebra(code):
    for i, z in enumerate(code.logical_z):
        for j, x in enumerate(code.logical_x):
            assert z.commutes(x) == (i != j)
        for z2 in code.logical_z:
            assert z.commutes(z2)
        for g in code.generators:
            assert z.commutes(g)
    for x in code.logical_x:
        for x2 in code.logical_x:
            assert x.commutes(x2)
        for g in code.generators:
            assert x.commutes(g)
    green = lattice.green_loop(code.lattice)
    zg = PauliOperator.from_support(code.n, "z", green.vertices)
    triple = product([code.logical_z[0], code.logical_z[1], zg])
    assert code.in_stabilizer_span(triple)
    print("ACCEPTANCE 2: PASS  logical pairing exact; Zr*Zb*Zg is a plaquette product")


def test_criterion_3_excitation_census():
    for n in (3, 12):
        lat = lattice.build_hex_torus(n)
        cd = code_mod.build_code(lat)
        ex = lattice.excitation_generators(lat)
        n_string = sum(len(s.vertices) for s in ex.strings)
        assert n_string == 2 * n - 6
        assert len(ex.leftover) == 4
        groups = [set(s.vertices) for s in ex.strings]
        groups += [{ex.branching_x}, {ex.branching_z}, set(ex.leftover)]
        assert sum(len(g) for g in groups) == len(set().union(*groups))
        ops = code_mod.observable_generators(cd)
        assert gf2.rank(np.array([op.pattern() for op in ops])) == 4 * n
    print("ACCEPTANCE 3: PASS  census (2N-6, 2, 4) and generating dimension 4N exact")


def test_criterion_4_bohr_set(code):
    for site in range(code.n):
        for err_type in ("x", "z"):
            assert davies.bohr_frequencies(code, site, err_type) == [-6.0, -2.0, 2.0, 6.0]
    assert davies.DELTA_FACTOR == 6.0
    print("ACCEPTANCE 4: PASS  Bohr set {+-2J, +-6J}, Delta = 6J")


def test_criterion_5_jump_identities(code, gen1, oracle1):
    # exact structured identities
    for err_type, make in (("x", PauliOperator.sigma_x), ("z", PauliOperator.sigma_z)):
        for site in range(code.n):
            comps = davies.fourier_components(code, site, err_type)
            total = {}
            for comp in list(comps) + [c.adjoint() for c in comps]:
                for coeff, op in comp.terms():
                    total[op.key()] = total.get(op.key(), 0.0) + coeff
            total = {k: v for k, v in total.items() if v != 0.0}
            assert total == {make(code.n, site).key(): 1.0}
            for comp in comps:
                adj = comp.adjoint()
                for mask, c in enumerate(comp.coeffs):
                    sign = -1.0 if bin(mask).count("1") % 2 else 1.0
                    assert adj.coeffs[mask] == sign * c
    # dense eigenprojector sandwich agreement at N=3
    worst = 0.0
    for ci in range(len(gen1.couplings)):
        for comp in gen1.components(ci):
            mat = np.zeros((64, 64))
            for coeff, op in comp.terms():
                mat += coeff * op.dense().real
            want = oracle1.jumps[ci].get(round(comp.omega, 9), np.zeros((64, 64)))
            worst = max(worst, float(np.max(np.abs(mat - want))))
    assert worst <= 1e-10
    print(f"ACCEPTANCE 5: PASS  sum_w S(w)=S and S(-w)=S+(w) exact; dense dev {worst:.2e}")


def test_criterion_6_lindbladian_properties(code, density):
    worst_sa, worst_pos, worst_id = 0.0, 0.0, 0.0
    worst_neg, worst_rho = 0.0, 0.0
    for beta in BETAS:
        gen = davies.build_lindbladian(code, beta, density)
        for rep in gen.coset_representatives():
            block = gen.block(rep)
            worst_sa = max(worst_sa, block.selfadjoint_residual())
            worst_pos = min(worst_pos, float(block.eigenvalues()[0]))
        ident = gen.block(PauliOperator.identity(code.n))
        worst_id = max(worst_id, float(np.max(np.abs(ident.matrix[:, 0]))))
        oracle = dense.DenseOracle(gen.model, gen.couplings, beta, density)
        for op in (PauliOperator.identity(6), code.logical_z[0],
                   code.logical_z[0].multiply(code.bz_ops[0])):
            worst_neg = max(worst_neg, oracle.negativity_identity_residual(op.dense().real))
        worst_rho = max(worst_rho, oracle.rho_commutation_residual())
    assert worst_sa <= 1e-10
    assert worst_pos >= -1e-10
    assert worst_id <= 1e-12
    assert worst_neg <= 1e-10
    assert worst_rho <= 1e-12
    print(
        "ACCEPTANCE 6: PASS  self-adjoint %.1e, positivity %.1e, L(I) %.1e, "
        "identity %.1e, rho-commutation %.1e" % (worst_sa, worst_pos, worst_id, worst_neg, worst_rho)
    )


def test_criterion_7_method_cross_validation(code, gen1, oracle1):
    reps = dict(davies.sector_representatives(code))
    all_reps = gen1.coset_representatives()
    rng = np.random.default_rng(11)
    for k in rng.choice(len(all_reps), size=8, replace=False):
        reps[f"random-{k}"] = all_reps[int(k)]
    worst = 0.0
    for name, rep in reps.items():
        block = gen1.block(rep)
        a = oracle1.block_matrix(block.basis())
        g = oracle1.block_gram(block.basis())
        m = g @ a
        lam = scipy.linalg.eigh(0.5 * (m + m.T), g, eigvals_only=True)
        worst = max(worst, float(np.max(np.abs(np.sort(lam) - block.eigenvalues()))))
    assert worst <= 1e-8
    print(f"ACCEPTANCE 7: PASS  block spectra vs dense oracle on {len(reps)} cosets: {worst:.2e}")


def test_criterion_8_theorem(code, density):
    report = davies.theorem_check(code, BETAS, density)
    for p in report["points"]:
        assert p["slack"] >= -1e-10
    assert report["ok"]
    lines = ", ".join(f"b={p['beta']}: ratio {p['ratio']:.2f}" for p in report["points"])
    print(f"ACCEPTANCE 8: PASS  Gap_TCC >= e^(-6bJ) h(6J) Gap_Ising at all betas ({lines})")


def test_criterion_9_ising_constancy(density):
    # bulk (periodic) alternating chain; the alternation needs even length
    gaps = {}
    for length in (4, 6, 8, 10):
        chain = ising.build_inhomogeneous(length, boundary="periodic")
        gaps[length] = ising.davies_gap(chain, 1.0, density)
    values = np.array(list(gaps.values()))
    rel = float((values.max() - values.min()) / values.min())
    assert rel < 0.05
    print(f"ACCEPTANCE 9: PASS  chain gap size variation {rel:.4f} < 5% over L=4..10")


def test_criterion_10_time_domain(code, gen1):
    z1 = code.logical_z[0]
    block = gen1.block(z1)
    c0 = dynamics.coefficients(block, z1)
    sw = dynamics.spectral_weights(block, c0)
    grid = dynamics.default_grid()
    series = dynamics.autocorrelation(block, c0, grid, "Z1")
    assert np.all(np.diff(series.values) <= 1e-12)
    env = dynamics.envelope(series, sw)
    assert np.all(series.values <= env + 1e-12)
    fit = dynamics.fit_decay_rate(series, offset=sw.kernel_offset)
    rate = sw.min_contributing()
    rel = abs(fit.epsilon - rate) / rate
    assert rel < 0.01
    print(f"ACCEPTANCE 10: PASS  fitted eps {fit.epsilon:.6f} vs rate {rate:.6f} ({rel:.2%})")


def test_criterion_11_sector_symmetries(code, gen1):
    blocks = davies.sector_blocks(code, gen1)
    lam = {name: b.eigenvalues() for name, b in blocks.items()}
    assert abs(lam["Z:1000"][0] - lam["Z:0100"][0]) <= 1e-10
    worst = 0.0
    for bits in range(16):
        s = "".join(str((bits >> k) & 1) for k in range(4))
        worst = max(worst, float(np.max(np.abs(lam[f"Z:{s}"] - lam[f"X:{s}"]))))
    assert worst <= 1e-10
    print(f"ACCEPTANCE 11: PASS  Z1/Z2 minima equal; x/z spectra dev {worst:.2e}")

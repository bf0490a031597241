"""Group-law and rendering tests for the symplectic Pauli arithmetic; the
oracle is the dense matrix realization built directly from the definition."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hexcc.pauli import PauliOperator, hermitian_from_pattern, product


def paulis(n_max=4):
    @st.composite
    def build(draw):
        n = draw(st.integers(1, n_max))
        x = draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
        z = draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
        phase = draw(st.integers(0, 3))
        return PauliOperator(n, x=x, z=z, phase=phase)

    return build()


def pauli_pairs(n_max=4):
    @st.composite
    def build(draw):
        n = draw(st.integers(1, n_max))
        ops = []
        for _ in range(2):
            x = draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
            z = draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
            ops.append(PauliOperator(n, x=x, z=z, phase=draw(st.integers(0, 3))))
        return ops

    return build()


@given(pauli_pairs(n_max=6))
@settings(max_examples=150, deadline=None)
def test_multiply_matches_dense(pair):
    a, b = pair
    got = a.multiply(b).dense()
    want = a.dense() @ b.dense()
    assert np.allclose(got, want, atol=1e-12)


@given(pauli_pairs(n_max=6))
@settings(max_examples=150, deadline=None)
def test_commutes_matches_dense(pair):
    a, b = pair
    comm = a.dense() @ b.dense() - b.dense() @ a.dense()
    assert a.commutes(b) == bool(np.max(np.abs(comm)) < 1e-12)


@given(paulis())
@settings(max_examples=100, deadline=None)
def test_adjoint_and_square(p):
    assert np.allclose(p.adjoint().dense(), p.dense().conj().T, atol=1e-12)
    sq = p.multiply(p)
    assert not sq.x.any() and not sq.z.any()
    assert sq.phase in (0, 2)
    if p.is_hermitian():
        assert sq.phase == 0


@given(paulis())
@settings(max_examples=100, deadline=None)
def test_string_round_trip(p):
    assert PauliOperator.from_string(p.to_string()) == p


@given(pauli_pairs(n_max=3), paulis(n_max=3))
@settings(max_examples=60, deadline=None)
def test_associativity(pair, c):
    a, b = pair
    if a.n != c.n:
        c = PauliOperator(a.n, x=np.resize(c.x, a.n), z=np.resize(c.z, a.n), phase=c.phase)
    assert a.multiply(b).multiply(c) == a.multiply(b.multiply(c))


def test_identity_neutral():
    p = PauliOperator.from_string("iXZY")
    e = PauliOperator.identity(3)
    assert e.multiply(p) == p and p.multiply(e) == p
    assert e.is_identity() and e.weight() == 0 and e.support() == set()


def test_single_qubit_algebra():
    x = PauliOperator.sigma_x(1, 0)
    z = PauliOperator.sigma_z(1, 0)
    assert x.multiply(x).is_identity()
    # sigma_x sigma_z = -i sigma_y in this convention
    xz = x.multiply(z)
    assert xz.to_string() == "-iY"
    assert np.allclose(xz.dense(), -1j * PauliOperator.sigma_y(1, 0).dense())
    assert not x.commutes(z)


def test_plaquette_product_example(minimal_code):
    bx = minimal_code.bx_ops[0]
    bz = minimal_code.bz_ops[0]
    prod = bx.multiply(bz)
    assert prod.weight() == 6
    assert prod.x.all() and prod.z.all()
    assert prod.phase == 0  # canonical X^a Z^b form with + prefactor
    assert np.allclose(prod.dense(), bx.dense() @ bz.dense())


def test_hermitian_from_pattern():
    pat = np.array([1, 0, 1, 1, 0, 1], dtype=np.uint8)  # n=3: x=101, z=101
    p = hermitian_from_pattern(pat)
    assert p.is_hermitian()
    assert np.allclose(p.dense(), p.dense().conj().T)


def test_from_support_and_weight():
    p = PauliOperator.from_support(6, "z", (0, 3))
    assert p.weight() == 2 and p.support() == {0, 3}
    with pytest.raises(ValueError):
        PauliOperator.from_support(6, "y", (0,))


def test_size_mismatch_rejected():
    with pytest.raises(ValueError):
        PauliOperator.sigma_x(2, 0).multiply(PauliOperator.sigma_x(3, 0))
    with pytest.raises(ValueError):
        PauliOperator.sigma_x(2, 0).commutes(PauliOperator.sigma_x(3, 0))


def test_product_helper():
    ops = [PauliOperator.sigma_x(2, 0), PauliOperator.sigma_x(2, 1)]
    assert product(ops).to_string() == "+XX"
    assert product([], n=2).is_identity()

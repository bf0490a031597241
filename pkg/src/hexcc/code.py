"""Stabilizer structure of the color code: plaquette generators, constraints,
logical operators, syndromes and observable sectors.

The plaquette operators B_p^x / B_p^z generate an abelian group of GF(2)
rank 2N - 4 (two constraints per type on the torus: the product over all
plaquettes of one color is the same operator for each color).  The logical
operators come from the four nontrivial loops; the geometric candidates are
verified algebraically here, and the algebra is the source of truth.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gf2, lattice as lat_mod
from .lattice import ColexLattice
from .pauli import PauliOperator, product


@dataclass(frozen=True)
class Syndrome:
    """Plaquette eigenvalue flips: x_flips[p] = 1 iff the error anticommutes
    with B_p^x (and so flips its eigenvalue); z_flips likewise for B_p^z."""

    x_flips: tuple
    z_flips: tuple


@dataclass(frozen=True)
class SectorLabel:
    """Logical class of a centralizer element: the unique (mu, nu) with
    obs ~ Z1^mu1..Z4^mu4 X1^nu1..X4^nu4 modulo the plaquette group."""

    mu: tuple
    nu: tuple

    @property
    def name(self) -> str:
        return "Z:" + "".join(map(str, self.mu)) + "|X:" + "".join(map(str, self.nu))


class StabilizerCode:
    """Plaquette stabilizers plus verified logical operators for a lattice."""

    def __init__(self, lattice: ColexLattice, bx_ops, bz_ops, independent_idx,
                 logical_z, logical_x, loops):
        self.lattice = lattice
        self.bx_ops = list(bx_ops)
        self.bz_ops = list(bz_ops)
        self.independent_idx = list(independent_idx)
        self.logical_z = tuple(logical_z)
        self.logical_x = tuple(logical_x)
        self.loops = tuple(loops)
        self._stab_solver = gf2.Solver(
            np.array([self.generators[i].pattern() for i in self.independent_idx])
        )

    @property
    def n(self) -> int:
        return self.lattice.n_vertices

    @property
    def generators(self):
        return self.bx_ops + self.bz_ops

    @property
    def rank(self) -> int:
        return len(self.independent_idx)

    @property
    def degeneracy(self) -> int:
        return 2 ** (self.n - self.rank)

    def local_plaquettes(self, site: int, err_type: str):
        """The three plaquettes of the type anticommuting with the given
        single-site error: z-plaquettes for an x error and vice versa."""
        if err_type not in ("x", "z"):
            raise ValueError("err_type must be 'x' or 'z'")
        return sorted(self.lattice.vertex_plaquettes(site))

    def in_stabilizer_span(self, op: PauliOperator) -> bool:
        return self._stab_solver.contains(op.pattern())

    def stabilizer_coords(self, op: PauliOperator):
        """GF(2) coordinates of op's pattern over the independent generators,
        or None if the pattern is outside the span."""
        return self._stab_solver.solve(op.pattern())


def build_code(lattice: ColexLattice) -> StabilizerCode:
    """Construct and algebraically verify the code for a valid lattice."""
    report = lat_mod.validate(lattice)
    if not report.ok:
        raise ValueError(f"lattice failed validation: {report.failures}")
    n = lattice.n_vertices
    bx_ops = [PauliOperator.from_support(n, "x", cyc) for _, cyc in lattice.plaquettes]
    bz_ops = [PauliOperator.from_support(n, "z", cyc) for _, cyc in lattice.plaquettes]
    gens = bx_ops + bz_ops

    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if not gens[i].commutes(gens[j]):
                raise AssertionError(f"stabilizer generators {i},{j} do not commute")

    patterns = np.array([g.pattern() for g in gens])
    independent_idx = gf2.row_basis(patterns)
    if len(independent_idx) != 2 * lattice.n_plaquettes - 4:
        raise AssertionError(
            f"stabilizer rank {len(independent_idx)} != 2N-4 = {2 * lattice.n_plaquettes - 4}"
        )

    c1, c2, c3, c4 = lat_mod.nontrivial_loops(lattice)
    logical_z = tuple(
        PauliOperator.from_support(n, "z", c.vertices) for c in (c1, c2, c3, c4)
    )
    logical_x = tuple(
        PauliOperator.from_support(n, "x", c.vertices) for c in (c4, c3, c2, c1)
    )

    code = StabilizerCode(
        lattice, bx_ops, bz_ops, independent_idx, logical_z, logical_x, (c1, c2, c3, c4)
    )
    _verify_logicals(code)
    return code


def _verify_logicals(code: StabilizerCode):
    """Anticommutation pairing, centralizer membership, independence mod span."""
    for k, op in enumerate(code.logical_z + code.logical_x):
        for g in code.generators:
            if not op.commutes(g):
                raise AssertionError(f"logical #{k} leaves the centralizer")
    for i, z in enumerate(code.logical_z):
        for j, x in enumerate(code.logical_x):
            expect = i != j
            if z.commutes(x) != expect:
                raise AssertionError(f"logical pairing broken at Z{i + 1}, X{j + 1}")
        for z2 in code.logical_z:
            if not z.commutes(z2):
                raise AssertionError("logical Z operators must commute")
    for x in code.logical_x:
        for x2 in code.logical_x:
            if not x.commutes(x2):
                raise AssertionError("logical X operators must commute")
    stack = [code.generators[i].pattern() for i in code.independent_idx]
    stack += [op.pattern() for op in code.logical_z + code.logical_x]
    if gf2.rank(np.array(stack)) != code.rank + 8:
        raise AssertionError("logicals are not independent modulo the stabilizer span")


def syndrome(code: StabilizerCode, err: PauliOperator) -> Syndrome:
    if err.n != code.n:
        raise ValueError("error size does not match the code")
    return Syndrome(
        x_flips=tuple(0 if err.commutes(b) else 1 for b in code.bx_ops),
        z_flips=tuple(0 if err.commutes(b) else 1 for b in code.bz_ops),
    )


def syndrome_parities_ok(code: StabilizerCode, syn: Syndrome) -> bool:
    """Torus constraint: per type, the flip parity is the same for all three
    colors (a lone excitation of one color is impossible)."""
    for flips in (syn.x_flips, syn.z_flips):
        parities = []
        for color in range(3):
            idx = code.lattice.plaquettes_of_color(color)
            parities.append(sum(flips[p] for p in idx) % 2)
        if len(set(parities)) != 1:
            return False
    return True


def sector_decompose(code: StabilizerCode, obs: PauliOperator):
    """Logical class of a centralizer element, or None if obs anticommutes
    with some stabilizer.  The labels are the commutation bits against the
    dual logicals; membership of the residue in the plaquette span is
    verified before returning."""
    if any(not obs.commutes(g) for g in code.generators):
        return None
    mu = tuple(0 if obs.commutes(x) else 1 for x in code.logical_x)
    nu = tuple(0 if obs.commutes(z) else 1 for z in code.logical_z)
    rep = sector_representative(code, mu, nu)
    residue = obs.multiply(rep.adjoint())
    if not code.in_stabilizer_span(residue):
        raise AssertionError("sector labels inconsistent with the plaquette span")
    return SectorLabel(mu=mu, nu=nu)


def sector_representative(code: StabilizerCode, mu, nu) -> PauliOperator:
    """Canonical product Z1^mu1..Z4^mu4 X1^nu1..X4^nu4."""
    ops = [z for z, m in zip(code.logical_z, mu) if m]
    ops += [x for x, v in zip(code.logical_x, nu) if v]
    return product(ops, n=code.n)


def observable_generators(code: StabilizerCode):
    """The full generating set of the observable algebra: stabilizers,
    logicals, string-pair excitation generators and the two branching
    points.  Spans the whole n-qubit Pauli group modulo phases."""
    n = code.n
    ex = lat_mod.excitation_generators(code.lattice)
    ops = list(code.generators)
    ops += list(code.logical_z) + list(code.logical_x)
    for s in ex.strings:
        for (u, v) in s.links:
            ops.append(PauliOperator.from_support(n, "x", (u, v)))
            ops.append(PauliOperator.from_support(n, "z", (u, v)))
    ops.append(PauliOperator.sigma_x(n, ex.branching_x))
    ops.append(PauliOperator.sigma_z(n, ex.branching_z))
    return ops


def observable_generators_complete(code: StabilizerCode) -> bool:
    ops = observable_generators(code)
    return gf2.rank(np.array([op.pattern() for op in ops])) == 2 * code.n

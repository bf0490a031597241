"""Exact n-qubit Pauli arithmetic in the binary-symplectic representation.

An operator is stored as ``i**phase * X^x * Z^z`` with ``x, z`` bit-vectors
of length ``n`` and ``phase`` an integer mod 4.  With this convention the
single-qubit Y is ``i * X * Z`` (phase 1, both bits set), products track the
global phase exactly, and an operator is Hermitian iff
``phase ≡ x·z (mod 2)``.
"""

from __future__ import annotations

import numpy as np

_LETTER = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
_BITS = {v: k for k, v in _LETTER.items()}


class PauliOperator:
    """Signed n-qubit Pauli operator with exact phase tracking."""

    __slots__ = ("n", "x", "z", "phase")

    def __init__(self, n, x=None, z=None, phase=0):
        self.n = int(n)
        self.x = np.zeros(self.n, dtype=np.uint8) if x is None else (np.asarray(x, dtype=np.uint8) & 1)
        self.z = np.zeros(self.n, dtype=np.uint8) if z is None else (np.asarray(z, dtype=np.uint8) & 1)
        if self.x.shape != (self.n,) or self.z.shape != (self.n,):
            raise ValueError("bit-vectors must have length n")
        self.phase = int(phase) % 4

    # -- constructors ------------------------------------------------------

    @classmethod
    def identity(cls, n):
        return cls(n)

    @classmethod
    def sigma_x(cls, n, i):
        x = np.zeros(n, dtype=np.uint8)
        x[i] = 1
        return cls(n, x=x)

    @classmethod
    def sigma_z(cls, n, i):
        z = np.zeros(n, dtype=np.uint8)
        z[i] = 1
        return cls(n, z=z)

    @classmethod
    def sigma_y(cls, n, i):
        x = np.zeros(n, dtype=np.uint8)
        z = np.zeros(n, dtype=np.uint8)
        x[i] = z[i] = 1
        return cls(n, x=x, z=z, phase=1)

    @classmethod
    def from_support(cls, n, kind, sites):
        """X- or Z-string on the given sites (e.g. a plaquette or loop operator)."""
        if kind not in ("x", "z"):
            raise ValueError("kind must be 'x' or 'z'")
        bits = np.zeros(n, dtype=np.uint8)
        bits[list(sites)] = 1
        return cls(n, x=bits) if kind == "x" else cls(n, z=bits)

    @classmethod
    def from_string(cls, s):
        """Parse e.g. '+XIZY', '-ZZ', 'iXY'.  Sign prefix optional."""
        s = s.strip()
        phase = 0
        for prefix, ph in (("-i", 3), ("+i", 1), ("i", 1), ("-", 2), ("+", 0)):
            if s.startswith(prefix):
                phase = ph
                s = s[len(prefix):]
                break
        letters = s.upper()
        if not letters or any(c not in "IXYZ" for c in letters):
            raise ValueError(f"invalid Pauli string {s!r}")
        n = len(letters)
        x = np.zeros(n, dtype=np.uint8)
        z = np.zeros(n, dtype=np.uint8)
        for i, c in enumerate(letters):
            x[i], z[i] = _BITS[c]
            if c == "Y":
                phase = (phase + 1) % 4  # Y = i·XZ
        return cls(n, x=x, z=z, phase=phase)

    # -- group operations --------------------------------------------------

    def multiply(self, other: "PauliOperator") -> "PauliOperator":
        """Exact group product self * other."""
        if self.n != other.n:
            raise ValueError("operator sizes differ")
        # Moving Z^z1 through X^x2 gives (-1)^(z1·x2).
        swap = int(np.bitwise_and(self.z, other.x).sum()) % 2
        return PauliOperator(
            self.n,
            x=self.x ^ other.x,
            z=self.z ^ other.z,
            phase=(self.phase + other.phase + 2 * swap) % 4,
        )

    __mul__ = multiply

    def commutes(self, other: "PauliOperator") -> bool:
        """True iff the symplectic form x1·z2 + z1·x2 vanishes mod 2."""
        if self.n != other.n:
            raise ValueError("operator sizes differ")
        form = int(np.bitwise_and(self.x, other.z).sum() + np.bitwise_and(self.z, other.x).sum())
        return form % 2 == 0

    def adjoint(self) -> "PauliOperator":
        swap = int(np.bitwise_and(self.x, self.z).sum()) % 2
        return PauliOperator(self.n, x=self.x, z=self.z, phase=(-self.phase + 2 * swap) % 4)

    def is_hermitian(self) -> bool:
        return (self.phase - int(np.bitwise_and(self.x, self.z).sum())) % 2 == 0

    def is_identity(self) -> bool:
        return self.phase == 0 and not self.x.any() and not self.z.any()

    # -- inspection ----------------------------------------------------------

    def weight(self) -> int:
        return int(np.bitwise_or(self.x, self.z).sum())

    def support(self) -> set:
        return set(np.nonzero(self.x | self.z)[0].tolist())

    def pattern(self) -> np.ndarray:
        """Concatenated (x|z) bit-vector, the GF(2) symplectic pattern."""
        return np.concatenate([self.x, self.z])

    def key(self):
        """Hashable identity key (pattern plus phase)."""
        return (self.x.tobytes(), self.z.tobytes(), self.phase)

    def __eq__(self, other):
        return (
            isinstance(other, PauliOperator)
            and self.n == other.n
            and self.phase == other.phase
            and np.array_equal(self.x, other.x)
            and np.array_equal(self.z, other.z)
        )

    def __hash__(self):
        return hash(self.key())

    def to_string(self) -> str:
        """Render as sign prefix plus letters over {I,X,Y,Z}."""
        n_y = int(np.bitwise_and(self.x, self.z).sum())
        head = (self.phase - n_y) % 4
        prefix = {0: "+", 1: "i", 2: "-", 3: "-i"}[head]
        body = "".join(_LETTER[(int(a), int(b))] for a, b in zip(self.x, self.z))
        return prefix + body

    def __repr__(self):
        return f"PauliOperator({self.to_string()!r})"

    def dense(self) -> np.ndarray:
        """Dense matrix, built directly from the definition i^phase X^x Z^z.

        Intended for small n; complex128 output.
        """
        X = np.array([[0, 1], [1, 0]], dtype=complex)
        Z = np.array([[1, 0], [0, -1]], dtype=complex)
        out = np.array([[1]], dtype=complex)
        for a, b in zip(self.x, self.z):
            m = np.eye(2, dtype=complex)
            if a:
                m = m @ X
            if b:
                m = m @ Z
            out = np.kron(out, m)
        return (1j ** self.phase) * out


def hermitian_from_pattern(pattern) -> PauliOperator:
    """Canonical Hermitian representative of a symplectic pattern (x|z)."""
    pattern = np.asarray(pattern, dtype=np.uint8) & 1
    n = pattern.size // 2
    x, z = pattern[:n], pattern[n:]
    return PauliOperator(n, x=x, z=z, phase=int(np.bitwise_and(x, z).sum()) % 2)


def product(ops, n=None) -> PauliOperator:
    """Exact product of a sequence of PauliOperators (left to right)."""
    ops = list(ops)
    if not ops:
        if n is None:
            raise ValueError("empty product needs n")
        return PauliOperator.identity(n)
    out = ops[0]
    for op in ops[1:]:
        out = out.multiply(op)
    return out

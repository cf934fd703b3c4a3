"""Shared oracles and random generators for the test suite.

Oracles here deliberately avoid the library's own code paths: the partial
trace works on reshaped axes, Bloch maps come from Pauli traces over raw
Kraus sums, and unitaries are drawn via QR with a column phase fix.
"""

import numpy as np

from qsdiag import DensityMatrix, PureState

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SX, SY, SZ)


def random_density(gen, n_qubits=1) -> DensityMatrix:
    d = 2 ** n_qubits
    g = gen.normal(size=(d, d)) + 1j * gen.normal(size=(d, d))
    m = g @ g.conj().T
    return DensityMatrix(m / m.trace())


def random_pure(gen, n_qubits=1) -> PureState:
    v = gen.normal(size=2 ** n_qubits) + 1j * gen.normal(size=2 ** n_qubits)
    return PureState(v / np.linalg.norm(v))


def random_unitary(gen, dim: int) -> np.ndarray:
    g = gen.normal(size=(dim, dim)) + 1j * gen.normal(size=(dim, dim))
    q, r = np.linalg.qr(g)
    d = np.diag(r)
    return q * (d / np.abs(d))


def partial_trace_oracle(matrix, n_qubits: int, traced) -> np.ndarray:
    """Reshape-and-trace reference implementation (axis bookkeeping only)."""
    arr = np.asarray(matrix, dtype=complex).reshape([2] * (2 * n_qubits))
    k = n_qubits
    for q in sorted(traced, reverse=True):
        arr = np.trace(arr, axis1=k - 1 - q, axis2=2 * k - 1 - q)
        k -= 1
    return arr.reshape(2 ** k, 2 ** k)


def kraus_apply_raw(operators, matrix) -> np.ndarray:
    out = np.zeros_like(np.asarray(matrix, dtype=complex))
    for f in operators:
        out += f @ matrix @ f.conj().T
    return out


def affine_oracle(operators):
    """Bloch map (M, c) from Pauli traces over the raw Kraus sum."""
    c = np.array([
        0.5 * np.trace(p @ kraus_apply_raw(operators, np.eye(2))).real
        for p in PAULIS
    ])
    m = np.array([
        [0.5 * np.trace(PAULIS[i] @ kraus_apply_raw(operators, PAULIS[j])).real
         for j in range(3)]
        for i in range(3)
    ])
    return m, c

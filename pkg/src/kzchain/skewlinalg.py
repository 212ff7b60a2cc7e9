"""Dense complex skew-symmetric linear algebra for kink observables.

Expectation values of products of fermionic kink operators in a Gaussian
state are Pfaffians of skew-symmetric matrices filled with the quadratic
correlators.  The Pfaffian is evaluated by Parlett-Reid tridiagonalization
with partial pivoting, accumulating log-magnitude and phase separately so
that exponentially small probabilities (large-L emptiness) do not
underflow.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

SKEW_TOL = 1e-12


@dataclass(frozen=True)
class LogComplex:
    """A complex number stored as (log|z|, z/|z|); exact zero allowed."""

    log_abs: float
    phase: complex

    @property
    def value(self) -> complex:
        if self.log_abs == -np.inf:
            return 0.0 + 0.0j
        return self.phase * np.exp(self.log_abs)

    @property
    def log10_abs(self) -> float:
        return self.log_abs / np.log(10.0)

    def scaled(self, factor: complex) -> "LogComplex":
        if factor == 0:
            return LogComplex(-np.inf, 0.0 + 0.0j)
        mag = abs(factor)
        return LogComplex(self.log_abs + np.log(mag), self.phase * factor / mag)

    @classmethod
    def zero(cls) -> "LogComplex":
        return cls(-np.inf, 0.0 + 0.0j)

    @classmethod
    def from_value(cls, z: complex) -> "LogComplex":
        if z == 0:
            return cls.zero()
        return cls(float(np.log(abs(z))), z / abs(z))


@dataclass(frozen=True)
class SkewMatrix:
    """Dense complex skew-symmetric matrix, with an optional sign prefactor.

    The prefactor carries the reordering sign (-1)^(M(M-1)/2) that relates
    block-arranged operator matrices to the natural operator ordering of
    the observable they encode.
    """

    mat: np.ndarray = field(repr=False)
    prefactor: float = 1.0

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    @classmethod
    def from_dense(cls, mat, prefactor: float = 1.0,
                   tol: float = SKEW_TOL) -> "SkewMatrix":
        """Antisymmetrize input within tolerance; reject anything worse."""
        mat = np.asarray(mat, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError("skew matrix must be square")
        scale = max(1.0, float(np.max(np.abs(mat))) if mat.size else 1.0)
        dev = float(np.max(np.abs(mat + mat.T))) if mat.size else 0.0
        if dev > tol * scale:
            raise ValueError(
                f"matrix is not skew-symmetric: max|M + M^T| = {dev:.3e}"
            )
        return cls(mat=0.5 * (mat - mat.T), prefactor=prefactor)


def pfaffian_log(m) -> LogComplex:
    """Pfaffian via Parlett-Reid tridiagonalization with partial pivoting.

    Returns the log representation; odd dimension gives an exact zero by
    convention.  O(n^3), and Pf^2 = Det by construction of the algorithm.
    """
    if isinstance(m, SkewMatrix):
        a = m.mat.astype(complex, copy=True)
    else:
        a = SkewMatrix.from_dense(m).mat.astype(complex, copy=True)
    n = a.shape[0]
    if n == 0:
        return LogComplex.from_value(1.0)
    if n % 2 == 1:
        return LogComplex.zero()
    log_abs = 0.0
    phase = 1.0 + 0.0j
    for j in range(0, n - 1, 2):
        pivot_row = j + 1 + int(np.argmax(np.abs(a[j + 1:, j])))
        if a[pivot_row, j] == 0.0:
            return LogComplex.zero()
        if pivot_row != j + 1:
            a[[j + 1, pivot_row], j:] = a[[pivot_row, j + 1], j:]
            a[j:, [j + 1, pivot_row]] = a[j:, [pivot_row, j + 1]]
            phase = -phase
        factor = a[j, j + 1]
        log_abs += np.log(abs(factor))
        phase *= factor / abs(factor)
        if j + 2 < n:
            tau = a[j, j + 2:] / a[j, j + 1]
            col = a[j + 2:, j + 1]
            a[j + 2:, j + 2:] += np.outer(tau, col)
            a[j + 2:, j + 2:] -= np.outer(col, tau)
    return LogComplex(log_abs, phase)


def pfaffian(m) -> complex:
    """Pfaffian as a plain complex number (may underflow for huge matrices)."""
    return pfaffian_log(m).value


def evaluate(m: SkewMatrix) -> LogComplex:
    """prefactor * Pf(M) in log representation."""
    return pfaffian_log(m).scaled(m.prefactor)


# -- Wick assembly -------------------------------------------------------

DAG = True
ANN = False


def contraction(table, op_a, op_b) -> complex:
    """Two-operator expectation <G_a G_b> from a correlator table.

    Operators are (bond position, is_creation) pairs; positions differ by
    integers.  Covers all four creation/annihilation combinations.
    """
    (pos_a, dag_a), (pos_b, dag_b) = op_a, op_b
    d = round(pos_a - pos_b)
    if dag_a and dag_b:
        return np.conj(table.anomalous(-d))
    if dag_a and not dag_b:
        return complex(table.normal(d))
    if not dag_a and dag_b:
        return (1.0 if d == 0 else 0.0) - table.normal(d)
    return table.anomalous(d)


def wick_matrix(table, ops, prefactor: float = 1.0) -> SkewMatrix:
    """Skew matrix M_ij = <G_i G_j> (i < j) for an ordered operator list."""
    n = len(ops)
    mat = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(i + 1, n):
            mat[i, j] = contraction(table, ops[i], ops[j])
    mat = mat - mat.T
    return SkewMatrix(mat=mat, prefactor=prefactor)


def reorder_sign(m: int) -> float:
    """Sign relating interleaved and block operator orderings."""
    return -1.0 if (m * (m - 1) // 2) % 2 else 1.0


def assemble_mkink(table, positions) -> SkewMatrix:
    """Block matrix whose Pfaffian gives the M-kink correlator.

    Positions are distinct half-integer bond labels; the creation block
    comes first and the reordering sign (-1)^(M(M-1)/2) rides along as the
    prefactor.
    """
    positions = [float(p) for p in positions]
    if len(set(positions)) != len(positions):
        raise ValueError("kink positions must be distinct")
    m = len(positions)
    ops = [(p, DAG) for p in positions] + [(p, ANN) for p in positions]
    mat = np.zeros((2 * m, 2 * m), dtype=complex)
    for i in range(2 * m):
        for j in range(i + 1, 2 * m):
            mat[i, j] = contraction(table, ops[i], ops[j])
    mat = mat - mat.T
    return SkewMatrix(mat=mat, prefactor=reorder_sign(m))


def assemble_domain(table, length: int) -> SkewMatrix:
    """Matrix whose Pfaffian equals rho * P_L for domain size ``length``.

    Encodes a kink on the first and last bond and empty bonds in between,
    in the operator ordering that makes the Pfaffian the expectation value
    directly (prefactor 1).
    """
    if length < 1:
        raise ValueError("domain length must be >= 1")
    if length > table.r_max:
        raise ValueError(
            f"domain length {length} exceeds table range r_max={table.r_max}"
        )
    ops = [(0.5, DAG), (0.5, ANN)]
    for bond in range(1, length):
        ops += [(bond + 0.5, ANN), (bond + 0.5, DAG)]
    ops += [(length + 0.5, DAG), (length + 0.5, ANN)]
    return wick_matrix(table, ops)


def assemble_efp(table, length: int) -> SkewMatrix:
    """Block Toeplitz matrix whose Pfaffian gives the emptiness probability.

    E_L = (-1)^(L(L-1)/2) Pf T = sqrt(Det T) for no kinks on L consecutive
    bonds; with the anomalous block suppressed E_L reduces to
    Det(1 - N~).
    """
    if length < 1:
        raise ValueError("emptiness length must be >= 1")
    if length - 1 > table.r_max:
        raise ValueError(
            f"emptiness length {length} exceeds table range r_max={table.r_max}"
        )
    d = np.arange(length)
    diff = d[:, None] - d[None, :]
    delta_blk = np.zeros((length, length), dtype=complex)
    pos = diff > 0
    delta_blk[pos] = np.array([table.anomalous(v) for v in diff[pos]])
    delta_blk[diff < 0] = -delta_blk.T[diff < 0]
    n_blk = np.array([[table.normal(v) for v in row] for row in diff])
    eye = np.eye(length)
    mat = np.block([[delta_blk, eye - n_blk], [n_blk - eye, delta_blk.conj().T]])
    return SkewMatrix(mat=mat, prefactor=reorder_sign(length))

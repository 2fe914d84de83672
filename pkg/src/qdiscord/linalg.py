"""Dense kernels for 2x2 and 4x4 Hermitian operators.

Operators are plain ``numpy`` complex arrays. Two-qubit operators use the
``A (x) B`` ordering with A's index major, so basis index ``2*a + b``.
Entropies are in bits throughout.
"""

import math

import numpy as np

from ._kernels import jacobi_eigenvalues
from .errors import InvalidArgumentError, NotAStateError

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-9
PSD_TOL = 1e-10
ENTROPY_NEG_TOL = 1e-8

I2 = np.eye(2, dtype=np.complex128)
I4 = np.eye(4, dtype=np.complex128)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
#: Pauli operators indexed 0..3 (identity, x, y, z).
PAULI = (I2, SIGMA_X, SIGMA_Y, SIGMA_Z)

for _m in PAULI:
    _m.setflags(write=False)


def as_operator(m, dims=(2, 4)):
    """Coerce ``m`` to a square complex array of an allowed dimension."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] not in dims:
        raise InvalidArgumentError(f"expected a square matrix of size {dims}, got shape {a.shape}")
    return a


def dagger(m):
    return np.conj(np.swapaxes(m, -1, -2))


def is_hermitian(m, tol=HERMITIAN_TOL):
    return bool(np.max(np.abs(m - dagger(m))) <= tol)


def tensor(a, b):
    """Kronecker product of two single-qubit operators (A major)."""
    a = as_operator(a, dims=(2,))
    b = as_operator(b, dims=(2,))
    return np.kron(a, b)


def partial_trace(rho, keep, validate=True):
    """Reduced operator of a two-qubit ``rho`` on subsystem ``keep`` ('A' or 'B').

    With ``validate`` the input must have unit trace (to 1e-9); pass
    ``validate=False`` to trace out arbitrary 4x4 operators.
    """
    rho = as_operator(rho, dims=(4,))
    if validate:
        tr = np.trace(rho).real
        if abs(tr - 1.0) > TRACE_TOL:
            raise NotAStateError(f"trace is {tr!r}, expected 1")
    r = rho.reshape(2, 2, 2, 2)
    if keep == "A":
        return np.einsum("ijkj->ik", r)
    if keep == "B":
        return np.einsum("ijil->jl", r)
    raise InvalidArgumentError(f"keep must be 'A' or 'B', got {keep!r}")


def _eig2(m):
    a, d = m[0, 0].real, m[1, 1].real
    half = 0.5 * (a + d)
    r = math.hypot(0.5 * (a - d), abs(m[0, 1]))
    return np.array([half + r, half - r])


def hermitian_eigenvalues(m):
    """Real eigenvalues of a 2x2 or 4x4 Hermitian matrix, descending.

    2x2 uses the closed form; 4x4 uses cyclic complex Jacobi rotations.
    """
    m = as_operator(m)
    if not is_hermitian(m):
        raise InvalidArgumentError("matrix is not Hermitian within 1e-12")
    if m.shape[0] == 2:
        return _eig2(m)
    return jacobi_eigenvalues(m)[0]


def shannon_entropy(probs):
    """Shannon entropy in bits, with 0 log 0 = 0."""
    p = np.asarray(probs, dtype=float)
    nz = p[p > 0.0]
    return float(-np.sum(nz * np.log2(nz)))


def binary_entropy(x):
    return shannon_entropy((x, 1.0 - x))


def von_neumann_entropy(m):
    """S(m) = -Tr m log2 m for a density matrix.

    Eigenvalues in [-1e-8, 0) are treated as rounding and clamped to zero.
    """
    ev = hermitian_eigenvalues(m)
    if ev[-1] < -ENTROPY_NEG_TOL:
        raise NotAStateError(f"negative eigenvalue {ev[-1]:.3e}")
    return shannon_entropy(np.clip(ev, 0.0, None))


def validate_density_matrix(rho):
    """Return ``rho`` as an array after checking Hermiticity, trace and positivity."""
    rho = as_operator(rho)
    if not is_hermitian(rho):
        raise NotAStateError("density matrix is not Hermitian within 1e-12")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > TRACE_TOL:
        raise NotAStateError(f"trace is {tr!r}, expected 1")
    low = hermitian_eigenvalues(rho)[-1]
    if low < -PSD_TOL:
        raise NotAStateError(f"negative eigenvalue {low:.3e}")
    return rho

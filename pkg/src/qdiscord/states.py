"""Two-qubit states with maximally mixed marginals (Bell-diagonal states).

A state is fixed by three correlation coefficients ``c_i = Tr[rho s_i(x)s_i]``:

    rho = (1 + c1 X(x)X + c2 Y(x)Y + c3 Z(x)Z) / 4
"""

from dataclasses import dataclass

import numpy as np

from .errors import BellShapeError, InvalidArgumentError, NotAStateError
from .linalg import PAULI, as_operator

PHYSICAL_TOL = 1e-12
BELL_RESIDUAL_TOL = 1e-9

_CORR = [np.kron(PAULI[i], PAULI[i]) for i in (1, 2, 3)]
# Pauli-basis operators s_i (x) s_j, used to detect stray components
_PAULI_PAIRS = {(i, j): np.kron(PAULI[i], PAULI[j]) for i in range(4) for j in range(4)}


def bell_spectrum(a, b, c):
    """The four eigenvalues of a Bell-diagonal state with coefficients (a, b, c).

    Order: (1-a-b-c, 1-a+b+c, 1+a-b+c, 1+a+b-c) / 4.
    """
    return 0.25 * np.array([1 - a - b - c, 1 - a + b + c, 1 + a - b + c, 1 + a + b - c])


@dataclass(frozen=True)
class BellVector:
    """Coefficients ``(c1, c2, c3)`` of a Bell-diagonal state."""

    c1: float
    c2: float
    c3: float

    def __post_init__(self):
        for name in ("c1", "c2", "c3"):
            v = float(getattr(self, name))
            if not np.isfinite(v) or abs(v) > 1.0 + PHYSICAL_TOL:
                raise NotAStateError(f"{name}={v!r} outside [-1, 1]")
            object.__setattr__(self, name, v)

    @classmethod
    def parse(cls, text):
        """Parse the ``c1,c2,c3`` text form."""
        parts = [s.strip() for s in str(text).split(",")]
        if len(parts) != 3:
            raise InvalidArgumentError(f"expected 'c1,c2,c3', got {text!r}")
        try:
            values = [float(s) for s in parts]
        except ValueError as exc:
            raise InvalidArgumentError(f"bad coefficient in {text!r}: {exc}") from None
        return cls(*values)

    def __str__(self):
        return f"{self.c1:.9g},{self.c2:.9g},{self.c3:.9g}"

    def as_tuple(self):
        return (self.c1, self.c2, self.c3)

    def as_array(self):
        return np.array(self.as_tuple())

    def spectrum(self):
        return bell_spectrum(*self.as_tuple())

    def is_physical(self):
        return bool(self.spectrum().min() >= -PHYSICAL_TOL)

    def swapped(self, i, j):
        """Copy with 1-based coefficient indices ``i`` and ``j`` exchanged."""
        c = list(self.as_tuple())
        c[i - 1], c[j - 1] = c[j - 1], c[i - 1]
        return BellVector(*c)


@dataclass(frozen=True)
class EvolvedCoefficients:
    """Coefficient triple (alpha, beta, gamma) of a Bell-diagonal state after a channel."""

    alpha: float
    beta: float
    gamma: float

    def as_tuple(self):
        return (self.alpha, self.beta, self.gamma)

    def as_bell_vector(self):
        return BellVector(self.alpha, self.beta, self.gamma)


def _coeffs(c):
    if isinstance(c, BellVector):
        return c.as_tuple()
    if isinstance(c, EvolvedCoefficients):
        return c.as_tuple()
    return BellVector(*c).as_tuple()


def check_physical(c):
    """Raise :class:`NotAStateError` unless every Bell eigenvalue is >= -1e-12."""
    lam = bell_spectrum(*_coeffs(c))
    k = int(np.argmin(lam))
    if lam[k] < -PHYSICAL_TOL:
        raise NotAStateError(
            f"coefficients {tuple(_coeffs(c))} are unphysical: eigenvalue lambda_{k + 1} = {lam[k]:.6g} < 0"
        )
    return c


def spectrum_from_coefficients(e):
    """Eigenvalues of the state with evolved coefficients ``e``, in closed form.

    Returned in the fixed order of :func:`bell_spectrum`, not sorted.
    """
    a, b, g = _coeffs(e)
    for v in (a, b, g):
        if abs(v) > 1.0 + PHYSICAL_TOL:
            raise InvalidArgumentError(f"coefficient {v!r} outside [-1, 1]")
    check_physical((a, b, g))
    return bell_spectrum(a, b, g)


def bell_state_matrix(c):
    """Density matrix of the Bell-diagonal state with coefficients ``c``."""
    c1, c2, c3 = _coeffs(check_physical(c))
    rho = np.eye(4, dtype=np.complex128) + c1 * _CORR[0] + c2 * _CORR[1] + c3 * _CORR[2]
    return 0.25 * rho


def pauli_components(rho):
    """All 16 components ``Tr[rho s_i(x)s_j]`` as a 4x4 real array."""
    rho = as_operator(rho, dims=(4,))
    out = np.empty((4, 4))
    for (i, j), op in _PAULI_PAIRS.items():
        out[i, j] = np.trace(rho @ op).real
    return out


def coefficients_from_matrix(rho, tol=BELL_RESIDUAL_TOL):
    """Recover ``(c1, c2, c3)`` from a Bell-diagonal density matrix.

    Raises :class:`BellShapeError` if any other Pauli component (including
    the imaginary part of the diagonal ones, or a trace deviation) exceeds
    ``tol``.
    """
    rho = as_operator(rho, dims=(4,))
    comps = pauli_components(rho)
    stray = comps.copy()
    stray[0, 0] -= 1.0
    for i in (1, 2, 3):
        stray[i, i] = 0.0
    imag = np.array([np.trace(rho @ _CORR[i]).imag for i in range(3)])
    worst = np.unravel_index(np.argmax(np.abs(stray)), stray.shape)
    residual = max(abs(stray[worst]), float(np.max(np.abs(imag))))
    if residual > tol:
        raise BellShapeError(
            f"not Bell-diagonal: largest stray component {residual:.3e} "
            f"(Pauli pair {worst[0]}{worst[1]})"
        )
    return BellVector(comps[1, 1], comps[2, 2], comps[3, 3])


def random_bell_vectors(rng, n):
    """``n`` BellVectors uniform on the physical tetrahedron (rejection from the cube)."""
    out = []
    while len(out) < n:
        c = rng.uniform(-1.0, 1.0, size=(2 * (n - len(out)) + 8, 3))
        lam = np.stack([bell_spectrum(*row) for row in c])
        for row in c[lam.min(axis=1) >= 0.0]:
            if len(out) == n:
                break
            out.append(BellVector(*row))
    return out

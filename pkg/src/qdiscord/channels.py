"""Local flip channels acting identically on both qubits.

Each channel keeps one Pauli axis and damps the other two by ``(1-p)**2``
when applied to both sides. ``p`` in [0, 1] is the canonical evolution
parameter; :func:`p_from_time` maps physical time onto it.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError
from .linalg import I2, PAULI, dagger, validate_density_matrix
from .states import EvolvedCoefficients, _coeffs, check_physical


class ChannelKind(enum.Enum):
    PHASE_FLIP = "phase-flip"
    BIT_FLIP = "bit-flip"
    BIT_PHASE_FLIP = "bit-phase-flip"

    @property
    def flip_axis(self):
        """Pauli index of the error operator; also the axis the channel preserves."""
        return _FLIP_AXIS[self]

    @property
    def damped_axes(self):
        return tuple(i for i in (1, 2, 3) if i != self.flip_axis)

    @classmethod
    def parse(cls, name):
        try:
            return cls(name)
        except ValueError:
            choices = ", ".join(k.value for k in cls)
            raise InvalidArgumentError(f"unknown channel {name!r} (choose from {choices})") from None

    @classmethod
    def preserving(cls, axis):
        """The channel whose preserved axis is ``axis`` (1, 2 or 3)."""
        for kind in cls:
            if kind.flip_axis == axis:
                return kind
        raise InvalidArgumentError(f"axis must be 1, 2 or 3, got {axis!r}")

    def __str__(self):
        return self.value


_FLIP_AXIS = {
    ChannelKind.BIT_FLIP: 1,
    ChannelKind.BIT_PHASE_FLIP: 2,
    ChannelKind.PHASE_FLIP: 3,
}


@dataclass(frozen=True)
class KrausSet:
    label: ChannelKind
    side: str
    p: float
    operators: tuple

    def completeness_error(self):
        """max |sum_k G_k^dag G_k - 1| over all entries."""
        total = sum(dagger(g) @ g for g in self.operators)
        return float(np.max(np.abs(total - np.eye(total.shape[0]))))


def _check_p(p):
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise InvalidArgumentError(f"p={p!r} outside [0, 1]")
    return p


def _embed(op, side):
    if side == "A":
        return np.kron(op, I2)
    if side == "B":
        return np.kron(I2, op)
    raise InvalidArgumentError(f"side must be 'A' or 'B', got {side!r}")


def kraus_set(kind, side, p):
    """The two Kraus operators of ``kind`` acting on one side, as 4x4 matrices."""
    p = _check_p(p)
    kind = ChannelKind(kind)
    g0 = math.sqrt(1.0 - p / 2.0) * I2
    g1 = math.sqrt(p / 2.0) * PAULI[kind.flip_axis]
    return KrausSet(kind, side, p, (_embed(g0, side), _embed(g1, side)))


def apply_kraus(rho, operators):
    """sum_k G rho G^dag for one Kraus set."""
    return sum(g @ rho @ dagger(g) for g in operators)


def apply_channel(rho, kind, p):
    """Apply the channel with the same strength ``p`` to both qubits.

    Evaluates the double operator sum sum_ij A_i B_j rho B_j^dag A_i^dag.
    """
    rho = validate_density_matrix(rho)
    if rho.shape != (4, 4):
        raise InvalidArgumentError("apply_channel expects a two-qubit density matrix")
    ka = kraus_set(kind, "A", p).operators
    kb = kraus_set(kind, "B", p).operators
    out = np.zeros((4, 4), dtype=np.complex128)
    for ga in ka:
        for gb in kb:
            k = ga @ gb
            out += k @ rho @ dagger(k)
    return validate_density_matrix(out)


def evolve_coefficients(c, kind, p):
    """Closed-form coefficients of the evolved Bell-diagonal state."""
    p = _check_p(p)
    kind = ChannelKind(kind)
    c = check_physical(c)
    decay = (1.0 - p) ** 2
    vals = list(_coeffs(c))
    for axis in kind.damped_axes:
        vals[axis - 1] *= decay
    return EvolvedCoefficients(*vals)


def p_from_time(t, rate):
    """Parametrised time ``p = 1 - exp(-rate * t)``."""
    t = float(t)
    rate = float(rate)
    if not t >= 0.0:
        raise InvalidArgumentError(f"time must be >= 0, got {t!r}")
    if not rate > 0.0:
        raise InvalidArgumentError(f"rate must be > 0, got {rate!r}")
    return -math.expm1(-rate * t)


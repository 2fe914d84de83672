"""Mutual information, classical correlation and discord.

Two independent routes are provided:

* a matrix route for arbitrary two-qubit density matrices, which extremizes
  the measured conditional entropy over projective measurements on B with an
  exhaustive (theta, phi) grid followed by golden-section refinement;
* a closed-form route for Bell-diagonal states, where the optimum depends
  only on the largest coefficient magnitude ``chi``.
"""

import functools
import math
from dataclasses import asdict, dataclass
from typing import NamedTuple

import numpy as np

from . import _kernels
from .errors import UnsupportedStateError
from .linalg import I2, partial_trace, shannon_entropy, validate_density_matrix, von_neumann_entropy
from .states import EvolvedCoefficients, _coeffs, check_physical, spectrum_from_coefficients

DEFAULT_GRID_N = 256
DEFAULT_REFINE_TOL = 1e-12
DEFAULT_MAX_ITER = 200
MARGINAL_TOL = 1e-9
ZERO_WEIGHT = 1e-14
NEG_TOL = 1e-10

#: Measurement angles attaining the optimum on each chi branch.
BRANCH_ANGLES = {3: (0.0, 0.0), 1: (math.pi / 4, 0.0), 2: (math.pi / 4, math.pi / 2)}
#: Order used to break ties between equal coefficient magnitudes.
BRANCH_PREFERENCE = (3, 1, 2)


@dataclass(frozen=True)
class MeasurementBasis:
    """Projective measurement along ``cos(theta)|0> + exp(i phi) sin(theta)|1>``."""

    theta: float
    phi: float

    def vectors(self):
        ct, st = math.cos(self.theta), math.sin(self.theta)
        e = complex(math.cos(self.phi), math.sin(self.phi))
        par = np.array([ct, e * st])
        perp = np.array([e.conjugate() * st, -ct])
        return par, perp

    def projectors(self):
        par, perp = self.vectors()
        return np.outer(par, par.conj()), np.outer(perp, perp.conj())

    def bloch_axis(self):
        s2 = math.sin(2 * self.theta)
        return np.array([s2 * math.cos(self.phi), s2 * math.sin(self.phi), math.cos(2 * self.theta)])

    @classmethod
    def canonical(cls, theta, phi):
        """Fold arbitrary angles onto theta in [0, pi/2], phi in [0, pi).

        The projector pair only depends on the Bloch axis up to sign, so
        every measurement has a representative in this patch.
        """
        s2 = math.sin(2 * theta)
        nx, ny, nz = s2 * math.cos(phi), s2 * math.sin(phi), math.cos(2 * theta)
        polar = math.acos(max(-1.0, min(1.0, nz)))
        if math.hypot(nx, ny) < 1e-15:
            return cls(polar / 2, 0.0)
        az = math.atan2(ny, nx) % (2 * math.pi)
        if az >= math.pi:
            az -= math.pi
            polar = math.pi - polar
        if az > math.pi - 1e-12:
            az -= math.pi
            polar = math.pi - polar
        return cls(polar / 2, max(az, 0.0))


class ConditionalSpectrum(NamedTuple):
    xi1: float
    xi2: float
    q_par: float
    q_perp: float


@dataclass(frozen=True)
class CorrelationRecord:
    """Correlations of one state; all information quantities in bits."""

    p: float
    C: float
    Q: float
    I: float  # noqa: E741
    chi: float
    theta_opt: float
    phi_opt: float
    branch: int

    def as_dict(self):
        return asdict(self)


class NumericCorrelations(NamedTuple):
    C: float
    Q: float
    I: float  # noqa: E741
    basis: MeasurementBasis


# ---------------------------------------------------------------------------
# matrix route


def mutual_information(rho):
    """I = S(rho_A) + S(rho_B) - S(rho)."""
    rho = validate_density_matrix(rho)
    total = (
        von_neumann_entropy(partial_trace(rho, "A"))
        + von_neumann_entropy(partial_trace(rho, "B"))
        - von_neumann_entropy(rho)
    )
    return max(total, 0.0) if total > -NEG_TOL else total


def conditional_entropy(rho, basis):
    """sum_j q_j S(rho_A^j) after the projective measurement ``basis`` on B."""
    rho = validate_density_matrix(rho)
    total = 0.0
    for proj in basis.projectors():
        big = np.kron(I2, proj)
        post = big @ rho @ big
        q = np.trace(post).real
        if q < ZERO_WEIGHT:
            continue
        total += q * von_neumann_entropy(partial_trace(post / q, "A"))
    return total


@functools.lru_cache(maxsize=8)
def _angle_grid(grid_n):
    thetas = np.linspace(0.0, math.pi / 2, grid_n)
    phis = np.arange(grid_n) * (math.pi / grid_n)
    arrays = (thetas, phis) + _kernels.projector_grid(thetas, phis)
    for a in arrays:
        a.setflags(write=False)
    return arrays


def _has_maximally_mixed_marginals(rho):
    half = 0.5 * I2
    return all(np.max(np.abs(partial_trace(rho, side) - half)) <= MARGINAL_TOL for side in "AB")


def classical_correlation_numeric(
    rho,
    grid_n=DEFAULT_GRID_N,
    refine_tol=DEFAULT_REFINE_TOL,
    *,
    general=False,
    max_iter=DEFAULT_MAX_ITER,
):
    """Classical correlation by direct maximization over measurements on B.

    Scans a ``grid_n x grid_n`` mesh of theta in [0, pi/2], phi in [0, pi),
    then polishes the best cell with alternating golden-section line
    searches until the entropy improves by less than ``refine_tol``.
    Ties on the mesh go to the lowest (theta, phi) index.

    By default the state must have maximally mixed marginals, so that
    ``S(rho_A) = 1``. With ``general=True`` any state is accepted and
    ``S(rho_A)`` is computed explicitly.

    Returns ``(value, basis)``.
    """
    rho = validate_density_matrix(rho)
    if grid_n < 32:
        raise ValueError(f"grid_n must be >= 32, got {grid_n}")
    if general:
        s_a = von_neumann_entropy(partial_trace(rho, "A"))
    elif _has_maximally_mixed_marginals(rho):
        s_a = 1.0
    else:
        raise UnsupportedStateError(
            "marginals are not maximally mixed; call with general=True to use S(rho_A) explicitly"
        )

    thetas, phis, pi00, pi11, pi10 = _angle_grid(grid_n)
    values = _kernels.grid_conditional_entropy(rho, pi00, pi11, pi10)
    k = int(np.argmin(values))
    i, j = divmod(k, grid_n)
    width_theta = 2.0 * (thetas[1] - thetas[0])
    width_phi = 2.0 * (phis[1] - phis[0])
    theta, phi, best, _ = _kernels.refine_minimum(
        rho, thetas[i], phis[j], width_theta, width_phi, refine_tol, max_iter
    )
    if best > values[k]:
        theta, phi, best = thetas[i], phis[j], values[k]
    return max(s_a - best, 0.0), MeasurementBasis.canonical(theta, phi)


def numeric_correlations(rho, grid_n=DEFAULT_GRID_N, refine_tol=DEFAULT_REFINE_TOL, *, general=False):
    """C, Q and I of an arbitrary two-qubit state through the matrix route."""
    rho = validate_density_matrix(rho)
    c, basis = classical_correlation_numeric(rho, grid_n, refine_tol, general=general)
    i = mutual_information(rho)
    return NumericCorrelations(c, i - c, i, basis)


# ---------------------------------------------------------------------------
# closed forms for Bell-diagonal states


def conditional_spectrum_analytic(e, basis):
    """Eigenvalues of A's post-measurement state for a Bell-diagonal state.

    Both outcomes occur with probability 1/2 and leave A with the same
    spectrum.
    """
    a, b, g = _coeffs(check_physical(e))
    a2, b2, g2 = a * a, b * b, g * g
    th, ph = basis.theta, basis.phi
    radicand = (
        2 * g2
        + a2
        + b2
        + (2 * g2 - a2 - b2) * math.cos(4 * th)
        + 2 * (a2 - b2) * math.cos(2 * ph) * math.sin(2 * th) ** 2
    )
    if radicand < 0.0:
        if radicand < -1e-14:
            raise ArithmeticError(f"negative radicand {radicand!r} in conditional spectrum")
        radicand = 0.0
    root = math.sqrt(radicand)
    return ConditionalSpectrum((2 + root) / 4, (2 - root) / 4, 0.5, 0.5)


def chi_and_branch(e):
    """Largest coefficient magnitude and the axis (1, 2 or 3) that attains it.

    Ties prefer axis 3, then 1, then 2.
    """
    mags = dict(zip((1, 2, 3), (abs(v) for v in _coeffs(e))))
    chi = max(mags.values())
    branch = next(axis for axis in BRANCH_PREFERENCE if mags[axis] == chi)
    return chi, branch


def _chi_term(x):
    return 0.0 if x <= 0.0 else 0.5 * x * math.log2(x)


def classical_correlation_analytic(e):
    """Closed-form classical correlation; returns ``(value, chi, branch)``."""
    chi, branch = chi_and_branch(e)
    value = _chi_term(1.0 - chi) + _chi_term(1.0 + chi)
    return value, chi, branch


def mutual_information_analytic(e):
    """2 - S for a Bell-diagonal state (both marginal entropies are 1)."""
    return 2.0 - shannon_entropy(np.clip(spectrum_from_coefficients(e), 0.0, None))


def quantum_discord_analytic(e):
    q = mutual_information_analytic(e) - classical_correlation_analytic(e)[0]
    if q < -NEG_TOL:
        raise ArithmeticError(f"closed-form discord is negative: {q!r}")
    return max(q, 0.0)


def analytic_record(e, p=float("nan")):
    """CorrelationRecord of the Bell-diagonal state with coefficients ``e``."""
    if not isinstance(e, EvolvedCoefficients):
        e = EvolvedCoefficients(*_coeffs(e))
    c, chi, branch = classical_correlation_analytic(e)
    q = quantum_discord_analytic(e)
    theta, phi = BRANCH_ANGLES[branch]
    return CorrelationRecord(float(p), c, q, c + q, chi, theta, phi, branch)

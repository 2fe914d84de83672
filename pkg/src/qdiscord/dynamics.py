"""Correlation dynamics under the flip channels.

Regime classification, the sudden-change time, the commutation test for
correlation-preserving measurements, p-sweeps, p_sc surfaces and the
extremization-free discord.
"""

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .channels import ChannelKind, evolve_coefficients, kraus_set
from .correlations import (
    analytic_record,
    chi_and_branch,
    classical_correlation_numeric,
    mutual_information_analytic,
)
from .errors import InvalidArgumentError
from .linalg import I2
from .states import PHYSICAL_TOL, BellVector, bell_spectrum, bell_state_matrix, check_physical

COMMUTATOR_TOL = 1e-12
CROSSING_ZERO_TOL = 1e-12


@dataclass(frozen=True)
class RegimeReport:
    regime: str
    p_sc: Optional[float]
    constant_axis: Optional[int]
    description: str


@dataclass
class SweepResult:
    channel: ChannelKind
    state: BellVector
    samples: list
    crossings: list
    p_sc_detected: Optional[float]
    p_sc: Optional[float] = None
    regime: Optional[str] = None

    def column(self, name):
        return np.array([getattr(r, name) for r in self.samples])


@dataclass
class SurfaceResult:
    channel: ChannelKind
    fixed_value: float
    axes: tuple
    values_a: np.ndarray
    values_b: np.ndarray
    p_sc: np.ndarray
    flags: np.ndarray = field(repr=False)

    def rows(self):
        for i, a in enumerate(self.values_a):
            for j, b in enumerate(self.values_b):
                yield float(a), float(b), float(self.p_sc[i, j]), str(self.flags[i, j])


class OperationalDiscord(NamedTuple):
    Q: float
    C: float
    channel: ChannelKind
    discrepancy: Optional[float] = None


def _split(c, kind):
    """|c| on the preserved axis and the largest |c| on the damped axes."""
    vals = check_physical(c).as_tuple() if isinstance(c, BellVector) else BellVector(*c).as_tuple()
    kind = ChannelKind(kind)
    kept = abs(vals[kind.flip_axis - 1])
    damped = max(abs(vals[i - 1]) for i in kind.damped_axes)
    return kept, damped


def sudden_change_value(c, kind):
    """Closed-form p_sc clipped to [0, 1].

    0 means the preserved axis already dominates; 1 means it is zero and
    C never freezes. Neither endpoint is an actual sudden change.
    """
    kept, damped = _split(c, kind)
    if kept >= damped:
        return 0.0
    if kept == 0.0:
        return 1.0
    return 1.0 - math.sqrt(kept / damped)


def sudden_change_time(c, kind):
    """p at which C switches branch and freezes, or None if it never does."""
    value = sudden_change_value(c, kind)
    return value if 0.0 < value < 1.0 else None


def classify_regime(c, kind):
    kind = ChannelKind(kind)
    kept, damped = _split(c, kind)
    axis = kind.flip_axis
    if kept == 0.0 and damped > 0.0:
        return RegimeReport(
            "iii", None, None, f"c{axis} = 0: C and Q both decay monotonically under {kind}"
        )
    if kept >= damped:
        return RegimeReport(
            "i", None, axis, f"|c{axis}| dominates: C is constant and Q decays under {kind}"
        )
    p_sc = 1.0 - math.sqrt(kept / damped)
    return RegimeReport(
        "ii",
        p_sc,
        None,
        f"C decays until p_sc = {p_sc:.6g} and is constant afterwards; Q changes decay rate there",
    )


def commutator_norm(basis, kind, p=0.5):
    """Largest entry of [Pi_j, G_k] over both projectors and B-side Kraus operators."""
    ops = kraus_set(kind, "B", p).operators
    worst = 0.0
    for proj in basis.projectors():
        big = np.kron(I2, proj)
        for g in ops:
            worst = max(worst, float(np.max(np.abs(big @ g - g @ big))))
    return worst


def commutation_condition(basis, kind, p=0.5):
    """True when the measurement commutes with every B-side Kraus operator."""
    return commutator_norm(basis, kind, p) <= COMMUTATOR_TOL


def operational_discord(c, verify=False, grid_n=256):
    """Discord and classical correlation without any extremization.

    The state is fully decohered by the flip channel that preserves its
    dominant axis (ties: 3, then 1, then 2); the mutual information left at
    p = 1 is the classical correlation. With ``verify`` the classical
    correlation is also maximized numerically and the absolute difference is
    returned as ``discrepancy``.
    """
    c = check_physical(c if isinstance(c, BellVector) else BellVector(*c))
    _, axis = chi_and_branch(c)
    kind = ChannelKind.preserving(axis)
    total = mutual_information_analytic(c)
    classical = mutual_information_analytic(evolve_coefficients(c, kind, 1.0))
    quantum = max(total - classical, 0.0)
    discrepancy = None
    if verify:
        numeric, _ = classical_correlation_numeric(bell_state_matrix(c), grid_n)
        discrepancy = abs(numeric - classical)
    return OperationalDiscord(quantum, classical, kind, discrepancy)


def grid_values(start, stop, step):
    """Inclusive arithmetic grid start, start+step, ... <= stop.

    A step longer than the range yields just ``[start]``.
    """
    start, stop, step = float(start), float(stop), float(step)
    if not step > 0.0:
        raise InvalidArgumentError(f"step must be > 0, got {step!r}")
    if start > stop:
        raise InvalidArgumentError(f"start {start!r} exceeds stop {stop!r}")
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    vals = np.round(start + step * np.arange(n), 12)
    return np.minimum(vals, stop)


def find_crossings(p, diff, zero_tol=CROSSING_ZERO_TOL):
    """Locations where ``diff`` changes sign, by linear interpolation.

    Samples with |diff| <= zero_tol carry no sign and are bridged over.
    """
    out = []
    last = None
    for k, d in enumerate(diff):
        if abs(d) <= zero_tol:
            continue
        if last is not None and (d > 0) != (diff[last] > 0):
            p0, p1, d0 = p[last], p[k], diff[last]
            out.append(float(p0 + (p1 - p0) * d0 / (d0 - d)))
        last = k
    return out


def sweep(c, kind, p_grid):
    """Closed-form correlations along ``p_grid`` plus crossing and branch-change metadata."""
    kind = ChannelKind(kind)
    c = check_physical(c if isinstance(c, BellVector) else BellVector(*c))
    p_grid = np.asarray(p_grid, dtype=float)
    if p_grid.ndim != 1 or p_grid.size == 0:
        raise InvalidArgumentError("p_grid must be a non-empty 1-d sequence")
    if np.any(np.diff(p_grid) <= 0.0):
        raise InvalidArgumentError("p_grid must be strictly increasing")
    if p_grid[0] < 0.0 or p_grid[-1] > 1.0:
        raise InvalidArgumentError("p_grid must lie in [0, 1]")

    samples = [analytic_record(evolve_coefficients(c, kind, p), p) for p in p_grid]
    diff = [r.Q - r.C for r in samples]
    crossings = find_crossings(p_grid, diff)

    detected = None
    for prev, cur in zip(samples, samples[1:]):
        if cur.branch != prev.branch and prev.chi > 0.0 and cur.chi > 0.0:
            detected = float(cur.p)
            break

    return SweepResult(
        channel=kind,
        state=c,
        samples=samples,
        crossings=crossings,
        p_sc_detected=detected,
        p_sc=sudden_change_time(c, kind),
        regime=classify_regime(c, kind).regime,
    )


def surface(kind, fixed_value, values_a, values_b=None):
    """p_sc over a plane of states with the preserved coefficient held fixed.

    ``values_a`` and ``values_b`` scan the two damped coefficients in
    increasing axis order (c1, c2 for phase flip). Each cell is flagged
    ``ok``, ``no-sudden-change`` or ``unphysical``; unphysical cells carry
    NaN.
    """
    kind = ChannelKind(kind)
    fixed_value = float(fixed_value)
    if abs(fixed_value) > 1.0:
        raise InvalidArgumentError(f"fixed coefficient {fixed_value!r} outside [-1, 1]")
    values_a = np.asarray(values_a, dtype=float)
    values_b = values_a if values_b is None else np.asarray(values_b, dtype=float)
    ia, ib = kind.damped_axes
    p_sc = np.full((values_a.size, values_b.size), np.nan)
    flags = np.empty(p_sc.shape, dtype=object)
    for i, a in enumerate(values_a):
        for j, b in enumerate(values_b):
            coeffs = [0.0, 0.0, 0.0]
            coeffs[kind.flip_axis - 1] = fixed_value
            coeffs[ia - 1] = a
            coeffs[ib - 1] = b
            if max(abs(a), abs(b)) > 1.0 or bell_spectrum(*coeffs).min() < -PHYSICAL_TOL:
                flags[i, j] = "unphysical"
                continue
            p_sc[i, j] = sudden_change_value(coeffs, kind)
            flags[i, j] = "ok" if sudden_change_time(coeffs, kind) is not None else "no-sudden-change"
    return SurfaceResult(kind, fixed_value, (ia, ib), values_a, values_b, p_sc, flags)


def record_at(c, kind, p):
    """Closed-form CorrelationRecord of ``c`` after ``kind`` at strength ``p``."""
    return analytic_record(evolve_coefficients(c, kind, p), p)


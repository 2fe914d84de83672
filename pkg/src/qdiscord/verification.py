"""Randomized cross-check of the closed forms against the matrix route."""

from dataclasses import dataclass, field

import numpy as np

from .channels import ChannelKind, apply_channel, evolve_coefficients
from .correlations import DEFAULT_GRID_N, analytic_record, numeric_correlations
from .states import bell_state_matrix, random_bell_vectors

ORACLE_TOL = 1e-6
P_VALUES = tuple(round(0.1 * k, 10) for k in range(11))


@dataclass
class Failure:
    state: tuple
    channel: ChannelKind
    p: float
    dC: float
    dQ: float


@dataclass
class VerifyReport:
    samples: int
    seed: int
    grid_n: int
    tol: float
    evaluations: int = 0
    max_dC: float = 0.0
    max_dQ: float = 0.0
    max_decomposition: float = 0.0
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures


def compare_point(c, kind, p, grid_n=DEFAULT_GRID_N, analytic=analytic_record):
    """(analytic record, numeric correlations) for one state, channel and p."""
    rho = apply_channel(bell_state_matrix(c), kind, p)
    num = numeric_correlations(rho, grid_n)
    return analytic(evolve_coefficients(c, kind, p), p), num


def run_verification(
    samples,
    seed,
    grid_n=DEFAULT_GRID_N,
    tol=ORACLE_TOL,
    p_values=P_VALUES,
    channels=tuple(ChannelKind),
    analytic=analytic_record,
):
    """Compare closed-form and numerically extremized C and Q.

    ``analytic`` maps ``(EvolvedCoefficients, p)`` to a CorrelationRecord and
    exists so the harness itself can be tested against a corrupted formula.
    """
    report = VerifyReport(samples, seed, grid_n, tol)
    rng = np.random.default_rng(seed)
    for c in random_bell_vectors(rng, samples):
        for kind in channels:
            for p in p_values:
                ana, num = compare_point(c, kind, p, grid_n, analytic)
                dc = abs(ana.C - num.C)
                dq = abs(ana.Q - num.Q)
                report.evaluations += 1
                report.max_dC = max(report.max_dC, dc)
                report.max_dQ = max(report.max_dQ, dq)
                report.max_decomposition = max(report.max_decomposition, abs(num.C + num.Q - num.I))
                if dc > tol or dq > tol:
                    report.failures.append(Failure(c.as_tuple(), kind, p, dc, dq))
    return report

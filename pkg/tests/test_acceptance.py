"""End-to-end acceptance criteria, one test per criterion.

Each test records a one-line pass/fail verdict (printed in the terminal
summary) before asserting, so a failing criterion is still reported.
"""

import math
import time

import numpy as np
import pytest

from qdiscord.channels import ChannelKind, apply_channel, evolve_coefficients, kraus_set
from qdiscord.correlations import (
    MeasurementBasis,
    analytic_record,
    chi_and_branch,
    mutual_information_analytic,
    numeric_correlations,
    quantum_discord_analytic,
)
from qdiscord.dynamics import (
    commutator_norm,
    grid_values,
    operational_discord,
    record_at,
    sudden_change_time,
    surface,
    sweep,
)
from qdiscord.linalg import I4
from qdiscord.states import BellVector, bell_state_matrix, coefficients_from_matrix, random_bell_vectors
from qdiscord.verification import run_verification

pytestmark = pytest.mark.acceptance

PF, BF, BPF = ChannelKind.PHASE_FLIP, ChannelKind.BIT_FLIP, ChannelKind.BIT_PHASE_FLIP
REF_STATE = BellVector(0.06, 0.42, 0.30)
MILLI = grid_values(0, 1, 1e-3)
SWAPS = {BF: (1, 3), BPF: (2, 3)}

# (C, Q, I) triples gathered by criteria 1-4 for criterion 8
_POINTS = {}


def _collect(source, triples):
    _POINTS.setdefault(source, []).extend(triples)


def _record_triples(records):
    return [(r.C, r.Q, r.I) for r in records]


def dominant_states(rng, n, axis):
    out = []
    while len(out) < n:
        for c in random_bell_vectors(rng, n):
            mags = np.abs(c.as_array())
            if mags[axis - 1] >= mags.max() and len(out) < n:
                out.append(c)
    return out


def test_reference_reproduction(criterion):
    start = time.perf_counter()
    res = sweep(REF_STATE, PF, MILLI)
    elapsed = time.perf_counter() - start
    _collect("1", _record_triples(res.samples))

    p_sc = sudden_change_time(REF_STATE, PF)
    p, q, c = res.column("p"), res.column("Q"), res.column("C")
    checks = {"p_sc in [0.150, 0.160]": 0.150 <= p_sc <= 0.160, "two crossings": len(res.crossings) == 2}
    if len(res.crossings) == 2:
        lo, hi = res.crossings
        checks["low crossing"] = abs(lo - 0.090) <= 0.005
        checks["high crossing"] = abs(hi - 0.200) <= 0.005
        inside = (p > lo) & (p < hi)
        checks["Q > C between"] = bool(np.all(q[inside] > c[inside]))
        at = [record_at(REF_STATE, PF, x) for x in res.crossings]
        _collect("1", _record_triples(at))
        checks["Q = I/2 at crossings"] = all(abs(r.Q - r.I / 2) <= 1e-3 for r in at)
    checks["runtime < 1 s"] = elapsed < 1.0
    ok = all(checks.values())
    detail = f"(p_sc={p_sc:.6f}, crossings={[round(x, 5) for x in res.crossings]}, {elapsed:.3f} s)"
    criterion(1, "Reference trajectory", ok, detail)
    assert ok, {k: v for k, v in checks.items() if not v}


def test_regime_one_constancy(criterion):
    rng = np.random.default_rng(101)
    states = dominant_states(rng, 100, 3)
    worst_const = worst_limit = 0.0
    for kind in (PF, BF, BPF):
        for c in states:
            c_run = c if kind is PF else c.swapped(*SWAPS[kind])
            res = sweep(c_run, kind, MILLI)
            _collect("2", _record_triples(res.samples))
            cc = res.column("C")
            limit = mutual_information_analytic(evolve_coefficients(c_run, kind, 1.0))
            worst_const = max(worst_const, float(np.max(np.abs(cc - cc[0]))))
            worst_limit = max(worst_limit, float(np.max(np.abs(cc - limit))))
    ok = worst_const <= 1e-12 and worst_limit <= 1e-9
    detail = f"(max |C(p)-C(0)|={worst_const:.2e}, max |C-I(1)|={worst_limit:.2e})"
    criterion(2, "Regime (i) constancy", ok, detail)
    assert ok


@pytest.mark.slow
def test_oracle_equivalence(criterion):
    start = time.perf_counter()
    rep = run_verification(500, 42)
    elapsed = time.perf_counter() - start
    # run_verification only keeps maxima, so re-evaluate a slice of points for criterion 8
    rng = np.random.default_rng(42)
    triples = []
    for c in random_bell_vectors(rng, 5):
        for kind in ChannelKind:
            for p in (0.0, 0.5, 1.0):
                num = numeric_correlations(apply_channel(bell_state_matrix(c), kind, p))
                triples.append((num.C, num.Q, num.I))
                triples.append(_record_triples([record_at(c, kind, p)])[0])
    _collect("3", triples)
    ok = rep.ok and rep.evaluations == 500 * 3 * 11 and elapsed < 120.0
    detail = (
        f"({rep.evaluations} points, max |dC|={rep.max_dC:.2e}, max |dQ|={rep.max_dQ:.2e}, "
        f"{len(rep.failures)} failures, {elapsed:.1f} s)"
    )
    criterion(3, "Oracle equivalence", ok, detail)
    assert rep.ok, rep.failures[:5]
    assert elapsed < 120.0


def test_surface_surface(criterion):
    values = grid_values(-1, 1, 0.02)
    res = surface(PF, 0.1, values)
    worst = 0.0
    flags_ok = True
    triples = []
    for a, b, v, flag in res.rows():
        coeffs = (a, b, 0.1)
        lam_min = BellVector(*coeffs).spectrum().min()
        if lam_min < -1e-12:
            flags_ok &= flag == "unphysical" and math.isnan(v)
            continue
        big = max(abs(a), abs(b))
        if big <= 0.1:
            flags_ok &= flag == "no-sudden-change"
        else:
            flags_ok &= flag == "ok"
            worst = max(worst, abs(v - (1.0 - math.sqrt(0.1 / big))))
            triples.extend(_record_triples([record_at(coeffs, PF, v)]))
        triples.extend(_record_triples([record_at(coeffs, PF, 0.0)]))
    _collect("4", triples)
    ok = flags_ok and worst == 0.0
    criterion(4, "Sudden-change surface", ok, f"(max |p_sc - closed form|={worst:.1e}, flags {'ok' if flags_ok else 'wrong'})")
    assert ok


def test_pure_and_limit_states(criterion):
    bell = [(1, -1, 1), (-1, 1, 1), (1, 1, -1), (-1, -1, -1)]
    errs = []
    for c in bell:
        rec = analytic_record(c)
        num = numeric_correlations(bell_state_matrix(c))
        for got in ((rec.C, rec.Q, rec.I), (num.C, num.Q, num.I)):
            errs.append(max(abs(got[0] - 1), abs(got[1] - 1), abs(got[2] - 2)))
    zero = analytic_record((0, 0, 0))
    zero_num = numeric_correlations(bell_state_matrix((0, 0, 0)))
    zero_max = max(abs(x) for x in (zero.C, zero.Q, zero.I, zero_num.C, zero_num.Q, zero_num.I))
    mixed = I4 / 4
    mixed_max = max(
        float(np.max(np.abs(apply_channel(mixed, kind, p) - mixed)))
        for kind in ChannelKind
        for p in grid_values(0, 1, 0.05)
    )
    ok = max(errs) <= 1e-9 and zero_max <= 1e-12 and mixed_max <= 1e-14
    detail = f"(Bell err={max(errs):.1e}, zero max={zero_max:.1e}, mixed drift={mixed_max:.1e})"
    criterion(5, "Pure and limit states", ok, detail)
    assert ok


def test_channel_algebra(criterion):
    p_grid = grid_values(0, 1, 0.05)
    completeness = max(
        kraus_set(kind, side, p).completeness_error() for kind in ChannelKind for side in "AB" for p in p_grid
    )
    rng = np.random.default_rng(202)
    states = random_bell_vectors(rng, 50)
    evolution = 0.0
    for c in states:
        for kind in ChannelKind:
            for p in (0.0, 0.13, 0.5, 0.87, 1.0):
                out = apply_channel(bell_state_matrix(c), kind, p)
                e = evolve_coefficients(c, kind, p)
                evolution = max(evolution, float(np.max(np.abs(out - bell_state_matrix(e.as_tuple())))))
                got = coefficients_from_matrix(out).as_array()
                evolution = max(evolution, float(np.max(np.abs(got - np.array(e.as_tuple())))))
    symmetry = 0.0
    for c in states:
        ref = sweep(c, PF, grid_values(0, 1, 0.01))
        for kind, (i, j) in SWAPS.items():
            other = sweep(c.swapped(i, j), kind, grid_values(0, 1, 0.01))
            for ra, rb in zip(ref.samples, other.samples):
                symmetry = max(symmetry, abs(ra.C - rb.C), abs(ra.Q - rb.Q), abs(ra.I - rb.I), abs(ra.chi - rb.chi))
    ok = completeness <= 1e-12 and evolution <= 1e-12 and symmetry <= 1e-12
    detail = f"(completeness={completeness:.1e}, operator-sum vs map={evolution:.1e}, swap symmetry={symmetry:.1e})"
    criterion(6, "Channel algebra", ok, detail)
    assert ok


def test_commutation_condition(criterion):
    z_basis = MeasurementBasis(0.0, 0.0)
    norms = {kind: commutator_norm(z_basis, kind) for kind in ChannelKind}
    comm_ok = norms[PF] <= 1e-12 and norms[BF] > 1e-12 and norms[BPF] > 1e-12
    rng = np.random.default_rng(303)
    worst = 0.0
    channel_ok = True
    for c in random_bell_vectors(rng, 100):
        op = operational_discord(c)
        channel_ok &= op.channel.flip_axis == chi_and_branch(c)[1]
        worst = max(worst, abs(op.Q - quantum_discord_analytic(c)))
    ok = comm_ok and channel_ok and worst <= 1e-9
    detail = (
        f"(||[Pi_z, G]|| phase={norms[PF]:.1e} bit={norms[BF]:.2f} bit-phase={norms[BPF]:.2f}; "
        f"operational vs closed form {worst:.1e})"
    )
    criterion(7, "Commutation condition", ok, detail)
    assert ok


def test_decomposition_and_positivity(criterion):
    missing = [s for s in "1234" if s not in _POINTS]
    if missing:
        criterion(8, "Decomposition and positivity", None, f"(criteria {','.join(missing)} not run)")
        pytest.skip(f"needs the points from criteria {missing}")
    triples = np.array([t for s in "1234" for t in _POINTS[s]])
    decomposition = float(np.max(np.abs(triples[:, 0] + triples[:, 1] - triples[:, 2])))
    lowest = float(min(triples[:, 0].min(), triples[:, 1].min()))
    ok = decomposition <= 1e-9 and lowest >= -1e-10
    detail = f"({len(triples)} points, max |C+Q-I|={decomposition:.1e}, min(C,Q)={lowest:.1e})"
    criterion(8, "Decomposition and positivity", ok, detail)
    assert ok

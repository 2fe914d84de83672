"""Hot numeric kernels, each in two flavours.

``*_loop`` functions are scalar loops written for ``numba.njit``; the
``*_numpy`` functions are vectorised equivalents used when numba is absent
or disabled through ``QDISCORD_DISABLE_NUMBA``. The numpy flavours stay
importable under either setting so tests can check one against the other.
The line-search refinement is scalar by nature and simply runs uncompiled
when acceleration is off.
"""

import math

import numpy as np

from ._accel import USE_NUMBA, jit

JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 64
GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
LINE_XTOL = 1e-10
ZERO_WEIGHT = 1e-14
_INV_LN2 = 1.0 / math.log(2.0)
# off-diagonal entries below this are left alone (g / |g| overflows for subnormals)
_TINY = 1e-300


# ---------------------------------------------------------------------------
# cyclic Jacobi for small complex Hermitian matrices


def _jacobi_loop(m, tol, max_sweeps):
    a = m.copy()
    n = a.shape[0]
    scale = 0.0
    for i in range(n):
        for j in range(n):
            scale += a[i, j].real ** 2 + a[i, j].imag ** 2
    thresh = tol * max(1.0, math.sqrt(scale))
    sweeps = 0
    for sweeps in range(max_sweeps + 1):
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += a[i, j].real ** 2 + a[i, j].imag ** 2
        if math.sqrt(off) < thresh or sweeps == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = a[p, q]
                ag = abs(g)
                if ag < _TINY:
                    continue
                # phase-rotate the pair so the off-diagonal entry is real,
                # then apply the classical real Jacobi rotation
                ec = (g / ag).conjugate()
                tau = (a[q, q].real - a[p, p].real) / (2.0 * ag)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.hypot(1.0, tau))
                else:
                    t = -1.0 / (-tau + math.hypot(1.0, tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                jpp = complex(c, 0.0)
                jpq = complex(s, 0.0)
                jqp = -s * ec
                jqq = c * ec
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = akp * jpp + akq * jqp
                    a[k, q] = akp * jpq + akq * jqq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = jpp.conjugate() * apk + jqp.conjugate() * aqk
                    a[q, k] = jpq.conjugate() * apk + jqq.conjugate() * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
    out = np.empty(n)
    for i in range(n):
        out[i] = a[i, i].real
    return np.sort(out)[::-1].copy(), sweeps


def _jacobi_numpy(m, tol, max_sweeps):
    a = np.array(m, dtype=np.complex128, copy=True)
    n = a.shape[0]
    thresh = tol * max(1.0, float(np.linalg.norm(a)))
    offmask = ~np.eye(n, dtype=bool)
    sweeps = 0
    for sweeps in range(max_sweeps + 1):
        off = math.sqrt(float(np.sum(np.abs(a[offmask]) ** 2)))
        if off < thresh or sweeps == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = a[p, q]
                ag = abs(g)
                if ag < _TINY:
                    continue
                ec = np.conj(g / ag)
                tau = (a[q, q].real - a[p, p].real) / (2.0 * ag)
                t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                rot = np.array([[c, s], [-s * ec, c * ec]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ rot
                a[idx, :] = rot.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
    return np.sort(np.diag(a).real)[::-1].copy(), sweeps


_jacobi = jit(cache=True)(_jacobi_loop) if USE_NUMBA else _jacobi_numpy


def jacobi_eigenvalues(m, tol=JACOBI_TOL, max_sweeps=JACOBI_MAX_SWEEPS):
    """Descending eigenvalues of a Hermitian matrix and the sweep count used."""
    return _jacobi(np.ascontiguousarray(m, dtype=np.complex128), tol, max_sweeps)


# ---------------------------------------------------------------------------
# measured conditional entropy on B (general two-qubit state)


def projector_grid(thetas, phis):
    """Entries of the parallel projector on a (theta, phi) mesh, flattened.

    Returns ``(pi00, pi11, pi10)`` with ``pi01 = conj(pi10)``; the mesh is
    flattened row-major with theta as the slow index.
    """
    th, ph = np.meshgrid(np.asarray(thetas, float), np.asarray(phis, float), indexing="ij")
    ct, st = np.cos(th).ravel(), np.sin(th).ravel()
    pi10 = ct * st * np.exp(1j * ph.ravel())
    return ct * ct, st * st, pi10


@jit(cache=True)
def _block_entropy(m00, m11, m01):
    # q * S(M / q) for an unnormalised 2x2 Hermitian block, in bits
    q = m00 + m11
    if q < ZERO_WEIGHT:
        return 0.0
    diff = m00 - m11
    d = math.sqrt(diff * diff + 4.0 * (m01.real * m01.real + m01.imag * m01.imag))
    hi = 0.5 * (q + d)
    lo = 0.5 * (q - d)
    s = 0.0
    if hi > 0.0:
        s -= hi * math.log(hi / q)
    if lo > 0.0:
        s -= lo * math.log(lo / q)
    return s * _INV_LN2


@jit(cache=True)
def _point_entropy(rho, pi00, pi11, pi10):
    pi01 = pi10.conjugate()
    m00 = (rho[0, 0] * pi00 + rho[0, 1] * pi10 + rho[1, 0] * pi01 + rho[1, 1] * pi11).real
    m11 = (rho[2, 2] * pi00 + rho[2, 3] * pi10 + rho[3, 2] * pi01 + rho[3, 3] * pi11).real
    m01 = rho[0, 2] * pi00 + rho[0, 3] * pi10 + rho[1, 2] * pi01 + rho[1, 3] * pi11
    r00 = (rho[0, 0] + rho[1, 1]).real
    r11 = (rho[2, 2] + rho[3, 3]).real
    r01 = rho[0, 2] + rho[1, 3]
    return _block_entropy(m00, m11, m01) + _block_entropy(r00 - m00, r11 - m11, r01 - m01)


def _grid_entropy_loop(rho, pi00, pi11, pi10):
    k = pi00.shape[0]
    out = np.empty(k)
    r00 = (rho[0, 0] + rho[1, 1]).real
    r11 = (rho[2, 2] + rho[3, 3]).real
    r01 = rho[0, 2] + rho[1, 3]
    for i in range(k):
        a = pi00[i]
        b = pi11[i]
        c = pi10[i]
        cc = c.conjugate()
        m00 = (rho[0, 0] * a + rho[0, 1] * c + rho[1, 0] * cc + rho[1, 1] * b).real
        m11 = (rho[2, 2] * a + rho[2, 3] * c + rho[3, 2] * cc + rho[3, 3] * b).real
        m01 = rho[0, 2] * a + rho[0, 3] * c + rho[1, 2] * cc + rho[1, 3] * b
        out[i] = _block_entropy(m00, m11, m01) + _block_entropy(r00 - m00, r11 - m11, r01 - m01)
    return out


def _block_entropy_numpy(m00, m11, m01):
    q = m00 + m11
    d = np.sqrt((m00 - m11) ** 2 + 4.0 * np.abs(m01) ** 2)
    hi = 0.5 * (q + d)
    lo = np.maximum(0.5 * (q - d), 0.0)
    safe_q = np.where(q < ZERO_WEIGHT, 1.0, q)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(hi > 0.0, -hi * np.log2(hi / safe_q), 0.0)
        terms += np.where(lo > 0.0, -lo * np.log2(lo / safe_q), 0.0)
    return np.where(q < ZERO_WEIGHT, 0.0, terms)


def _grid_entropy_numpy(rho, pi00, pi11, pi10):
    pi01 = np.conj(pi10)
    m00 = (rho[0, 0] * pi00 + rho[0, 1] * pi10 + rho[1, 0] * pi01 + rho[1, 1] * pi11).real
    m11 = (rho[2, 2] * pi00 + rho[2, 3] * pi10 + rho[3, 2] * pi01 + rho[3, 3] * pi11).real
    m01 = rho[0, 2] * pi00 + rho[0, 3] * pi10 + rho[1, 2] * pi01 + rho[1, 3] * pi11
    r00 = (rho[0, 0] + rho[1, 1]).real
    r11 = (rho[2, 2] + rho[3, 3]).real
    r01 = rho[0, 2] + rho[1, 3]
    return _block_entropy_numpy(m00, m11, m01) + _block_entropy_numpy(r00 - m00, r11 - m11, r01 - m01)


_grid_entropy = jit(cache=True, fastmath=True)(_grid_entropy_loop) if USE_NUMBA else _grid_entropy_numpy


def grid_conditional_entropy(rho, pi00, pi11, pi10):
    """Conditional entropy of A after measuring B, at every projector in the grid."""
    return _grid_entropy(np.ascontiguousarray(rho, dtype=np.complex128), pi00, pi11, pi10)


# ---------------------------------------------------------------------------
# local refinement: alternating golden-section line searches


@jit(cache=True)
def _entropy_at(rho, theta, phi):
    ct = math.cos(theta)
    st = math.sin(theta)
    return _point_entropy(rho, ct * ct, st * st, ct * st * complex(math.cos(phi), math.sin(phi)))


@jit(cache=True)
def _golden_line(rho, theta, phi, axis, half_width):
    x0 = theta if axis == 0 else phi
    a = x0 - half_width
    b = x0 + half_width
    h = b - a
    n = int(math.ceil(math.log(LINE_XTOL / h) / math.log(GOLDEN)))
    c = b - GOLDEN * h
    d = a + GOLDEN * h
    if axis == 0:
        fc = _entropy_at(rho, c, phi)
        fd = _entropy_at(rho, d, phi)
    else:
        fc = _entropy_at(rho, theta, c)
        fd = _entropy_at(rho, theta, d)
    for _ in range(n):
        if fc < fd:
            b = d
            d = c
            fd = fc
            h = b - a
            c = b - GOLDEN * h
            fc = _entropy_at(rho, c, phi) if axis == 0 else _entropy_at(rho, theta, c)
        else:
            a = c
            c = d
            fc = fd
            h = b - a
            d = a + GOLDEN * h
            fd = _entropy_at(rho, d, phi) if axis == 0 else _entropy_at(rho, theta, d)
    if fc < fd:
        return c, fc
    return d, fd


def _refine_loop(rho, theta, phi, width_theta, width_phi, tol, max_iter):
    best = _entropy_at(rho, theta, phi)
    iters = 0
    for iters in range(1, max_iter + 1):
        start = best
        x, fx = _golden_line(rho, theta, phi, 0, width_theta)
        if fx < best:
            theta = x
            best = fx
        x, fx = _golden_line(rho, theta, phi, 1, width_phi)
        if fx < best:
            phi = x
            best = fx
        if start - best < tol:
            break
    return theta, phi, best, iters


_refine = jit(cache=True)(_refine_loop)


def refine_minimum(rho, theta, phi, width_theta, width_phi, tol, max_iter):
    """Polish a grid minimum of the conditional entropy.

    Returns ``(theta, phi, value, iterations)``. Angles may leave the
    canonical domain; callers fold them back.
    """
    rho = np.ascontiguousarray(rho, dtype=np.complex128)
    return _refine(rho, float(theta), float(phi), width_theta, width_phi, tol, max_iter)

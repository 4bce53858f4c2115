"""Hot numeric kernels with numba and pure-numpy implementations.

Three families live here:

* simultaneous root finding for dense complex polynomials
  (Aberth-Ehrlich iteration, closed forms for degree <= 2),
* fused "find roots inside the disk and sum log(1/|z|)" kernels used by
  the Nevanlinna counting sweeps,
* union-find labeling of 4-connected components in a boolean grid.

``nevlab._backend`` decides which implementation backs the public names
(`aberth_roots`, `counting_batch`, `counting_single`, `label_count`).
Both implementations use the same iteration constants so their outputs
agree to rounding error; tests assert that parity whenever numba is
importable.

Conventions: polynomial coefficients are ascending (c[0] + c[1]*z + ...),
complex128 throughout.  Exact zero leading coefficients reduce the
degree; exact zero trailing (constant-side) coefficients are roots at
the origin.  A root at exactly 0 contributes +inf to a counting sum;
callers exclude the base point before reaching these kernels, so inf
only ever signals a violated precondition upstream.
"""

import math

import numpy as np

from ._backend import HAVE_NUMBA, USE_NUMBA

_MAX_ITER = 120
_CORR_TOL = 1e-14


# ---------------------------------------------------------------------------
# pure-numpy implementation
# ---------------------------------------------------------------------------

def _horner_rows(c, z):
    """Evaluate row i of c at z[i].  c: (k, m+1) ascending, z: (k, ...)."""
    acc = np.zeros(z.shape, dtype=np.complex128)
    for j in range(c.shape[1] - 1, -1, -1):
        acc = acc * z + c[:, j][(slice(None),) + (None,) * (z.ndim - 1)]
    return acc


def _quadratic_roots_np(c):
    """Roots of k quadratics, c: (k, 3) ascending.  Returns (k, 2)."""
    a = c[:, 2]
    b = c[:, 1]
    d = c[:, 0]
    disc = b * b - 4.0 * a * d
    s = np.sqrt(disc.astype(np.complex128))
    # pick the sign that avoids cancellation in b +/- s
    flip = (b.real * s.real + b.imag * s.imag) < 0.0
    s = np.where(flip, -s, s)
    q = -0.5 * (b + s)
    qs = np.where(q == 0, 1.0, q)
    r0 = np.where(q != 0, q / a, 0.0)
    r1 = np.where((q != 0) & (d != 0), d / qs, 0.0)
    # q == 0 forces b == 0 and d == 0: double root at the origin
    return np.stack([r0, r1], axis=1)


def _aberth_group_np(c):
    """Aberth-Ehrlich for k same-degree polynomials, c: (k, deg+1), deg >= 1.

    Leading coefficients must be nonzero.  Returns (k, deg) roots.
    """
    k, m1 = c.shape
    deg = m1 - 1
    if deg == 1:
        return (-c[:, 0] / c[:, 1])[:, None]
    if deg == 2:
        return _quadratic_roots_np(c)
    lead = c[:, -1]
    radius = 1.0 + np.max(np.abs(c[:, :-1] / lead[:, None]), axis=1)
    ang = 2.0 * np.pi * np.arange(deg) / deg + 0.4
    z = radius[:, None] * np.exp(1j * ang)[None, :]
    dc = c[:, 1:] * np.arange(1, deg + 1)
    eye = np.arange(deg)
    for _ in range(_MAX_ITER):
        p = _horner_rows(c, z)
        dp = _horner_rows(dc, z)
        done = p == 0
        dp = np.where(dp == 0, 1e-300, dp)
        newton = np.where(done, 0.0, p / dp)
        diff = z[:, :, None] - z[:, None, :]
        diff[:, eye, eye] = 1.0  # self-pair, excluded below
        diff = np.where(diff == 0, 1e-12, diff)
        ssum = np.sum(1.0 / diff, axis=2) - 1.0
        den = 1.0 - newton * ssum
        delta = np.where(den == 0, newton, newton / den)
        z = z - delta
        corr = np.abs(delta) / (1.0 + np.abs(z))
        if np.max(corr) < _CORR_TOL:
            break
    return z


def aberth_roots_np(c):
    """All roots of one polynomial, ascending coefficients.

    Trailing exact zeros in the leading positions reduce the degree;
    exact zeros in the lowest positions become roots at the origin.
    Returns an array of length (effective degree + origin multiplicity);
    empty when the effective degree is zero.
    """
    c = np.ascontiguousarray(c, dtype=np.complex128)
    nz = np.nonzero(c)[0]
    if nz.size == 0 or nz[-1] == 0:
        return np.empty(0, dtype=np.complex128)
    low, top = nz[0], nz[-1]
    roots = np.zeros(top, dtype=np.complex128)
    if top > low:
        roots[low:] = _aberth_group_np(c[None, low : top + 1])[0]
    return roots


def _counting_rows_np(cmat, rcut):
    """Sum of log(1/|z|) over roots with |z| < rcut, one value per row."""
    n, m1 = cmat.shape
    out = np.zeros(n, dtype=np.float64)
    nonzero = cmat != 0
    any_nz = nonzero.any(axis=1)
    top = np.where(any_nz, m1 - 1 - np.argmax(nonzero[:, ::-1], axis=1), 0)
    # rows whose constant coefficient vanishes have a preimage at the
    # origin: the counting value is genuinely +inf there
    zero_const = any_nz & (~nonzero[:, 0]) & (top > 0)
    out[zero_const] = np.inf
    for t in np.unique(top):
        if t == 0:
            continue
        rows = np.nonzero((top == t) & ~zero_const)[0]
        if rows.size == 0:
            continue
        # chunk large high-degree groups to bound the (k, deg, deg)
        # pairwise-difference workspace inside the Aberth iteration
        step = rows.size if t < 3 else max(1, 20_000_000 // (int(t) * int(t)))
        for s0 in range(0, rows.size, step):
            blk = rows[s0 : s0 + step]
            roots = _aberth_group_np(cmat[blk, : t + 1])
            az = np.abs(roots)
            inside = az < rcut
            with np.errstate(divide="ignore", invalid="ignore"):
                logs = np.where(inside & (az > 0), -np.log(az), 0.0)
            logs = np.where(inside & (az == 0), np.inf, logs)
            out[blk] = logs.sum(axis=1)
    return out


def counting_batch_np(nums, dens, ws, rcut):
    cmat = nums - ws[:, None] * dens
    return _counting_rows_np(cmat, rcut)


def counting_single_np(num, den, ws, rcut):
    cmat = num[None, :] - ws[:, None] * den[None, :]
    return _counting_rows_np(cmat, rcut)


def label_count_np(mask):
    from scipy import ndimage

    structure = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]], dtype=bool)
    _, n = ndimage.label(mask, structure=structure)
    return int(n)


# ---------------------------------------------------------------------------
# numba implementation
# ---------------------------------------------------------------------------

if HAVE_NUMBA:
    import cmath

    from numba import njit

    @njit(cache=True)
    def _roots_inplace_nb(c, roots):
        """Write all roots of c (ascending) into roots; return the count."""
        m1 = c.shape[0]
        top = -1
        for j in range(m1 - 1, -1, -1):
            if c[j] != 0:
                top = j
                break
        if top <= 0:
            return 0
        low = 0
        while c[low] == 0:
            low += 1
        for k in range(low):
            roots[k] = 0.0 + 0.0j
        deg = top - low
        if deg == 0:
            return low
        if deg == 1:
            roots[low] = -c[low] / c[low + 1]
            return low + 1
        if deg == 2:
            a = c[low + 2]
            b = c[low + 1]
            d = c[low]
            s = cmath.sqrt(b * b - 4.0 * a * d)
            if b.real * s.real + b.imag * s.imag < 0.0:
                s = -s
            q = -0.5 * (b + s)
            if q != 0:
                roots[low] = q / a
                if d != 0:
                    roots[low + 1] = d / q
                else:
                    roots[low + 1] = 0.0 + 0.0j
            else:
                roots[low] = 0.0 + 0.0j
                roots[low + 1] = 0.0 + 0.0j
            return low + 2
        lead = c[top]
        radius = 0.0
        for j in range(low, top):
            r = abs(c[j] / lead)
            if r > radius:
                radius = r
        radius = 1.0 + radius
        for k in range(deg):
            ang = 2.0 * math.pi * k / deg + 0.4
            roots[low + k] = radius * complex(math.cos(ang), math.sin(ang))
        for _ in range(_MAX_ITER):
            maxcorr = 0.0
            for i in range(deg):
                zi = roots[low + i]
                p = c[top]
                dp = 0.0 + 0.0j
                for j in range(top - 1, low - 1, -1):
                    dp = dp * zi + p
                    p = p * zi + c[j]
                if p == 0:
                    continue
                if dp == 0:
                    dp = 1e-300 + 0.0j
                newton = p / dp
                ssum = 0.0 + 0.0j
                for j in range(deg):
                    if j != i:
                        dz = zi - roots[low + j]
                        if dz == 0:
                            dz = 1e-12 + 0.0j
                        ssum += 1.0 / dz
                den = 1.0 - newton * ssum
                if den == 0:
                    delta = newton
                else:
                    delta = newton / den
                zi = zi - delta
                roots[low + i] = zi
                corr = abs(delta) / (1.0 + abs(zi))
                if corr > maxcorr:
                    maxcorr = corr
            if maxcorr < _CORR_TOL:
                break
        return low + deg

    @njit(cache=True)
    def aberth_roots_nb(c):
        m1 = c.shape[0]
        buf = np.empty(max(m1 - 1, 1), dtype=np.complex128)
        n = _roots_inplace_nb(c, buf)
        return buf[:n].copy()

    @njit(cache=True)
    def _count_roots_nb(roots, nroots, rcut):
        v = 0.0
        for k in range(nroots):
            az = abs(roots[k])
            if az < rcut:
                if az == 0.0:
                    v = np.inf
                else:
                    v += -math.log(az)
        return v

    @njit(cache=True)
    def counting_batch_nb(nums, dens, ws, rcut):
        n, m1 = nums.shape
        out = np.empty(n, dtype=np.float64)
        cbuf = np.empty(m1, dtype=np.complex128)
        rbuf = np.empty(max(m1 - 1, 1), dtype=np.complex128)
        for i in range(n):
            w = ws[i]
            for j in range(m1):
                cbuf[j] = nums[i, j] - w * dens[i, j]
            nr = _roots_inplace_nb(cbuf, rbuf)
            out[i] = _count_roots_nb(rbuf, nr, rcut)
        return out

    @njit(cache=True)
    def counting_single_nb(num, den, ws, rcut):
        n = ws.shape[0]
        m1 = num.shape[0]
        out = np.empty(n, dtype=np.float64)
        cbuf = np.empty(m1, dtype=np.complex128)
        rbuf = np.empty(max(m1 - 1, 1), dtype=np.complex128)
        for i in range(n):
            w = ws[i]
            for j in range(m1):
                cbuf[j] = num[j] - w * den[j]
            nr = _roots_inplace_nb(cbuf, rbuf)
            out[i] = _count_roots_nb(rbuf, nr, rcut)
        return out

    @njit(cache=True)
    def _uf_find_nb(parent, x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    @njit(cache=True)
    def _uf_union_nb(parent, a, b):
        ra = _uf_find_nb(parent, a)
        rb = _uf_find_nb(parent, b)
        if ra < rb:
            parent[rb] = ra
        elif rb < ra:
            parent[ra] = rb

    @njit(cache=True)
    def label_count_nb(mask):
        g0, g1 = mask.shape
        parent = np.empty(g0 * g1, dtype=np.int64)
        for i in range(g0 * g1):
            parent[i] = i
        for i in range(g0):
            for j in range(g1):
                if mask[i, j]:
                    idx = i * g1 + j
                    if j > 0 and mask[i, j - 1]:
                        _uf_union_nb(parent, idx, idx - 1)
                    if i > 0 and mask[i - 1, j]:
                        _uf_union_nb(parent, idx, idx - g1)
        count = 0
        for i in range(g0):
            for j in range(g1):
                idx = i * g1 + j
                if mask[i, j] and _uf_find_nb(parent, idx) == idx:
                    count += 1
        return count

else:  # pragma: no cover - exercised only when numba is absent
    aberth_roots_nb = None
    counting_batch_nb = None
    counting_single_nb = None
    label_count_nb = None


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

if USE_NUMBA:

    def aberth_roots(c):
        return aberth_roots_nb(np.ascontiguousarray(c, dtype=np.complex128))

    def counting_batch(nums, dens, ws, rcut):
        return counting_batch_nb(
            np.ascontiguousarray(nums, dtype=np.complex128),
            np.ascontiguousarray(dens, dtype=np.complex128),
            np.ascontiguousarray(ws, dtype=np.complex128),
            float(rcut),
        )

    def counting_single(num, den, ws, rcut):
        return counting_single_nb(
            np.ascontiguousarray(num, dtype=np.complex128),
            np.ascontiguousarray(den, dtype=np.complex128),
            np.ascontiguousarray(ws, dtype=np.complex128),
            float(rcut),
        )

    def label_count(mask):
        return label_count_nb(np.ascontiguousarray(mask, dtype=np.bool_))

else:
    def aberth_roots(c):
        return aberth_roots_np(c)

    def counting_batch(nums, dens, ws, rcut):
        return counting_batch_np(
            np.asarray(nums, dtype=np.complex128),
            np.asarray(dens, dtype=np.complex128),
            np.asarray(ws, dtype=np.complex128),
            float(rcut),
        )

    def counting_single(num, den, ws, rcut):
        return counting_single_np(
            np.asarray(num, dtype=np.complex128),
            np.asarray(den, dtype=np.complex128),
            np.asarray(ws, dtype=np.complex128),
            float(rcut),
        )

    def label_count(mask):
        return label_count_np(np.asarray(mask, dtype=bool))


def warmup():
    """Run every kernel once on tiny inputs (triggers JIT compilation)."""
    c = np.array([-1.0, 0.0, 0.0, 1.0], dtype=np.complex128)
    aberth_roots(c)
    num = np.array([0.0, 0.5, 0.25, 0.1], dtype=np.complex128)
    den = np.array([1.0, 0.0, 0.0, 0.0], dtype=np.complex128)
    ws = np.array([0.3 + 0.1j, -0.2j], dtype=np.complex128)
    counting_single(num, den, ws, 1.0 - 1e-12)
    counting_batch(
        np.tile(num, (2, 1)), np.tile(den, (2, 1)), ws, 1.0 - 1e-12
    )
    label_count(np.array([[1, 0], [1, 1]], dtype=bool))

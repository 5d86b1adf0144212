"""Hot kernels: packed GF(2) row reduction and the paired-generator sweep.

Every kernel has two implementations with identical results: a numba
``@njit`` version and a plain numpy version.  The numba path is used when
numba imports and ``HFCONE_DISABLE_NUMBA`` is unset (or ``0``).  Set
``HFCONE_DISABLE_NUMBA=1`` before importing :mod:`hfcone` to force numpy.

Packed layout: a matrix with ``ncols`` columns is stored as a C-contiguous
``uint64`` array of shape ``(nrows, ceil(ncols / 64))``; column ``c`` lives in
bit ``c % 64`` of word ``c // 64``.
"""

from __future__ import annotations

import os

import numpy as np

WORD_BITS = 64


def _env_disables_numba() -> bool:
    flag = os.environ.get("HFCONE_DISABLE_NUMBA", "").strip().lower()
    return flag not in ("", "0", "false", "no")


HAVE_NUMBA = False
if not _env_disables_numba():
    try:
        import numba

        HAVE_NUMBA = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# packing


def n_words(ncols: int) -> int:
    return max(1, (ncols + WORD_BITS - 1) // WORD_BITS)


def pack(dense: np.ndarray) -> np.ndarray:
    """Pack a 0/1 matrix (any integer dtype) into uint64 words."""
    dense = np.asarray(dense, dtype=np.uint8) & 1
    nrows, ncols = dense.shape
    nw = n_words(ncols)
    padded = np.zeros((nrows, nw * WORD_BITS), dtype=np.uint8)
    padded[:, :ncols] = dense
    as_bytes = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(as_bytes).view("<u8").astype(np.uint64, copy=True)


def unpack(packed: np.ndarray, ncols: int) -> np.ndarray:
    nrows = packed.shape[0]
    if nrows == 0:
        return np.zeros((0, ncols), dtype=np.uint8)
    as_bytes = np.ascontiguousarray(packed.astype("<u8")).view(np.uint8)
    bits = np.unpackbits(as_bytes, axis=1, bitorder="little")
    return np.ascontiguousarray(bits[:, :ncols])


# ---------------------------------------------------------------------------
# row reduction


def _rref_numpy(R: np.ndarray, pivot_cols: int) -> np.ndarray:
    nrows = R.shape[0]
    pivots = []
    r = 0
    one = np.uint64(1)
    for c in range(pivot_cols):
        if r == nrows:
            break
        w = c // WORD_BITS
        b = np.uint64(c % WORD_BITS)
        below = np.flatnonzero((R[r:, w] >> b) & one)
        if below.size == 0:
            continue
        piv = r + int(below[0])
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        hits = np.flatnonzero((R[:, w] >> b) & one)
        hits = hits[hits != r]
        if hits.size:
            R[hits] ^= R[r]
        pivots.append(c)
        r += 1
    return np.asarray(pivots, dtype=np.int64)


def _hkm_sweep_numpy(coeffs: np.ndarray, xs: np.ndarray):
    n = coeffs.shape[0]
    grid = np.indices(tuple(int(c) for c in coeffs)).reshape(n, -1).T.astype(np.int64)
    total = grid.shape[0]
    nz = grid != 0
    prev = np.zeros_like(nz)
    prev[:, 1:] = nz[:, :-1]
    ncoef = grid - prev.astype(np.int64)
    sums = ncoef @ xs[1 : n + 1]

    x0 = xs[0]
    bad = (sums <= 0) | (sums >= x0)
    bad[0] = False

    viol = np.zeros(total, dtype=bool)
    viol |= ncoef[:, 0] > coeffs[0] - 1
    if n > 1:
        viol |= (prev[:, 1:] & (ncoef[:, 1:] > (coeffs[1:] - 2))).any(axis=1)
    zero_u = ~nz
    viol |= (zero_u & (ncoef != 0) & (ncoef != -1)).any(axis=1)
    viol |= (zero_u & ((ncoef == -1) != prev)).any(axis=1)
    last = np.zeros(total, dtype=np.int64)
    for j in range(n):
        col = ncoef[:, j]
        viol |= (col == -1) & (last <= 0)
        last = np.where(col != 0, col, last)
    viol[0] = False

    first_bad = int(np.argmax(bad)) if bad.any() else -1
    first_viol = int(np.argmax(viol)) if viol.any() else -1
    return total - 1, first_bad, first_viol


if HAVE_NUMBA:

    @numba.njit(cache=True)
    def _rref_numba(R, pivot_cols):
        nrows, nw = R.shape
        pivots = np.empty(min(nrows, pivot_cols) + 1, dtype=np.int64)
        r = 0
        one = np.uint64(1)
        for c in range(pivot_cols):
            if r == nrows:
                break
            w = c >> 6
            bit = one << np.uint64(c & 63)
            piv = -1
            for i in range(r, nrows):
                if R[i, w] & bit:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for k in range(nw):
                    tmp = R[r, k]
                    R[r, k] = R[piv, k]
                    R[piv, k] = tmp
            for i in range(nrows):
                if i != r and (R[i, w] & bit):
                    for k in range(w, nw):
                        R[i, k] ^= R[r, k]
            pivots[r] = c
            r += 1
        return pivots[:r].copy()

    @numba.njit(cache=True)
    def _hkm_sweep_numba(coeffs, xs):
        n = coeffs.shape[0]
        u = np.zeros(n, dtype=np.int64)
        ncoef = np.zeros(n, dtype=np.int64)
        x0 = xs[0]
        checked = 0
        first_bad = -1
        first_viol = -1
        idx = 0
        while True:
            # odometer step; u[0] is the most significant digit
            j = n - 1
            while j >= 0:
                u[j] += 1
                if u[j] < coeffs[j]:
                    break
                u[j] = 0
                j -= 1
            if j < 0:
                break
            idx += 1
            checked += 1
            s = 0
            for t in range(n):
                prev_nz = 1 if (t > 0 and u[t - 1] != 0) else 0
                ncoef[t] = u[t] - prev_nz
                s += ncoef[t] * xs[t + 1]
            if first_bad < 0 and (s <= 0 or s >= x0):
                first_bad = idx
            if first_viol < 0:
                ok = ncoef[0] <= coeffs[0] - 1
                last = 0
                for t in range(n):
                    prev_nz = t > 0 and u[t - 1] != 0
                    if t > 0 and prev_nz and ncoef[t] > coeffs[t] - 2:
                        ok = False
                    if u[t] == 0:
                        if ncoef[t] != 0 and ncoef[t] != -1:
                            ok = False
                        if (ncoef[t] == -1) != prev_nz:
                            ok = False
                    if ncoef[t] == -1 and last <= 0:
                        ok = False
                    if ncoef[t] != 0:
                        last = ncoef[t]
                if not ok:
                    first_viol = idx
        return checked, first_bad, first_viol


def rref_packed(R: np.ndarray, pivot_cols: int) -> np.ndarray:
    """Reduce ``R`` in place to reduced row echelon form.

    Pivots are searched only among the first ``pivot_cols`` columns; row
    operations act on the whole row.  Returns the pivot columns in order.
    """
    if R.shape[0] == 0 or pivot_cols == 0:
        return np.zeros(0, dtype=np.int64)
    if USE_NUMBA:
        return _rref_numba(R, pivot_cols)
    return _rref_numpy(R, pivot_cols)


def hkm_sweep(coeffs: np.ndarray, xs: np.ndarray):
    """Sweep every nonzero paired generator of a chain-of-unknots diagram.

    Returns ``(checked, first_bad, first_violation)`` where the last two are
    mixed-radix indices (``-1`` when none was found).
    """
    coeffs = np.ascontiguousarray(coeffs, dtype=np.int64)
    xs = np.ascontiguousarray(xs, dtype=np.int64)
    if USE_NUMBA:
        c, b, v = _hkm_sweep_numba(coeffs, xs)
        return int(c), int(b), int(v)
    return _hkm_sweep_numpy(coeffs, xs)

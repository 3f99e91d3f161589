"""Hot loops of modular elimination, in a numba and a pure-numpy flavour.

The numba versions are used when numba imports and the environment variable
``DIMALCEV_DISABLE_NUMBA`` is unset (or ``0``).  Both flavours have the same
signatures and produce identical results; ``benchmarks/bench_kernels.py``
compares their speed.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

_flag = os.environ.get("DIMALCEV_DISABLE_NUMBA", "").strip().lower()
NUMBA_DISABLED = _flag not in ("", "0", "false", "no")
HAVE_NUMBA = numba is not None


# -- numpy ------------------------------------------------------------------


def rref_mod_p_numpy(a: np.ndarray, p: int) -> np.ndarray:
    """Row canonical form of ``a`` over GF(p), in place.

    ``a`` holds int64 residues in ``[0, p)``.  On return the first ``r`` rows
    are the nonzero rows of the RCF and the remaining rows are zero.
    Returns the pivot columns.
    """
    m, n = a.shape
    piv = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), -1, p)
        if inv != 1:
            a[r] = (a[r] * inv) % p
        f = a[:, c].copy()
        f[r] = 0
        hit = np.flatnonzero(f)
        if hit.size:
            a[hit] = (a[hit] - np.outer(f[hit], a[r])) % p
        piv.append(c)
        r += 1
    return np.asarray(piv, dtype=np.int64)


def scatter_blocks_numpy(
    row_block: np.ndarray,
    col_block: np.ndarray,
    perm: np.ndarray,
    coef: np.ndarray,
    reps: np.ndarray,
):
    """COO triplets of a matrix of ``d x d`` blocks.

    Term ``t`` adds ``coef[t] * reps[perm[t]]`` to block
    ``(row_block[t], col_block[t])``.  Duplicates are left for the caller
    to sum.
    """
    d = reps.shape[1]
    r = np.arange(d)
    rows = (row_block[:, None, None] * d + r[None, :, None]) + np.zeros((1, 1, d), np.int64)
    cols = (col_block[:, None, None] * d + r[None, None, :]) + np.zeros((1, d, 1), np.int64)
    vals = coef[:, None, None] * reps[perm]
    return rows.ravel(), cols.ravel(), vals.ravel()


# -- numba ------------------------------------------------------------------

if HAVE_NUMBA:

    @numba.njit(cache=True)
    def _inv_mod(x, p):
        # Fermat; p is prime
        result = 1
        base = x % p
        e = p - 2
        while e > 0:
            if e & 1:
                result = (result * base) % p
            base = (base * base) % p
            e >>= 1
        return result

    @numba.njit(cache=True)
    def rref_mod_p_numba(a, p):
        m, n = a.shape
        piv = np.empty(min(m, n), dtype=np.int64)
        r = 0
        for c in range(n):
            if r == m:
                break
            i = r
            while i < m and a[i, c] == 0:
                i += 1
            if i == m:
                continue
            if i != r:
                for j in range(c, n):
                    t = a[r, j]
                    a[r, j] = a[i, j]
                    a[i, j] = t
            inv = _inv_mod(a[r, c], p)
            if inv != 1:
                for j in range(c, n):
                    a[r, j] = (a[r, j] * inv) % p
            for k in range(m):
                if k == r:
                    continue
                f = a[k, c]
                if f == 0:
                    continue
                for j in range(c, n):
                    v = a[r, j]
                    if v != 0:
                        a[k, j] = (a[k, j] - f * v) % p
            piv[r] = c
            r += 1
        return piv[:r].copy()

    @numba.njit(cache=True)
    def scatter_blocks_numba(row_block, col_block, perm, coef, reps):
        t_count = row_block.shape[0]
        d = reps.shape[1]
        size = t_count * d * d
        rows = np.empty(size, dtype=np.int64)
        cols = np.empty(size, dtype=np.int64)
        vals = np.empty(size, dtype=np.int64)
        k = 0
        for t in range(t_count):
            rb = row_block[t] * d
            cb = col_block[t] * d
            c = coef[t]
            g = perm[t]
            for i in range(d):
                for j in range(d):
                    rows[k] = rb + i
                    cols[k] = cb + j
                    vals[k] = c * reps[g, i, j]
                    k += 1
        return rows, cols, vals

else:  # pragma: no cover
    rref_mod_p_numba = None
    scatter_blocks_numba = None


def backend() -> str:
    return "numba" if HAVE_NUMBA and not NUMBA_DISABLED else "numpy"


def rref_mod_p(a: np.ndarray, p: int, use: str | None = None) -> np.ndarray:
    use = use or backend()
    if use == "numba":
        return rref_mod_p_numba(a, p)
    return rref_mod_p_numpy(a, p)


def scatter_blocks(row_block, col_block, perm, coef, reps, use: str | None = None):
    use = use or backend()
    args = (
        np.ascontiguousarray(row_block, dtype=np.int64),
        np.ascontiguousarray(col_block, dtype=np.int64),
        np.ascontiguousarray(perm, dtype=np.int64),
        np.ascontiguousarray(coef, dtype=np.int64),
        np.ascontiguousarray(reps, dtype=np.int64),
    )
    if use == "numba":
        return scatter_blocks_numba(*args)
    return scatter_blocks_numpy(*args)

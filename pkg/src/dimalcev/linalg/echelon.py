"""Incremental row canonical forms.

Both engines keep their rows fully reduced at all times, so rows can be fed
in batches of any size and the current RCF read off at any point.  The
rational engine works on sparse dictionaries; the modular engine keeps a
dense float64 block (exact for residues as long as dot products stay below
2**53) and uses BLAS or sparse products for the bulk reduction and the
kernels in :mod:`.kernels` for the fresh pivots of each batch.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np
import scipy.sparse as sp

from . import kernels

log = logging.getLogger(__name__)

_EXACT_LIMIT = 2**52


class RationalEchelon:
    """Row canonical form over the rationals, built one sparse row at a time."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self._rows: dict[int, dict[int, object]] = {}
        self._holders: dict[int, set[int]] = {}

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self._rows)

    def add_row(self, row: Mapping[int, object]) -> bool:
        """Insert a row; returns True when the rank grows."""
        row = {j: v for j, v in row.items() if v}
        for c in sorted(set(row) & self._rows.keys()):
            f = row.get(c)
            if not f:
                continue
            for j, v in self._rows[c].items():
                w = row.get(j, 0) - f * v
                if w:
                    row[j] = w
                else:
                    row.pop(j, None)
        if not row:
            return False
        pc = min(row)
        lead = row[pc]
        if lead != 1:
            row = {j: Fraction(v) / lead for j, v in row.items()}
            row = {j: (v.numerator if v.denominator == 1 else v) for j, v in row.items()}
        # clear the new pivot column from the stored rows
        for c in list(self._holders.get(pc, ())):
            r = self._rows[c]
            f = r[pc]
            for j, v in row.items():
                w = r.get(j, 0) - f * v
                if w:
                    if j not in r:
                        self._holders.setdefault(j, set()).add(c)
                    r[j] = w
                else:
                    if j in r:
                        del r[j]
                        self._holders[j].discard(c)
        self._rows[pc] = row
        for j in row:
            if j != pc:
                self._holders.setdefault(j, set()).add(pc)
        return True

    def add_rows(self, rows: Iterable[Mapping[int, object]]) -> int:
        before = self.rank
        for r in rows:
            self.add_row(r)
        return self.rank - before

    def rows(self) -> list[dict[int, object]]:
        return [dict(self._rows[c]) for c in self.pivots]

    def contains(self, row: Mapping[int, object]) -> bool:
        row = {j: v for j, v in row.items() if v}
        for c in sorted(set(row) & self._rows.keys()):
            f = row.get(c)
            if not f:
                continue
            for j, v in self._rows[c].items():
                w = row.get(j, 0) - f * v
                if w:
                    row[j] = w
                else:
                    row.pop(j, None)
        return not row


def _mulmod(x: np.ndarray, y: np.ndarray, p: int) -> np.ndarray:
    """``x @ y mod p`` computed exactly in float64."""
    inner = x.shape[1]
    if inner == 0:
        return np.zeros((x.shape[0], y.shape[1]))
    step = max(1, _EXACT_LIMIT // ((p - 1) ** 2))
    if inner <= step:
        return np.mod(x @ y, p)
    acc = np.zeros((x.shape[0], y.shape[1]))
    for s in range(0, inner, step):
        acc = np.mod(acc + np.mod(x[:, s : s + step] @ y[s : s + step], p), p)
    return acc


class ModularEchelon:
    """Row canonical form over GF(p), fed in (dense or sparse) row batches."""

    def __init__(self, ncols: int, p: int, kernel: str | None = None):
        self.ncols = ncols
        self.p = p
        self.kernel = kernel
        self._basis = np.zeros((min(64, max(ncols, 1)), ncols))
        self._piv: list[int] = []
        self.rows_seen = 0

    @property
    def rank(self) -> int:
        return len(self._piv)

    @property
    def pivots(self) -> list[int]:
        return sorted(self._piv)

    def _grow(self, extra: int):
        need = self.rank + extra
        if need <= self._basis.shape[0]:
            return
        cap = max(need, 2 * self._basis.shape[0])
        cap = min(cap, max(self.ncols, need))
        grown = np.zeros((cap, self.ncols))
        grown[: self.rank] = self._basis[: self.rank]
        self._basis = grown

    def reduce(self, batch) -> np.ndarray:
        """Residues of ``batch`` after clearing the current pivot columns."""
        p = self.p
        r = self.rank
        if sp.issparse(batch):
            batch = sp.csr_matrix(batch, dtype=np.float64)
            batch.data = np.mod(batch.data, p)
            if r:
                piv = np.asarray(self._piv)
                lead = batch[:, piv]
                dense = batch.toarray()
                if lead.nnz:
                    if r * (p - 1) ** 2 < _EXACT_LIMIT:
                        dense -= lead @ self._basis[:r]
                    else:  # pragma: no cover - only for very large primes
                        dense -= _mulmod(lead.toarray(), self._basis[:r], p)
                return np.mod(dense, p)
            return batch.toarray()
        dense = np.mod(np.asarray(batch, dtype=np.float64), p)
        if r:
            piv = np.asarray(self._piv)
            dense = np.mod(dense - _mulmod(dense[:, piv], self._basis[:r], p), p)
        return dense

    def add_rows(self, batch) -> int:
        """Absorb a batch of rows; returns the rank increase."""
        p = self.p
        dense = self.reduce(batch)
        self.rows_seen += dense.shape[0]
        live = np.flatnonzero(dense.any(axis=1))
        if live.size == 0:
            return 0
        work = dense[live].astype(np.int64)
        newpiv = kernels.rref_mod_p(work, p, self.kernel)
        k = len(newpiv)
        if k == 0:
            return 0
        fresh = work[:k].astype(np.float64)
        r = self.rank
        if r:
            b = self._basis[:r]
            coeff = b[:, newpiv]
            if coeff.any():
                self._basis[:r] = np.mod(b - _mulmod(coeff, fresh, p), p)
        self._grow(k)
        self._basis[r : r + k] = fresh
        self._piv.extend(int(c) for c in newpiv)
        return k

    def rows(self) -> tuple[np.ndarray, np.ndarray]:
        """``(rows, pivots)`` of the RCF, ordered by pivot column."""
        order = np.argsort(self._piv, kind="stable")
        piv = np.asarray(self._piv, dtype=np.int64)[order]
        return self._basis[: self.rank][order].astype(np.int64), piv

    def contains(self, row) -> bool:
        return not self.reduce(np.atleast_2d(row)).any()

"""Symmetric group representations and per-partition identity counts.

Young's natural representation is built from polytabloids: for a standard
tableau ``T`` the polytabloid ``e_T`` is the signed sum of the tabloids of
``πT`` over the column group of ``T``.  The standard polytabloids form a
Z-basis of the Specht module and the matrix of ``σ`` in that basis is
integral.

Polynomials are turned into block rows by writing every term as ``c σ·m``
where ``m`` is an association type on the word ``12...n`` and ``σ`` is the
term's leaf word; the term contributes ``c ρ(σ)`` to the block of its type.
"""

from __future__ import annotations

import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial
from pathlib import Path
from typing import Sequence

import numpy as np
import scipy.sparse as sp

from .consequences import (
    alternative_identities_in_degree,
    malcev_consequences,
    rac_straighten,
    rac_types,
    skew_symmetries,
)
from .dialgebra import dialgebra_types, dicommutator_expand
from .linalg import DEFAULT_PRIME, RATIONAL, Field, ModularEchelon, RationalEchelon
from .linalg import kernels
from .monomials import Polynomial, fill, leaves, permutation_index, permutation_words, shape

log = logging.getLogger(__name__)


# -- partitions and tableaux -------------------------------------------------


@lru_cache(maxsize=None)
def partitions(n: int) -> tuple[tuple[int, ...], ...]:
    """Partitions of ``n`` in lexicographically decreasing order."""
    if n < 1:
        raise ValueError("n must be positive")

    def gen(rest, cap):
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, cap), 0, -1):
            for tail in gen(rest - first, first):
                yield (first,) + tail

    return tuple(gen(n, n))


def partition_name(lam: Sequence[int]) -> str:
    """Compact label, e.g. ``321`` or ``2111``."""
    return "".join(str(x) for x in lam)


def parse_partition(text: str) -> tuple[int, ...]:
    """Accepts ``3,2,1``, ``3 2 1`` or (all parts < 10) ``321``."""
    text = text.strip()
    if "," in text or " " in text:
        parts = tuple(int(x) for x in text.replace(",", " ").split())
    else:
        parts = tuple(int(c) for c in text)
    if not parts or any(p <= 0 for p in parts) or list(parts) != sorted(parts, reverse=True):
        raise ValueError(f"not a partition: {text!r}")
    return parts


def hook_dimension(lam: Sequence[int]) -> int:
    n = sum(lam)
    conj = [sum(1 for r in lam if r > j) for j in range(lam[0])] if lam else []
    hooks = 1
    for i, row in enumerate(lam):
        for j in range(row):
            hooks *= (row - j - 1) + (conj[j] - i - 1) + 1
    return factorial(n) // hooks


@lru_cache(maxsize=None)
def standard_tableaux(lam: tuple[int, ...]) -> tuple:
    """Standard Young tableaux of shape ``lam`` as tuples of rows.

    Ordered by the row index of each entry ``1..n`` read as a word; this puts
    the row-reading tableau first.
    """
    n = sum(lam)
    out = []

    def place(k, rows):
        if k > n:
            out.append(tuple(tuple(r) for r in rows))
            return
        for i, cap in enumerate(lam):
            r = rows[i]
            if len(r) < cap and (i == 0 or len(rows[i - 1]) > len(r)):
                r.append(k)
                place(k + 1, rows)
                r.pop()

    place(1, [[] for _ in lam])
    return tuple(sorted(out, key=lambda t: _tabloid(t)))


def _tabloid(t) -> tuple[int, ...]:
    """Row index of each entry ``1..n``."""
    n = sum(len(r) for r in t)
    rows = [0] * n
    for i, r in enumerate(t):
        for x in r:
            rows[x - 1] = i
    return tuple(rows)


def _sign(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    s = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            s = -s
    return s


@lru_cache(maxsize=None)
def _column_group(lam: tuple[int, ...]):
    """Signed column permutations of the shape, as position permutations."""
    cols = []
    cells = []
    for i, row in enumerate(lam):
        for j in range(row):
            cells.append((i, j))
    index = {c: k for k, c in enumerate(cells)}
    for j in range(lam[0]):
        cols.append([index[(i, j)] for i in range(len(lam)) if lam[i] > j])
    group = [(tuple(range(len(cells))), 1)]
    for col in cols:
        nxt = []
        for g, s in group:
            for p in permutations(range(len(col))):
                h = list(g)
                for a, b in enumerate(p):
                    h[col[a]] = g[col[b]]
                nxt.append((tuple(h), s * _sign(p)))
        group = nxt
    return cells, group


def _polytabloid(t, lam) -> dict[tuple, int]:
    cells, group = _column_group(lam)
    flat = [t[i][j] for i, j in cells]
    n = len(flat)
    out: dict[tuple, int] = {}
    for g, s in group:
        rows = [0] * n
        for k, (i, _) in enumerate(cells):
            rows[flat[g[k]] - 1] = i
        key = tuple(rows)
        out[key] = out.get(key, 0) + s
    return out


def _act(sigma, t):
    return tuple(tuple(sigma[x - 1] for x in r) for r in t)


@lru_cache(maxsize=None)
def _basis_data(lam: tuple[int, ...]):
    tabs = standard_tableaux(lam)
    keys = [_tabloid(t) for t in tabs]
    d = len(tabs)
    N = np.zeros((d, d), dtype=np.int64)
    for k, t in enumerate(tabs):
        e = _polytabloid(t, lam)
        for j, key in enumerate(keys):
            N[j, k] = e.get(key, 0)
    # N is unitriangular after sorting by tabloid order; invert exactly
    Ninv = _integer_inverse(N)
    return tabs, keys, Ninv


def _integer_inverse(N: np.ndarray) -> np.ndarray:
    d = N.shape[0]
    a = [[Fraction(int(x)) for x in row] + [Fraction(int(i == j)) for j in range(d)] for i, row in enumerate(N)]
    for c in range(d):
        p = next(r for r in range(c, d) if a[r][c])
        a[c], a[p] = a[p], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(d):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    out = np.array([[x for x in row[d:]] for row in a], dtype=object)
    if any(x.denominator != 1 for x in out.ravel()):
        raise ArithmeticError("polytabloid matrix is not unimodular")
    return out.astype(np.int64)


def rep_matrix(lam: Sequence[int], sigma: Sequence[int]) -> np.ndarray:
    """Young's natural representation matrix of the permutation word ``sigma``."""
    lam = tuple(lam)
    if len(sigma) != sum(lam):
        raise ValueError(f"permutation of degree {len(sigma)} for a partition of {sum(lam)}")
    tabs, keys, Ninv = _basis_data(lam)
    d = len(tabs)
    V = np.zeros((d, d), dtype=np.int64)
    for k, t in enumerate(tabs):
        e = _polytabloid(_act(sigma, t), lam)
        for j, key in enumerate(keys):
            V[j, k] = e.get(key, 0)
    return Ninv @ V


@lru_cache(maxsize=32)
def rep_table(lam: tuple[int, ...]) -> np.ndarray:
    """``ρ(σ)`` for every permutation, indexed like :func:`permutation_words`."""
    n = sum(lam)
    words = permutation_words(n)
    d = hook_dimension(lam)
    out = np.empty((len(words), d, d), dtype=np.int64)
    for i, w in enumerate(words):
        out[i] = rep_matrix(lam, w)
    return out


def conjugated_table(lam: tuple[int, ...], P: np.ndarray) -> np.ndarray:
    """``P ρ(σ) P^-1`` for an integer matrix ``P`` with integer inverse."""
    Pinv = _integer_inverse(np.asarray(P, dtype=np.int64))
    return np.einsum("ij,sjk,kl->sil", P, rep_table(lam), Pinv)


# -- block rows ----------------------------------------------------------------


@dataclass
class BlockTerms:
    """Terms of a stack of identities in block form: row, column block, permutation, coefficient."""

    row: np.ndarray
    col: np.ndarray
    perm: np.ndarray
    coef: list

    @property
    def size(self) -> int:
        return len(self.coef)


def polynomial_terms(p: Polynomial, type_index: dict, straighten=None):
    """``(type, permutation index, coefficient)`` for every term of ``p``."""
    n = p.degree
    pidx = permutation_index(n)
    acc: dict[tuple[int, int], object] = {}
    for m, c in p.terms():
        if straighten is not None:
            s, m = straighten(m)
            if s == 0:
                continue
            c = s * c
        key = (type_index[shape(m)], pidx[leaves(m)])
        acc[key] = acc.get(key, 0) + c
    return [(t, g, c) for (t, g), c in acc.items() if c]


def block_terms(polys: Sequence[Polynomial], type_index: dict, straighten=None, col_offset: int = 0) -> BlockTerms:
    rows, cols, perms, coefs = [], [], [], []
    for i, p in enumerate(polys):
        for t, g, c in polynomial_terms(p, type_index, straighten):
            rows.append(i)
            cols.append(t + col_offset)
            perms.append(g)
            coefs.append(c)
    return BlockTerms(np.array(rows, dtype=np.int64), np.array(cols, dtype=np.int64), np.array(perms, dtype=np.int64), coefs)


def partition_component(identity: Polynomial, lam: Sequence[int], types: Sequence) -> np.ndarray:
    """The ``d x (len(types) d)`` block row of ``identity`` for the partition ``lam``."""
    lam = tuple(lam)
    d = hook_dimension(lam)
    out = np.zeros((d, len(types) * d), dtype=object)
    if not identity:
        return out.astype(np.int64)
    table = rep_table(lam)
    index = {t: i for i, t in enumerate(types)}
    for t, g, c in polynomial_terms(identity, index):
        out[:, t * d : (t + 1) * d] += c * table[g].astype(object)
    if all(isinstance(x, int) for x in out.ravel()):
        return out.astype(np.int64)
    return out


def _assemble_modular(terms: BlockTerms, nrows: int, ncols: int, table: np.ndarray, p: int):
    d = table.shape[1]
    coef = np.array([Field(p).convert(c) for c in terms.coef], dtype=np.int64)
    r, c, v = kernels.scatter_blocks(terms.row, terms.col, terms.perm, coef, table)
    m = sp.coo_matrix((v % p, (r, c)), shape=(nrows * d, ncols * d)).tocsr()
    m.sum_duplicates()
    m.data = np.mod(m.data, p)
    m.eliminate_zeros()
    return m


def _rows_rational(terms: BlockTerms, nrows: int, table: np.ndarray):
    d = table.shape[1]
    rows: list[dict] = [dict() for _ in range(nrows * d)]
    for i, t, g, c in zip(terms.row, terms.col, terms.perm, terms.coef):
        blk = table[g]
        base_r, base_c = int(i) * d, int(t) * d
        for a in range(d):
            row = rows[base_r + a]
            for b in range(d):
                v = int(blk[a, b])
                if v:
                    j = base_c + b
                    w = row.get(j, 0) + c * v
                    if w:
                        row[j] = w
                    else:
                        del row[j]
    return rows


class _Reducer:
    """Feeds block-row batches into an incremental echelon form."""

    def __init__(self, ncols_blocks: int, table: np.ndarray, field: Field, kernel=None):
        self.d = table.shape[1]
        self.table = table
        self.field = field
        ncols = ncols_blocks * self.d
        self.ncols_blocks = ncols_blocks
        if field.is_rational:
            self.eng = RationalEchelon(ncols)
        else:
            self.eng = ModularEchelon(ncols, field.prime, kernel)

    def feed(self, terms: BlockTerms, nrows: int):
        if self.field.is_rational:
            self.eng.add_rows(_rows_rational(terms, nrows, self.table))
        else:
            m = _assemble_modular(terms, nrows, self.ncols_blocks, self.table, self.field.prime)
            self.eng.add_rows(m)

    @property
    def pivots(self):
        return self.eng.pivots

    @property
    def rank(self):
        return self.eng.rank


def _batched(seq, size):
    for s in range(0, len(seq), size):
        yield s, seq[s : s + size]


def _batch_size(d: int, ncols: int) -> int:
    # aim at a few thousand dense rows per batch
    return max(1, min(400, 4096 // max(d, 1)))


def _field_for(prime: int | None, rational: bool) -> Field:
    return RATIONAL if rational else Field(prime or DEFAULT_PRIME)


@lru_cache(maxsize=None)
def _rac_type_index(n: int) -> dict:
    return {t: i for i, t in enumerate(rac_types(n))}


@lru_cache(maxsize=None)
def _expansion_polys(n: int) -> tuple:
    ident = tuple(range(1, n + 1))
    return tuple(dicommutator_expand(fill(t, ident)) for t in rac_types(n))


def dicommutator_multiplicity(
    lam: Sequence[int],
    n: int | None = None,
    prime: int | None = DEFAULT_PRIME,
    rational: bool = False,
    progress: bool = False,
    kernel: str | None = None,
) -> int:
    """Multiplicity of new identities for ``lam`` (right-pivot rows of the block matrix).

    Block rows: the liftings of the alternative dialgebra identities over
    the 0-dialgebra types, then for each RAC type its dicommutator
    expansion with an identity block on the right.
    """
    lam = tuple(lam)
    n = sum(lam) if n is None else n
    if sum(lam) != n:
        raise ValueError(f"{lam} is not a partition of {n}")
    if n < 3:
        raise ValueError("degree must be at least 3")
    field = _field_for(prime, rational)
    table = rep_table(lam)
    d = table.shape[1]
    ztypes = dialgebra_types(n)
    zidx = {t: i for i, t in enumerate(ztypes)}
    Z = len(ztypes)
    R = len(rac_types(n))
    red = _Reducer(Z + R, table, field, kernel)
    t0 = time.time()

    ids = alternative_identities_in_degree(n)
    size = _batch_size(d, (Z + R) * d)
    for s, chunk in _batched(ids, size):
        red.feed(block_terms(chunk, zidx), len(chunk))
        if progress:
            log.debug("%s: %d/%d identities, rank %d, %.1fs", partition_name(lam), s + len(chunk), len(ids), red.rank, time.time() - t0)

    exp = _expansion_polys(n)
    terms = block_terms(exp, zidx)
    # identity block on the right: term (i, Z + i, identity permutation, 1)
    k = len(exp)
    terms = BlockTerms(
        np.concatenate([terms.row, np.arange(k)]),
        np.concatenate([terms.col, Z + np.arange(k)]),
        np.concatenate([terms.perm, np.zeros(k, dtype=np.int64)]),
        list(terms.coef) + [1] * k,
    )
    red.feed(terms, k)
    split = Z * d
    mult = sum(1 for c in red.pivots if c >= split)
    if progress:
        log.info("%s: multiplicity %d (rank %d), %.1fs", partition_name(lam), mult, red.rank, time.time() - t0)
    return mult


def skew_symmetry_count(n: int) -> int:
    return len(skew_symmetries(n))


def malcev_consequence_rank(
    lam: Sequence[int],
    n: int | None = None,
    prime: int | None = DEFAULT_PRIME,
    rational: bool = False,
    progress: bool = False,
    kernel: str | None = None,
) -> int:
    """Rank of the skew-symmetry rows over the di-Malcev consequence rows.

    Columns are the RAC types; consequence terms are straightened into RAC
    types first.  In degree 4 the di-Malcev identity itself is the only
    consequence; in degree 3 there are none.
    """
    lam = tuple(lam)
    n = sum(lam) if n is None else n
    if sum(lam) != n:
        raise ValueError(f"{lam} is not a partition of {n}")
    field = _field_for(prime, rational)
    table = rep_table(lam)
    idx = _rac_type_index(n)
    red = _Reducer(len(idx), table, field, kernel)
    skew = skew_symmetries(n)
    if skew:
        red.feed(block_terms(skew, idx), len(skew))
    cons = malcev_consequences(n)
    if cons:
        red.feed(block_terms(cons, idx, straighten=rac_straighten), len(cons))
    if progress:
        log.info("%s: consequence rank %d", partition_name(lam), red.rank)
    return red.rank


# -- tables with checkpoints ------------------------------------------------------


def _checkpoint_path(directory, kind, n, lam, field: Field) -> Path:
    tag = "QQ" if field.is_rational else f"p{field.prime}"
    return Path(directory) / f"{kind}-n{n}-{partition_name(lam)}-{tag}.json"


def _one(args):
    kind, lam, n, prime, rational, checkpoint, progress = args
    field = _field_for(prime, rational)
    path = _checkpoint_path(checkpoint, kind, n, lam, field) if checkpoint else None
    if path is not None and path.exists():
        data = json.loads(path.read_text())
        log.info("%s: loaded %s", partition_name(lam), path.name)
        return data["value"]
    fn = dicommutator_multiplicity if kind == "multiplicity" else malcev_consequence_rank
    t0 = time.time()
    value = fn(lam, n, prime=prime, rational=rational, progress=progress)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps({"kind": kind, "n": n, "partition": list(lam), "field": field.name, "value": value, "seconds": round(time.time() - t0, 3)}))
    return value


def _table(kind, n, prime, rational, jobs, checkpoint, progress, only=None) -> dict:
    parts = [lam for lam in partitions(n) if only is None or lam in only]
    args = [(kind, lam, n, prime, rational, checkpoint, progress) for lam in parts]
    jobs = max(1, jobs or 1)
    if jobs == 1:
        values = [_one(a) for a in args]
    else:
        with ProcessPoolExecutor(max_workers=min(jobs, os.cpu_count() or 1, len(args))) as ex:
            values = list(ex.map(_one, args))
    return dict(zip(parts, values))


def multiplicity_table(n, prime=DEFAULT_PRIME, rational=False, jobs=1, checkpoint=None, progress=False, only=None) -> dict:
    """``{partition: multiplicity}`` with partitions in lex-decreasing order."""
    return _table("multiplicity", n, prime, rational, jobs, checkpoint, progress, only)


def consequence_rank_table(n, prime=DEFAULT_PRIME, rational=False, jobs=1, checkpoint=None, progress=False, only=None) -> dict:
    return _table("consequence", n, prime, rational, jobs, checkpoint, progress, only)

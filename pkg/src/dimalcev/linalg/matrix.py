"""Exact matrices, block expansion matrices and identity extraction."""

from __future__ import annotations

import csv
import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from ..monomials import Polynomial, basis_index, from_vector, permutation_words, relabel, sparse_vector
from .echelon import ModularEchelon, RationalEchelon
from .field import RATIONAL, Field

log = logging.getLogger(__name__)


@dataclass
class ExactMatrix:
    """Sparse row storage of a matrix with exact (int / Fraction) entries.

    ``split`` marks the vertical line of a block matrix ``[A O; E I]``: the
    number of columns in the left part.
    """

    nrows: int
    ncols: int
    rows: list[dict[int, object]]
    split: int | None = None
    field: Field = RATIONAL

    def __post_init__(self):
        if len(self.rows) != self.nrows:
            raise ValueError("row count mismatch")
        if self.split is not None and not 0 <= self.split <= self.ncols:
            raise ValueError("split index out of range")

    @classmethod
    def from_dense(cls, data, split=None, field: Field = RATIONAL) -> "ExactMatrix":
        data = [list(r) for r in data]
        ncols = len(data[0]) if data else 0
        rows = [{j: v for j, v in enumerate(r) if v} for r in data]
        return cls(len(rows), ncols, rows, split, field)

    @classmethod
    def from_polynomials(cls, polys: Sequence[Polynomial], basis: Sequence, index=None) -> "ExactMatrix":
        index = basis_index(basis) if index is None else index
        rows = [sparse_vector(p, index) for p in polys]
        return cls(len(rows), len(basis), rows)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "ExactMatrix":
        return cls(nrows, ncols, [{} for _ in range(nrows)])

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(n, n, [{i: 1} for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def dense(self) -> list[list]:
        out = []
        for r in self.rows:
            row = [0] * self.ncols
            for j, v in r.items():
                row[j] = v
            out.append(row)
        return out

    def to_numpy(self, p: int) -> np.ndarray:
        f = Field(p)
        a = np.zeros(self.shape, dtype=np.int64)
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                a[i, j] = f.convert(v)
        return a

    def column_slice(self, start: int, stop: int | None = None) -> "ExactMatrix":
        stop = self.ncols if stop is None else stop
        rows = [{j - start: v for j, v in r.items() if start <= j < stop} for r in self.rows]
        return ExactMatrix(self.nrows, stop - start, rows, None, self.field)

    def nonzero_count(self) -> int:
        return sum(len(r) for r in self.rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and all(
            {j: v for j, v in a.items() if v} == {j: v for j, v in b.items() if v}
            for a, b in zip(self.rows, other.rows)
        )


@dataclass
class RowCanonicalForm:
    """Nonzero rows of an RCF (zero rows are dropped) and its pivots."""

    matrix: ExactMatrix
    pivots: list[int]

    @property
    def rank(self) -> int:
        return len(self.pivots)


def _reduce(m: ExactMatrix, field: Field):
    if field.is_rational:
        eng = RationalEchelon(m.ncols)
        eng.add_rows(m.rows)
        return eng.rows(), eng.pivots
    eng = ModularEchelon(m.ncols, field.prime)
    if m.nrows:
        eng.add_rows(m.to_numpy(field.prime))
    dense, piv = eng.rows()
    rows = [{int(j): int(v) for j, v in zip(np.flatnonzero(r), r[np.flatnonzero(r)])} for r in dense]
    return rows, [int(c) for c in piv]


def rcf(m: ExactMatrix, field: Field | None = None) -> RowCanonicalForm:
    """Row canonical form with unit pivots, zeros above and below."""
    field = m.field if field is None else field
    rows, piv = _reduce(m, field)
    out = ExactMatrix(len(rows), m.ncols, rows, m.split, field)
    return RowCanonicalForm(out, list(piv))


def rank(m: ExactMatrix, field: Field | None = None) -> int:
    return rcf(m, field).rank


def build_block_matrix(A: ExactMatrix, E: ExactMatrix) -> ExactMatrix:
    """``[A O; E I]`` with the split after the columns of ``A``."""
    if A.ncols != E.ncols:
        raise ValueError(f"column mismatch: A has {A.ncols}, E has {E.ncols}")
    k = A.ncols
    n = E.nrows
    rows = [dict(r) for r in A.rows]
    rows += [{**r, k + i: 1} for i, r in enumerate(E.rows)]
    return ExactMatrix(A.nrows + n, k + n, rows, split=k, field=A.field)


@dataclass
class NewIdentityReport:
    identities: list[Polynomial]
    rows: list[dict[int, object]]
    rank: int
    left_rank: int
    denominator_lcm: int | None = None
    field: str = "QQ"

    @property
    def count(self) -> int:
        return len(self.identities)

    def to_json(self) -> dict:
        return {
            "field": self.field,
            "rank": self.rank,
            "left_rank": self.left_rank,
            "new_identities": self.count,
            "denominator_lcm": self.denominator_lcm,
            "identities": [p.render() for p in self.identities],
        }


def extract_new_identities(reduced: RowCanonicalForm | ExactMatrix, right_basis: Sequence) -> NewIdentityReport:
    """Decode the RCF rows whose leading entry lies right of the split."""
    m = reduced.matrix if isinstance(reduced, RowCanonicalForm) else reduced
    if m.split is None:
        raise ValueError("matrix has no column split")
    k = m.split
    nonzero = [r for r in m.rows if r]
    picked = [r for r in nonzero if min(r) >= k]
    rows = [{j - k: v for j, v in r.items()} for r in picked]
    den = None
    if m.field.is_rational:
        den = 1
        for r in nonzero:
            for v in r.values():
                if isinstance(v, Fraction):
                    den = lcm(den, v.denominator)
    ids = [from_vector(r, right_basis) for r in rows]
    return NewIdentityReport(ids, rows, len(nonzero), len(nonzero) - len(picked), den, m.field.name)


# -- permutation orbits ------------------------------------------------------


def orbit_table(basis: Sequence) -> np.ndarray:
    """``table[s, j]`` is the index of permutation ``s`` applied to ``basis[j]``."""
    idx = basis_index(basis)
    if not basis:
        return np.zeros((1, 0), dtype=np.int64)
    from ..monomials import degree

    n = degree(basis[0])
    return np.array(
        [[idx[relabel(m, w)] for m in basis] for w in permutation_words(n)], dtype=np.int64
    )


def _orbit_rows_mod(vec: np.ndarray, table: np.ndarray) -> np.ndarray:
    out = np.zeros((table.shape[0], table.shape[1]), dtype=np.int64)
    np.put_along_axis(out, table, np.broadcast_to(vec, table.shape), axis=1)
    return out


def _straightened_rows(ids, basis, straighten, field: Field):
    idx = basis_index(basis)
    rows = []
    for p in ids:
        n = p.degree
        for w in permutation_words(n):
            q = p.relabel(w)
            if straighten is not None:
                q = straighten(q)
            rows.append({j: field.convert(v) for j, v in sparse_vector(q, idx).items()})
    return rows


def span_rank_under_permutations(
    ids: Sequence[Polynomial],
    basis: Sequence,
    straighten: Callable[[Polynomial], Polynomial] | None = None,
    field: Field = RATIONAL,
) -> int:
    """Rank of all permutations of all ``ids`` written in ``basis``."""
    ids = [p for p in ids if p]
    if not ids:
        return 0
    rows = _straightened_rows(ids, basis, straighten, field)
    return rank(ExactMatrix(len(rows), len(basis), rows), field)


@dataclass
class GeneratorReport:
    progression: list[tuple[int, int]] = field(default_factory=list)
    generators: list[int] = field(default_factory=list)
    rank: int = 0

    def to_json(self) -> dict:
        return {
            "progression": [{"identity": i, "rank": r} for i, r in self.progression],
            "generators": self.generators,
            "rank": self.rank,
        }


def _orbit_engine(vectors, table, field: Field):
    ncols = table.shape[1]
    if field.is_rational:
        eng = RationalEchelon(ncols)

        def feed(v):
            nz = [j for j in range(ncols) if v[j]]
            for s in range(table.shape[0]):
                eng.add_row({int(table[s, j]): v[j] for j in nz})

    else:
        eng = ModularEchelon(ncols, field.prime)

        def feed(v):
            eng.add_rows(_orbit_rows_mod(np.asarray(v, dtype=np.int64), table))

    return eng, feed


def minimal_generators(
    ids: Sequence[Polynomial],
    basis: Sequence,
    field: Field = RATIONAL,
    table: np.ndarray | None = None,
) -> GeneratorReport:
    """Greedy orbit-span progression over ``ids`` (1-based indices).

    Every identity's full permutation orbit is added to a running row
    space; the identities that raise the rank are recorded with the new
    rank.  ``generators`` is the shortest tail of the recorded identities
    whose orbits alone span the final space.
    """
    table = orbit_table(basis) if table is None else table
    idx = basis_index(basis)
    vectors = []
    for p in ids:
        v = [0] * len(basis)
        for j, c in sparse_vector(p, idx).items():
            v[j] = field.convert(c)
        vectors.append(v)
    eng, feed = _orbit_engine(vectors, table, field)
    report = GeneratorReport()
    for i, v in enumerate(vectors, 1):
        before = eng.rank
        feed(v)
        if eng.rank > before:
            report.progression.append((i, eng.rank))
    report.rank = eng.rank
    recorded = [i for i, _ in report.progression]
    for k in range(1, len(recorded) + 1):
        tail = recorded[-k:]
        sub, sub_feed = _orbit_engine(vectors, table, field)
        for i in tail:
            sub_feed(vectors[i - 1])
        if sub.rank == report.rank:
            report.generators = tail
            break
    return report


def orbit_span_rank(vectors, table: np.ndarray, field: Field) -> int:
    eng, feed = _orbit_engine(vectors, table, field)
    for v in vectors:
        feed(v)
    return eng.rank


# -- export -------------------------------------------------------------------


def _fmt(v) -> str:
    return str(v)


def export_triples(m: ExactMatrix, path: str | Path) -> None:
    """Header ``rows cols field`` then one ``i j value`` line per nonzero (1-based)."""
    with open(path, "w") as fh:
        fh.write(f"{m.nrows} {m.ncols} {m.field.name}\n")
        for i, r in enumerate(m.rows, 1):
            for j in sorted(r):
                if r[j]:
                    fh.write(f"{i} {j + 1} {_fmt(r[j])}\n")


def read_triples(path: str | Path) -> ExactMatrix:
    with open(path) as fh:
        head = fh.readline().split()
        nrows, ncols, fname = int(head[0]), int(head[1]), head[2]
        field = RATIONAL if fname == "QQ" else Field(int(fname[3:-1]))
        rows: list[dict] = [{} for _ in range(nrows)]
        for line in fh:
            if not line.strip():
                continue
            i, j, v = line.split()
            val = Fraction(v)
            rows[int(i) - 1][int(j) - 1] = val.numerator if val.denominator == 1 else val
    return ExactMatrix(nrows, ncols, rows, field=field)


def export_csv(m: ExactMatrix, path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        for row in m.dense():
            w.writerow([_fmt(v) for v in row])


def export_matrix(m: ExactMatrix, path: str | Path) -> None:
    """Pick the format from the suffix: ``.csv`` dense, anything else triples."""
    if str(path).endswith(".csv"):
        export_csv(m, path)
    else:
        export_triples(m, path)


def dump_json(obj, path: str | Path | None = None) -> str:
    text = json.dumps(obj, indent=2, default=str)
    if path is not None:
        Path(path).write_text(text)
    return text

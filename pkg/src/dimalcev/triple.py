"""The trilinear operation <a,b,c> = 2(ab)c + a(bc) + (ac)b.

:func:`check_degree3` and :func:`check_degree5` expand ternary monomials
into binary ones and reduce the expansions against the consequences of
right anticommutativity (and, in degree 5, of the di-Malcev identity).
Rows of the reduced matrix that pivot in the ternary part are identities
of the operation; in degree 5 they are compared with the orbits of the
Leibniz triple system identities.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
import scipy.sparse as sp

from .consequences import (
    di_malcev,
    lift_algebra_identity,
    permutation_orbit,
    rac_consequences,
    right_anticommutativity,
)
from .linalg import (
    DEFAULT_PRIME,
    ExactMatrix,
    Field,
    GeneratorReport,
    ModularEchelon,
    NewIdentityReport,
    build_block_matrix,
    extract_new_identities,
    minimal_generators,
    orbit_span_rank,
    orbit_table,
    rcf,
)
from .monomials import (
    LEAF,
    SINGLE,
    TRI,
    Polynomial,
    basis_index,
    binary_types,
    enumerate_multilinear_basis,
    from_vector,
    product,
    sparse_vector,
)

log = logging.getLogger(__name__)

_T3 = (TRI, LEAF, LEAF, LEAF)


def tri(x, y, z):
    return (TRI, x, y, z)


@lru_cache(maxsize=None)
def ternary_types(n: int) -> tuple:
    """Ternary association types in degree 3 or 5."""
    if n == 1:
        return (LEAF,)
    if n == 3:
        return (_T3,)
    if n == 5:
        return (tri(_T3, LEAF, LEAF), tri(LEAF, _T3, LEAF), tri(LEAF, LEAF, _T3))
    raise ValueError("ternary monomials are supported in degrees 1, 3 and 5")


@lru_cache(maxsize=None)
def ternary_basis(n: int) -> tuple:
    return tuple(enumerate_multilinear_basis(ternary_types(n), n))


@lru_cache(maxsize=None)
def binary_basis(n: int) -> tuple:
    return tuple(enumerate_multilinear_basis(binary_types(n), n))


@lru_cache(maxsize=8192)
def _ltp(m) -> Polynomial:
    if isinstance(m, int):
        return Polynomial.monomial(m)
    if m[0] != TRI:
        raise ValueError("expected a ternary monomial")
    x, y, z = (_ltp(c) for c in m[1:])
    xy_z = product(SINGLE, product(SINGLE, x, y), z)
    x_yz = product(SINGLE, x, product(SINGLE, y, z))
    xz_y = product(SINGLE, product(SINGLE, x, z), y)
    return 2 * xy_z + x_yz + xz_y


def ltp_expand(m) -> Polynomial:
    """Replace every ternary node by ``2(xy)z + x(yz) + (xz)y``."""
    return _ltp(m)


def ltp_expand_polynomial(p: Polynomial) -> Polynomial:
    return p.map_monomials(ltp_expand)


def leibniz_triple_identities() -> list[Polynomial]:
    """The two defining identities of Leibniz triple systems, as ``rhs - lhs``."""

    def first(x, y, z, u, v):
        return tri(tri(x, y, z), u, v)

    one = Polynomial(
        {
            tri(1, tri(2, 3, 4), 5): -1,
            first(1, 2, 3, 4, 5): 1,
            first(1, 3, 2, 4, 5): -1,
            first(1, 4, 2, 3, 5): -1,
            first(1, 4, 3, 2, 5): 1,
        }
    )
    two = Polynomial(
        {
            tri(1, 2, tri(3, 4, 5)): -1,
            first(1, 2, 3, 4, 5): 1,
            first(1, 2, 4, 3, 5): -1,
            first(1, 2, 5, 3, 4): -1,
            first(1, 2, 5, 4, 3): 1,
        }
    )
    return [one, two]


# -- degree 3 -----------------------------------------------------------------


def degree3_matrix() -> ExactMatrix:
    """The 12 x 18 block matrix: right anticommutativity orbit over expansions."""
    left = binary_basis(3)
    A = ExactMatrix.from_polynomials(permutation_orbit(right_anticommutativity()), left)
    E = ExactMatrix.from_polynomials([ltp_expand(m) for m in ternary_basis(3)], left)
    return build_block_matrix(A, E)


@dataclass
class Degree3Report:
    matrix: ExactMatrix
    rcf: ExactMatrix
    rank: int
    identities: NewIdentityReport

    def to_json(self) -> dict:
        return {
            "shape": list(self.matrix.shape),
            "rank": self.rank,
            "new_identities": self.identities.count,
            "denominator_lcm": self.identities.denominator_lcm,
        }


def check_degree3() -> Degree3Report:
    M = degree3_matrix()
    R = rcf(M)
    rep = extract_new_identities(R, ternary_basis(3))
    return Degree3Report(M, R.matrix, R.rank, rep)


# -- degree 5 -----------------------------------------------------------------


@lru_cache(maxsize=None)
def malcev_dialgebra_identities_degree5() -> tuple:
    """30 liftings of right anticommutativity, then 6 of the di-Malcev identity."""
    return tuple(rac_consequences(5)) + tuple(lift_algebra_identity(di_malcev(), 4))


def _dense_rows(polys, index, ncols, p) -> np.ndarray:
    f = Field(p)
    out = np.zeros((len(polys), ncols), dtype=np.int64)
    for i, q in enumerate(polys):
        for j, c in sparse_vector(q, index).items():
            out[i, j] = f.convert(c)
    return out


def degree5_blocks(prime: int = DEFAULT_PRIME):
    """``(upper, lower)`` integer blocks of the 4680 x 2040 matrix modulo ``prime``."""
    left = binary_basis(5)
    right = ternary_basis(5)
    idx = basis_index(left)
    upper_polys = [q for p in malcev_dialgebra_identities_degree5() for q in permutation_orbit(p)]
    upper = _dense_rows(upper_polys, idx, len(left), prime)
    upper = np.hstack([upper, np.zeros((len(upper_polys), len(right)), dtype=np.int64)])
    lower = _dense_rows([ltp_expand(m) for m in right], idx, len(left), prime)
    lower = np.hstack([lower, np.eye(len(right), dtype=np.int64)])
    return upper, lower


@dataclass
class Degree5Report:
    prime: int
    shape: tuple
    rank: int
    new_rows: int
    generators: GeneratorReport
    definition_rank: int
    joint_rank: int
    identities: list = field(default_factory=list, repr=False)
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {
            "prime": self.prime,
            "shape": list(self.shape),
            "rank": self.rank,
            "new_identities": self.new_rows,
            "progression": [[i, r] for i, r in self.generators.progression],
            "generators": self.generators.generators,
            "generator_rank": self.generators.rank,
            "definition_orbit_rank": self.definition_rank,
            "joint_rank": self.joint_rank,
            "seconds": round(self.seconds, 2),
        }


def check_degree5(prime: int = DEFAULT_PRIME, progress: bool = False, ties: str = "desc") -> Degree5Report:
    """Rank, new identities and generator progression of the degree-5 matrix.

    The new identities are sorted by their number of nonzero coefficients;
    ``ties`` orders rows with equal counts by descending (``"desc"``) or
    ascending (``"asc"``) position in the echelon form.
    """
    if ties not in ("asc", "desc"):
        raise ValueError("ties must be 'asc' or 'desc'")
    t0 = time.time()
    upper, lower = degree5_blocks(prime)
    ncols = upper.shape[1]
    split = len(binary_basis(5))
    eng = ModularEchelon(ncols, prime)
    for s in range(0, upper.shape[0], 1080):
        eng.add_rows(sp.csr_matrix(upper[s : s + 1080]))
        if progress:
            log.info("degree 5: %d rows, rank %d", eng.rows_seen, eng.rank)
    eng.add_rows(sp.csr_matrix(lower))
    rows, piv = eng.rows()
    right = ternary_basis(5)
    new = rows[piv >= split][:, split:]
    pos = np.arange(new.shape[0])
    order = np.lexsort((pos if ties == "asc" else -pos, (new != 0).sum(axis=1)))
    new = new[order]
    field_ = Field(prime)
    ids = [from_vector({int(j): field_.symmetric(int(v)) for j, v in enumerate(r) if v}, right) for r in new]
    table = orbit_table(right)
    gens = minimal_generators(ids, right, field_, table)
    defs = []
    for q in leibniz_triple_identities():
        defs.append([field_.convert(q.coefficient(m)) for m in right])
    def_rank = orbit_span_rank(defs, table, field_)
    tail = [[int(x) for x in new[i - 1]] for i in gens.generators]
    joint = orbit_span_rank(tail + defs, table, field_)
    if progress:
        log.info("degree 5 done in %.1fs", time.time() - t0)
    return Degree5Report(
        prime,
        (upper.shape[0] + lower.shape[0], ncols),
        eng.rank,
        len(ids),
        gens,
        def_rank,
        joint,
        ids,
        time.time() - t0,
    )

"""Named end-to-end computations and their comparison with published values."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import Any, Callable

from . import reference_values as ref
from .consequences import (
    alternative_dialgebra_identities,
    alternative_identities_in_degree,
    di_malcev,
    free_rac_monomials,
    free_rac_product,
    permutation_orbit,
    rac_basis,
    rac_consequences,
    rac_straighten_polynomial,
    right_anticommutativity,
)
from .dialgebra import build_expansion_rows, dialgebra_type_count, fd_basis, fd_dimension
from .kolesnikov import (
    anticommutativity,
    associativity,
    eliminate_second_op,
    kp_part2,
    kp_transform,
    linearized_alternativity,
    sagle_malcev,
)
from .linalg import (
    DEFAULT_PRIME,
    RATIONAL,
    ExactMatrix,
    Field,
    build_block_matrix,
    export_matrix,
    extract_new_identities,
    rank,
    rcf,
    span_rank_under_permutations,
)
from .monomials import (
    LEFT,
    RIGHT,
    SINGLE,
    Polynomial,
    binary_types,
    catalan,
    enumerate_multilinear_basis,
)

log = logging.getLogger(__name__)


@dataclass
class Check:
    label: str
    expected: Any
    actual: Any

    @property
    def passed(self) -> bool:
        return self.expected == self.actual


@dataclass
class RunReport:
    name: str
    inputs: dict = field(default_factory=dict)
    shapes: dict = field(default_factory=dict)
    ranks: dict = field(default_factory=dict)
    identities: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, label, expected, actual):
        self.checks.append(Check(label, _plain(expected), _plain(actual)))

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "inputs": self.inputs,
            "shapes": {k: list(v) for k, v in self.shapes.items()},
            "ranks": self.ranks,
            "identities": self.identities,
            "checks": [
                {"label": c.label, "expected": c.expected, "actual": c.actual, "passed": c.passed}
                for c in self.checks
            ],
            "extra": self.extra,
            "passed": self.passed,
            "seconds": round(self.seconds, 3),
        }

    def to_text(self) -> str:
        lines = [f"{self.name}: {'PASS' if self.passed else 'FAIL'} ({self.seconds:.2f}s)"]
        for k, v in self.inputs.items():
            lines.append(f"  input {k} = {v}")
        for k, v in self.shapes.items():
            lines.append(f"  shape {k} = {v[0]} x {v[1]}")
        for k, v in self.ranks.items():
            lines.append(f"  rank {k} = {v}")
        for s in self.identities:
            lines.append(f"  identity {s}")
        for k, v in self.extra.items():
            lines.append(f"  {k} = {v}")
        for c in self.checks:
            mark = "ok  " if c.passed else "FAIL"
            lines.append(f"  [{mark}] {c.label}: expected {c.expected}, got {c.actual}")
        return "\n".join(lines)


def _plain(x):
    if isinstance(x, tuple):
        return [_plain(v) for v in x]
    if isinstance(x, list):
        return [_plain(v) for v in x]
    return x


# -- Kolesnikov pipelines ---------------------------------------------------------


def two_operation_types(n: int) -> list:
    """Binary types with every node labelled ``L`` or ``R``."""

    def label(t):
        if isinstance(t, int):
            return [t]
        out = []
        for op in (LEFT, RIGHT):
            for x in label(t[1]):
                for y in label(t[2]):
                    out.append((op, x, y))
        return out

    return [s for t in binary_types(n) for s in label(t)]


def two_operation_basis(n: int) -> list:
    return enumerate_multilinear_basis(two_operation_types(n), n)


def associative_dialgebra_identities() -> list[Polynomial]:
    """Left, inner and right associativity followed by the two bar identities."""
    a, b, c = 1, 2, 3

    def assoc(o1, o2, o3, o4):
        return Polynomial({(o2, (o1, a, b), c): 1, (o3, a, (o4, b, c)): -1})

    return [
        assoc(LEFT, LEFT, LEFT, LEFT),
        assoc(RIGHT, LEFT, RIGHT, LEFT),
        assoc(RIGHT, RIGHT, RIGHT, RIGHT),
    ] + kp_part2()


def _same_up_to_sign(xs, ys) -> bool:
    def norm(p):
        lead = p.terms()[0][1]
        return p if lead > 0 else -p

    left = [norm(p) for p in xs]
    right = [norm(p) for p in ys]
    return len(left) == len(right) and all(p in right for p in left) and all(q in left for q in right)


def _spans(a, b, basis, straighten=None, field=RATIONAL):
    ra = span_rank_under_permutations(a, basis, straighten, field)
    rb = span_rank_under_permutations(b, basis, straighten, field)
    rj = span_rank_under_permutations(list(a) + list(b), basis, straighten, field)
    return ra, rb, rj


def run_kp_associative(**_) -> RunReport:
    rep = RunReport("kp-associative")
    out = kp_transform([associativity()])
    rep.identities = [p.render() for p in out]
    rep.check("identity count", 5, len(out))
    rep.check("equal to associative dialgebra axioms", True, _same_up_to_sign(out, associative_dialgebra_identities()))
    return rep


def run_kp_alternative(**_) -> RunReport:
    rep = RunReport("kp-alternative")
    out = kp_transform(linearized_alternativity())
    target = alternative_dialgebra_identities(normal_form=False) + kp_part2()
    basis = two_operation_basis(3)
    ra, rb, rj = _spans(out, target, basis)
    rep.identities = [p.render() for p in out]
    rep.shapes["space"] = (1, len(basis))
    rep.ranks.update({"kolesnikov output": ra, "alternative dialgebra axioms": rb, "joint": rj})
    rep.check("identity count", 8, len(out))
    rep.check("spans equal", True, ra == rb == rj)
    return rep


def malcev_pipeline() -> dict:
    """The Malcev identities through Kolesnikov's algorithm and elimination."""
    anti = kp_transform([anticommutativity()])[:2]
    sagle = kp_transform([sagle_malcev()])[:4]
    bars = kp_part2()
    return {
        "anticommutativity": eliminate_second_op(anti),
        "degree4": eliminate_second_op(sagle),
        "bars": eliminate_second_op(bars),
        "two_operation": anti + sagle + bars,
    }


def run_kp_malcev(**_) -> RunReport:
    rep = RunReport("kp-malcev")
    pipe = malcev_pipeline()
    rep.check("anticommutativity collapses", [True, True], [p.is_zero() for p in pipe["anticommutativity"]])
    b3 = enumerate_multilinear_basis(binary_types(3), 3)
    r3 = _spans(pipe["bars"], [right_anticommutativity()], b3)
    b4 = enumerate_multilinear_basis(binary_types(4), 4)
    rac4 = rac_consequences(4)
    r4 = _spans(list(pipe["degree4"]) + rac4, [di_malcev()] + rac4, b4)
    rep.ranks.update({"degree 3 (pipeline, target, joint)": list(r3), "degree 4 (pipeline, target, joint)": list(r4)})
    rep.identities = [p.render() for p in pipe["bars"] + pipe["degree4"]]
    rep.extra["result"] = [right_anticommutativity().render(), di_malcev().render()]
    rep.check("degree 3 spans equal", True, r3[0] == r3[1] == r3[2])
    rep.check("degree 4 spans equal", True, r4[0] == r4[1] == r4[2])
    return rep


# -- degrees 3 and 4 -------------------------------------------------------------


def degree3_blocks():
    ids = alternative_dialgebra_identities()
    A = ExactMatrix.from_polynomials([q for p in ids for q in permutation_orbit(p)], fd_basis(3))
    source = enumerate_multilinear_basis(binary_types(3), 3)
    E = build_expansion_rows(source, 3)
    return A, E, source


def degree4_blocks():
    ids = alternative_identities_in_degree(4)
    A = ExactMatrix.from_polynomials([q for p in ids for q in permutation_orbit(p)], fd_basis(4))
    source = list(rac_basis(4).monomials)
    E = build_expansion_rows(source, 4)
    return A, E, source


def _export(M, path):
    if path:
        export_matrix(M, path)
        log.info("matrix written to %s", path)


def run_degree3(export: str | None = None, **_) -> RunReport:
    rep = RunReport("degree3")
    A, E, source = degree3_blocks()
    M = build_block_matrix(A, E)
    _export(M, export)
    R = rcf(M)
    new = extract_new_identities(R, source)
    rep.shapes.update({"A": A.shape, "E": E.shape, "M": M.shape})
    rep.ranks.update({"M": R.rank, "left": new.left_rank})
    rep.identities = [p.render() for p in new.identities]
    expected = [q for q in permutation_orbit(right_anticommutativity())]
    rep.check("matrix shape", ref.DEGREE3["shape"], M.shape)
    rep.check("new identities", ref.DEGREE3["new_identities"], new.count)
    rep.check("identities are permutations of a(bc)+a(cb)", True, _same_up_to_sign(new.identities, _distinct(expected)))
    rep.check("denominator lcm", ref.DEGREE3["denominator_lcm"], new.denominator_lcm)
    return rep


def _distinct(polys):
    out = []
    for p in polys:
        if p not in out and -p not in out:
            out.append(p)
    return out


def run_degree4(export: str | None = None, prime: int | None = DEFAULT_PRIME, **_) -> RunReport:
    rep = RunReport("degree4")
    A, E, source = degree4_blocks()
    M = build_block_matrix(A, E)
    _export(M, export)
    R = rcf(M)
    new = extract_new_identities(R, source)
    dm = di_malcev()
    orbit = span_rank_under_permutations([dm], source, rac_straighten_polynomial)
    rep.shapes.update({"A": A.shape, "E": E.shape, "M": M.shape})
    rep.ranks.update({"M": R.rank, "left": new.left_rank, "di-Malcev orbit": orbit})
    rep.identities = [p.render() for p in new.identities[:1]]
    rep.check("matrix shape", ref.DEGREE4["shape"], M.shape)
    rep.check("RAC basis size", ref.DEGREE4["rac_basis"], len(source))
    rep.check("new identities", ref.DEGREE4["new_identities"], new.count)
    rep.check("first identity is di-Malcev up to sign", True, new.identities[0] in (dm, -dm))
    rep.check("di-Malcev orbit rank", ref.DEGREE4["malcev_orbit_rank"], orbit)
    together = span_rank_under_permutations([dm] + new.identities, source, rac_straighten_polynomial)
    rep.check("new identities are consequences of di-Malcev", orbit, together)
    if prime:
        mod = rank(M, Field(prime))
        rep.ranks[f"M mod {prime}"] = mod
        rep.check(f"rank mod {prime} equals rational rank", R.rank, mod)
    return rep


# -- representation theory ----------------------------------------------------------


def _check_degree_options(n, rational, force):
    if n not in ref.MULTIPLICITIES:
        raise ValueError(f"published values exist for degrees 3..6, not {n}")
    if rational and n >= 6 and not force:
        raise ValueError("rational arithmetic in degree 6 is very slow; pass --force to run it anyway")


def _only(n, partition):
    if partition is None:
        return None
    if sum(partition) != n:
        raise ValueError(f"partition {tuple(partition)} is not a partition of {n}")
    return {tuple(partition)}


def run_multiplicities(
    degree: int = 5,
    prime: int | None = DEFAULT_PRIME,
    rational: bool = False,
    force: bool = False,
    jobs: int = 1,
    checkpoint: str | None = None,
    partition=None,
    verify_prime: int | None = None,
    **_,
) -> RunReport:
    from .repn import multiplicity_table, partition_name, partitions

    _check_degree_options(degree, rational, force)
    rep = RunReport("multiplicities")
    field_ = RATIONAL if rational else Field(prime or DEFAULT_PRIME)
    rep.inputs.update({"degree": degree, "field": field_.name})
    only = _only(degree, partition)
    table = multiplicity_table(degree, prime, rational, jobs, checkpoint, progress=True, only=only)
    published = dict(zip(partitions(degree), ref.MULTIPLICITIES[degree]))
    rep.extra["table"] = {partition_name(k): v for k, v in table.items()}
    for lam, v in table.items():
        rep.check(f"partition {partition_name(lam)}", published[lam], v)
    if verify_prime:
        other = multiplicity_table(degree, verify_prime, False, jobs, checkpoint, progress=True, only=only)
        bad = [partition_name(k) for k in table if other[k] != table[k]]
        rep.extra[f"disagreement mod {verify_prime}"] = bad
        rep.check(f"agreement mod {verify_prime}", [], bad)
    return rep


def run_special_search(
    degree: int = 5,
    prime: int | None = DEFAULT_PRIME,
    rational: bool = False,
    force: bool = False,
    jobs: int = 1,
    checkpoint: str | None = None,
    partition=None,
    **_,
) -> RunReport:
    """Consequence ranks of right anticommutativity and di-Malcev against the multiplicities."""
    from .repn import consequence_rank_table, partition_name, partitions

    _check_degree_options(degree, rational, force)
    rep = RunReport("special-search")
    field_ = RATIONAL if rational else Field(prime or DEFAULT_PRIME)
    rep.inputs.update({"degree": degree, "field": field_.name})
    only = _only(degree, partition)
    table = consequence_rank_table(degree, prime, rational, jobs, checkpoint, progress=True, only=only)
    published = dict(zip(partitions(degree), ref.MULTIPLICITIES[degree]))
    rep.extra["table"] = {partition_name(k): v for k, v in table.items()}
    for lam, v in table.items():
        rep.check(f"partition {partition_name(lam)}", published[lam], v)
    return rep


# -- triple systems --------------------------------------------------------------------


def run_triple3(export: str | None = None, **_) -> RunReport:
    from .triple import check_degree3

    rep = RunReport("triple3")
    r = check_degree3()
    _export(r.matrix, export)
    rep.shapes["M"] = r.matrix.shape
    rep.ranks["M"] = r.rank
    first = r.rcf.rows[0]
    rep.extra["first RCF row, right part"] = [str(first.get(12 + j, 0)) for j in range(6)]
    rep.check("matrix shape", ref.TRIPLE3["shape"], r.matrix.shape)
    rep.check("rank", ref.TRIPLE3["rank"], r.rank)
    rep.check("new identities", ref.TRIPLE3["new_identities"], r.identities.count)
    return rep


def run_triple5(prime: int | None = DEFAULT_PRIME, **_) -> RunReport:
    from .triple import check_degree5

    p = prime or ref.TRIPLE5["prime"]
    rep = RunReport("triple5")
    r = check_degree5(p, progress=True)
    rep.inputs["prime"] = p
    rep.shapes["M"] = r.shape
    rep.ranks.update({"M": r.rank, "generators": r.generators.rank, "definition orbits": r.definition_rank, "joint": r.joint_rank})
    rep.identities = [r.identities[i - 1].render() for i in r.generators.generators]
    rep.check("matrix shape", ref.TRIPLE5["shape"], r.shape)
    rep.check("rank", ref.TRIPLE5["rank"], r.rank)
    rep.check("new identities", ref.TRIPLE5["new_identities"], r.new_rows)
    rep.check("progression indices", [i for i, _ in ref.TRIPLE5["progression"]], [i for i, _ in r.generators.progression])
    rep.check("progression ranks", [k for _, k in ref.TRIPLE5["progression"]], [k for _, k in r.generators.progression])
    rep.check("final generators", ref.TRIPLE5["generators"], r.generators.generators)
    rep.check("definition orbit span", ref.TRIPLE5["span"], r.definition_rank)
    rep.check("joint span with generators", ref.TRIPLE5["span"], r.joint_rank)
    return rep


# -- small free algebras -------------------------------------------------------------------


def free_rac_dimension(k: int, n: int) -> int:
    """Dimension of the degree-``n`` part of the free RAC algebra on ``k`` generators."""
    if k < 1 or n < 1:
        raise ValueError("k and n must be positive")
    return len(free_rac_monomials(k, n))


def leibniz_dimension(k: int, n: int) -> int:
    """Degree-``n`` part of the free Leibniz algebra on ``k`` generators."""
    if k < 1 or n < 1:
        raise ValueError("k and n must be positive")
    return k**n


def power(n: int):
    """``a^n`` with ``a^1 = a`` and ``a^(m+1) = a^m a``."""
    t = 1
    for _ in range(n - 1):
        t = (SINGLE, t, 1)
    return t


def one_generator_table(max_degree: int = 6) -> dict[tuple[int, int], tuple[int, object]]:
    """``{(n, m): straightened a^n a^m}`` for ``n + m <= max_degree``."""
    out = {}
    for n in range(1, max_degree):
        for m in range(1, max_degree - n + 1):
            out[(n, m)] = free_rac_product(power(n), power(m))
    return out


def one_generator_table_ok(max_degree: int = 6) -> bool:
    for (n, m), value in one_generator_table(max_degree).items():
        expect = (1, power(n + 1)) if m == 1 else (0, None)
        if value != expect:
            return False
    return all(free_rac_dimension(1, n) == 1 for n in range(1, max_degree + 1))


def run_freedim(k: int = 2, degree: int = 3, **_) -> RunReport:
    rep = RunReport("freedim")
    n = degree
    rep.inputs.update({"generators": k, "degree": n})
    dim = free_rac_dimension(k, n)
    rep.ranks.update({"free RAC": dim, "free Leibniz": leibniz_dimension(k, n)})
    if (k, n) == (ref.FREE_RAC["k"], ref.FREE_RAC["n"]):
        from .monomials import render

        rep.identities = [render(m) for m in free_rac_monomials(k, n)]
        rep.check("free RAC dimension", ref.FREE_RAC["dimension"], dim)
        rep.check("free Leibniz dimension", ref.FREE_RAC["leibniz"], leibniz_dimension(k, n))
    if k == 1:
        rep.check("one-generator multiplication table", True, one_generator_table_ok(max(n, 6)))
    return rep


# -- registry ----------------------------------------------------------------------------------


def counting_summary(max_degree: int = 6) -> dict:
    return {
        "K": [catalan(n) for n in range(1, max_degree + 1)],
        "Z": [dialgebra_type_count(n) for n in range(1, max_degree + 1)],
        "FD": {n: fd_dimension(n) for n in (3, 4)},
    }


RUNS: dict[str, Callable[..., RunReport]] = {
    "kp-associative": run_kp_associative,
    "kp-alternative": run_kp_alternative,
    "kp-malcev": run_kp_malcev,
    "degree3": run_degree3,
    "degree4": run_degree4,
    "multiplicities": run_multiplicities,
    "special-search": run_special_search,
    "triple3": run_triple3,
    "triple5": run_triple5,
    "freedim": run_freedim,
}


def run(name: str, **options) -> RunReport:
    """Execute the named computation; unknown names raise ``KeyError``."""
    try:
        fn = RUNS[name]
    except KeyError:
        raise KeyError(f"unknown run {name!r}; choose from {', '.join(RUNS)}") from None
    t0 = time.time()
    rep = fn(**options)
    rep.seconds = time.time() - t0
    return rep

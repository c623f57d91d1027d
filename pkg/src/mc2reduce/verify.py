"""Exact-arithmetic ground truth: rational solving, round-trips, cross-checks.

Everything here is an independent oracle for the reduction machinery: the
solver is plain sparse Gaussian elimination over exact rationals (no floating
point anywhere), the round-trip check plants a solution and drags it through
all three reduction stages and back, and the equivalence check compares the
sequentially built reduced matrix against the local entry oracle coordinate
by coordinate.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import kernels
from .matrix import MatrixClass, SparseIntSystem, check_class
from .oracle import OracleContext
from .pairreplace import (
    Mc2Gadget,
    ReductionTrace,
    recover_gz2_from_mc2,
    reduce_gz2_to_mc2,
)
from .stages import (
    StageCert,
    recover_g_from_gz,
    recover_gz_from_gz2,
    reduce_g_to_gz,
    reduce_gz_to_gz2,
)

SOLVABLE = "Solvable"
UNSOLVABLE = "Unsolvable"


@dataclass(frozen=True)
class SolveOutcome:
    status: str
    witness: tuple[Fraction, ...] | None
    rank: int

    @property
    def solvable(self) -> bool:
        return self.status == SOLVABLE


def exact_solve(sys: SparseIntSystem) -> SolveOutcome:
    """Solve ``A x = b`` exactly; the witness zeroes all free variables."""
    rows = sys.rows()
    rhs = list(sys.rhs)
    pivots = kernels.eliminate(rows, rhs)
    pivot_rows = {r for r, _ in pivots}
    for q in range(sys.m):
        if q in pivot_rows:
            continue
        if rows[q]:
            raise AssertionError("elimination left a non-pivot row with entries")
        if rhs[q] != 0:
            return SolveOutcome(UNSOLVABLE, None, len(pivots))
    values: dict[int, Fraction] = {}
    for r, c in reversed(pivots):
        acc = Fraction(rhs[r])
        for cc, v in rows[r].items():
            if cc != c:
                acc -= v * values.get(cc, 0)
        values[c] = acc / rows[r][c]
    witness = tuple(values.get(j, Fraction(0)) for j in range(1, sys.n + 1))
    return SolveOutcome(SOLVABLE, witness, len(pivots))


def residual(sys: SparseIntSystem, x: Sequence[Fraction | int]) -> tuple[Fraction, ...]:
    """``A x - b`` with exact rationals."""
    if len(x) != sys.n:
        raise ValueError(f"vector length {len(x)} != column count {sys.n}")
    acc = [Fraction(-b) for b in sys.rhs]
    for (i, j), v in sys.entries.items():
        acc[i - 1] += v * Fraction(x[j - 1])
    return tuple(acc)


def is_solution(sys: SparseIntSystem, x: Sequence[Fraction | int]) -> bool:
    return all(v == 0 for v in residual(sys, x))


# ---------------------------------------------------------------------------
# Gadget and oracle cross-checks


def gadget_sum_check(rows: Sequence[dict[int, int]], g: Mc2Gadget) -> bool:
    """True iff the rows sum, as vectors, to ``2 x_t - x_{j1} - x_{j2} = 0``."""
    total: dict[int, int] = {}
    for row in rows:
        for c, v in row.items():
            val = total.get(c, 0) + v
            if val == 0:
                total.pop(c, None)
            else:
                total[c] = val
    expected: dict[int, int] = {}
    for c, v in ((g.t, 2), (g.j1, -1), (g.j2, -1)):
        val = expected.get(c, 0) + v
        if val == 0:
            expected.pop(c, None)
        else:
            expected[c] = val
    return total == expected


@dataclass(frozen=True)
class EquivalenceReport:
    """Outcome of comparing the sequential builder against the entry oracle."""

    passed: bool
    dims_built: tuple[int, int]
    dims_oracle: tuple[int, int]
    mismatch: tuple[int, int, int, int] | None  # (i, j, built, oracle)
    detail: str

    def render(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        lines = [
            f"oracle-equivalence: {status}",
            f"  builder dims {self.dims_built[0]}x{self.dims_built[1]}, "
            f"oracle dims {self.dims_oracle[0]}x{self.dims_oracle[1]}",
        ]
        if self.mismatch is not None:
            i, j, built, orc = self.mismatch
            lines.append(f"  first mismatch at ({i}, {j}): builder {built}, oracle {orc}")
        if self.detail:
            lines.append(f"  {self.detail}")
        return "\n".join(lines)


def _compare_with_oracle(
    ctx: OracleContext, candidate: SparseIntSystem
) -> EquivalenceReport:
    dims_cand = (candidate.m, candidate.n)
    dims_oracle = ctx.dims()
    if dims_cand != dims_oracle:
        return EquivalenceReport(False, dims_cand, dims_oracle, None, "dimension mismatch")
    cand_rows = candidate.rows()
    for i in range(1, candidate.m + 1):
        crow = cand_rows[i - 1]
        orow = ctx.row_entries(i)
        if crow != orow:
            j = min(set(crow) ^ set(orow) | {c for c in crow if crow[c] != orow.get(c)})
            return EquivalenceReport(
                False,
                dims_cand,
                dims_oracle,
                (i, j, crow.get(j, 0), orow.get(j, 0)),
                "entry mismatch",
            )
        if candidate.rhs[i - 1] != ctx.rhs_entry(i):
            return EquivalenceReport(
                False, dims_cand, dims_oracle, None, f"rhs mismatch at row {i}"
            )
    return EquivalenceReport(True, dims_cand, dims_oracle, None, "")


def oracle_equivalence_check(sys: SparseIntSystem) -> EquivalenceReport:
    """Compare the built matrix and the oracle on every coordinate.

    Both sides describe rows by their (tiny) nonzero support, so comparing
    supports and values per row proves pointwise equality over the whole
    ``m' x n'`` index grid, right-hand side included.
    """
    built, _ = reduce_gz2_to_mc2(sys)
    return _compare_with_oracle(OracleContext(sys), built)


def compare_against_oracle(
    sys: SparseIntSystem, candidate: SparseIntSystem
) -> EquivalenceReport:
    """Check a claimed reduced system against the oracle of its Gz2 source."""
    return _compare_with_oracle(OracleContext(sys), candidate)


# ---------------------------------------------------------------------------
# End-to-end pipeline checks


@dataclass(frozen=True)
class PipelineReport:
    """Outcome of one planted-solution round trip through all three stages."""

    passed: bool
    stage_dims: tuple[tuple[int, int], ...]  # (m, n) for G, Gz, Gz2, MC2
    gadget_count: int
    recovered: tuple[Fraction, ...] | None
    detail: str

    def render(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        names = ("G", "Gz", "Gz2", "MC2")
        dims = ", ".join(
            f"{name} {m}x{n}" for name, (m, n) in zip(names, self.stage_dims)
        )
        lines = [f"pipeline-roundtrip: {status}", f"  {dims}", f"  gadgets {self.gadget_count}"]
        if self.detail:
            lines.append(f"  {self.detail}")
        return "\n".join(lines)


def reduce_full(
    sys: SparseIntSystem,
) -> tuple[SparseIntSystem, StageCert, StageCert, ReductionTrace]:
    """Run all three stages on a class-G system."""
    gz, cert1 = reduce_g_to_gz(sys)
    gz2, cert2 = reduce_gz_to_gz2(gz)
    mc2, trace = reduce_gz2_to_mc2(gz2)
    return mc2, cert1, cert2, trace


def recover_full(
    x_star: Sequence[Fraction | int],
    cert1: StageCert,
    cert2: StageCert,
    trace: ReductionTrace,
) -> tuple[Fraction, ...]:
    """Undo all three stages on a solution of the final system."""
    return recover_g_from_gz(
        recover_gz_from_gz2(recover_gz2_from_mc2(x_star, trace), cert2), cert1
    )


def pipeline_roundtrip(
    sys: SparseIntSystem, x_seed: Sequence[Fraction | int]
) -> PipelineReport:
    """Plant ``b = A x_seed``, reduce to the 2-commodity system, solve it
    exactly, recover, and check the recovered vector solves the original.

    ``A x_seed`` must be integral (integer seeds always are).
    """
    check_class(sys, MatrixClass.G)
    if len(x_seed) != sys.n:
        raise ValueError(f"seed length {len(x_seed)} != column count {sys.n}")
    b = []
    for i, row in enumerate(sys.rows(), start=1):
        acc = sum(v * Fraction(x_seed[j - 1]) for j, v in row.items())
        if acc.denominator != 1:
            raise ValueError(f"A x_seed is not integral at row {i} ({acc})")
        b.append(acc.numerator)
    planted = SparseIntSystem(sys.m, sys.n, dict(sys.entries), tuple(b), MatrixClass.G)

    gz, cert1 = reduce_g_to_gz(planted)
    gz2, cert2 = reduce_gz_to_gz2(gz)
    mc2, trace = reduce_gz2_to_mc2(gz2)
    stage_dims = ((planted.m, planted.n), (gz.m, gz.n), (gz2.m, gz2.n), (mc2.m, mc2.n))

    outcome = exact_solve(mc2)
    if not outcome.solvable:
        return PipelineReport(
            False, stage_dims, trace.n_repl, None, "reduced system reported unsolvable"
        )
    recovered = recover_full(outcome.witness, cert1, cert2, trace)
    if not is_solution(planted, recovered):
        return PipelineReport(
            False, stage_dims, trace.n_repl, recovered, "recovered vector is not a solution"
        )
    return PipelineReport(True, stage_dims, trace.n_repl, recovered, "")


def stage_solvability(sys: SparseIntSystem) -> list[tuple[str, str]]:
    """Exact solvability status of a class-G system at every pipeline stage."""
    check_class(sys, MatrixClass.G)
    gz, _ = reduce_g_to_gz(sys)
    gz2, _ = reduce_gz_to_gz2(gz)
    mc2, _trace = reduce_gz2_to_mc2(gz2)
    return [
        (MatrixClass.G, exact_solve(sys).status),
        (MatrixClass.GZ, exact_solve(gz).status),
        (MatrixClass.GZ2, exact_solve(gz2).status),
        (MatrixClass.MC2, exact_solve(mc2).status),
    ]


# ---------------------------------------------------------------------------
# Seeded instance generators


def random_g_system(
    rng: random.Random, max_m: int = 6, max_n: int = 6, max_abs: int = 31
) -> SparseIntSystem:
    """Random class-G system: no all-zero row or column, entries in ±max_abs."""
    m = rng.randint(1, max_m)
    n = rng.randint(1, max_n)
    entries: dict[tuple[int, int], int] = {}

    def draw() -> int:
        v = rng.randint(1, max_abs)
        return -v if rng.random() < 0.5 else v

    for i in range(1, m + 1):
        cols = [j for j in range(1, n + 1) if rng.random() < 0.6]
        if not cols:
            cols = [rng.randint(1, n)]
        for j in cols:
            entries[i, j] = draw()
    covered = {j for (_, j) in entries}
    for j in range(1, n + 1):
        if j not in covered:
            entries[rng.randint(1, m), j] = draw()
    rhs = tuple(rng.randint(-max_abs, max_abs) for _ in range(m))
    return SparseIntSystem(m, n, entries, rhs, MatrixClass.G)


def random_unsolvable_g(
    rng: random.Random, max_m: int = 6, max_n: int = 6, max_abs: int = 31
) -> SparseIntSystem:
    """Random class-G system whose rhs contradicts a planted row dependency."""
    while True:
        base = random_g_system(rng, max_m=max_m - 1 if max_m > 2 else 2, max_n=max_n, max_abs=max_abs)
        rows = base.rows()
        if base.m >= 2:
            dep = {}
            for j in set(rows[0]) | set(rows[1]):
                v = rows[0].get(j, 0) + rows[1].get(j, 0)
                if v:
                    dep[j] = v
            dep_rhs = base.rhs[0] + base.rhs[1]
        else:
            dep = {j: 2 * v for j, v in rows[0].items()}
            dep_rhs = 2 * base.rhs[0]
        if not dep:
            continue  # the two rows cancelled; draw again
        entries = dict(base.entries)
        for j, v in dep.items():
            entries[base.m + 1, j] = v
        rhs = base.rhs + (dep_rhs + rng.randint(1, 5),)
        return SparseIntSystem(base.m + 1, base.n, entries, rhs, MatrixClass.G)


def _composition(rng: random.Random, total: int, parts: int) -> list[int]:
    """Split ``total`` into ``parts`` positive integers, uniformly at random."""
    cuts = sorted(rng.sample(range(1, total), parts - 1)) if parts > 1 else []
    bounds = [0] + cuts + [total]
    return [b - a for a, b in zip(bounds, bounds[1:])]


def random_gz2_row(
    rng: random.Random, n: int, max_w: int, columns: Sequence[int] | None = None
) -> dict[int, int]:
    """One valid Gz2 row over ``n`` columns: both signs sum to ``2**K``."""
    cols = list(columns) if columns is not None else list(range(1, n + 1))
    if len(cols) < 2:
        raise ValueError("need at least two columns for a zero-sum row")
    k_exp = rng.randint(0, max_w)
    total = 1 << k_exp
    e_pos = rng.randint(1, min(len(cols) - 1, total))
    e_neg = rng.randint(1, min(len(cols) - e_pos, total))
    chosen = rng.sample(cols, e_pos + e_neg)
    row: dict[int, int] = {}
    for j, mag in zip(chosen[:e_pos], _composition(rng, total, e_pos)):
        row[j] = mag
    for j, mag in zip(chosen[e_pos:], _composition(rng, total, e_neg)):
        row[j] = -mag
    return row


def random_gz2_system(
    rng: random.Random, max_m: int = 8, max_n: int = 8, max_w: int = 6
) -> SparseIntSystem:
    """Random valid Gz2 system with positive row sums up to ``2**max_w``."""
    m = rng.randint(1, max_m)
    n = rng.randint(2, max_n)
    entries: dict[tuple[int, int], int] = {}
    for i in range(1, m + 1):
        for j, v in random_gz2_row(rng, n, max_w).items():
            entries[i, j] = v
    rhs = tuple(rng.randint(-8, 8) for _ in range(m))
    return SparseIntSystem(m, n, entries, rhs, MatrixClass.GZ2)

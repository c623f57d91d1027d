"""Sequential pair-and-replace reduction from Gz2 systems to 2-commodity systems.

The scheme walks each row bit by bit.  Whenever two live entries of the same
sign both have bit ``k`` set (bit 1 is the least significant), it subtracts
``2**(k-1)`` from both and gives a fresh replacement variable a coefficient
of ``2**k``; an eight-equation 2-commodity gadget pins the replacement to the
average of the pair, ``2*x_t = x_{j1} + x_{j2}``.  Because each side of a row
sums to a power of two, every bit position pairs off evenly and each side
collapses to a single surviving variable carrying the whole sum.

Processing order is fixed: rows ascending, sign ``+`` before ``-``, bit
positions ascending, and within one round the two live entries with the
smallest column indices are paired first.  Replacement variables take columns
to the right of all original ones, so each round consumes the originals in
column order before the variables carried over from the previous round.  This
determinism is what makes the reduced matrix reconstructible entry-by-entry
by the local oracle.

Column layout of the output: the X block holds the ``n`` original variables,
then one replacement variable per gadget in creation order, then four
gadget-only variables per gadget; the Y block mirrors the X block, so variable
``y_v`` lives at column ``n_x + v``.  Row layout: the ``m`` transformed rows,
then the eight rows of each gadget in creation order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .matrix import MatrixClass, SparseIntSystem, check_class
from .rowstats import NEG, POS, RowStats, all_row_stats


@dataclass(frozen=True)
class Mc2Gadget:
    """One doubling gadget: replacement ``t``, four gadget-only variables at
    ``t_prime + 1 .. t_prime + 4``, and the paired variables ``j1``, ``j2``."""

    t: int
    t_prime: int
    j1: int
    j2: int


@dataclass(frozen=True)
class GadgetDescriptor:
    """Resolved identity of one gadget: where it sits and why it was created.

    ``ind`` is the 1-based creation rank; ``(i_src, k_src, s_src)`` is the
    row, bit position, and sign whose round created it, and ``ell`` the rank
    within that round.
    """

    ind: int
    t: int
    t_prime: int
    j1: int
    j2: int
    i_src: int
    k_src: int
    s_src: str
    ell: int

    def gadget(self) -> Mc2Gadget:
        return Mc2Gadget(self.t, self.t_prime, self.j1, self.j2)


@dataclass(frozen=True)
class ReductionTrace:
    """Layout metadata of a completed reduction; everything recovery needs."""

    n: int
    m: int
    n_repl: int
    n_g: int
    n_x: int
    n_final: int
    m_final: int
    gadgets: tuple[GadgetDescriptor, ...]
    per_row_stats: tuple[RowStats, ...]


# The eight gadget equations, in emission order.  Each term is (block, slot,
# coefficient) where block "x"/"y" selects the variable set and slot names one
# of the gadget's variables: "t", "j1", "j2", or 1..4 for t_prime + slot.
_GADGET_EQUATIONS: tuple[tuple[tuple[str, object, int], ...], ...] = (
    (("x", "t", 1), ("x", 1, -1)),
    (("x", 2, 1), ("x", "j2", -1)),
    (("y", 1, 1), ("y", 3, -1)),
    (("y", 4, 1), ("y", 2, -1)),
    (("x", 3, 1), ("x", "j1", -1)),
    (("x", "t", 1), ("x", 4, -1)),
    (("x", 4, 1), ("y", 4, -1), ("x", 3, -1), ("y", 3, 1)),
    (("x", 1, 1), ("y", 1, -1), ("x", 2, -1), ("y", 2, 1)),
)


def emit_gadget(g: Mc2Gadget, scale: int, n_x: int) -> list[dict[int, int]]:
    """The gadget's eight rows as sparse column->coefficient dicts.

    X variable ``v`` occupies column ``v``; its Y twin occupies ``n_x + v``.
    ``scale`` multiplies every row and must be nonzero.
    """
    if scale == 0:
        raise ValueError("gadget scale must be nonzero")

    def slot_var(slot: object) -> int:
        if slot == "t":
            v = g.t
        elif slot == "j1":
            v = g.j1
        elif slot == "j2":
            v = g.j2
        else:
            v = g.t_prime + int(slot)  # type: ignore[arg-type]
        if not 1 <= v <= n_x:
            raise IndexError(f"gadget variable {v} outside X block 1..{n_x}")
        return v

    rows: list[dict[int, int]] = []
    for eq in _GADGET_EQUATIONS:
        row: dict[int, int] = {}
        for block, slot, coeff in eq:
            col = slot_var(slot) + (n_x if block == "y" else 0)
            val = row.get(col, 0) + coeff * scale
            if val == 0:
                row.pop(col, None)
            else:
                row[col] = val
        rows.append(row)
    return rows


def _pair_side(
    side: dict[int, int],
    sign: str,
    i: int,
    n: int,
    g_total: int,
    next_ind: int,
    gadgets: list[GadgetDescriptor],
) -> int:
    """Run all pairing rounds for one sign of one working row, in place.

    ``side`` maps column -> magnitude of the live sign-``sign`` entries.
    Returns the updated global gadget counter.
    """
    width = sum(side.values()).bit_length()
    for k in range(1, width + 1):
        bit = 1 << (k - 1)
        candidates = sorted(c for c, mag in side.items() if mag & bit)
        ell = 0
        pos = 0
        while len(candidates) - pos >= 2:
            j1, j2 = candidates[pos], candidates[pos + 1]
            pos += 2
            ell += 1
            next_ind += 1
            for j in (j1, j2):
                side[j] -= bit
                if side[j] == 0:
                    del side[j]
            t = n + next_ind
            side[t] = bit << 1
            gadgets.append(
                GadgetDescriptor(
                    ind=next_ind,
                    t=t,
                    t_prime=n + g_total + 4 * (next_ind - 1),
                    j1=j1,
                    j2=j2,
                    i_src=i,
                    k_src=k,
                    s_src=sign,
                    ell=ell,
                )
            )
    if len(side) != 1:
        raise AssertionError(f"row {i} sign {sign}: pairing left {len(side)} live entries")
    return next_ind


def reduce_gz2_to_mc2(sys: SparseIntSystem) -> tuple[SparseIntSystem, ReductionTrace]:
    """Reduce a Gz2 system to an equivalent 2-commodity system.

    Pass 1 computes the total gadget budget from the per-row counting data
    (no mutation), fixing the column layout.  Pass 2 performs the actual
    pairing and emits the gadget rows.  A solution of the output restricted
    to its first ``n`` coordinates solves the input.
    """
    check_class(sys, MatrixClass.GZ2)
    stats = all_row_stats(sys)
    g_total = sum(st.total_gadgets for st in stats)

    n, m = sys.n, sys.m
    n_x = n + 5 * g_total
    m_final = m + 8 * g_total
    n_final = 2 * n_x

    entries: dict[tuple[int, int], int] = {}
    gadgets: list[GadgetDescriptor] = []
    ind = 0
    for i in range(1, m + 1):
        row = sys.row(i)
        pos_side = {j: v for j, v in row.items() if v > 0}
        neg_side = {j: -v for j, v in row.items() if v < 0}
        ind = _pair_side(pos_side, POS, i, n, g_total, ind, gadgets)
        ind = _pair_side(neg_side, NEG, i, n, g_total, ind, gadgets)
        ((j_pos, c_pos),) = pos_side.items()
        ((j_neg, c_neg),) = neg_side.items()
        if c_pos != c_neg:
            raise AssertionError(f"row {i}: surviving magnitudes differ ({c_pos} vs {c_neg})")
        entries[i, j_pos] = c_pos
        entries[i, j_neg] = -c_neg
    if ind != g_total:
        raise AssertionError(f"gadget budget {g_total} != gadgets created {ind}")

    for g in gadgets:
        base = m + 8 * (g.ind - 1)
        for offset, grow in enumerate(emit_gadget(g.gadget(), 1, n_x), start=1):
            for col, val in grow.items():
                entries[base + offset, col] = val

    out = SparseIntSystem(
        m_final, n_final, entries, sys.rhs + (0,) * (m_final - m), MatrixClass.MC2
    )
    check_class(out, MatrixClass.MC2)
    trace = ReductionTrace(
        n=n,
        m=m,
        n_repl=g_total,
        n_g=4 * g_total,
        n_x=n_x,
        n_final=n_final,
        m_final=m_final,
        gadgets=tuple(gadgets),
        per_row_stats=tuple(stats),
    )
    return out, trace


def recover_gz2_from_mc2(
    x_star: Sequence[Fraction | int], trace: ReductionTrace
) -> tuple[Fraction, ...]:
    """Map a reduced-system solution back: keep the first ``n`` coordinates."""
    if len(x_star) != trace.n_final:
        raise ValueError(f"solution length {len(x_star)} != {trace.n_final}")
    return tuple(Fraction(v) for v in x_star[: trace.n])


def render_trace(trace: ReductionTrace) -> str:
    """Plain-text trace: dimensions, per-row counting tables, gadget table."""
    lines = [
        "trace dims",
        f"  n {trace.n} m {trace.m} n_repl {trace.n_repl} n_g {trace.n_g}",
        f"  n_x {trace.n_x} n_final {trace.n_final} m_final {trace.m_final}",
        "trace row-stats",
    ]
    for i, st in enumerate(trace.per_row_stats, start=1):
        for sign in (POS, NEG):
            side = st.side(sign)
            cb = ",".join(str(c) for c in side.count_bit)
            ng = ",".join(str(c) for c in side.num_gadget)
            lines.append(
                f"  row {i} sign {sign} len {side.len_bits} "
                f"count_bit {cb} num_gadget {ng} sum_num_g {side.sum_num_g}"
            )
    lines.append("trace gadgets")
    lines.append("  ind t t' j1 j2 row bit sign ell")
    for g in trace.gadgets:
        lines.append(
            f"  {g.ind} {g.t} {g.t_prime} {g.j1} {g.j2} "
            f"{g.i_src} {g.k_src} {g.s_src} {g.ell}"
        )
    return "\n".join(lines) + "\n"


def save_trace(path: str, trace: ReductionTrace) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render_trace(trace))

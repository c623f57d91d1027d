"""Local, stateless access to the reduced 2-commodity matrix.

Every entry ``B[i, j]`` of the reduced system, its dimensions, and its
right-hand side are pure functions of the Gz2 input alone: the counting data
of :mod:`mc2reduce.rowstats` predicts exactly how many gadgets each bit
position of each row consumes, so the identity of gadget number ``ind`` (its
source row, bit position, sign, and the two paired columns) can be resolved
by comparing ``ind`` against prefix sums of those counts, without ever
running the sequential reduction.  Querying entries in any order, or in
parallel, gives identical results.

The prefix tables follow the builder's creation order: rows ascending, and
within a row all ``+`` rounds (bits ascending) before all ``-`` rounds.

Out-of-range queries return 0, making ``entry`` a total function.
"""

from __future__ import annotations

from bisect import bisect_left
from fractions import Fraction
from math import isqrt

from .matrix import MatrixClass, SparseIntSystem, check_class
from .pairreplace import GadgetDescriptor, emit_gadget
from .rowstats import NEG, POS, RowStats, SignStats, row_stats


class OracleContext:
    """Precomputed counting tables for one Gz2 input.

    ``precompute=False`` switches to strict per-query recomputation: no table
    survives between calls, which the purity tests use to show that caching
    is observationally invisible.
    """

    def __init__(self, sys: SparseIntSystem, precompute: bool = True):
        check_class(sys, MatrixClass.GZ2)
        self.sys = sys
        self.m = sys.m
        self.n = sys.n
        self.precompute = precompute
        self._stats: list[RowStats] | None = None
        self._row_cum: list[int] | None = None
        if precompute:
            self._stats = [row_stats(sys, i, validated=True) for i in range(1, sys.m + 1)]
            cum = [0]
            for st in self._stats:
                cum.append(cum[-1] + st.total_gadgets)
            self._row_cum = cum

    # -- counting tables -----------------------------------------------------

    def stats(self, i: int) -> RowStats:
        if self._stats is not None:
            return self._stats[i - 1]
        return row_stats(self.sys, i, validated=True)

    def row_base(self, i: int) -> int:
        """Number of gadgets created for rows strictly before ``i``."""
        if self._row_cum is not None:
            return self._row_cum[i - 1]
        return sum(self.stats(r).total_gadgets for r in range(1, i))

    @property
    def g_total(self) -> int:
        return self.row_base(self.m + 1)

    @property
    def n_x(self) -> int:
        return self.n + 5 * self.g_total

    @property
    def m_final(self) -> int:
        return self.m + 8 * self.g_total

    @property
    def n_final(self) -> int:
        return 2 * self.n + 10 * self.g_total

    def dims(self) -> tuple[int, int]:
        return self.m_final, self.n_final

    def _round_prefix(self, i: int, sign: str, k: int) -> int:
        """Gadgets created before round ``(i, k, sign)`` in builder order."""
        st = self.stats(i)
        base = self.row_base(i)
        if sign == NEG:
            base += st.pos.sum_num_g
        return base + sum(st.side(sign).num_gadget[: k - 1])

    def _cols_with_bit(self, i: int, sign: str, k: int) -> list[int]:
        """Columns of the original sign-``sign`` entries of row ``i`` whose
        magnitude has bit ``k`` set, ascending."""
        bit = 1 << (k - 1)
        row = self.sys.row(i)
        return sorted(
            j
            for j, v in row.items()
            if (v > 0 if sign == POS else v < 0) and abs(v) & bit
        )

    def _unique_signed_col(self, i: int, sign: str) -> int:
        cols = [j for j, v in self.sys.row(i).items() if (v > 0 if sign == POS else v < 0)]
        if len(cols) != 1:
            raise AssertionError(f"row {i}: expected a single {sign} entry, found {len(cols)}")
        return cols[0]

    # -- gadget resolution ---------------------------------------------------

    def gadget_descriptor(self, ind: int) -> GadgetDescriptor:
        """Identify gadget ``ind`` from the counting tables alone."""
        if not 1 <= ind <= self.g_total:
            raise IndexError(f"gadget index {ind} out of range 1..{self.g_total}")
        if self._row_cum is not None:
            i = bisect_left(self._row_cum, ind)  # first row whose cumulative covers ind
        else:
            i = 1
            while self.row_base(i + 1) < ind:
                i += 1
        offset = ind - self.row_base(i)
        st = self.stats(i)
        if offset <= st.pos.sum_num_g:
            sign, side, sub = POS, st.pos, offset
        else:
            sign, side, sub = NEG, st.neg, offset - st.pos.sum_num_g
        cum = 0
        k = 0
        for k, ng in enumerate(side.num_gadget, start=1):
            if cum + ng >= sub:
                break
            cum += ng
        ell = sub - cum

        count = side.count_bit_at(k)
        carried_base = self.n + self._round_prefix(i, sign, k - 1) if k > 1 else 0

        def paired_column(position: int) -> int:
            # Round-k candidates in pairing order: the original entries with
            # bit k set (column order), then the replacements carried from
            # round k-1 (creation order).
            if position <= count:
                return self._cols_with_bit(i, sign, k)[position - 1]
            return carried_base + (position - count)

        j1 = paired_column(2 * ell - 1)
        j2 = paired_column(2 * ell)
        return GadgetDescriptor(
            ind=ind,
            t=self.n + ind,
            t_prime=self.n + self.g_total + 4 * (ind - 1),
            j1=j1,
            j2=j2,
            i_src=i,
            k_src=k,
            s_src=sign,
            ell=ell,
        )

    # -- entry access ----------------------------------------------------------

    def row_entries(self, i: int) -> dict[int, int]:
        """The nonzero entries of output row ``i`` as ``{col: value}``."""
        if not 1 <= i <= self.m_final:
            return {}
        if i <= self.m:
            st = self.stats(i)
            coeff = 1 << (st.pos.len_bits - 1)
            if st.pos.sum_num_g == 0:
                j_pos = self._unique_signed_col(i, POS)
            else:
                j_pos = self.n + self.row_base(i) + st.pos.sum_num_g
            if st.neg.sum_num_g == 0:
                j_neg = self._unique_signed_col(i, NEG)
            else:
                j_neg = self.n + self.row_base(i) + st.pos.sum_num_g + st.neg.sum_num_g
            return {j_pos: coeff, j_neg: -coeff}
        ind, r = divmod(i - self.m - 1, 8)
        g = self.gadget_descriptor(ind + 1)
        return emit_gadget(g.gadget(), 1, self.n_x)[r]

    def entry(self, i: int, j: int) -> int:
        """Entry ``B[i, j]`` of the reduced matrix; 0 outside its dimensions."""
        if i < 1 or j < 1 or i > self.m_final or j > self.n_final:
            return 0
        return self.row_entries(i).get(j, 0)

    def rhs_entry(self, i: int) -> int:
        """Right-hand side of output row ``i``: the input's for ``i <= m``, else 0."""
        if 1 <= i <= self.m:
            return self.sys.rhs[i - 1]
        return 0

    def materialize(self) -> SparseIntSystem:
        """The full reduced system, assembled row by row from the oracle."""
        entries: dict[tuple[int, int], int] = {}
        for i in range(1, self.m_final + 1):
            for j, v in self.row_entries(i).items():
                entries[i, j] = v
        rhs = tuple(self.rhs_entry(i) for i in range(1, self.m_final + 1))
        return SparseIntSystem(self.m_final, self.n_final, entries, rhs, MatrixClass.MC2)

    # -- statistics ------------------------------------------------------------

    def row_weight(self, i: int, precision_bits: int) -> Fraction:
        """Square root of ten times the row's gadget total, as a binary
        fixed-point value with ``precision_bits`` fractional bits (rounded
        down, so the error is below ``2**-precision_bits``)."""
        if not 1 <= i <= self.m:
            raise IndexError(f"row {i} out of range 1..{self.m}")
        if precision_bits < 0:
            raise ValueError("precision_bits must be nonnegative")
        radicand = 10 * self.stats(i).total_gadgets
        return Fraction(isqrt(radicand << (2 * precision_bits)), 1 << precision_bits)

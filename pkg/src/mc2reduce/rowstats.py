"""Per-row, per-sign counting data that drives the pair-and-replace reduction.

For one side (sign) of a row with coefficient magnitudes summing to a power
of two ``2**(len_bits - 1)``:

* ``count_bit[k]`` is the number of entries whose bit at position ``k`` is
  set (position 1 is the least significant bit, worth ``2**(k-1)``);
* ``num_gadget[k]`` is the number of pair-and-replace gadgets the sequential
  reduction spends on bit position ``k``;
* ``sum_num_g`` is their total, i.e. the number of replacement variables the
  side consumes.

``num_gadget`` admits both a closed form,

    num_gadget[k] = (sum_{k' <= k} 2**(k'-1) * count_bit[k']) / 2**k,

and the recurrence ``num_gadget[1] = count_bit[1] / 2``,
``num_gadget[k] = (count_bit[k] + num_gadget[k-1]) / 2``.  Both divisions are
exact precisely because the side sums to a power of two; a failed division
means the row is malformed.  The two formulations are implemented separately
so they can cross-check each other and the actual reduction run.
"""

from __future__ import annotations

from dataclasses import dataclass

from .matrix import MatrixClass, SparseIntSystem, check_class

POS = "+"
NEG = "-"
SIGNS = (POS, NEG)


class MalformedRowError(ValueError):
    """A row whose side violates the parity structure of the class Gz2."""


@dataclass(frozen=True)
class SignStats:
    """Counting data for one sign of one row.

    ``count_bit`` and ``num_gadget`` are stored 1-indexed through
    :meth:`SignStats.count_bit_at` and :meth:`num_gadget_at`; positions beyond
    ``len_bits`` read as zero.  ``len_bits`` is the bit length of the side's
    magnitude sum, so the sum equals ``2**(len_bits - 1)``.
    """

    len_bits: int
    count_bit: tuple[int, ...]
    num_gadget: tuple[int, ...]

    @property
    def sum_num_g(self) -> int:
        return sum(self.num_gadget)

    def count_bit_at(self, k: int) -> int:
        return self.count_bit[k - 1] if 1 <= k <= len(self.count_bit) else 0

    def num_gadget_at(self, k: int) -> int:
        return self.num_gadget[k - 1] if 1 <= k <= len(self.num_gadget) else 0


@dataclass(frozen=True)
class RowStats:
    pos: SignStats
    neg: SignStats

    def side(self, sign: str) -> SignStats:
        if sign == POS:
            return self.pos
        if sign == NEG:
            return self.neg
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")

    @property
    def total_gadgets(self) -> int:
        return self.pos.sum_num_g + self.neg.sum_num_g


def side_magnitudes(row: dict[int, int], sign: str) -> list[int]:
    """Magnitudes of the sign-``sign`` entries of ``row``, in column order."""
    if sign == POS:
        return [v for _, v in sorted(row.items()) if v > 0]
    return [-v for _, v in sorted(row.items()) if v < 0]


def count_bits(mags: list[int], width: int) -> tuple[int, ...]:
    """``count_bit[1..width]`` for the given magnitudes."""
    return tuple(sum((m >> (k - 1)) & 1 for m in mags) for k in range(1, width + 1))


def num_gadgets_closed_form(count_bit: tuple[int, ...], len_bits: int) -> tuple[int, ...]:
    """Gadget counts per bit position via the partial-sum closed form.

    Raises :class:`MalformedRowError` when a division is inexact, which can
    only happen if the magnitudes do not sum to a power of two.
    """
    out = []
    partial = 0
    for k in range(1, len(count_bit) + 1):
        partial += (1 << (k - 1)) * count_bit[k - 1]
        if k >= len_bits:
            out.append(0)
            continue
        q, r = divmod(partial, 1 << k)
        if r:
            raise MalformedRowError(
                f"bit position {k}: partial magnitude sum {partial} not divisible by 2^{k}"
            )
        out.append(q)
    return tuple(out)


def num_gadgets_recurrence(count_bit: tuple[int, ...], len_bits: int) -> tuple[int, ...]:
    """Gadget counts via the pairing recurrence; must agree with the closed form."""
    out = []
    prev = 0
    for k in range(1, len(count_bit) + 1):
        if k >= len_bits:
            out.append(0)
            continue
        total = count_bit[k - 1] + prev
        if total % 2:
            raise MalformedRowError(f"bit position {k}: odd pair count {total}")
        prev = total // 2
        out.append(prev)
    return tuple(out)


def _sign_stats(mags: list[int]) -> SignStats:
    total = sum(mags)
    if total <= 0:
        raise MalformedRowError("side has no entries")
    len_bits = total.bit_length()
    if total != 1 << (len_bits - 1):
        raise MalformedRowError(f"side sum {total} is not a power of 2")
    cb = count_bits(mags, len_bits)
    return SignStats(len_bits, cb, num_gadgets_closed_form(cb, len_bits))


def row_stats(sys: SparseIntSystem, i: int, validated: bool = False) -> RowStats:
    """Counting data for row ``i`` of a Gz2 system.

    ``validated=True`` skips re-validating the whole system (callers that
    already checked the class once use it); the per-row parity structure is
    still enforced either way.
    """
    if not validated:
        check_class(sys, MatrixClass.GZ2)
    if not 1 <= i <= sys.m:
        raise IndexError(f"row {i} out of range 1..{sys.m}")
    row = sys.row(i)
    try:
        return RowStats(
            pos=_sign_stats(side_magnitudes(row, POS)),
            neg=_sign_stats(side_magnitudes(row, NEG)),
        )
    except MalformedRowError as exc:
        raise MalformedRowError(f"row {i}: {exc}") from exc


def all_row_stats(sys: SparseIntSystem) -> list[RowStats]:
    check_class(sys, MatrixClass.GZ2)
    return [row_stats(sys, i, validated=True) for i in range(1, sys.m + 1)]

"""The two auxiliary reductions: zero-sum column append and power-of-two padding.

Stage 1 takes any integer system and appends one column holding the negated
row sums, so every row of the output sums to zero.  A solution of the output
maps back by subtracting the appended coordinate from each original one.

Stage 2 takes a zero-row-sum system and appends two columns that pad every
row's positive (and, symmetrically, negative) coefficient sum up to the
smallest power of two ``2**k`` covering all rows, plus one balancing row
``x_{n+1} - x_{n+2} = 0`` that forces the two pad variables to agree.  A
solution of the output maps back by projection onto the first ``n``
coordinates.

Both stages preserve solvability in both directions exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .matrix import MatrixClass, SparseIntSystem, check_class

STAGE_G_TO_GZ = "GtoGz"
STAGE_GZ_TO_GZ2 = "GzToGz2"


@dataclass(frozen=True)
class StageCert:
    """Dimensions (and pad exponent) needed to undo one stage."""

    stage: str
    n_before: int
    m_before: int
    n_after: int
    m_after: int
    pad_k: int | None = None

    def __post_init__(self) -> None:
        if self.stage == STAGE_G_TO_GZ:
            ok = self.n_after == self.n_before + 1 and self.m_after == self.m_before
        elif self.stage == STAGE_GZ_TO_GZ2:
            ok = (
                self.n_after == self.n_before + 2
                and self.m_after == self.m_before + 1
                and self.pad_k is not None
                and self.pad_k >= 0
            )
        else:
            raise ValueError(f"unknown stage {self.stage!r}")
        if not ok:
            raise ValueError(f"inconsistent {self.stage} certificate: {self}")


def reduce_g_to_gz(sys: SparseIntSystem) -> tuple[SparseIntSystem, StageCert]:
    """Append column ``n+1`` holding the negated row sums; rhs is unchanged."""
    check_class(sys, MatrixClass.G)
    entries = dict(sys.entries)
    for i, row in enumerate(sys.rows(), start=1):
        s = sum(row.values())
        if s != 0:
            entries[i, sys.n + 1] = -s
    out = SparseIntSystem(sys.m, sys.n + 1, entries, sys.rhs, MatrixClass.GZ)
    check_class(out, MatrixClass.GZ)
    cert = StageCert(STAGE_G_TO_GZ, sys.n, sys.m, sys.n + 1, sys.m)
    return out, cert


def recover_g_from_gz(x_prime: Sequence[Fraction | int], cert: StageCert) -> tuple[Fraction, ...]:
    """Map a stage-1 solution back: subtract the appended coordinate from each."""
    if cert.stage != STAGE_G_TO_GZ:
        raise ValueError(f"certificate is for stage {cert.stage}, expected {STAGE_G_TO_GZ}")
    if len(x_prime) != cert.n_after:
        raise ValueError(f"solution length {len(x_prime)} != {cert.n_after}")
    shift = Fraction(x_prime[-1])
    return tuple(Fraction(v) - shift for v in x_prime[:-1])


def reduce_gz_to_gz2(sys: SparseIntSystem) -> tuple[SparseIntSystem, StageCert]:
    """Pad positive sums up to one shared power of two and add the balancing row."""
    check_class(sys, MatrixClass.GZ)
    rows = sys.rows()
    pos_sums = [sum(v for v in row.values() if v > 0) for row in rows]
    s = max(pos_sums)
    k = max(0, (s - 1).bit_length())  # minimal k with 2**k >= s
    entries = dict(sys.entries)
    for i, s_i in enumerate(pos_sums, start=1):
        a_i = (1 << k) - s_i
        if a_i != 0:
            entries[i, sys.n + 1] = a_i
            entries[i, sys.n + 2] = -a_i
    entries[sys.m + 1, sys.n + 1] = 1
    entries[sys.m + 1, sys.n + 2] = -1
    out = SparseIntSystem(
        sys.m + 1, sys.n + 2, entries, sys.rhs + (0,), MatrixClass.GZ2
    )
    check_class(out, MatrixClass.GZ2)
    cert = StageCert(STAGE_GZ_TO_GZ2, sys.n, sys.m, sys.n + 2, sys.m + 1, pad_k=k)
    return out, cert


def recover_gz_from_gz2(x_dprime: Sequence[Fraction | int], cert: StageCert) -> tuple[Fraction, ...]:
    """Map a stage-2 solution back: keep the first ``n`` coordinates."""
    if cert.stage != STAGE_GZ_TO_GZ2:
        raise ValueError(f"certificate is for stage {cert.stage}, expected {STAGE_GZ_TO_GZ2}")
    if len(x_dprime) != cert.n_after:
        raise ValueError(f"solution length {len(x_dprime)} != {cert.n_after}")
    return tuple(Fraction(v) for v in x_dprime[: cert.n_before])

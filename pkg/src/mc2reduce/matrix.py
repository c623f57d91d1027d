"""Exact sparse integer systems and the matrix classes of the reduction pipeline.

The pipeline works over four nested classes of integer equation systems:

* ``G``    -- arbitrary integer matrices with no all-zero row or column;
* ``Gz``   -- every row sums to zero;
* ``Gz2``  -- additionally the positive-coefficient sum of every row is a
  power of two;
* ``MC2``  -- 2-commodity systems: variables split into equal-size blocks X
  and Y, and every row is a nonzero integer scaling of ``x_i - x_j``,
  ``y_i - y_j``, or ``(x_i - y_i) - (x_j - y_j)`` with ``i != j``.

All arithmetic is exact: entries are Python ints of arbitrary precision.
Indices are 1-based throughout, in storage as well as in the text format.
Systems are immutable after construction; every operation in this package is
a pure function over them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence


class MatrixClass:
    """Class tags for the reduction pipeline, ordered from general to special."""

    G = "G"
    GZ = "Gz"
    GZ2 = "Gz2"
    MC2 = "MC2"
    UNCHECKED = "Unchecked"

    ALL = (G, GZ, GZ2, MC2, UNCHECKED)


class ClassValidationError(ValueError):
    """Raised when a system fails validation against a required class."""


@dataclass(frozen=True)
class SparseIntSystem:
    """Sparse integer equation system ``A x = b`` with a claimed class tag.

    ``entries`` maps ``(row, col)`` (1-based) to nonzero integers; absent
    means zero.  ``rhs`` has one integer per row.  The constructor strips
    explicit zeros and checks index ranges, so stored instances are always
    in canonical sparse form.
    """

    m: int
    n: int
    entries: Mapping[tuple[int, int], int]
    rhs: tuple[int, ...]
    class_tag: str = MatrixClass.UNCHECKED

    def __post_init__(self) -> None:
        if self.m < 1 or self.n < 1:
            raise ValueError(f"dimensions must be positive, got {self.m}x{self.n}")
        if self.class_tag not in MatrixClass.ALL:
            raise ValueError(f"unknown class tag {self.class_tag!r}")
        clean: dict[tuple[int, int], int] = {}
        for (i, j), v in self.entries.items():
            v = int(v)
            if v == 0:
                continue
            if not (1 <= i <= self.m and 1 <= j <= self.n):
                raise ValueError(f"entry index ({i}, {j}) out of range for {self.m}x{self.n}")
            clean[i, j] = v
        object.__setattr__(self, "entries", clean)
        rhs = tuple(int(v) for v in self.rhs)
        if len(rhs) != self.m:
            raise ValueError(f"rhs length {len(rhs)} != row count {self.m}")
        object.__setattr__(self, "rhs", rhs)

    def entry(self, i: int, j: int) -> int:
        return self.entries.get((i, j), 0)

    def row(self, i: int) -> dict[int, int]:
        """Nonzero entries of row ``i`` as ``{col: value}``."""
        return {j: v for (r, j), v in self.entries.items() if r == i}

    def rows(self) -> list[dict[int, int]]:
        """All rows as sparse dicts, index 0 holding row 1."""
        out: list[dict[int, int]] = [{} for _ in range(self.m)]
        for (i, j), v in self.entries.items():
            out[i - 1][j] = v
        return out

    def with_tag(self, tag: str) -> "SparseIntSystem":
        return SparseIntSystem(self.m, self.n, dict(self.entries), self.rhs, tag)

    def nnz(self) -> int:
        return len(self.entries)


# ---------------------------------------------------------------------------
# Sign-magnitude codec


@dataclass(frozen=True)
class SignMagnitude:
    """Sign bit (0 positive, 1 negative) plus a fixed-width magnitude bit string.

    Zero has two representations (either sign over all-zero bits); both are
    accepted on decode, and encode emits the sign-0 form.
    """

    sign_bit: int
    magnitude_bits: str

    def __post_init__(self) -> None:
        if self.sign_bit not in (0, 1):
            raise ValueError(f"sign bit must be 0 or 1, got {self.sign_bit}")
        if not self.magnitude_bits or any(c not in "01" for c in self.magnitude_bits):
            raise ValueError(f"magnitude must be a nonempty bit string, got {self.magnitude_bits!r}")

    @property
    def width(self) -> int:
        return len(self.magnitude_bits)


def encode_sign_magnitude(z: int, w: int) -> SignMagnitude:
    """Encode ``z`` into a sign bit and ``w`` magnitude bits (MSB first).

    Requires ``|z| <= 2**w - 1``; zero encodes canonically with sign 0.
    """
    if w < 1:
        raise ValueError(f"width must be >= 1, got {w}")
    if abs(z) >= 1 << w:
        raise OverflowError(f"|{z}| does not fit in {w} magnitude bits")
    return SignMagnitude(0 if z >= 0 else 1, format(abs(z), f"0{w}b"))


def decode_sign_magnitude(sm: SignMagnitude) -> int:
    """Inverse of :func:`encode_sign_magnitude`; accepts both encodings of zero."""
    mag = int(sm.magnitude_bits, 2)
    return -mag if sm.sign_bit == 1 else mag


# ---------------------------------------------------------------------------
# Class validators


def _is_power_of_two(s: int) -> bool:
    return s > 0 and s & (s - 1) == 0


def _match_mc2_pattern(row: dict[int, int], half: int) -> str | None:
    """Return a diagnostic if ``row`` is not a scaled 2-commodity pattern."""
    cols = sorted(row)
    if len(cols) == 2:
        a, b = cols
        if row[a] != -row[b]:
            return "coefficients are not a scaling of u_i - u_j"
        if b <= half or a > half:
            return None  # both in X, or both in Y
        return "two-term row mixes the X and Y blocks"
    if len(cols) == 4:
        xs = [c for c in cols if c <= half]
        ys = [c for c in cols if c > half]
        if len(xs) != 2 or [y - half for y in ys] != xs:
            return "four-term row is not over paired (x_i, y_i, x_j, y_j)"
        i, j = xs
        a = row[i]
        if row[half + i] == -a and row[j] == -a and row[half + j] == a:
            return None
        return "four-term row is not a scaling of (x_i - y_i) - (x_j - y_j)"
    return "row has neither 2 nor 4 nonzero entries"


def validate_class(sys: SparseIntSystem, tag: str) -> str | None:
    """Check ``sys`` against the conditions of class ``tag``.

    Returns ``None`` when valid, otherwise a diagnostic naming the first
    violated condition and the offending row or column.  The all-zero-column
    condition belongs to class ``G`` only: it gates ingested inputs, while
    intermediate stages may legitimately carry a structurally empty column
    (for example the appended zero-sum column of an input that already had
    zero row sums).
    """
    if tag == MatrixClass.UNCHECKED:
        return None
    if tag not in MatrixClass.ALL:
        return f"unknown class tag {tag!r}"

    rows = sys.rows()
    for i, row in enumerate(rows, start=1):
        if not row:
            return f"row {i}: all-zero row"

    if tag == MatrixClass.G:
        seen_cols = {j for (_, j) in sys.entries}
        for j in range(1, sys.n + 1):
            if j not in seen_cols:
                return f"column {j}: all-zero column"
        return None

    if tag == MatrixClass.MC2:
        if sys.n % 2 != 0:
            return f"column count {sys.n} is odd"
        half = sys.n // 2
        for i, row in enumerate(rows, start=1):
            diag = _match_mc2_pattern(row, half)
            if diag is not None:
                return f"row {i}: {diag}"
        return None

    # Gz and Gz2
    for i, row in enumerate(rows, start=1):
        if sum(row.values()) != 0:
            return f"row {i}: nonzero row sum"
    if tag == MatrixClass.GZ2:
        for i, row in enumerate(rows, start=1):
            s = sum(v for v in row.values() if v > 0)
            if not _is_power_of_two(s):
                return f"row {i}: positive sum {s} is not a power of 2"
    return None


def check_class(sys: SparseIntSystem, tag: str) -> None:
    """Raise :class:`ClassValidationError` if ``sys`` does not validate as ``tag``."""
    diag = validate_class(sys, tag)
    if diag is not None:
        raise ClassValidationError(f"not a valid {tag} system: {diag}")


def positive_row_sum(row: Mapping[int, int]) -> int:
    return sum(v for v in row.values() if v > 0)


def w_bound(sys: SparseIntSystem) -> int:
    """Minimal ``w`` such that every row's positive-coefficient sum is ``<= 2**w``."""
    w = 0
    for row in sys.rows():
        s = positive_row_sum(row)
        if s > 1:
            w = max(w, (s - 1).bit_length())
    return w


def system_from_dense(
    dense: Sequence[Sequence[int]],
    rhs: Iterable[int] | None = None,
    class_tag: str = MatrixClass.UNCHECKED,
) -> SparseIntSystem:
    """Build a system from a dense row-major list of lists (test convenience)."""
    m = len(dense)
    n = len(dense[0]) if m else 0
    entries = {
        (i + 1, j + 1): v
        for i, row in enumerate(dense)
        for j, v in enumerate(row)
        if v != 0
    }
    rhs_t = tuple(rhs) if rhs is not None else (0,) * m
    return SparseIntSystem(m, n, entries, rhs_t, class_tag)

"""Text format for sparse integer systems.

Line 1: ``m n class_tag``.  Then one line ``E i j v`` per nonzero entry and
one line ``B i v`` per nonzero right-hand-side coordinate, all 1-based with
``v`` rendered in exact decimal.  ``#`` starts a comment line; stage
certificates ride along as structured comments so a reduced file documents
where it came from.
"""

from __future__ import annotations

import io
from typing import TextIO

from .matrix import MatrixClass, SparseIntSystem
from .stages import StageCert


class MatrixFormatError(ValueError):
    """Raised on malformed input, with the offending line number."""


def _err(lineno: int, msg: str) -> MatrixFormatError:
    return MatrixFormatError(f"line {lineno}: {msg}")


def parse_system(stream: TextIO) -> SparseIntSystem:
    header: tuple[int, int, str] | None = None
    entries: dict[tuple[int, int], int] = {}
    rhs_items: dict[int, int] = {}
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            parts = line.split()
            if len(parts) != 3:
                raise _err(lineno, f"expected 'm n class_tag', got {line!r}")
            try:
                m, n = int(parts[0]), int(parts[1])
            except ValueError:
                raise _err(lineno, f"non-integer dimensions in {line!r}") from None
            if parts[2] not in MatrixClass.ALL:
                raise _err(lineno, f"unknown class tag {parts[2]!r}")
            if m < 1 or n < 1:
                raise _err(lineno, f"dimensions must be positive, got {m}x{n}")
            header = (m, n, parts[2])
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "E":
            if len(parts) != 4:
                raise _err(lineno, f"expected 'E i j v', got {line!r}")
            try:
                i, j, v = int(parts[1]), int(parts[2]), int(parts[3])
            except ValueError:
                raise _err(lineno, f"non-integer field in {line!r}") from None
            if not (1 <= i <= header[0] and 1 <= j <= header[1]):
                raise _err(lineno, f"entry ({i}, {j}) out of range")
            if (i, j) in entries:
                raise _err(lineno, f"duplicate entry ({i}, {j})")
            if v != 0:
                entries[i, j] = v
        elif kind == "B":
            if len(parts) != 3:
                raise _err(lineno, f"expected 'B i v', got {line!r}")
            try:
                i, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise _err(lineno, f"non-integer field in {line!r}") from None
            if not 1 <= i <= header[0]:
                raise _err(lineno, f"rhs index {i} out of range")
            if i in rhs_items:
                raise _err(lineno, f"duplicate rhs entry {i}")
            if v != 0:
                rhs_items[i] = v
        else:
            raise _err(lineno, f"unknown record {kind!r}")
    if header is None:
        raise MatrixFormatError("empty input: missing 'm n class_tag' header")
    m, n, tag = header
    rhs = tuple(rhs_items.get(i, 0) for i in range(1, m + 1))
    return SparseIntSystem(m, n, entries, rhs, tag)


def parse_system_str(text: str) -> SparseIntSystem:
    return parse_system(io.StringIO(text))


def load_system(path: str) -> SparseIntSystem:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_system(fh)


def render_cert_comments(cert: StageCert) -> list[str]:
    fields = f"stage={cert.stage} n_before={cert.n_before} m_before={cert.m_before} " \
             f"n_after={cert.n_after} m_after={cert.m_after}"
    if cert.pad_k is not None:
        fields += f" pad_k={cert.pad_k}"
    return [f"# cert {fields}"]


def parse_cert_comments(text: str) -> list[StageCert]:
    """Recover stage certificates from ``# cert`` comment lines, outermost first."""
    certs = []
    for line in text.splitlines():
        line = line.strip()
        if not line.startswith("# cert "):
            continue
        kv = dict(part.split("=", 1) for part in line[len("# cert "):].split())
        certs.append(
            StageCert(
                stage=kv["stage"],
                n_before=int(kv["n_before"]),
                m_before=int(kv["m_before"]),
                n_after=int(kv["n_after"]),
                m_after=int(kv["m_after"]),
                pad_k=int(kv["pad_k"]) if "pad_k" in kv else None,
            )
        )
    return certs


def serialize_system(sys: SparseIntSystem, certs: list[StageCert] | None = None) -> str:
    """Deterministic rendering: entries row-major, rhs ascending, certs last."""
    out = [f"{sys.m} {sys.n} {sys.class_tag}"]
    for (i, j) in sorted(sys.entries):
        out.append(f"E {i} {j} {sys.entries[i, j]}")
    for i, v in enumerate(sys.rhs, start=1):
        if v != 0:
            out.append(f"B {i} {v}")
    for cert in certs or []:
        out.extend(render_cert_comments(cert))
    return "\n".join(out) + "\n"


def save_system(path: str, sys: SparseIntSystem, certs: list[StageCert] | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_system(sys, certs))

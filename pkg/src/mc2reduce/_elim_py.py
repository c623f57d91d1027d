"""Sparse fraction-free Gaussian elimination over the integers (pure Python).

This is the reference implementation of the hot kernel behind the exact
solver.  Rows are sparse ``{column: int}`` dicts.  Each elimination step
forms ``pivot_value * row - row_value * pivot_row`` and divides the result by
its integer content, so all arithmetic stays in (arbitrary-precision)
integers and coefficient growth stays tame.

Pivots are chosen column-first by minimum degree (fewest live rows touching
the column, ties to the smallest column index), then within the column by
fewest nonzeros (ties to the smallest row index).  On the union-find-like
systems this package produces, that keeps fill-in near zero.  Selection is
fully deterministic.

The compiled twin in ``_speedups.pyx`` implements the same contract; see
:mod:`mc2reduce.kernels` for backend selection.
"""

from __future__ import annotations

from heapq import heapify, heappop, heappush
from math import gcd


def eliminate(rows: list[dict[int, int]], rhs: list[int]) -> list[tuple[int, int]]:
    """Forward-eliminate ``rows``/``rhs`` in place.

    Returns the pivot sequence ``[(row_index, column), ...]`` in elimination
    order.  Afterwards every non-pivot row is empty (its right-hand side is
    nonzero exactly when the system is inconsistent), and each pivot row is
    reduced against all pivots chosen before it.
    """
    col_rows: dict[int, set[int]] = {}
    for r, row in enumerate(rows):
        for c in row:
            col_rows.setdefault(c, set()).add(r)
    heap: list[tuple[int, int]] = [(len(rset), c) for c, rset in col_rows.items()]
    heapify(heap)

    pivots: list[tuple[int, int]] = []
    while heap:
        deg, c = heappop(heap)
        live = col_rows.get(c)
        if not live:
            continue
        if len(live) != deg:
            heappush(heap, (len(live), c))
            continue
        r = min(live, key=lambda q: (len(rows[q]), q))
        prow = rows[r]
        pval = prow[c]
        for cc in prow:
            col_rows[cc].discard(r)
        pivots.append((r, c))

        touched: set[int] = set()
        for q in list(col_rows[c]):
            qrow = rows[q]
            qval = qrow.pop(c)
            col_rows[c].discard(q)
            new_row: dict[int, int] = {cc: pval * qv for cc, qv in qrow.items()}
            for cc, pv in prow.items():
                if cc == c:
                    continue
                val = new_row.get(cc, 0) - qval * pv
                if val == 0:
                    new_row.pop(cc, None)
                else:
                    new_row[cc] = val
            new_rhs = pval * rhs[q] - qval * rhs[r]
            content = abs(new_rhs)
            for val in new_row.values():
                content = gcd(content, val)
                if content == 1:
                    break
            if content > 1:
                new_row = {cc: val // content for cc, val in new_row.items()}
                new_rhs //= content
            for cc in qrow:
                if cc not in new_row:
                    col_rows[cc].discard(q)
                    touched.add(cc)
            for cc in new_row:
                if cc not in qrow:
                    col_rows.setdefault(cc, set()).add(q)
                    touched.add(cc)
            rows[q] = new_row
            rhs[q] = new_rhs
        touched.add(c)
        for cc in touched:
            live_cc = col_rows.get(cc)
            if live_cc:
                heappush(heap, (len(live_cc), cc))
    return pivots

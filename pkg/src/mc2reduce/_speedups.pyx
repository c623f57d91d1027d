# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of the sparse fraction-free elimination kernel.

Same contract and pivot policy as ``mc2reduce._elim_py.eliminate``; the
coefficients stay arbitrary-precision Python ints, the win comes from
compiling the dict/heap bookkeeping around them.
"""

from heapq import heapify, heappop, heappush
from math import gcd


def eliminate(list rows, list rhs):
    """Forward-eliminate ``rows``/``rhs`` in place; return the pivot sequence."""
    cdef dict col_rows = {}
    cdef dict row, prow, qrow, new_row
    cdef set rset, live, touched
    cdef list heap, pivots, targets
    cdef Py_ssize_t r, q, deg, best_len, cur
    cdef object c, cc, pval, qval, pv, qv, val, new_rhs, content, found

    for r in range(len(rows)):
        row = <dict>rows[r]
        for c in row:
            found = col_rows.get(c)
            if found is None:
                rset = set()
                col_rows[c] = rset
            else:
                rset = <set>found
            rset.add(r)
    heap = []
    for c, found in col_rows.items():
        heap.append((len(<set>found), c))
    heapify(heap)

    pivots = []
    while heap:
        deg, c = heappop(heap)
        found = col_rows.get(c)
        if found is None:
            continue
        live = <set>found
        if not live:
            continue
        if len(live) != deg:
            heappush(heap, (len(live), c))
            continue
        # pivot row: fewest nonzeros, ties to the smallest row index
        r = -1
        best_len = -1
        for q in live:
            cur = len(<dict>rows[q])
            if r < 0 or cur < best_len or (cur == best_len and q < r):
                r = q
                best_len = cur
        prow = <dict>rows[r]
        pval = prow[c]
        for cc in prow:
            (<set>col_rows[cc]).discard(r)
        pivots.append((r, c))

        touched = set()
        targets = list(live)
        for q in targets:
            qrow = <dict>rows[q]
            qval = qrow.pop(c)
            live.discard(q)
            new_row = {}
            for cc, qv in qrow.items():
                new_row[cc] = pval * qv
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
                for cc in list(new_row):
                    new_row[cc] = new_row[cc] // content
                new_rhs = new_rhs // content
            for cc in qrow:
                if cc not in new_row:
                    (<set>col_rows[cc]).discard(q)
                    touched.add(cc)
            for cc in new_row:
                if cc not in qrow:
                    found = col_rows.get(cc)
                    if found is None:
                        rset = set()
                        col_rows[cc] = rset
                    else:
                        rset = <set>found
                    rset.add(q)
                    touched.add(cc)
            rows[q] = new_row
            rhs[q] = new_rhs
        touched.add(c)
        for cc in touched:
            found = col_rows.get(cc)
            if found is None:
                continue
            live = <set>found
            if live:
                heappush(heap, (len(live), cc))
    return pivots

"""Pure-Python integer Hermite normal form kernel.

This is the reference implementation; ``_hnf_ext`` mirrors it with
machine integers and falls back here on overflow.
"""


def hnf(rows, ncols):
    """Row Hermite normal form of the integer lattice spanned by ``rows``.

    Returns the nonzero basis rows in echelon form: every pivot is
    positive and the entries above a pivot lie in ``[0, pivot)``.
    The result depends only on the lattice, not on the generators.
    """
    A = [list(r) for r in rows if any(r)]
    m = len(A)
    r = 0
    for j in range(ncols):
        if r >= m:
            break
        while True:
            best = -1
            best_abs = 0
            nonzero = 0
            for i in range(r, m):
                v = A[i][j]
                if v:
                    nonzero += 1
                    av = v if v > 0 else -v
                    if best < 0 or av < best_abs:
                        best = i
                        best_abs = av
            if best < 0:
                break
            if best != r:
                A[r], A[best] = A[best], A[r]
            if nonzero == 1:
                break
            prow = A[r]
            p = prow[j]
            for i in range(r + 1, m):
                row = A[i]
                v = row[j]
                if v:
                    q = v // p
                    if q:
                        for k in range(j, ncols):
                            row[k] -= q * prow[k]
        if best < 0 and A[r][j] == 0:
            continue
        prow = A[r]
        if prow[j] < 0:
            for k in range(j, ncols):
                prow[k] = -prow[k]
        p = prow[j]
        for i in range(r):
            row = A[i]
            q = row[j] // p
            if q:
                for k in range(j, ncols):
                    row[k] -= q * prow[k]
        r += 1
    return [row for row in A[:r]]

"""Exact integer Smith normal form (invariant factors only).

Plain pivot-and-reduce over Z with smallest-pivot selection; no
unimodular transforms are returned since only the invariant factors are
consumed (abelianization rank and torsion).
"""

from __future__ import annotations


def smith_invariant_factors(rows: list[list[int]]) -> list[int]:
    """Nonzero invariant factors d1 | d2 | ... of an integer matrix."""
    m = [list(r) for r in rows]
    if m and any(len(r) != len(m[0]) for r in m):
        raise ValueError("ragged matrix")
    nr = len(m)
    nc = len(m[0]) if m else 0
    factors = []
    top = 0
    while True:
        pivot = _smallest_nonzero(m, top, nr, nc)
        if pivot is None:
            break
        while True:
            pi, pj = _smallest_nonzero(m, top, nr, nc)
            _swap_rows(m, top, pi)
            _swap_cols(m, top, pj)
            if m[top][top] < 0:
                m[top] = [-v for v in m[top]]
            p = m[top][top]
            dirty = False
            for i in range(top + 1, nr):
                q = m[i][top] // p
                if q:
                    m[i] = [a - q * b for a, b in zip(m[i], m[top])]
                if m[i][top]:
                    dirty = True
            for j in range(top + 1, nc):
                q = m[top][j] // p
                if q:
                    for i in range(nr):
                        m[i][j] -= q * m[i][top]
                if m[top][j]:
                    dirty = True
            if dirty:
                continue
            # pivot clears its row and column; enforce divisibility
            offender = None
            for i in range(top + 1, nr):
                for j in range(top + 1, nc):
                    if m[i][j] % p:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            m[top] = [a + b for a, b in zip(m[top], m[offender])]
        factors.append(m[top][top])
        top += 1
    return factors


def _smallest_nonzero(m, top, nr, nc):
    best = None
    for i in range(top, nr):
        for j in range(top, nc):
            v = abs(m[i][j])
            if v and (best is None or v < abs(m[best[0]][best[1]])):
                best = (i, j)
                if v == 1:
                    return best
    return best


def _swap_rows(m, a, b):
    if a != b:
        m[a], m[b] = m[b], m[a]


def _swap_cols(m, a, b):
    if a != b:
        for row in m:
            row[a], row[b] = row[b], row[a]


def abelianization(rows: list[list[int]], ngens: int) -> tuple[int, list[int]]:
    """(free rank, torsion coefficients > 1) of Z^ngens / row space."""
    factors = smith_invariant_factors(rows)
    torsion = [f for f in factors if f > 1]
    return ngens - len(factors), torsion
